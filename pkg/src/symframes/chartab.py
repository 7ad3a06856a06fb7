"""Character tables and linear characters of fully enumerated groups.

Irreducible characters are computed by the modular method: class-sum
structure constants are reduced mod a prime p = 1 (mod exponent) with
p^2 > 4|G|, the commuting class matrices are simultaneously diagonalized
over F_p by iterative eigenspace splitting, degrees are recovered from the
orthogonality relation, and values are lifted to exact cyclotomic numbers
through the discrete Fourier transform of the power map.  Everything
downstream of the lift is exact; the prime is large enough that integer
data (degrees, root-of-unity multiplicities) is determined by its residue.

Row order is canonical: by degree, then by the serialized exact values.
Class order is the canonical order of ConjugacyClassSet.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .cyclo import Cyclotomic, cyc_sum
from .errors import (
    ElementNotInGroup,
    InvariantViolation,
    NonIntegerMultiplicity,
    NoSuchCharacter,
)
from .permcore import Permutation, PermutationGroup, compose, derived_subgroup, invert


# --- linear characters -----------------------------------------------------


class LinearCharacter:
    """A degree-1 character, stored as exponents: value(h) = zeta_order^exp(h)."""

    def __init__(self, group: PermutationGroup, order: int, exps: dict):
        self.group = group
        self.order = order
        self._exps = exps

    def exponent(self, h) -> int:
        raw = h.raw if isinstance(h, Permutation) else h
        try:
            return self._exps[raw]
        except KeyError:
            raise ElementNotInGroup("element is outside the character's group") from None

    def value(self, h) -> Cyclotomic:
        return Cyclotomic.root_of_unity(self.order, self.exponent(h))

    def value_conj(self, h) -> Cyclotomic:
        return Cyclotomic.root_of_unity(self.order, -self.exponent(h) % self.order)

    def is_trivial(self) -> bool:
        return self.order == 1

    def sort_key(self):
        return (self.order, tuple(self._exps[x] for x in self.group.elements_raw()))

    def __repr__(self):
        return f"LinearCharacter(order={self.order}, group_order={self.group.order})"


def _abelian_basis(elems: list, mul, identity):
    """Basis [(g, order), ...] with <g_1> x ... x <g_r> equal to the group.

    The group is given abstractly by a label list and a multiplication
    callback.  Works prime by prime: each primary component is split off
    an element of maximal order, recursing on the quotient and correcting
    the lifted generators so the product stays direct.
    """
    n = len(elems)
    if n == 1:
        return []

    def power(x, k):
        acc = identity
        for _ in range(k):
            acc = mul(acc, x)
        return acc

    def elem_order(x):
        k, acc = 1, x
        while acc != identity:
            acc = mul(acc, x)
            k += 1
        return k

    basis = []
    for p in sorted(_prime_factors(n)):
        pk = 1
        while n % (pk * p) == 0:
            pk *= p
        component = sorted(x for x in elems if power(x, pk) == identity)
        basis.extend(_p_group_basis(component, mul, identity, power, elem_order))
    return basis


def _p_group_basis(elems, mul, identity, power, elem_order):
    if len(elems) == 1:
        return []
    orders = {x: elem_order(x) for x in elems}
    top = max(orders.values())
    a = min(x for x in elems if orders[x] == top)
    apowers = [identity]
    while len(apowers) < top:
        apowers.append(mul(apowers[-1], a))
    apower_index = {x: i for i, x in enumerate(apowers)}

    coset_of = {}
    for x in sorted(elems):
        if x in coset_of:
            continue
        members = [mul(x, ap) for ap in apowers]
        label = min(members)
        for y in members:
            coset_of[y] = label
    q_elems = sorted(set(coset_of.values()))

    def q_mul(u, v):
        return coset_of[mul(u, v)]

    def q_power(x, k):
        acc = coset_of[identity]
        for _ in range(k):
            acc = q_mul(acc, x)
        return acc

    def q_order(x):
        k, acc = 1, x
        while acc != coset_of[identity]:
            acc = q_mul(acc, x)
            k += 1
        return k

    sub = _p_group_basis(q_elems, q_mul, coset_of[identity], q_power, q_order)
    out = [(a, top)]
    for b, f in sub:
        t = apower_index[power(b, f)]
        assert t % f == 0, "maximal-order splitting violated"
        c = mul(b, apowers[(-(t // f)) % top])
        out.append((c, f))
    return out


def _prime_factors(n: int) -> set:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def linear_characters(H: PermutationGroup) -> list[LinearCharacter]:
    """All degree-1 characters of H, trivial first, in a deterministic order."""
    D = derived_subgroup(H)
    d_elems = D.elements_raw()
    coset_of: dict[bytes, bytes] = {}
    for x in H.elements_raw():
        if x in coset_of:
            continue
        members = [compose(x, d) for d in d_elems]
        label = min(members)
        for y in members:
            coset_of[y] = label
    q_elems = sorted(set(coset_of.values()))
    identity = coset_of[H.identity_raw()]

    def q_mul(u, v):
        return coset_of[compose(u, v)]

    basis = _abelian_basis(q_elems, q_mul, identity)
    orders = [m for _, m in basis]
    coords: dict[bytes, tuple] = {}
    for tup in itertools.product(*[range(m) for m in orders]):
        acc = identity
        for (g, _), k in zip(basis, tup):
            for _ in range(k):
                acc = q_mul(acc, g)
        coords[acc] = tup
    if len(coords) != len(q_elems):
        raise InvariantViolation("abelian basis does not span the quotient")

    modulus = math.lcm(*orders) if orders else 1
    chars = []
    for ks in itertools.product(*[range(m) for m in orders]):
        exps_label = {
            lab: sum(k * a * (modulus // m) for k, a, m in zip(ks, tup, orders)) % modulus
            for lab, tup in coords.items()
        }
        g = modulus
        for v in exps_label.values():
            g = math.gcd(g, v)
        order = modulus // g
        exps = {x: (exps_label[coset_of[x]] // g) % order for x in H.elements_raw()}
        chars.append(LinearCharacter(H, order, exps))
    chars.sort(key=LinearCharacter.sort_key)
    return chars


# --- F_p linear algebra ----------------------------------------------------


def _det_mod(M: list, p: int) -> int:
    n = len(M)
    A = [row[:] for row in M]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            f = A[r][c] * inv % p
            if f:
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[c])]
    return det % p


def _rref_mod(M: list, p: int):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    A = [[x % p for x in row] for row in M]
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A[:r], pivots


def _kernel_mod(M: list, p: int) -> list:
    """Deterministic kernel basis: one vector per free column, that column 1."""
    rows, pivots = _rref_mod(M, p)
    ncols = len(M[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rows[r][fc]) % p
        basis.append(v)
    return basis


def _lagrange(xs: list, ys: list, p: int) -> list:
    """Interpolating polynomial coefficients mod p, low degree first."""
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        poly = [1]
        for j in range(n):
            if j == i:
                continue
            nxt = [0] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k] = (nxt[k] - xs[j] * c) % p
                nxt[k + 1] = (nxt[k + 1] + c) % p
            poly = nxt
        denom = 1
        for j in range(n):
            if j != i:
                denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom, -1, p) % p
        for k, c in enumerate(poly):
            coeffs[k] = (coeffs[k] + scale * c) % p
    return coeffs


def _poly_roots(coeffs: list, p: int) -> list:
    return [x for x in range(p)
            if sum(c * pow(x, k, p) for k, c in enumerate(coeffs)) % p == 0]


# --- the modular table -----------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _dixon_prime(exponent: int, group_order: int) -> int:
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * group_order):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise InvariantViolation("no primitive root found")


def _structure_constants(G: PermutationGroup, classes) -> list:
    """A[k][i][j] = #{(x, y) in C_i x C_j : x y = rep_k}."""
    ncl = len(classes)
    cls = classes.class_map()
    reps = [c.rep.raw for c in classes.classes]
    A = [[[0] * ncl for _ in range(ncl)] for _ in range(ncl)]
    for x in G.elements_raw():
        xi = invert(x)
        i = cls[x]
        for k, z in enumerate(reps):
            A[k][i][cls[compose(xi, z)]] += 1
    return A


class Character:
    """One irreducible character: exact values in canonical class order."""

    def __init__(self, classes, degree: int, values: tuple):
        self.classes = classes
        self.degree = degree
        self.values = values

    def value(self, g) -> Cyclotomic:
        return self.values[self.classes.class_of(g)]

    def sort_key(self):
        return (self.degree, tuple(v.canonical_key() for v in self.values))

    def __repr__(self):
        return f"Character(degree={self.degree})"


class CharacterTable:
    def __init__(self, group, classes, rows, prime):
        self.group = group
        self.classes = classes
        self.rows = tuple(rows)
        self.prime = prime

    def __len__(self):
        return len(self.rows)

    def find_row(self, values) -> int:
        vals = tuple(values)
        for r, row in enumerate(self.rows):
            if all(a == b for a, b in zip(row.values, vals)):
                return r
        raise NoSuchCharacter("no table row matches the given class function")

    def inner(self, f_values, g_values) -> Cyclotomic:
        sizes = self.classes.sizes()
        total = cyc_sum(
            f * g.conj() * Fraction(s)
            for f, g, s in zip(f_values, g_values, sizes)
        )
        return total / Fraction(self.group.order)

    def decompose(self, f_values) -> tuple:
        """Multiplicities of each row in a class function, exactly."""
        out = []
        for row in self.rows:
            m = self.inner(f_values, row.values)
            q = m.as_rational()
            if q is None or q.denominator != 1 or q < 0:
                raise NonIntegerMultiplicity(
                    f"inner product {m!r} is not a nonnegative integer"
                )
            out.append(int(q))
        return tuple(out)


def character_table(G: PermutationGroup) -> CharacterTable:
    classes = G.conjugacy_classes()
    ncl = len(classes)
    sizes = list(classes.sizes())
    orders = [c.element_order for c in classes.classes]
    n = G.order
    exponent = math.lcm(*orders)
    p = _dixon_prime(exponent, n)
    A = _structure_constants(G, classes)

    spaces = [[tuple(1 if c == r else 0 for c in range(ncl)) for r in range(ncl)]]
    for i in range(1, ncl):
        if all(len(B) == 1 for B in spaces):
            break
        M = [[A[k][i][j] % p for k in range(ncl)] for j in range(ncl)]
        spaces = _split_spaces(spaces, M, p)
    if not all(len(B) == 1 for B in spaces):
        raise InvariantViolation("class matrices failed to separate characters")

    omegas = []
    for B in spaces:
        v = B[0]
        if v[0] % p == 0:
            raise InvariantViolation("eigenvector vanishes at the identity class")
        s = pow(v[0], -1, p)
        omegas.append([x * s % p for x in v])

    inv_class = [classes.class_of(invert(c.rep.raw)) for c in classes.classes]
    inv_sizes = [pow(s, -1, p) for s in sizes]
    root = int(math.isqrt(n))

    g0 = _primitive_root(p)
    z_e = pow(g0, (p - 1) // exponent, p)
    power_classes = []
    for c in classes.classes:
        pcls, cur = [], G.identity_raw()
        for _ in range(c.element_order):
            pcls.append(classes.class_of(cur))
            cur = compose(c.rep.raw, cur)
        power_classes.append(pcls)

    rows = []
    total_sq = 0
    for omega in omegas:
        S = sum(omega[m] * omega[inv_class[m]] * inv_sizes[m] for m in range(ncl)) % p
        target = n * pow(S, -1, p) % p
        degree = next((d for d in range(1, root + 1) if d * d % p == target), None)
        if degree is None:
            raise InvariantViolation("degree recovery failed")
        chi_mod = [degree * omega[k] * inv_sizes[k] % p for k in range(ncl)]
        values = []
        for k in range(ncl):
            nk = orders[k]
            z_n = pow(z_e, exponent // nk, p)
            zpow = [1] * nk
            for t in range(1, nk):
                zpow[t] = zpow[t - 1] * z_n % p
            vals = [chi_mod[c] for c in power_classes[k]]
            n_inv = pow(nk, -1, p)
            mus = []
            for j in range(nk):
                mu = n_inv * sum(vals[t] * zpow[(-j * t) % nk] for t in range(nk)) % p
                if mu > degree:
                    raise InvariantViolation("eigenvalue multiplicity exceeds degree")
                mus.append(mu)
            if sum(mus) != degree:
                raise InvariantViolation("eigenvalue multiplicities do not sum to degree")
            values.append(cyc_sum(
                Cyclotomic.root_of_unity(nk, j) * Fraction(mu)
                for j, mu in enumerate(mus) if mu
            ))
        rows.append(Character(classes, degree, tuple(values)))
        total_sq += degree * degree
    if total_sq != n:
        raise InvariantViolation("sum of squared degrees misses the group order")

    rows.sort(key=Character.sort_key)
    return CharacterTable(G, classes, rows, p)


def _split_spaces(spaces: list, M: list, p: int) -> list:
    out = []
    for B in spaces:
        if len(B) == 1:
            out.append(B)
            continue
        m = len(B)
        pivots = [next(c for c, x in enumerate(row) if x) for row in B]
        R = [[0] * m for _ in range(m)]
        ncl = len(B[0])
        for c in range(m):
            w = [sum(M[j][k] * B[c][k] for k in range(ncl)) % p for j in range(ncl)]
            coefs = [w[pc] for pc in pivots]
            for j in range(ncl):
                resid = (w[j] - sum(coefs[r] * B[r][j] for r in range(m))) % p
                if resid:
                    raise InvariantViolation("subspace is not invariant")
            for r in range(m):
                R[r][c] = coefs[r]
        coeffs = _lagrange(list(range(m + 1)),
                           [_det_mod([[(x if a == b else 0) - R[a][b]
                                       for b in range(m)] for a in range(m)], p)
                            for x in range(m + 1)], p)
        roots = _poly_roots(coeffs, p)
        kernel_total = 0
        for lam in sorted(roots):
            K = _kernel_mod([[(R[a][b] - (lam if a == b else 0)) % p
                              for b in range(m)] for a in range(m)], p)
            if not K:
                continue
            kernel_total += len(K)
            vecs = []
            for kv in K:
                v = [sum(kv[c] * B[c][j] for c in range(m)) % p for j in range(ncl)]
                vecs.append(v)
            rows, _ = _rref_mod(vecs, p)
            out.append([tuple(r) for r in rows])
        if kernel_total != m:
            raise InvariantViolation("eigenspaces do not fill the subspace")
    return out


# --- derived helpers --------------------------------------------------------


def permutation_character(G: PermutationGroup) -> list:
    """Fixed-point counts of the natural action, one value per class."""
    out = []
    for c in G.conjugacy_classes().classes:
        fixed = sum(1 for x, y in enumerate(c.rep.raw) if x == y)
        out.append(Cyclotomic.rational(fixed))
    return out


def multiplicity(chi: Character, nu: LinearCharacter) -> int:
    """<chi|_H, nu> = (1/|H|) sum over H of chi(s) conj(nu(s)), exactly."""
    H = nu.group
    counts: dict = {}
    for s in H.elements_raw():
        key = (chi.classes.class_of(s), nu.exponent(s))
        counts[key] = counts.get(key, 0) + 1
    total = cyc_sum(
        chi.values[cid]
        * Cyclotomic.root_of_unity(nu.order, -e % nu.order)
        * Fraction(cnt)
        for (cid, e), cnt in counts.items()
    )
    q = (total / Fraction(H.order)).as_rational()
    if q is None or q.denominator != 1 or q < 0:
        raise NonIntegerMultiplicity(f"restriction multiplicity {q!r} is not an integer")
    return int(q)
