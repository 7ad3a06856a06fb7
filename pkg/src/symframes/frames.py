"""Twisted spherical functions, group-frame Gram rows, and line systems.

A row is stored as exact values on double-coset representatives plus a
per-element table (cell id, phase exponent) built by propagating the
transformation law row(t1·g·t2) = conj(nu1(t1))·conj(nu2(t2))·row(g), so
evaluation anywhere in the group costs one lookup.  Conventions frozen
here:

  * row(g) is the diagonal matrix coefficient of the rank-one projector
    onto the nu-isotypic line, normalized so row(identity) equals the
    multiplicity of nu in the restriction of chi.
  * Gram entry(g1, g2) = row(g2^-1·g1), which makes the full matrix over
    any transversal a genuine positive semidefinite Gram.
  * Angle data is compared as exact squared moduli; an exact modulus is
    attached for display whenever the value factors as a nonnegative real
    times a root of unity.

Cross rows between two frames are normalized through the tight-frame
identity (the sum over G of the squared modulus equals |G|/d) and are
known only modulo one global phase, which downstream assembly resolves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .chartab import Character, LinearCharacter, multiplicity
from .cyclo import Cyclotomic, compare_real, cyc_sum, sqrt_rational, sqrt_real
from .errors import (
    AllChoicesZero,
    ComputationError,
    ElementNotInGroup,
    InvariantViolation,
    MultiplicityNotOne,
    NotASubgroup,
    OrderExceedsCap,
    StabilizerNotSubgroup,
    ZeroMultiplicity,
)
from .permcore import (
    Permutation,
    PermutationGroup,
    _close_under,
    compose,
    coset_representatives,
    double_cosets,
    invert,
    subgroup_from_members,
)


@dataclass(frozen=True)
class Cell:
    rep: bytes
    size: int
    value: Cyclotomic


def _raw(g) -> bytes:
    return g.raw if isinstance(g, Permutation) else g


def _scaled_gens(H: PermutationGroup, nu: LinearCharacter, m: int):
    step = m // nu.order
    return [(g.raw, nu.exponent(g.raw) * step % m) for g in H.generators]


def _phase_table(G, H1, nu1, H2, nu2):
    """Double-coset sweep with phase exponents.

    Returns (m, cells, table) with table[g] = (cell id, e) and
    row(g) = cell_value * zeta_m^(-e).  Cells are discovered in order of
    their minimal member, so the identity cell comes first.
    """
    m = math.lcm(nu1.order, nu2.order)
    left = _scaled_gens(H1, nu1, m)
    right = _scaled_gens(H2, nu2, m)
    table: dict[bytes, tuple[int, int]] = {}
    cells: list[tuple[bytes, int]] = []
    for x in G.elements_raw():
        if x in table:
            continue
        cid = len(cells)
        table[x] = (cid, 0)
        frontier = [(x, 0)]
        count = 1
        while frontier:
            new = []
            for u, e in frontier:
                for t, et in left:
                    v = compose(t, u)
                    if v not in table:
                        ev = (e + et) % m
                        table[v] = (cid, ev)
                        new.append((v, ev))
                        count += 1
                for t, et in right:
                    v = compose(u, t)
                    if v not in table:
                        ev = (e + et) % m
                        table[v] = (cid, ev)
                        new.append((v, ev))
                        count += 1
            frontier = new
        cells.append((x, count))
    return m, cells, table


class _CellRow:
    """Shared machinery: exact cell values plus O(1) evaluation on all of G."""

    def __init__(self, G, cells, table, m):
        self.group = G
        self.cells = tuple(cells)
        self._table = table
        self._m = m
        self._value_cache: dict[tuple[int, int], Cyclotomic] = {}

    def value_key(self, g) -> tuple[int, int]:
        """Hashable key determining row(g); equal keys give equal values."""
        try:
            return self._table[_raw(g)]
        except KeyError:
            raise ElementNotInGroup("element is outside the row's group") from None

    def key_value(self, key) -> Cyclotomic:
        cached = self._value_cache.get(key)
        if cached is None:
            cid, e = key
            cached = self.cells[cid].value * Cyclotomic.root_of_unity(
                self._m, -e % self._m
            )
            self._value_cache[key] = cached
        return cached

    def evaluate(self, g) -> Cyclotomic:
        return self.key_value(self.value_key(g))

    def distinct_values_on(self, raws) -> list[Cyclotomic]:
        keys = sorted({self.value_key(u) for u in raws})
        out: list[Cyclotomic] = []
        for key in keys:
            v = self.key_value(key)
            if not any(v == w for w in out):
                out.append(v)
        return out


class TwistedSphericalRow(_CellRow):
    def __init__(self, G, H, chi, nu, k, cells, table, m):
        super().__init__(G, cells, table, m)
        self.subgroup = H
        self.chi = chi
        self.nu = nu
        self.k = k
        self.reducible = k > 1

    @property
    def dimension(self) -> int:
        return self.chi.degree

    def __repr__(self):
        return (f"TwistedSphericalRow(|G|={self.group.order}, "
                f"|H|={self.subgroup.order}, d={self.dimension}, k={self.k}, "
                f"cells={len(self.cells)})")


class CrossGramRow(_CellRow):
    known_modulo_phase = True

    def __init__(self, G, chi, H1, nu1, H2, nu2, cells, table, m, chosen_a, scale):
        super().__init__(G, cells, table, m)
        self.chi = chi
        self.subgroup1 = H1
        self.nu1 = nu1
        self.subgroup2 = H2
        self.nu2 = nu2
        self.chosen_a = chosen_a
        self.scale = scale

    @property
    def dimension(self) -> int:
        return self.chi.degree

    def __repr__(self):
        return (f"CrossGramRow(|G|={self.group.order}, "
                f"|H1|={self.subgroup1.order}, |H2|={self.subgroup2.order}, "
                f"cells={len(self.cells)})")


def _require_subgroup_pair(G, H, nu):
    if nu.group is not H and nu.group.elements_raw() != H.elements_raw():
        raise NotASubgroup("the linear character lives on a different subgroup")
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not contained in G")


def twisted_spherical(G: PermutationGroup, chi: Character, H: PermutationGroup,
                      nu: LinearCharacter) -> TwistedSphericalRow:
    """row(g) = (1/|H|) * sum over s in H of chi(s·g^-1) * conj(nu(s))."""
    _require_subgroup_pair(G, H, nu)
    k = multiplicity(chi, nu)
    if k == 0:
        raise ZeroMultiplicity(
            "nu does not occur in the restriction: the row vanishes identically"
        )
    m, raw_cells, table = _phase_table(G, H, nu, H, nu)
    cls = chi.classes.class_map()
    h_elems = H.elements_raw()
    order_h = Fraction(len(h_elems))
    cells = []
    for rep, size in raw_cells:
        gi = invert(rep)
        counts: dict[tuple[int, int], int] = {}
        for s in h_elems:
            key = (cls[compose(s, gi)], nu.exponent(s))
            counts[key] = counts.get(key, 0) + 1
        value = cyc_sum(
            chi.values[c] * Cyclotomic.root_of_unity(nu.order, -e % nu.order)
            * Fraction(cnt)
            for (c, e), cnt in counts.items()
        ) / order_h
        cells.append(Cell(rep, size, value))
    if cells[0].value != Cyclotomic.rational(k):
        raise InvariantViolation("identity cell does not equal the multiplicity")
    return TwistedSphericalRow(G, H, chi, nu, k, cells, table, m)


def evaluate_row(row: _CellRow, g) -> Cyclotomic:
    return row.evaluate(g)


class GroupGram:
    """Exact Hermitian Gram over an index list: entry(i,j) = row(r_j^-1 r_i)."""

    def __init__(self, row: _CellRow, reps=None):
        self.row = row
        if reps is None:
            reps = row.group.elements_raw()
        self.reps = [_raw(r) for r in reps]
        self.n = len(self.reps)

    def entry(self, i: int, j: int) -> Cyclotomic:
        return self.row.evaluate(compose(invert(self.reps[j]), self.reps[i]))

    def dense(self) -> list:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def to_complex(self):
        import numpy as np

        out = np.empty((self.n, self.n), dtype=complex)
        for i in range(self.n):
            for j in range(self.n):
                out[i, j] = self.entry(i, j).approx().midpoint
        return out


def gram(row: _CellRow, reps=None) -> GroupGram:
    return GroupGram(row, reps)


def exact_modulus(value: Cyclotomic) -> Cyclotomic | None:
    """|value| as an exact cyclotomic, when the value admits one.

    A rational squared modulus is handled directly; otherwise the value is
    tested against roots of unity in a few small extension fields for a
    factorization value = |value| * root.  Returns None when no exact form
    is found, in which case callers fall back to the squared modulus.
    """
    q = value.abs_squared()
    r = q.as_rational()
    if r is not None:
        return sqrt_rational(r)
    c = value.conductor
    tried: set[int] = set()
    for n in (math.lcm(c, 2), math.lcm(c, 4), math.lcm(2 * c, 4), math.lcm(2 * c, 8)):
        if n in tried or n > 480:
            continue
        tried.add(n)
        for j in range(n):
            w = value * Cyclotomic.root_of_unity(n, j)
            if w.is_real() and w.sign_real() >= 0:
                return w
    return None


@dataclass(frozen=True)
class AngleEntry:
    abs_squared: Cyclotomic
    modulus: Cyclotomic | None
    count: int

    def modulus_float(self) -> float:
        q = self.abs_squared.approx().midpoint.real
        return math.sqrt(max(q, 0.0))


class LineSystemSummary:
    def __init__(self, row, h_l, h_v, line_count, gon_order, angles):
        self.row = row
        self.line_stabilizer = h_l
        self.vector_stabilizer = h_v
        self.line_count = line_count
        self.gon_order = gon_order
        self.angles = tuple(angles)

    @property
    def stabilizer_order(self) -> int:
        return self.line_stabilizer.order

    @property
    def frame_count(self) -> int:
        return self.gon_order * self.line_count

    def coherence_squared(self) -> Cyclotomic:
        return self.angles[0].abs_squared if self.angles else Cyclotomic.zero()

    def coherence(self) -> tuple[Cyclotomic | None, float]:
        if not self.angles:
            return Cyclotomic.zero(), 0.0
        top = self.angles[0]
        return top.modulus, top.modulus_float()

    def __repr__(self):
        return (f"LineSystemSummary(lines={self.line_count}, "
                f"gon={self.gon_order}, angles={len(self.angles)})")


def _verified_subgroup(G: PermutationGroup, members: list, err: str) -> PermutationGroup:
    S = subgroup_from_members(G, members)
    try:
        closure = _close_under(G.degree, [g.raw for g in S.generators],
                               len(members) + 1)
    except OrderExceedsCap:
        raise StabilizerNotSubgroup(err) from None
    if closure != S.elements_raw():
        raise StabilizerNotSubgroup(err)
    return S


def homogenize(row: TwistedSphericalRow) -> LineSystemSummary:
    """Collapse a multiplicity-one row into its line system."""
    if row.k != 1:
        raise MultiplicityNotOne(f"homogenization requires multiplicity 1, got {row.k}")
    G = row.group
    one = Cyclotomic.one()
    unit_cells = {i for i, c in enumerate(row.cells) if c.value.abs_squared() == one}
    members = sorted(u for u, (cid, _) in row._table.items() if cid in unit_cells)
    h_l = _verified_subgroup(G, members, "modulus-one locus fails to close")
    if G.order % len(members):
        raise InvariantViolation("stabilizer order does not divide the group order")
    line_count = G.order // len(members)

    phases = row.distinct_values_on(members)
    gon = len(phases)
    v_members = sorted(u for u in members if row.evaluate(u) == one)
    h_v = _verified_subgroup(G, v_members, "value-one locus fails to close")
    if gon * len(v_members) != len(members):
        raise InvariantViolation("phase count disagrees with the stabilizer index")

    groups: list[list] = []
    for c in row.cells:
        a = c.value.abs_squared()
        if a == one:
            continue
        for entry in groups:
            if a == entry[0]:
                entry[2] += c.size
                break
        else:
            groups.append([a, c.value, c.size])
    angles = []
    denom = len(members) ** 2
    for a, witness, elem_count in groups:
        pairs = elem_count * G.order
        if pairs % denom:
            raise InvariantViolation("angle pair count is not an integer")
        angles.append(AngleEntry(a, exact_modulus(witness), pairs // denom))
    if sum(e.count for e in angles) != line_count * (line_count - 1):
        raise InvariantViolation("angle counts do not tile the ordered line pairs")
    angles.sort(key=cmp_to_key(lambda x, y: -compare_real(x.abs_squared, y.abs_squared)))
    return LineSystemSummary(row, h_l, h_v, line_count, gon, angles)


def angle_set(obj) -> tuple[AngleEntry, ...]:
    if isinstance(obj, LineSystemSummary):
        return obj.angles
    if isinstance(obj, TwistedSphericalRow):
        return homogenize(obj).angles
    raise TypeError("angle_set expects a row or a line-system summary")


def frame_representatives(summary: LineSystemSummary) -> list[bytes]:
    """Coset representatives labeling the frame's distinct vectors."""
    return [r.raw for r in coset_representatives(summary.row.group,
                                                 summary.vector_stabilizer)]


def line_representatives(summary: LineSystemSummary) -> list[bytes]:
    return [r.raw for r in coset_representatives(summary.row.group,
                                                 summary.line_stabilizer)]


# --- cross rows ---------------------------------------------------------


def _coset_phase_table(G, H, nu):
    """T(t·y) = nu(t)·T(y): representatives of cosets H·y plus exponents."""
    m = nu.order
    gens = [(g.raw, nu.exponent(g.raw)) for g in H.generators]
    table: dict[bytes, tuple[int, int]] = {}
    reps: list[bytes] = []
    for x in G.elements_raw():
        if x in table:
            continue
        rid = len(reps)
        reps.append(x)
        table[x] = (rid, 0)
        frontier = [(x, 0)]
        while frontier:
            new = []
            for u, e in frontier:
                for t, et in gens:
                    v = compose(t, u)
                    if v not in table:
                        ev = (e + et) % m
                        table[v] = (rid, ev)
                        new.append((v, ev))
            frontier = new
    return reps, table


def cross_row(G: PermutationGroup, chi: Character,
              H1: PermutationGroup, nu1: LinearCharacter,
              H2: PermutationGroup, nu2: LinearCharacter) -> CrossGramRow:
    """Exact cross-Gram row between the (H1,nu1) and (H2,nu2) frames.

    The seed element a runs over (H1,H2)-double coset representatives in a
    frozen order until the row is not identically zero; changing a inside
    its double coset only moves the overall phase, which is unresolved here
    by construction.
    """
    _require_subgroup_pair(G, H1, nu1)
    _require_subgroup_pair(G, H2, nu2)
    for nu in (nu1, nu2):
        k = multiplicity(chi, nu)
        if k != 1:
            raise MultiplicityNotOne(
                f"cross rows need multiplicity 1 on both sides, got {k}"
            )
    cls = chi.classes.class_map()
    m1, m2 = nu1.order, nu2.order
    m = math.lcm(m1, m2)
    s1, s2 = m // m1, m // m2
    target = Fraction(G.order, chi.degree)

    t_reps, t_table = _coset_phase_table(G, H1, nu1)
    h1_elems = H1.elements_raw()
    t_values = []
    for rep in t_reps:
        counts: dict[tuple[int, int], int] = {}
        for h in h1_elems:
            key = (cls[compose(h, rep)], nu1.exponent(h))
            counts[key] = counts.get(key, 0) + 1
        t_values.append(cyc_sum(
            chi.values[c] * Cyclotomic.root_of_unity(m1, -e % m1) * Fraction(cnt)
            for (c, e), cnt in counts.items()
        ))

    _, raw_cells, table = _phase_table(G, H1, nu1, H2, nu2)
    h2_elems = H2.elements_raw()
    denom = Fraction(len(h1_elems) * len(h2_elems))

    # For a seed a the raw row equals conj(t(a^-1)) times the normalized
    # row t, so its value at a^-1 is R = |t(a^-1)|^2: a real, directly
    # computable normalization constant.  The seed transforms with an H2
    # phase on the left and an H1 phase on the right, so candidate seeds
    # run over (H2, H1)-double cosets, in their frozen order, until the
    # row is nonzero.  Dividing a nonzero cell value v by R gives the
    # squared modulus |t|^2 = v conj(v) / R at that cell; gauging the row
    # against the first cell whose modulus has an exact square root keeps
    # every reported value inside the cyclotomic field.
    chosen_a = None
    values: list[Cyclotomic] = []
    scale = None
    saw_nonzero = False
    for a_cell in double_cosets(G, H2, H1).cells:
        a = a_cell.rep.raw
        ai = invert(a)
        trial = []
        nonzero = False
        for rep, _size in raw_cells:
            gi = invert(rep)
            counts: dict[tuple[int, int], int] = {}
            for h2 in h2_elems:
                u = compose(ai, compose(h2, gi))
                tid, te = t_table[u]
                comb = (te * s1 - nu2.exponent(h2) * s2) % m
                key = (tid, comb)
                counts[key] = counts.get(key, 0) + 1
            v = cyc_sum(
                t_values[tid] * Cyclotomic.root_of_unity(m, e) * Fraction(cnt)
                for (tid, e), cnt in counts.items()
            ) / denom
            trial.append(v)
            nonzero = nonzero or not v.is_zero()
        if not nonzero:
            continue
        saw_nonzero = True
        cid, e = table[ai]
        r_const = trial[cid] * Cyclotomic.root_of_unity(m, -e % m)
        if not r_const.is_real() or r_const.sign_real() != 1:
            raise InvariantViolation(
                "raw cross row at the inverse seed is not a positive real"
            )
        r_inv = r_const.inverse()
        for v in trial:
            if v.is_zero():
                continue
            root = sqrt_real(v * v.conj() * r_inv)
            if root is None or root.is_zero():
                continue
            # t(g) times a unit: raw * conj(v) / (R * |t(cell)|)
            chosen_a = a
            values = trial
            scale = v.conj() * r_inv * root.inverse()
            break
        if chosen_a is not None:
            break
    if not saw_nonzero:
        raise AllChoicesZero("every double-coset choice annihilates the cross row")
    if chosen_a is None:
        raise ComputationError(
            "no cross-row cell modulus has an exact square root in the "
            "supported cyclotomic fields"
        )

    cells = [Cell(rep, size, v * scale)
             for (rep, size), v in zip(raw_cells, values)]
    out = CrossGramRow(G, chi, H1, nu1, H2, nu2, cells, table, m, chosen_a, scale)
    check = cyc_sum(c.value.abs_squared() * Fraction(c.size) for c in out.cells)
    if check.as_rational() != target:
        raise InvariantViolation("tight-frame norm identity fails after rescaling")
    return out


# --- class-function rows and convolution --------------------------------


class ClassFunctionRow:
    """Row built from a class function; the value key is the class id."""

    def __init__(self, G: PermutationGroup, values):
        self.group = G
        self.classes = G.conjugacy_classes()
        self.values = tuple(values)

    def value_key(self, g):
        return self.classes.class_of(_raw(g))

    def key_value(self, key) -> Cyclotomic:
        return self.values[key]

    def evaluate(self, g) -> Cyclotomic:
        return self.values[self.classes.class_of(_raw(g))]


def isotypic_projection_row(G: PermutationGroup, chi: Character) -> ClassFunctionRow:
    """row(g) = (chi(1)/|G|) * conj(chi(g)); idempotent under convolution."""
    scale = Fraction(chi.degree, G.order)
    return ClassFunctionRow(G, [v.conj() * scale for v in chi.values])


def convolve_at(f, h, g, G: PermutationGroup) -> Cyclotomic:
    """(f * h)(g) = sum over x in G of f(x) * h(x^-1 g), exactly."""
    graw = _raw(g)
    counts: dict[tuple, int] = {}
    for x in G.elements_raw():
        key = (f.value_key(x), h.value_key(compose(invert(x), graw)))
        counts[key] = counts.get(key, 0) + 1
    return cyc_sum(
        f.key_value(kf) * h.key_value(kh) * Fraction(cnt)
        for (kf, kh), cnt in counts.items()
    )
