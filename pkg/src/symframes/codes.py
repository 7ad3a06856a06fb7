"""Spherical codes: explicit constructions, phased unions, kissing certificates.

Conventions frozen here:

  * Assembled Gram entries follow the standard matrix convention
    M[i, j] = x_i^* x_j (conjugate-linear in the row index), so M = X^* X is
    positive semidefinite by construction whenever the inputs are consistent.
    A frame block's diagonal sub-block is the frames-module GroupGram, whose
    entry(i, j) = row(g_j^-1 g_i) equals x_i^* x_j in this convention; a
    stored cross row tabulates m(a^-1 b) = y_b^* x_a and therefore enters the
    (H1, nu1)-rows block conjugated.  Re-phasing block p by a unit phi_p
    multiplies its rows by conj(phi_p) and its columns by phi_p.
  * A complex d-dimensional code realifies to 2d real coordinates ordered
    (Re e_1, ..., Re e_d, Im e_1, ..., Im e_d); realified pairwise products
    are the real parts of the complex ones.
  * Assembled Grams are stored as a small-integer code matrix plus an exact
    value table: every entry of the named constructions lies in a finite set
    of cyclotomic values, so exact entry-level checks run on the table while
    the eigensolve runs on a float image of the same matrix.
  * Entry-level claims (max real part <= 1/2, duplicates, value sets) are
    exact; positive semidefiniteness and rank are certified numerically with
    tolerance tol = 1e-9 * n * max|entry|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations, product

import numpy as np

from .cyclo import Cyclotomic, compare_real, cyc_sum, sqrt_rational
from .errors import (
    CoherenceExceeded,
    DuplicateVectors,
    InconsistentDimensions,
    InputError,
    InvariantViolation,
    MissingCrossBlock,
    NoFeasiblePhase,
    NotPSD,
    RankExceedsDimension,
)
from .frames import (
    AngleEntry,
    CrossGramRow,
    LineSystemSummary,
    TwistedSphericalRow,
    exact_modulus,
    frame_representatives,
)
from .permcore import compose, invert

_ONE = Cyclotomic.one()
_ZERO = Cyclotomic.zero()
_I = Cyclotomic.root_of_unity(4, 1)
_MINUS_I = Cyclotomic.root_of_unity(4, 3)
_HALF = Cyclotomic.rational(Fraction(1, 2))


def _coerce(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x)


# --------------------------------------------------------------------------
# explicit codes
# --------------------------------------------------------------------------


class ExplicitCode:
    """A finite list of exact unit vectors with cyclotomic coordinates."""

    def __init__(self, dimension: int, vectors, name: str = "code", check: bool = True):
        self.dimension = dimension
        self.name = name
        vecs = []
        for v in vectors:
            vec = tuple(_coerce(x) for x in v)
            if len(vec) != dimension:
                raise InconsistentDimensions(
                    f"{name}: vector length {len(vec)} != dimension {dimension}"
                )
            vecs.append(vec)
        self.vectors = tuple(vecs)
        if check:
            keys = set()
            for idx, vec in enumerate(self.vectors):
                norm = cyc_sum(x * x.conj() for x in vec)
                if norm != _ONE:
                    raise InvariantViolation(f"{name}: vector {idx} is not unit norm")
                key = tuple(x.canonical_key() for x in vec)
                if key in keys:
                    raise InvariantViolation(f"{name}: vector {idx} repeats an earlier one")
                keys.add(key)

    def __len__(self) -> int:
        return len(self.vectors)

    def is_real(self) -> bool:
        return all(x.is_real() for v in self.vectors for x in v)

    def inner(self, i: int, j: int) -> Cyclotomic:
        """Gram entry M[i, j] = sum_k conj(x_i[k]) x_j[k]."""
        return cyc_sum(x.conj() * y for x, y in zip(self.vectors[i], self.vectors[j]))

    def scaled_integer_image(self):
        """(sigma, re, im) with sigma * vector entries in Z[i], or None.

        sigma runs over a short list of positive real scales; the first one
        mapping every coordinate to a Gaussian integer wins.  The image makes
        inner products exact integer arithmetic: <x, y> = (re/im dot) / sigma^2.
        """
        sqrt2 = sqrt_rational(2)
        two = Cyclotomic.rational(2)
        for sigma in (_ONE, sqrt2, two, two * sqrt2, two * two):
            re = np.zeros((len(self.vectors), self.dimension), dtype=np.int64)
            im = np.zeros_like(re)
            ok = True
            for i, vec in enumerate(self.vectors):
                for j, x in enumerate(vec):
                    z = x * sigma
                    a = z.real_part().as_rational()
                    b = (z.imag_part_times_i() * _MINUS_I).as_rational()
                    if a is None or b is None or a.denominator != 1 or b.denominator != 1:
                        ok = False
                        break
                    re[i, j] = int(a)
                    im[i, j] = int(b)
                if not ok:
                    break
            if ok:
                return sigma, re, im
        return None

    def __repr__(self):
        return f"ExplicitCode({self.name}, n={len(self.vectors)}, d={self.dimension})"


def realify(obj):
    """Real image: codes via C^d -> R^2d, single entries via (z + conj z)/2."""
    if isinstance(obj, ExplicitCode):
        out = []
        for vec in obj.vectors:
            re = [x.real_part() for x in vec]
            im = [x.imag_part_times_i() * _MINUS_I for x in vec]
            out.append(tuple(re) + tuple(im))
        return ExplicitCode(2 * obj.dimension, out, name=f"realified-{obj.name}",
                            check=False)
    if isinstance(obj, Cyclotomic):
        return obj.real_part()
    raise InputError("realify expects an ExplicitCode or a Cyclotomic entry")


# --------------------------------------------------------------------------
# named explicit constructions
# --------------------------------------------------------------------------

# Lines of the Fano plane as difference-set translates {j, j+1, j+3} mod 7.
_FANO_LINES = tuple(frozenset({j % 7, (j + 1) % 7, (j + 3) % 7}) for j in range(7))


class E7Shell(ExplicitCode):
    """126 unit vectors in R^7 grouped into 9 cross polytopes.

    cross_polytopes holds 9 tuples of 14 vector indices; each tuple is a set
    of 7 mutually orthogonal antipodal pairs.
    """

    def __init__(self, vectors, polytopes):
        super().__init__(7, vectors, name="e7-shell", check=True)
        self.cross_polytopes = tuple(tuple(p) for p in polytopes)


def construct_e7_shell() -> E7Shell:
    half = Fraction(1, 2)
    vectors: list[tuple[Fraction, ...]] = []
    for i in range(7):
        for s in (1, -1):
            vec = [Fraction(0)] * 7
            vec[i] = Fraction(s)
            vectors.append(tuple(vec))
    b0 = tuple(range(14))
    for line in _FANO_LINES:
        support = tuple(sorted(set(range(7)) - line))
        for signs in product((1, -1), repeat=4):
            vec = [Fraction(0)] * 7
            for pos, s in zip(support, signs):
                vec[pos] = s * half
            vectors.append(tuple(vec))
    if len(vectors) != 126:
        raise InvariantViolation("E7 shell enumeration did not produce 126 vectors")

    # Partition the 112 half-integer vectors into 8 cross polytopes.  Work at
    # the level of the 56 antipodal pairs (keep the representative whose first
    # nonzero coordinate is positive); a cross polytope is 7 pairwise
    # orthogonal pairs.  Deterministic backtracking over the canonical order.
    half_idx = list(range(14, 126))
    pair_rep: list[int] = []
    antipode: dict[int, int] = {}
    by_key = {vectors[i]: i for i in half_idx}
    for i in half_idx:
        neg = tuple(-x for x in vectors[i])
        j = by_key[neg]
        antipode[i] = j
        if i < j:
            pair_rep.append(i)
    orth: dict[int, set[int]] = {}
    for a, b in combinations(pair_rep, 2):
        dot = sum(x * y for x, y in zip(vectors[a], vectors[b]))
        if dot == 0:
            orth.setdefault(a, set()).add(b)
            orth.setdefault(b, set()).add(a)

    groups: list[list[int]] = []

    def extend(group: list[int], pool: list[int], remaining: set[int]) -> bool:
        if len(group) == 7:
            groups.append(list(group))
            rest = sorted(remaining)
            if not rest:
                return True
            head = rest[0]
            nxt = [p for p in rest[1:] if p in orth.get(head, ())]
            if extend([head], nxt, remaining - {head}):
                return True
            groups.pop()
            return False
        for k, cand in enumerate(pool):
            nxt = [p for p in pool[k + 1:] if p in orth[cand]]
            if len(nxt) >= 6 - len(group):
                if extend(group + [cand], nxt, remaining - {cand}):
                    return True
        return False

    all_pairs = sorted(pair_rep)
    first = all_pairs[0]
    if not extend([first], [p for p in all_pairs[1:] if p in orth.get(first, ())],
                  set(all_pairs) - {first}):
        raise InvariantViolation("the 112 shell vectors admit no cross-polytope partition")
    polytopes = [b0]
    for grp in groups:
        poly: list[int] = []
        for rep in grp:
            poly.extend((rep, antipode[rep]))
        polytopes.append(tuple(poly))
    shell = E7Shell(vectors, polytopes)
    for poly in shell.cross_polytopes:
        for a, b in combinations(poly, 2):
            dot = sum(x * y for x, y in zip(vectors[a], vectors[b]))
            if dot not in (0, -1):
                raise InvariantViolation("a claimed cross polytope is not one")
    return shell


def construct_phi3(shell: E7Shell | None = None) -> ExplicitCode:
    """1512 complex unit vectors i^k (v + i w)/sqrt(2), v, w in one polytope."""
    if shell is None:
        shell = construct_e7_shell()
    inv_sqrt2 = sqrt_rational(Fraction(1, 2))
    raw = [tuple(_coerce(x) for x in vec) for vec in shell.vectors]
    neg_of = {}
    key_of = {tuple(x.canonical_key() for x in raw[i]): i for i in range(len(raw))}
    for i, vec in enumerate(raw):
        neg_of[i] = key_of[tuple((-x).canonical_key() for x in vec)]
    seen = set()
    out = []
    powers = [Cyclotomic.root_of_unity(4, k) for k in range(4)]
    for poly in shell.cross_polytopes:
        for vi in poly:
            for wi in poly:
                if wi == vi or wi == neg_of[vi]:
                    continue
                base = tuple((x + _I * y) * inv_sqrt2
                             for x, y in zip(raw[vi], raw[wi]))
                for p in powers:
                    vec = tuple(p * x for x in base)
                    key = tuple(x.canonical_key() for x in vec)
                    if key not in seen:
                        seen.add(key)
                        out.append(vec)
    if len(out) != 1512:
        raise InvariantViolation(f"phi3 deduplication gave {len(out)} vectors, not 1512")
    return ExplicitCode(7, out, name="phi3", check=False)


def construct_d7_scaled() -> ExplicitCode:
    """84 unit vectors: all permutations of (+-1/sqrt2, +-1/sqrt2, 0^5)."""
    inv_sqrt2 = sqrt_rational(Fraction(1, 2))
    out = []
    for i, j in combinations(range(7), 2):
        for si, sj in product((1, -1), repeat=2):
            vec = [_ZERO] * 7
            vec[i] = inv_sqrt2 * si
            vec[j] = inv_sqrt2 * sj
            out.append(tuple(vec))
    return ExplicitCode(7, out, name="d7-scaled", check=True)


# --------------------------------------------------------------------------
# assembly blocks
# --------------------------------------------------------------------------


class FrameBlock:
    """A homogenized group frame: vector coset representatives plus its row."""

    def __init__(self, summary: LineSystemSummary, name: str | None = None):
        self.summary = summary
        self.row = summary.row
        self.reps = frame_representatives(summary)
        self.inv_reps = [invert(r) for r in self.reps]
        if len(self.reps) != summary.frame_count:
            raise InvariantViolation("frame transversal disagrees with the frame count")
        self.name = name or f"frame-{len(self.reps)}"
        self.dimension = self.row.chi.degree

    def __len__(self):
        return len(self.reps)


class ExplicitBlock:
    def __init__(self, code: ExplicitCode, name: str | None = None):
        self.code = code
        self.name = name or code.name
        self.dimension = code.dimension
        self._int_image = None
        self._int_tried = False

    def int_image(self):
        if not self._int_tried:
            self._int_image = self.code.scaled_integer_image()
            self._int_tried = True
        return self._int_image

    def __len__(self):
        return len(self.code)


@dataclass
class BlockSpec:
    source: FrameBlock | ExplicitBlock
    phase: Cyclotomic = field(default_factory=Cyclotomic.one)
    resolve: bool = False
    label: str | None = None

    def __post_init__(self):
        self.phase = _coerce(self.phase)
        if self.label is None:
            self.label = self.source.name


def frame_block(summary, phase=1, resolve=False, label=None) -> BlockSpec:
    return BlockSpec(FrameBlock(summary, label), _coerce(phase), resolve, label)


def explicit_block(code, phase=1, resolve=False, label=None) -> BlockSpec:
    return BlockSpec(ExplicitBlock(code, label), _coerce(phase), resolve, label)


def _nu_matches(nu_a, nu_b) -> bool:
    if nu_a is nu_b:
        return True
    if nu_a.group.elements_raw() != nu_b.group.elements_raw():
        return False
    return nu_a.sort_key() == nu_b.sort_key()


def _row_matches(block: FrameBlock, H, nu) -> bool:
    row = block.row
    return (row.subgroup.elements_raw() == H.elements_raw()
            and _nu_matches(row.nu, nu))


# --------------------------------------------------------------------------
# the assembled Gram
# --------------------------------------------------------------------------


class CodedGram:
    """n x n exact symmetric real Gram: int32 codes plus a cyclotomic table."""

    def __init__(self, n, codes, values, labels, block_slices):
        self.n = n
        self.codes = codes
        self.values = values            # exact realified entries, one per code
        self.labels = labels            # per-block display names
        self.block_slices = block_slices
        self._floats = None
        one_code = None
        for c, v in enumerate(values):
            if v == _ONE:
                one_code = c
        self.one_code = one_code

    def label_of(self, i: int) -> str:
        for (name, start, stop) in self.block_slices:
            if start <= i < stop:
                return f"{name}[{i - start}]"
        return str(i)

    def value_floats(self) -> np.ndarray:
        return np.array([v.approx().midpoint.real for v in self.values])

    def float_matrix(self) -> np.ndarray:
        if self._floats is None:
            self._floats = self.value_floats()[self.codes]
        return self._floats

    def offdiag_mask(self) -> np.ndarray:
        mask = np.ones((self.n, self.n), dtype=bool)
        np.fill_diagonal(mask, False)
        return mask

    def duplicates(self) -> list[tuple[int, int]]:
        if self.one_code is None:
            return []
        rows, cols = np.nonzero((self.codes == self.one_code) & self.offdiag_mask())
        return [(int(i), int(j)) for i, j in zip(rows, cols) if i < j]

    def entry_value_set(self) -> list[Cyclotomic]:
        present = np.unique(self.codes[self.offdiag_mask()])
        return [self.values[int(c)] for c in present]

    def max_offdiag(self) -> tuple[Cyclotomic, tuple[int, int]]:
        present = np.unique(self.codes[self.offdiag_mask()])
        order = sorted((int(c) for c in present),
                       key=cmp_to_key(lambda a, b: compare_real(self.values[a],
                                                                self.values[b])))
        top = order[-1]
        rows, cols = np.nonzero((self.codes == top) & self.offdiag_mask())
        return self.values[top], (int(rows[0]), int(cols[0]))


class GramAssembly:
    """Phased union of frame blocks and explicit blocks over one Hilbert space."""

    def __init__(self, blocks: list[BlockSpec], cross_rows=()):
        if not blocks:
            raise InputError("an assembly needs at least one block")
        dims = {b.source.dimension for b in blocks}
        if len(dims) != 1:
            raise InconsistentDimensions(
                f"blocks live in different complex dimensions: {sorted(dims)}"
            )
        self.dimension = dims.pop()
        frame_groups = {id(b.source.row.group): b.source.row.group
                        for b in blocks if isinstance(b.source, FrameBlock)}
        if len({tuple(g.elements_raw()) for g in frame_groups.values()}) > 1:
            raise InconsistentDimensions("frame blocks come from different groups")
        self.blocks = list(blocks)
        self.cross_rows = list(cross_rows)
        self.sizes = [len(b.source) for b in self.blocks]
        self.offsets = [0]
        for s in self.sizes:
            self.offsets.append(self.offsets[-1] + s)
        self.n = self.offsets[-1]
        self.resolved: dict[int, Cyclotomic] = {}
        self._pair_plans: dict[tuple[int, int], tuple] = {}
        self._pair_value_sets: dict[tuple[int, int], list[Cyclotomic]] = {}
        self._coded: CodedGram | None = None
        for p in range(len(self.blocks)):
            for q in range(p, len(self.blocks)):
                self._pair_plans[(p, q)] = self._plan_pair(p, q)

    # -- pair plumbing -----------------------------------------------------

    def _find_cross(self, brow: FrameBlock, crow: FrameBlock):
        for cr in self.cross_rows:
            if (_row_matches(brow, cr.subgroup1, cr.nu1)
                    and _row_matches(crow, cr.subgroup2, cr.nu2)):
                return cr, False
            if (_row_matches(brow, cr.subgroup2, cr.nu2)
                    and _row_matches(crow, cr.subgroup1, cr.nu1)):
                return cr, True
        return None, False

    def _plan_pair(self, p: int, q: int):
        bp, bq = self.blocks[p].source, self.blocks[q].source
        if isinstance(bp, FrameBlock) and isinstance(bq, FrameBlock):
            if bp.row is bq.row:
                return ("row", bp.row)
            cr, flipped = self._find_cross(bp, bq)
            if cr is None:
                raise MissingCrossBlock(
                    f"no cross row supplied for blocks "
                    f"{self.blocks[p].label!r} and {self.blocks[q].label!r}"
                )
            return ("cross", cr, flipped)
        if isinstance(bp, ExplicitBlock) and isinstance(bq, ExplicitBlock):
            return ("explicit",)
        raise MissingCrossBlock(
            "frame blocks and explicit blocks cannot be paired exactly: "
            f"{self.blocks[p].label!r} vs {self.blocks[q].label!r}"
        )

    def _pair_base_codes(self, p: int, q: int):
        """(codes submatrix, base complex values) before any phases."""
        plan = self._pair_plans[(p, q)]
        bp, bq = self.blocks[p].source, self.blocks[q].source
        if plan[0] == "row":
            row = plan[1]
            keys: dict = {}
            vals: list[Cyclotomic] = []
            codes = np.empty((len(bp), len(bq)), dtype=np.int32)
            for j, rq in enumerate(bq.inv_reps):
                for i, rp in enumerate(bp.reps):
                    k = row.value_key(compose(rq, rp))
                    c = keys.get(k)
                    if c is None:
                        c = len(vals)
                        keys[k] = c
                        vals.append(row.key_value(k))
                    codes[i, j] = c
            return codes, vals
        if plan[0] == "cross":
            # The stored cross row tabulates m with m(a^-1 b) = y_b^* x_a,
            # where x ranges over the (H1, nu1) frame and y over (H2, nu2).
            # The assembly's frozen convention is entry(i, j) = vec_i^* vec_j,
            # so the (H1, nu1)-rows block takes conj(m(g_i^-1 g_j)) and the
            # flipped orientation takes m(g_j^-1 g_i) directly.
            cr, flipped = plan[1], plan[2]
            keys = {}
            vals = []
            codes = np.empty((len(bp), len(bq)), dtype=np.int32)
            if not flipped:
                for i, ip in enumerate(bp.inv_reps):
                    for j, rq in enumerate(bq.reps):
                        k = (0, cr.value_key(compose(ip, rq)))
                        c = keys.get(k)
                        if c is None:
                            c = len(vals)
                            keys[k] = c
                            vals.append(cr.key_value(k[1]).conj())
                        codes[i, j] = c
            else:
                for j, jq in enumerate(bq.inv_reps):
                    for i, rp in enumerate(bp.reps):
                        k = (1, cr.value_key(compose(jq, rp)))
                        c = keys.get(k)
                        if c is None:
                            c = len(vals)
                            keys[k] = c
                            vals.append(cr.key_value(k[1]))
                        codes[i, j] = c
            return codes, vals
        # explicit x explicit: entry(i, j) = sum_k conj(x_i[k]) y_j[k]
        imp, imq = bp.int_image(), bq.int_image()
        if imp is not None and imq is not None:
            sp, rp, ip_ = imp
            sq, rq, iq = imq
            re = rp @ rq.T + ip_ @ iq.T
            im = rp @ iq.T - ip_ @ rq.T
            width = int(max(np.abs(re).max(), np.abs(im).max())) + 1
            packed = re * (2 * width + 1) + im
            uniq, inverse = np.unique(packed, return_inverse=True)
            denom = (sp * sq).inverse()
            vals = []
            for u in uniq:
                a, b = divmod(int(u), 2 * width + 1)
                if b > width:
                    b -= 2 * width + 1
                    a += 1
                vals.append((Cyclotomic.rational(a) + _I * b) * denom)
            codes = inverse.reshape(re.shape).astype(np.int32)
            return codes, vals
        keys = {}
        vals = []
        codes = np.empty((len(bp), len(bq)), dtype=np.int32)
        for i in range(len(bp)):
            for j in range(len(bq)):
                v = cyc_sum(x.conj() * y
                            for x, y in zip(bp.code.vectors[i], bq.code.vectors[j]))
                k = v.canonical_key()
                c = keys.get(k)
                if c is None:
                    c = len(vals)
                    keys[k] = c
                    vals.append(v)
                codes[i, j] = c
        return codes, vals

    def pair_value_set(self, p: int, q: int) -> list[Cyclotomic]:
        """Distinct base entry values between blocks p and q (no phases)."""
        got = self._pair_value_sets.get((p, q))
        if got is None:
            _, vals = self._pair_base_codes(p, q)
            got, seen = [], set()
            for v in vals:
                k = v.canonical_key()
                if k not in seen:
                    seen.add(k)
                    got.append(v)
            self._pair_value_sets[(p, q)] = got
        return got

    def total_phase(self, p: int) -> Cyclotomic:
        return self.blocks[p].phase * self.resolved.get(p, _ONE)

    def set_phase(self, p: int, value) -> None:
        if not self.blocks[p].resolve:
            raise InputError(f"block {self.blocks[p].label!r} has a fixed phase")
        self.resolved[p] = _coerce(value)
        self._coded = None

    def entry_conductor(self) -> int:
        n = 1
        for p in range(len(self.blocks)):
            n = math.lcm(n, self.blocks[p].phase.conductor)
            for q in range(p, len(self.blocks)):
                for v in self.pair_value_set(p, q):
                    n = math.lcm(n, v.conductor)
        return n

    # -- materialization ----------------------------------------------------

    def materialize(self) -> CodedGram:
        if self._coded is not None:
            return self._coded
        unresolved = [p for p, b in enumerate(self.blocks)
                      if b.resolve and p not in self.resolved]
        if unresolved:
            raise InputError(
                "blocks awaiting phase resolution: "
                + ", ".join(self.blocks[p].label for p in unresolved)
            )
        codes = np.empty((self.n, self.n), dtype=np.int32)
        values: list[Cyclotomic] = []
        value_keys: dict = {}

        def global_code(v: Cyclotomic) -> int:
            k = v.canonical_key()
            c = value_keys.get(k)
            if c is None:
                c = len(values)
                value_keys[k] = c
                values.append(v)
            return c

        for p in range(len(self.blocks)):
            for q in range(p, len(self.blocks)):
                sub, vals = self._pair_base_codes(p, q)
                phase = self.total_phase(p).conj() * self.total_phase(q)
                remap = np.array(
                    [global_code((phase * v).real_part()) for v in vals],
                    dtype=np.int32,
                )
                block = remap[sub]
                r0, r1 = self.offsets[p], self.offsets[p + 1]
                c0, c1 = self.offsets[q], self.offsets[q + 1]
                codes[r0:r1, c0:c1] = block
                if p != q:
                    codes[c0:c1, r0:r1] = block.T
        slices = [(b.label, self.offsets[i], self.offsets[i + 1])
                  for i, b in enumerate(self.blocks)]
        self._coded = CodedGram(self.n, codes, values,
                                [b.label for b in self.blocks], slices)
        return self._coded


def assemble_union(blocks, cross_rows=(), phases=None) -> GramAssembly:
    """Phased union of blocks; cross rows must cover distinct frame pairs."""
    asm = GramAssembly(list(blocks), cross_rows)
    if phases:
        for p, value in phases.items():
            asm.set_phase(p, value)
    return asm


# --------------------------------------------------------------------------
# phase resolution
# --------------------------------------------------------------------------


def _phase_candidates(asm: GramAssembly, candidates) -> list[Cyclotomic]:
    if candidates is not None:
        if isinstance(candidates, int):
            n = candidates
        else:
            return [_coerce(c) for c in candidates]
    else:
        n = asm.entry_conductor()
    if n > 120:
        n = 120
    return [Cyclotomic.root_of_unity(n, k) for k in range(n)]


def resolve_cross_phase(asm: GramAssembly, candidates=None, bound=None):
    """Choose phases for every resolvable block, minimizing the max real part.

    The scan is joint over all resolvable blocks (their candidate tuples in
    lexicographic order; first tuple achieving the minimum wins) and exact:
    entries are compared through their cyclotomic real parts, never floats.
    Returns {block index: chosen phase}.
    """
    cands = _phase_candidates(asm, candidates)
    scan = [p for p, b in enumerate(asm.blocks) if b.resolve]
    npairs = len(asm.blocks)
    fixed_max: Cyclotomic | None = None
    affected: list[tuple[int, int]] = []
    for p in range(npairs):
        for q in range(p, npairs):
            if p in scan or q in scan:
                affected.append((p, q))
                continue
            phase = asm.blocks[p].phase.conj() * asm.blocks[q].phase
            for v in asm.pair_value_set(p, q):
                if p == q and v == _ONE:
                    continue  # diagonal
                r = (phase * v).real_part()
                if fixed_max is None or compare_real(r, fixed_max) > 0:
                    fixed_max = r
    if not scan:
        if bound is not None and fixed_max is not None \
                and compare_real(fixed_max, _coerce(bound)) > 0:
            raise NoFeasiblePhase("fixed blocks already exceed the requested bound")
        return {}

    best: Cyclotomic | None = None
    best_tuple = None
    for combo in product(range(len(cands)), repeat=len(scan)):
        chosen = {p: cands[k] for p, k in zip(scan, combo)}
        cur = fixed_max
        for p, q in affected:
            php = asm.blocks[p].phase * chosen.get(p, _ONE)
            phq = asm.blocks[q].phase * chosen.get(q, _ONE)
            phase = php.conj() * phq
            for v in asm.pair_value_set(p, q):
                if p == q and v == _ONE:
                    continue
                r = (phase * v).real_part()
                if cur is None or compare_real(r, cur) > 0:
                    cur = r
            if best is not None and cur is not None \
                    and compare_real(cur, best) >= 0:
                break
        if cur is None:
            continue
        if best is None or compare_real(cur, best) < 0:
            best, best_tuple = cur, combo
    if best_tuple is None:
        raise NoFeasiblePhase("no candidate phase tuple evaluates")
    if bound is not None and compare_real(best, _coerce(bound)) > 0:
        raise NoFeasiblePhase(
            f"all {len(cands)}^{len(scan)} candidate phase tuples exceed the bound"
        )
    chosen = {p: cands[k] for p, k in zip(scan, best_tuple)}
    for p, value in chosen.items():
        asm.set_phase(p, value)
    return chosen


# --------------------------------------------------------------------------
# kissing verification
# --------------------------------------------------------------------------


@dataclass
class KissingReport:
    count: int
    dimension: int
    max_real: Cyclotomic
    max_real_decimal: str
    max_pair: tuple[int, int]
    max_pair_labels: tuple[str, str]
    duplicate_pairs: list[tuple[int, int]]
    min_eigenvalue: float
    tolerance: float
    rank: int
    entry_values: list[Cyclotomic]
    verdict: bool

    def lines(self) -> list[str]:
        yes = "valid" if self.verdict else "INVALID"
        vals = ", ".join(str(v) for v in self.entry_values)
        return [
            f"vectors: {self.count}",
            f"dimension bound: {self.dimension}",
            f"max off-diagonal real part: {self.max_real} = {self.max_real_decimal}"
            f" at {self.max_pair_labels[0]} x {self.max_pair_labels[1]}",
            f"distinct: {'yes' if not self.duplicate_pairs else self.duplicate_pairs[:3]}",
            f"PSD: min eigenvalue {self.min_eigenvalue:.3e}"
            f" (tolerance {self.tolerance:.3e})",
            f"numerical rank: {self.rank}",
            f"entry values: {vals}",
            f"verdict: {yes}",
        ]


def _coerce_coded(obj) -> CodedGram:
    if isinstance(obj, CodedGram):
        return obj
    if isinstance(obj, GramAssembly):
        return obj.materialize()
    if isinstance(obj, ExplicitCode):
        return GramAssembly([explicit_block(obj)]).materialize()
    raise InputError("verify_kissing expects a CodedGram, GramAssembly, or ExplicitCode")


def verify_kissing(obj, dimension: int, tol_scale: float = 1e-9,
                   strict: bool = False) -> KissingReport:
    """Certify a kissing configuration: exact entries, numerical PSD + rank."""
    cg = _coerce_coded(obj)
    diag = np.unique(np.diagonal(cg.codes))
    for c in diag:
        if cg.values[int(c)] != _ONE:
            raise InvariantViolation(
                f"diagonal entry {cg.values[int(c)]} is not exactly 1"
            )
    dups = cg.duplicates()
    if dups and strict:
        i, j = dups[0]
        raise DuplicateVectors(
            f"entries {cg.label_of(i)} and {cg.label_of(j)} coincide"
        )
    max_val, pair = cg.max_offdiag()
    coherent = compare_real(max_val, _HALF) <= 0
    if not coherent and strict:
        raise CoherenceExceeded(
            f"real part {max_val} = {max_val.decimal(8)} > 1/2 between "
            f"{cg.label_of(pair[0])} and {cg.label_of(pair[1])}"
        )
    floats = cg.float_matrix()
    scale = float(np.abs(cg.value_floats()).max())
    tol = tol_scale * cg.n * max(scale, 1.0)
    evals = np.linalg.eigvalsh(floats)
    min_eig = float(evals[0])
    psd = min_eig >= -tol
    if not psd and strict:
        raise NotPSD(f"smallest eigenvalue {min_eig:.3e} < -{tol:.3e}")
    rank = int((evals > tol).sum())
    rank_ok = rank <= dimension
    if not rank_ok and strict:
        raise RankExceedsDimension(f"numerical rank {rank} > dimension {dimension}")
    verdict = coherent and not dups and psd and rank_ok
    return KissingReport(
        count=cg.n,
        dimension=dimension,
        max_real=max_val,
        max_real_decimal=max_val.decimal(10),
        max_pair=pair,
        max_pair_labels=(cg.label_of(pair[0]), cg.label_of(pair[1])),
        duplicate_pairs=dups,
        min_eigenvalue=min_eig,
        tolerance=tol,
        rank=rank,
        entry_values=cg.entry_value_set(),
        verdict=verdict,
    )


# --------------------------------------------------------------------------
# named code builders
# --------------------------------------------------------------------------


def build_code_r10(summary_phi1: LineSystemSummary, summary_phi2: LineSystemSummary,
                   cross: CrossGramRow, candidates=24) -> GramAssembly:
    """i*c*Phi2 union Phi1 union zeta3*Phi1 union zeta3^2*Phi1 (510 vectors)."""
    z3 = Cyclotomic.root_of_unity(3)
    b2 = FrameBlock(summary_phi2, "ic*Phi2")
    b1 = FrameBlock(summary_phi1, "Phi1")
    blocks = [
        BlockSpec(b2, _I, resolve=True, label="ic*Phi2"),
        BlockSpec(b1, _ONE, label="Phi1"),
        BlockSpec(b1, z3, label="z3*Phi1"),
        BlockSpec(b1, z3 * z3, label="z3^2*Phi1"),
    ]
    asm = assemble_union(blocks, [cross])
    resolve_cross_phase(asm, candidates=candidates)
    return asm


def build_code_r11(asm_r10: GramAssembly) -> CodedGram:
    """The 11-dimensional lift: append a coordinate, tilt the last Phi1 copy.

    Layout: Pi(ic*Phi2) u Pi(Phi1) u Pi(z3*Phi1)
            u ((sqrt3/2) Pi(z3^2*Phi1) +- e11/2) u {+-e11},
    sizes 270 + 80 + 80 + 160 + 2 = 592.  All entries derive from the base
    Gram by exact affine maps, so no coordinates are needed.
    """
    base = asm_r10.materialize()
    if len(asm_r10.blocks) != 4:
        raise InputError("the lift expects the four-block 10-dimensional assembly")
    off = asm_r10.offsets
    nb = base.n
    n = nb + off[4] - off[3] + 2
    sqrt3 = sqrt_rational(3)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    values: list[Cyclotomic] = []
    keys: dict = {}

    def code_of(v: Cyclotomic) -> int:
        k = v.canonical_key()
        c = keys.get(k)
        if c is None:
            c = len(values)
            keys[k] = c
            values.append(v)
        return c

    ident = np.array([code_of(v) for v in base.values], dtype=np.int32)
    scaled = np.array([code_of(v * sqrt3 * half) for v in base.values],
                      dtype=np.int32)
    plus = np.array([code_of(v * Fraction(3, 4) + quarter) for v in base.values],
                    dtype=np.int32)
    minus = np.array([code_of(v * Fraction(3, 4) - quarter) for v in base.values],
                     dtype=np.int32)
    c_zero = code_of(_ZERO)
    c_half = code_of(Cyclotomic.rational(half))
    c_mhalf = code_of(Cyclotomic.rational(-half))
    c_one = code_of(_ONE)
    c_mone = code_of(Cyclotomic.rational(-1))

    codes = np.full((n, n), c_zero, dtype=np.int32)
    flat = off[3]            # start of the z3^2 block in the base
    s3 = slice(off[3], off[4])
    tilt_p = s3                                    # reuses the base indices
    tilt_m = slice(off[4], off[4] + (off[4] - off[3]))
    e_p, e_m = n - 2, n - 1

    head = slice(0, flat)
    codes[head, head] = ident[base.codes[head, head]]
    codes[head, tilt_p] = scaled[base.codes[head, s3]]
    codes[head, tilt_m] = scaled[base.codes[head, s3]]
    codes[tilt_p, head] = codes[head, tilt_p].T
    codes[tilt_m, head] = codes[head, tilt_m].T
    codes[tilt_p, tilt_p] = plus[base.codes[s3, s3]]
    codes[tilt_m, tilt_m] = plus[base.codes[s3, s3]]
    codes[tilt_p, tilt_m] = minus[base.codes[s3, s3]]
    codes[tilt_m, tilt_p] = codes[tilt_p, tilt_m].T
    np.fill_diagonal(codes[tilt_p, tilt_p], c_one)
    np.fill_diagonal(codes[tilt_m, tilt_m], c_one)
    codes[tilt_p, e_p] = c_half
    codes[e_p, tilt_p] = c_half
    codes[tilt_m, e_p] = c_mhalf
    codes[e_p, tilt_m] = c_mhalf
    codes[tilt_p, e_m] = c_mhalf
    codes[e_m, tilt_p] = c_mhalf
    codes[tilt_m, e_m] = c_half
    codes[e_m, tilt_m] = c_half
    codes[e_p, e_p] = c_one
    codes[e_m, e_m] = c_one
    codes[e_p, e_m] = c_mone
    codes[e_m, e_p] = c_mone

    labels = [b.label for b in asm_r10.blocks[:3]]
    slices = [(asm_r10.blocks[i].label, off[i], off[i + 1]) for i in range(3)]
    slices.append(("tilt+*z3^2*Phi1", tilt_p.start, tilt_p.stop))
    slices.append(("tilt-*z3^2*Phi1", tilt_m.start, tilt_m.stop))
    slices.append(("+-e11", e_p, n))
    labels += ["tilt+*z3^2*Phi1", "tilt-*z3^2*Phi1", "+-e11"]
    return CodedGram(n, codes, values, labels, slices)


def build_code_r14(candidates=8) -> GramAssembly:
    """Phi3 u c1*Phi2 u c2*Phi2 u Phi4 u i*Phi4 (1932 vectors, complex C^7)."""
    shell = construct_e7_shell()
    phi3 = construct_phi3(shell)
    phi4 = construct_d7_scaled()
    b3 = ExplicitBlock(phi3, "Phi3")
    b2a = ExplicitBlock(shell, "c1*Phi2")
    b2b = ExplicitBlock(shell, "c2*Phi2")
    b4 = ExplicitBlock(phi4, "Phi4")
    b4i = ExplicitBlock(phi4, "i*Phi4")
    blocks = [
        BlockSpec(b3, _ONE, label="Phi3"),
        BlockSpec(b2a, _ONE, resolve=True, label="c1*Phi2"),
        BlockSpec(b2b, _ONE, resolve=True, label="c2*Phi2"),
        BlockSpec(b4, _ONE, label="Phi4"),
        BlockSpec(b4i, _I, label="i*Phi4"),
    ]
    asm = assemble_union(blocks)
    resolve_cross_phase(asm, candidates=candidates)
    return asm


# --------------------------------------------------------------------------
# line-system unions and coherence
# --------------------------------------------------------------------------


class LineSystemUnion:
    def __init__(self, line_count: int, angles, components):
        self.line_count = line_count
        self.angles = tuple(angles)
        self.components = components
        self.reference: float | None = None

    def coherence(self):
        top = self.angles[0]
        return top.modulus, top.modulus_float()

    def __repr__(self):
        return f"LineSystemUnion(lines={self.line_count}, angles={len(self.angles)})"


def union_line_system(s1: LineSystemSummary, s2: LineSystemSummary,
                      cross: CrossGramRow) -> LineSystemUnion:
    """Union of two line systems joined by their cross-Gram row, exactly."""
    r1, r2 = s1.row, s2.row
    if _row_matches_pair(cross, r1, r2):
        pass
    elif _row_matches_pair(cross, r2, r1):
        s1, s2 = s2, s1
        r1, r2 = r2, r1
    else:
        raise MissingCrossBlock("the cross row does not join these two systems")
    G = r1.group
    l1, l2 = s1.line_count, s2.line_count
    merged: list[list] = []

    def push(a2: Cyclotomic, mod: Cyclotomic | None, count: int) -> None:
        for entry in merged:
            if a2 == entry[0]:
                entry[2] += count
                if entry[1] is None and mod is not None:
                    entry[1] = mod
                return
        merged.append([a2, mod, count])

    for e in s1.angles:
        push(e.abs_squared, e.modulus, e.count)
    for e in s2.angles:
        push(e.abs_squared, e.modulus, e.count)
    for c in cross.cells:
        a2 = c.value.abs_squared()
        if a2 == _ONE:
            raise InputError(
                "the systems share lines (a cross cell has modulus one); "
                "their union is not a disjoint line union"
            )
        num = c.size * l1 * l2 * 2     # both orders of each cross line pair
        if num % G.order:
            raise InvariantViolation("cross pair count is not an integer")
        push(a2, exact_modulus(c.value), num // G.order)
    angles = [AngleEntry(a2, mod, count) for a2, mod, count in merged]
    total = (l1 + l2) * (l1 + l2 - 1)
    if sum(e.count for e in angles) != total:
        raise InvariantViolation("union angle counts do not tile the line pairs")
    angles.sort(key=cmp_to_key(lambda x, y: -compare_real(x.abs_squared,
                                                          y.abs_squared)))
    return LineSystemUnion(l1 + l2, angles, (s1, s2))


def _row_matches_pair(cross: CrossGramRow, r1: TwistedSphericalRow,
                      r2: TwistedSphericalRow) -> bool:
    return (cross.subgroup1.elements_raw() == r1.subgroup.elements_raw()
            and _nu_matches(cross.nu1, r1.nu)
            and cross.subgroup2.elements_raw() == r2.subgroup.elements_raw()
            and _nu_matches(cross.nu2, r2.nu))


@dataclass
class CoherenceResult:
    abs_squared: Cyclotomic
    modulus: Cyclotomic | None
    decimal: float
    reference: float | None = None

    def lines(self) -> list[str]:
        exact = str(self.modulus) if self.modulus is not None \
            else f"sqrt({self.abs_squared})"
        out = [f"coherence: {exact} = {self.decimal:.10f}"]
        if self.reference is not None:
            out.append(f"reference bound: {self.reference:.10f}"
                       f" (attained within {self.decimal - self.reference:+.6f})")
        return out


def coherence(obj, reference: float | None = None) -> CoherenceResult:
    """The largest angle of a line system or union, exact plus decimal."""
    if isinstance(obj, (LineSystemSummary, LineSystemUnion)):
        angles = obj.angles
    elif isinstance(obj, (tuple, list)) and obj and isinstance(obj[0], AngleEntry):
        angles = obj
    else:
        raise InputError("coherence expects a line system, union, or angle list")
    if not angles:
        return CoherenceResult(_ZERO, _ZERO, 0.0, reference)
    top = angles[0]
    return CoherenceResult(top.abs_squared, top.modulus, top.modulus_float(),
                           reference)


# --------------------------------------------------------------------------
# coordinate realization
# --------------------------------------------------------------------------


def embed_vectors_from_gram(gram, dimension: int, tolerance: float = 1e-9):
    """Float coordinates in R^dimension (or C^dimension) realizing the Gram."""
    if isinstance(gram, CodedGram):
        mat = gram.float_matrix()
    elif isinstance(gram, np.ndarray):
        mat = gram
    elif hasattr(gram, "to_complex"):
        mat = gram.to_complex()
        if np.abs(mat.imag).max() < 1e-15:
            mat = mat.real
    else:
        raise InputError("embed expects a CodedGram, GroupGram, or numpy matrix")
    n = mat.shape[0]
    scale = max(1.0, float(np.abs(mat).max()))
    tol = tolerance * n * scale
    evals, vecs = np.linalg.eigh(mat)
    if evals[0] < -tol:
        raise NotPSD(f"smallest eigenvalue {evals[0]:.3e} < -{tol:.3e}")
    rank = int((evals > tol).sum())
    if rank > dimension:
        raise RankExceedsDimension(f"numerical rank {rank} > dimension {dimension}")
    top = evals[-dimension:]
    basis = vecs[:, -dimension:]
    coords = basis * np.sqrt(np.clip(top, 0.0, None))
    err = float(np.abs(coords @ coords.conj().T - mat).max())
    if err > 1e-9 * scale * max(1.0, math.sqrt(n)):
        raise InvariantViolation(f"embedding reconstruction error {err:.3e}")
    return coords
