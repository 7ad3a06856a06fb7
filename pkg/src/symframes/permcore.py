"""Permutation groups by explicit element enumeration.

Elements are stored as bytes objects of length degree holding 0-based
images, so composition is a single bytes.translate call.  All orderings
are deterministic: element lists are sorted lexicographically (which puts
the identity first), conjugacy classes are sorted by (element order, class
size, minimal member) and double cosets by their minimal member.

The scale ceiling is full enumeration: groups beyond the configured cap
raise OrderExceedsCap instead of silently degrading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegreeMismatch,
    ElementNotInGroup,
    NonBijectiveImage,
    NotASubgroup,
    OrderExceedsCap,
)

DEFAULT_CAP = 200_000

_PAD = bytes(range(256))


def compose(a: bytes, b: bytes) -> bytes:
    """(a after b): x -> a[b[x]]."""
    return b.translate(a + _PAD[len(a):])


def invert(a: bytes) -> bytes:
    out = bytearray(len(a))
    for x, y in enumerate(a):
        out[y] = x
    return bytes(out)


def perm_order(a: bytes) -> int:
    n = len(a)
    seen = bytearray(n)
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            x = a[x]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def _cycles(a: bytes) -> list[tuple[int, ...]]:
    n = len(a)
    seen = bytearray(n)
    out = []
    for start in range(n):
        if seen[start] or a[start] == start:
            seen[start] = 1
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = 1
            cyc.append(x)
            x = a[x]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..degree}, stored 0-based."""

    degree: int
    raw: bytes

    @staticmethod
    def from_images(images) -> "Permutation":
        imgs = list(images)
        n = len(imgs)
        if sorted(imgs) != list(range(1, n + 1)):
            raise NonBijectiveImage(f"images {imgs!r} are not a bijection of 1..{n}")
        return Permutation(n, bytes(i - 1 for i in imgs))

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(degree, bytes(range(degree)))

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image tuple, the external format."""
        return tuple(x + 1 for x in self.raw)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatch("cannot compose permutations of different degrees")
        return Permutation(self.degree, compose(self.raw, other.raw))

    def inverse(self) -> "Permutation":
        return Permutation(self.degree, invert(self.raw))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = bytes(range(self.degree))
        base = self.raw
        while k:
            if k & 1:
                result = compose(base, result)
            base = compose(base, base)
            k >>= 1
        return Permutation(self.degree, result)

    def order(self) -> int:
        return perm_order(self.raw)

    def is_identity(self) -> bool:
        return self.raw == bytes(range(self.degree))

    def cycle_string(self) -> str:
        cycs = _cycles(self.raw)
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycs)

    def __repr__(self):
        return f"Permutation{self.images}"


def _close_under(degree: int, gens: list[bytes], cap: int, seeds=None) -> list[bytes]:
    """All products of the generators, starting from seeds or the identity."""
    tables = [g + _PAD[degree:] for g in gens]
    identity = bytes(range(degree))
    seen = set(seeds) if seeds else {identity}
    if seeds:
        seen.add(identity)
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for t in tables:
                y = x.translate(t)
                if y not in seen:
                    if len(seen) >= cap:
                        raise OrderExceedsCap(
                            f"closure exceeded the enumeration cap of {cap} elements"
                        )
                    seen.add(y)
                    new.append(y)
        frontier = new
    return sorted(seen)


class PermutationGroup:
    """A finite permutation group given by generators, fully enumerable."""

    def __init__(self, degree: int, generators, cap: int = DEFAULT_CAP):
        gens = list(generators)
        for g in gens:
            if not isinstance(g, Permutation):
                raise TypeError("generators must be Permutation objects")
            if g.degree != degree:
                raise DegreeMismatch("generator degree disagrees with group degree")
        self.degree = degree
        self.generators = tuple(gens)
        self.cap = cap
        self._elements: list[bytes] | None = None
        self._index: dict[bytes, int] | None = None
        self._classes = None
        self._derived = None

    @staticmethod
    def from_images(degree: int, image_lists, cap: int = DEFAULT_CAP) -> "PermutationGroup":
        return PermutationGroup(
            degree, [Permutation.from_images(im) for im in image_lists], cap=cap
        )

    # --- enumeration ----------------------------------------------------

    def elements_raw(self) -> list[bytes]:
        if self._elements is None:
            gens = [g.raw for g in self.generators]
            self._elements = _close_under(self.degree, gens, self.cap)
            self._index = {x: i for i, x in enumerate(self._elements)}
        return self._elements

    def index(self) -> dict[bytes, int]:
        self.elements_raw()
        return self._index  # type: ignore[return-value]

    @property
    def order(self) -> int:
        return len(self.elements_raw())

    def elements(self) -> list[Permutation]:
        return [Permutation(self.degree, x) for x in self.elements_raw()]

    def __contains__(self, p) -> bool:
        raw = p.raw if isinstance(p, Permutation) else bytes(p)
        return raw in self.index()

    def identity_raw(self) -> bytes:
        return bytes(range(self.degree))

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, gens={len(self.generators)})"

    # --- structure ------------------------------------------------------

    def conjugacy_classes(self) -> "ConjugacyClassSet":
        if self._classes is None:
            self._classes = _conjugacy_classes(self)
        return self._classes

    def is_subgroup_of(self, big: "PermutationGroup") -> bool:
        if self.degree != big.degree:
            return False
        idx = big.index()
        return all(g.raw in idx for g in self.generators)


@dataclass(frozen=True)
class ConjugacyClass:
    rep: Permutation
    size: int
    element_order: int


class ConjugacyClassSet:
    """Conjugacy classes in canonical order plus an element -> class map."""

    def __init__(self, group: PermutationGroup, classes: list[ConjugacyClass],
                 class_of: dict[bytes, int]):
        self.group = group
        self.classes = tuple(classes)
        self._class_of = class_of

    def __len__(self):
        return len(self.classes)

    def class_of(self, p) -> int:
        raw = p.raw if isinstance(p, Permutation) else p
        try:
            return self._class_of[raw]
        except KeyError:
            raise ElementNotInGroup("element does not belong to the group") from None

    def class_map(self) -> dict[bytes, int]:
        return self._class_of

    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)


def _conjugacy_classes(G: PermutationGroup) -> ConjugacyClassSet:
    elements = G.elements_raw()
    degree = G.degree
    gen_tabs = [(g.raw + _PAD[degree:], invert(g.raw) + _PAD[degree:]) for g in G.generators]
    assigned: dict[bytes, int] = {}
    raw_classes: list[list[bytes]] = []
    for x in elements:
        if x in assigned:
            continue
        cid = len(raw_classes)
        members = [x]
        assigned[x] = cid
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for tab, tab_inv in gen_tabs:
                    # g y g^-1 evaluated as translate chains
                    z = tab_inv[:degree].translate(y + _PAD[degree:]).translate(tab)
                    if z not in assigned:
                        assigned[z] = cid
                        members.append(z)
                        new.append(z)
            frontier = new
        raw_classes.append(members)
    keyed = []
    for members in raw_classes:
        m = min(members)
        keyed.append((perm_order(m), len(members), m, members))
    keyed.sort(key=lambda t: (t[0], t[1], t[2]))
    classes = []
    class_of: dict[bytes, int] = {}
    for new_id, (order, size, m, members) in enumerate(keyed):
        classes.append(ConjugacyClass(Permutation(G.degree, m), size, order))
        for x in members:
            class_of[x] = new_id
    return ConjugacyClassSet(G, classes, class_of)


def derived_subgroup(H: PermutationGroup) -> PermutationGroup:
    """Commutator subgroup, as the normal closure of generator commutators."""
    degree = H.degree
    gens = [g.raw for g in H.generators]
    inv = {g: invert(g) for g in gens}
    comms = set()
    for a in gens:
        for b in gens:
            c = compose(compose(inv[a], inv[b]), compose(a, b))
            comms.add(c)
    comms.discard(bytes(range(degree)))
    current = sorted(comms)
    while True:
        K = _close_under(degree, current, H.cap)
        Kset = set(K)
        new = []
        for g in gens:
            g_tab = g + _PAD[degree:]
            gi_tab = invert(g) + _PAD[degree:]
            for x in current:
                z = gi_tab[:degree].translate(x + _PAD[degree:]).translate(g_tab)
                if z not in Kset:
                    new.append(z)
        if not new:
            break
        current = sorted(set(current) | set(new))
    gens_out = [Permutation(degree, x) for x in current] or [Permutation.identity(degree)]
    D = PermutationGroup(degree, gens_out, cap=H.cap)
    D._elements = K
    D._index = {x: i for i, x in enumerate(K)}
    return D


def coset_representatives(G: PermutationGroup, H: PermutationGroup) -> list[Permutation]:
    """Left coset representatives gH, identity first, lexicographic sweep."""
    _require_subgroup(G, H)
    degree = G.degree
    h_tabs = [h + _PAD[degree:] for h in H.elements_raw()]
    covered = set()
    reps = []
    for x in G.elements_raw():
        if x in covered:
            continue
        reps.append(Permutation(degree, x))
        for t in h_tabs:
            covered.add(t[:degree].translate(x + _PAD[degree:]))
    return reps


def _require_subgroup(G: PermutationGroup, H: PermutationGroup):
    if H.degree != G.degree:
        raise DegreeMismatch("subgroup degree disagrees with group degree")
    idx = G.index()
    for h in H.generators:
        if h.raw not in idx:
            raise NotASubgroup("claimed subgroup has a generator outside the group")


@dataclass(frozen=True)
class DoubleCoset:
    rep: Permutation
    size: int


class DoubleCosetDecomposition:
    def __init__(self, G, H1, H2, cells: list[DoubleCoset]):
        self.group = G
        self.h1 = H1
        self.h2 = H2
        self.cells = tuple(cells)

    def __len__(self):
        return len(self.cells)

    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.cells)


def double_cosets(G: PermutationGroup, H1: PermutationGroup,
                  H2: PermutationGroup) -> DoubleCosetDecomposition:
    """(H1, H2)-double cosets of G; cells in order of their minimal member."""
    _require_subgroup(G, H1)
    _require_subgroup(G, H2)
    degree = G.degree
    left = [g.raw + _PAD[degree:] for g in H1.generators]
    right = [g.raw for g in H2.generators]
    seen = set()
    cells = []
    for x in G.elements_raw():
        if x in seen:
            continue
        members = {x}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                yp = y + _PAD[degree:]
                for t in left:
                    z = y.translate(t)
                    if z not in members:
                        members.add(z)
                        new.append(z)
                for r in right:
                    z = r.translate(yp)
                    if z not in members:
                        members.add(z)
                        new.append(z)
            frontier = new
        seen |= members
        cells.append(DoubleCoset(Permutation(degree, x), len(members)))
    total = sum(c.size for c in cells)
    assert total == G.order, "double cosets must tile the group"
    return DoubleCosetDecomposition(G, H1, H2, cells)


def cyclic_subgroup(G: PermutationGroup, x: Permutation) -> PermutationGroup:
    powers = [x.raw]
    cur = x.raw
    identity = bytes(range(G.degree))
    while cur != identity:
        cur = compose(x.raw, cur)
        powers.append(cur)
    C = PermutationGroup(G.degree, [x], cap=G.cap)
    elems = sorted(set(powers))
    C._elements = elems
    C._index = {e: i for i, e in enumerate(elems)}
    return C


@dataclass
class FindResult:
    subgroups: list[PermutationGroup]
    budget_exhausted: bool


def find_subgroups(G: PermutationGroup, *, order: int | None = None,
                   predicate=None, budget: int = 2000) -> FindResult:
    """Heuristic subgroup locator.

    Walks cyclic subgroups of every element, their normalizers, and closures
    of small generating sets drawn from those, spending at most `budget`
    closure computations.  Not exhaustive; intended for seeding catalogs and
    tests on small groups.
    """
    degree = G.degree
    elements = G.elements_raw()
    found: dict[frozenset, PermutationGroup] = {}
    spent = 0
    exhausted = False

    def consider(S: PermutationGroup):
        key = frozenset(S.elements_raw())
        if key not in found:
            found[key] = S

    def matches(S: PermutationGroup) -> bool:
        if order is not None and S.order != order:
            return False
        return predicate is None or predicate(S)

    cyclics: dict[frozenset, PermutationGroup] = {}
    for x in elements:
        C = cyclic_subgroup(G, Permutation(degree, x))
        cyclics.setdefault(frozenset(C.elements_raw()), C)
    for C in cyclics.values():
        consider(C)

    # normalizers of cyclic subgroups, cheapest structured overgroups
    for key, C in sorted(cyclics.items(), key=lambda kv: (len(kv[0]), min(kv[0]))):
        if spent >= budget:
            exhausted = True
            break
        spent += 1
        cset = set(C.elements_raw())
        gen = C.generators[0].raw
        members = []
        for g in elements:
            gi = invert(g)
            if compose(compose(g, gen), gi) in cset:
                members.append(g)
        norm_gens = _reduce_generators(degree, members, G.cap)
        N = PermutationGroup(degree, [Permutation(degree, g) for g in norm_gens], cap=G.cap)
        N._elements = sorted(members)
        N._index = {x: i for i, x in enumerate(N._elements)}
        consider(N)
        # closures of the cyclic group with single normalizer elements
        for t in N._elements:
            if spent >= budget:
                exhausted = True
                break
            if t in cset:
                continue
            spent += 1
            try:
                elems = _close_under(degree, [gen, t], G.cap if order is None else order + 1)
            except OrderExceedsCap:
                continue
            if order is not None and len(elems) != order:
                continue
            S = PermutationGroup(degree, [Permutation(degree, gen), Permutation(degree, t)],
                                 cap=G.cap)
            S._elements = elems
            S._index = {x: i for i, x in enumerate(elems)}
            consider(S)

    result = [S for S in found.values() if matches(S)]
    result.sort(key=lambda S: (S.order, S.elements_raw()[: min(2, S.order)]))
    return FindResult(result, exhausted)


def _reduce_generators(degree: int, members: list[bytes], cap: int) -> list[bytes]:
    """Small deterministic generating set for the group with given elements."""
    target = len(members)
    gens: list[bytes] = []
    have = {bytes(range(degree))}
    for x in sorted(members):
        if x in have:
            continue
        gens.append(x)
        have = set(_close_under(degree, gens, cap))
        if len(have) == target:
            break
    return gens or [bytes(range(degree))]


def subgroup_from_members(G: PermutationGroup, members: list[bytes]) -> PermutationGroup:
    """Wrap an explicit element set (known closed) as a subgroup."""
    gens = _reduce_generators(G.degree, members, G.cap)
    S = PermutationGroup(G.degree, [Permutation(G.degree, g) for g in gens], cap=G.cap)
    S._elements = sorted(members)
    S._index = {x: i for i, x in enumerate(S._elements)}
    return S


def order_via_orbit_stabilizer(degree: int, gens: list[Permutation]) -> int:
    """Independent order oracle.

    Peels off one point stabilizer at a time: orbit size times stabilizer
    order, with the stabilizer generated by the full deduplicated set of
    Schreier generators.  No pruning, so correctness rests on Schreier's
    lemma alone; generator sets stay small because they are capped by the
    stabilizer order at each level.
    """
    identity = bytes(range(degree))
    S = sorted({g.raw for g in gens} - {identity})
    order = 1
    while S:
        pt = min(min(x for x in range(degree) if g[x] != x) for g in S)
        trans = {pt: identity}
        frontier = [pt]
        while frontier:
            new = []
            for x in frontier:
                for g in S:
                    y = g[x]
                    if y not in trans:
                        trans[y] = compose(g, trans[x])
                        new.append(y)
            frontier = new
        order *= len(trans)
        stab = set()
        for y, t in trans.items():
            for g in S:
                sg = compose(invert(trans[g[y]]), compose(g, t))
                if sg != identity:
                    stab.add(sg)
        S = sorted(stab)
    return order
