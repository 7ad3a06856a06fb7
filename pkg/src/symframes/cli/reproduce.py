"""Reproduction reports for the documented worked examples.

Each report runs a full pipeline — catalog entry, character table, rows,
homogenization, assemblies, certificates — and compares the results against
expected values embedded as exact data.  Every expected value carries a
citation string quoting the documented display or claim it restates.  Where
a documented display disagrees with the computed ground truth, the embedded
expectation is the computed truth and the check's note quotes the display
and certifies why it cannot be the value of a healthy pipeline; such checks
are *flagged*, not failed.  A report therefore reads *pass* exactly when the
pipeline reproduces the embedded ground truth.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from ..codes import (
    GramAssembly,
    construct_d7_scaled,
    construct_e7_shell,
    construct_phi3,
    explicit_block,
    frame_block,
    verify_kissing,
)
from ..cyclo import Cyclotomic, cyc_sum, sqrt_rational
from ..errors import UnknownExample
from .catalog import Context
from .recipes import build_recipe, load_recipe
from .render import decimal_str, multiset_str, pretty, value_set_str, value_str

_ONE = Cyclotomic.one()
_ZERO = Cyclotomic.zero()
_I = Cyclotomic.root_of_unity(4, 1)


def _rat(num, den=1) -> Cyclotomic:
    return Cyclotomic.rational(Fraction(num, den))


_R5 = sqrt_rational(5)
_INV_R5 = sqrt_rational(Fraction(1, 5))
# squared moduli (3 +- sqrt5)/10 of the documented angles (5 +- sqrt5)/10
_A_PLUS = _rat(3, 10) + _R5 * Fraction(1, 10)
_A_MINUS = _rat(3, 10) - _R5 * Fraction(1, 10)


# --------------------------------------------------------------------------
# report datatypes
# --------------------------------------------------------------------------


@dataclass
class Check:
    label: str
    citation: str
    expected: str
    computed: str
    ok: bool
    note: str = ""


@dataclass
class ReproductionReport:
    example: str
    title: str
    status: str                      # pass | mismatch | unsupported
    checks: list[Check]
    remarks: list[str]
    runtime: float

    @property
    def exit_code(self) -> int:
        return 2 if self.status == "mismatch" else 0

    def to_text(self) -> str:
        out = [f"reproduction report: {self.example}", f"  {self.title}"]
        flagged = sum(1 for c in self.checks if c.ok and c.note)
        tail = f", {flagged} flagged" if flagged else ""
        out.append(f"status: {self.status} ({len(self.checks)} checks{tail})")
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        out.append(f"generated: {stamp} (runtime {self.runtime:.2f}s)")
        for k, c in enumerate(self.checks, 1):
            out.append("")
            out.append(f"[{k:2d}] {c.label}")
            out.append(f"     source: {c.citation}")
            out.append(f"     expected {c.expected}")
            out.append(f"     computed {c.computed}")
            out.append(f"     {'match' if c.ok else 'MISMATCH'}"
                       + (" (flagged)" if c.ok and c.note else ""))
            if c.note:
                out.append(f"     note: {c.note}")
        if self.remarks:
            out.append("")
            out.append("remarks:")
            out.extend(f"  - {r}" for r in self.remarks)
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        return {
            "example": self.example,
            "title": self.title,
            "status": self.status,
            "generated": f"{stamp} runtime={self.runtime:.2f}s",
            "checks": [
                {"label": c.label, "citation": c.citation,
                 "expected": c.expected, "computed": c.computed,
                 "ok": c.ok, "note": c.note}
                for c in self.checks
            ],
            "remarks": list(self.remarks),
        }


class _Run:
    def __init__(self):
        self.checks: list[Check] = []
        self.remarks: list[str] = []

    def eq(self, label, citation, expected, computed, fmt=str, note=""):
        self.checks.append(Check(label, citation, fmt(expected),
                                 fmt(computed), expected == computed, note))

    def multiset(self, label, citation, expected_pairs, computed_pairs,
                 note=""):
        ok = _ms_key(expected_pairs) == _ms_key(computed_pairs)
        self.checks.append(Check(label, citation, multiset_str(expected_pairs),
                                 multiset_str(computed_pairs), ok, note))

    def value_set(self, label, citation, expected_vals, computed_vals,
                  note="", subset=False):
        e = {v.canonical_key() for v in expected_vals}
        c = {v.canonical_key() for v in computed_vals}
        ok = c <= e if subset else c == e
        self.checks.append(Check(label, citation,
                                 ("subset of " if subset else "")
                                 + value_set_str(expected_vals),
                                 value_set_str(computed_vals), ok, note))


def _ms_key(pairs):
    return sorted((v.canonical_key(), int(n)) for v, n in pairs)


def _row_values(row):
    return [(c.value, c.size) for c in row.cells]


def _row_modsq(row):
    return [(c.value.abs_squared(), c.size) for c in row.cells]


def _agg(pairs):
    """Aggregate (value, count) pairs with equal values, largest first."""
    seen: dict = {}
    order = []
    for v, n in pairs:
        k = v.canonical_key()
        if k in seen:
            seen[k][1] += n
        else:
            seen[k] = [v, n]
            order.append(k)
    return [tuple(seen[k]) for k in order]


def _angles_sq(obj):
    return [(e.abs_squared, e.count) for e in obj.angles]


def _angle_sq_set(obj):
    return [e.abs_squared for e in obj.angles]


def _system_shape(summary):
    return (summary.line_count, summary.gon_order, summary.frame_count)


def _shape_fmt(t):
    return f"{t[0]} lines, {t[1]}-gon, {t[2]} frame vectors"


def _verify_fmt(t):
    return (f"verdict={'valid' if t[0] else 'INVALID'}, vectors={t[1]}, "
            f"max real part={t[2]}, rank<=dim={t[3]}")


def _verify_tuple(report):
    return (report.verdict, report.count, pretty(report.max_real),
            report.rank <= report.dimension)


def _gram_value_multiset(coded):
    import numpy as np

    counts = np.bincount(coded.codes.ravel(), minlength=len(coded.values))
    return [(v, int(n)) for v, n in zip(coded.values, counts) if n]


# --------------------------------------------------------------------------
# a5 — the notation example
# --------------------------------------------------------------------------


def _report_a5(run: _Run, cache) -> None:
    ctx = Context.open("a5", cache=cache)

    triv = ctx.row("trivial")
    run.multiset(
        "spherical-function row for the trivial twist",
        'documented display "[1,5][1/sqrt(5),25][-1/sqrt(5),25][-1,5]"',
        [(_ONE, 5), (_INV_R5, 25), (-_INV_R5, 25), (-_ONE, 5)],
        _row_values(triv),
    )

    s0 = ctx.summary("trivial")
    run.eq(
        "icosahedral line system from the trivial twist",
        'documented claim: line stabilizer of cardinality 5+5=10, hence '
        '60/10 = 6 lines, each an antipodal vertex pair of the regular '
        'icosahedron, forming a {1/sqrt(5)}-angular system',
        (6, 2, 12), _system_shape(s0), fmt=_shape_fmt,
    )
    run.multiset(
        "icosahedral squared angles",
        'documented claim: the system is {1/sqrt(5)}-angular',
        [(_rat(1, 5), 30)], _angles_sq(s0),
    )

    tw = ctx.row("twisted")
    tc = ctx.row("twisted-conjugate")
    cite_tw = ('documented display "[1,5][(5+sqrt(5))/10 e^{3 pi i/5},25]'
               '[-(5-sqrt(5))/10,25][0,5]" (squared moduli compared; each '
               "cell's value is pinned only up to its gauge, and the "
               'displayed phases are one valid gauge choice)')
    expected_sq = [(_ONE, 5), (_A_PLUS, 25), (_A_MINUS, 25), (_ZERO, 5)]
    run.multiset("twisted row squared moduli", cite_tw, expected_sq,
                 _row_modsq(tw))
    run.multiset(
        "conjugate twisted row squared moduli",
        'documented display "[1,5][(5+sqrt(5))/10 e^{-3 pi i/5},25]'
        '[-(5-sqrt(5))/10,25][0,5]"',
        expected_sq, _row_modsq(tc),
    )
    conj_pairs = sorted(
        (c.value.conj().canonical_key(), c.size) for c in tw.cells
    ) == sorted((c.value.canonical_key(), c.size) for c in tc.cells)
    run.eq(
        "the two twisted rows are conjugate partners",
        "documented claim: the order-5 characters come in conjugated pairs, "
        "and so do their twisted spherical functions",
        True, conj_pairs,
        fmt=lambda b: "cellwise conjugate" if b else "not conjugate",
    )

    s1 = ctx.summary("twisted")
    run.eq(
        "twisted line system",
        'documented claim: both twisted functions describe the same '
        '{(5+sqrt(5))/10, (5-sqrt(5))/10, 0}-angular highly symmetric line '
        'system of cardinality 10',
        (12, 5, 60), _system_shape(s1), fmt=_shape_fmt,
        note="the documented cardinality reads 10; an independent eigenline "
             "enumeration (all eigenlines of all order-5 subgroups in a "
             "concrete 3-dimensional realization) counts 12 = 6 Sylow "
             "5-subgroups x 2 characters each, so 12 is the embedded ground "
             "truth here",
    )
    run.multiset(
        "twisted squared angles",
        'documented angle set {(5+sqrt(5))/10, (5-sqrt(5))/10, 0}',
        [(_A_PLUS, 60), (_A_MINUS, 60), (_ZERO, 12)], _angles_sq(s1),
    )

    cr = ctx.cross("twisted-pair")
    run.multiset(
        "cross row squared moduli",
        'documented display "c_{1,2}[0,1][(5+sqrt(5))/10 e^{9 pi i/5},5]'
        '[-(5+sqrt(5))/10,5][1,1]"',
        [(_ZERO, 5), (_A_PLUS, 25), (_A_MINUS, 25), (_ONE, 5)],
        _row_modsq(cr),
        note="the display differs from the computed row in two ways: its "
             "sizes are in units of |H| = 5 (raw double-coset sizes are "
             "5,25,25,5), and its third modulus reads (5+sqrt(5))/10 where "
             "the computed row has (5-sqrt(5))/10; the computed multiset is "
             "the embedded ground truth (see the sum-rule check)",
    )
    norm = cyc_sum(c.value.abs_squared() * Fraction(c.size) for c in cr.cells)
    run.eq(
        "cross row sum rule",
        "tight-frame identity: sum over the group of |cross row|^2 equals "
        "|G|/dim = 60/3 = 20",
        "20", pretty(norm),
        note="the displayed moduli {0, (5+sqrt(5))/10, (5+sqrt(5))/10, 1} "
             "would make this sum 20 + 5*sqrt(5) under every assignment of "
             "the sizes (any assignment leaves a nonzero sqrt(5) term), so "
             "they cannot be the moduli of any such cross row; replacing "
             "the third modulus by (5-sqrt(5))/10 restores the identity "
             "exactly",
    )
    has_mod_one = any(c.value.abs_squared() == _ONE for c in cr.cells)
    run.eq(
        "the two twisted frames span one line system",
        "documented claim: some inner products between vectors of the two "
        "frames have amplitude 1, so the frames define the same line system",
        True, has_mod_one,
        fmt=lambda b: "a modulus-1 cross cell exists" if b
        else "no modulus-1 cross cell",
    )

    run.remarks.append(
        "line-count discrepancy: the documented text says the class of "
        "order-5 subgroups has 5 members, each stabilizing 2 lines (5*2 = "
        "10); the 60-element group has 6 Sylow 5-subgroups, giving 6*2 = 12 "
        "lines, which matches both the homogenized count and the "
        "brute-force eigenline oracle"
    )


# --------------------------------------------------------------------------
# h4-table1 — classification table, first two rows
# --------------------------------------------------------------------------


def _report_h4(run: _Run, cache) -> None:
    ctx = Context.open("h4", cache=cache)

    s60 = ctx.summary("lines-60")
    run.eq(
        "60-line system shape",
        'documented table row "60 | 2 | {(sqrt(5)+1)/4, (sqrt(5)-1)/4, 1/2, 0}"',
        (60, 2, 120), _system_shape(s60), fmt=_shape_fmt,
    )
    run.value_set(
        "60-line squared angle set",
        'documented angle set {(sqrt(5)+1)/4, (sqrt(5)-1)/4, 1/2, 0} '
        '(squares (3+sqrt(5))/8, (3-sqrt(5))/8, 1/4, 0)',
        [_rat(3, 8) + _R5 * Fraction(1, 8), _rat(3, 8) - _R5 * Fraction(1, 8),
         _rat(1, 4), _ZERO],
        _angle_sq_set(s60),
    )

    s144 = ctx.summary("lines-144")
    run.eq(
        "144-line system shape",
        'documented table row "144* | 10 | {sqrt((5+sqrt(5))/10), '
        '(5+sqrt(5))/10, sqrt((5-sqrt(5))/10), 1/sqrt(5), (5-sqrt(5))/10, 0}"',
        (144, 10, 1440), _system_shape(s144), fmt=_shape_fmt,
    )
    m_plus = _rat(1, 2) + _R5 * Fraction(1, 10)
    m_minus = _rat(1, 2) - _R5 * Fraction(1, 10)
    m_plus_sq, m_minus_sq = m_plus * m_plus, m_minus * m_minus
    run.value_set(
        "144-line squared angle set",
        "documented 6-element angle set of the starred 144-line row "
        "(squares (5+sqrt(5))/10, ((5+sqrt(5))/10)^2, (5-sqrt(5))/10, 1/5, "
        "((5-sqrt(5))/10)^2, 0)",
        [_A_PLUS + _rat(1, 5), m_plus_sq, _A_MINUS + _rat(1, 5), _rat(1, 5),
         m_minus_sq, _ZERO],
        _angle_sq_set(s144),
    )

    run.remarks.append(
        "the remaining rows of the documented classification table (300 to "
        "1200 lines) list only line counts, gon orders, and angle-set sizes; "
        "they are outside this report's scope"
    )


# --------------------------------------------------------------------------
# psu42 — rows, the 510-vector code, the 85-line union
# --------------------------------------------------------------------------


_W3 = Cyclotomic.root_of_unity(3, 1)
_INV_R3 = sqrt_rational(Fraction(1, 3))


def _report_psu42_r10(run: _Run, cache) -> None:
    ctx = Context.open("psu42", cache=cache)

    r40 = ctx.row("lines-40")
    run.multiset(
        "first row squared moduli",
        'documented display "[1,648][1/3,17496][i/sqrt(3),7776]" '
        "(squared moduli compared; the i/sqrt(3) phase is one gauge choice)",
        [(_ONE, 648), (_rat(1, 9), 17496), (_rat(1, 3), 7776)],
        _row_modsq(r40),
    )
    s40 = ctx.summary("lines-40")
    run.eq(
        "first frame shape",
        "documented claim: a highly symmetric frame Phi1 of cardinality 80 "
        "after homogenization",
        (40, 2, 80), _system_shape(s40), fmt=_shape_fmt,
    )

    r45 = ctx.row("lines-45")
    run.multiset(
        "second row squared moduli",
        'documented display "[1,576][1/2,18432][0,6912]"',
        [(_ONE, 576), (_rat(1, 4), 18432), (_ZERO, 6912)],
        _row_modsq(r45),
        note="the display is introduced as being on (H_1,H_1)-double cosets; "
             "it is the row of the second maximal subgroup, i.e. an "
             "(H_2,H_2)-double-coset row — a label slip in the source",
    )
    s45 = ctx.summary("lines-45")
    run.eq(
        "second frame shape",
        "documented claim: a highly symmetric frame Phi2 of cardinality 270",
        (45, 6, 270), _system_shape(s45), fmt=_shape_fmt,
    )

    cr = ctx.cross("union-85")
    run.multiset(
        "cross row squared moduli",
        'documented display "c[0,10368][1/sqrt(3),15552]"',
        [(_ZERO, 10368), (_rat(1, 3), 15552)],
        _row_modsq(cr),
    )

    built = build_recipe(load_recipe("psu42-r10"), cache)
    asm = built.assembly
    idx_phi1 = next(p for p, b in enumerate(asm.blocks)
                    if b.label.endswith("Phi1"))
    phi1_vals = [v for v in asm.pair_value_set(idx_phi1, idx_phi1)
                 if v != _ONE]
    run.value_set(
        "inner products within the first frame",
        "documented claim: inner products between distinct vectors of Phi1 "
        "belong to {+-1/3, +-i/sqrt(3), -1}",
        [_rat(1, 3), -_rat(1, 3), _I * _INV_R3, -(_I * _INV_R3), -_ONE],
        phi1_vals,
    )
    idx_phi2 = next(p for p, b in enumerate(asm.blocks)
                    if b.label.endswith("Phi2"))
    phi2_vals = [v for v in asm.pair_value_set(idx_phi2, idx_phi2)
                 if v != _ONE]
    w, half = _W3, _rat(1, 2)
    run.value_set(
        "inner products within the second frame",
        "documented claim: inner products between distinct vectors of Phi2 "
        "belong to {+-1/2, +-e^{2 pi i/3}/2, +-e^{4 pi i/3}/2, "
        "+-e^{2 pi i/3}, +-e^{4 pi i/3}, -1}",
        [half, -half, w * half, -(w * half), w.conj() * half,
         -(w.conj() * half), w, -w, w.conj(), -w.conj(), -_ONE, _ZERO],
        phi2_vals,
        note="the computed set also contains 0, coming from the defining "
             "row's [0,6912] cells; the documented listing omits it",
    )

    rep = verify_kissing(built.coded, built.dimension)
    run.eq(
        "510-vector kissing configuration",
        "documented claim: ic Phi2 u Phi1 u e^{2 pi i/3} Phi1 u "
        "e^{4 pi i/3} Phi1 is a 10-dimensional spherical code of "
        "cardinality 510 improving the kissing bound from 500 to 510",
        (True, 510, "1/2", True), _verify_tuple(rep), fmt=_verify_fmt,
    )
    run.value_set(
        "510-vector entry values",
        "documented claim: the code is {0, +-1/6, +-1/4, +-1/3, +-1/2, -1}-"
        "angular",
        [_ZERO, _rat(1, 6), -_rat(1, 6), _rat(1, 4), -_rat(1, 4),
         _rat(1, 3), -_rat(1, 3), _rat(1, 2), -_rat(1, 2), -_ONE],
        [v for v in rep.entry_values if v != _ONE], subset=True,
    )
    chosen = ", ".join(f"{asm.blocks[p].label}: {pretty(v)}"
                       for p, v in sorted(built.chosen_phases.items()))
    run.remarks.append(
        "the documented code multiplies Phi2 by i*c with c the cross-row "
        f"gauge; the build resolved the scanned phases exactly ({chosen})"
    )

    union = build_recipe(load_recipe("psu42-85"), cache)
    run.eq(
        "85-line union cardinality",
        "documented claim: the complex 5-dimensional line system defined by "
        "the vectors of Phi1 u Phi2 has 85 lines",
        85, union.line_count,
    )
    run.value_set(
        "85-line squared angle set",
        'documented claim: the system is "{0,1/3,1/2,1 sqrt(3)}"-angular '
        "(squares 0, 1/9, 1/4, 1/3)",
        [_ZERO, _rat(1, 9), _rat(1, 4), _rat(1, 3)],
        _angle_sq_set(union),
        note='the documented fourth angle is printed as "1 sqrt(3)"; the '
             "computed angle is 1/sqrt(3), and the computed set is the "
             "embedded ground truth",
    )


def _report_psu42_r11(run: _Run, cache) -> None:
    built = build_recipe(load_recipe("psu42-r11"), cache)
    rep = verify_kissing(built.coded, built.dimension)
    run.eq(
        "592-vector kissing configuration",
        "documented claim: Pi(ic Phi2) u Pi(Phi1) u Pi(e^{2 pi i/3} Phi1) u "
        "(sqrt(3)/2 Pi(e^{4 pi i/3} Phi1) +- e_11/2) u {+-e_11} contains "
        "270+80+80+160+2 = 592 vectors with inner products at most 1/2",
        (True, 592, "1/2", True), _verify_tuple(rep), fmt=_verify_fmt,
    )
    sizes = [stop - start for (_, start, stop) in built.coded.block_slices]
    run.eq(
        "lift layout",
        "documented layout 270+80+80+160+2",
        [270, 80, 80, 80, 80, 2], sizes,
        note="the 160-vector tilted family is stored as two 80-vector "
             "slices, one per sign of the appended-axis component",
    )


# --------------------------------------------------------------------------
# u33 — rows, explicit constructions, the 1932-vector code
# --------------------------------------------------------------------------


def _report_u33_r14(run: _Run, cache) -> None:
    ctx = Context.open("u33", cache=cache)

    r28 = ctx.row("lines-28")
    run.multiset(
        "first row values",
        'documented display "[1,216][1/3,5832]"',
        [(_ONE, 216), (_rat(1, 3), 5832)], _row_values(r28),
    )
    r63 = ctx.row("lines-63")
    run.multiset(
        "second row squared moduli",
        'documented display "[1,96][1/2,16][1/2,16][0,24][0,6]" '
        "(squared moduli compared: the twist has order 2, so a cell's sign "
        "depends on the chosen double-coset representative — the computed "
        "canonical representatives give one +1/2 cell and one -1/2 cell)",
        [(_ONE, 96), (_rat(1, 4), 1536), (_rat(1, 4), 1536),
         (_ZERO, 2304), (_ZERO, 576)],
        _row_modsq(r63),
        note="the display mixes units: its identity cell is the raw size "
             "(96) while the remaining cells are in units of |H| = 96 "
             "(16*96 = 1536, 24*96 = 2304, 6*96 = 576); the computed raw "
             "sizes are the embedded ground truth",
    )

    s28, s63 = ctx.summary("lines-28"), ctx.summary("lines-63")
    run.eq(
        "frame cardinalities",
        "documented claim: frames Phi1, Phi2 contain 56 and 126 vectors",
        ((28, 2, 56), (63, 2, 126)),
        (_system_shape(s28), _system_shape(s63)),
        fmt=lambda t: " / ".join(_shape_fmt(x) for x in t),
    )

    shell = construct_e7_shell()
    run.eq(
        "root-lattice shell",
        "documented claim: the vectors of Phi2 form the inner shell of the "
        "E7 lattice, grouped into the vertices of 9 distinct cross "
        "polytopes, one of which consists of all permutations of "
        "(+-1,0,0,0,0,0,0)",
        (126, 9), (len(shell.vectors), len(shell.cross_polytopes)),
        fmt=lambda t: f"{t[0]} vectors in {t[1]} cross polytopes",
    )

    frame_gram = GramAssembly([frame_block(s63)]).materialize()
    shell_gram = GramAssembly([explicit_block(shell)]).materialize()
    run.multiset(
        "group-frame Gram equals coordinate-shell Gram",
        "documented claim: Phi2 and the E7 shell are the same 126-vector "
        "frame (up to relabeling), so the two Gram-entry multisets over all "
        "126^2 pairs coincide exactly",
        _gram_value_multiset(frame_gram), _gram_value_multiset(shell_gram),
    )

    phi3 = construct_phi3(shell)
    run.eq(
        "third frame coordinates",
        "documented claim: modulo a phase, Phi3 is formed by 1512 unit "
        "vectors i^k/sqrt(2) (v + i w) with v != w in a common cross "
        "polytope",
        1512, len(phi3.vectors),
    )
    d7 = construct_d7_scaled()
    run.eq(
        "scaled D7 root system",
        "documented claim: Phi4 is the scaled D7 root system, all "
        "permutations of (+-1/sqrt(2), +-1/sqrt(2), 0, ..., 0) — 84 vectors",
        84, len(d7.vectors),
    )

    built = build_recipe(load_recipe("u33-r14"), cache)
    asm = built.assembly
    idx_phi3 = next(p for p, b in enumerate(asm.blocks)
                    if b.label == "Phi3")
    phi3_real = {v.real_part().canonical_key()
                 for v in asm.pair_value_set(idx_phi3, idx_phi3)
                 if v != _ONE}
    allowed = {x.canonical_key()
               for x in (_ZERO, _rat(1, 4), -_rat(1, 4), _rat(1, 2),
                         -_rat(1, 2), -_ONE)}
    run.eq(
        "third-frame realified products",
        "documented claim: real parts of inner products between distinct "
        "vectors of Phi3 belong to {0, +-1/4, +-1/2, -1}",
        True, phi3_real <= allowed,
        fmt=lambda b: "contained" if b else "NOT contained",
    )

    rep = verify_kissing(built.coded, built.dimension)
    run.eq(
        "1932-vector kissing configuration",
        "documented claim: Phi3 u (1+i)/sqrt(2) Phi2 u (1-i)/sqrt(2) Phi2 "
        "u Phi4 u i Phi4 is {0, +-1/4, +-1/2, -1}-angular and contains "
        "1512+126+126+84+84 = 1932 vectors",
        (True, 1932, "1/2", True), _verify_tuple(rep), fmt=_verify_fmt,
    )
    run.value_set(
        "1932-vector entry values",
        "documented angle set {0, +-1/4, +-1/2, -1}",
        [_ZERO, _rat(1, 4), -_rat(1, 4), _rat(1, 2), -_rat(1, 2), -_ONE],
        [v for v in rep.entry_values if v != _ONE], subset=True,
    )
    sizes = [stop - start for (_, start, stop) in built.coded.block_slices]
    run.eq(
        "block layout",
        "documented layout 1512+126+126+84+84",
        [1512, 126, 126, 84, 84], sizes,
    )
    chosen = ", ".join(f"{asm.blocks[p].label}: {pretty(v)}"
                       for p, v in sorted(built.chosen_phases.items()))
    run.remarks.append(
        "the documented copies of Phi2 carry the phases (1+-i)/sqrt(2); the "
        f"build's exact scan resolved ({chosen}), an equivalent odd pair of "
        "eighth roots of unity differing by i"
    )

    # long-row stretch comparison: documented 36-cell row vs coordinates
    display = _phi3_long_row_modsq()
    x0 = phi3.vectors[0]
    counts: dict = {}
    order = []
    for y in phi3.vectors:
        q = cyc_sum(a.conj() * b for a, b in zip(x0, y)).abs_squared()
        k = q.canonical_key()
        if k in counts:
            counts[k][1] += 4
        else:
            counts[k] = [q, 4]
            order.append(k)
    coord = [tuple(counts[k]) for k in order]
    run.multiset(
        "long-row squared moduli vs coordinates",
        "documented 36-cell bracket row for the order-16 stabilizer "
        "(aggregated squared moduli, element units; coordinate counts are "
        "per-vector counts times the gon order 4)",
        display, coord,
    )


def _phi3_long_row_modsq():
    """Aggregated (squared modulus, element count) of the documented row."""
    cells = [
        (_ONE, 16), (_ZERO, 976), (_rat(1, 2), 128), (_rat(5, 16), 1024),
        (_rat(1, 4), 832), (_rat(1, 8), 1024), (_rat(1, 16), 2048),
    ]
    return cells


# --------------------------------------------------------------------------
# m12 — the 78-line union
# --------------------------------------------------------------------------


def _lines_angles_fmt(t):
    return f"{t[0]} lines, squared angles {{{', '.join(str(q) for q in t[1])}}}"


def _report_m12_78(run: _Run, cache) -> None:
    ctx = Context.open("m12", cache=cache)

    s66, s12 = ctx.summary("lines-66"), ctx.summary("lines-12")
    run.eq(
        "66-line component",
        "documented claim: a {1/3, 0}-angular line system of cardinality 66",
        (66, [Fraction(1, 9), Fraction(0)]),
        (s66.line_count, [e.abs_squared.as_rational() for e in s66.angles]),
        fmt=_lines_angles_fmt,
    )
    run.eq(
        "12-line component",
        "documented claim: the 12 vertices of the regular 11-simplex "
        "(mutual products -1/11)",
        (12, [Fraction(1, 121)]),
        (s12.line_count, [e.abs_squared.as_rational() for e in s12.angles]),
        fmt=_lines_angles_fmt,
    )

    cr = ctx.cross("union-78")
    run.eq(
        "double-coset count",
        "documented claim: there is only one (H1,H2)-double coset inside "
        "the group - the whole group",
        [(95040,)], [tuple([c.size]) for c in cr.cells],
        fmt=lambda t: f"{len(t)} cell(s) of sizes {[x[0] for x in t]}",
    )
    run.multiset(
        "cross angle",
        "documented claim: since highly symmetric line systems are "
        "represented by tight frames, the single cross angle has to be "
        "1/sqrt(11)",
        [(_rat(1, 11), 95040)], _row_modsq(cr),
    )

    union = build_recipe(load_recipe("m12-78"), cache)
    run.eq(
        "union cardinality",
        "documented claim: the union is a line system of cardinality 78",
        78, union.line_count,
    )
    run.value_set(
        "union squared angle set",
        "documented claim: the union is {1/3, 1/sqrt(11), 1/11, 0}-angular "
        "(squares 1/9, 1/11, 1/121, 0)",
        [_rat(1, 9), _rat(1, 11), _rat(1, 121), _ZERO],
        _angle_sq_set(union),
    )
    mod, dec = union.coherence()
    run.eq(
        "coherence against the documented bound",
        "documented claim: any real 11-dimensional line system of "
        "cardinality 78 has coherence at least sqrt(7/67) ~ 0.323, so the "
        "union's coherence is very close to that bound",
        "1/3", pretty(mod),
        note=f"computed coherence {dec:.10f} vs documented bound "
             f"sqrt(7/67) ~ {union.reference:.10f} "
             f"(gap {dec - union.reference:+.6f})",
    )


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------


_EXAMPLES = {
    "a5": ("twisted spherical functions on the icosahedral pair", _report_a5),
    "h4-table1": ("first two rows of the reflection-group classification "
                  "table", _report_h4),
    "psu42-r10": ("510-vector kissing configuration in dimension 10, with "
                  "its rows and the 85-line union", _report_psu42_r10),
    "psu42-r11": ("592-vector kissing configuration in dimension 11",
                  _report_psu42_r11),
    "u33-r14": ("1932-vector kissing configuration in dimension 14, with "
                "its rows and explicit constructions", _report_u33_r14),
    "m12-78": ("78-line union in dimension 11", _report_m12_78),
}

_UNSUPPORTED = {
    "psp45": ("the 13-dimensional symplectic-group example", 4_680_000),
    "we8": ("the 2240-line system of the E8 reflection group", 696_729_600),
    "st34": ("the 17010-line system of the 34th exceptional reflection "
             "group", 39_191_040),
}


def reproduce(example_id: str, cache=None) -> ReproductionReport:
    """Run one documented example end to end and compare against the
    embedded expectations."""
    start = time.monotonic()
    if example_id in _UNSUPPORTED:
        what, order = _UNSUPPORTED[example_id]
        return ReproductionReport(
            example=example_id,
            title=what,
            status="unsupported",
            checks=[],
            remarks=[
                f"this example's group has order {order:,}, far above the "
                "full-enumeration cap of 200,000 elements used by the "
                "permutation-group and character-table pipeline; the "
                "pipeline stores all group elements explicitly, so the "
                "example cannot be built by this artifact",
            ],
            runtime=time.monotonic() - start,
        )
    if example_id not in _EXAMPLES:
        known = ", ".join([*sorted(_EXAMPLES), *sorted(_UNSUPPORTED)])
        raise UnknownExample(
            f"no reproduction example {example_id!r}; known: {known}"
        )
    title, builder = _EXAMPLES[example_id]
    run = _Run()
    builder(run, cache)
    status = "pass" if all(c.ok for c in run.checks) else "mismatch"
    return ReproductionReport(
        example=example_id,
        title=title,
        status=status,
        checks=run.checks,
        remarks=run.remarks,
        runtime=time.monotonic() - start,
    )


def example_ids() -> list[str]:
    return [*sorted(_EXAMPLES), *sorted(_UNSUPPORTED)]
