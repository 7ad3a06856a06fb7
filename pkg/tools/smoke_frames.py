"""A5 end-to-end smoke for frames.py against independently derived values."""

import sys
import time
from fractions import Fraction

sys.path.insert(0, "/root/pkg/src")

from symframes.chartab import character_table, linear_characters, multiplicity
from symframes.cyclo import Cyclotomic, compare_real, cyc_sum, sqrt_rational
from symframes.frames import (
    convolve_at,
    cross_row,
    gram,
    homogenize,
    isotypic_projection_row,
    twisted_spherical,
)
from symframes.permcore import PermutationGroup, Permutation, compose, invert

t0 = time.time()

A5 = PermutationGroup.from_images(5, [[2, 3, 1, 4, 5], [1, 2, 4, 5, 3]])
assert A5.order == 60

ct = character_table(A5)
degrees = [r.degree for r in ct.rows]
print("A5 degrees:", degrees)
assert degrees == [1, 3, 3, 4, 5]

# C5 generated by a 5-cycle
c5gen = Permutation.from_images([2, 3, 4, 5, 1])
C5 = PermutationGroup(5, [c5gen])
assert C5.order == 5
nus = linear_characters(C5)
print("C5 nu orders:", [nu.order for nu in nus])
assert [nu.order for nu in nus] == [1, 5, 5, 5, 5]

chi3 = ct.rows[1]  # first degree-3 row
print("multiplicities of nus in chi3:", [multiplicity(chi3, nu) for nu in nus])

# --- trivial nu: row on (C5,C5)-double cosets --------------------------
row0 = twisted_spherical(A5, chi3, C5, nus[0])
print("trivial row:", row0)
cellvals = sorted(
    ((c.value.canonical_key(), c.size) for c in row0.cells),
    key=lambda t: t[0],
)
vals = {(c.value.decimal(6), c.size) for c in row0.cells}
print("trivial cells:", vals)
r5 = sqrt_rational(Fraction(1, 5))
expected = {
    (Cyclotomic.one().canonical_key(), 5),
    (r5.canonical_key(), 25),
    ((-r5).canonical_key(), 25),
    ((-Cyclotomic.one()).canonical_key(), 5),
}
got = {(c.value.canonical_key(), c.size) for c in row0.cells}
assert got == expected, got
print("trivial-nu cells match [1,5][1/sqrt5,25][-1/sqrt5,25][-1,5]")

summ0 = homogenize(row0)
print("trivial summary:", summ0, "frame:", summ0.frame_count)
assert summ0.line_count == 6 and summ0.gon_order == 2
assert len(summ0.angles) == 1
assert summ0.angles[0].abs_squared == Fraction(1, 5)
assert summ0.angles[0].modulus == r5
assert summ0.angles[0].count == 30
assert summ0.frame_count == 12

# --- twisted nu (order 5) -----------------------------------------------
nu = nus[1]
row1 = twisted_spherical(A5, chi3, C5, nu)
print("twisted row:", row1)
sizes = sorted(c.size for c in row1.cells)
print("twisted cell sizes:", sizes)
assert sizes == [5, 5, 25, 25]

half = Fraction(1, 2)
fives = sqrt_rational(5)
a_plus = (Cyclotomic.rational(Fraction(3, 10)) + fives * Fraction(1, 10))
a_minus = (Cyclotomic.rational(Fraction(3, 10)) - fives * Fraction(1, 10))
abs2 = {}
for c in row1.cells:
    q = c.value.abs_squared()
    abs2[q.canonical_key()] = abs2.get(q.canonical_key(), 0) + c.size
print("twisted abs^2 multiset:", abs2)
expected2 = {
    Cyclotomic.one().canonical_key(): 5,
    a_plus.canonical_key(): 25,
    a_minus.canonical_key(): 25,
    Cyclotomic.zero().canonical_key(): 5,
}
assert abs2 == expected2, (abs2, expected2)
print("twisted squared moduli match {1,(3+sqrt5)/10,(3-sqrt5)/10,0}")

# norm identity: sum over G of |row|^2 = |G|/d = 20
norm = cyc_sum(c.value.abs_squared() * Fraction(c.size) for c in row1.cells)
assert norm.as_rational() == Fraction(20), norm
print("norm identity 20 ok")

summ1 = homogenize(row1)
print("twisted summary:", summ1, "frame:", summ1.frame_count)
assert summ1.line_count == 12 and summ1.gon_order == 5
assert summ1.frame_count == 60
angle_moduli = [(e.modulus.decimal(8) if e.modulus else None, e.count)
                for e in summ1.angles]
print("twisted angles:", angle_moduli)
assert [e.count for e in summ1.angles] == [60, 60, 12]
# exact displayed moduli (5+sqrt5)/10 and (5-sqrt5)/10
m_plus = (Cyclotomic.rational(half) + fives * Fraction(1, 10))
m_minus = (Cyclotomic.rational(half) - fives * Fraction(1, 10))
assert summ1.angles[0].modulus == m_plus
assert summ1.angles[1].modulus == m_minus
assert summ1.angles[2].modulus == Cyclotomic.zero()
print("twisted exact moduli (5+sqrt5)/10, (5-sqrt5)/10, 0 ok")

# coherence = max angle
mod, dec = summ1.coherence()
print("coherence:", mod.decimal(10), dec)

# --- transformation law on random triples --------------------------------
import random

rng = random.Random(7)
elems = A5.elements_raw()
h_elems = C5.elements_raw()
for _ in range(200):
    g = rng.choice(elems)
    t1 = rng.choice(h_elems)
    t2 = rng.choice(h_elems)
    lhs = row1.evaluate(compose(t1, compose(g, t2)))
    rhs = nu.value_conj(t1) * nu.value_conj(t2) * row1.evaluate(g)
    assert lhs == rhs
print("transformation law ok (200 random triples)")

# row(g^-1) = conj(row(g))
for _ in range(50):
    g = rng.choice(elems)
    assert row1.evaluate(invert(g)) == row1.evaluate(g).conj()
print("hermitian symmetry ok")

# --- cross row between two distinct order-5 characters -------------------
# pick nu2 with multiplicity 1 in chi3 and nu2 != nu1
cands = [n for n in nus[1:] if multiplicity(chi3, n) == 1 and n is not nu]
print("other order-5 nus with k=1:", len(cands))
nu2 = cands[0]
cr = cross_row(A5, chi3, C5, nu, C5, nu2)
print("cross:", cr)
cross_abs2 = {}
for c in cr.cells:
    q = c.value.abs_squared()
    cross_abs2[q.canonical_key()] = cross_abs2.get(q.canonical_key(), 0) + c.size
print("cross abs^2 multiset:", cross_abs2)
# truth multiset: {(0,5), ((3+sqrt5)/10, 25), ((3-sqrt5)/10, 25), (1,5)}
# as squared moduli of {0,(5+sqrt5)/10,(5-sqrt5)/10,1}
expected_cross = {
    Cyclotomic.zero().canonical_key(): 5,
    a_plus.canonical_key(): 25,
    a_minus.canonical_key(): 25,
    Cyclotomic.one().canonical_key(): 5,
}
assert cross_abs2 == expected_cross, (cross_abs2, expected_cross)
print("cross squared moduli match {0,(3+sqrt5)/10,(3-sqrt5)/10,1} on (5,25,25,5)")

norm = cyc_sum(c.value.abs_squared() * Fraction(c.size) for c in cr.cells)
assert norm.as_rational() == Fraction(20)
print("cross norm identity 20 ok")

# cross transformation law
for _ in range(200):
    g = rng.choice(elems)
    t1 = rng.choice(h_elems)
    t2 = rng.choice(h_elems)
    lhs = cr.evaluate(compose(t1, compose(g, t2)))
    rhs = nu.value_conj(t1) * nu2.value_conj(t2) * cr.evaluate(g)
    assert lhs == rhs
print("cross transformation law ok")

# --- gram sanity on a small transversal ----------------------------------
import numpy as np

from symframes.frames import frame_representatives

reps = frame_representatives(summ1)
assert len(reps) == 60
Gm = gram(row1, reps)
M = Gm.to_complex()
assert np.allclose(M, M.conj().T)
w = np.linalg.eigvalsh(M)
print("gram eigs: min %.3e max %.3e rank %d" % (w.min(), w.max(), (w > 1e-8).sum()))
assert w.min() > -1e-9
assert (w > 1e-6).sum() == 3  # rank d = 3
# tightness: nonzero eigenvalues all equal |frame|/d = 20
nz = w[w > 1e-6]
assert np.allclose(nz, 20.0, atol=1e-9)
print("tight frame: nonzero eigenvalues all 20 ok")

# --- convolution ----------------------------------------------------------
# row * row = (|G|/d) row for k=1 rows
for _ in range(10):
    g = rng.choice(elems)
    lhs = convolve_at(row1, row1, g, A5)
    rhs = row1.evaluate(g) * Fraction(20)
    assert lhs == rhs
print("row*row = (|G|/d) row ok")

proj = isotypic_projection_row(A5, chi3)
for _ in range(5):
    g = rng.choice(elems)
    lhs = convolve_at(proj, proj, g, A5)
    assert lhs == proj.evaluate(g)
print("projection idempotence ok")

# projection commutes with any class function: p * f = f * p
from symframes.frames import ClassFunctionRow

vals = [Cyclotomic.rational(rng.randrange(-3, 4)) +
        Cyclotomic.root_of_unity(4, 1) * rng.randrange(-2, 3)
        for _ in range(len(ct.classes.classes))]
f = ClassFunctionRow(A5, vals)
for _ in range(5):
    g = rng.choice(elems)
    assert convolve_at(proj, f, g, A5) == convolve_at(f, proj, g, A5)
print("projection commutes with class functions ok")

print("ALL OK in %.2fs" % (time.time() - t0))
