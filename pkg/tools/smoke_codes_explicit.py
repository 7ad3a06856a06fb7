"""Smoke test: explicit constructions and the 1932-vector assembly."""

import sys
import time

sys.path.insert(0, "src")

from fractions import Fraction

from symframes.codes import (
    build_code_r14,
    construct_d7_scaled,
    construct_e7_shell,
    construct_phi3,
    realify,
    verify_kissing,
)
from symframes.cyclo import Cyclotomic

t0 = time.time()
shell = construct_e7_shell()
print(f"shell: {len(shell)} vectors, {len(shell.cross_polytopes)} polytopes "
      f"({time.time()-t0:.2f}s)")
assert len(shell) == 126
assert all(len(p) == 14 for p in shell.cross_polytopes)

# pairwise shell products lie in {0, +-1/2, +-1}
vals = set()
for i in range(126):
    for j in range(126):
        d = sum(a * b for a, b in zip(shell.vectors[i], shell.vectors[j]))
        vals.add(d.as_rational())
print("shell product set:", sorted(vals))
assert vals == {Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)}

t0 = time.time()
phi3 = construct_phi3(shell)
print(f"phi3: {len(phi3)} vectors ({time.time()-t0:.2f}s)")
assert len(phi3) == 1512

phi4 = construct_d7_scaled()
print(f"phi4: {len(phi4)} vectors")
assert len(phi4) == 84

# sample unit norms for phi3 (construction skips the per-vector check)
one = Cyclotomic.one()
for idx in (0, 10, 500, 1511):
    v = phi3.vectors[idx]
    norm = sum((x * x.conj() for x in v), Cyclotomic.zero())
    assert norm == one, idx
print("phi3 sample norms ok")

r = realify(phi3)
print(f"realified phi3: dim {r.dimension}")
assert r.dimension == 14 and r.is_real()

t0 = time.time()
asm = build_code_r14()
print(f"r14 assembly resolved in {time.time()-t0:.2f}s; "
      f"phases: {[(p, str(asm.resolved[p])) for p in sorted(asm.resolved)]}")

t0 = time.time()
cg = asm.materialize()
print(f"materialized {cg.n}x{cg.n} in {time.time()-t0:.2f}s, "
      f"{len(cg.values)} values: {[str(v) for v in cg.values]}")
assert cg.n == 1932

t0 = time.time()
rep = verify_kissing(asm, 14)
print(f"verify in {time.time()-t0:.2f}s")
for line in rep.lines():
    print("  " + line)
assert rep.verdict, "R14 kissing verdict failed"
assert rep.rank == 14
print("R14 OK")
