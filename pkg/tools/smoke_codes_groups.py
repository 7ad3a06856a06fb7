"""Smoke test: group-frame code assemblies (R10, R11) and line unions."""

import sys
import time

sys.path.insert(0, "src")

from symframes.cli.recipes import build_recipe, load_recipe
from symframes.codes import coherence, verify_kissing

t0 = time.time()
built = build_recipe(load_recipe("psu42-r10"))
print(f"r10 built in {time.time()-t0:.1f}s; phases "
      f"{[(p, str(c)) for p, c in sorted(built.chosen_phases.items())]}")
print(f"  n = {built.coded.n}, values = {sorted(str(v) for v in built.coded.values)}")

t0 = time.time()
rep = verify_kissing(built.coded, 10)
print(f"r10 verify in {time.time()-t0:.1f}s")
for line in rep.lines():
    print("  " + line)
assert rep.verdict and rep.count == 510 and rep.rank == 10

t0 = time.time()
from symframes.cli.recipes import build_code_r11
r11 = build_code_r11(built.assembly)
print(f"r11 lift in {time.time()-t0:.1f}s; n = {r11.n}")
rep11 = verify_kissing(r11, 11)
for line in rep11.lines():
    print("  " + line)
assert rep11.verdict and rep11.count == 592 and rep11.rank == 11

t0 = time.time()
union = build_recipe(load_recipe("psu42-85"))
print(f"85-union in {time.time()-t0:.1f}s: lines {union.line_count}")
for e in union.angles:
    print(f"  angle^2 {e.abs_squared} | modulus "
          f"{e.modulus} ~ {e.modulus_float():.6f} | pairs {e.count}")
assert union.line_count == 85

t0 = time.time()
union78 = build_recipe(load_recipe("m12-78"))
print(f"78-union in {time.time()-t0:.1f}s: lines {union78.line_count}, "
      f"reference {union78.reference}")
for e in union78.angles:
    print(f"  angle^2 {e.abs_squared} | modulus "
          f"{e.modulus} ~ {e.modulus_float():.6f} | pairs {e.count}")
c = coherence(union78, union78.reference)
print("  " + " / ".join(c.lines()))
assert union78.line_count == 78
print("ALL GROUP-CODE SMOKE OK")
