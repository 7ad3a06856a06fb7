"""Isolate the cross-block phase problem on the A5 pair."""

import sys
import time

sys.path.insert(0, "src")

import numpy as np

from symframes.cli.catalog import Context
from symframes.frames import frame_representatives
from symframes.permcore import compose, invert

ctx = Context.open("a5")
row1 = ctx.row("twisted")
row2 = ctx.row("twisted-conjugate")
cross = ctx.cross("twisted-pair")
s1 = ctx.summary("twisted")
s2 = ctx.summary("twisted-conjugate")
print(s1, s2)

reps1 = frame_representatives(s1)
reps2 = frame_representatives(s2)
n1, n2 = len(reps1), len(reps2)
print(f"frames: {n1}, {n2}")

def cval(v):
    return v.approx().midpoint

# stored-convention blocks: A[i,j] = row1(g_j^-1 g_i) etc.
A = np.empty((n1, n1), dtype=complex)
for i in range(n1):
    for j in range(n1):
        A[i, j] = cval(row1.evaluate(compose(invert(reps1[j]), reps1[i])))
B = np.empty((n2, n2), dtype=complex)
for i in range(n2):
    for j in range(n2):
        B[i, j] = cval(row2.evaluate(compose(invert(reps2[j]), reps2[i])))
C = np.empty((n1, n2), dtype=complex)
for i in range(n1):
    for j in range(n2):
        C[i, j] = cval(cross.evaluate(compose(invert(reps1[i]), reps2[j])))

print("A hermitian err:", np.abs(A - A.conj().T).max())
print("B hermitian err:", np.abs(B - B.conj().T).max())

# each frame alone: PSD, rank 3, frame constant |G|/(d |S_v|)
for name, M, nn in (("A", A, n1), ("B", B, n2)):
    ev = np.linalg.eigvalsh(M)
    print(f"{name}: min {ev[0]:.2e}, rank {(ev > 1e-8).sum()}")

G_order = ctx.group.order
d = row1.chi.degree
c1 = G_order / (d * s1.vector_stabilizer.order)
c2 = G_order / (d * s2.vector_stabilizer.order)
print("frame constants:", c1, c2)
print("A@A = c1*A err:", np.abs(A @ A - c1 * A).max())
print("B@B = c2*B err:", np.abs(B @ B - c2 * B).max())

# phase-coherence identities for the cross block (either orientation)
e1 = np.abs(A @ C - c1 * C).max()
e2 = np.abs(C @ B - c2 * C).max()
e1T = np.abs(A.T @ C - c1 * C).max()
e2T = np.abs(C @ B.T - c2 * C).max()
e1c = np.abs(A.conj() @ C - c1 * C).max()
e2c = np.abs(C @ B.conj() - c2 * C).max()
print(f"A@C - c1*C: {e1:.3e}   C@B - c2*C: {e2:.3e}")
print(f"A.T@C: {e1T:.3e}   C@B.T: {e2T:.3e}")
print(f"A.conj@C: {e1c:.3e}   C@B.conj: {e2c:.3e}")

# full union, both conj conventions for the off-diagonal block
for label, Cblk in (("C", C), ("C.conj", C.conj())):
    M = np.block([[A, Cblk], [Cblk.conj().T, B]])
    ev = np.linalg.eigvalsh(M)
    print(f"union with {label}: min {ev[0]:.4f}, max {ev[-1]:.2f}, "
          f"rank {(ev > 1e-8).sum()}")
