"""Watching the shooting method find an eigenvalue.

Marches the radial equation outward for a fan of trial wavenumbers
around the second axisymmetric mode of the uniform membrane.  Only at
the eigenvalue does the displacement land on zero at the rim; the
interior zero crossing is the mode's nodal circle, which is how the
solver tells the second root from the first.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from drummodes import Uniform, boundary_value, count_nodes, integrate, initial_conditions
from drummodes.specfun import bessel_zero

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

profile = Uniform()
target = bessel_zero(0, 2)

fig, ax = plt.subplots(figsize=(7, 3.6))
print(f"{'trial kprime':>13} {'rim value':>12} {'interior nodes':>15}")
for kprime in (4.6, 5.1, target, 6.0, 6.5):
    init = initial_conditions(0, kprime, profile, 1e-4)
    traj = integrate(0, kprime, profile, 1e-4, 1e-3, init)
    nodes = count_nodes(traj)
    label = f"k' = {kprime:.4f}" + ("  <- eigenvalue" if kprime == target else "")
    ax.plot(traj.r[::5], traj.R[::5], lw=1.2, label=label)
    print(f"{kprime:13.4f} {traj.final.R:12.5f} {nodes:15d}")

print(f"\nrim value by direct call: {boundary_value(0, target, profile):+.2e}")
ax.axhline(0.0, color="gray", lw=0.6)
ax.set_xlabel("r / a")
ax.set_ylabel("radial displacement")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "shooting_fan.png", dpi=120)
print(f"figure written to {OUT}/")
