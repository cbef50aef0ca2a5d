"""Why a plain circular drum cannot hold a pitch.

Solves the uniform membrane by shooting, checks the eigenvalues against
the Bessel-function zeros they must equal, and shows that the overtone
ratios land nowhere near integers.  Writes mode-shape and spectrum
figures next to this script.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from drummodes import ModeId, Uniform, bessel_j, bessel_zero, eigen_spectrum, ratio_table
from drummodes.shooting import SearchConfig

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

profile = Uniform()
print("solving the uniform membrane, diameters <= 4, circles <= 2 ...")
spectrum = eigen_spectrum(profile, m_max=4, c_max=2, config=SearchConfig(h=1e-3))

print(f"\n{'mode':>7} {'kappa':>10} {'bessel zero':>12} {'difference':>11}")
for res in spectrum[:10]:
    zero = bessel_zero(res.mode.diameters, res.mode.circles + 1)
    print(f"{str(res.mode):>7} {res.kappa:10.5f} {zero:12.5f} {abs(res.kappa - zero):11.2e}")

table = ratio_table(spectrum, ModeId(0, 0), 1.0)
print("\novertone ratios relative to the fundamental:")
for entry in list(table)[:8]:
    nearest = round(entry.ratio)
    print(f"  {entry.mode}: {entry.ratio:.4f}   (nearest integer {nearest}, off by {abs(entry.ratio - nearest):.3f})")
print("\nNo amount of tuning hardware fixes this: the ratios are fixed by the")
print("zeros of the Bessel functions, and they are irrational multiples of")
print("each other.  The drum needs a different *membrane*, not a different rim.")

# radial mode shapes J_m(kappa r)
fig, axes = plt.subplots(1, 3, figsize=(12, 3.2), sharey=True)
r = np.linspace(0, 1, 400)
for ax, (m, c) in zip(axes, [(0, 0), (0, 1), (2, 0)]):
    kappa = bessel_zero(m, c + 1)
    ax.plot(r, [bessel_j(m, kappa * ri) for ri in r])
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_title(f"mode ({m},{c}), kappa = {kappa:.3f}")
    ax.set_xlabel("r / a")
axes[0].set_ylabel("radial displacement")
fig.tight_layout()
fig.savefig(OUT / "uniform_mode_shapes.png", dpi=120)

# spectrum vs the harmonic series
fig, ax = plt.subplots(figsize=(7, 2.6))
ratios = [entry.ratio for entry in table]
ax.vlines(ratios, 0, 1, color="tab:blue", label="uniform membrane")
ax.vlines(range(1, 6), 0, 1, color="tab:red", lw=0.8, linestyles=":", label="harmonic series")
ax.set_xlabel("frequency / fundamental")
ax.set_yticks([])
ax.legend(loc="upper right")
fig.tight_layout()
fig.savefig(OUT / "uniform_spectrum.png", dpi=120)
print(f"\nfigures written to {OUT}/")
