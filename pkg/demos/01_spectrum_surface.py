"""The joint dimension spectrum on the admissible triangle.

A binary sequence outside the eventually-constant set has a run-length
profile (n_i); the normalized squared-block ratio F_m = (sum n_i^2) / N_m^2
lives in (0, 1], and the pair (liminf F, limsup F) = (alpha, beta) can be any
point of the triangle alpha <= beta.  The Hausdorff dimension of the set of
sequences realizing a given pair is the closed-form surface f(alpha, beta)
explored here.

Run:  python demos/01_spectrum_surface.py [out_dir]
"""

import pathlib
import sys

import numpy as np

from tmlab import beta_star, eta, joint_dim, spectrum_grid
from tmlab.spectrum import GRID_COLUMNS


def main(out_dir=None):
    print(__doc__)

    print("Boundary behaviour")
    print("  f(0, b) = 1 - sqrt(b):")
    for b in (0.04, 0.25, 0.64, 1.0):
        print(f"    f(0, {b:4.2f}) = {joint_dim(0.0, b):.6f}   "
              f"1 - sqrt(b) = {1 - np.sqrt(b):.6f}")
    print("  the diagonal and the top edge carry dimension zero:")
    print(f"    f(0.3, 0.3) = {joint_dim(0.3, 0.3)},  "
          f"f(0.3, 1.0) = {joint_dim(0.3, 1.0)}")
    print("  the origin is a non-removable singularity; the convention "
          "f(0,0) = 1\n  matches the bounded-block constructions.")

    print("\nFor a fixed liminf, the most abundant limsup is strictly "
          "interior:")
    for a in (0.1, 0.25, 0.5):
        bs = beta_star(a)
        print(f"    alpha = {a:4.2f}: maximizer beta* = {bs:.6f}, "
              f"f(alpha, beta*) = {joint_dim(a, bs):.6f}")

    print("\nThe companion surface eta(alpha, beta) = "
          "(1 - f)/sqrt(beta) is the floor\nfor the renormalized density of "
          "large blocks; it is increasing in alpha\nand decreasing in beta:")
    for a, b in ((0.0, 0.5), (0.25, 0.5), (0.5, 0.5), (0.25, 0.9)):
        print(f"    eta({a:4.2f}, {b:4.2f}) = {eta(a, b):.6f}")

    grid = spectrum_grid(201)
    print(f"\nEvaluated a lower-triangular grid: {grid.shape[0]} rows, "
          f"columns {GRID_COLUMNS}.")
    interior = grid[(grid[:, 0] > 0) & (grid[:, 0] < grid[:, 1])
                    & (grid[:, 1] < 1)]
    print(f"  interior f range: ({interior[:, 2].min():.4f}, "
          f"{interior[:, 2].max():.4f})")

    if out_dir:
        out = pathlib.Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "spectrum_grid.csv"
        np.savetxt(path, grid, delimiter=",", header=",".join(GRID_COLUMNS),
                   comments="")
        print(f"  grid written to {path}")
        try:
            import matplotlib
            matplotlib.use("Agg")
            import matplotlib.pyplot as plt

            fig, ax = plt.subplots(figsize=(5, 4))
            sc = ax.scatter(grid[:, 0], grid[:, 1], c=grid[:, 2], s=4,
                            cmap="viridis")
            ax.set_xlabel("alpha (liminf)")
            ax.set_ylabel("beta (limsup)")
            ax.set_title("joint dimension spectrum")
            fig.colorbar(sc, label="f")
            fig.tight_layout()
            fig.savefig(out / "spectrum_surface.png", dpi=150)
            print(f"  surface plot written to {out / 'spectrum_surface.png'}")
        except ImportError:
            print("  (matplotlib not available; skipped the plot)")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
