"""Quadratic-scaling trajectories of measure decay and Birkhoff sums.

Between block boundaries the two normalized quantities interpolate along
parabolas: writing f_m for the sum of squared block lengths,

  -log mu(C_n)/log 2  tracks  f_m + (n - N_m)^2   (rises from each boundary),
  -S_n psi/log 2      tracks  f_{m+1} - (N_{m+1}-n)^2  (climbs to the next),

both up to brackets linear in n.  Their accumulation points after dividing by
n^2 are therefore controlled by the block statistics alone: with
(liminf, limsup) of F_m equal to (a, b), the decay sequence accumulates on
[a/(1+a), b] and the Birkhoff sequence on [a, b/(1-b)].

The doubling profile n_i = 2^i has F_m -> 1/3, so the four extremes are
1/4, 1/3, 1/3, 1/2 - visible below at exact-integer scale 2^40.

Run:  python demos/03_scaling_trajectories.py [out_dir]
"""

import pathlib
import sys

from tmlab import (AlternationCode, accumulation_transform, limit_estimates,
                   scaling_enclosure_table, xi_mu_trajectory,
                   xi_psi_trajectory)


def main(out_dir=None):
    print(__doc__)

    code = AlternationCode([2 ** i for i in range(1, 41)])
    n_max = 2 ** 40
    mu = xi_mu_trajectory(code, n_max)
    psi = xi_psi_trajectory(code, n_max)
    mu_est = limit_estimates(mu, 0.4)
    psi_est = limit_estimates(psi, 0.4)
    predicted = accumulation_transform(1 / 3, 1 / 3)
    print("Doubling profile, exact rationals up to n = 2^40:")
    print(f"  decay extrema     ({mu_est.liminf_hat:.8f}, "
          f"{mu_est.limsup_hat:.8f})  predicted ({predicted[0]:.8f}, "
          f"{predicted[1]:.8f})")
    print(f"  Birkhoff extrema  ({psi_est.liminf_hat:.8f}, "
          f"{psi_est.limsup_hat:.8f})  predicted ({predicted[2]:.8f}, "
          f"{predicted[3]:.8f})")
    print(f"  (windows {mu_est.window} and {psi_est.window})")

    print("\nLeading terms near the second block boundary of (2,2,1,1):")
    small = AlternationCode([2, 2, 1, 1])
    print(f"  {'n':>2s} {'decay term':>10s} {'Birkhoff term':>13s}")
    for row in scaling_enclosure_table(small, range(1, 7)):
        print(f"  {row[0]:2d} {row[1]:10d} {row[4]:13d}")
    print("  at boundaries both terms collapse to f_m; strictly inside a "
          "block the\n  decay term sits below (the parabola gap).")

    if out_dir:
        out = pathlib.Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "xi_trajectories.csv"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("n,xi_mu,xi_psi\n")
            psi_at = dict(zip(psi.indices, psi.values))
            for n, v in mu.rows():
                if n in psi_at:
                    fh.write(f"{n},{float(v)!r},{float(psi_at[n])!r}\n")
        print(f"\n  trajectories written to {path}")
        try:
            import matplotlib
            matplotlib.use("Agg")
            import matplotlib.pyplot as plt

            fig, ax = plt.subplots(figsize=(6, 4))
            ax.semilogx(list(mu.indices), [float(v) for v in mu.values],
                        lw=0.8, label="decay / n^2")
            ax.semilogx(list(psi.indices), [float(v) for v in psi.values],
                        lw=0.8, label="Birkhoff / n^2")
            for level in (0.25, 1 / 3, 0.5):
                ax.axhline(level, color="gray", lw=0.5, ls=":")
            ax.set_xlabel("n")
            ax.legend()
            fig.tight_layout()
            fig.savefig(out / "xi_trajectories.png", dpi=150)
            print(f"  plot written to {out / 'xi_trajectories.png'}")
        except ImportError:
            print("  (matplotlib not available; skipped the plot)")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
