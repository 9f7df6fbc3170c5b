"""Cylinder measures of the Thue-Morse g-measure, three independent ways.

For a finite word w, the measure of its cylinder is pinned down by

  1. rigorous log-bounds from the word's run-length profile (the mass decays
     like 2**-(n + sum n_i^2), up to a linear-in-n bracket),
  2. a transfer-operator estimate: iterating the weight sum over all
     extensions of w, evaluated at anchor tails far from the singular points,
  3. midpoint quadrature of the truncated Riesz product density against the
     word's dyadic interval.

Routes 2 and 3 are independent numerical methods; route 1 encloses both.

Run:  python demos/02_cylinder_measures.py
"""

import math

from tmlab import (BinaryWord, cylinder_log_bounds, cylinder_measure_estimate,
                   riesz_quadrature)

LOG2 = math.log(2)


def main():
    print(__doc__)
    print(f"{'word':10s} {'log2 lower':>11s} {'log2 est':>10s} "
          f"{'log2 upper':>11s} {'estimate':>12s} {'quadrature':>12s} "
          f"{'spread':>9s}")
    for w in ("0", "01", "0110", "010011", "00000000", "01101001"):
        word = BinaryWord(w)
        bounds = cylinder_log_bounds(word)
        est = cylinder_measure_estimate(word, 16)
        quad = riesz_quadrature(word, 16, 1 << 16)
        print(f"{w:10s} {bounds.lo / LOG2:11.3f} "
              f"{est.log_value / LOG2:10.3f} {bounds.hi / LOG2:11.3f} "
              f"{est.value:12.6g} {quad:12.6g} {est.anchor_spread:9.1e}")
        assert est.within_bounds

    print("\nThe two halves carry mass 1/2 each (exactly, by symmetry):")
    e0 = cylinder_measure_estimate(BinaryWord("0"), 18)
    print(f"  estimate for [0]: {e0.value:.12f} (anchor spread "
          f"{e0.anchor_spread:.2e})")

    print("\nChild cylinders regroup exactly into their parent "
          "(the enumerated sums\nare identical term sets):")
    w = BinaryWord("0110")
    parent = cylinder_measure_estimate(w, 13)
    c0 = cylinder_measure_estimate(w + BinaryWord("0"), 12)
    c1 = cylinder_measure_estimate(w + BinaryWord("1"), 12)
    print(f"  [w]      = {parent.value:.12e}")
    print(f"  [w0]+[w1] = {c0.value + c1.value:.12e}")

    print("\nDeeper enumeration tightens the anchor spread:")
    for depth in (8, 12, 16, 20):
        e = cylinder_measure_estimate(BinaryWord("0"), depth)
        print(f"  depth {depth:2d}: spread {e.anchor_spread:.2e}")

    print("\nConstant words decay super-polynomially: the normalized "
          "log-mass\n-log2 mu([0^n]) / n^2 is squeezed to 1:")
    for n in (10, 40, 160, 1000):
        b = cylinder_log_bounds(BinaryWord.zeros(n))
        print(f"  n = {n:4d}: [{-b.hi / (n * n * LOG2):.4f}, "
              f"{-b.lo / (n * n * LOG2):.4f}]")


if __name__ == "__main__":
    main()
