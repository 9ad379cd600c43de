#!/usr/bin/env python3
"""Divergence table for the triangular compression rule.

The witness vector with entries 1/k at the record indices keeps its own norm
below pi/sqrt(6) while the certified lower bound on the image norm squared
tracks the harmonic numbers, so it grows without bound.
"""

import argparse
import math

from genshift import divergence_witness, norm_sq, symbolic_map


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-exp", type=int, default=16,
                        help="largest K is 2**max_exp")
    args = parser.parse_args()

    tri = symbolic_map("triangular")
    print(f"{'K':>10} {'|x|^2':>12} {'bound on |image|^2':>20} {'H_K':>12}")
    for exp in range(0, args.max_exp + 1, 2):
        K = 2 ** exp
        w = divergence_witness(tri, K)
        harmonic = math.fsum(1.0 / k for k in range(1, K + 1))
        print(f"{K:>10} {norm_sq(w.vector):>12.6f} "
              f"{w.image_norm_sq_lower_bound:>20.6f} {harmonic:>12.6f}")
    print(f"{'limit':>10} {math.pi ** 2 / 6:>12.6f} {'diverges':>20}")


if __name__ == "__main__":
    main()
