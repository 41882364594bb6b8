"""Classify a spread of geodesic regimes across all four families.

Run:  python3 demos/tour_of_regimes.py
"""

import numpy as np

from koenigs import NoGlobalStructure, classify, curve_residual, make_model, start_point

CASES = [
    # family, rho, xi, E, L
    ("trig", 0.5, -0.5, 0.0, 1.0),
    ("trig", 0.5, 0.8, 1.0, 1.0),
    ("trig", 0.5, 2.0 * (2.0 - np.sqrt(3.0)), 1.0, 1.0),
    ("h0", 0.8, 1.1, 2.0, 0.9),
    ("h0", 0.8, 1.1, 0.5, 0.5),
    ("hplus", 2.0, 1.0, 1.0, 0.8),
    ("hplus", 2.0, 8.0, 1.8, 1.0),
    ("hminus", 1.2, 2.0, 1.0, 1.0),
    ("affine", 1.2, 1.0, 1.0, 2.0),
    ("affine", 1.2, 1.0, 1.0, np.sqrt(2.4)),
]


def main():
    header = f"{'family':<8} {'rho':>5} {'xi':>6} {'E':>6} {'L':>4}  {'regime':<22} {'closed':<7} curve residual at start"
    print(header)
    print("-" * len(header))
    for family, rho, xi, E, L in CASES:
        model = make_model(family, rho, xi)
        try:
            regime = classify(model, E, L)
        except NoGlobalStructure as exc:
            # the hminus chart is local only; there is no regime table for it
            print(f"{family:<8} {rho:>5.2f} {xi:>6.3f} {E:>6.3f} {L:>4.2f}  ({exc})")
            continue
        point = start_point(regime)
        res = curve_residual(regime, point)
        print(
            f"{family:<8} {rho:>5.2f} {xi:>6.3f} {E:>6.3f} {L:>4.2f}  "
            f"{regime.tag:<22} {str(regime.closed):<7} {res:.2e}"
        )
        if regime.turning_points:
            tps = ", ".join(f"{tp:.4f}" for tp in regime.turning_points)
            print(f"{'':>45}turning points: {tps}")


if __name__ == "__main__":
    main()
