"""Follow one closed Hyp0 orbit end to end.

Classifies the regime, integrates the flow with drift diagnostics, measures
the closure gap over two radial periods, and cross-checks the action
variables against direct quadrature plus the J -> E inversion.

Run:  python3 demos/closed_orbit.py
"""

from koenigs import (
    action_quadrature,
    action_variables,
    classify,
    closure_test,
    drift_report,
    energy_from_J,
    integrate,
    make_model,
    start_point,
)

RHO, XI = 0.8, 1.1
E, L = 0.5, 0.5


def main():
    model = make_model("h0", RHO, XI)
    regime = classify(model, E, L)
    print(f"regime: {regime.tag}, eccentricity {regime.eccentricity:.4f}")
    print(f"radial interval: [{regime.turning_points[0]:.4f}, {regime.turning_points[1]:.4f}]")

    traj = integrate(model, start_point(regime), 30.0, tol=1e-10)
    drift = drift_report(traj)
    print("\nconserved-quantity drift over t = 30:")
    for name, value in drift.items():
        print(f"  {name:<4} {value:.3e}")

    closure = closure_test(model, E, L)
    print(f"\nradial period:  {closure['radial_period']:.6f}")
    print(f"angular advance per radial period: {closure['angular_advance']:.12f}")
    print(f"closure gap over two radial periods: {closure['gap']:.3e}")

    av = action_variables(model, E, L)
    quad = action_quadrature(model, E, L)
    print(f"\nactions (closed form):  I_angle = {av.I_angle:.10f}, I_radial = {av.I_radial:.10f}")
    print(f"actions (quadrature):   I_radial = {quad:.10f}")
    print(f"energy from J = {av.J:.6f}: {energy_from_J(model, av.J):.12f}  (target {E})")


if __name__ == "__main__":
    main()
