"""Classical mechanics with exact polynomial observables.

Poisson brackets over the rationals, so {H, L} = 0 is a theorem here, not
a numerical accident; flows are integrated numerically and checked against
the symbolic verdicts.
"""

import numpy as np

from noetherlab import classical
from noetherlab.classical import (classical_noether_check,
                                  hamiltonian_vector_flow,
                                  observable_along_flow, parse_polynomial,
                                  poisson_bracket)

q1 = classical.PolynomialObservable.q(1, 1)
p1 = classical.PolynomialObservable.p(1, 1)
print(f"{{p1, q1}} = {poisson_bracket(p1, q1)!r} (exact)")
print()

H = parse_polynomial("1/2*q1^2 + 1/2*p1^2")
traj = hamiltonian_vector_flow(H, [1.0, 0.0], 2.0 * np.pi, 4000)
print(f"oscillator after one period: {np.round(traj.final(), 10).tolist()}")
vals = [v for _, v in observable_along_flow(H, traj)]
print(f"energy drift over the period: {max(abs(v - vals[0]) for v in vals):.2e}")
print()

Hc = parse_polynomial(
    "1/2*p1^2 + 1/2*p2^2 + 1/4*q1^4 + 1/2*q1^2*q2^2 + 1/4*q2^4")
L = parse_polynomial("q1*p2 - q2*p1")
print(f"central quartic potential: {{H, L}} = {poisson_bracket(Hc, L)!r}")
points = [(0.4, 0.1, 0.3, -0.2), (-0.5, 0.6, 0.2, 0.3)]
rep = classical_noether_check(Hc, L, points)
print(f"noether report: bracket_norm={rep.bracket_norm}, "
      f"H fixes L: {rep.a_fixes_b}, L fixes H: {rep.b_fixes_a}, "
      f"consistent: {rep.consistent}")
print()

f = parse_polynomial("q1", n=1)
g = parse_polynomial("p1", n=1)
rep = classical_noether_check(f, g, [(0.5, 0.5)])
print(f"position vs momentum: bracket_norm={rep.bracket_norm}, "
      f"q fixes p: {rep.a_fixes_b}, consistent: {rep.consistent}")
print()

blow = parse_polynomial("q1^2*p1")
traj = hamiltonian_vector_flow(blow, [2.0, 1.0], 1.0, 1000)
print(f"H = q^2 p has finite-time blow-up: blown_up={traj.blown_up} "
      f"after {len(traj.samples)} recorded samples")
