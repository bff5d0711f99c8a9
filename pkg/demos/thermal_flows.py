"""Gibbs states, partition functions and translation in inverse temperature.

A qubit with H = diag(0, 1) relative to the maximal-entropy state: the
partition function, the beta-translation semigroup and the beta -> infinity
ground-state limit.
"""

import numpy as np

from noetherlab import jordan, states
from noetherlab.jordan import JordanElement

desc = jordan.herm_c(2)
H = JordanElement(desc, [0.0, 1.0, 0.0, 0.0])  # diag(0, 1)
omega = states.trace_state(desc)

print("Z(beta) = omega(exp(-beta H)) for the qubit H = diag(0, 1):")
for beta in (0.0, 0.5, 1.0, 2.0, 5.0):
    z = states.partition_function(omega, H, beta)
    print(f"  beta = {beta:4.1f}   Z = {z:.6f}"
          + ("   (= (1 + 1/e)/2)" if beta == 1.0 else ""))
print()

print("gibbs density at beta = 1 (matrix form):")
g = states.gibbs_state(omega, H, 1.0)
print(np.round(jordan.to_complex_matrix(g.density).real, 6))
print()

print("translation semigroup: moving omega_gamma by beta lands on "
      "omega_(beta+gamma)")
for beta, gamma in [(0.5, 0.5), (1.0, 0.7)]:
    w_gamma = states.gibbs_state(omega, H, gamma)
    moved, factor = states.thermal_translate(w_gamma, H, beta)
    target = states.gibbs_state(omega, H, beta + gamma)
    err = np.max(np.abs(moved.density.coords - target.density.coords))
    zg = states.partition_function(omega, H, gamma)
    zbg = states.partition_function(omega, H, beta + gamma)
    print(f"  beta={beta}, gamma={gamma}: state error {err:.2e}, "
          f"factor {factor:.6f} vs Z(b+g)/Z(g) {zbg / zg:.6f}")
print()

g50 = states.gibbs_state(omega, H, 50.0)
print("beta = 50 density (ground-state projector):")
print(np.round(jordan.to_complex_matrix(g50.density).real, 12))
print()

print("spectral measure of H in the beta = 1 state:")
for lam, p in states.spectral_measure(g, H):
    print(f"  eigenvalue {lam:.1f} with probability {p:.6f}")
