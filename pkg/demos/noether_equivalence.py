"""Noether equivalence on a qubit: flows and brackets measured separately.

a generates symmetries of b iff b generates symmetries of a iff the
bracket {a, b} vanishes.  The flows below are computed in closed form and
never consult the bracket, so the equivalence is an observation, not a
tautology.
"""

import numpy as np

from noetherlab import jordan, noether, reconstruction

desc = jordan.herm_c(2)
psi = reconstruction.canonical_correspondence(desc)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
sx = jordan.from_complex_matrix(desc, SX)
sz = jordan.from_complex_matrix(desc, SZ)


def show(name, rep):
    print(f"{name}:")
    print(f"  bracket norm      {rep.bracket_norm:.3e}")
    print(f"  a fixes b         {rep.a_fixes_b}")
    print(f"  b fixes a         {rep.b_fixes_a}")
    print(f"  self-conservation {rep.self_conservation_a}, "
          f"{rep.self_conservation_b}")
    print(f"  consistent        {rep.consistent}")
    print()


show("sz vs sx (noncommuting)", noether.noether_check(sz, sx, psi))

rng = np.random.default_rng(1)
a = jordan.random_element(desc, rng)
b = noether.commuting_pair(a, rng)
show("a vs polynomial(a) (commuting)", noether.noether_check(a, b, psi))

show("a vs a (self-conservation)", noether.noether_check(a, a, psi))

v = noether.bracket_antisymmetry_from_self_conservation(desc, psi.table)
print(f"bracket antisymmetry from self-conservation: alternating="
      f"{v.alternating}, antisymmetric={v.antisymmetric}")

P = jordan.structure(desc).product
v = noether.bracket_antisymmetry_from_self_conservation(desc, P)
print(f"the jordan product itself as a 'bracket': ok={v.ok} "
      f"(witness kind: {v.witness['kind']})")
