"""Rebuilding a C*-algebra from a Jordan algebra plus a correspondence.

The canonical correspondence psi_a = (i/2)[a, -] on 2x2 complex hermitian
matrices turns the complexification into the full matrix algebra with
product a b = a o b - i{a, b}; the zero correspondence demonstrably fails.
"""

import numpy as np

from noetherlab import jordan, reconstruction as rec
from noetherlab.reconstruction import ComplexStarElement

desc = jordan.herm_c(2)
psi = rec.canonical_correspondence(desc)

ok_a, res_a = rec.check_condition_A(psi)
ok_b, res_b = rec.check_condition_B(psi)
print(f"condition (A) psi_a(a) = 0:            {ok_a} (residual {res_a:.2e})")
print(f"condition (B) [psi_a,psi_b]=-[d_a,d_b]: {ok_b} (residual {res_b:.2e})")

conds = rec.check_reconstruction_conditions(psi)
for name in ("antisymmetry", "commutativity", "leibniz", "associator"):
    c = conds[name]
    print(f"condition {name:14s} passed={c['passed']} "
          f"residual={c['max_residual']:.2e}")
print()

verdict = rec.verify_cstar(psi)
print("C*-axioms with the canonical correspondence:")
for key, val in verdict.residuals.items():
    print(f"  {key:22s} residual {val:.2e}")
print()

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
x = ComplexStarElement(jordan.from_complex_matrix(desc, SX),
                       jordan.from_complex_matrix(desc, SY))
print(f"||sx + i sy|| in the rebuilt algebra: {rec.cstar_norm(x, psi):.6f} "
      "(a rank-one nilpotent scaled by 2)")
print()

zero = rec.zero_correspondence(desc)
bad = rec.check_reconstruction_conditions(zero)
print(f"zero correspondence: associator passed={bad['associator']['passed']} "
      f"(residual {bad['associator']['max_residual']:.2f})")
print()

print("why some families admit no correspondence (dimension counts):")
for d in (jordan.herm_r(3), jordan.herm_c(3), jordan.herm_h(2)):
    t = rec.correspondence_obstruction(d)
    print(f"  {d!r}: dim O = {t['dim_O']}, dim L = {t['dim_L']}, "
          f"obstructed = {t['linear_obstruction']}")
