"""Tour of the five formally real Jordan algebra families.

Builds one element per family, multiplies, decomposes spectrally and
checks the reconstruction, printing everything along the way.
"""

import numpy as np

from noetherlab import jordan, spectral
from noetherlab.division import format_table

print("octonion multiplication table (rows x columns):")
print(format_table(8))
print()

families = [jordan.herm_r(3), jordan.herm_c(3), jordan.herm_h(2),
            jordan.spin(4), jordan.albert()]
rng = np.random.default_rng(0)

for desc in families:
    a = jordan.random_element(desc, rng)
    b = jordan.random_element(desc, rng)
    ab = jordan.jordan_product(a, b)
    dec = spectral.spectrum(a)
    err = spectral.jb_norm(dec.reconstruct() - a)
    print(f"{desc!r}: dim {desc.dim}, rank {desc.rank}")
    print(f"  |a o b| = {spectral.jb_norm(ab):.4f}")
    print(f"  spectrum of a: {np.round(dec.eigenvalues, 4).tolist()}"
          f" multiplicities {dec.multiplicities}")
    print(f"  spectral reconstruction error: {err:.2e}")
    aa = jordan.jordan_product(a, a)
    lhs = jordan.jordan_product(aa, jordan.jordan_product(a, b))
    rhs = jordan.jordan_product(a, jordan.jordan_product(aa, b))
    print(f"  jordan identity residual: {spectral.jb_norm(lhs - rhs):.2e}")
    print()

s = jordan.direct_sum(jordan.herm_c(2), jordan.spin(3))
a = jordan.random_element(s, rng)
print(f"direct sum {s!r}: eigenvalues merge across components:")
print(f"  {np.round(spectral.spectrum(a).eigenvalues, 4).tolist()}")
