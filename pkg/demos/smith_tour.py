# # Integer matrices, minors and the Smith form
#
# Everything is exact: entries are Python ints, so huge exponents are fine.

import numpy as np

from divisorlab import IntMatrix
from divisorlab.intlinalg import (
    bareiss_det,
    invariant_factor,
    minors_gcd,
    row_divisible_fact_check,
    smith_normal_form,
)

a = IntMatrix([[4, 5], [7, 5], [-2, 0]])
f = smith_normal_form(a)
print(f.diagonal)

# L·A·R is the diagonal form, with L and R unimodular.

print((f.left @ a @ f.right).tolist())
print(bareiss_det(f.left), bareiss_det(f.right))

# Δ_i is the gcd of the i×i minors; Δ_0 = 1 and 0/0 counts as 0.

for i in range(4):
    print(i, minors_gcd(a, i))
print(invariant_factor(a, 2), invariant_factor([[0, 0], [0, 0]], 2))

# Exponents like 2019^3 do not overflow.

print(bareiss_det([[2019 ** 3, 100 ** 4], [7 ** 20, 3 ** 30]]))

# Random check that the diagonal matches the ratios of successive minors.

rng = np.random.default_rng(0)
for _ in range(5):
    m = rng.integers(-20, 21, size=(4, 3)).tolist()
    d = smith_normal_form(m).diagonal
    ratios = [minors_gcd(m, i) // minors_gcd(m, i - 1) if minors_gcd(m, i - 1) else 0
              for i in range(1, 4)]
    print(d, tuple(ratios))

# If row i is divisible by l_i, the invariant factor picks up gcd and lcm bounds.

print(row_divisible_fact_check([[2, 0], [0, 3]], [2, 3]))
