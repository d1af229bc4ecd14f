# # Finite groups as Cayley tables
#
# Every group in divisorlab is a multiplication table over ids 0..n-1 with the
# identity at 0. The catalog builds the usual small groups by name.

import numpy as np

from divisorlab import catalog
from divisorlab.groups import (
    all_subgroups,
    centralizer,
    double_coset,
    group_gcd,
    subgroup_generated,
)

s3 = catalog("S3")
print(s3)
print(s3.names)

# Permutations compose left factor first, so (12)(23) means "apply (12), then (23)".

a, b = s3.index_of("(12)"), s3.index_of("(23)")
print(s3.names[s3.mul(a, b)])

# The raw table is a read-only numpy array.

print(s3.table)
print(np.unique(s3.table, axis=0).shape)

# ## Subgroups

for h in all_subgroups(s3):
    print(h.order, h.names())

c = centralizer(s3, [s3.index_of("(123)")])
print("C((123)) =", c.names())

# A double coset HgH, here with H = <(12)> and g = (123).

h = subgroup_generated(s3, [a])
dc = double_coset(h, s3.index_of("(123)"))
print(dc.size, sorted(s3.names[x] for x in dc.members))

# ## GCD(G, n)
#
# The lcm of the subgroup orders dividing n. For finite groups this is just
# gcd(|G|, n); the oracle path enumerates subgroups and agrees.

s4 = catalog("S4")
for n in (0, 1, 2, 3, 4, 6, 8, 12):
    print(n, group_gcd(s4, n), group_gcd(s4, n, oracle=True))

# Bigger catalog names work too.

for label in ("D6", "Q8", "Z2xS3", "direct_product(Z2,Z4)", "A5"):
    g = catalog(label)
    print(g.label, g.order, g.exponent, g.is_abelian)
