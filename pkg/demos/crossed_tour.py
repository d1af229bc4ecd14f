# # Crossed homomorphisms and semidirect products

from divisorlab import catalog
from divisorlab.crossed import (
    GroupAction,
    abelianization,
    all_actions,
    count_crossed_homs,
    crossed_homs,
    semidirect_product,
    theorem4_verdict,
)

z2, z3 = catalog("Z2"), catalog("Z3")

# Z2 acting on Z3 by inversion. Rows are the permutation of Z3 for each element of Z2.

inversion = GroupAction(z2, z3, [[0, 1, 2], [0, 2, 1]])
g, proj, section = semidirect_product(inversion)
print(g.order, g.is_abelian, abelianization(g))

# Crossed homs F → B correspond to sections of F ⋉ B → F; both routes are counted.

print(crossed_homs(inversion))
print(count_crossed_homs(inversion), count_crossed_homs(GroupAction.trivial(z2, z3)))

for rep in theorem4_verdict(inversion):
    print(rep.to_json())

# Every action of Z4 on Z2 x Z2.

for act in all_actions(catalog("Z4"), catalog("Z2xZ2")):
    print(act.perms[1].tolist(), count_crossed_homs(act))

print(abelianization(catalog("S4")), abelianization(catalog("Q8")), abelianization(catalog("A5")))
