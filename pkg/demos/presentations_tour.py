# # Homomorphisms from presented groups with a Z/n grading

from divisorlab import catalog
from divisorlab.groups import all_subgroups, subgroup_generated
from divisorlab.homverify import (
    FinitePresentation,
    IndexedHom,
    Lemma0Context,
    conditions_check,
    degree_one_word,
    enumerate_homs,
    phi_core,
)

s3 = catalog("S3")
p = FinitePresentation.parse(["g"], ["g^6"])
homs = enumerate_homs(p, s3)
print(len(homs), [s3.names[t[0]] for t in homs])

# deg g = 1 in Z/2. g^6 has degree 0, so the grading is well defined.

phi = IndexedHom(p, s3, 2, (1,), (s3.index_of("(12)"),))
print(sorted(s3.names[x] for x in phi.image), sorted(s3.names[x] for x in phi.kernel_image))

a3 = subgroup_generated(s3, [s3.index_of("(123)")])
print("core:", phi_core(phi, a3).names())

# Twisting by g means sending a degree-one word f1 to φ(f1)g and keeping φ on
# degree zero. The power condition and a direct construction must agree.

f1 = degree_one_word(p, (1,), 2)
ctx = Lemma0Context(phi, f1)
for x in s3.elements:
    exists, psi = ctx.check(x)
    print(f"{s3.names[x]:6s} {exists} {psi and [s3.names[y] for y in psi]}")

# The whole hom set is closed under conjugation and under core twists, so its
# size is a multiple of |H| for each H with |H| dividing n.

for h in all_subgroups(s3):
    if 2 % h.order == 0:
        print(h.names(), conditions_check(homs, h, p, (1,), 2).to_json())
