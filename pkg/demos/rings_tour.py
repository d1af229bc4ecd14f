# # Equations over finite rings, solved in a unit group

from divisorlab import catalog
from divisorlab.rings import (
    GroupRing,
    MatrixRing,
    ModIntRing,
    RingEquationSystem,
    RingTerm,
    ScalarFactor,
    VariablePower,
    general_linear,
    group_basis,
    homogeneity_matrix,
    km17_sweep,
    modint_units,
    representation_example_verdict,
    theorem3_verdict,
)
from divisorlab.words import parse_word

# x^3 + x = 0 over 2x2 matrices mod 2, with x ranging over GL2(Z/2) ≅ S3.

m22 = MatrixRing(2, 2)
gl2 = general_linear(m22)
print(gl2.group.order, gl2.group.is_abelian)

system = RingEquationSystem(m22, 1, [[RingTerm([VariablePower(1, 3)]),
                                      RingTerm([VariablePower(1, 1)])]], gl2)
print(homogeneity_matrix(system).tolist())
print(theorem3_verdict(system).to_json())

# Mixed terms with coefficients over Z/7: the homogeneity matrix records
# per-term exponent sums next to an indicator column per equation.

r = ModIntRing(7)
v, c = VariablePower, ScalarFactor
eq1 = [RingTerm([c(3), v(1, 3), v(2, 2)]), RingTerm([v(2, 7), c(5), v(1, 1)]),
       RingTerm([c(r.neg(1))])]
eq2 = [RingTerm([v(1, 1), v(2, 2), v(1, 1)]), RingTerm([v(2, 7), v(1, 5)])]
mixed = RingEquationSystem(r, 2, [eq1, eq2], modint_units(r))
print(homogeneity_matrix(mixed).tolist())
print(theorem3_verdict(mixed).to_json())

# ## Sums of powers of words in a group ring

ring = GroupRing(3, catalog("S3"))
emb = group_basis(ring)
rep = representation_example_verdict(ring, emb, [parse_word("x y x", 2)], [2], arity=2)
print(rep.breakdown["case_bounds"], rep.solution_count)

rep = representation_example_verdict(m22, gl2, [parse_word("x", 2), parse_word("y", 2)], [2, 3])
print(rep.breakdown["case_bounds"], rep.solution_count)

# A commuting-prefix identity in monoids, checked exhaustively on S3.

print(km17_sweep(catalog("S3"), max_exp=2, max_len=2))
