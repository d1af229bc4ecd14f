# # Counting solutions of equations over a group
#
# Words mix unknowns, coefficients, powers and commutators. A system's count
# is always divisible by a bound computed from the exponent-sum matrix.

from divisorlab import catalog
from divisorlab.groups import centralizer, subgroup_generated
from divisorlab.intlinalg import minors_gcd, smith_normal_form
from divisorlab.solver import count_solutions, theorem1_verdict, theorem2_verdict
from divisorlab.words import GeneralizedEquation, GeneralizedSystem, parse_word, system_matrix

s4 = catalog("S4")
coeffs = {"a": s4.index_of("(12)"), "b": s4.index_of("(34)")}
texts = ["x a y^2 [x,y]^2019 (x b y)^3",
         "b x^3 y [x,y]^100 (x b y)^4",
         "[x, y^5] x^-2"]
words = [parse_word(t, ["x", "y"], coeffs, s4) for t in texts]
system = GeneralizedSystem.of_words(s4, 2, words)

# Row i holds the exponent sums of x and y in equation i.

a = system_matrix(system)
print(a.tolist())
print("Δ1 =", minors_gcd(a, 1), " Δ2 =", minors_gcd(a, 2))
print("Smith diagonal:", smith_normal_form(a).diagonal)

# The bound is GCD of the coefficient centralizer with Δ2/Δ1.

print("|C(a) ∩ C(b)| =", centralizer(s4, coeffs.values()).order)
report = theorem1_verdict(system)
print(report.to_json())

# With fewer equations than unknowns the ratio is 0 and the bound is |G|.

for text in ("x^2 y^3", "[x,y]", "x y x y^-1"):
    rep = theorem1_verdict(GeneralizedSystem.of_words(s4, 2, [parse_word(text, 2)]))
    print(f"{text:12s} count={rep.solution_count:4d} bound={rep.bound}")

# ## Generalized equations
#
# A constraint w ∈ HgH instead of w = 1. Here x^2 must land in the double
# coset <(1234)> · 1 · <(1234)>, which is the subgroup itself.

h = subgroup_generated(s4, [s4.index_of("(1234)")])
eq = GeneralizedEquation(parse_word("x^2", 1), h, 0)
rep = theorem2_verdict(GeneralizedSystem(s4, 1, [eq], subsystem=[]))
print(rep.to_json())

# Counting is vectorized over all |G|^m tuples and can be split across workers.

big = GeneralizedSystem.of_words(s4, 2, [parse_word("x^2 y^3 [x,y]", 2)])
print(count_solutions(big), count_solutions(big, workers=4))
