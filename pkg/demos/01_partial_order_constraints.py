# Partial order constraints: build, negate, evaluate, split by SCC.
from lposat import gt, eq, ge, negate, evaluate, brute_force_sat, domain_graph, scc_partition
from lposat.poc import format_formula

phi1 = gt("f", "g") & (gt("f", "h") | gt("h", "f"))
print(format_formula(phi1))
print(evaluate(phi1, {"f": 3, "g": 1, "h": 2}))  # True

# negation is pushed into the atoms, so constraints stay negation free
phi3 = gt("f", "g") & negate(gt("h", "g") | gt("f", "h"))
print(format_formula(phi3))
print(brute_force_sat(phi3))  # None: f > g >= h >= f is a cycle

phi2 = ge("f", "g") & ge("g", "h") & ge("h", "g")
print(brute_force_sat(phi2))

# two disconnected pieces of the domain graph are solved on their own
phi = (gt("a", "b") | eq("a", "b")) & gt("b", "a") & gt("x", "y") & gt("b", "x")
print(domain_graph(phi).sccs())
for part in scc_partition(phi, drop_trivial=True):
    print(format_formula(part), brute_force_sat(part))
