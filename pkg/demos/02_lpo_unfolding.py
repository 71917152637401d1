# Unfolding l >lpo r into a constraint on the precedence.
import lposat
from lposat import QUASI, STRICT, lpo_gt, parse_term, parse_trs, trs_constraint
from lposat.poc import format_formula

s = parse_term("-(+(A,B))", ["A", "B"])
t = parse_term("*(-(A),-(B))", ["A", "B"])
print(format_formula(lpo_gt(s, t)))

with open(lposat.example_path("idiv.trs")) as fh:
    idiv = parse_trs(fh.read())

for rule in idiv.rules:
    print(rule, "  strict:", format_formula(lpo_gt(rule.lhs, rule.rhs, STRICT)))
    print(" " * len(str(rule)), "  quasi: ", format_formula(lpo_gt(rule.lhs, rule.rhs, QUASI)))

print(lposat.brute_force_sat(trs_constraint(idiv, STRICT)))  # None
print(lposat.brute_force_sat(trs_constraint(idiv, QUASI)))   # div and i share a value
