# End to end: a .trs file in, a verdict and a precedence out.
import lposat
from lposat import ProveOptions, prove

nnf = lposat.example_path("negation.trs")
idiv = lposat.example_path("idiv.trs")

report = prove(nnf, ProveOptions(scc=True))
print(report.to_text(print_model=True, stats=True))
print()

print(prove(idiv).to_text())
print()
print(prove(idiv, ProveOptions(order="quasi", encoding="atom")).to_text(print_model=True))

# same thing from a shell:
#   lposat prove negation.trs --print-model --stats
#   lposat prove idiv.trs --order quasi --format json
#   lposat batch some/dir --jobs 4
