# Symbol-based vs atom-based encodings of the same constraint.
import numpy as np

from lposat import gt, mk_and, encode_symbol_based, encode_atom_based, decode_solution, tseitin, solve

sizes = []
for n in (4, 8, 16, 32):
    chain = mk_and(gt(f"s{i}", f"s{i + 1}") for i in range(n - 1))
    sym = encode_symbol_based(chain)
    atom = encode_atom_based(chain)
    sym_cnf, atom_cnf = tseitin(sym.formula, sym.pool), tseitin(atom.formula, atom.pool)
    sizes.append((n, sym_cnf.num_vars, sym_cnf.num_clauses, atom_cnf.num_vars, atom_cnf.num_clauses))

sizes = np.array(sizes)
print(" n  sym vars  sym clauses  atom vars  atom clauses")
for row in sizes:
    print("%2d  %8d  %11d  %9d  %12d" % tuple(row))

# the symbol-based columns grow like n log n, the atom-based ones like n^3
print(np.log2(sizes[1:, 1:] / sizes[:-1, 1:]).round(2))

chain = mk_and(gt(f"s{i}", f"s{i + 1}") for i in range(7))
enc = encode_symbol_based(chain)
res = solve(tseitin(enc.formula, enc.pool))
print(decode_solution(res.model, enc.coding, chain))
