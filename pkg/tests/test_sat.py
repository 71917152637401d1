import itertools
import random
import stat
import sys
import textwrap

import pytest
from hypothesis import given, settings, strategies as st

from generators import random_prop
from lposat.prop import PFALSE, PTRUE, VarPool, conj, disj, iff, neg, prop_eval, prop_nodes, var, PAnd, POr, PIff
from lposat.sat import (
    CnfInstance,
    MalformedOutputError,
    ResourceLimitExceeded,
    read_dimacs,
    read_external_result,
    run_external,
    solve,
    tseitin,
    write_dimacs,
)
from lposat.sat.solver import _luby


def truth_table_sat(p, n):
    return any(
        prop_eval(p, dict(zip(range(1, n + 1), bits)))
        for bits in itertools.product([False, True], repeat=n)
    )


def brute_cnf_sat(cnf):
    return any(
        cnf.satisfied_by(dict(zip(range(1, cnf.num_vars + 1), bits)))
        for bits in itertools.product([False, True], repeat=cnf.num_vars)
    )


class TestProp:
    def test_folding(self):
        assert conj([var(1), PTRUE]) is var(1)
        assert disj([var(1), neg(var(1))]) is PTRUE
        assert conj([var(1), neg(var(1))]) is PFALSE
        assert neg(neg(var(3))) is var(3)

    def test_iff_simplifies(self):
        assert iff(var(1), PTRUE) is var(1)
        assert iff(var(1), PFALSE) is neg(var(1))
        assert iff(var(2), var(2)) is PTRUE

    def test_pool(self):
        pool = VarPool()
        assert pool.fresh("a") == 1 and pool.fresh("b") == 2
        assert pool.top == 2 and len(pool) == 2 and pool.labels[2] == "b"


class TestTseitin:
    def test_conjunction_clauses(self):
        cnf = tseitin(conj([var(1), var(2)]))
        assert cnf.num_vars == 3
        assert cnf.clauses == [(-3, 1), (-3, 2), (3, -1, -2), (3,)]
        assert cnf.provenance[3] == "tseitin.and"

    def test_constants(self):
        assert tseitin(PTRUE).clauses == []
        assert tseitin(PFALSE).clauses == [()]
        assert not solve(tseitin(PFALSE))

    def test_literal_root(self):
        assert tseitin(neg(var(2))).clauses == [(-2,)]

    def test_one_aux_per_shared_node(self):
        shared = disj([var(1), iff(var(2), var(3))])
        p = conj([disj([shared, var(4)]), iff(neg(shared), var(5))])
        gates = [n for n in prop_nodes(p) if isinstance(n, (PAnd, POr, PIff))]
        assert len(gates) == 5
        assert tseitin(p).num_vars == 5 + len(gates)

    def test_auxiliaries_after_pool(self):
        pool = VarPool()
        for i in range(10):
            pool.fresh(f"x{i}")
        cnf = tseitin(conj([var(1), var(2)]), pool)
        assert cnf.num_vars == 11 and cnf.provenance[1] == "x0"

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=100)
    def test_polarity_equisatisfiable(self, seed):
        p, n = random_prop(random.Random(seed), max_vars=8)
        full, pg = tseitin(p), tseitin(p, polarity=True)
        assert pg.num_clauses <= full.num_clauses
        expected = truth_table_sat(p, n)
        assert bool(solve(pg)) == expected == bool(solve(full))

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=200)
    def test_equisatisfiable(self, seed):
        p, n = random_prop(random.Random(seed))
        res = solve(tseitin(p))
        assert bool(res) == truth_table_sat(p, n)
        if res:
            assert prop_eval(p, {v: res.model.get(v, False) for v in range(1, n + 1)})


class TestSolver:
    def test_unit(self):
        res = solve(CnfInstance(1, [(1,)]))
        assert res and res.model == {1: True}

    def test_contradiction(self):
        assert not solve(CnfInstance(1, [(1,), (-1,)]))

    def test_empty(self):
        assert solve(CnfInstance(0, [])).model == {}

    def test_literal_range(self):
        with pytest.raises(ValueError):
            CnfInstance(1, [(2,)])

    def test_luby(self):
        assert [_luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]

    def test_pigeonhole_unsat(self):
        holes, pigeons = 5, 6
        v = lambda p, h: p * holes + h + 1
        clauses = [tuple(v(p, h) for h in range(holes)) for p in range(pigeons)]
        for h in range(holes):
            for p, q in itertools.combinations(range(pigeons), 2):
                clauses.append((-v(p, h), -v(q, h)))
        assert not solve(CnfInstance(pigeons * holes, clauses))

    def test_conflict_limit(self):
        holes, pigeons = 7, 8
        v = lambda p, h: p * holes + h + 1
        clauses = [tuple(v(p, h) for h in range(holes)) for p in range(pigeons)]
        for h in range(holes):
            for p, q in itertools.combinations(range(pigeons), 2):
                clauses.append((-v(p, h), -v(q, h)))
        with pytest.raises(ResourceLimitExceeded):
            solve(CnfInstance(pigeons * holes, clauses), conflict_limit=10)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=300)
    def test_random_cnf_against_brute_force(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 10)
        clauses = [
            tuple(rng.choice([-1, 1]) * rng.randint(1, n) for _ in range(rng.randint(1, 3)))
            for _ in range(rng.randint(1, 45))
        ]
        cnf = CnfInstance(n, clauses)
        res = solve(cnf, seed=seed % 7)
        assert bool(res) == brute_cnf_sat(cnf)
        if res:
            assert cnf.satisfied_by(res.model)


class TestDimacs:
    def test_write(self):
        assert write_dimacs(CnfInstance(2, [(1, -2)])) == "p cnf 2 1\n1 -2 0\n"

    def test_provenance_comments(self):
        text = write_dimacs(CnfInstance(2, [(1, -2)], {1: "f.bit1"}))
        assert text.startswith("c var 1 f.bit1\n")

    def test_roundtrip(self):
        pool = VarPool()
        pool.fresh("[f>g]")
        pool.fresh("g.bit1")
        cnf = tseitin(disj([var(1), conj([var(2), neg(var(1))])]), pool)
        back = read_dimacs(write_dimacs(cnf))
        assert back == cnf

    def test_bad_count(self):
        with pytest.raises(ValueError):
            read_dimacs("p cnf 2 2\n1 0\n")


class TestExternalOutput:
    def test_competition_unsat(self):
        assert not read_external_result("s UNSATISFIABLE")

    def test_competition_sat(self):
        res = read_external_result("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 4)
        assert res.model == {1: True, 2: False, 3: True, 4: False}

    def test_minisat_style(self):
        res = read_external_result("SAT\n1 -2 0")
        assert res and res.model == {1: True, 2: False}
        assert not read_external_result("UNSAT\n")

    def test_unknown(self):
        with pytest.raises(ResourceLimitExceeded):
            read_external_result("s UNKNOWN")

    @pytest.mark.parametrize("text", ["", "banana", "s MAYBE", "SAT\n1 x 0"])
    def test_malformed(self, text):
        with pytest.raises(MalformedOutputError):
            read_external_result(text)


@pytest.fixture
def fake_solver(tmp_path):
    """A tiny external solver built on the embedded one."""
    script = tmp_path / "fake_solver.py"
    script.write_text(textwrap.dedent("""
        import sys
        from lposat.sat import read_dimacs, solve
        args = sys.argv[1:]
        cnf = read_dimacs(open(args[0]).read())
        res = solve(cnf)
        if res:
            body = "SAT\\n" + " ".join(str(v if b else -v) for v, b in res.model.items()) + " 0\\n"
        else:
            body = "UNSAT\\n"
        if len(args) > 1:
            open(args[1], "w").write(body)
        else:
            sys.stdout.write(body)
    """))
    script.chmod(script.stat().st_mode | stat.S_IEXEC)
    return f"{sys.executable} {script}"


class TestRunExternal:
    def test_stdout(self, fake_solver):
        cnf = CnfInstance(2, [(1, 2), (-1,)])
        res = run_external(cnf, fake_solver)
        assert res and res.model == {1: False, 2: True}

    def test_output_file(self, fake_solver):
        cnf = CnfInstance(1, [(1,), (-1,)])
        assert not run_external(cnf, fake_solver + " {input} {output}")

    def test_lying_solver(self, tmp_path):
        script = tmp_path / "liar.py"
        script.write_text("print('s SATISFIABLE')\nprint('v -1 0')\n")
        with pytest.raises(MalformedOutputError):
            run_external(CnfInstance(1, [(1,)]), f"{sys.executable} {script}")

    def test_timeout(self, tmp_path):
        script = tmp_path / "slow.py"
        script.write_text("import time\ntime.sleep(10)\n")
        with pytest.raises(ResourceLimitExceeded):
            run_external(CnfInstance(1, [(1,)]), f"{sys.executable} {script}", timeout=0.5)
