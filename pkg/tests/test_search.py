import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from instances import (
    A, B, C, X1, X2, X3, X4, four_var_pgraph, random_dataset, random_score_table, three_var_pgraph,
)
from opebn.core import full_set
from opebn.oracle import best_score_bruteforce, completion_cost_bruteforce
from opebn.pgraph import ParentGraph, build, build_from_scores
from opebn.search import (
    SOLVERS, SearchState, astar, bfs, heuristic, path_extension, run_astar, run_bfs, solve,
)


def state_for(pg, s):
    return SearchState(s, 0.0, heuristic(pg, s))


def test_heuristic_examples():
    pg = three_var_pgraph()
    assert heuristic(pg, 0) == 8.0
    assert heuristic(pg, full_set(3)) == 0.0
    for s in range(8):
        for i in range(3):
            if not (s >> i) & 1:
                assert heuristic(pg, s) - heuristic(pg, s | 1 << i) == pg.best(i).score


def test_path_extension_four_vars():
    pg = four_var_pgraph()
    out = path_extension(pg, state_for(pg, 1 << X3))
    assert out.set == full_set(4)
    assert list(out.ext) == [X2, X4, X1]
    assert out.f == pytest.approx(state_for(pg, 1 << X3).f)
    for s in (1 << X1, 1 << X1 | 1 << X2):
        st_ = state_for(pg, s)
        assert path_extension(pg, st_) is st_
    out = path_extension(pg, state_for(pg, 1 << X1 | 1 << X4))
    assert out.set == full_set(4)


def test_path_extension_order_is_ascending_passes():
    pg = four_var_pgraph()
    out = path_extension(pg, state_for(pg, 1 << X1 | 1 << X4))
    # first pass: X_2 needs X_3 (absent), X_3 needs X_4 (present); second pass adds X_2
    assert list(out.ext) == [X3, X2]


def test_three_variable_instance_all_solvers():
    pg = three_var_pgraph()
    for name in SOLVERS:
        res = solve(pg, name, check=True)
        assert res.network.score == 8.0
        assert list(res.network.ordering) == [C, B, A]
        assert res.network.parents == (1 << B, 1 << C, 0)


def test_single_variable():
    pg = ParentGraph(1, [[(0, 3.5)]])
    net, stats = astar(pg, use_extension=False)
    assert net.score == 3.5 and net.ordering == (0,)
    assert stats.expanded == 2 and stats.generated == 1
    net, stats = bfs(pg)
    assert net.score == 3.5 and stats.expanded == 2


def test_bfs_without_extension_visits_whole_lattice():
    rng = np.random.default_rng(4)
    for n in range(1, 9):
        table = random_score_table(rng, n)
        pg = build_from_scores(n, lambda c, u: table[c][u])
        _, stats = bfs(pg, use_extension=False)
        assert stats.expanded == 2 ** n


def test_bfs_extension_compacts_four_var_lattice():
    pg = four_var_pgraph()
    res = run_bfs(pg, use_extension=True)
    assert (1 << X2 | 1 << X3) not in res.closed
    assert res.network.score == 5.0
    full = run_bfs(pg, use_extension=False)
    assert (1 << X2 | 1 << X3) in full.closed


def test_four_var_astar_ope_path():
    res = run_astar(four_var_pgraph(), use_extension=True, check=True)
    assert list(res.network.ordering) == [X3, X2, X4, X1]
    assert res.network.score == 5.0
    assert res.stats.expanded == 2


def test_solve_rejects_unknown_solver():
    with pytest.raises(ValueError):
        solve(three_var_pgraph(), "dfs")


def small_instances(seed, count, sizes=(3, 4, 5)):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.choice(sizes))
        yield build(random_dataset(rng, n, int(rng.integers(30, 150))))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_all_solvers_agree_with_oracle(seed):
    (pg,) = small_instances(seed, 1, sizes=(2, 3, 4, 5, 6))
    expected, _ = best_score_bruteforce(pg)
    results = {name: solve(pg, name, check=True) for name in SOLVERS}
    for res in results.values():
        assert res.network.score == pytest.approx(expected, rel=1e-9)
        assert res.network.is_consistent()
    assert results["astar-ope"].stats.expanded <= results["astar"].stats.expanded
    assert results["bfs-ope"].stats.expanded <= results["bfs"].stats.expanded


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_synthetic_scores_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    table = random_score_table(rng, n)
    pg = build_from_scores(n, lambda c, u: table[c][u])
    expected, _ = best_score_bruteforce(pg)
    for name in SOLVERS:
        assert solve(pg, name, check=True).network.score == pytest.approx(expected, rel=1e-9)


def test_heuristic_admissible():
    for pg in small_instances(21, 15):
        for u in range(1 << pg.n):
            assert heuristic(pg, u) <= completion_cost_bruteforce(pg, u) + 1e-9


def test_extension_choice_is_optimal():
    """Adding a variable whose optimal parents are inside U first costs no more than any other choice."""
    for pg in small_instances(33, 15):
        n = pg.n
        full = full_set(n)
        for u in range(full):
            rest = [i for i in range(n) if not (u >> i) & 1]

            def via(i):
                return pg.query_d(i, u) + completion_cost_bruteforce(pg, u | 1 << i)

            for i in rest:
                if pg.best(i).set & ~u == 0:
                    assert all(via(i) <= via(j) + 1e-9 for j in rest)


def test_stats_monotone_counters():
    for pg in small_instances(8, 10):
        for name in SOLVERS:
            st_ = solve(pg, name).stats
            assert min(st_.expanded, st_.generated, st_.extended_vars, st_.peak_open, st_.peak_closed) >= 0
            assert st_.peak_closed <= st_.expanded
            if name.endswith("ope"):
                assert st_.extended_vars >= 0
            else:
                assert st_.extended_vars == 0


def test_consistency_check_detects_bad_heuristic():
    from opebn.search import SearchInvariantError, _check_consistent
    v = SearchState(0, 0.0, 10.0)
    _check_consistent(v, 4.0, 6.0)
    with pytest.raises(SearchInvariantError):
        _check_consistent(v, 4.0, 5.0)
