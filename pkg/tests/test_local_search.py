from __future__ import annotations

import pytest

from spex.errors import ParameterError
from spex.extremal import compute_extremal, local_search
from spex.subgraphs import ForbiddenFamily, is_family_free


def test_trace_shape_and_determinism():
    fam = ForbiddenFamily((6,))
    a = local_search(10, fam, seed=42, max_iters=400)
    b = local_search(10, fam, seed=42, max_iters=400)
    assert a.best_lambda_per_step == b.best_lambda_per_step
    assert a.final_graph == b.final_graph
    assert a.iterations == 400 and a.seed == 42
    assert len(a.best_lambda_per_step) == 400
    assert a.accepted_moves >= 1


def test_best_curve_nondecreasing_and_final_free():
    fam = ForbiddenFamily((5, 6))
    tr = local_search(12, fam, seed=3, max_iters=600)
    curve = tr.best_lambda_per_step
    assert all(x <= y for x, y in zip(curve, curve[1:]))
    assert is_family_free(tr.final_graph, fam)[0]
    assert tr.final_graph.n == 12


def test_matches_exhaustive_optimum_at_n4():
    fam = ForbiddenFamily((3,))
    target = compute_extremal(4, fam, "lambda").best_value
    tr = local_search(4, fam, seed=11, max_iters=800)
    assert tr.best_lambda_per_step[-1] == pytest.approx(target, abs=1e-9)


def test_different_seeds_explore_differently():
    fam = ForbiddenFamily((6,))
    a = local_search(10, fam, seed=1, max_iters=150)
    b = local_search(10, fam, seed=2, max_iters=150)
    assert a.best_lambda_per_step != b.best_lambda_per_step or a.final_graph != b.final_graph


def test_parameter_validation():
    fam = ForbiddenFamily((6,))
    with pytest.raises(ParameterError):
        local_search(3, fam, seed=0, max_iters=10)
    with pytest.raises(ParameterError):
        local_search(10, fam, seed=0, max_iters=0)
