import pytest

from sandpile_trees.sylow import (conjectured_sylow_rank, predicted_sylow_rank, t_p,
                                  t_p_closed_form)
from sandpile_trees.theorems import TreeGroup


@pytest.mark.parametrize("d,p,t", [(3, 5, 4), (3, 7, 3), (3, 3, 2), (4, 7, 6), (4, 5, 4), (5, 3, 3)])
def test_t_p(d, p, t):
    assert t_p(d, p) == t


@pytest.mark.parametrize("d", [3, 4, 5, 6, 7])
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_t_p_closed_form_agrees(d, p):
    if (d - 1) % p == 0:
        with pytest.raises(ValueError):
            t_p(d, p)
        return
    assert t_p(d, p) == t_p_closed_form(d, p)


def test_t_p_rejects_composite():
    with pytest.raises(ValueError):
        t_p(3, 9)


@pytest.mark.parametrize("d,p", [(3, 3), (3, 2), (4, 2), (4, 3)])
def test_prediction_rejects_primes_of_d_d_minus_1(d, p):
    with pytest.raises(ValueError):
        predicted_sylow_rank(d, 2, p)


def test_predictions_d3():
    assert [predicted_sylow_rank(3, h, 7)[3] for h in range(1, 6)] == [0, 2, 3, 6, 14]
    assert [predicted_sylow_rank(3, h, 5)[3] for h in range(1, 6)] == [0, 0, 2, 3, 6]
    assert predicted_sylow_rank(3, 2, 7)[2] == "boundary"
    assert predicted_sylow_rank(3, 3, 7)[2] == "interior"


@pytest.mark.parametrize("d,h", [(3, 1), (3, 2), (3, 3), (3, 4), (4, 1), (4, 2)])
@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_conjecture_small(d, h, p):
    if (d * (d - 1)) % p == 0:
        pytest.skip("excluded prime")
    pred = conjectured_sylow_rank(d, h, p, TreeGroup(d, h).invariants)
    assert pred.match, pred
