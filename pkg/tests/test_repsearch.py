import random

import pytest

from conftest import FIXTURES, load
from linkforge import fpgroup, repsearch
from linkforge.repsearch import FpMatrix2, SearchConfig
from linkforge.wirtinger import Presentation, load_presentation, wirtinger_presentation


def keys(sols):
    return sorted(tuple(m.key() for m in s) for s in sols)


def random_presentation(rng):
    n = rng.randint(1, 3)
    rels = []
    for _ in range(rng.randint(0, 3)):
        w = fpgroup.free_reduce([rng.choice([1, -1]) * rng.randint(1, n)
                                 for _ in range(rng.randint(1, 6))])
        if w:
            rels.append(w)
    return Presentation(n, rels)


def test_sl2_orders():
    assert len(repsearch.enumerate_sl2(2)) == 6
    assert len(repsearch.enumerate_sl2(3)) == 24
    assert len(repsearch.enumerate_sl2(5)) == 120


def test_matrix_arithmetic():
    with pytest.raises(repsearch.SearchError):
        FpMatrix2.from_rows([[1, 2], [3, 0]], 5)
    b = FpMatrix2.from_rows([[2, 1], [1, 1]], 5)
    assert (b * b.inverse()).is_identity()


def test_rejects_non_prime():
    P = Presentation(1, [(1, 1)])
    with pytest.raises(repsearch.SearchError):
        repsearch.count_solutions(P, SearchConfig(p=4))


@pytest.mark.parametrize("p", [2, 3])
def test_matches_brute_force_on_random_presentations(p):
    rng = random.Random(p)
    for _ in range(40):
        P = random_presentation(rng)
        ours = keys(repsearch.search(P, SearchConfig(p=p)))
        assert ours == keys(repsearch.brute_force(P, p))


def test_solutions_are_sound_and_conjugation_closed():
    P = wirtinger_presentation(load("trefoil.pd"))
    sols = list(repsearch.search(P, SearchConfig(p=5)))
    seen = set(keys(sols))
    h = FpMatrix2.from_rows([[1, 1], [0, 1]], 5)
    for s in sols:
        assert repsearch.verify(P, s)[0]
        conj = tuple((h * m * h.inverse()).key() for m in s)
        assert conj in seen


def test_worker_count_does_not_change_output():
    P = wirtinger_presentation(load("figure8.pd"))
    a = keys(repsearch.search(P, SearchConfig(p=5)))
    b = keys(repsearch.search(P, SearchConfig(p=5, worker_count=3)))
    assert a == b


def test_propagate_fills_determined_generators():
    P = wirtinger_presentation(load("trefoil.pd"))
    sol = next(iter(repsearch.search(P, SearchConfig(p=5))))
    full = repsearch.propagate(P, {1: sol[0], 2: sol[1]}, 5)
    assert full is not None and len(full) == P.generator_count
    assert repsearch.verify(P, [full[g] for g in sorted(full)])[0]


def test_propagate_detects_contradiction():
    P = Presentation(2, [(1, -2)])
    one = FpMatrix2.identity(3)
    other = FpMatrix2.from_rows([[1, 1], [0, 1]], 3)
    assert repsearch.propagate(P, {1: one, 2: other}, 3) is None


def test_witness_on_figure_presentation():
    P = load_presentation((FIXTURES / "fig4.fpg").read_text())
    found = repsearch.witness_nontrivial(P, P.words["eta_prime"], SearchConfig(p=5))
    assert found is not None
    sol, img = found
    assert repsearch.verify(P, sol)[0]
    assert not img.is_identity()


def test_witness_none_for_abelian_commutator():
    P = wirtinger_presentation(load("hopf.pd"))
    assert repsearch.witness_nontrivial(P, (1, 2, -1, -2), SearchConfig(p=3)) is None


def test_json_round_trip():
    sol = [FpMatrix2.from_rows([[1, 1], [0, 1]], 5), FpMatrix2.identity(5)]
    data = repsearch.matrices_to_json(sol)
    assert repsearch.matrices_from_json(data, 5) == sol


def test_verify_reports_bad_relators():
    P = Presentation(1, [(1,), (1, 1)])
    ok, bad = repsearch.verify(P, [FpMatrix2.from_rows([[4, 0], [0, 4]], 5)])
    assert not ok and bad == [0]
