import warnings

import pytest

from conftest import FIXTURES, PD_FIXTURES, load
from linkforge import fpgroup, repsearch, wirtinger
from linkforge.wirtinger import PresentationError, load_presentation, wirtinger_presentation


@pytest.mark.parametrize("name", PD_FIXTURES)
def test_presentation_shape(name):
    D = load(name)
    P = wirtinger_presentation(D)
    assert len(P.relators) == len(D.crossings)
    assert P.component_count == D.component_count
    for r in P.relators:
        assert wirtinger.conjugation_shape(r)
    assert P.infer_components() == P.component_of_generator


@pytest.mark.parametrize("name", PD_FIXTURES)
def test_longitude_has_zero_exponent_in_own_meridian(name):
    D = load(name)
    P = wirtinger_presentation(D)
    comp = P.component_of_generator
    for c, lam in P.longitude_of_component.items():
        ab = fpgroup.abelianize(lam, comp, D.component_count)
        assert ab[c - 1] == 0


@pytest.mark.parametrize("name", ["trefoil.pd", "figure8.pd", "hopf.pd"])
def test_longitude_commutes_with_meridian_in_representations(name):
    P = wirtinger_presentation(load(name))
    cfg = repsearch.SearchConfig(p=5, max_solutions=40)
    one = repsearch.FpMatrix2.identity(5)
    for sol in repsearch.search(P, cfg):
        images = [None] + list(sol)
        for c, lam in P.longitude_of_component.items():
            L = fpgroup.evaluate(lam, images, one)
            M = images[P.meridian_of_component[c]]
            assert L * M == M * L


def test_zero_surgery_adds_longitudes():
    D = load("borromean.pd")
    P = wirtinger.zero_surgery_presentation(D)
    assert len(P.relators) == len(D.crossings) + 3
    Q = wirtinger.zero_surgery_presentation(D, [2])
    assert len(Q.relators) == len(D.crossings) + 1


def test_fpg_round_trip():
    P = load_presentation((FIXTURES / "fig4.fpg").read_text())
    assert P.generator_count == 24 and len(P.relators) == 27
    Q = load_presentation(P.render())
    assert Q.relators == P.relators and Q.words == P.words
    assert Q.meridian_of_component == P.meridian_of_component


def test_fpg_errors():
    with pytest.raises(PresentationError, match="generators"):
        load_presentation("relator x1\n")
    with pytest.raises(PresentationError, match="line 2"):
        load_presentation("generators 2\nrelator x3\n")
    with pytest.raises(PresentationError, match="line 2"):
        load_presentation("generators 2\nfoo x1\n")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        load_presentation("generators 1\nrelator x1 X1\n")
    assert caught


def test_eliminate_generators_keeps_group():
    P = wirtinger_presentation(load("figure8.pd"))
    Q, old_to_new = wirtinger.eliminate_generators(P)
    assert Q.generator_count < P.generator_count
    one = repsearch.FpMatrix2.identity(5)
    cfg = repsearch.SearchConfig(p=5, max_solutions=20)
    for sol in repsearch.search(Q, cfg):
        images = [None] + list(sol)
        full = [fpgroup.evaluate(old_to_new[g], images, one) for g in range(1, P.generator_count + 1)]
        assert repsearch.verify(P, full)[0]
