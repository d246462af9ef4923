import random

import pytest

from conftest import PD_FIXTURES, load
from linkforge import foxcalc
from linkforge.diagram import connected_sum
from linkforge.laurent import LaurentPoly
from linkforge.wirtinger import wirtinger_presentation


def random_word(rng, ngens, length):
    return tuple(rng.choice([1, -1]) * rng.randint(1, ngens) for _ in range(length))


def test_fundamental_identity_random_words():
    rng = random.Random(11)
    for _ in range(1000):
        ngens = rng.randint(1, 4)
        nvars = rng.randint(1, ngens)
        comp = {g: rng.randrange(nvars) for g in range(1, ngens + 1)}
        w = random_word(rng, ngens, rng.randint(0, 12))
        assert foxcalc.fundamental_identity_holds(w, comp, nvars, ngens)


def test_fox_derivative_of_commutator():
    t = LaurentPoly.var(2, 0)
    s = LaurentPoly.var(2, 1)
    # d[x1, x2]/dx1 = 1 - x1 x2 x1^-1 -> 1 - t2
    d = foxcalc.fox_derivative((1, 2, -1, -2), 1, {1: 0, 2: 1}, 2)
    assert d == 1 - s
    assert foxcalc.fox_derivative((1, 1), 1, {1: 0}, 1) == 1 + LaurentPoly.var(1, 0)
    assert t != s


@pytest.mark.parametrize("name,coeffs", [
    ("trefoil.pd", [1, -1, 1]),
    ("figure8.pd", [1, -3, 1]),
    ("stevedore.pd", [2, -5, 2]),
])
def test_knot_polynomials(name, coeffs):
    assert foxcalc.alexander_poly(load(name)).unit_equal(LaurentPoly.from_coeffs(coeffs))


def test_hopf_and_borromean():
    assert foxcalc.alexander_poly(load("hopf.pd")) == 1
    t = [LaurentPoly.var(3, i) for i in range(3)]
    delta = foxcalc.alexander_poly(load("borromean.pd"))
    assert delta.unit_equal((t[0] - 1) * (t[1] - 1) * (t[2] - 1))
    u = LaurentPoly.var(1, 0)
    assert foxcalc.one_variable(delta).unit_equal((u - 1) ** 4)
    assert foxcalc.conway_from_alexander(foxcalc.knot_alexander(load("borromean.pd"))) == [0, 0, 0, 0, 1]


@pytest.mark.parametrize("name", PD_FIXTURES)
def test_alexander_symmetry(name):
    D = load(name)
    delta = foxcalc.alexander_poly(D)
    # Delta(t^-1) agrees with Delta(t) up to a unit
    assert delta.inverted().unit_equal(delta)


@pytest.mark.parametrize("name", PD_FIXTURES)
def test_alexander_column_independence(name):
    D = load(name)
    ref = foxcalc.alexander_poly(D, 1)
    for c in range(2, D.component_count + 1):
        assert foxcalc.alexander_poly(D, c).unit_equal(ref)


def test_alexander_from_presentation_matches_diagram():
    D = load("figure8.pd")
    assert foxcalc.alexander_poly(wirtinger_presentation(D)) == foxcalc.alexander_poly(D)


def test_connected_sum_multiplies():
    K = load("trefoil.pd")
    delta = foxcalc.alexander_poly(connected_sum(K, 1, K, 1))
    assert delta.unit_equal(LaurentPoly.from_coeffs([1, -1, 1]) ** 2)


def test_conway_and_format():
    nabla = foxcalc.conway_from_alexander(LaurentPoly.from_coeffs([1, -1, 1]))
    assert nabla == [1, 0, 1]
    assert foxcalc.format_conway(nabla) == "z^2 + 1"
    assert foxcalc.conway_from_alexander(LaurentPoly.from_coeffs([1, -3, 1])) == [1, 0, -1]
    with pytest.raises(foxcalc.FoxError):
        foxcalc.conway_from_alexander(LaurentPoly.from_coeffs([1, 2]))
    # Hopf link: Delta_1 = t - 1 up to units, Nabla = lk * z
    assert foxcalc.conway_from_alexander(LaurentPoly.from_coeffs([-1, 1]), -1) == [0, -1]


def test_arf_values():
    assert foxcalc.arf_invariant(LaurentPoly.const(1, 1)) == 0
    assert foxcalc.arf_invariant(foxcalc.alexander_poly(load("trefoil.pd"))) == 1
    assert foxcalc.arf_invariant(foxcalc.alexander_poly(load("figure8.pd"))) == 1
    assert foxcalc.arf_invariant(foxcalc.alexander_poly(load("stevedore.pd"))) == 0


def test_torres_on_links():
    from linkforge.diagram import linking_matrix, sublink
    for name in ["hopf.pd", "borromean.pd", "borromean_bing.pd"]:
        D = load(name)
        m = D.component_count
        delta = foxcalc.alexander_poly(D)
        sub = foxcalc.alexander_poly(sublink(D, list(range(2, m + 1))))
        assert foxcalc.torres_check(delta, sub, linking_matrix(D)[0][1:])
