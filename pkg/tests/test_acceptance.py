"""Acceptance checks; each prints one PASS/FAIL line with its tolerance and timing.

Run directly (``python3 tests/test_acceptance.py``) for the summary table or
through pytest, where each criterion is its own test.
"""
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from linkforge import bingtree, diagram, foxcalc, fpgroup, milnor, repsearch, signatures, tangle
from linkforge.diagram import linking_matrix, parse_pd
from linkforge.laurent import LaurentPoly
from linkforge.repsearch import SearchConfig
from linkforge.wirtinger import Presentation, load_presentation

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "linkforge" / "fixtures"


def pd(name):
    return parse_pd((FIXTURES / name).read_text())


def fig4():
    P = load_presentation((FIXTURES / "fig4.fpg").read_text())
    data = json.loads((FIXTURES / "fig4_rep.json").read_text())
    return P, repsearch.matrices_from_json(data["matrices"], data["p"])


def timed(func):
    start = time.perf_counter()
    ok, detail = func()
    return ok, detail, time.perf_counter() - start


def c1_fixture_representation():
    P, sol = fig4()
    ok, bad = repsearch.verify(P, sol)
    img = fpgroup.evaluate(P.words["eta_prime"], [None] + sol, repsearch.FpMatrix2.identity(5))
    good = ok and len(P.relators) == 27 and len(sol) == 24 and img.rows() == [[3, 1], [4, 0]]
    return good, f"27 relators exact, failing={bad}, eta' -> {img.rows()}"


def c2_rediscovery():
    P, sol = fig4()
    found = repsearch.witness_nontrivial(P, P.words["eta_prime"], SearchConfig(p=5))
    if found is None:
        return False, "no representation with nontrivial eta' image"
    rep, img = found
    good = repsearch.verify(P, rep)[0] and not img.is_identity() and repsearch.verify(P, sol)[0]
    return good, f"witness eta' -> {img.rows()}; stored assignment verifies"


def c3_borromean_chain():
    D = pd("borromean.pd")
    t = [LaurentPoly.var(3, i) for i in range(3)]
    u = LaurentPoly.var(1, 0)
    delta = foxcalc.alexander_poly(D)
    nabla = foxcalc.conway_from_alexander(foxcalc.one_variable(delta))
    table = milnor.mu_all_upto(D, 3)
    checks = [
        delta.unit_equal((t[0] - 1) * (t[1] - 1) * (t[2] - 1)),
        foxcalc.one_variable(delta).unit_equal((u - 1) ** 4),
        nabla == [0, 0, 0, 0, 1],
        foxcalc.mu123_squared(nabla) == 1,
        abs(table["123"][0]) == 1 and table["123"][1] == 0,
        linking_matrix(D) == [[0] * 3 for _ in range(3)],
        all(v == (0, 0) for k, v in table.items() if len(k) == 2),
    ]
    return all(checks), f"Delta={delta}, Nabla={foxcalc.format_conway(nabla)}, mu(123)={table['123']}"


def c4_tree_construction():
    good = (bingtree.height_h(7) == 3 and bingtree.height_k(7) == 2
            and bingtree.build_tree(7).leaf_depths() == [4, 4, 4, 4, 3, 3, 1])
    for m in range(2, 21):
        t = bingtree.dagger_tree(m)
        good = good and t.leaf_count() == m - 1 and t.height() == bingtree.height_h(m)
    return good, "h(7)=3, k(7)=2, depths (4,4,4,4,3,3,1); dagger trees ok for m=2..20"


def c5_bing_compilation():
    lk2 = linking_matrix(bingtree.link_for_index("12"))[0][1]
    L3 = bingtree.link_for_index("123")
    mu3 = milnor.milnor_mu(L3, "123")
    table = milnor.mu_all_upto(bingtree.link_for_index("1234"), 4)
    shorter = all(v[0] == 0 for k, v in table.items() if len(k) < 4)
    good = (abs(lk2) == 1 and linking_matrix(L3) == [[0] * 3 for _ in range(3)]
            and abs(mu3[0]) == 1 and mu3[1] == 0
            and abs(table["1234"][0]) == 1 and table["1234"][1] == 0 and shorter)
    return good, f"lk={lk2}, mu(123)={mu3}, mu(1234)={table['1234']}, shorter all zero={shorter}"


def c6_satellite_preservation():
    L = pd("borromean_bing.pd")
    S = tangle.infect(L, [3, 1], pd("trefoil.pd"))
    a, b = milnor.mu_all_upto(L, 3), milnor.mu_all_upto(S, 3)
    return a == b and diagram.is_planar(S), \
        f"{len(L.crossings)} -> {len(S.crossings)} crossings, {len(a)} invariants agree={a == b}"


def c7_nilpotent_quotient():
    x, y = (1,), (2,)
    c = fpgroup.commutator(x, y)
    w = fpgroup.multiply(c, fpgroup.commutator(c, x))
    a = milnor.lcs_nontrivial(w, 3)
    b = milnor.lcs_nontrivial(c, 2)
    return a and not b, f"[x,y][[x,y],x] mod F_3 nontrivial={a}; [x,y] mod F_2 nontrivial={b}"


def c8_arf():
    vals = [foxcalc.arf_invariant(LaurentPoly.const(1, 1)),
            foxcalc.arf_invariant(foxcalc.alexander_poly(pd("trefoil.pd"))),
            foxcalc.arf_invariant(foxcalc.alexander_poly(pd("stevedore.pd")))]
    return vals == [0, 1, 0], f"unknot, trefoil, stevedore -> {vals}"


def c9_rho_integral():
    V = [[-1, 1], [0, -1]]
    r1 = signatures.rho_knot(V)
    r2 = signatures.rho_knot(signatures.block_sum(V, V))
    e1, e2 = abs(abs(r1) - 4 / 3), abs(abs(r2) - 8 / 3)
    return e1 < 1e-6 and e2 < 2e-6, f"rho={r1:.12f} err={e1:.1e} (tol 1e-6); doubled err={e2:.1e} (tol 2e-6)"


def c10_nj_rule():
    rng = random.Random(2024)
    good = True
    for _ in range(100):
        R = Fraction(rng.randint(1, 10 ** 6), 10 ** 4)
        N = signatures.choose_Nj(R, 5)
        for j in range(5):
            good = good and N[j] > Fraction(3, 4) * R + max(N[:j], default=0)
            good = good and all(Fraction(4, 3) * (N[j] - N[k]) > R for k in range(j))
            good = good and (j == 0 or N[j] > N[j - 1])
    return good, "100 random R in (0,100], exact rational checks"


def _random_word(rng, n, length):
    return tuple(rng.choice([1, -1]) * rng.randint(1, n) for _ in range(length))


def c11_property_suites():
    rng = random.Random(7)
    fox = 0
    for _ in range(1000):
        n = rng.randint(1, 4)
        nv = rng.randint(1, n)
        comp = {g: rng.randrange(nv) for g in range(1, n + 1)}
        fox += foxcalc.fundamental_identity_holds(_random_word(rng, n, rng.randint(0, 12)), comp, nv, n)
    magnus = 0
    for _ in range(500):
        m, q = rng.randint(1, 3), rng.randint(1, 6)
        u, v = _random_word(rng, m, rng.randint(0, 6)), _random_word(rng, m, rng.randint(0, 6))
        eu = milnor.magnus_expand(u, q, m)
        magnus += (milnor.magnus_expand(fpgroup.multiply(u, v), q, m) == eu * milnor.magnus_expand(v, q, m)
                   and (eu * milnor.magnus_expand(fpgroup.inverse(u), q, m)).is_one())
    alex = 0
    names = sorted(p.name for p in FIXTURES.glob("*.pd"))
    for name in names:
        D = pd(name)
        ref = foxcalc.alexander_poly(D)
        alex += (ref.inverted().unit_equal(ref)
                 and all(foxcalc.alexander_poly(D, c).unit_equal(ref)
                         for c in range(2, D.component_count + 1)))
    oracle = 0
    for k in range(60):
        p = 2 + k % 2
        n = rng.randint(1, 3)
        rels = [w for w in (fpgroup.free_reduce(_random_word(rng, n, rng.randint(1, 6)))
                            for _ in range(rng.randint(0, 3))) if w]
        P = Presentation(n, rels)
        ours = list(repsearch.search(P, SearchConfig(p=p)))
        same = sorted(tuple(m.key() for m in s) for s in ours) == \
            sorted(tuple(m.key() for m in s) for s in repsearch.brute_force(P, p))
        oracle += same and all(repsearch.verify(P, s)[0] for s in ours)
    good = fox == 1000 and magnus == 500 and alex == len(names) and oracle == 60
    return good, (f"Fox {fox}/1000, Magnus {magnus}/500, Alexander {alex}/{len(names)} fixtures, "
                  f"repsearch oracle {oracle}/60")


CRITERIA = [
    (1, "fixture representation", c1_fixture_representation, 0.1),
    (2, "representation rediscovery", c2_rediscovery, 300.0),
    (3, "Borromean invariant chain", c3_borromean_chain, 1.0),
    (4, "tree construction", c4_tree_construction, None),
    (5, "Bing compilation", c5_bing_compilation, 30.0),
    (6, "satellite mu-bar preservation", c6_satellite_preservation, 60.0),
    (7, "nilpotent quotient", c7_nilpotent_quotient, None),
    (8, "Arf via Delta(-1) mod 8", c8_arf, None),
    (9, "rho integral", c9_rho_integral, 1.0),
    (10, "N_j rule", c10_nj_rule, None),
    (11, "property suites", c11_property_suites, None),
]


def evaluate(number):
    _, title, func, budget = CRITERIA[number - 1]
    ok, detail, elapsed = timed(func)
    in_time = budget is None or elapsed < budget
    limit = f" (limit {budget:g}s)" if budget is not None else ""
    status = "PASS" if ok and in_time else "FAIL"
    line = f"{status} {number:2d} {title}: {detail}; {elapsed:.3f}s{limit}"
    return ok and in_time, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n, *_ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
