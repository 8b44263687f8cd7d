import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from surfcalc import config, lattice as lat
from surfcalc.config import Curve, CurveConfig
from surfcalc.errors import (
    BudgetExceeded,
    InvariantViolation,
    NotContractible,
    NotMinimal,
    NotNegDef,
    NotNegDefSupport,
)

from generators import brute_minimal_cycle, check_zariski, random_ambient, random_contractible


def single(genus, self_int):
    return CurveConfig.build([Curve("G", genus, self_int)])


def two_curve_ambient():
    L = lat.Lattice(((0, 1), (1, -2)), ("E", "G"))
    return config.Ambient(L, (L.unit(0), L.unit(1)), ("E", "G"))


# -- basics --------------------------------------------------------------------


def test_json_round_trip():
    C = config.dynkin_config("D5")
    again = CurveConfig.from_json(C.to_json())
    assert again == C


def test_k_dot_from_adjunction():
    C = CurveConfig.build([Curve("A", 0, -2), Curve("B", 1, -3), Curve("C", 2, 1)])
    assert C.k_dots == (0, 3, 1)


def test_bad_gram_rejected():
    with pytest.raises(ValueError):
        CurveConfig.build([Curve("A"), Curve("A")])
    with pytest.raises(ValueError):
        CurveConfig.build([Curve("A"), Curve("B")], [("A", "B", -1)])


@pytest.mark.parametrize("genus, self_int, mult, p, x", [
    (0, -2, 1, 0, 1),
    (1, -1, 1, 1, 0),
    # 1 + (4 * -2 + 0) / 2
    (0, -2, 2, -3, 4),
])
def test_pa_chi(genus, self_int, mult, p, x):
    C = single(genus, self_int)
    assert config.pa(C, (mult,)) == p
    assert config.chi(C, (mult,)) == x


def test_parity_violation():
    # genus is ignored by the gram, so an impossible K.G can be faked
    C = CurveConfig((Curve("G", 0, -2),), ((-2,),))
    object.__setattr__(C.curves[0], "self_int", -3)
    with pytest.raises(InvariantViolation):
        config.pa(C, (1,))


# -- numerical cycle -------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 11))
def test_a_chain_cycle(n):
    C = config.dynkin_config(f"A{n}")
    z = config.numerical_cycle(C)
    assert z == (1,) * n
    assert C.dot(z, z) == -2


def test_e8_cycle_against_brute_force():
    C = config.dynkin_config("E8")
    z = config.numerical_cycle(C)
    assert z == (2, 3, 4, 6, 5, 4, 3, 2)
    assert brute_minimal_cycle(C, 6) == z


def test_rational_triple_point_star():
    # a -3-curve meeting three chains of -2-curves of lengths 1, 2, 3
    curves = [Curve("X", 0, -3)] + [Curve(f"A{i}") for i in range(6)]
    pairs = [("X", "A0", 1), ("X", "A1", 1), ("A1", "A2", 1), ("X", "A3", 1), ("A3", "A4", 1), ("A4", "A5", 1)]
    C = CurveConfig.build(curves, pairs)
    z = config.numerical_cycle(C)
    assert z == (1,) * 7
    r = config.classify_singularity(C)
    assert r.rational and r.multiplicity == 3 and r.embedding_dimension == 4


def test_numerical_cycle_errors():
    loop = CurveConfig.from_graph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(NotContractible):
        config.numerical_cycle(loop)
    with pytest.raises(ValueError):
        config.numerical_cycle(CurveConfig.from_graph(2, []))


def test_numerical_cycle_order_independent():
    rng = random.Random(11)
    for _ in range(25):
        C = random_contractible(rng, rng.randint(2, 6))
        z = config.numerical_cycle(C)
        for _ in range(20):
            order = list(range(len(C)))
            rng.shuffle(order)
            assert config.numerical_cycle(C, order) == z


def test_numerical_cycle_random_brute_force():
    rng = random.Random(5)
    checked = 0
    for _ in range(40):
        C = random_contractible(rng, rng.randint(1, 6))
        z = config.numerical_cycle(C)
        if max(z) > 8:
            continue
        assert brute_minimal_cycle(C, 8) == z
        checked += 1
    assert checked >= 30


def test_dynkin_cycles_from_brute_force():
    for kind in ["D4", "D5", "D6", "E6", "E7"]:
        C = config.dynkin_config(kind)
        z = config.numerical_cycle(C)
        assert brute_minimal_cycle(C, 4) == z
        assert C.dot(z, z) == -2


# -- ADE ------------------------------------------------------------------------


def test_classify_ade_examples():
    assert config.classify_ADE(config.dynkin_config("A3")) == "A3"
    star = CurveConfig.from_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert config.classify_ADE(star) == "D4"
    loop = CurveConfig.from_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert config.classify_ADE(loop) == "NotNegDef"
    assert config.classify_ADE(single(0, -3)) == "NotMinus2"


def test_classify_ade_disconnected():
    C = CurveConfig.from_graph(5, [(0, 1), (2, 3), (3, 4)])
    assert config.classify_ADE(C) == ["A2", "A3"]


@pytest.mark.parametrize("edges, shape", [
    ([], "A1"),
    ([(0, 1, 2)], None),
    ([(0, 1), (1, 2), (1, 3), (1, 4)], None),
    ([(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (3, 6)], None),
    ([(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8)], None),
])
def test_dynkin_shape_rejects(edges, shape):
    n = 1 + max((max(e[0], e[1]) for e in edges), default=0)
    assert config.dynkin_shape(n, edges) == shape


def test_dynkin_shape_matches_networkx_trees():
    # every tree on up to 9 nodes: shape is ADE exactly for the known list
    for n in range(1, 10):
        for T in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
            shape = config.dynkin_shape(n, list(T.edges()))
            C = CurveConfig.from_graph(n, list(T.edges()))
            assert (shape is not None) == lat.is_negative_definite(C.lattice)


# -- bounded searches ------------------------------------------------------------


def test_max_pa_examples():
    C = config.dynkin_config("D4")
    z = config.numerical_cycle(C)
    best, _ = config.max_pa_bounded(C, [3 * x for x in z])
    assert best == 0
    assert config.max_pa_bounded(single(1, -1), [5]) == (1, (1,))
    assert config.max_pa_bounded(single(0, -3), [4]) == (0, (1,))


def test_max_pa_bound_precondition():
    with pytest.raises(ValueError):
        config.max_pa_bounded(config.dynkin_config("A2"), [1, 0])


def test_max_pa_ellipsoid_equals_exhaustive():
    rng = random.Random(3)
    for _ in range(30):
        C = random_contractible(rng, rng.randint(1, 4))
        bound = [rng.randint(1, 4) for _ in range(len(C))]
        cands = [d for d in itertools.product(*(range(b + 1) for b in bound)) if any(d)]
        best = max(config.pa(C, d) for d in cands)
        arg = min(d for d in cands if config.pa(C, d) == best)
        assert config.max_pa_bounded(C, bound) == (best, arg)


def test_max_pa_indefinite_uses_exhaustive():
    C = CurveConfig.from_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert config.max_pa_bounded(C, [2, 2, 2]) == (1, (1, 1, 1))


def test_max_pa_budget(monkeypatch):
    monkeypatch.setenv("SURFCALC_BUDGET", "10")
    C = CurveConfig.from_graph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(BudgetExceeded):
        config.max_pa_bounded(C, [2, 2, 2])


# -- singularity classification ---------------------------------------------------


def test_cone_over_twisted_cubic():
    r = config.classify_singularity(single(0, -3))
    assert r.kind == "rational" and r.multiplicity == 3 and r.embedding_dimension == 4


def test_simple_elliptic_triple_point():
    r = config.classify_singularity(single(1, -3))
    assert r.kind == "elliptic Gorenstein"
    assert (r.degree, r.multiplicity, r.embedding_dimension) == (3, 3, 3)
    assert r.two_connected


def test_simple_elliptic_double_point():
    r = config.classify_singularity(single(1, -1))
    assert r.elliptic_gorenstein and (r.degree, r.multiplicity, r.embedding_dimension) == (1, 2, 3)


def test_elliptic_with_rational_tail():
    # -3 elliptic curve with a -2 tail: Z = E is not orthogonal to K + Z on the tail
    C = CurveConfig.build([Curve("E", 1, -3), Curve("A")], [("E", "A", 1)])
    r = config.classify_singularity(C)
    assert r.kind == "other" and r.max_pa == 1


def test_minimal_resolution_required():
    for s in (-2, -3):
        C = CurveConfig.build([Curve("E", 1, s), Curve("X", 0, -1)], [("E", "X", 1)])
        with pytest.raises(NotMinimal):
            config.classify_singularity(C)


def test_classify_requires_definite():
    with pytest.raises(NotNegDef):
        config.classify_singularity(single(1, 0))


def test_cusp_cycle_elliptic_gorenstein():
    # a cycle of three rational curves with self-intersections -3, -2, -2
    C = CurveConfig.build(
        [Curve("A", 0, -3), Curve("B"), Curve("C")],
        [("A", "B", 1), ("B", "C", 1), ("A", "C", 1)],
    )
    r = config.classify_singularity(C)
    assert r.kind == "elliptic Gorenstein" and r.degree == 1


def test_rational_verdict_consistency():
    rng = random.Random(17)
    for _ in range(40):
        C = random_contractible(rng, rng.randint(1, 4))
        try:
            r = config.classify_singularity(C, 2)
        except NotMinimal:
            continue
        if r.rational:
            assert config.chi(C, r.z_num) == 1 and r.multiplicity >= 1
            if r.du_val:
                assert (r.multiplicity, r.embedding_dimension) == (2, 3)
        if r.elliptic_gorenstein:
            z = r.z_num
            for i, c in enumerate(C.curves):
                assert c.k_dot + sum(C.gram[i][j] * z[j] for j in range(len(C))) == 0


def test_bound_recorded():
    r = config.classify_singularity(config.dynkin_config("A3"), Fraction(3, 2))
    assert r.search_bound == (2, 2, 2) and r.bound_factor == Fraction(3, 2)


# -- connectedness --------------------------------------------------------------


def test_twice_elliptic_fibre():
    C = single(1, 0)
    assert config.is_k_connected(C, (2,), 0).connected
    r = config.is_k_connected(C, (2,), 1)
    assert not r.connected and r.worst == ((1,), (1,)) and r.min_product == 0


def test_single_curve_vacuous():
    r = config.is_k_connected(single(0, -5), (1,), 100)
    assert r.connected and r.worst is None


def test_connected_budget(monkeypatch):
    monkeypatch.setenv("SURFCALC_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        config.is_k_connected(single(0, -2), (5,), 1)


# -- mobile reduction ------------------------------------------------------------


def test_mobile_reduction_example():
    A = two_curve_ambient()
    r = config.mobile_reduction(A, A.lattice.vector((1, 2)))
    assert r.mobile.coords == (1, 0) and r.fixed.coords == (0, 2)
    assert r.steps == ("G", "G") and not r.monogonal


def test_mobile_reduction_nef_input():
    A = two_curve_ambient()
    D = A.lattice.vector((3, 1))
    r = config.mobile_reduction(A, D)
    assert r.mobile == D and not any(r.fixed.coords)


def test_monogonal_flag():
    A = two_curve_ambient()
    for a in (2, 3, 5):
        r = config.mobile_reduction(A, A.lattice.vector((a, 1)))
        assert r.steps == () and r.monogonal


def test_mobile_rejects_non_minus_two_in_k3_mode():
    L = lat.Lattice(((0, 1), (1, -3)), ("E", "G"))
    A = config.Ambient(L, (L.unit(0), L.unit(1)), ("E", "G"))
    with pytest.raises(InvariantViolation):
        config.mobile_reduction(A, L.vector((0, 1)))
    r = config.mobile_reduction(A, L.vector((0, 1)), k3_mode=False)
    assert r.mobile.coords == (0, 0)


# -- Zariski ---------------------------------------------------------------------


def test_zariski_examples():
    A = two_curve_ambient()
    r = config.zariski_decomposition(A, A.lattice.vector((1, 1)))
    assert r.positive.coords == (1, Fraction(1, 2))
    assert r.negative.coords == (0, Fraction(1, 2))
    assert lat.pair(r.positive, A.curves[0]) == Fraction(1, 2)
    assert lat.pair(r.negative, r.negative) == Fraction(-1, 2)

    nef = config.zariski_decomposition(A, A.lattice.vector((3, 1)))
    assert nef.support == () and not any(nef.negative.coords)

    C = config.dynkin_config("A1")
    A1 = config.Ambient.from_config(C)
    r = config.zariski_decomposition(A1, A1.lattice.vector((1,)))
    assert r.positive.coords == (0,) and r.negative.coords == (1,)


def test_zariski_support_not_definite():
    L = lat.Lattice(((-2, 3), (3, -2)), ("A", "B"))
    A = config.Ambient(L, (L.unit(0), L.unit(1)), ("A", "B"))
    with pytest.raises(NotNegDefSupport):
        config.zariski_decomposition(A, L.vector((-1, -1)))


def test_zariski_not_effective():
    # -E meets G negatively, then the partial positive part meets E negatively
    A = two_curve_ambient()
    with pytest.raises(NotNegDefSupport):
        config.zariski_decomposition(A, A.lattice.vector((-1, 0)))


def test_zariski_random_properties():
    rng = random.Random(23)
    for _ in range(150):
        A, D = random_ambient(rng)
        res = config.zariski_decomposition(A, D)
        check_zariski(A, D, res)
        # scaling D scales both parts
        k = rng.randint(2, 5)
        scaled = config.zariski_decomposition(A, k * D)
        assert scaled.positive == k * res.positive and scaled.negative == k * res.negative


def test_zariski_positive_part_is_maximal():
    # any other N' >= 0 on the curves with D - N' nef has (D - N')^2 <= P^2
    rng = random.Random(29)
    for _ in range(60):
        A, D = random_ambient(rng)
        res = config.zariski_decomposition(A, D)
        P2 = lat.pair(res.positive, res.positive)
        for _ in range(20):
            Nalt = res.negative
            for c in A.curves[1:]:
                Nalt = Nalt + Fraction(rng.randint(-2, 4), rng.randint(1, 3)) * c
            if any(x < 0 for x in Nalt.coords):
                continue
            Palt = lat.QDivisorClass(A.lattice, D.coords) - Nalt
            if A.is_nef(Palt):
                assert lat.pair(Palt, Palt) <= P2
