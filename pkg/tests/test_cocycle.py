import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import diagrams
from skeincross import catalog
from skeincross import diagram as dg
from skeincross.bracket import kauffman_bracket, singular_bracket_eval
from skeincross.cocycle import (
    EPSILON,
    IndMismatch,
    NotALoop,
    clasp_tangle,
    cross_of_loop,
    cross_of_path,
    generic_cross,
    meridian_suite,
    oracle_quotient,
    scenario_a,
    scenario_d,
    tangency_loop,
    theta_arcs,
    unknotting_invariant,
)
from skeincross.homotopy import CrossingChange, Path, invert_path, is_loop, random_path, validate_path
from skeincross.poly import DELTA, LaurentPoly, eval_bc, parse, parse_skein

ONE = LaurentPoly.constant(1)


def _single(name, c):
    return Path(catalog.get(name).diagram, (CrossingChange(c),))


# [PAPER] worked example values


@pytest.mark.parametrize(
    "name, crossings, value",
    [
        ("3_1", (0, 1, 2), "A^-6 + A^-4 + A^4"),
        ("3_1!", (6, 7, 8), "-A^14 - A^22 - A^24"),
    ],
)
def test_trefoil_examples(name, crossings, value):
    for c in crossings:
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            rep = cross_of_path(_single(name, c))
        assert rep.value == parse(value)
        assert rep.framing_ok


def test_catalog_expected_values_are_reproduced():
    # every stored value is recomputed
    seen = 0
    for name in catalog.names():
        e = catalog.get(name)
        for u in e.unknotting:
            if u.expected_cross is None:
                continue
            assert unknotting_invariant(e.diagram, u.crossing, u.ind) == u.expected_cross
            seen += 1
    assert seen >= 6


def test_trefoil_scenario_value():
    rep = cross_of_path(catalog.scenario("trefoil_unknotting"))
    assert [w.ind for w, _ in rep.contributions] == [-1]
    assert rep.value == parse("A^-6 + A^-4 + A^4")


# [DERIVED] difference quotient relation


@settings(max_examples=30)
@given(diagrams(max_crossings=8))
def test_singular_value_is_difference_quotient(d):
    for c in d.crossing_ids()[:3]:
        s = dg.make_singular(d, c)
        assert singular_bracket_eval(s) == EPSILON * oracle_quotient(d, c)


def test_oracle_quotient_from_brute_force(trefoil):
    # independent brackets give the same quotient
    s = dg.make_singular(trefoil, 0)
    plus = oracle.kauffman_bracket(dg.resolve(s, 0, 1))
    minus = oracle.kauffman_bracket(dg.resolve(s, 0, -1))
    diff = oracle.padd(plus, {k: -v for k, v in minus.items()})
    q = oracle_quotient(trefoil, 0)
    assert oracle.as_dict(q * parse("A - A^-1")) == diff


def test_crossing_change_value_closed_form(fig8):
    # [DERIVED: with C = -B the double point weighs <D+> - <D-> over A - A^-1]
    for c in fig8.crossing_ids():
        rep = cross_of_path(Path(fig8, (CrossingChange(c),)), certify=False)
        after = dg.change_crossing(fig8, c)
        sign = fig8.vertices[c].sign
        plus, minus = (fig8, after) if sign > 0 else (after, fig8)
        q = oracle_quotient(fig8, c)
        assert q * (parse("A - A^-1")) == kauffman_bracket(plus) - kauffman_bracket(minus)
        assert rep.value == (q if sign < 0 else -q)


# additivity and orientation


@settings(max_examples=20)
@given(st.integers(0, 2**31))
def test_cross_is_additive_and_odd(seed):
    rng = random.Random(seed)
    start = catalog.get(rng.choice(["3_1", "4_1", "unknot"])).diagram
    p = random_path(start, rng, 6)
    end = validate_path(p).final
    q = random_path(end, rng, 6)
    a = cross_of_path(p, certify=False).value
    b = cross_of_path(q, certify=False).value
    assert cross_of_path(p.then(q), certify=False).value == a + b
    assert cross_of_path(invert_path(p), certify=False).value == -a


@settings(max_examples=15)
@given(st.integers(0, 2**31))
def test_generic_cross_specialises(seed):
    rng = random.Random(seed)
    start = catalog.get(rng.choice(["3_1", "4_1"])).diagram
    p = random_path(start, rng, 5)
    g = generic_cross(p)
    assert eval_bc(g, ONE, -ONE) == cross_of_path(p, certify=False).value


# errors and warnings


def test_ind_mismatch(trefoil):
    with pytest.raises(IndMismatch):
        unknotting_invariant(trefoil, 0, 1)
    with pytest.raises(ValueError):
        unknotting_invariant(trefoil, 0, 0)
    with pytest.raises(dg.NotACrossing):
        unknotting_invariant(dg.make_singular(trefoil, 0), 0, -1)


def test_non_unknotting_change_warns():
    d = catalog.get("4_1#6_3").diagram
    with pytest.warns(UserWarning, match="trivial Jones"):
        unknotting_invariant(d, 0, 1)


def test_uncertified_wall_warns():
    k = dg.add_kink(dg.UNKNOT, 0, 1, 1)
    with pytest.warns(UserWarning, match="not certified"):
        rep = cross_of_path(Path(k, (CrossingChange(0),)))
    assert rep.warnings and rep.certificates[0].status == "inconclusive"


def test_not_a_loop(trefoil):
    with pytest.raises(NotALoop):
        cross_of_loop(catalog.scenario("trefoil_unknotting"))


def test_report_json(trefoil):
    rep = cross_of_path(catalog.scenario("trefoil_unknotting"))
    obj = rep.to_json()
    assert obj["value"] == "A^-6 + A^-4 + A^4"
    assert obj["ind_sum"] == -1
    assert obj["contributions"][0]["ind"] == -1
    assert dg.diagram_from_json(obj["contributions"][0]["singular"]).n_double == 1


# loops


def test_back_and_forth_loop_is_zero(trefoil):
    rep = cross_of_loop(Path(trefoil, (CrossingChange(1), CrossingChange(1))))
    assert rep.value.is_zero() and rep.ind_sum == 0


def test_tangency_loop_is_zero():
    for d in (dg.UNKNOT, catalog.get("3_1").diagram):
        loop = tangency_loop(d, 0)
        assert is_loop(loop)
        assert generic_cross(loop).is_zero()


def test_theta_loops_vanish(trefoil):
    m1, m2, m3 = theta_arcs(dg.change_crossing(trefoil, 0))
    for other in (m2, m3):
        loop = m1.then(invert_path(other))
        assert cross_of_loop(loop, certify=False).value.is_zero()


def test_loop_41_63_value():
    # [DERIVED] every wall pairs off along the loop, so the sum telescopes
    rep = cross_of_loop(catalog.scenario("loop_41_63"), certify=False)
    assert [w.ind for w, _ in rep.contributions] == [1, -1, -1, 1]
    assert rep.value.is_zero()


def test_fig3_demo_value():
    # [DERIVED] two positive walls ending at an unknot with w=2
    rep = cross_of_path(catalog.scenario("fig3_demo"), certify=False)
    assert rep.ind_sum == 2
    assert rep.value == parse("A^-5 + A^-3 + A^-1 + A + A^3 + A^5")


# meridian suite


def test_meridian_suite_passes_at_c_minus_b():
    rep = meridian_suite(-1)
    assert rep.passed, rep.to_json()
    assert rep.to_json()["C"] == "-B"


def test_meridian_suite_fails_at_c_equals_b():
    # [PAPER: the transverse square does not close without C = -B]
    rep = meridian_suite(1)
    assert not rep.passed
    assert not rep["a_transverse_pair"].passed
    assert rep["b_tangency"].passed


def test_transverse_square_coefficients():
    # [PAPER: D2 and D3 carry -A^-1 C - A^-1 B + A C + A B up to sign]
    res = scenario_a(-1)
    k = res.checks["coefficients"]
    assert k[0] == "0" and k[3] == "0"
    target = parse_skein("-A^-1*C - A^-1*B + A*C + A*B")
    assert {parse_skein(k[1]), parse_skein(k[2])} == {target, -target}
    assert all(res.checks["d2_d3_nonzero_generic"])


def test_cusp_meridian_multiple():
    # [DERIVED: a kinked wall weighs ind (B delta + C); at C = -B it is
    # -(A^2 + 1 + A^-2) times the base bracket, negated by ind = -1]
    res = scenario_d(-1)
    for v in res.checks.values():
        assert parse(v["multiple_of_bracket"]) == parse("A^2 + 1 + A^-2")
    assert res.passed


def test_single_kinked_wall_weight():
    k = dg.add_kink(dg.UNKNOT, 0, 1, 1)
    rep = cross_of_path(Path(k, (CrossingChange(0),)), certify=False)
    # ind = -1: -(B delta + C) at B = 1, C = -1
    assert rep.value == -(DELTA - 1)


def test_clasp_tangles_are_valid():
    from skeincross.tangle import validate_tangle

    for v1 in ("a", "b", "double"):
        for v2 in ("a", "b", "double"):
            for rev in (False, True):
                assert validate_tangle(clasp_tangle(v1, v2, rev)).ok
