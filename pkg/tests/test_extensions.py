import json
import random
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from bicyclic import linalg
from bicyclic.algebra import ONE, X, Y, monomial
from bicyclic.extensions import (
    ExtSpec,
    ExtVector,
    IncompatibleDelta,
    Iso,
    NoIso,
    Nonsplit,
    Split,
    apply_iso,
    check_iso_certificate,
    check_split_certificate,
    classify,
    complete_delta,
    equivalence_test,
    ext_act,
    iso_test,
    random_spec,
    recheck_nonsplit,
    section_vector,
    spec_from_json,
    spec_to_json,
    split_test,
    split_witness,
)
from bicyclic.extensions import _apply_y
from bicyclic.modules import Fin, InfShift, LinMap, ShapeMismatch, Vec, act

from strategies import elements, nonzero_rationals, vecs

F = Fraction
INF = InfShift()
F1, F2 = Fin(F(1)), Fin(F(2))


def shift_spec(lam, coords) -> ExtSpec:
    V = Fin(F(lam))
    return complete_delta(INF, V, LinMap.from_cols(V, INF, {0: Vec(coords)}))


def findim_spec(mu, lam, d) -> ExtSpec:
    U, V = Fin(F(mu)), Fin(F(lam))
    return complete_delta(U, V, LinMap.from_cols(V, U, {0: Vec({0: F(d)})}))


# -- compatibility ------------------------------------------------------------


def test_validate_zero_delta():
    spec = complete_delta(INF, F1, LinMap.zero(F1, INF))
    assert not spec.dx and not spec.dy


def test_validate_e0_needs_no_dy():
    spec = ExtSpec(INF, F1, LinMap.from_cols(F1, INF, {0: Vec.basis(0)}), LinMap.zero(F1, INF))
    from bicyclic.extensions import validate_delta

    validate_delta(spec)


def test_validate_rejects_e1_with_zero_dy():
    from bicyclic.extensions import validate_delta

    spec = ExtSpec(INF, F1, LinMap.from_cols(F1, INF, {0: Vec.basis(1)}), LinMap.zero(F1, INF))
    with pytest.raises(IncompatibleDelta) as err:
        validate_delta(spec)
    assert err.value.index == 0
    assert err.value.residual == Vec.basis(0)


def _complete_by_elimination(U, V, dx_col):
    # Independent route: solve alpha(y) dx + lam dy = 0 for dy by dense
    # elimination over the coordinates of a window.
    lam = V.lam
    lhs = act(U, Y, dx_col)
    bound = max(dx_col.max_index + 1, lhs.max_index + 1, 1)
    rows = []
    rhs = []
    for k in range(bound + 1):
        row = [F(0)] * (bound + 1)
        row[k] = lam
        rows.append(row)
        rhs.append(-lhs.get(k))
    sol = linalg.solve_dense(rows, rhs)
    assert sol is not None
    return Vec({k: c for k, c in enumerate(sol) if c})


@given(vecs(max_index=5), nonzero_rationals)
@settings(max_examples=40)
def test_complete_delta_matches_elimination(col, lam):
    V = Fin(lam)
    spec = complete_delta(INF, V, LinMap.from_cols(V, INF, {0: col}))
    assert spec.dy.col(0) == _complete_by_elimination(INF, V, col)


def test_complete_delta_examples():
    lam = F(2)
    spec = shift_spec(lam, {1: 1})
    assert spec.dy.col(0) == Vec({0: -1 / lam})
    assert shift_spec(lam, {0: 1}).dy.col(0) == Vec.zero()
    both = findim_spec(3, 2, 7)
    assert both.dy.col(0) == Vec({0: F(-7) / (F(2) * F(3))})
    z = complete_delta(INF, INF, LinMap.zero(INF, INF))
    assert not z.dy


def test_complete_delta_free_part():
    free = Vec({2: F(5)})
    dx = LinMap.from_cols(INF, INF, {0: Vec.basis(0), 1: Vec.basis(2)})
    spec = complete_delta(INF, INF, dx, free_part=free)
    assert spec.dy.col(0) == free
    # forced columns: dy(b_{n+1}) = -alpha(y) dx(b_n)
    assert spec.dy.col(1) == Vec.zero()  # leftshift e_0 = 0
    assert spec.dy.col(2) == -Vec.basis(1)


# -- block action -------------------------------------------------------------


@given(st.integers(0, 3), st.integers(0, 3), vecs(max_index=4), vecs(max_index=4))
@settings(max_examples=40)
def test_block_action_is_ring_homomorphism(i, j, u, v):
    rng = random.Random(i * 17 + j)
    spec = random_spec(rng, "inf", "inf")
    ev = ExtVector(u, v)
    a, b = monomial(i, j), monomial(j, i) - ONE.scale(2)
    assert ext_act(spec, a * b, ev) == ext_act(spec, a, ext_act(spec, b, ev))
    assert ext_act(spec, Y * X, ev) == ev


def test_zero_delta_acts_diagonally():
    spec = complete_delta(INF, F2, LinMap.zero(F2, INF))
    u, v = Vec({1: 2}), Vec({0: 3})
    got = ext_act(spec, X, ExtVector(u, v))
    assert got == ExtVector(act(INF, X, u), act(F2, X, v))


def test_block_formula_example():
    spec = shift_spec(1, {0: 1})
    got = ext_act(spec, X, ExtVector(Vec.zero(), Vec.basis(0)))
    assert got == ExtVector(Vec.basis(0), Vec.basis(0))


# -- splitting ---------------------------------------------------------------


@given(st.integers(0, 10_000))
@settings(max_examples=50)
def test_infinite_quotient_always_splits(seed):
    rng = random.Random(seed)
    spec = random_spec(rng, rng.choice(["inf", "fin"]), "inf")
    result = split_test(spec)
    assert isinstance(result, Split)
    assert not _apply_y(spec, split_witness(spec, result))
    assert check_split_certificate(spec, result, bound=8)
    # the section projects to the identity on V
    assert section_vector(spec, result, 5).v == Vec.basis(5)


def test_e0_is_nonsplit():
    spec = shift_spec(1, {0: 1})
    result = split_test(spec)
    assert isinstance(result, Nonsplit)
    assert result.residue == 1 and result.index == 0
    assert recheck_nonsplit(spec, result)


def test_coboundary_e1_minus_e0_splits():
    spec = shift_spec(1, {1: 1, 0: -1})
    result = split_test(spec)
    assert isinstance(result, Split)
    assert result.seed == Vec({0: -1})
    assert check_split_certificate(spec, result)


@given(vecs(max_index=4), nonzero_rationals)
@settings(max_examples=40)
def test_coboundary_closure(u, lam):
    # delta(x) = (alpha(x) - lam) u always yields a split extension with
    # section seed -u.
    V = Fin(lam)
    dx_col = act(INF, X, u) - u.scale(lam)
    spec = complete_delta(INF, V, LinMap.from_cols(V, INF, {0: dx_col}))
    result = split_test(spec)
    assert isinstance(result, Split)
    assert result.seed == -u
    assert check_split_certificate(spec, result, bound=u.max_index + 3)


def test_two_one_dimensional_simples():
    assert isinstance(split_test(findim_spec(1, 2, 1)), Split)
    res = split_test(findim_spec(1, 1, 1))
    assert isinstance(res, Nonsplit)
    assert recheck_nonsplit(findim_spec(1, 1, 1), res)
    assert isinstance(split_test(findim_spec(1, 1, 0)), Split)


@given(st.integers(0, 10_000))
@settings(max_examples=50)
def test_nonsplit_certificates_reeliminate(seed):
    rng = random.Random(seed)
    spec = random_spec(rng, "inf", "fin")
    result = split_test(spec)
    if isinstance(result, Nonsplit):
        assert recheck_nonsplit(spec, result)
    else:
        assert check_split_certificate(
            spec, result, bound=spec.dx.col(0).max_index + 3
        )


# -- isomorphism --------------------------------------------------------------


def test_iso_scaling_delta():
    a, b = shift_spec(1, {0: 1}), shift_spec(1, {0: 2})
    res = iso_test(a, b)
    assert isinstance(res, Iso)
    assert check_iso_certificate(a, b, res)


def test_iso_needs_matching_lambda():
    res = iso_test(shift_spec(1, {0: 1}), shift_spec(2, {0: 1}))
    assert isinstance(res, NoIso)


def test_iso_non_proportional_deltas():
    a, c = shift_spec(1, {0: 1}), shift_spec(1, {1: 1})
    res = iso_test(a, c)
    assert isinstance(res, Iso)
    assert (res.a, res.b) == (F(1), F(1))
    assert res.w == Vec({0: -1})
    assert check_iso_certificate(a, c, res)


def test_iso_identical_specs():
    a = shift_spec(1, {0: 1})
    assert iso_test(a, a) == Iso(F(1), F(1), Vec.zero())


def test_iso_split_vs_nonsplit():
    res = iso_test(shift_spec(1, {1: 1, 0: -1}), shift_spec(1, {0: 1}))
    assert isinstance(res, NoIso)


def test_iso_rejects_mixed_shapes():
    with pytest.raises(ShapeMismatch):
        iso_test(shift_spec(1, {0: 1}), findim_spec(1, 1, 1))
    rng = random.Random(0)
    with pytest.raises(ShapeMismatch):
        iso_test(random_spec(rng, "fin", "inf"), random_spec(rng, "fin", "inf"))


def _similar_2x2(mu_a, lam_a, da, mu_b, lam_b, db) -> bool:
    # Independent oracle: upper-triangular 2x2 matrices are similar iff they
    # share eigenvalues (as multisets) and Jordan type.
    eig_a = sorted((mu_a, lam_a))
    eig_b = sorted((mu_b, lam_b))
    if eig_a != eig_b:
        return False
    if mu_a != lam_a:
        return True
    return bool(da) == bool(db)


@given(
    st.sampled_from([F(1), F(2), F(-1)]),
    st.sampled_from([F(1), F(2), F(-1)]),
    st.integers(-2, 2),
    st.sampled_from([F(1), F(2), F(-1)]),
    st.sampled_from([F(1), F(2), F(-1)]),
    st.integers(-2, 2),
)
@settings(max_examples=80)
def test_findim_iso_matches_similarity_oracle(mu_a, lam_a, da, mu_b, lam_b, db):
    a, b = findim_spec(mu_a, lam_a, da), findim_spec(mu_b, lam_b, db)
    res = iso_test(a, b)
    expected = _similar_2x2(mu_a, lam_a, F(da), mu_b, lam_b, F(db))
    assert isinstance(res, Iso) == expected
    if isinstance(res, Iso):
        assert check_iso_certificate(a, b, res)


def test_iso_symmetry_on_pool():
    pool = [
        shift_spec(1, {0: 1}),
        shift_spec(1, {1: 1}),
        shift_spec(1, {}),
        shift_spec(2, {0: 1}),
        shift_spec(1, {1: 1, 0: -1}),
    ]
    for a in pool:
        for b in pool:
            ab, ba = iso_test(a, b), iso_test(b, a)
            assert isinstance(ab, Iso) == isinstance(ba, Iso)


def test_iso_transitivity_by_composition():
    a = shift_spec(1, {0: 1})
    b = shift_spec(1, {1: 1})
    c = shift_spec(1, {0: 2, 1: 1})
    fab, fbc = iso_test(a, b), iso_test(b, c)
    assert isinstance(fab, Iso) and isinstance(fbc, Iso)
    composed = Iso(
        a=fab.a * fbc.a, b=fab.b * fbc.b, w=fab.w.scale(fbc.a) + fbc.w.scale(fab.b)
    )
    assert check_iso_certificate(a, c, composed)
    assert isinstance(iso_test(a, c), Iso)


# -- equivalence --------------------------------------------------------------


def test_equivalence_examples():
    assert equivalence_test(findim_spec(1, 1, 1), findim_spec(1, 1, 5))
    assert not equivalence_test(findim_spec(1, 1, 1), findim_spec(2, 2, 1))
    spec = findim_spec(1, 1, 3)
    assert equivalence_test(spec, spec)


def test_iso_but_not_equivalent():
    # U (+) V versus V (+) U: isomorphic modules, but no isomorphism maps
    # k_1 onto k_2.
    p = complete_delta(F1, F2, LinMap.zero(F2, F1))
    q = complete_delta(F2, F1, LinMap.zero(F1, F2))
    res = iso_test(p, q)
    assert isinstance(res, Iso)
    assert check_iso_certificate(p, q, res)
    assert not equivalence_test(p, q)


def test_equivalence_matches_iso_for_shift_shape():
    a, b = shift_spec(1, {0: 1}), shift_spec(1, {2: 1})
    assert equivalence_test(a, b) == isinstance(iso_test(a, b), Iso)


# -- classification -----------------------------------------------------------


def test_classify_cases():
    rep = classify(complete_delta(F1, INF, LinMap.zero(INF, F1)))
    assert (rep.case, rep.oracle_verdict, rep.comparison) == ("i", "split", "AGREES")
    rep = classify(shift_spec(1, {0: 1}))
    assert (rep.case, rep.oracle_verdict, rep.comparison) == ("ii", "nonsplit", "AGREES")
    rep = classify(findim_spec(1, 1, 0))
    assert (rep.case, rep.oracle_verdict, rep.comparison) == ("iii", "split", "AGREES")


def test_classify_flags_coboundary_discrepancy():
    rep = classify(shift_spec(1, {1: 1, 0: -1}))
    assert rep.case == "ii"
    assert rep.claimed_verdict == "nonsplit"
    assert rep.oracle_verdict == "split"
    assert rep.comparison == "DISCREPANCY"
    assert rep.certificate["replayed"]


def test_classify_certificates_replay():
    rep = classify(shift_spec(2, {0: 1}))
    assert rep.certificate["reeliminated"]
    assert rep.canonical == {"lambda": "2", "delta_x": "e_0"}


# -- serialization ------------------------------------------------------------


def test_spec_json_roundtrip():
    for spec in (
        shift_spec(1, {0: 1}),
        shift_spec(2, {1: 1, 0: -2}),
        findim_spec(1, 2, 3),
        complete_delta(INF, INF, LinMap.from_cols(INF, INF, {0: Vec.basis(1)}), free_part=Vec.basis(0)),
    ):
        data = json.loads(json.dumps(spec_to_json(spec)))
        assert spec_from_json(data) == spec


def test_spec_json_completion_and_free_part():
    data = {
        "U": {"type": "inf"},
        "V": {"type": "fin", "lambda": "1"},
        "delta_x": {"cols": {"0": {"coords": {"0": "1"}}}},
    }
    assert spec_from_json(data) == shift_spec(1, {0: 1})
    data = {
        "U": {"type": "inf"},
        "V": {"type": "inf"},
        "delta_x": {"cols": {}},
        "free_part": {"coords": {"2": "5"}},
    }
    spec = spec_from_json(data)
    assert spec.dy.col(0) == Vec({2: 5})


def test_apply_iso_shape():
    a, b = shift_spec(1, {0: 1}), shift_spec(1, {0: 2})
    res = iso_test(a, b)
    ev = ExtVector(Vec.basis(2), Vec.basis(0))
    out = apply_iso(a, b, res, ev)
    assert out.u.get(2) == res.a
