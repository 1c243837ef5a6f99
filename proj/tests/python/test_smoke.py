import math

import pytest

import holderlab as hl


def test_bound_curves():
    assert hl.eval_h("upper", 0.5) == 1.0
    assert hl.eval_h("lower", 0.5) == pytest.approx(1.528320833573719, rel=1e-14)
    assert hl.eval_h("lower_box", 1.0 / 3.0) == pytest.approx(1.194987500240385, rel=1e-14)
    for kind in ("lower", "lower_box", "upper"):
        for alpha in (0.1, 0.5, 0.9):
            d = hl.invert_h(kind, alpha)
            assert abs(hl.eval_h(kind, d) - alpha) <= 1e-12
    assert hl.domain_max("upper") == pytest.approx(0.5)
    assert hl.domain_max("lower_box") == pytest.approx(1.0 / 3.0)


def test_curve_table_and_csv():
    rows = hl.curve_table(0.2, 0.8, 4)  # steps = intervals, endpoints included
    assert len(rows) == 5
    assert rows[0]["alpha"] == pytest.approx(0.2)
    assert rows[-1]["alpha"] == pytest.approx(0.8)
    header = hl.curve_csv(0.2, 0.8, 4).splitlines()[0]
    assert header == "alpha,lower_raw,lower_hausdorff,lower_box,upper_raw,upper"


def test_asymptotic_gap_decreasing():
    gaps = [hl.asymptotic_gap(10.0**-e) for e in range(1, 5)]
    assert all(g > 0 for g in gaps)
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_conductivity_census():
    assert hl.per_root_census(3) == [1, 12, 36]
    assert hl.family_size(8) == 3 * 7**7
    census = hl.per_root_census(6)
    assert census == [hl.binomial(5, k) * 6**k for k in range(6)]


def test_cover_audit():
    assert hl.cover_audit_exhaustive(2)


def test_mu_kappa_on_random_field():
    cx = hl.TriComplex(5)
    field = hl.random_holder_field(cx, 42, 1.0, 0.6)
    assert len(field["values"]) == cx.vertex_count
    r = hl.guarded_query(cx, field["values"], 7)
    assert r == hl.guarded_query(cx, field["values"], 7)  # deterministic
    rep = hl.mu_kappa_audit(cx, field["values"], r)
    assert rep["violations"] == 0
    assert rep["max_mu_over_kappa"] <= 1.0


def test_front_stats_shape():
    cx = hl.TriComplex(5)
    field = hl.random_holder_field(cx, 42, 1.0, 0.6)
    r = hl.guarded_query(cx, field["values"], 7)
    rows = hl.front_stats(cx, field["values"], r, 0.4, 3)
    assert [row["n"] for row in rows] == [1, 2, 3]
    assert all(row["front_size"] >= 1 for row in rows)


def test_phi_witness():
    wit = hl.PhiWitness(3, 1)
    assert wit.count == 7
    assert hl.admissible_count(3, 1) == 7
    iv = wit.eval(["233"])
    assert (iv["rank"], iv["den"]) == (1, 7)
    frac, val = wit.phi_of_chain("233")
    assert (frac, val) == ("2/7", 2.0 / 7.0)
    audit = hl.phi_holder_audit(wit, math.log2(7) / 4.0, 3)
    assert audit["pass"] and audit["max_ratio"] <= audit["bound"]


def test_phi_level_cells():
    wit = hl.PhiWitness(3, 1)
    chain = hl.chain_from_rank_digits(wit, [4, 2, 0, 5, 1, 3])
    rep = hl.phi_level_cells(wit, chain, 2)
    assert rep["cells"] <= rep["bound"] == 2**2


def test_optimize_params():
    got = hl.optimize_params(0.5, 0.05)
    assert (got["kstar"], got["w"], got["count"]) == (13, 2, 339)


def test_cross_model():
    assert [hl.p_formula(m) for m in range(2, 8)] == [12, 44, 204, 908, 3852, 15884]
    model = hl.CrossModel(3)
    assert model.p == hl.p_formula(3) == 44
    counts = hl.cross_type_counts(model, 4)
    assert counts["t1"] == 4 and counts["thin"] == 8
    assert counts["b_L"] < 1.0
    frac, val = hl.cross_phi(3, [3, 4, 3])
    assert (frac, val) == ("1/4", 0.25)


def test_level_sections():
    model = hl.CrossModel(3)
    rep = hl.level_section_count(model, [1, 0, 1, 1, 0, 1], 6)
    assert rep["counts"] == [2**k for k in range(1, 7)]
    assert rep["slope"] == pytest.approx(1.0 / 3.0, abs=0.02)


def test_phase_transition():
    assert hl.feasibility_threshold_l() == pytest.approx(9.0, abs=1e-9)
    assert not hl.transition_bounds(3, 9, 0.5)["feasible"]
    assert hl.transition_bounds(3, 10, 0.5)["feasible"]
    rec = hl.transition_bounds(4, 16, 0.9)
    assert rec["alpha1"] == pytest.approx(math.log2(3) / 2.0, abs=1e-12)
    assert rec["d_star_lower"] > 1.0 / 4.0


def test_fmt17_round_trips():
    for x in (0.4, 1.0 / 3.0, 9.000000000000004):
        assert float(hl.fmt17(x)) == x


def test_bad_inputs_raise():
    with pytest.raises(ValueError):
        hl.eval_h("sideways", 0.5)
    with pytest.raises(ValueError):
        hl.CrossModel(1)
    wit = hl.PhiWitness(3, 1)
    with pytest.raises(ValueError):
        wit.eval(["141"])  # inadmissible block
