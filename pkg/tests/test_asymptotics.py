from fractions import Fraction

import pytest

from conftest import all_but_one, chmn, fermat
from resurgence.asymptotics import (
    ELS_SHORTCUT,
    FAILS,
    HOLDS,
    NORMAL_FORM_ALL_GENS,
    WITNESS_NON_MEMBER,
    Budget,
    CertificateRejected,
    DescentArithmeticFails,
    HypothesisViolated,
    asymptotic_bracket,
    bezout_descent_certify,
    check_containment,
    family_cell,
    fermat_hilbert_burch,
    finite_field_case,
    in_symbolic_power,
    not_in_power,
    reg_upper_bound,
    resurgence_bracket,
    verify_certificate,
    waldschmidt_table,
)
from resurgence.certificates import ExplicitElementCertificate
from resurgence.groebner import ResourceCap
from resurgence.ideals import hilbert_function
from resurgence.points import alpha_interpolation


def test_els_shortcut():
    rep = check_containment(fermat(3, 13), 4, 2)
    assert rep.holds and rep.method == ELS_SHORTCUT


def test_classic_non_containments_have_witnesses():
    for cfg in (fermat(3, 13), chmn(5637, 31991), all_but_one(3, 2)):
        rep = check_containment(cfg, 3, 2)
        assert rep.verdict == FAILS and rep.method == WITNESS_NON_MEMBER
        W = rep.witness
        assert in_symbolic_power(cfg, W, 3)
        assert not_in_power(cfg, W, 2)["linear"]


def test_fermat_witness_is_difference_product():
    rep = check_containment(fermat(3, 13), 3, 2)
    assert rep.witness_name == "difference product" and rep.witness.degree() == 9


def test_holds_by_generator_reduction():
    rep = check_containment(fermat(3, 13), 5, 3)
    assert rep.verdict == HOLDS and rep.method == NORMAL_FORM_ALL_GENS
    assert rep.checks["generators_reduced"] > 0


def test_reduction_path_agrees_with_witness_path():
    # without candidates the generator reduction must still find the failure
    rep = check_containment(fermat(3, 13), 3, 2, try_candidates=False)
    assert rep.verdict == FAILS and rep.method == NORMAL_FORM_ALL_GENS


def test_containment_is_monotone_in_m():
    cfg = all_but_one(3, 2)
    verdicts = [check_containment(cfg, m, 2, shortcut=False).holds for m in range(2, 5)]
    # once it holds it keeps holding
    assert verdicts == sorted(verdicts)
    assert verdicts[-1]


def test_certified_holds_survive_direct_check():
    cfg = fermat(3, 13)
    br = resurgence_bracket(cfg, 3)
    held = [(m, r) for (m, r), c in br.cells.items() if c.get("verdict") == HOLDS and r > 1][:3]
    assert held
    for m, r in held:
        assert check_containment(cfg, m, r, shortcut=False, try_candidates=False).holds


def test_bad_arguments():
    with pytest.raises(ValueError):
        check_containment(fermat(3, 13), 0, 2)


def test_degree_budget_raises_resource_cap():
    with pytest.raises(ResourceCap):
        check_containment(fermat(3, 13), 5, 3, budget=Budget(max_degree=4))


def test_bracket_is_partial_under_tight_budget():
    br = resurgence_bracket(fermat(3, 13), 3, budget=Budget(max_degree=6))
    assert br.partial


def test_bezout_descent_for_chmn():
    cfg = chmn(5637, 31991)
    cert = bezout_descent_certify(cfg, 4)
    assert (cert.num_lines, cert.points_per_line, cert.lines_per_point) == (12, 4, 3)
    assert list(cert.base_alphas) == [5, 10, 12]
    with pytest.raises(DescentArithmeticFails):
        bezout_descent_certify(cfg, 5)
    verify_certificate(cfg, cert)


def test_descent_bound_holds_beyond_base_cases():
    cfg = chmn(5637, 31991)
    for m in range(1, 6):
        assert alpha_interpolation(cfg, 4 * m - 1, m) is None


def test_false_explicit_element_rejected():
    cfg = fermat(3, 13)
    el = cfg.elements()[0]
    with pytest.raises(CertificateRejected):
        verify_certificate(cfg, ExplicitElementCertificate(el.element, 4, el.degree, "overclaimed"))


def test_waldschmidt_brackets():
    wf = waldschmidt_table(fermat(3, 13))
    assert [a for _, a, _ in wf.rows] == [4, 8, 9]
    assert (wf.lower, wf.upper) == (3, 3) and wf.collapsed
    wc = waldschmidt_table(chmn(5637, 31991))
    assert (wc.lower, wc.upper) == (4, 4)
    wa = waldschmidt_table(all_but_one(3, 2))
    assert (wa.lower, wa.upper) == (3, 3)
    assert asymptotic_bracket(all_but_one(3, 2), wa) == (Fraction(4, 3), Fraction(5, 3))
    with pytest.raises(ValueError):
        waldschmidt_table(fermat(3, 13), 0)


def test_reg_upper_bound():
    assert reg_upper_bound(5, 4, 1) == 5
    assert reg_upper_bound(5, 4, 2) == 10
    assert reg_upper_bound(5, 4, 4) == 18


def test_hilbert_burch_formula():
    for n, p in [(3, 13), (4, 13), (5, 11)]:
        I = fermat(n, p).ideal()
        for d in range(2 * n + 3):
            assert hilbert_function(I, d) == fermat_hilbert_burch(n, d)


def test_resurgence_brackets():
    bf = resurgence_bracket(fermat(3, 13), 3)
    assert (bf.lower, bf.upper) == (Fraction(3, 2), Fraction(3, 2))
    bc = resurgence_bracket(chmn(5637, 31991), 3)
    assert (bc.lower, bc.upper) == (Fraction(3, 2), Fraction(3, 2))
    assert bc.cells[(4, 3)]["verdict"] == FAILS


def test_jobs_do_not_change_the_result():
    cfg = all_but_one(3, 2)
    one = resurgence_bracket(cfg, 3, jobs=1).as_dict(timings=False)
    two = resurgence_bracket(cfg, 3, jobs=2).as_dict(timings=False)
    assert one == two


def test_family_cell():
    fam = family_cell(all_but_one(3, 2), 1)
    assert (fam["m"], fam["r"], fam["verdict"]) == (15, 10, FAILS)
    assert fam["witness_degree"] == 45
    fam2 = family_cell(all_but_one(3, 2), 2, budget=Budget(max_degree=50))
    assert (fam2["m"], fam2["r"]) == (30, 19)
    assert fam2["verdict"] == FAILS and fam2["checks"]["linear_not_in_power"] is None
    with pytest.raises(ValueError):
        family_cell(fermat(3, 13))


def test_finite_field_cases():
    assert finite_field_case("i", 3, 2) == (3, 2)
    assert finite_field_case("i", 5, 2) == (5, 3)
    assert finite_field_case("ii", 5, 3) == (4, 2)
    assert finite_field_case("iii", 5, 2) == (5, 3)
    for case, s, N in [("i", 2, 2), ("i", 4, 2), ("ii", 5, 2), ("iii", 5, 3), ("iv", 5, 2)]:
        with pytest.raises(HypothesisViolated):
            finite_field_case(case, s, N)
