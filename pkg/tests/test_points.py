import random
from fractions import Fraction

import pytest

from conftest import all_but_one, chmn, fermat
from resurgence.fields import GF, QQ
from resurgence.ideals import Ideal, hilbert_function, ideal_power
from resurgence.points import (
    BadN,
    CoincidentPoints,
    DegenerateParameter,
    NoLinesRecorded,
    NotPrime,
    PointConfiguration,
    ProjectivePoint,
    RootsOfUnityUnavailable,
    WrongConfigurationKind,
    ZeroPoint,
    all_but_one_config,
    alpha_interpolation,
    chmn_config,
    dumps_config,
    fermat_config,
    hyperplane_product_avoiding,
    incidence_audit,
    loads_config,
    point_ideal,
    points_hilbert_function,
    regularity_interpolation,
    symbolic_power,
    vanishing_order,
)
from resurgence.poly import RingContext

RQ = RingContext(QQ, 3)


def test_point_normalisation():
    p = ProjectivePoint(GF(7), (0, 3, 6))
    assert p.coords == (0, 1, 2) and p.chart == 1
    assert ProjectivePoint(QQ, (2, 4, 6)) == ProjectivePoint(QQ, (1, 2, 3))
    with pytest.raises(ZeroPoint):
        ProjectivePoint(QQ, (0, 0, 0))


def test_point_ideal_examples():
    x, y, z = RQ.gens()
    assert point_ideal(ProjectivePoint(QQ, (1, 0, 0)), RQ) == Ideal(RQ, [y, z])
    assert point_ideal(ProjectivePoint(QQ, (0, 1, 1)), RQ) == Ideal(RQ, [x, y - z])


def test_constructor_errors():
    with pytest.raises(BadN):
        fermat_config(2, GF(13))
    with pytest.raises(RootsOfUnityUnavailable):
        fermat_config(3, QQ)
    with pytest.raises(RootsOfUnityUnavailable):
        fermat_config(3, GF(11))
    for t in (0, -1, -2):
        with pytest.raises(DegenerateParameter):
            chmn_config(t, QQ)
    with pytest.raises(DegenerateParameter):
        chmn_config(2, GF(7))  # 4 + 2 + 1 = 0 mod 7
    with pytest.raises(NotPrime):
        all_but_one_config(4, 2)
    with pytest.raises(CoincidentPoints):
        PointConfiguration(RQ, (ProjectivePoint(QQ, (1, 0, 0)), ProjectivePoint(QQ, (2, 0, 0))))


def test_chmn_over_rationals_closed_forms():
    cfg = chmn(1, 0)
    named = dict(zip(cfg.point_names, cfg.points))
    assert named["R"] == ProjectivePoint(QQ, (3, 4, 1))
    assert named["S"] == ProjectivePoint(QQ, (3, -1, 2))
    assert named["F"] == ProjectivePoint(QQ, (1, 1, 0))


def test_point_counts():
    assert len(fermat(3, 13)) == 12
    assert len(chmn(5637, 31991)) == 19
    assert len(all_but_one(5, 2)) == 30
    assert len(all_but_one(3, 3)) == 39


def test_fermat_generators_have_expected_degrees():
    for n in (3, 4, 5):
        p = {3: 13, 4: 13, 5: 11}[n]
        cfg = fermat(n, p)
        assert len(cfg) == n * n + 3
        assert cfg.profile().alpha == n + 1


def test_hyperplane_product_checks():
    cfg = all_but_one(3, 2)
    F = hyperplane_product_avoiding(cfg)
    assert F.degree() == 9 and F.is_homogeneous()
    assert F.evaluate(cfg.excluded_point.coords) != 0
    assert {vanishing_order(F, pt) for pt in cfg.points} == {3}
    with pytest.raises(WrongConfigurationKind):
        hyperplane_product_avoiding(fermat(3, 13))


def test_explicit_elements_vanish_to_claimed_order():
    for cfg in (fermat(3, 13), chmn(5637, 31991), all_but_one(3, 2)):
        for el in cfg.elements():
            assert el.element.degree() == el.degree
            assert min(vanishing_order(el.element, pt, limit=el.multiplicity + 1) for pt in cfg.points) >= el.multiplicity


def test_chmn_audit():
    rep = incidence_audit(chmn(5637, 31991))
    assert rep.all_triple and rep.every_line_has_four and rep.passed
    assert rep.max_lines_per_point == 3
    assert sum(len(v) for v in rep.line_points.values()) == 57


def test_audit_detects_wrong_conic_and_missing_lines():
    cfg = chmn(5637, 31991)
    rep = incidence_audit(cfg, conics={"A": "AHKNOR"})
    assert not rep.passed
    with pytest.raises(NoLinesRecorded):
        incidence_audit(fermat(3, 13))


@pytest.mark.parametrize("name", ["fermat", "chmn", "abo"])
def test_symbolic_power_methods_agree(name):
    cfg = {"fermat": fermat(3, 13), "chmn": chmn(5637, 31991), "abo": all_but_one(3, 2)}[name]
    for m in (1, 2, 3):
        a = symbolic_power(cfg, m)
        assert a == symbolic_power(cfg, m, method="intersect")
        assert a == symbolic_power(cfg, m, method="saturate")
        assert a.contains_ideal(ideal_power(cfg.ideal(), m))
    with pytest.raises(ValueError):
        symbolic_power(cfg, 1, method="guess")


def test_fat_point_hilbert_function_reaches_length():
    cfg = fermat(3, 13)
    for m in (1, 2, 3):
        I = symbolic_power(cfg, m)
        reg = regularity_interpolation(cfg, m)
        for d in range(reg + 2):
            assert hilbert_function(I, d) == points_hilbert_function(cfg, d, m)
        assert points_hilbert_function(cfg, reg - 1, m) == cfg.fat_length(m)


def test_alpha_examples():
    assert [alpha_interpolation(all_but_one(3, 2), 12, m) for m in (1, 2, 3)] == [4, 8, 9]
    assert alpha_interpolation(chmn(5637, 31991), 4, 1) is None
    assert alpha_interpolation(fermat(3, 13), 12, 3) == 9


def test_config_file_round_trip():
    for cfg in (chmn(1, 0), fermat(3, 13), all_but_one(3, 2)):
        back = loads_config(dumps_config(cfg))
        assert back.points == cfg.points
        assert back.ideal() == cfg.ideal()
    text = "field fp:7\npoint 1 0 0\npoint 0 1 0\nline z\n"
    cfg = loads_config(text)
    assert len(cfg) == 2 and cfg.lines is not None
    with pytest.raises(ValueError):
        loads_config("point 1 0 0\n")
    with pytest.raises(ValueError):
        loads_config("field qq\nbogus 1\n")


def test_random_rational_chmn_parameters_are_nondegenerate():
    rng = random.Random(3)
    for _ in range(3):
        t = Fraction(rng.randint(1, 40), rng.randint(1, 9))
        cfg = chmn_config(t, QQ)
        assert len(cfg) == 19 and incidence_audit(cfg).all_triple
