import random

import pytest

from conftest import all_but_one, chmn, fermat
from resurgence.fields import GF, QQ
from resurgence.ideals import (
    Ideal,
    MissingDegreeBound,
    NonHomogeneousInput,
    ZeroDivisorPolynomial,
    ZeroExponent,
    colon,
    colon_ideal,
    dumps_ideal,
    graded_min_gens,
    hilbert_function,
    ideal_power,
    intersect,
    loads_ideal,
    reg_points,
    saturate_irrelevant,
)
from resurgence.points import point_ideal, points_hilbert_function, symbolic_power
from resurgence.poly import Polynomial, RingContext

RQ3 = RingContext(QQ, 3)
RQ2 = RingContext(QQ, 2)


def test_power_examples():
    x, y = RQ2.gens()
    I = Ideal(RQ2, [x, y])
    assert ideal_power(I, 1) == I
    assert ideal_power(I, 2) == Ideal(RQ2, [x**2, x * y, y**2])
    with pytest.raises(ZeroExponent):
        ideal_power(I, 0)


def test_intersection_examples():
    x, y = RQ2.gens()
    assert intersect(Ideal(RQ2, [x]), Ideal(RQ2, [y])) == Ideal(RQ2, [x * y])
    I = Ideal(RQ2, [x**2, y**3 - x * y])
    assert intersect(I, I) == I


def test_intersection_of_point_ideals_over_f3():
    cfg = all_but_one(3, 2)
    J = None
    for p in cfg.points:
        P = point_ideal(p, cfg.ring)
        J = P if J is None else intersect(J, P)
    assert J == cfg.ideal()
    assert [hilbert_function(J, d) for d in range(6)] == [1, 3, 6, 10, 12, 12]
    assert J.alpha() == 4


def test_colon_examples():
    x, y = RQ2.gens()
    assert colon(Ideal(RQ2, [x**2, x * y]), x) == Ideal(RQ2, [x, y])
    I = Ideal(RQ2, [x**2, x * y + y**2])
    assert colon(I, RQ2.one) == I
    with pytest.raises(ZeroDivisorPolynomial):
        colon(I, RQ2.zero)


def test_linkage_colon_over_f3():
    # removing q = [1:0:0] from the nine affine F_3-points leaves eight points with reg 4
    R = RingContext(GF(3), 3)
    x0, x1, x2 = R.gens()
    C = Ideal(R, [x1 * (x1**2 - x0**2), x2 * (x2**2 - x0**2)])
    B = colon_ideal(C, Ideal(R, [x1, x2]))
    B.saturated, B.scheme_degree = True, 8
    assert reg_points(B) == 4
    assert hilbert_function(B, 10) == 8


def test_saturation_examples():
    x, y = RQ2.gens()
    assert saturate_irrelevant(Ideal(RQ2, [x**2, x * y])) == Ideal(RQ2, [x])
    with pytest.raises(NonHomogeneousInput):
        saturate_irrelevant(Ideal(RQ2, [x**2 - y]))


def test_saturation_properties():
    x, y, z = RQ3.gens()
    I = Ideal(RQ3, [x**2 * y, x * y * z, y**3])
    S = saturate_irrelevant(I)
    assert S.contains_ideal(I)
    assert saturate_irrelevant(S) == S
    P = fermat(3, 13).ideal()
    assert saturate_irrelevant(Ideal(P.ring, P.generators)) == P


def test_saturated_cube_of_chmn_ideal_is_symbolic_cube():
    cfg = chmn(5637, 31991)
    assert saturate_irrelevant(ideal_power(Ideal(cfg.ring, cfg.ideal().generators), 3)) == symbolic_power(cfg, 3)


def test_hilbert_function_examples():
    x, y, z = RQ3.gens()
    M = Ideal(RQ3, [x, y, z])
    assert [hilbert_function(M, d) for d in range(4)] == [1, 0, 0, 0]
    I = chmn(5637, 31991).ideal()
    assert (hilbert_function(I, 5), hilbert_function(I, 6)) == (18, 19)
    assert hilbert_function(all_but_one(3, 2).ideal(), 4) == 12


def test_minimal_generator_profiles():
    x, y = RQ2.gens()
    prof = graded_min_gens(Ideal(RQ2, [x**2, x * y, y**3]), degree_bound=5)
    assert {d: v for d, v in prof.min_gens.items() if v} == {2: 2, 3: 1}
    with pytest.raises(MissingDegreeBound):
        graded_min_gens(Ideal(RQ2, [x**2]))
    fp = graded_min_gens(fermat(3, 13).ideal())
    assert (fp.alpha, fp.omega, fp.num_generators) == (4, 4, 3)
    cp = graded_min_gens(chmn(5637, 31991).ideal())
    assert (cp.alpha, cp.omega, cp.num_generators) == (5, 5, 3)


def test_regularity_examples():
    assert reg_points(fermat(3, 13).ideal()) == 5
    assert reg_points(chmn(5637, 31991).ideal()) == 7
    assert reg_points(all_but_one(3, 2).ideal()) == 5


def test_hilbert_burch_minors_generate_fermat_ideals():
    for n, p in [(3, 13), (4, 13), (5, 11)]:
        cfg = fermat(n, p)
        x, y, z = cfg.ring.gens()
        A = [[x * y, x * z, y * z], [z ** (n - 1), y ** (n - 1), x ** (n - 1)]]
        minors = [A[0][i] * A[1][j] - A[0][j] * A[1][i] for i, j in ((0, 1), (0, 2), (1, 2))]
        assert Ideal(cfg.ring, minors) == cfg.ideal()


def test_hf_by_gb_equals_hf_by_interpolation():
    for cfg in (fermat(3, 13), chmn(5637, 31991), all_but_one(3, 2), all_but_one(5, 2)):
        I = cfg.ideal()
        reg = reg_points(I) if I.scheme_degree else None
        for d in range(reg + 2):
            assert hilbert_function(I, d) == points_hilbert_function(cfg, d)
        for d in range(reg - 1, reg + 3):
            assert hilbert_function(I, d) == len(cfg)


def test_colon_times_f_lies_in_ideal():
    rng = random.Random(11)
    R = RingContext(GF(101), 3)
    xs = R.gens()
    for _ in range(5):
        gens = [xs[rng.randrange(3)] ** rng.randint(1, 3) * xs[rng.randrange(3)] + xs[rng.randrange(3)] ** 2 * R.const(rng.randint(1, 9)) for _ in range(3)]
        I = Ideal(R, gens)
        f = xs[rng.randrange(3)] + xs[rng.randrange(3)]
        Q = colon(I, f)
        assert Q.contains_ideal(I)
        for g in Q.generators:
            assert I.contains(g * f)


def test_serialization_round_trip():
    I = chmn(5637, 31991).ideal()
    J = loads_ideal(dumps_ideal(I))
    assert J == I and J.ring.field == I.ring.field
