from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from zastava.quiver import (ChainsawRep, ShapeError, SpecialModule, StabilityParam,
                            collapse_to_single_node, compare_interval_readings,
                            dimension_bound_batch, dimension_bound_check, dual_partition,
                            is_in_zero_fiber, moment_cokernel, moment_map, random_rep,
                            sample_smooth_point, slope, smoothness_example,
                            special_module_stability, stable_costable, stable_costable_bruteforce,
                            strata_enumerate, wall_membership)


def test_smoothness_example():
    ex = smoothness_example()
    assert ex["moment_zero"]
    assert ex["cokernel_dim"] == 1
    assert ex["walls_hit"] == []
    assert (ex["stable"], ex["costable"]) == (False, False)


SHAPES = [(n, d) for n in (1, 2, 3) for d in product(range(3), repeat=n) if 0 < sum(d) <= 3]


@given(st.sampled_from(SHAPES), st.integers(0, 10 ** 6), st.sampled_from(["cyclic", "open"]))
def test_stability_matches_subspace_search(shape, seed, variant):
    n, d = shape
    rep = random_rep(n, d, seed, "GF(2)", variant)
    assert stable_costable(rep) == stable_costable_bruteforce(rep)


@given(st.integers(0, 10 ** 6))
def test_smooth_points_lie_in_the_zero_fiber(seed):
    rep = sample_smooth_point(3, (1, 2, 1), seed)
    assert is_in_zero_fiber(rep)
    assert ChainsawRep.from_json(rep.to_json()) == rep


def test_moment_map_of_a_rank_one_example():
    rep = ChainsawRep(2, (1, 1), [[[2]], [[5]]], [[[1]], [[0]]], [[0], [3]], [[0], [0]])
    mm = moment_map(rep)
    # A_1 B_0 - B_0 A_0 + p_1 q_0 = 5 - 2 + 0
    assert mm == [[[Fraction(3)]], [[Fraction(0)]]]


def test_cokernel_of_zero_rep_is_everything():
    rep = ChainsawRep.zero(2, (1, 1))
    assert len(moment_cokernel(rep)) == 2


def test_shape_errors():
    with pytest.raises(ShapeError):
        ChainsawRep(2, (1, 1), [[[1]], [[1, 2]]], [[[0]], [[0]]], [[0], [0]], [[0], [0]])
    with pytest.raises(ShapeError):
        ChainsawRep.zero(2, (1, 1), variant="spiral")


def test_collapse_against_sympy():
    rep = random_rep(3, (2, 1, 2), 7, "QQ")
    out = collapse_to_single_node(rep)
    B = [sympy.Matrix(M) for M in rep.B]
    assert sympy.Matrix(out["B"]) == B[2] * B[1] * B[0]
    assert sympy.Matrix(out["p_blocks"][1]) == B[2] * B[1] * sympy.Matrix(rep.p[1])
    assert sympy.Matrix([out["q_blocks"][2]]) == sympy.Matrix([rep.q[2]]) * B[1] * B[0]
    assert list(out["p_blocks"][0]) == list(rep.p[0])


def test_walls():
    assert wall_membership((0, -1, 2), "finite") == []
    hits = wall_membership((1, -1, 0), "affine")
    assert {tuple(h["nodes"]) for h in hits} >= {(0, 1), (2,), (0, 1, 2)}
    with pytest.raises(ValueError):
        wall_membership((1, 2), "sideways")


def test_slope():
    z = StabilityParam((1, -2), (1, 1))
    assert z.zeta_inf == 1
    assert slope(z, (1, 0), 0) == 1
    assert slope(z, (1, 1), 1) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_interval_criterion_matches_bruteforce(n):
    out = compare_interval_readings(n, values=(-1, 0, 1) if n == 5 else (-2, -1, 0, 1, 2))
    assert out["strict_disagree"] == 0


def test_special_modules():
    assert special_module_stability((0, 1), SpecialModule("L_l", 0)) == "stable"
    assert special_module_stability((1, -1), SpecialModule("L", x=0, y=1)) == "stable"
    assert special_module_stability((1, -1), SpecialModule("Y_interval", 0, 1)) == "stable"
    assert special_module_stability((-1, 1), SpecialModule("Y_interval", 0, 1)) == "unstable"
    with pytest.raises(ValueError):
        SpecialModule("L", y=0)


@given(st.lists(st.integers(1, 6), max_size=5))
def test_dual_partition_is_an_involution(parts):
    p = tuple(sorted(parts, reverse=True))
    assert dual_partition(dual_partition(p)) == p
    assert sum(dual_partition(p)) == sum(p)


@pytest.mark.parametrize("d", [(2, 2), (4, 1), (1, 3, 2), (2, 2, 2)])
def test_dimension_bound(d):
    assert dimension_bound_batch(d)["holds"]


def test_dimension_bound_rejects_non_partitions():
    with pytest.raises(ValueError):
        dimension_bound_check((2, 1), [(1, 2), (1,)])


def test_strata_count():
    assert len(strata_enumerate(2, (1, 1))) == 5
    assert len(strata_enumerate(2, (1, 1), "open")) == 4
