import pytest

from zastava.character import compare_with_Y, molien_weyl_character, pbw_degree, sl2_closed_form_oracle


@pytest.mark.parametrize("d", [1, 2])
def test_single_node_matches_closed_form(d):
    F = molien_weyl_character(2, (0, d), 6)
    assert F == sl2_closed_form_oracle(d, 6)
    assert F.constant_term() == 1 and F.nonnegative()


def test_closed_form_on_a_longer_cycle():
    assert molien_weyl_character(3, (0, 0, 1), 5) == sl2_closed_form_oracle(1, 5, n=3)


def test_truncation_is_consistent():
    big = molien_weyl_character(3, (0, 1, 1), 5)
    assert big.restrict(3) == molien_weyl_character(3, (0, 1, 1), 3)
    for k in big.coeffs:
        assert pbw_degree(3, k) == big.degrees[k] <= 5


def test_d1_low_degrees():
    F = molien_weyl_character(2, (0, 1), 3)
    assert F.by_degree() == {0: 1, 1: 1, 2: 2, 3: 2}


@pytest.mark.parametrize("n,d", [(2, (0, 1)), (2, (1, 1))])
def test_matches_quantized_algebra(n, d):
    out = compare_with_Y(n, d, N=3)
    assert out["equal"], out["differences"]
