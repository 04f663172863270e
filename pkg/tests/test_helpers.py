import numpy as np
import pytest

from utils.helpers import (
    compute_deterministic_hash,
    fd_derivative,
    format_sig,
    gradient4,
    ordered_map,
    relative_spread,
)


def test_gradient4_is_exact_on_quartics():
    t = np.linspace(0.0, 1.0, 11)
    f = t ** 4 - 2.0 * t ** 2
    np.testing.assert_allclose(gradient4(f, t[1] - t[0]), 4.0 * t ** 3 - 4.0 * t, atol=1e-12)


def test_gradient4_needs_five_samples():
    with pytest.raises(ValueError):
        gradient4([0.0, 1.0, 2.0, 3.0], 1.0)


@pytest.mark.parametrize("order, expected", [(1, np.cos(0.3)), (2, -np.sin(0.3)), (3, -np.cos(0.3))])
def test_fd_derivative(order, expected):
    assert fd_derivative(np.sin, 0.3, order, 1e-3) == pytest.approx(expected, abs=2e-6)


def test_fd_derivative_order():
    with pytest.raises(ValueError):
        fd_derivative(np.sin, 0.0, 4, 1e-3)


def test_relative_spread():
    assert relative_spread([2.0, 2.0, 2.0]) == 0.0
    assert relative_spread([1.0, 3.0]) == pytest.approx(1.0)
    assert relative_spread([]) == 0.0


def test_hash_ignores_key_order():
    assert compute_deterministic_hash({"a": 1, "b": 2}) == compute_deterministic_hash({"b": 2, "a": 1})
    assert compute_deterministic_hash({"a": 1}) != compute_deterministic_hash({"a": 2})


@pytest.mark.parametrize("parallel", [False, True])
def test_ordered_map_keeps_order(parallel):
    assert ordered_map(lambda x: x * x, range(50), parallel) == [x * x for x in range(50)]


def test_format_sig():
    assert format_sig(-0.0) == "0"
    assert format_sig(0.12) == "0.12"
    assert format_sig(1.0 / 3.0, 4) == "0.3333"
