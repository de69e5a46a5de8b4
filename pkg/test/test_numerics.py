"""
Tests for the dense matrix helpers and the seeded generator.
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from src.models.data_models import UpdateSet
from src.models.exceptions import DegenerateInputError, ParameterError, ShapeError
from src.numerics import linalg
from src.numerics.rng import Rng, derive_seed, rand_normal, rand_uniform
from src.rules.alignment import measure_alignment

dims = st.integers(min_value=1, max_value=6)
finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


def matrices(rows, cols):
    return arrays(np.float64, (rows, cols), elements=finite)


@st.composite
def matmul_pair(draw):
    m, k, n = draw(dims), draw(dims), draw(dims)
    return draw(matrices(m, k)), draw(matrices(k, n))


@st.composite
def nonzero_matrix(draw):
    a = draw(matrices(draw(dims), draw(dims)))
    a[0, 0] = draw(st.floats(min_value=0.5, max_value=5.0))
    return a


@settings(max_examples=100)
@given(matmul_pair())
def test_matmul_shape_and_values(pair):
    """Product has shape (m, n) and matches numpy"""
    a, b = pair
    product = linalg.matmul(a, b)
    assert product.shape == (a.shape[0], b.shape[1])
    np.testing.assert_allclose(product, a @ b)


def test_matmul_mismatch_names_both_shapes():
    with pytest.raises(ShapeError) as exc:
        linalg.matmul(np.zeros((2, 3)), np.zeros((4, 2)))
    assert "(2, 3)" in str(exc.value) and "(4, 2)" in str(exc.value)


@settings(max_examples=100)
@given(nonzero_matrix())
def test_angle_with_self_and_negation(a):
    """angle(a, a) is 0 and angle(a, -a) is 180"""
    assert linalg.angle_degrees(a, a) == pytest.approx(0.0, abs=1e-5)
    assert linalg.angle_degrees(a, -a) == pytest.approx(180.0, abs=1e-5)


@settings(max_examples=100)
@given(st.data())
def test_angle_is_symmetric_and_bounded(data):
    rows, cols = data.draw(dims), data.draw(dims)
    a = data.draw(matrices(rows, cols))
    b = data.draw(matrices(rows, cols))
    a[0, 0] = 1.0
    b[-1, -1] = -1.0 if b[-1, -1] == 0 else b[-1, -1]
    if not np.any(b):
        return
    angle = linalg.angle_degrees(a, b)
    assert 0.0 <= angle <= 180.0
    assert angle == pytest.approx(linalg.angle_degrees(b, a), abs=1e-9)


def test_angle_of_zero_matrix_is_degenerate():
    with pytest.raises(DegenerateInputError):
        linalg.angle_degrees(np.zeros((2, 2)), np.ones((2, 2)))


def test_angle_of_orthogonal_matrices_is_ninety():
    a = np.array([[1.0, 0.0]])
    b = np.array([[0.0, 3.0]])
    assert linalg.angle_degrees(a, b) == pytest.approx(90.0)


def test_angle_survives_tiny_and_huge_entries():
    assert linalg.angle_degrees(np.array([[1e-90, 0.0]]), np.array([[1e-90, 1e-90]])) == pytest.approx(45.0)
    assert linalg.angle_degrees(np.array([[1e160, 0.0]]), np.array([[1e160, 1e160]])) == pytest.approx(45.0)
    assert linalg.angle_degrees(np.array([[1e-200, 0.0]]), np.array([[1e200, 0.0]])) == 0.0


def test_alignment_of_tiny_updates_is_measured():
    u = UpdateSet(weight_grads=[np.array([[1e-90]])], bias_grads=[np.zeros((1, 1))])
    assert measure_alignment(u, u) == [0.0]


def test_literal_products():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(linalg.matmul(np.eye(2), a), a)
    assert np.array_equal(linalg.matmul(a, np.array([[5.0], [6.0]])), np.array([[17.0], [39.0]]))
    assert np.array_equal(linalg.matmul(np.zeros((2, 2)), np.array([[5.0], [6.0]])), np.zeros((2, 1)))
    assert np.array_equal(linalg.transpose(a), np.array([[1.0, 3.0], [2.0, 4.0]]))
    assert np.array_equal(linalg.hadamard(np.array([[2.0, 3.0]]), np.array([[4.0, 5.0]])),
                          np.array([[8.0, 15.0]]))
    assert np.array_equal(linalg.hadamard(a, np.ones((2, 2))), a)
    assert np.array_equal(linalg.mean_rows(np.array([[1.0, 3.0], [3.0, 5.0]])), np.array([[2.0, 4.0]]))
    assert np.array_equal(linalg.mean_rows(np.array([[0.3, -7.5]])), np.array([[0.3, -7.5]]))
    assert linalg.angle_degrees(np.array([[1.0, 0.0]]), np.array([[1.0, 1.0]])) == pytest.approx(45.0)


@settings(max_examples=100)
@given(matmul_pair())
def test_matmul_sums_left_to_right(pair):
    """Bitwise equal to a naive triple loop"""
    a, b = pair
    expected = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            total = 0.0
            for k in range(a.shape[1]):
                total += float(a[i, k]) * float(b[k, j])
            expected[i, j] = total
    assert np.array_equal(linalg.matmul(a, b), expected)


@settings(max_examples=50)
@given(st.data())
def test_mean_rows_sums_left_to_right(data):
    a = data.draw(matrices(data.draw(st.integers(1, 12)), data.draw(dims)))
    expected = np.zeros((1, a.shape[1]))
    for j in range(a.shape[1]):
        total = 0.0
        for i in range(a.shape[0]):
            total += float(a[i, j])
        expected[0, j] = total / a.shape[0]
    assert np.array_equal(linalg.mean_rows(a), expected)


@settings(max_examples=100)
@given(st.data())
def test_matmul_is_associative(data):
    m, k, n, p = (data.draw(dims) for _ in range(4))
    a, b, c = data.draw(matrices(m, k)), data.draw(matrices(k, n)), data.draw(matrices(n, p))
    left = linalg.matmul(linalg.matmul(a, b), c)
    right = linalg.matmul(a, linalg.matmul(b, c))
    bound = np.abs(a) @ np.abs(b) @ np.abs(c)
    assert np.all(np.abs(left - right) <= 1e-9 * bound + 1e-300)


@settings(max_examples=100)
@given(st.data())
def test_hadamard_commutes_bitwise(data):
    rows, cols = data.draw(dims), data.draw(dims)
    a, b = data.draw(matrices(rows, cols)), data.draw(matrices(rows, cols))
    assert np.array_equal(linalg.hadamard(a, b), linalg.hadamard(b, a))


@settings(max_examples=100)
@given(matmul_pair())
def test_operations_leave_inputs_unmodified(pair):
    a, b = pair
    a_before, b_before = a.copy(), b.copy()
    linalg.matmul(a, b)
    linalg.transpose(a)
    linalg.hadamard(a, a)
    linalg.mean_rows(b)
    if np.any(a):
        linalg.angle_degrees(a, a)
    assert np.array_equal(a, a_before) and np.array_equal(b, b_before)


@settings(max_examples=50)
@given(st.data())
def test_broadcast_rows_replicates(data):
    cols, rows = data.draw(dims), data.draw(dims)
    row = data.draw(matrices(1, cols))
    out = linalg.broadcast_rows(row, rows)
    assert out.shape == (rows, cols)
    assert np.array_equal(out, np.tile(row, (rows, 1)))
    np.testing.assert_allclose(linalg.mean_rows(out), row)


def test_broadcast_rows_rejects_multi_row_input():
    with pytest.raises(ShapeError):
        linalg.broadcast_rows(np.zeros((2, 3)), 4)


def test_shape_checks():
    with pytest.raises(ShapeError):
        linalg.hadamard(np.zeros((2, 2)), np.zeros((2, 3)))
    with pytest.raises(ShapeError):
        linalg.add_row(np.zeros((2, 3)), np.zeros((1, 2)))
    with pytest.raises(ShapeError):
        linalg.transpose(np.array([1.0, 2.0]))


def test_transpose_returns_copy():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    t = linalg.transpose(a)
    t[0, 1] = 99.0
    assert a[1, 0] == 3.0


def test_is_finite():
    assert linalg.is_finite(np.ones((2, 2)))
    assert not linalg.is_finite(np.array([[1.0, np.nan]]))
    assert not linalg.is_finite(np.ones((1, 1)), np.array([[np.inf]]))


# ---------------------------------------------------------------------------
# Random number generation
# ---------------------------------------------------------------------------

@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=2**63), st.integers(min_value=1, max_value=40),
       st.integers(min_value=1, max_value=40))
def test_chunked_draws_match_single_draw(seed, first, second):
    """Drawing in two blocks yields the same sequence as one block"""
    whole = Rng(seed).next_uint64(first + second)
    rng = Rng(seed)
    parts = np.concatenate([rng.next_uint64(first), rng.next_uint64(second)])
    assert np.array_equal(whole, parts)


def test_splitmix64_reference_values():
    """Seed 0 produces the published splitmix64 sequence"""
    draws = Rng(0).next_uint64(3)
    assert [int(v) for v in draws] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=10**9))
def test_uniform_in_unit_interval(seed):
    u = Rng(seed).uniform(64)
    assert np.all(u >= 0.0) and np.all(u < 1.0)


def test_same_seed_same_stream():
    assert np.array_equal(Rng.substream(7, "init").uniform(10), Rng.substream(7, "init").uniform(10))
    assert not np.array_equal(Rng.substream(7, "init").uniform(10), Rng.substream(7, "feedback").uniform(10))
    assert not np.array_equal(Rng.substream(7, "init").uniform(10), Rng.substream(8, "init").uniform(10))


def test_derive_seed_is_stable():
    assert derive_seed(3, "batches") == derive_seed(3, "batches")
    assert 0 <= derive_seed(3, "batches") < 2**64


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=10**9),
       st.floats(min_value=-5.0, max_value=5.0), st.floats(min_value=1e-3, max_value=5.0))
def test_rand_uniform_within_bounds(seed, lo, span):
    hi = lo + span
    values = rand_uniform(Rng(seed), 4, 5, lo, hi)
    assert values.shape == (4, 5)
    assert np.all(values >= lo) and np.all(values < hi)


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=1, max_value=200))
def test_permutation_is_a_permutation(seed, n):
    perm = Rng(seed).permutation(n)
    assert sorted(perm.tolist()) == list(range(n))


def test_rand_uniform_mean():
    values = rand_uniform(Rng(2024), 100, 100, 0.0, 1.0)
    assert abs(float(np.mean(values)) - 0.5) <= 0.02
    assert np.array_equal(values, rand_uniform(Rng(2024), 100, 100, 0.0, 1.0))


def test_rand_uniform_rejects_empty_interval():
    with pytest.raises(ParameterError):
        rand_uniform(Rng(1), 2, 2, 1.0, 1.0)


def test_rand_normal_moments():
    values = rand_normal(Rng(11), 200, 50)
    assert abs(float(np.mean(values))) < 0.05
    assert abs(float(np.std(values)) - 1.0) < 0.05
