"""
Tests for the finite-difference gradient check.
"""
import numpy as np
import pytest

from src.models.exceptions import ParameterError
from src.training.gradcheck import gradcheck, relative_error


def test_vbp_matches_finite_differences():
    report = gradcheck(seed=0)
    assert report.passed, report.summary()
    assert report.max_rel_err <= 1e-6
    assert [e.name for e in report.entries] == ["W1", "b1", "W2", "b2"]
    assert report.summary().startswith("PASS max_rel_err=")


@pytest.mark.parametrize("seed", [1, 9, 123])
def test_other_seeds_pass_and_repeat(seed):
    first = gradcheck(seed=seed)
    assert first.passed
    assert gradcheck(seed=seed).summary() == first.summary()


def test_corrupted_update_fails():
    report = gradcheck(seed=0, corrupt_layer=0)
    assert not report.passed
    assert report.summary().startswith("FAIL")
    worst = max(report.entries, key=lambda e: e.max_rel_err)
    assert worst.name == "W1"


def test_coarse_step_is_still_reported():
    report = gradcheck(seed=0, h=1e-3)
    assert report.step == 1e-3
    assert report.max_rel_err > gradcheck(seed=0).max_rel_err
    assert np.isfinite(report.max_rel_err)


def test_invalid_arguments():
    with pytest.raises(ParameterError):
        gradcheck(h=0.0)
    with pytest.raises(ParameterError):
        gradcheck(corrupt_layer=5)


def test_relative_error_uses_floor():
    rel = relative_error(np.array([[0.0, 1.0]]), np.array([[1e-6, 1.1]]))
    np.testing.assert_allclose(rel, [[1e-2, 0.1 / 1.1]])
