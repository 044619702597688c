import pytest

from rsfade.verify import SUITES, CheckResult, matrix_checks, operator_errors, run_all


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    results = SUITES[name]()
    assert results
    assert all(r.suite == name for r in results)
    failed = [r.line() for r in results if not r.passed]
    assert not failed


def test_run_all_selects_suites():
    results = run_all(["matrix"])
    assert {r.suite for r in results} == {"matrix"}


def test_check_line_format():
    assert CheckResult("s", "n", True).line() == "[PASS] s: n"
    assert CheckResult("s", "n", False, "why").line() == "[FAIL] s: n (why)"


def test_matrix_checks_keys():
    assert set(matrix_checks(0.5, 1.5, 8)) == {
        "symmetric", "strictly diagonally dominant", "positive definite",
        "||(I+D)^-1||_2 <= 1", "||(I+D)^-1 (I-D)||_2 <= 1",
    }


def test_operator_max_norm_boundary_layer():
    # for large orders the max-norm error is dominated by the first nodes and
    # converges more slowly than the interior error
    import math

    e1 = operator_errors(1.8, 64)[0]
    e2 = operator_errors(1.8, 128)[0]
    mid1 = operator_errors(1.8, 64, midpoint=True)[0]
    mid2 = operator_errors(1.8, 128, midpoint=True)[0]
    assert math.log2(e1 / e2) < 1.8
    assert 1.8 <= math.log2(mid1 / mid2) <= 2.2
