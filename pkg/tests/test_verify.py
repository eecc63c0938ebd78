from __future__ import annotations

import math

import pytest

from essnorm import run_verification


def _by_name(rows):
    return {r.name: r for r in rows}


def test_default_suite_all_pass():
    rows = run_verification()
    assert rows
    assert all(r.passed for r in rows)


def test_bump_rows_closed_forms():
    rows = _by_name(run_verification(tau0=2.0))
    assert rows["bump_mass"].closed_form == 1.0
    assert rows["bump_gradient_sq"].closed_form == pytest.approx(2 / (math.pi * 16))
    assert rows["bump_ratio"].closed_form == pytest.approx(4 * math.sqrt(math.pi / 2))
    for name in ("bump_mass", "bump_gradient_sq", "bump_ratio"):
        assert rows[name].abs_error <= 1e-8 * max(1.0, abs(rows[name].closed_form))


def test_probe_rows_closed_forms():
    r0, eps1 = 0.5, 0.1
    rows = _by_name(run_verification(r0=r0, eps1=eps1))
    for j in (1, 2, 3):
        row = rows[f"probe_norm_sq_j{j}"]
        assert row.closed_form == pytest.approx((math.pi - eps1) * r0 ** (2.0 ** (-2 * j)))
        assert row.passed


def test_probe_rows_overflow_guard():
    with pytest.raises(ValueError):
        run_verification(j_values=(5,))
    rows = run_verification(j_values=(4,))
    assert all(r.passed for r in rows)


def test_negative_control_detects_perturbation():
    rows = _by_name(run_verification())
    assert rows["negative_control"].passed


def test_row_json_shape():
    row = run_verification()[0]
    d = row.to_json_dict()
    assert set(d) == {"name", "closed_form", "computed", "abs_error", "passed"}


def test_eps1_validation():
    with pytest.raises(ValueError):
        run_verification(eps1=4.0)
