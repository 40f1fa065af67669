"""Each documented divergence must reproduce: printed form fails, shipped form matches."""

import math
import sys

import pytest

from qwalk1d import (
    RECORDS,
    check_records,
    emit_errata,
    run_verification,
)
from qwalk1d.errata import (
    balanced_first_moment_values,
    duplicated_factor_values,
    quartic_centre_values,
    shift_walk_odd_values,
)


def test_quartic_centre_row_diverges():
    printed, resolved = quartic_centre_values()
    assert printed == 19  # fails the unit-coin row sum, which must be 1
    assert resolved == 1


def test_odd_density_coefficients_diverge():
    printed, true_odd, true_rho = shift_walk_odd_values()
    assert abs(printed - 1.5) < 1e-12
    assert abs(true_odd - 0.5) < 1e-12
    assert abs(true_rho - 1.0) < 1e-12
    # The printed odd part alone exceeds the site's entire probability.
    assert printed > true_rho


def test_odd_moment_alpha_sign_diverges():
    printed, resolved, oracle = balanced_first_moment_values()
    assert abs(printed + 1.0) < 1e-12
    assert abs(resolved - 1.0) < 1e-12
    assert abs(oracle - 1.0) < 1e-12


def test_duplicated_trailing_factor_diverges():
    printed, oracle = duplicated_factor_values()
    assert abs(printed + 0.5) < 1e-12
    assert abs(oracle + 1.0 / math.sqrt(2.0)) < 1e-12


def test_records_and_tests_form_bijection():
    module = sys.modules[__name__]
    names = set()
    for rec in RECORDS:
        path, _, func = rec.test_id.partition("::")
        assert path == "tests/test_errata.py"
        assert hasattr(module, func), f"missing test function for {rec.key}"
        names.add(func)
    assert len(names) == len(RECORDS)


def test_all_witnesses_reproduce():
    status = check_records()
    assert set(status) == {r.key for r in RECORDS}
    assert all(status.values())


def test_emit_errata_covers_every_record(tmp_path):
    out = tmp_path / "docs" / "ERRATA.md"
    text = emit_errata(out)
    assert out.read_text() == text
    for rec in RECORDS:
        assert rec.key in text
        assert rec.test_id in text
    assert not list(tmp_path.glob("docs/*.tmp"))


def test_emit_errata_refuses_broken_witness(monkeypatch):
    import qwalk1d.errata as errata

    monkeypatch.setattr(
        errata, "check_records", lambda: {r.key: False for r in RECORDS}
    )
    with pytest.raises(RuntimeError):
        errata.emit_errata()


def test_verification_report_lists_divergences():
    report = run_verification(t_max=8, n_specs=3, seed=1, paper_signs=True)
    keys = {d["key"] for d in report["documented_divergences"]}
    assert keys == {r.key for r in RECORDS}
    assert all(d["reproduced"] for d in report["documented_divergences"])
    by_key = {d["key"]: d for d in report["documented_divergences"]}
    detail = by_key["odd-density-coefficients"]
    assert abs(detail["printed_odd_part_at_x1"] - 1.5) < 1e-12
    assert report["passed"]
