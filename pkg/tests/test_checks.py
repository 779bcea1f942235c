from __future__ import annotations

from pathlib import Path

import pytest

from nisv.checks import REGIMES, CheckError, get_check, list_checks, run_check, sweep
from nisv.cli import missing_from_registry, read_manifest
from nisv.config import Config
from nisv.errors import ConfigError
from nisv.report import to_json

MANIFEST = Path(__file__).resolve().parents[1] / "coverage_manifest.txt"

EXPECTED_IDS = {
    "COR-EQUAL", "COR-HALF", "COR-PHIDELTA", "COR-TM", "EXM-CBKB", "EXM-FM-EXACT", "EXM-INVERT",
    "EXM-S2", "KERNEL-REPRO", "LEM-GS", "LEM-HINF", "LEM-U12", "MINKERNEL", "PROP-IMAXIS",
    "PROP-L2", "PROP-PN", "PROP-POLY", "PROP-SUB", "PROP-ZW", "REM-CROFOOT", "THM-AUTO-IFF",
    "THM-CPHI-NEG", "THM-DISCRETE", "THM-FG", "THM-GENERAL", "THM-N-DISC", "THM-N-HALF",
    "THM-RATOUTER", "THM-TPSI", "UNITARY-GMR", "VMAP",
}


def test_registry_has_every_check():
    ids = [s.id for s in list_checks()]
    assert set(ids) == EXPECTED_IDS and ids == sorted(ids)
    for s in list_checks():
        assert s.regime in REGIMES and s.statement and s.description


def test_manifest_and_registry_cover_each_other():
    manifest = read_manifest(MANIFEST)
    assert missing_from_registry(manifest) == []
    named = {i for ids in manifest.values() for i in ids}
    assert named == EXPECTED_IDS


def test_manifest_errors(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("a: NOT-A-CHECK\n")
    assert missing_from_registry(read_manifest(p)) == ["NOT-A-CHECK"]
    p.write_text("no colon here\n")
    with pytest.raises(ConfigError):
        read_manifest(p)
    with pytest.raises(ConfigError):
        read_manifest(tmp_path / "absent.txt")


@pytest.mark.parametrize("check_id", ["KERNEL-REPRO", "EXM-CBKB", "THM-N-DISC"])
def test_reports_are_byte_identical_on_rerun(check_id):
    assert to_json([run_check(check_id)]) == to_json([run_check(check_id)])


def test_timing_is_recorded_only_on_request():
    assert run_check("KERNEL-REPRO").runtime_ms == 0.0
    assert run_check("KERNEL-REPRO", config=Config(record_timing=True)).runtime_ms > 0


def test_parameters_are_resolved_against_defaults():
    spec = get_check("THM-FG")
    assert spec.resolve({"theta_degree": "2"})["theta_degree"] == 2
    with pytest.raises(CheckError):
        spec.resolve({"colour": "red"})


@pytest.mark.parametrize(
    "check_id,params",
    [("NOT-A-CHECK", None), ("THM-FG", {"theta_degree": "x"}), ("KERNEL-REPRO", {"f": "s+"}), ("THM-FG", {"theta_degree": 0})],
)
def test_bad_requests_raise(check_id, params):
    with pytest.raises(CheckError):
        run_check(check_id, params)


def test_non_inner_multiplier_fails_the_rational_model_space_check():
    r = run_check("REM-CROFOOT", {"k": "1+z/3"})
    assert not r.passed


@pytest.mark.parametrize("values", [[64], [128, 64], [64, 64]])
def test_sweep_rejects_bad_sequences(values):
    with pytest.raises(ConfigError):
        sweep("EXM-CBKB", None, "order", values)


def test_sweep_rejects_unknown_axes():
    with pytest.raises(ConfigError):
        sweep("EXM-CBKB", None, "delta", [1, 2])


def test_order_sweep_of_an_exact_check_stays_at_rounding_level():
    res = sweep("EXM-CBKB", None, "order", [64, 128, 256])
    assert res.monotone and res.watched in res.reports[0].defects
    assert [r.order for r in res.reports] == [64, 128, 256]
