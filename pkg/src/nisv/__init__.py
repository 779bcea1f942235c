"""Numerical verification of subspace identities in Hardy spaces of the disc and the half-plane."""

from .checks import list_checks, run_check, sweep
from .config import Config, load_config
from .report import CheckReport, emit_report

__all__ = ["CheckReport", "Config", "emit_report", "list_checks", "load_config", "run_check", "sweep"]
