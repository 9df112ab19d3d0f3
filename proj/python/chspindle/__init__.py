"""Cahn-Hilliard dynamics on model spindle surfaces with two conical tips."""

import json as _json

from ._chspindle import (
    Discretization,
    SpindleGeometry,
    build_spindle,
    energy,
    fit_tip_exponent,
    gamma_window,
    make_discretization,
    make_initial,
    mass,
    mellin_norm,
    reference_dt,
    simulate,
    tip_closure_residual,
)
from ._chspindle import indicial_report_json as _indicial_report_json
from ._chspindle import verify_suite_json as _verify_suite_json


def indicial_report(n, cross_section="circle", alpha=1.0, gamma=0.0, truncation=8):
    """Indicial roots, admissible weight window, and asymptotics data as a dict."""
    return _json.loads(_indicial_report_json(n, cross_section, alpha, gamma, truncation))


def verify():
    """Run the full oracle suite; returns the report as a dict."""
    return _json.loads(_verify_suite_json())


__all__ = [
    "Discretization",
    "SpindleGeometry",
    "build_spindle",
    "energy",
    "fit_tip_exponent",
    "gamma_window",
    "indicial_report",
    "make_discretization",
    "make_initial",
    "mass",
    "mellin_norm",
    "reference_dt",
    "simulate",
    "tip_closure_residual",
    "verify",
]
