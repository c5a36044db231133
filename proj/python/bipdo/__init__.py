"""Bilinear pseudodifferential operators on periodic grids."""

import json as _json

from ._bipdo import (  # noqa: F401
    ParseError,
    ValidationError,
    adjoint_angle,
    adjoint_exact,
    apply_bilinear,
    apply_linear,
    builtin,
    differentiate,
    evaluate,
    grid_points,
    inverse_transform,
    lebesgue_norm,
    modulation_norm,
    parse,
    run_cli,
    sample_function,
    sample_symbol,
    sobolev_norm,
    transform,
)
from . import _bipdo

__version__ = "0.1.0"


def check_class(symbol, variant, m1=0.0, m2=0.0, theta=0.0, order=2, n=32, **kw):
    return _json.loads(_bipdo.check_class_json(symbol, variant, m1, m2, theta, order, n, **kw))


def adjoint_expansion(symbol, which, terms):
    return _json.loads(_bipdo.adjoint_expansion_json(symbol, which, terms))


def compose_right_expansion(symbol, tau1, tau2, n_terms, p_terms):
    return _json.loads(_bipdo.compose_right_expansion_json(symbol, tau1, tau2, n_terms, p_terms))


def compose_left_expansion(tau, symbol, n_terms):
    return _json.loads(_bipdo.compose_left_expansion_json(tau, symbol, n_terms))


def identity_suite(symbol="1", n=32, seed=42, **kw):
    return _json.loads(_bipdo.identity_suite_json(symbol, n, seed, **kw))


def boundedness_study(symbol, **kw):
    return _json.loads(_bipdo.boundedness_study_json(symbol, **kw))
