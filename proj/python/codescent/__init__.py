"""Exact codescent order valuations, invariants and asymptotic fits.

Polynomials are coefficient lists, constant term first. A module is
``Module(ell, free_rank, torsion)`` where each torsion entry is either an
int ``m`` for L/(l^m) or the coefficient list of a distinguished polynomial.
"""

import json as _json

from ._codescent import (
    SCHEMA_VERSION,
    AmbiguousFit,
    CapExceeded,
    Descent,
    Error,
    FitResult,
    InputError,
    Module,
    ParamTriple,
    ParseError,
    Scenario,
    ScenarioSpec,
    VerificationReport,
    builtin_scenario_names,
    classify_case,
    enumeration_oracle,
    fit,
    is_distinguished,
    is_prime,
    kappa,
    minimal_level,
    mirror_check,
    omega,
    omega_rel,
    order_sequence,
    order_valuation,
    parse_scenario,
    predict,
    quotient_group,
    run_command,
    scenario,
    serialize_scenario,
    structural_invariants,
    validate_descent,
    verify,
)


def run_json(args, stdin=""):
    """Runs the command line with --json and returns (exit_code, report)."""
    code, out, _ = run_command(["--json", *args], stdin)
    return code, _json.loads(out)


__version__ = "0.1.0"
