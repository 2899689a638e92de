"""Polynomial linear system solving with errors.

Instances, evaluation tables, solutions and reports are plain dicts with the
same layout as the command-line tool's JSON files.
"""

import json

from ._core import (
    DegreeContext,
    PlsweError,
    delta,
    eval_count,
    l_glz,
    l_kpsw,
    linear_counts,
    stop_ceiling,
)
from . import _core

__all__ = [
    "DegreeContext",
    "PlsweError",
    "cli",
    "decode",
    "delta",
    "early_terminate",
    "eval_count",
    "evaluate",
    "generate_instance",
    "l_glz",
    "l_kpsw",
    "linear_counts",
    "montecarlo",
    "solve",
    "stop_ceiling",
]


def generate_instance(q, n=1, degA=1, degb=0, seed=0):
    """Random nonsingular instance with its certified solution under "truth"."""
    return json.loads(_core._generate(q, n, degA, degb, seed))


def solve(instance):
    """Error-free reference solution {"v": [...], "d": [...]}."""
    return json.loads(_core._solve(json.dumps(instance)))


def evaluate(instance, points, errors=(), seed=0):
    """Evaluation table at the given points; 0-based positions in `errors`
    get uniformly random columns."""
    return json.loads(_core._evaluate(json.dumps(instance), list(points), list(errors), seed))


def decode(table, nu, theta):
    """Solve the key equations with parameters (nu, theta) and reconstruct."""
    return json.loads(_core._decode(json.dumps(table), nu, theta))


def early_terminate(instance, mode="alg1", tau=None, rho=None, strategy="exhaustive", errors=(), seed=0):
    """Run an early-termination driver on sequential points; 0-based positions
    in `errors` always carry a wrong value."""
    return json.loads(
        _core._early_terminate(json.dumps(instance), mode, tau, rho, strategy, list(errors), seed)
    )


def cli(*args):
    """Run the command-line tool in-process: (exit code, stdout, stderr)."""
    return _core._cli([str(a) for a in args])


def montecarlo(experiment="structure", **spec):
    """Monte-Carlo experiment; keyword names follow the tool's flags with
    dashes as underscores. Returns the report dict and the exit code."""
    args = ["montecarlo", "--experiment", experiment]
    for key, value in spec.items():
        args += ["--" + key.replace("_", "-"), str(value)]
    code, out, err = cli(*args)
    if code == 1:
        raise PlsweError(err.strip())
    return json.loads(out), code
