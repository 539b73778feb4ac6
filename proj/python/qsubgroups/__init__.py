"""Python front end for the qsg library.

Every subcommand of the ``qsg`` executable is available through :func:`run`,
which takes the same JSON problem spec as ``qsg <command> --spec``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from . import _core
from ._core import InvalidTwist, ParseError, cartan_matrix, kernel_mod, positive_roots, smith_normal_form

__all__ = [
    "Result",
    "OK",
    "VALIDATION_FAILURE",
    "GUARD_FAILURE",
    "PARSE_FAILURE",
    "run",
    "validate_phi",
    "kernel",
    "datum",
    "enumerate_triples",
    "paper_examples",
    "twist_table",
    "cartan_matrix",
    "positive_roots",
    "smith_normal_form",
    "kernel_mod",
    "ParseError",
    "InvalidTwist",
]

OK, VALIDATION_FAILURE, GUARD_FAILURE, PARSE_FAILURE = 0, 1, 2, 3


@dataclass
class Result:
    exit_code: int
    reports: list[dict[str, Any]] = field(default_factory=list)
    text: str = ""

    @property
    def ok(self) -> bool:
        return self.exit_code == OK

    @property
    def results(self) -> dict[str, Any]:
        """`results` of the last report."""
        return self.reports[-1].get("results", {}) if self.reports else {}


def run(command: str, spec: Optional[dict[str, Any]] = None, cap: Optional[int] = None, **fields: Any) -> Result:
    """Run `command` on `spec`; keyword fields override spec keys."""
    merged = dict(spec or {})
    merged.update(fields)
    code, lines, text = _core.run_command(command, json.dumps(merged), cap)
    return Result(code, [json.loads(line) for line in lines], text)


def validate_phi(**spec: Any) -> Result:
    return run("validate-phi", spec)


def kernel(**spec: Any) -> Result:
    return run("kernel", spec)


def datum(**spec: Any) -> Result:
    return run("datum", spec)


def enumerate_triples(cap: Optional[int] = None, **spec: Any) -> Result:
    return run("enumerate", spec, cap=cap)


def paper_examples(**spec: Any) -> Result:
    return run("paper-examples", spec)


def twist_table(cap: Optional[int] = None, **spec: Any) -> Result:
    return run("twist-table", spec, cap=cap)
