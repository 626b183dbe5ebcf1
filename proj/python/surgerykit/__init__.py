"""Knot diagrams, Dehn surgery and level-set surgery from Python."""

import json as _json

from ._core import (
    LinkDiagram,
    ParseError,
    SurgeryError,
    group_order,
    h1,
    level_set,
    presentation,
    surface_surgery,
)
from ._core import run_script as _run_script

__all__ = [
    "LinkDiagram",
    "ParseError",
    "SurgeryError",
    "group_order",
    "h1",
    "level_set",
    "presentation",
    "run",
    "surface_surgery",
]


def run(source, **options):
    """Run a script and return the report as a dict."""
    return _json.loads(_run_script(source, **options))
