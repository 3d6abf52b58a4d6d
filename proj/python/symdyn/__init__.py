"""Symbolic dynamics of coupled-expanding interval and circle maps."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import SymdynError, TransitionMatrix, __version__  # noqa: F401
from ._core import _matrix_report_json, _run_analysis_json


def run_analysis(config):
    """Run the full pipeline on a config dict and return the report dict."""
    return _json.loads(_run_analysis_json(_json.dumps(config)))


def matrix_report(rows, n_words=10):
    """Spectral and graph facts for a 0/1 matrix given as nested lists."""
    return _json.loads(_matrix_report_json(TransitionMatrix(rows), n_words))
