"""Python front-end for the latent effect interpreter."""

import json

from ._latent import ConfigError, EvalError, ParseError, parse, parse_pipeline, run_json

__all__ = ["ConfigError", "EvalError", "ParseError", "parse", "parse_pipeline", "run", "run_json"]


def run(source, pipeline, strategy="cbv", with_probe=False):
    """Run a program and return its report as a dict.

    With ``with_probe`` the result is ``(report, max_thunk_runs)``.
    """
    text, runs = run_json(source, pipeline, strategy)
    report = json.loads(text)
    return (report, runs) if with_probe else report
