"""Three-way (accept / reject / agnostic) tests of pragmatic hypotheses."""

import json

from ._core import *  # noqa: F401,F403
from ._core import ReactError, run_cli as _run_cli


def cli(*args):
    """Run the command-line interface in-process. Returns (exit_code, stdout, stderr)."""
    return _run_cli([str(a) for a in args])


def cli_json(*args):
    code, out, err = cli(*args)
    if code != 0:
        raise ReactError(err.strip())
    return json.loads(out)
