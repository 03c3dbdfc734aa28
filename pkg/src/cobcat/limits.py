"""Shared resource-ceiling plumbing.

Long-running enumerations (nerve cells, equivalence searches) refuse to grow
past a configurable ceiling instead of exhausting memory.  The CLI maps
:class:`ResourceLimitExceeded` to exit code 2.
"""

from __future__ import annotations

import os

DEFAULT_MAX_CELLS = 10**6
MAX_CELLS_ENV = "COBCAT_MAX_CELLS"


class ResourceLimitExceeded(RuntimeError):
    """An enumeration hit its configured ceiling before finishing."""


def max_cells_default() -> int:
    """Cell ceiling from the environment, or the built-in default.

    A malformed value is ignored rather than turned into a crash at import
    time; the CLI flag still overrides whatever this returns.
    """
    raw = os.environ.get(MAX_CELLS_ENV)
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_CELLS
    return value if value > 0 else DEFAULT_MAX_CELLS
