"""Run-wide limits for the exact engines.

The caps exist to turn runaway computations into loud errors instead of
silent multi-hour runs.  Both can be raised per call; the completion cap
can also be raised through the ``DIFFSEQ_DEGREE_CAP`` environment variable.
"""

import os

EXPONENT_CAP = 32
DEGREE_CAP_DEFAULT = 12
DEGREE_CAP_ENV = "DIFFSEQ_DEGREE_CAP"


class DegreeCapExceeded(RuntimeError):
    """A basis completion needed S-pairs above the configured degree cap."""


class ExponentCapExceeded(RuntimeError):
    """A single exponent exceeded the per-variable cap (runaway product)."""


def degree_cap(override=None):
    """Effective completion cap: explicit override, else env var, else default."""
    if override is not None:
        return int(override)
    env = os.environ.get(DEGREE_CAP_ENV)
    if env is not None:
        return int(env)
    return DEGREE_CAP_DEFAULT
