"""Enumeration budget handling.

Exhaustive loops (codeword enumeration, monomial tables, privacy audits)
are guarded by a budget on the number of enumerated objects.  Each call
site has its own default; the HSS_ENUM_BUDGET environment variable, when
set, overrides every default at once.
"""

import os

ENV_VAR = "HSS_ENUM_BUDGET"

LABELWEIGHT_BUDGET = 2**24
MONOMIAL_BUDGET = 2**22
PRIVACY_BUDGET = 2**20


def effective_budget(default: int) -> int:
    """Return the budget to enforce: the env override if set, else `default`."""
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be positive, got {value}")
    return value
