"""Backend selection for the enumeration core.

The compiled extension is picked at import when present (set ABSOPT_DISABLE_EXT
to force the pure path).  Dispatch is additionally per call: an instance runs
compiled only when its variable count and exact weight magnitudes are known to
fit 64-bit arithmetic, so oversized weights silently take the pure path and
stay exact.
"""

from __future__ import annotations

import os

from . import _engine_py as _pure

_compiled = None
if not os.environ.get("ABSOPT_DISABLE_EXT"):
    try:
        from . import _engine as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"

_CMP_CODES = {"atleast": 0, "exact": 1, "atmost": 2}

# Conservative 64-bit safety margin: every partial sum the search forms is
# bounded by the total absolute weight, and targets are compared directly.
_I64_SAFE = 1 << 62


def _fits_compiled(num_vars: int, clauses, alpha: int) -> bool:
    if num_vars > 62:
        return False
    total = 0
    for _pos, _neg, wt in clauses:
        total += wt if wt >= 0 else -wt
    return total < _I64_SAFE and alpha < _I64_SAFE


def decide(num_vars, clauses, *, dnf, alpha, absolute, comparison):
    """(found, witness_mask, value) for the first qualifying assignment."""
    if comparison not in _CMP_CODES:
        raise ValueError(f"unknown comparison {comparison!r}")
    if _compiled is not None and _fits_compiled(num_vars, clauses, alpha):
        return _compiled.decide(
            num_vars, list(clauses), dnf=dnf, alpha=alpha, absolute=absolute,
            cmp_code=_CMP_CODES[comparison],
        )
    return _pure.decide(
        num_vars, clauses, dnf=dnf, alpha=alpha, absolute=absolute, comparison=comparison
    )


def extremes(num_vars, clauses, *, dnf):
    """(max, argmax_mask, min, argmin_mask) over all assignments."""
    if _compiled is not None and _fits_compiled(num_vars, clauses, 0):
        return _compiled.extremes(num_vars, list(clauses), dnf=dnf)
    return _pure.extremes(num_vars, clauses, dnf=dnf)
