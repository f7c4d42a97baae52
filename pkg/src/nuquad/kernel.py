"""Survey kernel selection: compiled extension when available, else Python.

Set NUQUAD_PURE_PYTHON=1 to force the fallback (used by the equivalence
tests and the benchmark).  Both implementations satisfy the contract
documented in _pykernel and must produce identical output.
"""

from __future__ import annotations

import os

from . import _pykernel

if os.environ.get("NUQUAD_PURE_PYTHON"):
    _impl = _pykernel
    COMPILED = False
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
        COMPILED = True
    except ImportError:
        _impl = _pykernel
        COMPILED = False

survey_range = _impl.survey_range
IMPLEMENTATION = "compiled" if COMPILED else "python"
