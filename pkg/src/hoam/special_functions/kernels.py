"""Kernel backend selection.

The compiled extension is used when it was built; set ``HOAM_PURE_PYTHON=1``
to force the Python fallback.  ``BACKEND`` records the choice.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
if os.environ.get("HOAM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"

hex_lattice_sums = _active.hex_lattice_sums
divisor_power_table = _active.divisor_power_table
eta_product_coefficients = _active.eta_product_coefficients
