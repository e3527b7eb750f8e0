"""Backend selection for the sampling kernels.

The compiled extension is used when it was built; set ``DIRACLOGIC_PURE_PYTHON=1``
to force the numpy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
sample_sum = _kernels_py.sample_sum
panel_integrals = _kernels_py.panel_integrals

if not os.environ.get("DIRACLOGIC_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        sample_sum = _ckernels.sample_sum
        panel_integrals = _ckernels.panel_integrals
