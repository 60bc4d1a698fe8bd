"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CATGALOIS_PURE_PYTHON=1`` to force the fallback (used by the parity
tests and the benchmark).
"""

import os

from . import _kernels_py as py_backend

compiled_backend = None
if os.environ.get("CATGALOIS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else py_backend
BACKEND_NAME = "compiled" if compiled_backend is not None else "python"

check_associative = backend.check_associative
saturate = backend.saturate
congruence = backend.congruence
extend_hom = backend.extend_hom
canonical_form = backend.canonical_form
enumerate_loops = backend.enumerate_loops
