"""Kernel selection.

The compiled kernels in ``_ckernels`` are used when the extension is built;
otherwise, or when ``LINKSGOULD_KERNELS=python`` is set, the pure-Python
versions in ``_kernels`` are used.  Both produce identical results.
"""

import os

from . import _kernels

_forced = os.environ.get("LINKSGOULD_KERNELS", "").lower()

impl = _kernels
if _forced != "python":
    try:
        from . import _ckernels as impl  # type: ignore[no-redef]
    except ImportError:
        if _forced == "compiled":
            raise

NAME = impl.NAME
mul_acc = impl.mul_acc
mul_poly = impl.mul_poly
add_into = _kernels.add_into
apply_local = impl.apply_local
