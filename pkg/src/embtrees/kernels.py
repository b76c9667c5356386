"""Kernel selection: compiled extension when built, pure Python otherwise.

Set ``EMBTREES_PURE=1`` to force the pure backend (used by the benchmark and
to test the fallback path).
"""

import os

if os.environ.get("EMBTREES_PURE", "") not in ("", "0"):
    from . import _fallback as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

COMPILED = _impl.COMPILED
BACKEND = "compiled" if COMPILED else "pure"

poly_mul = _impl.poly_mul
poly_mul_trunc = _impl.poly_mul_trunc
conv_at = _impl.conv_at
uconv_at = _impl.uconv_at
plane_walk_labels = _impl.plane_walk_labels
remy_labels = _impl.remy_labels
