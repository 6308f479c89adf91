"""Grid-kernel backend selection.

Prefers the compiled extension, falls back to the NumPy implementation.
Set CAUSALTRUST_KERNELS=python or =cython to force a backend; forcing
cython raises if the extension is missing rather than silently degrading.
"""

from __future__ import annotations

import os

from causaltrust._kernels import pyfallback

_FORCED = os.environ.get("CAUSALTRUST_KERNELS", "").strip().lower()

if _FORCED == "python":
    _impl = pyfallback
    BACKEND = "python"
elif _FORCED == "cython":
    from causaltrust._kernels import _gridkernels as _impl  # type: ignore[no-redef]

    BACKEND = "cython"
elif _FORCED == "":
    try:
        from causaltrust._kernels import _gridkernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = pyfallback
        BACKEND = "python"
else:
    raise RuntimeError(
        f"CAUSALTRUST_KERNELS must be 'python' or 'cython', got {_FORCED!r}"
    )

normalize = _impl.normalize
smooth = _impl.smooth
entropy = _impl.entropy
kl = _impl.kl
fuse = _impl.fuse

__all__ = ["BACKEND", "normalize", "smooth", "entropy", "kl", "fuse", "pyfallback"]
