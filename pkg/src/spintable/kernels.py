"""Backend selection for the belief-propagation kernel.

The compiled extension is preferred when it imported cleanly; the NumPy
fallback is always available.  Set SPINTABLE_BACKEND=python (or =compiled)
to force a choice process-wide; per-call overrides go through get_backend.
"""

import os

from . import _kernels_py

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None

_BACKENDS = {"python": _kernels_py}
if _kernels is not None:
    _BACKENDS["compiled"] = _kernels


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_backend(name: str):
    if name not in _BACKENDS:
        raise ValueError(
            f"backend {name!r} not available here (have: {', '.join(available_backends())})"
        )
    return _BACKENDS[name]


def default_backend():
    forced = os.environ.get("SPINTABLE_BACKEND")
    if forced:
        return get_backend(forced)
    return _BACKENDS.get("compiled", _kernels_py)


def default_backend_name() -> str:
    return default_backend().NAME
