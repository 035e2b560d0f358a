"""Import-time choice between the compiled kernel and the Python fallback."""
from __future__ import annotations

from types import ModuleType

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

_KERNELS = {"python": _pykernel}
if _ckernel is not None:
    _KERNELS["cython"] = _ckernel

kernel: ModuleType = _ckernel if _ckernel is not None else _pykernel
name: str = "cython" if _ckernel is not None else "python"


def available() -> list[str]:
    return sorted(_KERNELS)


def use(backend: str) -> None:
    """Switch the active kernel ("cython" or "python") for the whole package."""
    global kernel, name
    try:
        kernel = _KERNELS[backend]
    except KeyError:
        raise ValueError(f"backend {backend!r} not available; have {available()}") from None
    name = backend
