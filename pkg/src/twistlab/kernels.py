"""Backend selection for the word kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over. Set ``TWISTLAB_KERNEL=python`` to force the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from twistlab import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from twistlab import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _kernels


_compiled = _load_compiled()
_active: ModuleType = _pykernels

reduce_letters = _pykernels.reduce_letters
substitute = _pykernels.substitute
compose_images = _pykernels.compose_images


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _compiled is not None else [])


def backend() -> str:
    return "compiled" if _active is _compiled and _compiled is not None else "python"


def use_backend(name: str) -> None:
    """Switch every kernel entry point to ``"python"`` or ``"compiled"``."""
    global _active, reduce_letters, substitute, compose_images
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        module = _compiled
    elif name == "python":
        module = _pykernels
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    _active = module
    reduce_letters = module.reduce_letters
    substitute = module.substitute
    compose_images = module.compose_images


_requested = os.environ.get("TWISTLAB_KERNEL", "auto")
if _requested == "python" or _compiled is None:
    use_backend("python")
else:
    use_backend("compiled")
