"""Level-set geometry of Holder functions on self-similar sets.

Thin wrapper over the compiled `_core` extension.  When installed via pip the
extension lives inside this package; in a plain CMake build it sits next to
the package on PYTHONPATH, so fall back to a top-level import.
"""

try:
    from . import _core
except ImportError:  # CMake build: extension is a sibling, not a submodule
    import _core

globals().update(
    {name: getattr(_core, name) for name in dir(_core) if not name.startswith("_")}
)

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "1.0.0"
