"""Exact 5'-3' distance distributions of RNA secondary structures."""

try:
    from . import _core as _impl
    from ._core import *  # noqa: F401,F403
except ImportError:  # extension built out-of-tree and put on PYTHONPATH
    import _core as _impl
    from _core import *  # noqa: F401,F403

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "1.0.0"
