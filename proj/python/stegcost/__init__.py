"""Steganographic-cost laboratory: covert-channel methods over simulated carriers."""

try:
    from ._stegcost import *  # installed-wheel layout
    from . import _stegcost as _impl
except ImportError:  # build-tree layout: extension sits next to the package dir
    from _stegcost import *
    import _stegcost as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
