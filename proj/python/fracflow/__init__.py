"""Time-fractional gradient flow solvers on non-uniform time partitions.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__  # noqa: F401
except ImportError:  # in-tree builds place _core next to the package on sys.path
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
