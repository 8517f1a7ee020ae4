"""Python bindings for the qle core library."""

from ._qle import *  # noqa: F401,F403
from ._qle import QleError, __doc__  # noqa: F401
