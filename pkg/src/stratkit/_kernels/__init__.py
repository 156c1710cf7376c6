"""Kernel selection: compiled union-find when built, pure Python otherwise.

Set ``STRATKIT_PURE=1`` to force the fallback (used by the benchmark and
to exercise both code paths in the tests).
"""

import os

if os.environ.get("STRATKIT_PURE"):
    from .fallback import IMPLEMENTATION, UnionFind
else:
    try:
        from ._fastcore import IMPLEMENTATION, UnionFind
    except ImportError:
        from .fallback import IMPLEMENTATION, UnionFind

__all__ = ["UnionFind", "IMPLEMENTATION"]
