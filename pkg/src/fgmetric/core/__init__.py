"""Kernel selection: compiled extension when available, pure Python otherwise.

Set FGMETRIC_PURE=1 to force the pure lane (used by the parity tests and
the benchmark).
"""

import os

from . import _purekernel

if os.environ.get("FGMETRIC_PURE") == "1":
    kernel = _purekernel
else:
    try:
        from . import _speedups as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = _purekernel

pure_kernel = _purekernel

search = kernel.search
replay_path = kernel.replay_path
canonical_cyclic = kernel.canonical_cyclic
cyclic_length = kernel.cyclic_length
graev_dp = kernel.graev_dp
IMPLEMENTATION = kernel.IMPLEMENTATION
SearchResult = _purekernel.SearchResult
pair_list = _purekernel._pair_list
