"""Kernel backend selection.

Imports either the compiled kernels (``_kernels``, built from Cython) or the
pure-Python fallback (``_pure``) and re-exports a single uniform surface.
Selection order:

* ``UNSTABLE_EXT_BACKEND=pure``    force the pure-Python kernels;
* ``UNSTABLE_EXT_BACKEND=native``  require the compiled kernels (ImportError
  if the extension was not built);
* unset or ``auto``                compiled if available, else pure.

Both backends are bit-identical by contract, so everything above this module
is backend-agnostic.
"""

from __future__ import annotations

import os

_choice = os.environ.get("UNSTABLE_EXT_BACKEND", "auto").strip().lower()

if _choice == "pure":
    from unstable_ext import _pure as _impl
elif _choice == "native":
    from unstable_ext import _kernels as _impl  # type: ignore[no-redef]
elif _choice == "auto" or _choice == "":
    try:
        from unstable_ext import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from unstable_ext import _pure as _impl
else:
    raise ImportError(
        f"UNSTABLE_EXT_BACKEND={_choice!r} not recognized; "
        "use 'auto', 'pure', or 'native'"
    )

BACKEND_NAME: str = _impl.BACKEND_NAME
binom2 = _impl.binom2
adem_reduce_word = _impl.adem_reduce_word
lambda_reduce_word = _impl.lambda_reduce_word
rref_bits = _impl.rref_bits
clear_caches = _impl.clear_caches
