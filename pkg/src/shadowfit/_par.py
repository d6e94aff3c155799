"""Optional thread fan-out for embarrassingly parallel loops.

The worker count comes from the SHADOWFIT_THREADS environment variable
(default 1, meaning plain serial execution).  Results are always returned
in input order, so enabling threads never changes any computed value,
only wall time.  The payloads here are numpy-heavy and release the GIL,
which is why threads (not processes) are enough.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("SHADOWFIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def ordered_map(fn, items):
    """Map ``fn`` over ``items`` preserving order, threaded if configured."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
