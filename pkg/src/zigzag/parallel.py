"""Process-level parallelism for batch runs.

The degree is read from ``ZIGZAG_JOBS`` (default: number of available cores);
``ZIGZAG_JOBS=1`` runs everything in-process.
"""

import os
from concurrent.futures import ProcessPoolExecutor

ENV_VAR = "ZIGZAG_JOBS"


def jobs() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def pmap(fn, items, n_jobs=None):
    """Ordered ``map`` over a process pool; falls back to serial for one job."""
    items = list(items)
    n = jobs() if n_jobs is None else n_jobs
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as ex:
        return list(ex.map(fn, items))
