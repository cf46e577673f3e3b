"""Shared plumbing: size caps and the deterministic parallel-map contract."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

DEFAULT_NCAP = 8
HARD_NCAP = 16


class CapExceeded(ValueError):
    """A ground-set or flag-enumeration size cap was exceeded."""


class NonGenericVector(ValueError):
    """A displacement vector failed the genericity test."""


def effective_ncap() -> int:
    """Cap for braid-fan sizes: GW_NCAP env override, hard max 16."""
    raw = os.environ.get("GW_NCAP")
    if raw is None:
        return DEFAULT_NCAP
    try:
        cap = int(raw)
    except ValueError:
        raise CapExceeded(f"GW_NCAP must be an integer, got {raw!r}")
    if cap < 2 or cap > HARD_NCAP:
        raise CapExceeded(f"GW_NCAP must be in [2, {HARD_NCAP}], got {cap}")
    return cap


def pmap(fn, items, jobs=1):
    """Map fn over items, results in input order.

    With jobs > 1 the work is farmed to a thread pool; all inputs are
    immutable and fn must be pure, so the result list is identical for
    every jobs value.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
