"""Resource caps shared by the search kernels."""

from __future__ import annotations

import contextlib
import os
import warnings
from dataclasses import dataclass, replace

from .errors import CapExceeded

HARD_MAX_DIRECT_DEGREE = 12


@dataclass(frozen=True)
class Caps:
    max_direct_degree: int = 8
    max_hol_order: int = 24  # order of N, not of Hol(N)
    max_group_order: int = 63

    def check_direct(self, degree: int) -> None:
        limit = min(self.max_direct_degree, HARD_MAX_DIRECT_DEGREE)
        if degree > limit:
            raise CapExceeded("max-direct-degree", degree, limit, "use the holomorph engine")

    def check_hol(self, order: int) -> None:
        if order > self.max_hol_order:
            raise CapExceeded("max-hol-order", order, self.max_hol_order)

    def check_group(self, order: int) -> None:
        if order > self.max_group_order:
            raise CapExceeded("max-group-order", order, self.max_group_order)


def _from_env() -> Caps:
    caps = Caps()
    raw = os.environ.get("HGS_MAX_HOL_ORDER")
    if raw:
        caps = replace(caps, max_hol_order=int(raw))
    return caps


_current = _from_env()


def get_caps() -> Caps:
    return _current


def set_caps(caps: Caps) -> None:
    global _current
    defaults = Caps()
    if caps.max_hol_order > defaults.max_hol_order:
        warnings.warn(f"holomorph cap raised to {caps.max_hol_order}; searches may be slow", stacklevel=2)
    if caps.max_direct_degree > HARD_MAX_DIRECT_DEGREE:
        raise ValueError(f"max_direct_degree cannot exceed {HARD_MAX_DIRECT_DEGREE}")
    _current = caps


@contextlib.contextmanager
def using_caps(**changes):
    old = _current
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        set_caps(replace(old, **changes))
    try:
        yield _current
    finally:
        globals()["_current"] = old
