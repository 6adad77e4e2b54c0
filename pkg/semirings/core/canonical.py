"""
Canonical forms for iso-free enumeration.
Scans every relabelling that fixes 0 and 1 and keeps the least table bytes.
"""

import itertools
from typing import Optional

import numpy as np

from ..config import KernelSettings, load_settings
from ..errors import OrderTooLarge
from .semiring import FiniteSemiring


def _relabelled_bytes(algebra: FiniteSemiring, new_of_old: np.ndarray) -> bytes:
    old_of_new = np.argsort(new_of_old)
    grid = np.ix_(old_of_new, old_of_new)
    add = new_of_old[algebra.add[grid]]
    mul = new_of_old[algebra.mul[grid]]
    return np.concatenate([add.ravel(), mul.ravel()]).astype(np.uint8).tobytes()


def relabel(algebra: FiniteSemiring, new_of_old) -> FiniteSemiring:
    """The same algebra with element x renamed to new_of_old[x]."""
    perm = np.asarray(new_of_old, dtype=np.int64)
    if sorted(perm.tolist()) != list(algebra.elements):
        raise ValueError("relabelling is not a permutation of the carrier")
    if algebra.order > 1 and (perm[0] != 0 or perm[1] != 1):
        raise ValueError("relabelling must fix 0 and 1")
    old_of_new = np.argsort(perm)
    grid = np.ix_(old_of_new, old_of_new)
    return FiniteSemiring(perm[algebra.add[grid]], perm[algebra.mul[grid]], algebra.name)


def canonical_form(algebra: FiniteSemiring, settings: Optional[KernelSettings] = None) -> bytes:
    """Least add‖mul byte string over all 0,1-fixing relabellings."""
    settings = settings or load_settings()
    n = algebra.order
    if n > settings.canonical_max_order:
        raise OrderTooLarge(n, settings.canonical_max_order, "canonical_form")

    pinned = list(range(min(n, 2)))
    best: Optional[bytes] = None
    for rest in itertools.permutations(range(len(pinned), n)):
        new_of_old = np.array(pinned + list(rest), dtype=np.int64)
        candidate = _relabelled_bytes(algebra, new_of_old)
        if best is None or candidate < best:
            best = candidate
    return bytes([n]) + best


def are_isomorphic(left: FiniteSemiring, right: FiniteSemiring,
                   settings: Optional[KernelSettings] = None) -> bool:
    if left.order != right.order:
        return False
    return canonical_form(left, settings) == canonical_form(right, settings)
