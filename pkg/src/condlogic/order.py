"""Finite preorders and upset machinery on int bitmasks.

Worlds are the integers ``0..n-1`` and a set of worlds is an ``int`` whose
bit ``i`` stands for world ``i``.  Upsets double as relation-family keys
and as algebra carrier elements, so the encoding has to be exact, hashable
and cheap to compare; Python ints are all three.

``all_upsets`` enumerates all ``2^n`` subsets and filters, which caps the
usable world count at :data:`MAX_WORLDS`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .errors import CapExceededError, FrameFormatError

MAX_WORLDS = 20


@dataclass(frozen=True)
class FinitePreorder:
    """Reflexive transitive relation on worlds ``0..n-1``.

    ``up[i]`` is the bitmask ``{j | i <= j}``.
    """

    n: int
    up: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise FrameFormatError("a frame needs a nonempty world set")
        if self.n > MAX_WORLDS:
            raise CapExceededError(f"at most {MAX_WORLDS} worlds are supported")
        if len(self.up) != self.n:
            raise FrameFormatError("leq row count does not match world count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.up):
            if row & ~full:
                raise FrameFormatError(f"leq row {i} mentions unknown worlds")
            if not (row >> i) & 1:
                raise FrameFormatError(f"leq is not reflexive at world {i}")
        for i in range(self.n):
            row = self.up[i]
            j = 0
            rest = row
            while rest:
                if rest & 1 and self.up[j] & ~row:
                    raise FrameFormatError(f"leq is not transitive at ({i}, {j})")
                rest >>= 1
                j += 1

    @staticmethod
    def from_pairs(n: int, pairs: Iterable[Sequence[int]]) -> "FinitePreorder":
        """Build from explicit (i, j) pairs meaning ``i <= j``.

        Reflexive pairs may be omitted; transitivity is validated, not closed.
        """
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise FrameFormatError(f"leq pair ({i}, {j}) out of range")
            up[i] |= 1 << j
        return FinitePreorder(n, tuple(up))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def pairs(self) -> list:
        return [(i, j) for i in range(self.n) for j in range(self.n) if self.leq(i, j)]

    @property
    def is_poset(self) -> bool:
        return all(
            not (self.leq(i, j) and self.leq(j, i))
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )


@lru_cache(maxsize=None)
def _down_rows(p: FinitePreorder) -> Tuple[int, ...]:
    rows = [0] * p.n
    for i in range(p.n):
        for j in range(p.n):
            if p.leq(j, i):
                rows[i] |= 1 << j
    return tuple(rows)


def up_closure(p: FinitePreorder, s: int) -> int:
    """Least upset containing the worlds of mask ``s``."""
    out = 0
    i = 0
    while s:
        if s & 1:
            out |= p.up[i]
        s >>= 1
        i += 1
    return out


def down_closure(p: FinitePreorder, s: int) -> int:
    out = 0
    down = _down_rows(p)
    i = 0
    while s:
        if s & 1:
            out |= down[i]
        s >>= 1
        i += 1
    return out


def is_upset(p: FinitePreorder, s: int) -> bool:
    return up_closure(p, s) == s


@lru_cache(maxsize=None)
def all_upsets(p: FinitePreorder) -> Tuple[int, ...]:
    """Every upset exactly once, ascending as integers."""
    return tuple(m for m in range(1 << p.n) if is_upset(p, m))


def heyting_imp(p: FinitePreorder, a: int, b: int) -> int:
    """Relative pseudocomplement on upsets: ``{x | up(x) & a <= b}``."""
    out = 0
    for x in range(p.n):
        if not (p.up[x] & a) & ~b:
            out |= 1 << x
    return out


def heyting_imp_via_down(p: FinitePreorder, a: int, b: int) -> int:
    """Same operation computed as ``X minus down(a minus b)``; cross-check route."""
    return p.full_mask & ~down_closure(p, a & ~b)


def mask_to_worlds(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def worlds_to_mask(worlds: Iterable[int]) -> int:
    mask = 0
    for w in worlds:
        mask |= 1 << w
    return mask


def mask_to_key(mask: int) -> str:
    """Canonical file key of an upset: comma-joined ascending world list."""
    return ",".join(str(w) for w in mask_to_worlds(mask))


def key_to_mask(key: str) -> int:
    if key == "":
        return 0
    try:
        return worlds_to_mask(int(part) for part in key.split(","))
    except ValueError as exc:
        raise FrameFormatError(f"bad upset key {key!r}") from exc
