"""Young diagram combinatorics for partitions inside a p x (m-p) rectangle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

__all__ = [
    "Partition", "GrassmannShape", "conjugate", "add_box_successors",
    "rim_minus", "bar", "enumerate_partitions", "rectangle", "partition_key",
    "parse_partition", "format_partition", "contains", "successors",
    "partitions_of", "iter_partitions",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive parts; trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p <= 0 for p in parts):
            raise ValueError(f"zero or negative part inside {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """1-based part, zero past the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def fits(self, rows: int, cols: int) -> bool:
        return len(self) <= rows and (not self or self[0] <= cols)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)!r})"


@dataclass(frozen=True)
class GrassmannShape:
    """Gr(p, m): p-planes in C^m; Schubert classes live in a p x (m-p) box."""

    p: int
    m: int

    def __post_init__(self):
        if not 1 <= self.p < self.m:
            raise ValueError(f"need 1 <= p < m, got p={self.p}, m={self.m}")

    @property
    def k(self) -> int:
        return self.m - self.p

    @property
    def dimension(self) -> int:
        return self.p * self.k

    def contains(self, lam: Partition) -> bool:
        return Partition(lam).fits(self.p, self.k)

    def __str__(self) -> str:
        return f"Gr({self.p},{self.m})"


def partition_key(lam: Partition) -> tuple:
    """Deterministic order: by weight, then larger parts first."""
    return (sum(lam), tuple(-x for x in lam))


def contains(big: Partition, small: Partition) -> bool:
    """True if the diagram of ``small`` sits inside the diagram of ``big``."""
    if len(small) > len(big):
        return False
    return all(s <= b for s, b in zip(small, big))


def conjugate(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for x in lam if x > j) for j in range(lam[0]))


def add_box_successors(lam: Partition, shape: GrassmannShape, bounded: bool = True) -> list[Partition]:
    """Partitions obtained by adding one box, at most p rows.

    With ``bounded`` the result must also fit in the p x (m-p) rectangle.
    """
    return successors(lam, shape.p, shape.k if bounded else None)


def successors(lam: Partition, rows: int, max_part: int | None = None) -> list[Partition]:
    lam = Partition(lam)
    parts = list(lam.padded(rows))
    out = []
    for i in range(rows):
        if i > 0 and parts[i] == parts[i - 1]:
            continue
        if max_part is not None and parts[i] == max_part:
            continue
        new = parts.copy()
        new[i] += 1
        out.append(Partition(new))
    return sorted(out, key=partition_key)


def rim_minus(lam: Partition, shape: GrassmannShape) -> Partition | None:
    """Remove m-1 boxes from the border rim, or None if that is impossible.

    Defined only when the first row is full (length m-p) and all p rows are
    nonempty; the result is (lam_2 - 1, ..., lam_p - 1).
    """
    lam = Partition(lam)
    if not lam.fits(shape.p, shape.k):
        raise ValueError(f"{lam} does not fit the {shape.p}x{shape.k} rectangle")
    if lam.part(1) != shape.k or lam.part(shape.p) == 0:
        return None
    return Partition(x - 1 for x in lam[1:shape.p])


def bar(lam: Partition, shape: GrassmannShape) -> Partition:
    """Add one box to a full first row: (m-p+1, lam_2, ..., lam_p)."""
    lam = Partition(lam)
    if lam.part(1) != shape.k:
        raise ValueError(f"first part of {lam} must equal m-p={shape.k}")
    return Partition((shape.k + 1,) + tuple(lam[1:]))


@lru_cache(maxsize=None)
def _bounded(rows: int, cols: int, weight: int) -> tuple[Partition, ...]:
    out = []

    def rec(prefix, remaining, cap):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        if len(prefix) == rows:
            return
        for first in range(min(cap, remaining), 0, -1):
            rec(prefix + [first], remaining - first, first)

    rec([], weight, cols)
    return tuple(out)


def enumerate_partitions(shape: GrassmannShape, mode: str = "rectangle",
                         max_weight: int | None = None) -> list[Partition]:
    """Partitions ordered by weight, then with larger parts first.

    ``mode="rectangle"`` lists the C(m,p) partitions in the p x (m-p) box;
    ``mode="length"`` lists every partition with at most p parts and weight
    at most ``max_weight``.
    """
    if mode == "rectangle":
        out = [lam for w in range(shape.dimension + 1) for lam in _bounded(shape.p, shape.k, w)]
        assert len(out) == comb(shape.m, shape.p)
        return out
    if mode == "length":
        if max_weight is None:
            raise ValueError("length mode needs max_weight")
        return [lam for w in range(max_weight + 1) for lam in _bounded(shape.p, w, w)]
    raise ValueError(f"unknown enumeration mode {mode!r}")


def rectangle(shape: GrassmannShape) -> list[Partition]:
    return enumerate_partitions(shape, "rectangle")


def partitions_of(weight: int, max_len: int, max_part: int | None = None) -> tuple[Partition, ...]:
    return _bounded(max_len, weight if max_part is None else max_part, weight)


def iter_partitions(max_weight: int, max_len: int) -> Iterator[Partition]:
    for w in range(max_weight + 1):
        yield from _bounded(max_len, w, w)


def parse_partition(text: str) -> Partition:
    """Parse "4,2,1"; "0", "" and "[]" denote the empty partition."""
    s = text.strip().strip("[]()").strip()
    if s in ("", "0"):
        return Partition()
    try:
        return Partition(int(t) for t in s.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed partition {text!r}: {exc}") from None


def format_partition(lam: Iterable[int]) -> str:
    return ",".join(str(x) for x in lam)
