"""Integer partitions, the Young-lattice cover relations and the psi weights."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    >>> Partition([1, 3, 1])
    Partition(3, 1, 1)
    """

    def __new__(cls, parts: Iterable[int] = ()):
        ps = sorted((int(p) for p in parts), reverse=True)
        if any(p < 0 for p in ps):
            raise ValueError("negative part")
        return super().__new__(cls, [p for p in ps if p])

    def __repr__(self) -> str:
        return f"Partition({', '.join(map(str, self))})"

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > k) for k in range(self[0]))

    def mult(self, j: int) -> int:
        return sum(1 for p in self if p == j)

    def n(self) -> int:
        """sum (i-1) lambda_i."""
        return sum(i * p for i, p in enumerate(self))

    def boxes(self) -> set[tuple[int, int]]:
        """Box coordinates (row, column), both 1-based."""
        return {(r + 1, c + 1) for r, p in enumerate(self) for c in range(p)}

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def label(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"


def mult_count(mu: Iterable[int], j: int) -> int:
    if j < 1:
        raise ValueError("j must be positive")
    return sum(1 for p in mu if p == j)


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order, (n) first."""
    def gen(n: int, cap: int) -> Iterator[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for k in range(min(n, cap), 0, -1):
            for rest in gen(n - k, k):
                yield (k,) + rest
    return tuple(Partition(p) for p in gen(n, n))


def _added_boxes(mu: Partition, lam: Partition) -> list[tuple[int, int]] | None:
    if not lam.contains(mu):
        return None
    return sorted(lam.boxes() - mu.boxes())


def covers(mu: Iterable[int], lam: Iterable[int]) -> bool:
    """mu -> lam adds exactly one box."""
    mu, lam = Partition(mu), Partition(lam)
    d = _added_boxes(mu, lam)
    return d is not None and len(d) == 1


def double_covers(mu: Iterable[int], lam: Iterable[int]) -> bool:
    """lam / mu is two boxes in one column or in two adjacent columns."""
    mu, lam = Partition(mu), Partition(lam)
    d = _added_boxes(mu, lam)
    if d is None or len(d) != 2:
        return False
    (_, c1), (_, c2) = d
    return abs(c1 - c2) <= 1


def added_column(mu: Partition, lam: Partition) -> int:
    """Column of the single box lam / mu (1-based); assumes a cover."""
    (_, c), = _added_boxes(mu, lam)
    return c


def up_covers(mu: Iterable[int]) -> list[Partition]:
    mu = Partition(mu)
    out = []
    for r in range(len(mu) + 1):
        if r == 0 or mu[r - 1] > (mu[r] if r < len(mu) else 0):
            parts = list(mu) + [0]
            parts[r] += 1
            out.append(Partition(parts))
    return out


def down_covers(lam: Iterable[int]) -> list[Partition]:
    lam = Partition(lam)
    out = []
    for r in range(len(lam)):
        if r == len(lam) - 1 or lam[r] > lam[r + 1]:
            parts = list(lam)
            parts[r] -= 1
            out.append(Partition(parts))
    return out


def up_double_covers(mu: Iterable[int]) -> list[Partition]:
    mu = Partition(mu)
    seen = {lam2 for lam1 in up_covers(mu) for lam2 in up_covers(lam1)}
    return sorted((l for l in seen if double_covers(mu, l)), reverse=True)


def psi_coeff(lam: Iterable[int], mu: Iterable[int], t):
    """Weight of the edge mu -> lam in the t-deformed Young graph.

    Returns ``1 - t**m_{k-1}(mu)`` when the added box sits in column k > 1,
    ``1`` for column 1 and ``0`` when lam does not cover mu.  ``t`` may be any
    ring element supporting ``**`` and ``-``.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not covers(mu, lam):
        return 0 * t
    k = added_column(mu, lam)
    if k == 1:
        return 1 + 0 * t
    return 1 - t ** mu.mult(k - 1)
