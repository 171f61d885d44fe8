"""Integer partitions, majorization and the incomparable witness family."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive integers (zeros are stripped)."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise DomainError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts must be weakly decreasing, got {list(parts)}")
        object.__setattr__(self, "parts", tuple(p for p in parts if p > 0))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def prefix_sums(self, length: int | None = None) -> list[int]:
        """Running sums of the parts, zero-padded to ``length``."""
        length = self.length if length is None else length
        out, acc = [], 0
        for i in range(length):
            acc += self.parts[i] if i < self.length else 0
            out.append(acc)
        return out

    def to_json(self) -> str:
        return json.dumps(list(self.parts))

    @classmethod
    def from_json(cls, text: str) -> "Partition":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(p, int) for p in data):
            raise DomainError(f"expected a JSON array of integers, got {text!r}")
        return cls(data)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse comma-separated parts such as ``"3,1,1"``."""
        try:
            parts = [int(s) for s in text.replace(" ", "").split(",") if s]
        except ValueError as exc:
            raise DomainError(f"malformed partition {text!r}") from exc
        if not parts:
            raise DomainError("empty partition")
        return cls(parts)


def enumerate_partitions(d: int) -> list[Partition]:
    """All partitions of ``d`` in reverse-lexicographic order."""
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(d, d, [])
    return out


def majorizes(mu: Partition, lam: Partition) -> bool:
    """True iff every prefix sum of ``mu`` dominates that of ``lam``."""
    if mu.weight != lam.weight:
        raise DomainError(f"weights differ: {mu.weight} vs {lam.weight}")
    size = max(mu.length, lam.length)
    return all(a >= b for a, b in zip(mu.prefix_sums(size), lam.prefix_sums(size)))


def conjugate(lam: Partition) -> Partition:
    # column lengths of the Young diagram: #{i : lam_i >= j}
    if not lam.parts:
        return lam
    return Partition(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.parts[0] + 1))


def family_witness(d: int) -> tuple[Partition, Partition]:
    """The incomparable pair (mu, lambda) with H_mu >= H_lambda for degree ``d >= 8``.

    Even ``d = 2m`` gives ``(2^m)`` against ``(3, 1^(2m-3))``; odd ``d = 2m+1``
    appends a part 1 to ``mu`` and one more 1 to ``lambda``.
    """
    if d < 8:
        raise DomainError(f"witness family needs d >= 8, got {d}")
    m, odd = divmod(d, 2)
    if odd:
        return Partition([2] * m + [1]), Partition([3] + [1] * (2 * m - 2))
    return Partition([2] * m), Partition([3] + [1] * (2 * m - 3))
