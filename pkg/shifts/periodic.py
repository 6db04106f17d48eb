"""
Eventually periodic subsets of the nonnegative integers.

A set is stored as (threshold T, exceptions below T, period D, residues mod D):
membership(n) is `n in exceptions` for n < T and `n % D in residues` otherwise.
Every instance is brought to canonical form on construction (minimal period,
then minimal threshold), so `==` on two instances is set equality.
"""
import math
import operator
from typing import Callable, Iterable, Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for p in range(1, math.isqrt(n) + 1):
        if n % p == 0:
            small.append(p)
            if p != n // p:
                large.append(n // p)
    return small + large[::-1]


def _canonical(
    threshold: int, exceptions: Iterable[int], period: int, residues: Iterable[int]
) -> tuple[int, frozenset[int], int, frozenset[int]]:
    if period < 1:
        raise ValueError(f"period must be positive, got {period}")
    if threshold < 0:
        raise ValueError(f"threshold must be nonnegative, got {threshold}")
    exc = set(exceptions)
    res = set(residues)
    if any(e < 0 or e >= threshold for e in exc):
        raise ValueError(f"exceptions must lie in [0, {threshold})")
    if any(r < 0 or r >= period for r in res):
        raise ValueError(f"residues must lie in [0, {period})")

    for p in _divisors(period):
        if all((r + p) % period in res for r in res):
            res = {r % p for r in res}
            period = p
            break

    while threshold > 0:
        n = threshold - 1
        if (n in exc) != ((n % period) in res):
            break
        exc.discard(n)
        threshold = n
    return threshold, frozenset(exc), period, frozenset(res)


class EventuallyPeriodicSet(BaseModel):
    """A canonical eventually periodic set of nonnegative integers."""

    model_config = ConfigDict(frozen=True)

    threshold: int = Field(0, ge=0)
    exceptions: frozenset[int] = frozenset()
    period: int = Field(1, ge=1)
    residues: frozenset[int] = frozenset()

    @model_validator(mode="before")
    @classmethod
    def _to_canonical(cls, data):
        if not isinstance(data, dict):
            return data
        t, exc, d, res = _canonical(
            int(data.get("threshold", 0)),
            data.get("exceptions", ()),
            int(data.get("period", 1)),
            data.get("residues", ()),
        )
        return {"threshold": t, "exceptions": exc, "period": d, "residues": res}

    # constructors

    @classmethod
    def finite(cls, elements: Iterable[int]) -> "EventuallyPeriodicSet":
        elems = set(elements)
        if any(e < 0 for e in elems):
            raise ValueError("elements must be nonnegative")
        top = max(elems) + 1 if elems else 0
        return cls(threshold=top, exceptions=elems, period=1, residues=())

    @classmethod
    def eventual(
        cls,
        threshold: int,
        exceptions: Iterable[int],
        period: int,
        residues: Iterable[int],
    ) -> "EventuallyPeriodicSet":
        return cls(threshold=threshold, exceptions=exceptions, period=period, residues=residues)

    @classmethod
    def arithmetic(cls, start: int, step: int) -> "EventuallyPeriodicSet":
        """{start, start + step, start + 2*step, ...}"""
        if start < 0 or step < 1:
            raise ValueError("need start >= 0 and step >= 1")
        return cls(threshold=start, exceptions=(), period=step, residues={start % step})

    @classmethod
    def empty(cls) -> "EventuallyPeriodicSet":
        return cls()

    @classmethod
    def naturals(cls, start: int = 0) -> "EventuallyPeriodicSet":
        return cls(threshold=start, exceptions=(), period=1, residues={0})

    # queries

    def __contains__(self, n: object) -> bool:
        if not isinstance(n, int) or n < 0:
            return False
        if n < self.threshold:
            return n in self.exceptions
        return (n % self.period) in self.residues

    @property
    def is_empty(self) -> bool:
        return not self.exceptions and not self.residues

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def max(self) -> Optional[int]:
        """Largest element of a finite set; None when empty or infinite."""
        if not self.is_finite or not self.exceptions:
            return None
        return max(self.exceptions)

    def min(self) -> Optional[int]:
        if self.is_empty:
            return None
        return next(self.elements())

    def elements(self) -> Iterator[int]:
        """Elements in increasing order; endless for infinite sets."""
        yield from sorted(self.exceptions)
        if not self.residues:
            return
        n = self.threshold
        while True:
            if (n % self.period) in self.residues:
                yield n
            n += 1

    def upto(self, bound: int) -> list[int]:
        """Sorted elements n with n <= bound."""
        out = [e for e in sorted(self.exceptions) if e <= bound]
        out.extend(
            n for n in range(self.threshold, bound + 1) if (n % self.period) in self.residues
        )
        return out

    # algebra

    def _combine(
        self, other: "EventuallyPeriodicSet", op: Callable[[bool, bool], bool]
    ) -> "EventuallyPeriodicSet":
        period = math.lcm(self.period, other.period)
        threshold = max(self.threshold, other.threshold)
        exceptions = {n for n in range(threshold) if op(n in self, n in other)}
        residues = set()
        for r in range(period):
            n = threshold + (r - threshold) % period
            if op(n in self, n in other):
                residues.add(r)
        return EventuallyPeriodicSet(
            threshold=threshold, exceptions=exceptions, period=period, residues=residues
        )

    def union(self, other: "EventuallyPeriodicSet") -> "EventuallyPeriodicSet":
        return self._combine(other, operator.or_)

    def intersection(self, other: "EventuallyPeriodicSet") -> "EventuallyPeriodicSet":
        return self._combine(other, operator.and_)

    def difference(self, other: "EventuallyPeriodicSet") -> "EventuallyPeriodicSet":
        return self._combine(other, lambda a, b: a and not b)

    def issubset(self, other: "EventuallyPeriodicSet") -> bool:
        return self.difference(other).is_empty

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def complement(self) -> "EventuallyPeriodicSet":
        return EventuallyPeriodicSet.naturals().difference(self)

    def shifted(self, k: int) -> "EventuallyPeriodicSet":
        """{n + k : n in self, n + k >= 0}"""
        if k >= 0:
            return EventuallyPeriodicSet(
                threshold=self.threshold + k,
                exceptions={e + k for e in self.exceptions},
                period=self.period,
                residues={(r + k) % self.period for r in self.residues},
            )
        # negative shift drops everything below -k
        drop = -k
        if self.threshold >= drop:
            return EventuallyPeriodicSet(
                threshold=self.threshold - drop,
                exceptions={e - drop for e in self.exceptions if e >= drop},
                period=self.period,
                residues={(r - drop) % self.period for r in self.residues},
            )
        return EventuallyPeriodicSet(
            threshold=0,
            exceptions=(),
            period=self.period,
            residues={(r - drop) % self.period for r in self.residues},
        )

    def __str__(self) -> str:
        from .formats import format_gapset

        return format_gapset(self)

    def describe(self) -> str:
        """Readable form such as `{1} ∪ {n ≥ 4}` or `{n ≡ 1 mod 3, n ≥ 1}`."""
        if self.is_empty:
            return "∅"
        parts = []
        if self.exceptions:
            parts.append("{" + ", ".join(str(e) for e in sorted(self.exceptions)) + "}")
        if self.residues:
            if self.is_cofinite:
                parts.append(f"{{n ≥ {self.threshold}}}")
            else:
                rs = ",".join(str(r) for r in sorted(self.residues))
                tail = f", n ≥ {self.threshold}" if self.threshold else ""
                parts.append(f"{{n ≡ {rs} mod {self.period}{tail}}}")
        return " ∪ ".join(parts)
