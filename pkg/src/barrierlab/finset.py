"""Finite subsets of N and eventually-arithmetic infinite subsets.

A finite set is a strictly increasing tuple of positive integers.  An
infinite set is an :class:`InfSetWindow`: an explicit prefix followed by an
arithmetic tail.  Most helpers below accept either kind ("ordered sets"), so
that a finite prefix of an infinite construction can stand in for it; asking a
finite set for an element it does not have raises :class:`InsufficientWindow`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

FinSet = tuple


class ElementNotInM(ValueError):
    pass


class InsufficientWindow(RuntimeError):
    """A finite stand-in for an infinite set ran out of elements."""


def finset(elems: Iterable[int] = ()) -> tuple:
    s = tuple(sorted(set(int(x) for x in elems)))
    if s and s[0] < 1:
        raise ValueError(f"elements of a FinSet must be positive: {s}")
    return s


def check_finset(s: Sequence[int]) -> tuple:
    s = tuple(s)
    for a, b in zip(s, s[1:]):
        if not a < b:
            raise ValueError(f"not strictly increasing: {s}")
    if s and s[0] < 1:
        raise ValueError(f"elements of a FinSet must be positive: {s}")
    return s


@dataclass(frozen=True)
class InfSetWindow:
    """The set ``prefix ∪ {tail_start + j*tail_stride : j >= 0}``.

    The representation is normalized on construction (prefix elements that
    continue the arithmetic tail are absorbed into it), so two windows denote
    the same set iff they compare equal.
    """

    prefix: tuple = ()
    tail_start: int = 1
    tail_stride: int = 1

    def __post_init__(self):
        prefix = check_finset(self.prefix)
        start, stride = int(self.tail_start), int(self.tail_stride)
        if stride < 1 or start < 1:
            raise ValueError("tail_start and tail_stride must be positive")
        if prefix and prefix[-1] >= start:
            raise ValueError("tail_start must exceed max(prefix)")
        while prefix and prefix[-1] == start - stride:
            start = prefix[-1]
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail_start", start)
        object.__setattr__(self, "tail_stride", stride)

    def __contains__(self, x: int) -> bool:
        if x in self.prefix:
            return True
        return x >= self.tail_start and (x - self.tail_start) % self.tail_stride == 0

    def element(self, k: int) -> int:
        """The k-th element, 1-based."""
        if k < 1:
            raise IndexError(k)
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.tail_start + (k - len(self.prefix) - 1) * self.tail_stride

    def index(self, x: int) -> int:
        if x not in self:
            raise ElementNotInM(f"{x} is not in {self}")
        if x in self.prefix:
            return self.prefix.index(x) + 1
        return len(self.prefix) + 1 + (x - self.tail_start) // self.tail_stride

    def take(self, count: int) -> tuple:
        return tuple(self.element(k) for k in range(1, count + 1))

    def tail(self, n: int) -> "InfSetWindow":
        """``A/n``: the elements strictly greater than n."""
        prefix = tuple(x for x in self.prefix if x > n)
        start = self.tail_start
        if start <= n:
            start += ((n - start) // self.tail_stride + 1) * self.tail_stride
        return InfSetWindow(prefix, start, self.tail_stride)

    def every(self, k: int, r: int) -> "InfSetWindow":
        """The elements whose 1-based index is congruent to r mod k."""
        r %= k
        p = len(self.prefix)
        prefix = tuple(x for i, x in enumerate(self.prefix, 1) if i % k == r)
        # tail index j (0-based) has overall index p + 1 + j
        j0 = (r - p - 1) % k
        return InfSetWindow(prefix, self.tail_start + j0 * self.tail_stride,
                            k * self.tail_stride)

    def between(self, a: int, b: int) -> tuple:
        """Elements x with a < x < b."""
        out = [x for x in self.prefix if a < x < b]
        t = self.tail(a)
        x = t.tail_start
        while x < b:
            if x not in out:
                out.append(x)
            x += t.tail_stride
        return tuple(sorted(set(out)))

    def __str__(self):
        head = ",".join(map(str, self.prefix))
        t = f"{self.tail_start},{self.tail_start + self.tail_stride},..."
        return "{" + (head + "," if head else "") + t + "}"

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "tail_start": self.tail_start,
                "tail_stride": self.tail_stride}

    @classmethod
    def from_json(cls, d: dict) -> "InfSetWindow":
        return cls(tuple(d.get("prefix", ())), d["tail_start"], d.get("tail_stride", 1))


NATURALS = InfSetWindow((), 1, 1)
ODDS = InfSetWindow((), 1, 2)
EVENS = InfSetWindow((), 2, 2)

OrderedSet = Union[InfSetWindow, tuple]


def naturals_after(n: int) -> InfSetWindow:
    return NATURALS.tail(n)


# -- helpers accepting either an InfSetWindow or a finite increasing tuple --

def member(A: OrderedSet, x: int) -> bool:
    return x in A


def nth(A: OrderedSet, k: int) -> int:
    if not isinstance(A, tuple):
        return A.element(k)
    if not 1 <= k <= len(A):
        raise InsufficientWindow(f"need element #{k} of a {len(A)}-element window")
    return A[k - 1]


def position(A: OrderedSet, x: int) -> int:
    if isinstance(A, InfSetWindow):
        return A.index(x)
    try:
        return A.index(x) + 1
    except ValueError:
        raise ElementNotInM(f"{x} is not in {A}") from None


def after(A: OrderedSet, n: int) -> OrderedSet:
    if isinstance(A, InfSetWindow):
        return A.tail(n)
    return tuple(x for x in A if x > n)


def take(A: OrderedSet, count: int) -> tuple:
    if isinstance(A, InfSetWindow):
        return A.take(count)
    if count > len(A):
        raise InsufficientWindow(f"need {count} elements, window has {len(A)}")
    return tuple(A[:count])


def prefix_upto(A: OrderedSet, bound: int) -> tuple:
    """All elements <= bound."""
    if isinstance(A, InfSetWindow):
        return A.between(0, bound + 1)
    return tuple(x for x in A if x <= bound)


def every(A: OrderedSet, k: int, r: int) -> OrderedSet:
    if isinstance(A, InfSetWindow):
        return A.every(k, r)
    return tuple(x for i, x in enumerate(A, 1) if i % k == r % k)


def between(A: OrderedSet, a: int, b: int) -> tuple:
    if isinstance(A, InfSetWindow):
        return A.between(a, b)
    return tuple(x for x in A if a < x < b)


def is_infinite(A: OrderedSet) -> bool:
    return isinstance(A, InfSetWindow)


# -- the operations on finite sets --

def comes_before(s: Sequence[int], t: Sequence[int]) -> bool:
    """``s < t``; empty sets compare before and after everything."""
    if not s or not t:
        return True
    return s[-1] < t[0]


def is_initial_segment(s: Sequence[int], t) -> bool:
    s = tuple(s)
    if isinstance(t, InfSetWindow):
        return all(t.element(i) == x for i, x in enumerate(s, 1))
    t = tuple(t)
    return len(s) <= len(t) and t[:len(s)] == s


def tail(A: OrderedSet, n: int) -> OrderedSet:
    return after(A, n)


def transfer_map(s: Sequence[int], M: OrderedSet, N: OrderedSet) -> tuple:
    """``T_{M,N}(s)``: send the k-th element of M to the k-th element of N."""
    return tuple(nth(N, position(M, x)) for x in s)


def concat(s: Sequence[int], t: Sequence[int]) -> tuple:
    if not comes_before(s, t):
        raise ValueError(f"{s} does not come before {t}")
    return tuple(s) + tuple(t)


def shift_down(s: Sequence[int], j: int) -> tuple:
    if s and s[0] - j < 1:
        raise ValueError(f"cannot shift {s} down by {j}")
    return tuple(x - j for x in s)


def parse_window(spec) -> OrderedSet:
    """JSON helper: a list is a finite window, a dict an InfSetWindow,
    the strings "N", "odds", "evens" the obvious sets."""
    if isinstance(spec, str):
        named = {"N": NATURALS, "naturals": NATURALS, "odds": ODDS, "evens": EVENS}
        return named[spec]
    if isinstance(spec, dict):
        return InfSetWindow.from_json(spec)
    return check_finset(spec)


def window_to_json(A: OrderedSet):
    if isinstance(A, InfSetWindow):
        return A.to_json()
    return list(A)
