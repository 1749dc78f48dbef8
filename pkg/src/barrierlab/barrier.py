"""A closed grammar of uniform barriers.

Terms are immutable dataclasses.  Every term denotes a family of finite sets
over a ground set (``N`` for the atoms, the encoded set for ``Restrict`` and
``Transfer``).  Membership, sections and rank are all computed by walking
sections, so composite terms need no closed forms beyond the atoms.
"""
from __future__ import annotations

import itertools
import threading
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .finset import (
    NATURALS,
    InfSetWindow,
    InsufficientWindow,
    OrderedSet,
    after,
    check_finset,
    nth,
    parse_window,
    position,
    take,
    transfer_map,
    window_to_json,
)
from .ordinal import OMEGA, ZERO, OrdinalCNF, limit_of


class BarrierError(ValueError):
    pass


class GroundSetViolation(BarrierError):
    pass


class RankOverflow(BarrierError):
    pass


class NoProjection(BarrierError):
    pass


class EmptyFrontWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Leaf:
    """The 0-uniform family ``{∅}``."""

    def __str__(self):
        return "Leaf"


@dataclass(frozen=True)
class Cube:
    """``[N]^k``."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Cube(k) needs k >= 1; use Leaf for k = 0")

    def __str__(self):
        return f"Cube({self.k})"


@dataclass(frozen=True)
class Schreier:
    """``{s : |s| = min s}``."""

    def __str__(self):
        return "Schreier"


@dataclass(frozen=True)
class Sum:
    """``B ⊕ C = {s ∪ t : s ∈ B, t ∈ C, s < t}``."""

    left: "BarrierTerm"
    right: "BarrierTerm"

    def __str__(self):
        return f"Sum({self.left}, {self.right})"


@dataclass(frozen=True)
class Section:
    base: "BarrierTerm"
    n: int

    def __str__(self):
        return f"Section({self.base}, {self.n})"


@dataclass(frozen=True)
class Transfer:
    """``T_{M,N}(B↾M)``, a barrier on N."""

    base: "BarrierTerm"
    M: OrderedSet
    N: OrderedSet

    def __str__(self):
        return f"Transfer({self.base}, {_wstr(self.M)}, {_wstr(self.N)})"


@dataclass(frozen=True)
class Restrict:
    """``B↾M``."""

    base: "BarrierTerm"
    M: OrderedSet

    def __str__(self):
        return f"Restrict({self.base}, {_wstr(self.M)})"


BarrierTerm = Union[Leaf, Cube, Schreier, Sum, Section, Transfer, Restrict]


def _wstr(A):
    if isinstance(A, InfSetWindow):
        return str(A)
    return "{" + ",".join(map(str, A)) + "}"


def cube(k: int) -> BarrierTerm:
    return Leaf() if k == 0 else Cube(k)


# -- ground sets and membership --

def ground(B: BarrierTerm) -> OrderedSet:
    if isinstance(B, (Leaf, Cube, Schreier)):
        return NATURALS
    if isinstance(B, Sum):
        return ground(B.left)
    if isinstance(B, Section):
        return after(ground(B.base), B.n)
    if isinstance(B, Transfer):
        return B.N
    if isinstance(B, Restrict):
        return B.M
    raise TypeError(f"not a barrier term: {B!r}")


def in_ground(B: BarrierTerm, s) -> bool:
    G = ground(B)
    return all(x in G for x in s)


def _member(B: BarrierTerm, s: tuple) -> bool:
    """Membership that answers False (instead of raising) off the ground set."""
    if not in_ground(B, s):
        return False
    if isinstance(B, Leaf):
        return s == ()
    if isinstance(B, Cube):
        return len(s) == B.k
    if isinstance(B, Schreier):
        return bool(s) and len(s) == s[0]
    if isinstance(B, Sum):
        return any(_member(B.left, s[:i]) and _member(B.right, s[i:])
                   for i in range(len(s) + 1))
    if isinstance(B, Section):
        return all(x > B.n for x in s) and _member(B.base, (B.n,) + s)
    if isinstance(B, Transfer):
        try:
            pre = transfer_map(s, B.N, B.M)
        except InsufficientWindow:
            return False
        return _member(B.base, pre)
    if isinstance(B, Restrict):
        return _member(B.base, s)
    raise TypeError(f"not a barrier term: {B!r}")


def contains(B: BarrierTerm, s) -> bool:
    s = check_finset(s)
    if not in_ground(B, s):
        raise GroundSetViolation(f"{s} is not contained in the ground set of {B}")
    return _member(B, s)


def is_leaflike(B: BarrierTerm) -> bool:
    """True when the family is ``{∅}`` (a thin family containing ∅ has nothing else)."""
    return _member(B, ())


# -- sections --

def restrict(B: BarrierTerm, M: OrderedSet) -> BarrierTerm:
    if isinstance(B, Restrict):
        B = B.base
    if ground(B) == M:
        return B
    return Restrict(B, M)


def section(B: BarrierTerm, n: int) -> BarrierTerm:
    """A term for ``B_{n} = {s : n < s, {n}⌢s ∈ B}``."""
    if n not in ground(B):
        raise GroundSetViolation(f"{n} is not in the ground set of {B}")
    if is_leaflike(B):
        raise BarrierError(f"{B} is 0-uniform and has no sections")
    if isinstance(B, Cube):
        return restrict(cube(B.k - 1), NATURALS.tail(n))
    if isinstance(B, Schreier):
        return restrict(cube(n - 1), NATURALS.tail(n))
    if isinstance(B, Restrict):
        return restrict(section(B.base, n), after(B.M, n))
    if isinstance(B, Section):
        return section(section(B.base, B.n), n)
    if isinstance(B, Transfer):
        m = transfer_map((n,), B.N, B.M)[0]
        inner = section(B.base, m)
        return Transfer(inner, after(B.M, m), after(B.N, n))
    if isinstance(B, Sum):
        if is_leaflike(B.left):
            return section(B.right, n)
        left = section(B.left, n)
        right = restrict(B.right, after(ground(B.right), n))
        if is_leaflike(left):
            return right
        return Sum(left, right)
    raise TypeError(f"not a barrier term: {B!r}")


# -- rank --

_RANK_SAMPLES = 3
_MAX_RANK_DEPTH = 200
_rank_depth = threading.local()


def rank(B: BarrierTerm) -> OrdinalCNF:
    """The uniformity ordinal of B."""
    depth = getattr(_rank_depth, "d", 0)
    if depth > _MAX_RANK_DEPTH:
        raise RankOverflow(f"rank recursion too deep at {B}")
    _rank_depth.d = depth + 1
    try:
        return _rank(B)
    finally:
        _rank_depth.d = depth


@lru_cache(maxsize=None)
def _rank(B: BarrierTerm) -> OrdinalCNF:
    if isinstance(B, Leaf):
        return ZERO
    if isinstance(B, Cube):
        return OrdinalCNF.finite(B.k)
    if isinstance(B, Schreier):
        return OMEGA
    if isinstance(B, (Restrict, Transfer)):
        return rank(B.base)
    if isinstance(B, Section):
        return rank(section(B.base, B.n))
    return rank_by_sections(B)


def rank_by_sections(B: BarrierTerm) -> OrdinalCNF:
    """Rank read off the sections at the first few ground elements.

    Equal section ranks give a successor; strictly increasing ones give the
    limit they approach.
    """
    if is_leaflike(B):
        return ZERO
    G = ground(B)
    ns = list(take(G, _RANK_SAMPLES)) if isinstance(G, InfSetWindow) else list(G[:_RANK_SAMPLES])
    if not ns:
        raise BarrierError(f"{B} has an empty ground set")
    rs = [rank(section(B, n)) for n in ns]
    if all(r == rs[0] for r in rs):
        return rs[0] + OrdinalCNF.finite(1)
    if all(a < b for a, b in zip(rs, rs[1:])):
        return limit_of(rs[-2], rs[-1])
    raise BarrierError(f"section ranks {list(map(str, rs))} of {B} are not uniform")


# -- fronts and closures --

def front(B: BarrierTerm, window) -> list:
    """All members of B inside the finite window, sorted lexicographically."""
    window = tuple(sorted(set(window)))
    out: list = []

    def walk(T, rest, prefix):
        if is_leaflike(T):
            out.append(prefix)
            return
        G = ground(T)
        for i, n in enumerate(rest):
            if n in G:
                walk(section(T, n), rest[i + 1:], prefix + (n,))

    walk(B, window, ())
    return sorted(out)


def in_closure(B: BarrierTerm, r) -> bool:
    """Whether r is an initial segment of some member of B."""
    r = tuple(r)
    T = B
    for i, x in enumerate(r):
        if is_leaflike(T) or x not in ground(T):
            return False
        T = section(T, x)
    return True


def initial_member(B: BarrierTerm, A: OrderedSet, limit: int = 4096) -> tuple:
    """The unique member of B that is an initial segment of A."""
    T = B
    seg = []
    for k in range(1, limit + 2):
        if is_leaflike(T):
            return tuple(seg)
        x = nth(A, k)
        if x not in ground(T):
            raise GroundSetViolation(f"{x} is not in the ground set of {T}")
        seg.append(x)
        T = section(T, x)
    raise InsufficientWindow(f"no initial segment of length <= {limit} lies in {B}")


def _dominating(s: tuple, window: tuple) -> Iterator[tuple]:
    def rec(i, lo, acc):
        if i == len(s):
            yield tuple(acc)
            return
        for x in window:
            if x > lo and x >= s[i]:
                yield from rec(i + 1, x, acc + [x])
    yield from rec(0, 0, [])


def is_spreading(B: BarrierTerm, window) -> bool:
    """Check the spreading property for members and dominating sets inside the
    window (same length as the member).  Sound only relative to the window."""
    window = tuple(x for x in sorted(set(window)) if x in ground(B))
    members = front(B, window)
    if not members:
        warnings.warn(f"{B} has no members inside the window", EmptyFrontWarning)
        return True
    for s in members:
        for r in _dominating(s, window):
            if not in_closure(B, r):
                return False
    return True


def is_thin(members) -> bool:
    """No two distinct members are ⊆-comparable (hence not ⊑-comparable)."""
    sets = [frozenset(s) for s in members]
    for a, b in itertools.combinations(sets, 2):
        if a <= b or b <= a:
            return False
    return True


def oplus(B: BarrierTerm, C: BarrierTerm) -> BarrierTerm:
    if ground(B) != ground(C):
        raise BarrierError("the summands must share a ground set")
    return Sum(B, C)


# -- embedding one barrier into another and the projection psi --

def embed_prefix(F: BarrierTerm, G: BarrierTerm, M: OrderedSet, N: OrderedSet,
                 count: int, depth: int = 256) -> tuple:
    """First ``count`` elements of a set L0 ⊆ N with T_{M,L}(F↾M) inside the
    ⊑-closure of G↾L for every L ⊆ L0.

    Follows the inductive construction on the rank of G, always taking the
    least admissible element.  Candidates are drawn from the first ``depth``
    elements of N.
    """
    if rank(G) < rank(F):
        raise BarrierError(f"rank({F}) = {rank(F)} exceeds rank({G}) = {rank(G)}")
    cands = take(N, depth) if isinstance(N, InfSetWindow) else tuple(N)
    picks = _embed(F, G, M, cands, count)
    if len(picks) < count:
        raise InsufficientWindow(
            f"only {len(picks)} of {count} elements found within depth {depth}")
    return tuple(picks[:count])


def _embed(F, G, M, cands: tuple, need: int) -> tuple:
    if need <= 0:
        return ()
    if rank(G).is_finite:
        # finite rank: G↾L = [L]^g and F↾M transfers to [L]^f, f <= g
        return cands
    picks: list = []
    cur = cands
    k = 0
    while len(picks) < need:
        m = nth(M, k + 1)
        target = rank(section(F, m))
        G_ground = ground(G)
        l = next((x for x in cur if x in G_ground and target <= rank(section(G, x))), None)
        if l is None:
            break
        picks.append(l)
        k += 1
        if len(picks) == need:
            break
        rest = tuple(x for x in cur if x > l)
        cur = _embed(section(F, m), section(G, l), after(M, m), rest, need - len(picks))
    return tuple(picks)


def check_embedding(F: BarrierTerm, G: BarrierTerm, M: OrderedSet, L: OrderedSet,
                    depth: int) -> tuple:
    """Verify T_{M,L}(s) ∈ closure(G) for every s ∈ F inside the first ``depth``
    elements of M whose transfer is defined.  Returns (ok, checked, failures)."""
    Mw = take(M, depth) if isinstance(M, InfSetWindow) else tuple(M[:depth])
    Lsize = len(L) if not isinstance(L, InfSetWindow) else depth
    failures = []
    checked = 0
    for s in front(F, Mw):
        if any(position(M, x) > Lsize for x in s):
            continue
        t = transfer_map(s, M, L)
        checked += 1
        if not in_closure(G, t):
            failures.append((s, t))
    return not failures, checked, failures


def project(F: BarrierTerm, G: BarrierTerm, M: OrderedSet, L: OrderedSet, s) -> tuple:
    """``psi_{L,M}(s)``: the unique t ∈ F↾M with T_{M,L}(t) ⊑ s."""
    s = check_finset(s)
    found = []
    for j in range(len(s) + 1):
        u = s[:j]
        try:
            t = transfer_map(u, L, M)
        except (InsufficientWindow, ValueError):
            break
        if _member(F, t):
            found.append(t)
    if not found:
        raise NoProjection(f"no initial segment of {s} transfers into {F}")
    if len(found) > 1:
        raise NoProjection(f"several initial segments of {s} transfer into {F}: {found}")
    return found[0]


# -- JSON --

def term_to_json(B: BarrierTerm):
    if isinstance(B, Leaf):
        return {"leaf": {}}
    if isinstance(B, Cube):
        return {"cube": B.k}
    if isinstance(B, Schreier):
        return {"schreier": {}}
    if isinstance(B, Sum):
        return {"sum": [term_to_json(B.left), term_to_json(B.right)]}
    if isinstance(B, Section):
        return {"section": [term_to_json(B.base), B.n]}
    if isinstance(B, Transfer):
        return {"transfer": [term_to_json(B.base), window_to_json(B.M), window_to_json(B.N)]}
    if isinstance(B, Restrict):
        return {"restrict": [term_to_json(B.base), window_to_json(B.M)]}
    raise TypeError(f"not a barrier term: {B!r}")


def term_from_json(d) -> BarrierTerm:
    if not isinstance(d, dict) or len(d) != 1:
        raise ValueError(f"malformed barrier term: {d!r}")
    (key, val), = d.items()
    if key == "leaf":
        return Leaf()
    if key == "cube":
        return cube(int(val))
    if key == "schreier":
        return Schreier()
    if key == "sum":
        return Sum(term_from_json(val[0]), term_from_json(val[1]))
    if key == "section":
        return Section(term_from_json(val[0]), int(val[1]))
    if key == "transfer":
        return Transfer(term_from_json(val[0]), parse_window(val[1]), parse_window(val[2]))
    if key == "restrict":
        return Restrict(term_from_json(val[0]), parse_window(val[1]))
    raise ValueError(f"unknown barrier term {key!r}")
