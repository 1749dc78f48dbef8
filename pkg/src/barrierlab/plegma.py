"""Plegma tuples: the predicate, enumeration and the constructive lemmas."""
from __future__ import annotations

from typing import Sequence

from . import barrier as br
from .finset import (
    InsufficientWindow,
    OrderedSet,
    after,
    between,
    check_finset,
    every,
    member,
    nth,
    shift_down,
    transfer_map,
)


class GapTooSmall(ValueError):
    pass


class NotDecomposable(ValueError):
    pass


def is_plegma(t: Sequence[Sequence[int]]) -> bool:
    """Nondecreasing lengths, and for all i, j and k <= min(|s_i|, |s_j|):
    s_i(k) < s_{i+1}(k) < ... < s_n(k) < s_j(k+1), where terms past the end of
    s_j are skipped."""
    t = [tuple(s) for s in t]
    for s in t:
        if any(a >= b for a, b in zip(s, s[1:])):
            return False
    n = len(t)
    if any(len(t[i]) > len(t[i + 1]) for i in range(n - 1)):
        return False
    for i in range(n):
        for j in range(n):
            for k in range(1, min(len(t[i]), len(t[j])) + 1):
                chain = [t[q][k - 1] for q in range(i, n)]
                if len(t[j]) > k:
                    chain.append(t[j][k])
                if any(a >= b for a, b in zip(chain, chain[1:])):
                    return False
    return True


def _prefix_ok(t) -> bool:
    # every prefix of a plegma tuple is plegma, so extensions can be pruned
    return is_plegma(t)


def enumerate_plegma(B: br.BarrierTerm, n: int, window) -> list:
    """All n-tuples of members of B inside the window that are plegma, in
    lexicographic order of the flattened tuples."""
    members = br.front(B, window)
    out: list = []

    def rec(acc):
        if len(acc) == n:
            out.append(tuple(acc))
            return
        for s in members:
            cand = acc + [s]
            if _prefix_ok(cand):
                rec(cand)

    rec([])
    return sorted(out, key=lambda t: (sum(t, ()), t))


def union(t) -> tuple:
    return tuple(sorted(set().union(*map(set, t)))) if t else ()


def pick_sections(Bs: Sequence[br.BarrierTerm], M: OrderedSet, limit: int = 4096) -> list:
    """Least m_1 < ... < m_n in M whose sections have nondecreasing ranks."""
    ranks = [br.rank(B) for B in Bs]
    if any(r.is_zero for r in ranks):
        raise ValueError("all barriers need positive rank")
    if any(a > b for a, b in zip(ranks, ranks[1:])):
        raise ValueError("ranks must be nondecreasing")
    out = []
    prev_m, prev_rank = 0, None
    k = 1
    for B in Bs:
        while True:
            if k > limit:
                raise InsufficientWindow("no admissible section within the window")
            m = nth(M, k)
            k += 1
            if m <= prev_m or m not in br.ground(B):
                continue
            sec = br.section(B, m)
            lam = br.rank(sec)
            if prev_rank is None or prev_rank <= lam:
                out.append((m, sec))
                prev_m, prev_rank = m, lam
                break
    return out


def construct_plegma(Bs: Sequence[br.BarrierTerm], M: OrderedSet) -> tuple:
    """A plegma tuple (s_i) with s_i ∈ B_i↾M, by induction on the top rank."""
    Bs = list(Bs)
    ranks = [br.rank(B) for B in Bs]
    if any(a > b for a, b in zip(ranks, ranks[1:])):
        raise ValueError("ranks must be nondecreasing")
    n = len(Bs)
    if ranks[-1].is_finite:
        # residue classes mod n; the j-th class starts with the j-th element
        return tuple(br.initial_member(B, every(M, n, j)) for j, B in enumerate(Bs, 1))
    i0 = next(i for i, r in enumerate(ranks) if not r.is_zero)
    picks = pick_sections(Bs[i0:], M)
    rest = construct_plegma([sec for _, sec in picks], after(M, picks[-1][0]))
    head = tuple(() for _ in range(i0))
    return head + tuple((m,) + s for (m, _), s in zip(picks, rest))


def extend_plegma(t: Sequence[Sequence[int]], L: OrderedSet, M: OrderedSet) -> tuple:
    """Pad a plegma tuple inside M to equal lengths |t_n| using elements of L.

    Column by column, rows that have run out get the least elements of L
    strictly between the previous column's last entry and the first given
    entry of this column.  In the first column the lower bound is the largest
    element of M below the tuple.
    """
    t = [check_finset(s) for s in t]
    if not is_plegma(t):
        raise ValueError(f"{t} is not plegma")
    K = len(t[-1])
    flat = [x for s in t for x in s]
    if K == 0:
        return tuple(t)
    for x in flat:
        if not member(M, x):
            raise ValueError(f"{x} is not in M")
    lo0 = min(flat)
    cut = 0
    k = 1
    while True:
        try:
            m = nth(M, k)
        except InsufficientWindow:
            break
        if m >= lo0:
            break
        cut = m
        k += 1
    rows = [list(s) for s in t]
    n = len(rows)
    prev_last = cut
    for col in range(K):
        given = [i for i in range(n) if len(t[i]) > col]
        first = t[given[0]][col]
        missing = [i for i in range(n) if len(t[i]) <= col]
        pool = between(L, prev_last, first)
        if len(pool) < len(missing):
            raise GapTooSmall(f"need {len(missing)} elements of L in ({prev_last}, {first}),"
                              f" found {len(pool)}")
        for i, x in zip(missing, pool):
            rows[i].append(x)
        prev_last = t[-1][col]
    out = tuple(tuple(r) for r in rows)
    assert is_plegma(out)
    return out


def decompose(B: br.BarrierTerm, s, n: int) -> tuple:
    """The Plm_n(B)-decomposition of s: r_i ⊑ s shifted down by n - i."""
    s = check_finset(s)
    if not s or s[0] <= n:
        raise NotDecomposable(f"need {n} < {s}")
    out = []
    for i in range(1, n + 1):
        shifted = shift_down(s, n - i)
        r = None
        for j in range(len(shifted) + 1):
            if br._member(B, shifted[:j]):
                r = shifted[:j]
                break
        if r is None:
            raise NotDecomposable(f"no initial segment of {shifted} lies in {B}")
        out.append(r)
    out = tuple(out)
    if not is_plegma(out):
        raise NotDecomposable(f"{out} is not plegma")
    return out


def decomposition_domain(B: br.BarrierTerm, counts: Sequence[int], l: int,
                         M: OrderedSet) -> OrderedSet:
    """N = {m_i : i ≡ 0 mod k} / (l + k) with k = max(counts) + 1."""
    k = max(counts) + 1
    return after(every(M, k, 0), l + k)


def concatenated_decompositions(B: br.BarrierTerm, t, counts: Sequence[int]) -> tuple:
    parts = []
    for s, c in zip(t, counts):
        parts.extend(decompose(B, s, c))
    return tuple(parts)


def plegma_refine(F: br.BarrierTerm, G: br.BarrierTerm, M: OrderedSet, L0: OrderedSet,
                  n: int) -> tuple:
    """A plegma tuple (s_i) in G↾L0 whose projections psi(s_i) form a plegma
    tuple in F↾M.  Returns ((s_i), (psi(s_i)))."""
    L = L0
    Lp = every(L, n, 0)
    TF = br.Transfer(F, M, L0)
    t = construct_plegma([TF] * n, Lp)
    tp = extend_plegma(t, L, Lp)
    top = max(tp[-1]) if tp[-1] else 0
    s_out = []
    for i in range(1, n + 1):
        # L''_i = {l_j : j - p ≡ i mod n, j > p}
        resid = every(after(L, top), n, i)
        tail_iter = _Concat(tp[i - 1], resid)
        s_out.append(br.initial_member(G, tail_iter))
    s_out = tuple(s_out)
    if not is_plegma(s_out):
        raise InsufficientWindow(f"rounded tuple {s_out} is not plegma")
    psi = tuple(br.project(F, G, M, L0, s) for s in s_out)
    expected = tuple(transfer_map(ti, L0, M) for ti in t)
    if psi != expected:
        raise br.NoProjection(f"projections {psi} differ from {expected}")
    return s_out, psi


class _Concat:
    """A finite tuple followed by an ordered set, indexable like one."""

    def __init__(self, head: tuple, rest: OrderedSet):
        self.head = tuple(head)
        self.rest = rest

    def __contains__(self, x):
        return x in self.head or x in self.rest

    def element(self, k: int) -> int:
        if k <= len(self.head):
            return self.head[k - 1]
        return nth(self.rest, k - len(self.head))
