"""Finite Ramsey homogenization and the stabilizers built on it."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import barrier as br
from . import normspace as ns
from .plegma import enumerate_plegma, union


class TargetUnreachable(RuntimeError):
    def __init__(self, msg, best=()):
        super().__init__(msg)
        self.best = best


class WindowExhausted(RuntimeError):
    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


@dataclass
class Coloring:
    """A coloring of the k-subsets of a finite window."""
    k: int
    colors: int
    table: dict

    def __call__(self, s) -> int:
        return self.table[tuple(s)]

    @classmethod
    def from_function(cls, k: int, colors: int, fn: Callable, window: Sequence[int]) -> "Coloring":
        return cls(k, colors, {s: int(fn(s)) for s in itertools.combinations(sorted(window), k)})

    @classmethod
    def random(cls, k: int, window: Sequence[int], seed: int, colors: int = 2) -> "Coloring":
        rng = random.Random(seed)
        return cls(k, colors, {s: rng.randrange(colors)
                               for s in itertools.combinations(sorted(window), k)})

    @property
    def window(self) -> tuple:
        return tuple(sorted(set().union(*map(set, self.table)))) if self.table else ()

    def to_json(self) -> dict:
        return {"k": self.k, "colors": self.colors,
                "table": [[list(s), c] for s, c in sorted(self.table.items())]}

    @classmethod
    def from_json(cls, d: dict) -> "Coloring":
        return cls(int(d["k"]), int(d.get("colors", 2)),
                   {tuple(s): int(c) for s, c in d["table"]})


@dataclass(frozen=True)
class Schedule:
    eps: tuple

    def __post_init__(self):
        eps = tuple(ns.frac(x) for x in self.eps)
        if not eps or any(x <= 0 for x in eps):
            raise ValueError("a schedule needs positive values")
        if any(a <= b for a, b in zip(eps, eps[1:])):
            raise ValueError("a schedule must be strictly decreasing")
        object.__setattr__(self, "eps", eps)

    def at(self, level: int) -> Fraction:
        """eps_level, 1-based; the last value is reused past the end."""
        return self.eps[min(level, len(self.eps)) - 1]

    @classmethod
    def geometric(cls, first, ratio, count: int) -> "Schedule":
        first, ratio = ns.frac(first), ns.frac(ratio)
        return cls(tuple(first * ratio ** i for i in range(count)))


def is_monochromatic(C, H: Sequence[int], k: Optional[int] = None) -> Optional[int]:
    """The common color of [H]^k, or None."""
    k = C.k if k is None else k
    seen = {C(s) for s in itertools.combinations(sorted(H), k)}
    if len(seen) > 1:
        return None
    return seen.pop() if seen else 0


def _search_color(C, ground: list, k: int, color: int, target: int, budget: list):
    """Increasing DFS for a target-size set with [H]^k of one color."""

    def ok(H, x):
        for T in itertools.combinations(H, k - 1):
            if C(T + (x,)) != color:
                return False
        return True

    def rec(H, start):
        if len(H) == target:
            return H
        for idx in range(start, len(ground)):
            if len(H) + len(ground) - idx < target:
                return None
            budget[0] -= 1
            if budget[0] < 0:
                return None
            x = ground[idx]
            if len(H) < k - 1 or ok(H, x):
                got = rec(H + (x,), idx + 1)
                if got is not None:
                    return got
        return None

    return rec((), 0)


def _pigeonhole(C, ground: list, k: int) -> tuple:
    """The finite Ramsey argument: returns (color, H)."""
    if k == 1:
        classes: dict = {}
        for x in ground:
            classes.setdefault(C((x,)), []).append(x)
        c = max(sorted(classes), key=lambda c: len(classes[c]))
        return c, tuple(classes[c])
    rest = list(ground)
    picked, tags = [], []
    while len(rest) >= k:
        a = rest.pop(0)
        sub = _Induced(C, a, k - 1)
        c, H = _pigeonhole(sub, rest, k - 1)
        picked.append(a)
        tags.append(c)
        rest = list(H)
    # a k-set of picked elements has the tag of its minimum; the tail is
    # shorter than k, so tagged elements of one color plus the tail work
    best = (0, tuple(rest))
    for c in sorted(set(tags)):
        H = tuple(x for x, t in zip(picked, tags) if t == c) + tuple(rest)
        if len(H) > len(best[1]):
            best = (c, H)
    return best


class _Induced:
    def __init__(self, C, a, k):
        self.C, self.a, self.k = C, a, k

    def __call__(self, t):
        return self.C((self.a,) + tuple(t))


def homogenize(C, ground: Sequence[int], target: int, exact_limit: int = 16,
               budget: int = 2_000_000) -> tuple:
    """(color, H) with H ⊆ ground, |H| >= target and [H]^k monochromatic.

    Exact increasing DFS (colors in order) is used when the ground is small;
    above ``exact_limit`` the pigeonhole construction is tried first and the
    DFS is run with a node budget if it falls short.
    """
    ground = sorted(ground)
    k = C.k
    if k == 1:
        c, H = _pigeonhole(C, ground, 1)
        if len(H) < target:
            raise TargetUnreachable(f"largest color class has {len(H)} < {target}", H)
        return c, H
    if len(ground) < max(target, k):
        raise TargetUnreachable("ground smaller than the target", ())
    best: tuple = (None, ())
    if len(ground) > exact_limit:
        c, H = _pigeonhole(C, ground, k)
        if len(H) >= target:
            return c, tuple(sorted(H))
        best = (c, tuple(sorted(H)))
        left = [budget]
    else:
        left = [float("inf")]
    for color in range(C.colors):
        H = _search_color(C, ground, k, color, target, left)
        if H is not None:
            assert is_monochromatic(C, H, k) == color
            return color, H
    raise TargetUnreachable(f"no homogeneous set of size {target} found", best[1])


# -- stabilization over N_k --

@dataclass
class StabilizeResult:
    M: tuple
    center: ns.SeminormPoint
    depth: int
    checked: int
    worst: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"M": list(self.M), "center": self.center.to_json(), "depth": self.depth,
                "checked": self.checked,
                "worst": {str(l): ns.frac_str(v) for l, v in sorted(self.worst.items())}}


def tuple_level(M: Sequence[int], s) -> int:
    """Largest l with s inside M/m_l, but at least 1."""
    lo = min(union(s)) if union(s) else None
    if lo is None:
        return 1
    return max(1, list(M).index(lo))


def stabilize_front(F: Callable, B: br.BarrierTerm, n: int, sched: Schedule,
                    window: Sequence[int], admissible: Optional[Callable] = None,
                    mesh=None, net_eps=None, max_exact_centers: int = 32) -> StabilizeResult:
    """Largest M ⊆ window and a center x with d(F(s), x) < eps_l (upper end of
    the certified bracket) for every plegma tuple s inside M, where l is the
    level of s.  Candidate centers are the values of F themselves when there
    are few distinct ones, and otherwise the cell gauges of those values.
    """
    window = tuple(sorted(window))
    tuples = [t for t in enumerate_plegma(B, n, window)
              if admissible is None or admissible(t)]
    values = {t: F(t) for t in tuples}
    net_eps = ns.frac(net_eps) if net_eps is not None else sched.eps[-1] / 2
    # exact values of F first (when few), then one cell gauge per net cell
    exact: list = []
    for t in tuples:
        rho = values[t]
        if not any(ns.same_rows(rho, q) for q in exact):
            exact.append(rho)
        if len(exact) > max_exact_centers:
            exact = []
            break
    centers: list = list(exact)
    keys: set = set()
    for t in tuples if not exact else ():
        rho = values[t]
        if rho.dim == 1:
            key, gauge = ("dim1",), ns.l1_point(1)
        else:
            m = ns.fit_mesh(rho.dim, net_eps / (2 * rho.dim))
            key = ns.cell_key(rho, net_eps, m)
            gauge = None
        if key not in keys:
            keys.add(key)
            gauge = gauge or ns.cell_representative(key, rho.dim, net_eps, m)
            if not any(ns.same_rows(gauge, q) for q in exact):
                centers.append(gauge)
    if not tuples:
        raise WindowExhausted("no plegma tuples in the window")
    if mesh is None:
        # keep the bracket slack (k-1)*mesh at a quarter of the finest eps
        dim = values[tuples[0]].dim
        mesh = sched.eps[-1] / (4 * max(1, dim - 1))
    mesh = ns.frac(mesh)

    by_top: dict = {}
    for t in tuples:
        by_top.setdefault(max(union(t)), []).append(t)

    best: Optional[StabilizeResult] = None
    for x in centers:
        dist_cache: dict = {}

        def hi(t):
            v = dist_cache.get(t)
            if v is None:
                v = dist_cache[t] = ns.distance(values[t], x, mesh).hi
            return v

        found = _largest_stable(window, by_top, hi, sched)
        if best is None or len(found) > len(best.M):
            best = StabilizeResult(found, x, 0, 0)
    M = best.M
    inside = [t for t in tuples if set(union(t)) <= set(M)]
    worst: dict = {}
    x = best.center
    for t in inside:
        l = tuple_level(M, t)
        d = ns.distance(values[t], x, mesh).hi
        if d >= sched.at(l):
            raise AssertionError(f"re-check failed at {t}")
        worst[l] = max(worst.get(l, Fraction(0)), d)
    best.depth = max(worst) if worst else 0
    best.checked = len(inside)
    best.worst = worst
    if best.depth < 1:
        raise WindowExhausted("no level could be verified", best)
    return best


def _largest_stable(window: tuple, by_top: dict, hi: Callable, sched: Schedule) -> tuple:
    best = [()]

    def admissible(M):
        top = M[-1]
        for t in by_top.get(top, ()):
            u = union(t)
            if not set(u) <= set(M):
                continue
            if hi(t) >= sched.at(tuple_level(M, t)):
                return False
        return True

    def rec(M, idx):
        if len(M) > len(best[0]):
            best[0] = M
        if len(M) + len(window) - idx <= len(best[0]):
            return
        for j in range(idx, len(window)):
            if len(M) + len(window) - j <= len(best[0]):
                return
            cand = M + (window[j],)
            if admissible(cand):
                rec(cand, j + 1)

    rec((), 0)
    return best[0]


# -- oscillation stability and the coloring round trip --

def _certify(points: list, eps: Fraction, mesh: Fraction) -> Optional[Fraction]:
    """Largest certified pairwise upper bound, refining the mesh until < eps."""
    distinct: list = []
    for p in points:
        if not any(p.rows is not None and p.rows == q.rows for q in distinct):
            distinct.append(p)
    m = mesh
    while True:
        worst = Fraction(0)
        for a, b in itertools.combinations(distinct, 2):
            worst = max(worst, ns.distance(a, b, m).hi)
        if worst < eps or m < Fraction(1, 64):
            return worst
        m /= 2


def oscillation_stable_subset(vectors: Sequence[ns.Vector], W: ns.NormingSet, k: int, eps,
                              target: int, mesh=Fraction(1, 8)) -> tuple:
    """Indices M (1-based into ``vectors``) with |M| >= target on whose k-tuples
    the spanned seminorms pairwise differ by less than eps (certified)."""
    eps = ns.frac(eps)
    vectors = list(vectors)
    N = len(vectors)
    cell_eps = eps / 2
    cell_mesh = ns.fit_mesh(k, cell_eps / (2 * k))
    rhos, table, key_ids = {}, {}, {}
    for t in itertools.combinations(range(1, N + 1), k):
        rho = ns.span_seminorm(W, [vectors[i - 1] for i in t])
        rhos[t] = rho
        key = ns.cell_key(rho, cell_eps, cell_mesh) if k > 1 else ()
        table[t] = key_ids.setdefault(key, len(key_ids))
    C = Coloring(k, max(1, len(key_ids)), table)
    _, H = homogenize(C, range(1, N + 1), target)
    worst = _certify([rhos[t] for t in itertools.combinations(H, k)], eps, ns.frac(mesh))
    if worst is None or worst >= eps:
        raise TargetUnreachable(f"certified oscillation {worst} is not below {eps}", H)
    return tuple(H)


@dataclass
class RoundTripReport:
    M: tuple
    color: int
    norms: dict
    verdict: bool
    oracle: bool

    @property
    def matches(self) -> bool:
        return self.verdict == self.oracle

    def to_json(self) -> dict:
        return {"M": list(self.M), "color": self.color,
                "norms": {",".join(map(str, t)): ns.frac_str(v) for t, v in sorted(self.norms.items())},
                "homogeneous": self.verdict, "oracle": self.oracle, "matches": self.matches}


def ramsey_roundtrip(C: Coloring, window: Sequence[int], target: int = 4,
                     eps=Fraction(1, 2)) -> RoundTripReport:
    """Color -> norm -> oscillation stable set -> decoded color."""
    if C.colors != 2:
        raise ValueError("the round trip needs a 2-coloring")
    window = tuple(sorted(window))
    k = C.k
    W = ns.coloring_norming_set(C, window)
    idx = oscillation_stable_subset([ns.e(i) for i in window], W, k, eps, target)
    M = tuple(window[i - 1] for i in idx)
    norms = {t: ns.norm(W, ns.combination([1] * k, [ns.e(i) for i in t]))
             for t in itertools.combinations(M, k)}
    # a norm of k means color 0, at most k-1 means color 1
    decoded = {t: 0 if v >= k - Fraction(1, 2) else 1 for t, v in norms.items()}
    colors = set(decoded.values())
    verdict = len(colors) == 1
    color = min(colors)
    oracle = is_monochromatic(C, M) == color
    return RoundTripReport(M, color, norms, verdict, oracle)
