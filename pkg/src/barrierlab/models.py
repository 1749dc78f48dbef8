"""Barrier-indexed matrices, the seminorm map Psi^n and asymptotic models."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import barrier as br
from . import normspace as ns
from .plegma import NotDecomposable, decompose, enumerate_plegma, is_plegma, union
from .ramsey import Schedule, WindowExhausted, stabilize_front


class NotPlegma(ValueError):
    pass


class NotMember(ValueError):
    pass


class NotCoordinatewiseNull(RuntimeError):
    pass


@dataclass
class MatrixSource:
    """x^row_s for s in the barrier; ``entry(row, s)`` must be pure."""
    barrier: br.BarrierTerm
    host: ns.NormingSet
    entry: Callable
    kind: str = "general"
    normalized: bool = True
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, row: int, s) -> ns.Vector:
        key = (row, tuple(s))
        v = self._cache.get(key)
        if v is None:
            v = self._cache[key] = self.entry(row, tuple(s))
        return v

    def check_normalized(self, rows: int, window) -> list:
        """Entries with norm != 1 among the given rows and window members."""
        bad = []
        for s in br.front(self.barrier, window):
            for i in range(1, rows + 1):
                if ns.norm(self.host, self(i, s)) != 1:
                    bad.append((i, s))
        return bad


def psi_n(mx: MatrixSource, t) -> ns.SeminormPoint:
    """a -> ||sum_i a_i x^i_{t_i}||."""
    t = tuple(tuple(s) for s in t)
    if not is_plegma(t):
        raise NotPlegma(f"{t} is not plegma")
    for s in t:
        if not br._member(mx.barrier, s):
            raise NotMember(f"{s} is not in {mx.barrier}")
    vecs = [mx(i, s) for i, s in enumerate(t, 1)]
    return ns.span_seminorm(mx.host, vecs, f"Psi^{len(t)}{t}")


@dataclass
class ModelReport:
    M: tuple
    rhos: list
    levels: list
    compat_defects: dict
    is_norm: list
    kernels: list
    depth: int
    partial: bool = False

    @property
    def nmax(self) -> int:
        return len(self.rhos)

    def to_json(self) -> dict:
        return {
            "M": list(self.M),
            "rhos": [r.to_json() for r in self.rhos],
            "levels": [{"M": list(l.M), "depth": l.depth, "checked": l.checked}
                       for l in self.levels],
            "compat_defects": {f"{n},{m}": iv.to_json()
                               for (n, m), iv in sorted(self.compat_defects.items())},
            "is_norm": self.is_norm,
            "kernels": [[[ns.frac_str(x) for x in v] for v in ker] if ker else []
                        for ker in self.kernels],
            "depth": self.depth,
            "partial": self.partial,
        }


def _exact_centers(values) -> list:
    out = []
    for rho in values:
        if not any(ns.same_rows(rho, q) for q in out):
            out.append(rho)
    return out


def stabilize_matrix(mx: MatrixSource, nmax: int, sched: Schedule, window: Sequence[int],
                     admissible: Optional[Callable] = None, mesh=None) -> ModelReport:
    """Nested stabilization M_1 ⊇ M_2 ⊇ ... and the diagonal M = {m_n}."""
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    cur = tuple(sorted(window))
    levels, rhos = [], []
    partial = False
    for n in range(1, nmax + 1):
        adm = None if admissible is None else (lambda t, n=n: admissible(t, n))
        try:
            res = stabilize_front(lambda t: psi_n(mx, t), mx.barrier, n, sched, cur,
                                  admissible=adm, mesh=mesh)
        except WindowExhausted:
            if not rhos:
                raise
            partial = True
            break
        levels.append(res)
        rhos.append(res.center)
        cur = res.M
    # m_1 = min M_1, m_{n+1} = min(M_{n+1}/m_n), then the tail of the last M
    diag = []
    for res in levels:
        above = [m for m in res.M if not diag or m > diag[-1]]
        if not above:
            partial = True
            break
        diag.append(above[0])
    tail = [m for m in levels[-1].M if diag and m > diag[-1]]
    M = tuple(diag + tail)
    defects = {}
    for n in range(1, len(rhos) + 1):
        for m in range(n + 1, len(rhos) + 1):
            d_mesh = ns.frac(mesh) if mesh is not None else sched.eps[-1] / (4 * max(1, n - 1))
            defects[(n, m)] = ns.distance(rhos[n - 1], rhos[m - 1].restrict(n), d_mesh)
    is_norm, kernels = [], []
    for rho in rhos:
        if rho.rows is None:
            is_norm.append(None)
            kernels.append(None)
        else:
            ker = ns.kernel(rho)
            is_norm.append(not ker)
            kernels.append(ker)
    depth = min(l.depth for l in levels) if levels else 0
    return ModelReport(M, rhos, levels, defects, is_norm, kernels, depth, partial)


def constant_rows(barrier: br.BarrierTerm, host: ns.NormingSet, fn: Callable,
                  name: str = "") -> MatrixSource:
    return MatrixSource(barrier, host, lambda row, s: fn(s), "constant", True, name)


def spreading_model(seq: Sequence[ns.Vector], host: ns.NormingSet, nmax: int, sched: Schedule,
                    window: Optional[Sequence[int]] = None) -> ModelReport:
    """Constant-rows matrix over Cube(1) on the tuples with s(1) >= |s| = n."""
    seq = list(seq)
    mx = constant_rows(br.Cube(1), host, lambda s: seq[s[0] - 1], "sequence")
    if window is None:
        window = range(1, len(seq) + 1)

    def adm(t, n):
        return min(union(t)) >= n

    return stabilize_matrix(mx, nmax, sched, window, admissible=adm)


def unit_basis(count: int) -> list:
    return [ns.e(i) for i in range(1, count + 1)]


def build_sum_matrix(mx: MatrixSource) -> MatrixSource:
    """Over Cube(1) ⊕ B: x^i_{l⌢s} = x^l_s for every row i."""
    B = br.Sum(br.Cube(1), mx.barrier)
    return MatrixSource(B, mx.host, lambda row, u: mx(u[0], u[1:]), "constant",
                        mx.normalized, f"sum({mx.name})")


@dataclass
class LiftedMatrix(MatrixSource):
    fallback_hits: set = field(default_factory=set, repr=False)
    uses_fallback: Callable = None


def lift_block_matrix(expansion: Callable, k: int, inner: MatrixSource,
                      fallback: Optional[ns.Vector] = None) -> LiftedMatrix:
    """Over Cube(k) ⊕ B: z^j_{t⌢s} = sum_{i in F} a_i x^i_{r_i} / ||...|| where
    (r_i) is the decomposition of s and ``expansion(t, j) = (F, {i: a_i})``."""
    fallback = ns.e(1) if fallback is None else fallback
    B = br.Sum(br.cube(k), inner.barrier)
    hits: set = set()

    def build(row, u):
        t, s = u[:k], u[k:]
        F, coeffs = expansion(t, row)
        top = max(F)
        try:
            r = decompose(inner.barrier, s, top)
        except NotDecomposable:
            return None
        v = ns.combination([coeffs.get(i, 0) for i in range(1, top + 1)],
                           [inner(i, r[i - 1]) for i in range(1, top + 1)])
        nv = ns.norm(inner.host, v)
        if nv == 0:
            return None
        return v * (1 / nv)

    def entry(row, u):
        v = build(row, u)
        if v is None:
            hits.add((row, tuple(u)))
            return fallback
        return v

    out = LiftedMatrix(B, inner.host, entry, "general", True, f"lift({inner.name})")
    out.fallback_hits = hits
    out.uses_fallback = lambda row, u: build(row, u) is None
    return out


def is_plegma_block(mx: MatrixSource, n: int, window: Sequence[int]) -> tuple:
    """(True, m) with m least such that every plegma n-tuple beyond m has
    successive supports, or (False, violating tuple)."""
    window = tuple(sorted(window))
    tuples = enumerate_plegma(mx.barrier, n, window)
    witness = None
    for m in (0,) + window:
        rel = [t for t in tuples if union(t) and min(union(t)) > m]
        if not rel:
            break
        bad = next((t for t in rel if not _successive([mx(i, s) for i, s in enumerate(t, 1)])),
                   None)
        if bad is None:
            return True, m
        if witness is None:
            witness = bad
    return False, witness


def _successive(vecs) -> bool:
    last = 0
    for v in vecs:
        supp = v.support()
        if not supp:
            continue
        if supp[0] <= last:
            return False
        last = supp[-1]
    return True


# -- gliding hump --

@dataclass
class GlideResult:
    matrix: MatrixSource
    k: tuple
    cuts: tuple
    errors: dict
    rows: int

    def bound_ok(self) -> bool:
        """||y^n_i - x^n_{k_i}|| <= 2^-(n+i+1) for every row and column."""
        return all(err <= Fraction(1, 2 ** (n + i + 1)) for (n, i), err in self.errors.items())

    def telescoped(self, s) -> Fraction:
        """sum_i ||y^i_{s(i)} - x^i_{k_{s(i)}}||, which bounds the change of the
        seminorm on [-1,1]^l."""
        return sum((self.errors[(i, c)] for i, c in enumerate(s, 1)), Fraction(0))

    def to_json(self) -> dict:
        return {"k": list(self.k), "cuts": list(self.cuts), "rows": self.rows,
                "errors": {f"{n},{i}": ns.frac_str(v) for (n, i), v in sorted(self.errors.items())}}


def gliding_hump(x: Callable, host: ns.NormingSet, rows: int, columns: int,
                 available: int) -> GlideResult:
    """Block rows y^n_i: the least usable k_i > k_{i-1}, truncated below the
    last support of column i-1, so that the removed head has norm at most
    2^-(n+i+1) in every row n <= rows."""
    ks, cuts, ys, errors = [], [], {}, {}
    P = 0
    k = 0
    for i in range(1, columns + 1):
        chosen = None
        for cand in range(k + 1, available + 1):
            heads = {n: x(n, cand).restrict(lambda j: j <= P) for n in range(1, rows + 1)}
            errs = {n: ns.norm(host, h) for n, h in heads.items()}
            if all(errs[n] <= Fraction(1, 2 ** (n + i + 1)) for n in errs):
                chosen = (cand, errs)
                break
        if chosen is None:
            raise NotCoordinatewiseNull(
                f"no column beyond {k} has heads on [1, {P}] within budget for column {i}")
        k, errs = chosen
        ks.append(k)
        cuts.append(P)
        top = P
        for n in range(1, rows + 1):
            y = x(n, k).restrict(lambda j, P=P: j > P)
            ys[(n, i)] = y
            errors[(n, i)] = errs[n]
            if y.coords:
                top = max(top, max(y.coords))
        P = top
    mx = MatrixSource(br.Cube(1), host, lambda row, s: ys[(row, s[0])], "block", False, "glide")
    return GlideResult(mx, tuple(ks), tuple(cuts), errors, rows)


def random_null_matrix(seed: int, rows: int, columns: int, host: ns.NormingSet = None):
    """Normalized x^n_i = e_{main} plus small heads on earlier coordinates
    that decay in i, so every coordinate tends to 0 along each row."""
    host = ns.L1() if host is None else host
    rng = random.Random(seed)
    table = {}
    for n in range(1, rows + 1):
        for i in range(1, columns + 1):
            main = (rows + 1) * i + n
            coords = {main: Fraction(1)}
            for _ in range(rng.randint(0, 3)):
                j = rng.randint(1, main - 1)
                c = Fraction(rng.randint(-8, 8), 2 ** (i + rng.randint(3, 8)))
                coords[j] = coords.get(j, 0) + c
            v = ns.Vector(coords)
            table[(n, i)] = v * (1 / ns.norm(host, v))
    return lambda n, i: table[(n, i)]
