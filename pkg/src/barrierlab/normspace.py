"""Vectors and functionals on c00, norming-set norms and the space N_k.

Everything polyhedral is computed with exact :class:`fractions.Fraction`
arithmetic.  Seminorms on R^k are :class:`SeminormPoint` objects; when they come
from a polyhedral norm they also carry an explicit list of rows r with
``rho(a) = max |r . a|``, which makes exact kernel computations possible.
"""
from __future__ import annotations

import functools
import itertools
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np


class EmptyNormingSet(UserWarning):
    pass


class NotNormalized(ValueError):
    pass


class DegenerateSpan(ZeroDivisionError):
    pass


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class _Sparse:
    """A finitely supported map from positive integers to rationals."""

    __slots__ = ("coords",)

    def __init__(self, coords=None):
        if coords is None:
            coords = {}
        elif not isinstance(coords, dict):
            coords = {i: c for i, c in enumerate(coords, 1)}
        self.coords = {int(i): frac(c) for i, c in coords.items() if frac(c) != 0}
        if any(i < 1 for i in self.coords):
            raise ValueError("indices start at 1")

    @classmethod
    def unit(cls, i: int):
        return cls({i: 1})

    def support(self) -> tuple:
        return tuple(sorted(self.coords))

    def __getitem__(self, i: int) -> Fraction:
        return self.coords.get(i, Fraction(0))

    def __add__(self, other):
        out = dict(self.coords)
        for i, c in other.coords.items():
            out[i] = out.get(i, 0) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({i: -c for i, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, a):
        a = frac(a)
        return type(self)({i: a * c for i, c in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(self) is type(other) and self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.coords.items()))))

    def restrict(self, keep) -> "_Sparse":
        """Keep the coordinates i with keep(i) true."""
        return type(self)({i: c for i, c in self.coords.items() if keep(i)})

    def __repr__(self):
        body = ", ".join(f"{i}: {frac_str(c)}" for i, c in sorted(self.coords.items()))
        return f"{type(self).__name__}({{{body}}})"

    def to_json(self) -> dict:
        return {str(i): frac_str(c) for i, c in sorted(self.coords.items())}

    @classmethod
    def from_json(cls, d: dict):
        return cls({int(i): Fraction(c) for i, c in d.items()})


class Vector(_Sparse):
    __slots__ = ()


class Functional(_Sparse):
    __slots__ = ()

    def __call__(self, x: Vector) -> Fraction:
        if len(self.coords) > len(x.coords):
            return sum((c * self[i] for i, c in x.coords.items()), Fraction(0))
        return sum((c * x[i] for i, c in self.coords.items()), Fraction(0))


def e(i: int) -> Vector:
    return Vector.unit(i)


def estar(i: int) -> Functional:
    return Functional.unit(i)


def combination(coeffs: Sequence, xs: Sequence[Vector]) -> Vector:
    out = Vector()
    for a, x in zip(coeffs, xs):
        if a:
            out = out + x * a
    return out


# -- norming sets --

class NormingSet:
    kind = "abstract"

    def evaluate(self, x: Vector) -> Fraction:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class Extensional(NormingSet):
    funcs: tuple = ()
    with_g0: bool = False
    kind = "extensional"

    def evaluate(self, x):
        best = Fraction(0)
        if self.with_g0 and x.coords:
            best = max(abs(c) for c in x.coords.values())
        xs = {i: int(c) if c.denominator == 1 else c for i, c in x.coords.items()}
        for f in _plain_funcs(self):
            if len(f) > len(xs):
                v = abs(sum(c * f.get(i, 0) for i, c in xs.items()))
            else:
                v = abs(sum(c * xs.get(i, 0) for i, c in f.items()))
            if v > best:
                best = v
        return frac(best)

    def is_empty(self) -> bool:
        return not self.funcs and not self.with_g0

    def to_json(self):
        return {"kind": self.kind, "funcs": [f.to_json() for f in self.funcs],
                "g0": self.with_g0}


class L1(NormingSet):
    kind = "l1"

    def evaluate(self, x):
        return sum((abs(c) for c in x.coords.values()), Fraction(0))


class Sup(NormingSet):
    kind = "sup"

    def evaluate(self, x):
        return max((abs(c) for c in x.coords.values()), default=Fraction(0))


@dataclass(frozen=True)
class Lp(NormingSet):
    """Floating evaluation; only used as a host-space oracle."""
    p: float = 2.0
    kind = "lp"

    def evaluate(self, x):
        s = math.fsum(abs(float(c)) ** self.p for c in x.coords.values())
        return Fraction(s ** (1.0 / self.p))

    def to_json(self):
        return {"kind": self.kind, "p": self.p}


class SchreierNorm(NormingSet):
    """sup of sum_{i in s} |x_i| over s with |s| = min s."""
    kind = "schreier"

    def evaluate(self, x):
        if not x.coords:
            return Fraction(0)
        top = max(x.coords)
        best = Fraction(0)
        for m in range(1, top + 1):
            rest = sorted((abs(c) for i, c in x.coords.items() if i > m), reverse=True)
            v = abs(x[m]) + sum(rest[:m - 1], Fraction(0))
            best = max(best, v)
        return best


@dataclass(frozen=True)
class ColoringNorm(NormingSet):
    """G0 together with sum_{i in s} ±e*_i for the k-sets s of color 0."""
    coloring: object = None
    window: tuple = ()
    kind = "coloring"

    def evaluate(self, x):
        best = max((abs(c) for c in x.coords.values()), default=Fraction(0))
        k = self.coloring.k
        for s in itertools.combinations(self.window, k):
            if self.coloring(s) == 0:
                best = max(best, sum((abs(x[i]) for i in s), Fraction(0)))
        return best


def norming_set_from_json(d: dict) -> NormingSet:
    kind = d["kind"]
    if kind == "extensional":
        return Extensional(tuple(Functional.from_json(f) for f in d.get("funcs", [])),
                           bool(d.get("g0", False)))
    if kind == "l1":
        return L1()
    if kind == "sup":
        return Sup()
    if kind == "lp":
        return Lp(float(d.get("p", 2)))
    if kind == "schreier":
        return SchreierNorm()
    raise ValueError(f"unknown norming set kind {kind!r}")


def norm(W: NormingSet, x: Vector) -> Fraction:
    if isinstance(W, Extensional) and W.is_empty():
        warnings.warn("empty norming set, value is 0", EmptyNormingSet, stacklevel=2)
        return Fraction(0)
    return W.evaluate(x)


def w_n(n: int) -> Extensional:
    """{e*_1 - e*_2, (1/n) e*_2}: the non-compactness example."""
    return Extensional((Functional({1: 1, 2: -1}), Functional({2: Fraction(1, n)})))


def coloring_norming_set(C, window: Sequence[int], k: Optional[int] = None) -> Extensional:
    """G0 plus every sum_{i in s} ±e*_i with s a k-subset of the window of color 0."""
    k = C.k if k is None else k
    funcs = []
    for s in itertools.combinations(sorted(window), k):
        if C(s) != 0:
            continue
        for signs in itertools.product((1, -1), repeat=k):
            # f and -f give the same |f(x)|; keep the first sign fixed
            if signs[0] < 0:
                continue
            funcs.append(Functional(dict(zip(s, signs))))
    return Extensional(tuple(funcs), True)


# -- seminorms on R^k --

def _dot(r, a) -> Fraction:
    return sum((x * y for x, y in zip(r, a) if x and y), Fraction(0))


@dataclass
class SeminormPoint:
    dim: int
    func: Callable = None
    provenance: str = ""
    rows: Optional[tuple] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.rows is not None:
            self.rows = _reduce_rows(self.rows)
        if self.func is None and self.rows is None:
            raise ValueError("need an evaluator or rows")

    def __call__(self, a) -> Fraction:
        a = tuple(frac(x) for x in a)
        if len(a) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        hit = self._cache.get(a)
        if hit is not None:
            return hit
        if self.rows is not None:
            v = max((abs(_dot(r, a)) for r in self.rows), default=Fraction(0))
        else:
            v = frac(self.func(a))
        if len(self._cache) < 200000:
            self._cache[a] = v
        return v

    def restrict(self, m: int) -> "SeminormPoint":
        """The seminorm on the first m coordinates."""
        rows = None
        if self.rows is not None:
            rows = tuple(r[:m] for r in self.rows)
        pad = (Fraction(0),) * (self.dim - m)
        return SeminormPoint(m, lambda a: self(tuple(a) + pad), self.provenance + f"|R^{m}", rows)

    def values(self, points: np.ndarray) -> np.ndarray:
        """Float values on an array of points (one per row)."""
        if self.rows is not None:
            R = np.array([[float(x) for x in r] for r in self.rows]) if self.rows else \
                np.zeros((1, self.dim))
            return np.abs(points @ R.T).max(axis=1)
        return np.array([float(self(tuple(Fraction(x).limit_denominator(10**9) for x in p)))
                         for p in points])

    def to_json(self) -> dict:
        d = {"dim": self.dim, "provenance": self.provenance}
        if self.rows is not None:
            d["rows"] = [[frac_str(x) for x in r] for r in self.rows]
        return d


def _reduce_rows(rows) -> tuple:
    # drop zero rows and rows equal to another up to sign
    seen = set()
    out = []
    for r in rows:
        r = tuple(x if type(x) is Fraction else frac(x) for x in r)
        lead = next((x for x in r if x), None)
        if lead is None:
            continue
        key = r if lead > 0 else tuple(-x for x in r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return tuple(out)


def l1_point(k: int) -> SeminormPoint:
    rows = [s for s in itertools.product((1, -1), repeat=k) if s[0] == 1]
    return SeminormPoint(k, None, f"l1^{k}", tuple(rows))


def linf_point(k: int) -> SeminormPoint:
    rows = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    return SeminormPoint(k, None, f"linf^{k}", tuple(rows))


def _schreier_rows(positions: Sequence[int]) -> tuple:
    k = len(positions)
    rows = []
    for size in range(1, k + 1):
        for T in itertools.combinations(range(k), size):
            if size > positions[T[0]]:
                continue
            for signs in itertools.product((1, -1), repeat=size - 1):
                r = [0] * k
                r[T[0]] = 1
                for j, sg in zip(T[1:], signs):
                    r[j] = sg
                rows.append(tuple(r))
    return tuple(rows)


def _plain_funcs(W: Extensional) -> list:
    """Functional coordinates with integral values as ints (cheap to hash)."""
    cached = W.__dict__.get("_plain")
    if cached is None:
        cached = [{i: int(c) if c.denominator == 1 else c for i, c in f.coords.items()}
                  for f in W.funcs]
        object.__setattr__(W, "_plain", cached)
    return cached


def span_seminorm(W: NormingSet, vectors: Sequence[Vector], provenance: str = "") -> SeminormPoint:
    """rho(a) = ||sum a_j v_j||_W, with exact rows when W is polyhedral."""
    vectors = list(vectors)
    k = len(vectors)
    rows = None
    units = all(len(v.coords) == 1 for v in vectors)
    if isinstance(W, Extensional) and units:
        pos = [next(iter(v.coords.items())) for v in vectors]
        zero = Fraction(0)
        ps = [p for p, _ in pos]
        rows = {tuple(d.get(p, 0) for p in ps) for d in _plain_funcs(W)}
        rows = sorted((tuple(x * c for x, (_, c) in zip(r, pos)) for r in rows), key=str)
        if W.with_g0:
            rows += [tuple(c if j == i else zero for j, (_, c) in enumerate(pos))
                     for i in range(k)]
    elif isinstance(W, Extensional):
        rows = [tuple(f(v) for v in vectors) for f in W.funcs]
        if W.with_g0:
            supp = sorted(set().union(*(v.coords for v in vectors)))
            rows += [tuple(v[i] for v in vectors) for i in supp]
    elif isinstance(W, L1) and k <= 12:
        supp = sorted(set().union(*(v.coords for v in vectors)))
        # each coordinate contributes |sum_j a_j v_j(i)|; expand signs over the support
        if len(supp) <= 12:
            rows = []
            for signs in itertools.product((1, -1), repeat=len(supp)):
                rows.append(tuple(sum((sg * v[i] for sg, i in zip(signs, supp)), Fraction(0))
                                  for v in vectors))
    elif isinstance(W, Sup):
        supp = sorted(set().union(*(v.coords for v in vectors)))
        rows = [tuple(v[i] for v in vectors) for i in supp]
    elif isinstance(W, SchreierNorm) and all(len(v.coords) == 1 for v in vectors) and k <= 8:
        pos = [v.support()[0] for v in vectors]
        if list(pos) == sorted(set(pos)):
            scale = [v[p] for v, p in zip(vectors, pos)]
            rows = [tuple(x * c for x, c in zip(r, scale)) for r in _schreier_rows(pos)]

    def func(a):
        return norm(W, combination(a, vectors))

    return SeminormPoint(k, func, provenance or f"span in {W.kind}",
                         None if rows is None else tuple(rows))


def seminorm_point(W: NormingSet, positions: Sequence[int]) -> SeminormPoint:
    positions = tuple(positions)
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise ValueError("positions must be strictly increasing")
    for p in positions:
        if norm(W, e(p)) != 1:
            raise NotNormalized(f"||e_{p}|| != 1")
    return span_seminorm(W, [e(p) for p in positions], f"{W.kind} at {list(positions)}")


def check_seminorm_axioms(rho: SeminormPoint, samples: Iterable) -> bool:
    """Exact homogeneity, triangle inequality and 1-Lipschitz on sample triples."""
    for a, b, lam in samples:
        a, b = tuple(map(frac, a)), tuple(map(frac, b))
        lam = frac(lam)
        if rho(tuple(lam * x for x in a)) != abs(lam) * rho(a):
            return False
        s = tuple(x + y for x, y in zip(a, b))
        if rho(s) > rho(a) + rho(b):
            return False
        d1 = sum((abs(x - y) for x, y in zip(a, b)), Fraction(0))
        if abs(rho(a) - rho(b)) > d1:
            return False
    return all(rho(tuple(int(i == j) for j in range(rho.dim))) == 1 for i in range(rho.dim))


# -- the metric d_k --

@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self):
        return [frac_str(self.lo), frac_str(self.hi)]

    def __str__(self):
        return f"[{float(self.lo):.6g}, {float(self.hi):.6g}]"


FLOAT_MARGIN = Fraction(1, 10**9)


def canonical_rows(rho: SeminormPoint) -> Optional[frozenset]:
    if rho.rows is None:
        return None
    out = set()
    for r in rho.rows:
        lead = next(x for x in r if x)
        out.add(r if lead > 0 else tuple(-x for x in r))
    return frozenset(out)


def same_rows(r1: SeminormPoint, r2: SeminormPoint) -> bool:
    """Sound (not complete) test for equality of polyhedral seminorms."""
    a = canonical_rows(r1)
    return a is not None and a == canonical_rows(r2)


MAX_GRID_POINTS = 40000
# grid points times rows up to which distance() evaluates in exact rationals
EXACT_WORK = 2000


def fit_mesh(k: int, mesh, max_points: int = MAX_GRID_POINTS) -> Fraction:
    """The requested mesh, doubled until the face grid has at most max_points."""
    mesh = frac(mesh)
    while k * (math.ceil(2 / mesh) + 1) ** (k - 1) > max_points and mesh < 2:
        mesh *= 2
    return mesh


def face_grid(k: int, mesh) -> list:
    return list(_face_grid(k, frac(mesh)))


@functools.lru_cache(maxsize=64)
def _face_grid(k: int, mesh: Fraction) -> tuple:
    """Points of the faces {x_j = 1} of [-1,1]^k, other coordinates on a grid.

    Every point of the cube boundary is, up to a global sign, within l1
    distance (k-1)*mesh/2 of one of these points.
    """
    mesh = frac(mesh)
    n = math.ceil(2 / mesh)
    axis = sorted({max(Fraction(-1), min(Fraction(1), -1 + i * mesh)) for i in range(n + 1)})
    pts = []
    for j in range(k):
        for rest in itertools.product(axis, repeat=k - 1):
            pts.append(rest[:j] + (Fraction(1),) + rest[j:])
    return tuple(pts)


@functools.lru_cache(maxsize=64)
def face_array(k: int, mesh: Fraction) -> np.ndarray:
    return np.array([[float(x) for x in p] for p in _face_grid(k, mesh)])


def distance(r1: SeminormPoint, r2: SeminormPoint, mesh=Fraction(1, 8),
             exact: Optional[bool] = None) -> Interval:
    """Certified bracket for d_k(r1, r2) = sup over [-1,1]^k of |r1 - r2|.

    |r1 - r2| is positively homogeneous and even, so its sup over the cube is
    attained on the faces {x_j = 1}; both seminorms are 1-Lipschitz for l1,
    which bounds the loss from sampling a grid of the given mesh.
    """
    if r1.dim != r2.dim:
        raise ValueError("dimension mismatch")
    k = r1.dim
    mesh = fit_mesh(k, mesh)
    slack = (k - 1) * mesh
    if k == 0:
        return Interval(Fraction(0), Fraction(0))
    if same_rows(r1, r2):
        return Interval(Fraction(0), Fraction(0))
    pts = face_grid(k, mesh)
    if exact is None:
        exact = r1.rows is None or r2.rows is None or \
            len(pts) * (len(r1.rows) + len(r2.rows)) <= EXACT_WORK
    if exact:
        lo = max(abs(r1(p) - r2(p)) for p in pts)
        return Interval(lo, lo + slack)
    P = face_array(k, mesh)
    lo = float(np.abs(r1.values(P) - r2.values(P)).max())
    lo_q = Fraction(lo).limit_denominator(10**12)
    return Interval(max(Fraction(0), lo_q - FLOAT_MARGIN), lo_q + slack + FLOAT_MARGIN)


def sign_vectors(k: int):
    return itertools.product((1, -1), repeat=k)


def is_l1(rho: SeminormPoint) -> bool:
    """Exact: for rho in N_k, rho = l1 iff rho(eps) = k on every sign vector."""
    return all(rho(s) == rho.dim for s in sign_vectors(rho.dim))


def is_linf(rho: SeminormPoint) -> bool:
    """Exact: for rho in N_k, rho = linf iff rho(eps) <= 1 on every sign vector."""
    return all(rho(s) <= 1 for s in sign_vectors(rho.dim))


def kernel(rho: SeminormPoint) -> list:
    """A basis of {a : rho(a) = 0}; needs the row representation."""
    import sympy

    if rho.rows is None:
        raise ValueError("kernel needs a polyhedral seminorm")
    if not rho.rows:
        return [tuple(int(i == j) for j in range(rho.dim)) for i in range(rho.dim)]
    A = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rho.rows])
    out = []
    for v in A.nullspace():
        out.append(tuple(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in v))
    return out


def is_norm(rho: SeminormPoint) -> bool:
    return not kernel(rho)


# -- epsilon nets --

def random_functional_row(k: int, rng: random.Random) -> tuple:
    # coordinates in [-1, 1] on a quarter grid, biased toward +-1
    vals = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(1)]
    return tuple(rng.choice(vals) * rng.choice((1, -1)) for _ in range(k))


def random_extensional_norm(k: int, rng: random.Random, max_funcs: int = 4) -> SeminormPoint:
    """G0 plus a few random functionals with coordinates in [-1, 1]; rho(e_i) = 1."""
    rows = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    for _ in range(rng.randint(0, max_funcs)):
        rows.append(random_functional_row(k, rng))
    return SeminormPoint(k, None, "random extensional", tuple(rows))


def _net_candidates(k: int, seed: int):
    yield l1_point(k)
    yield linf_point(k)
    rng = random.Random(seed)
    while True:
        yield random_extensional_norm(k, rng)


def cell_key(rho: SeminormPoint, eps: Fraction, mesh: Fraction) -> tuple:
    """f(b) = floor(4 rho(b) / eps) over the face grid B."""
    P = face_array(rho.dim, mesh)
    return tuple(int(x) for x in np.floor(4 * rho.values(P) / float(eps) + 1e-9))


def _snap(x: float) -> Fraction:
    if abs(x - round(x)) < 1e-9:
        return Fraction(round(x))
    return Fraction(x).limit_denominator(10**9)


def cell_representative(key: tuple, k: int, eps: Fraction, mesh: Fraction) -> SeminormPoint:
    """The outer gauge of a cell: dual polytope {f : |f.b| <= (f(b)+1) eps/4, |f_i| <= 1}.

    Every seminorm rho of the cell has its dual ball inside this polytope, and
    the gauge exceeds rho by less than eps/4 on B, so by the 1-Lipschitz
    bound the two are within eps/4 + (k-1)*mesh everywhere on the cube.
    """
    from scipy.spatial import HalfspaceIntersection

    P = face_array(k, mesh)
    upper = (np.asarray(key, dtype=float) + 1) * float(eps) / 4
    eye = np.eye(k)
    A = np.vstack([P, -P, eye, -eye])
    b = np.concatenate([-upper, -upper, -np.ones(k), -np.ones(k)])
    hs = HalfspaceIntersection(np.hstack([A, b[:, None]]), np.zeros(k))
    rows = [tuple(_snap(float(x)) for x in v) for v in hs.intersections]
    rows = [tuple(max(Fraction(-1), min(Fraction(1), x)) for x in r) for r in rows]
    return SeminormPoint(k, None, "cell gauge", tuple(rows))


@dataclass
class EpsilonNet:
    """Representatives of the populated cells.

    ``points`` holds the cells met by the deterministic candidate generator;
    :meth:`cover` returns the representative of the cell of any given
    seminorm, which is a member of the full net because that cell is nonempty.
    """
    k: int
    eps: Fraction
    points: list
    grid_mesh: Fraction
    cells: dict
    candidates: int
    _values: dict = field(default_factory=dict, repr=False)

    @property
    def guarantee(self) -> Fraction:
        return self.eps / 4 + (self.k - 1) * self.grid_mesh

    def size_bound(self) -> int:
        a = int(4 * self.k / self.eps) + 1
        return a ** len(face_array(self.k, self.grid_mesh))

    def nearest(self, rho: SeminormPoint, mesh=None) -> tuple:
        """(index, interval) of the materialized point with the smallest sampled distance."""
        mesh = self.grid_mesh if mesh is None else frac(mesh)
        P = face_array(self.k, mesh)
        v = rho.values(P)
        V = self._values.get(mesh)
        if V is None:
            V = self._values[mesh] = np.stack([q.values(P) for q in self.points])
        d = np.abs(V - v).max(axis=1)
        i = int(np.argmin(d))
        return i, distance(rho, self.points[i], mesh)

    def cover(self, rho: SeminormPoint, mesh=None) -> tuple:
        """(net point, certified distance interval, was it materialized)."""
        mesh = self.grid_mesh if mesh is None else frac(mesh)
        if self.k == 1:
            return self.points[0], distance(rho, self.points[0], mesh), True
        key = cell_key(rho, self.eps, self.grid_mesh)
        known = key in self.cells
        q = self.cells[key] if known else cell_representative(key, self.k, self.eps,
                                                              self.grid_mesh)
        return q, distance(rho, q, mesh), known


def epsilon_net(k: int, eps, candidates: int = 200, seed: int = 0) -> EpsilonNet:
    """Cell construction: B is a grid on the cube faces, A the eps/4-grid of
    [0, k]; a seminorm falls in the cell f(b) = floor(4 rho(b) / eps).

    Cells are populated by a deterministic generator (l1, linf, then seeded
    random extensional norms) and each is represented by its outer gauge.
    For k = 1 the space is the single point |a|.
    """
    eps = frac(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if k == 1:
        return EpsilonNet(1, eps, [l1_point(1)], eps, {}, 1)
    mesh = fit_mesh(k, eps / (2 * k))
    cells = {}
    gen = _net_candidates(k, seed)
    for _ in range(candidates):
        key = cell_key(next(gen), eps, mesh)
        if key not in cells:
            cells[key] = cell_representative(key, k, eps, mesh)
    return EpsilonNet(k, eps, list(cells.values()), mesh, cells, candidates)


# -- basis constants --

def _coefficient_grid(n: int, steps: int):
    axis = [Fraction(i, steps) for i in range(-steps, steps + 1)]
    return itertools.product(axis, repeat=n)


@dataclass(frozen=True)
class BasicConstant:
    lower: Fraction
    estimate: Fraction
    witness: tuple


def basic_constant(xs: Sequence[Vector], W: NormingSet, steps: int = 2) -> BasicConstant:
    """max over n < m and coefficient vectors of ||sum_1^n a_i x_i|| / ||sum_1^m a_i x_i||.

    ``lower`` is the max over the vertex set {-1, 0, 1}^m; ``estimate`` over
    the finer grid with the given number of steps per unit.
    """
    xs = list(xs)
    m = len(xs)

    def scan(points):
        best, wit = Fraction(1), ()
        for a in points:
            if not any(a):
                continue
            full = norm(W, combination(a, xs))
            if full == 0:
                raise DegenerateSpan(f"{a} spans a null vector")
            for n in range(1, m):
                v = norm(W, combination(a[:n], xs[:n])) / full
                if v > best:
                    best, wit = v, (n, a)
        return best, wit

    lower, wit = scan(itertools.product((-1, 0, 1), repeat=m))
    est, wit2 = scan(_coefficient_grid(m, steps))
    if est > lower:
        wit = wit2
    return BasicConstant(lower, max(lower, est), wit)


def is_unconditional(xs: Sequence[Vector], W: NormingSet, K, steps: int = 2) -> bool:
    """Every sign change costs at most K, checked over a coefficient grid."""
    xs = list(xs)
    K = frac(K)
    for a in _coefficient_grid(len(xs), steps):
        base = norm(W, combination(a, xs))
        for signs in sign_vectors(len(xs)):
            b = [s * x for s, x in zip(signs, a)]
            if norm(W, combination(b, xs)) > K * base:
                return False
    return True
