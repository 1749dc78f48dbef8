"""Acceptance checks shared by ``barrierlab selftest`` and the test suite.

Each check takes a base seed and returns a :class:`Row`.  Row details hold
only deterministic data; wall-clock budgets enter the verdict but are never
written into the detail, so reports are byte-identical across runs.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import barrier as br
from . import models as md
from . import normspace as ns
from .finset import InfSetWindow, take
from .plegma import construct_plegma, enumerate_plegma, is_plegma, union
from .ramsey import Coloring, Schedule, is_monochromatic, ramsey_roundtrip


@dataclass
class Row:
    id: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"id": self.id, "name": self.name, "passed": self.passed, "detail": self.detail}


# -- 1. coloring -> norm -> stable set round trip --

def _gap_facts(C: Coloring, window) -> int:
    """Exhaustive: norm of the k-sum is k on color 0 and at most k-1 on color 1.
    Returns the number of violations."""
    W = ns.coloring_norming_set(C, window)
    bad = 0
    for s in itertools.combinations(window, C.k):
        v = ns.norm(W, ns.combination([1] * C.k, [ns.e(i) for i in s]))
        if C(s) == 0 and v != C.k:
            bad += 1
        if C(s) == 1 and v > C.k - 1:
            bad += 1
    return bad


def check_roundtrip(seed: int = 0, budget: float = 60.0) -> Row:
    start = time.perf_counter()
    runs = [(2, 20, 100), (3, 12, 30)]
    detail = {}
    ok = True
    for k, size, count in runs:
        window = tuple(range(1, size + 1))
        matches = gaps = 0
        smallest = None
        for i in range(count):
            C = Coloring.random(k, window, seed * 100003 + 1000 * k + i)
            rep = ramsey_roundtrip(C, window, target=4)
            # independent brute-force oracle on the returned set
            oracle = is_monochromatic(C, rep.M) is not None
            matches += int(rep.verdict and oracle and rep.matches)
            gaps += _gap_facts(C, window)
            smallest = len(rep.M) if smallest is None else min(smallest, len(rep.M))
        ok &= matches == count and gaps == 0 and smallest >= 4
        detail[f"k={k}"] = {"runs": count, "oracle_matches": matches,
                            "gap_violations": gaps, "min_size": smallest}
    elapsed = time.perf_counter() - start
    return Row(1, "coloring round trip", ok and elapsed < budget, detail, elapsed)


# -- 2. W_n has no convergent limit norm --

def check_noncompact(seed: int = 0) -> Row:
    ones = ns.combination([1, 1], [ns.e(1), ns.e(2)])
    exact = all(ns.norm(ns.w_n(n), ones) == Fraction(1, n) for n in range(1, 65))
    rhos = {n: ns.span_seminorm(ns.w_n(n), [ns.e(1), ns.e(2)]) for n in (1, 2, 4, 8, 16, 32, 64)}
    mesh = Fraction(1, 64)
    brackets = {}
    ok = exact
    for n, m in itertools.combinations(sorted(rhos), 2):
        iv = ns.distance(rhos[n], rhos[m], mesh)
        true = Fraction(1, n) - Fraction(1, m)
        # the bracket holds the true distance and shrinks like a Cauchy sequence
        ok &= iv.lo <= true <= iv.hi and iv.hi <= true + mesh
        brackets[f"{n},{m}"] = iv.to_json()
    limit = ns.SeminormPoint(2, rows=((Fraction(1), Fraction(-1)),), provenance="pointwise limit")
    at_ones = limit((1, 1))
    ker = ns.kernel(limit)
    degenerate = at_ones == 0 and bool(ker) and not ns.is_norm(limit)
    ok &= degenerate
    detail = {"norm_exact_1_to_64": exact, "brackets": brackets,
              "limit_at_ones": ns.frac_str(at_ones),
              "limit_kernel": [[ns.frac_str(x) for x in v] for v in ker],
              "degenerate": degenerate}
    return Row(2, "non-compact sequence W_n", ok, detail)


# -- 3. epsilon-net covering --

def check_net(seed: int = 0, budget: float = 120.0, count: int = 200) -> Row:
    start = time.perf_counter()
    detail = {}
    ok = True
    for k in (2, 3):
        for eps in (Fraction(1), Fraction(1, 2)):
            net = ns.epsilon_net(k, eps, seed=seed)
            rng = random.Random(seed * 7919 + 10 * k + eps.denominator)
            covered = 0
            worst = Fraction(0)
            for _ in range(count):
                rho = ns.random_extensional_norm(k, rng)
                _, iv, _ = net.cover(rho)
                covered += int(iv.hi < eps)
                worst = max(worst, iv.hi)
            ok &= covered == count
            detail[f"k={k},eps={ns.frac_str(eps)}"] = {
                "covered": covered, "of": count, "net_points": len(net.points),
                "worst_upper": ns.frac_str(worst)}
    elapsed = time.perf_counter() - start
    return Row(3, "epsilon-net coverage", ok and elapsed < budget, detail, elapsed)


# -- 4. plegma enumeration against brute force --

def _brute_plegma(B: br.BarrierTerm, n: int, window) -> list:
    members = br.front(B, window)
    out = []
    for t in itertools.product(members, repeat=n):
        # first elements increase in any plegma tuple of nonempty sets; a cheap prefilter
        if all(s and u and s[0] < u[0] for s, u in zip(t, t[1:])) or any(not s for s in t):
            if is_plegma(t):
                out.append(t)
    return sorted(out)


PLEGMA_BARRIERS = [
    ("Cube(1)", br.Cube(1)), ("Cube(2)", br.Cube(2)), ("Cube(3)", br.Cube(3)),
    ("Schreier", br.Schreier()), ("Sum(Cube(1),Schreier)", br.Sum(br.Cube(1), br.Schreier())),
]


def _random_window(rng: random.Random) -> InfSetWindow:
    prefix = tuple(sorted(rng.sample(range(1, 12), rng.randint(0, 4))))
    start = (prefix[-1] if prefix else 0) + rng.randint(1, 5)
    return InfSetWindow(prefix, start, rng.randint(1, 3))


def check_plegma(seed: int = 0, configs: int = 50) -> Row:
    window = tuple(range(1, 11))
    detail = {"enumeration": {}}
    ok = True
    for name, B in PLEGMA_BARRIERS:
        for n in (1, 2, 3):
            got = sorted(enumerate_plegma(B, n, window))
            same = got == _brute_plegma(B, n, window)
            ok &= same
            detail["enumeration"][f"{name},n={n}"] = {"count": len(got), "equal": same}
    rng = random.Random(seed * 31 + 4)
    pool = [B for _, B in PLEGMA_BARRIERS]
    good = 0
    for _ in range(configs):
        n = rng.randint(1, 3)
        Bs = sorted((rng.choice(pool) for _ in range(n)), key=br.rank)
        M = _random_window(rng)
        t = construct_plegma(Bs, M)
        Mset = set(take(M, max(union(t), default=0) + 1))
        valid = (is_plegma(t) and all(br._member(B, s) for B, s in zip(Bs, t))
                 and all(x in Mset for x in union(t)))
        good += int(valid)
    ok &= good == configs
    detail["construct"] = {"valid": good, "of": configs}
    return Row(4, "plegma oracle equivalence", ok, detail)


# -- 5. embedding of F into G and the projection psi --

EMBED_PAIRS = [
    ("Cube(2)", br.Cube(2), "Cube(2)", br.Cube(2)),
    ("Cube(2)", br.Cube(2), "Schreier", br.Schreier()),
    ("Schreier", br.Schreier(), "Schreier", br.Schreier()),
]


def _check_pair(F, G, M, N, count: int = 6, depth: int = 12) -> dict:
    L = br.embed_prefix(F, G, M, N, count)
    ok, checked, failures = br.check_embedding(F, G, M, L, depth)
    Mw = take(M, len(L))
    # psi on every member of G inside L: unique, and onto the members of F
    # inside M whose transfer extends to such a member
    image, unique = set(), True
    G_front = br.front(G, L)
    for u in G_front:
        try:
            image.add(br.project(F, G, M, L, u))
        except br.NoProjection:
            unique = False
    reachable = {t for t in br.front(F, Mw)
                 if any(u[:len(t)] == tuple(L[Mw.index(x)] for x in t) for u in G_front)}
    onto = image == reachable
    return {"L": list(L), "closure_ok": ok, "checked": checked, "failures": len(failures),
            "g_members": len(G_front), "unique": unique, "onto": onto,
            "image": len(image), "passed": ok and checked > 0 and unique and onto and bool(image)}


def check_embedding(seed: int = 0) -> Row:
    rng = random.Random(seed * 17 + 5)
    detail = {}
    ok = True
    for fname, F, gname, G in EMBED_PAIRS:
        M = InfSetWindow(tuple(sorted(rng.sample(range(1, 6), 2))), 6 + rng.randint(0, 2),
                         rng.randint(1, 2))
        N = InfSetWindow(tuple(sorted(rng.sample(range(2, 6), 2))), 6 + rng.randint(0, 2),
                         rng.randint(1, 2))
        res = _check_pair(F, G, M, N)
        res["M"], res["N"] = M.to_json(), N.to_json()
        ok &= res["passed"]
        detail[f"{fname}->{gname}"] = res
    return Row(5, "embedding and projection", ok, detail)


# -- 6. spreading models of the unit basis --

SCHEDULE = Schedule.geometric(Fraction(1, 2), Fraction(1, 2), 4)


def check_spreading(seed: int = 0, count: int = 12, nmax: int = 4) -> Row:
    cases = [("l1", ns.L1(), ns.is_l1), ("sup", ns.Sup(), ns.is_linf),
             ("schreier", ns.SchreierNorm(), ns.is_l1)]
    detail = {}
    ok = True
    for name, host, expect in cases:
        rep = md.spreading_model(md.unit_basis(count), host, nmax, SCHEDULE)
        exact = [r.rows is not None and expect(r) for r in rep.rhos]
        zero_in = all(0 in iv for iv in rep.compat_defects.values())
        good = len(rep.rhos) == nmax and all(exact) and zero_in and not rep.partial
        ok &= good
        detail[name] = {"exact": exact, "defects_contain_0": zero_in,
                        "M": list(rep.M), "depth": rep.depth}
    return Row(6, "spreading models of the unit basis", ok, detail)


# -- 7. gliding hump --

def _matrix_from(table: Callable, host, name: str) -> md.MatrixSource:
    return md.MatrixSource(br.Cube(1), host, lambda row, s: table(row, s[0]), "general",
                           False, name)


def check_glide(seed: int = 0, matrices: int = 20, rows: int = 3, columns: int = 6,
                available: int = 10) -> Row:
    host = ns.L1()
    window = tuple(range(1, columns + 1))
    sched = Schedule.geometric(Fraction(1, 4), Fraction(1, 2), 2)
    bounds = block = models_ok = tuples_ok = 0
    for j in range(matrices):
        x = md.random_null_matrix(seed * 1009 + j, rows, available, host)
        g = md.gliding_hump(x, host, rows, columns, available)
        bounds += int(g.bound_ok())
        block += int(md.is_plegma_block(g.matrix, 2, window)[0])
        src = _matrix_from(lambda n, i: x(n, g.k[i - 1]), host, "x along k")
        # every tuple: Psi of the output is within the telescoped error of the input
        good = True
        for t in enumerate_plegma(br.Cube(1), 2, window):
            slack = g.telescoped([s[0] for s in t])
            iv = ns.distance(md.psi_n(g.matrix, t), md.psi_n(src, t), Fraction(1, 64))
            good &= iv.lo <= slack and slack <= Fraction(1, 2 ** t[0][0])
        tuples_ok += int(good)
        a = md.stabilize_matrix(g.matrix, 2, sched, window)
        b = md.stabilize_matrix(src, 2, sched, window)
        m1 = a.M[0] if a.M else 1
        slack = Fraction(1, 2 ** m1) + 2 * sched.eps[-1]
        same = all(ns.distance(p, q, Fraction(1, 64)).lo <= slack
                   for p, q in zip(a.rhos, b.rhos)) and len(a.rhos) == len(b.rhos)
        models_ok += int(same)
    ok = bounds == block == models_ok == tuples_ok == matrices
    detail = {"matrices": matrices, "bound_ok": bounds, "plegma_block": block,
              "tuples_within_slack": tuples_ok, "models_within_slack": models_ok}
    return Row(7, "gliding hump", ok, detail)


# -- 8. one step of the chain: sum matrix of the Schreier constant rows --

def check_chain(seed: int = 0, nmax: int = 3) -> Row:
    inner = md.constant_rows(br.Cube(1), ns.SchreierNorm(), lambda s: ns.e(max(s)), "schreier")
    summed = md.build_sum_matrix(inner)
    sched = Schedule.geometric(Fraction(1, 2), Fraction(1, 2), nmax)
    rep = md.stabilize_matrix(summed, nmax, sched, range(1, 13),
                              admissible=lambda t, n: min(union(t)) >= n)
    exact = [r.rows is not None and ns.is_l1(r) for r in rep.rhos]
    ok = len(exact) == nmax and all(exact) and not rep.partial
    return Row(8, "chain step via the sum matrix", ok,
               {"exact_l1": exact, "M": list(rep.M), "depth": rep.depth})


# -- 9. determinism --

def report_bytes(rows) -> bytes:
    import json
    return (json.dumps([r.to_json() for r in rows], sort_keys=True, indent=1) + "\n").encode()


def check_determinism(seed: int = 0) -> Row:
    """Cheap checks and a seeded scenario, each run twice; bytes must agree.
    The full selftest comparison is done by the test suite."""
    from .cli import scenario_report_bytes
    fast = [check_noncompact, check_plegma, check_spreading, check_chain]
    a = report_bytes([f(seed) for f in fast])
    b = report_bytes([f(seed) for f in fast])
    scenario = {"command": "ramsey.roundtrip", "seed": 7, "inputs": {"k": 2, "window": 12}}
    s1, s2 = scenario_report_bytes(scenario), scenario_report_bytes(scenario)
    ok = a == b and s1 == s2
    return Row(9, "determinism", ok, {"checks_identical": a == b, "scenario_identical": s1 == s2})


CHECKS = {
    1: check_roundtrip, 2: check_noncompact, 3: check_net, 4: check_plegma,
    5: check_embedding, 6: check_spreading, 7: check_glide, 8: check_chain,
    9: check_determinism,
}


def run_all(seed: int = 0, only=None) -> list:
    rows = []
    for i, fn in CHECKS.items():
        if only and i not in only:
            continue
        start = time.perf_counter()
        row = fn(seed)
        row.seconds = time.perf_counter() - start
        rows.append(row)
    return rows
