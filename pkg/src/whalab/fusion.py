"""Fusion rings, associator (F-symbol) tables, and their verifiers.

Built-in generators: the PSU(2)_{p-2} family, pointed categories of a finite
group with a 3-cocycle, and the Fibonacci category with its 2x2 associator
block.

Conventions, fixed once and used everywhere downstream:

* ``N[i, j, k]`` is the multiplicity of simple ``k`` in ``i (x) j``; the
  splitting space C(k, i (x) j) has that dimension and carries a fixed
  basis indexed ``0..N-1``.
* The F-block of ``(x, y, z; w)`` is the matrix of the associator
  ``a_{x,y,z}: (x(x)y)(x)z -> x(x)(y(x)z)`` from the left-tree basis
  (rows, labels ``(p, mu, nu)`` lexicographic) to the right-tree basis
  (cols, labels ``(q, rho, sigma)``).
* Blocks with a unit leg, and blocks a table does not store, are the
  positional identity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .scalars import RootOfUnity, Tolerance, DEFAULT_TOL

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


class FusionDataError(ValueError):
    """Inconsistent or malformed fusion-category data."""


@dataclass
class FusionRing:
    """Fusion coefficients plus duals and quantum dimensions."""

    simples: list
    unit: int
    N: np.ndarray
    dual: list
    qdims: np.ndarray

    def __post_init__(self):
        self.N = np.asarray(self.N, dtype=int)
        self.qdims = np.asarray(self.qdims, dtype=float)
        k = len(self.simples)
        if self.N.shape != (k, k, k):
            raise FusionDataError(f"N tensor shape {self.N.shape} != ({k},{k},{k})")
        if len(self.dual) != k or len(self.qdims) != k:
            raise FusionDataError("dual/qdims length mismatch")
        if not (0 <= self.unit < k):
            raise FusionDataError(f"unit index {self.unit} out of range")

    @property
    def rank(self) -> int:
        return len(self.simples)

    def fuse(self, i: int, j: int) -> list:
        """Decomposition of i (x) j as [(k, multiplicity), ...]."""
        k = self.rank
        if not (0 <= i < k and 0 <= j < k):
            raise FusionDataError(f"simple index out of range: ({i},{j})")
        return [(m, int(self.N[i, j, m])) for m in range(k) if self.N[i, j, m] > 0]

    def validate(self):
        """Raise on violation of the unit, rigidity, or dimension identities."""
        k, u = self.rank, self.unit
        for j in range(k):
            for m in range(k):
                if self.N[u, j, m] != (1 if j == m else 0):
                    raise FusionDataError(f"unit not left-neutral at ({j},{m})")
                if self.N[j, u, m] != (1 if j == m else 0):
                    raise FusionDataError(f"unit not right-neutral at ({j},{m})")
        for i in range(k):
            d = self.dual[i]
            if self.dual[d] != i:
                raise FusionDataError("dual is not an involution")
            for j in range(k):
                if self.N[i, j, u] != (1 if j == d else 0):
                    raise FusionDataError(f"rigidity fails at ({i},{j})")
        rep = verify_ring_associativity(self)
        if not rep.passed:
            raise FusionDataError(f"associativity fails at {rep.failures[:3]}")
        for i in range(k):
            for j in range(k):
                lhs = self.qdims[i] * self.qdims[j]
                rhs = float(self.N[i, j] @ self.qdims)
                if abs(lhs - rhs) > 1e-6:
                    raise FusionDataError(f"qdims not multiplicative at ({i},{j})")


@dataclass
class RingReport:
    failures: list
    passed: bool


def verify_ring_associativity(ring: FusionRing) -> RingReport:
    """Exact integer check of sum_m N[i,j,m] N[m,k,l] = sum_m N[j,k,m] N[i,m,l]."""
    N = ring.N
    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    bad = np.argwhere(lhs != rhs)
    return RingReport(failures=[tuple(map(int, q)) for q in bad], passed=bad.size == 0)


def perron_frobenius_dims(ring: FusionRing) -> np.ndarray:
    """Largest eigenvalue of each fusion matrix (N[i])_{jk}."""
    dims = np.empty(ring.rank)
    for i in range(ring.rank):
        ev = np.linalg.eigvals(ring.N[i].astype(float))
        dims[i] = max(ev.real)
    return dims


# ---------------------------------------------------------------------------
# built-in rings


def psu2_fusion_ring(p: int) -> FusionRing:
    """Fusion ring on X_0, X_2, ..., X_{p-3} for odd prime-like p >= 5.

    N_{2i,2j}^{2m} = 1 iff |2i-2j| <= 2m <= min(2i+2j, 2(p-2)-2i-2j);
    quantum dimensions are the q-integers [2j+1]_q at q = exp(i*pi/p).
    """
    if p < 5 or p % 2 == 0:
        raise FusionDataError(f"need odd p >= 5, got {p}")
    k = (p - 1) // 2
    labels = [f"X{2 * j}" for j in range(k)]
    N = np.zeros((k, k, k), dtype=int)
    for i, j, m in itertools.product(range(k), repeat=3):
        a, b, c = 2 * i, 2 * j, 2 * m
        if abs(a - b) <= c <= min(a + b, 2 * (p - 2) - a - b):
            N[i, j, m] = 1
    qdims = np.array([math.sin((2 * j + 1) * math.pi / p) / math.sin(math.pi / p)
                      for j in range(k)])
    ring = FusionRing(labels, 0, N, list(range(k)), qdims)
    ring.validate()
    return ring


def fib_ring() -> FusionRing:
    return psu2_fusion_ring(5)


def cyclic_group_table(n: int) -> np.ndarray:
    if n < 1:
        raise FusionDataError(f"group order must be >= 1, got {n}")
    g = np.arange(n)
    return (g[:, None] + g[None, :]) % n


def validate_group_table(table: np.ndarray) -> int:
    """Return the identity index; raise if the table is not a group."""
    t = np.asarray(table, dtype=int)
    n = t.shape[0]
    if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
        raise FusionDataError("not an n x n table over 0..n-1")
    ident = None
    for e in range(n):
        if all(t[e, g] == g and t[g, e] == g for g in range(n)):
            ident = e
            break
    if ident is None:
        raise FusionDataError("group table has no identity")
    for g in range(n):
        if ident not in t[g, :]:
            raise FusionDataError(f"element {g} has no inverse")
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a, b], c] != t[a, t[b, c]]:
            raise FusionDataError(f"group table not associative at ({a},{b},{c})")
    return ident


def group_inverses(table: np.ndarray) -> list:
    t = np.asarray(table, dtype=int)
    e = validate_group_table(t)
    return [int(np.argwhere(t[g, :] == e)[0][0]) for g in range(t.shape[0])]


def pointed_fusion_ring(group_table) -> FusionRing:
    """Group elements as simples, N[g,h,k] = delta_{gh,k}, all qdims 1."""
    t = np.asarray(group_table, dtype=int)
    e = validate_group_table(t)
    n = t.shape[0]
    N = np.zeros((n, n, n), dtype=int)
    for g, h in itertools.product(range(n), repeat=2):
        N[g, h, t[g, h]] = 1
    ring = FusionRing([f"d{g}" for g in range(n)], e, N, group_inverses(t), np.ones(n))
    ring.validate()
    return ring


# ---------------------------------------------------------------------------
# F-symbol tables


def tree_rows(ring: FusionRing, x: int, y: int, z: int, w: int) -> list:
    """Left-tree labels (p, mu, nu) for (x(x)y)(x)z -> total w, lexicographic."""
    out = []
    for p in range(ring.rank):
        for mu in range(ring.N[x, y, p]):
            for nu in range(ring.N[p, z, w]):
                out.append((p, mu, nu))
    return out


def tree_cols(ring: FusionRing, x: int, y: int, z: int, w: int) -> list:
    """Right-tree labels (q, rho, sigma) for x(x)(y(x)z) -> total w."""
    out = []
    for q in range(ring.rank):
        for rho in range(ring.N[y, z, q]):
            for sigma in range(ring.N[x, q, w]):
                out.append((q, rho, sigma))
    return out


@dataclass
class FSymbolTable:
    """Associator blocks keyed by (x, y, z, w); unset blocks are identity."""

    ring: FusionRing
    blocks: dict = field(default_factory=dict)

    def block(self, x: int, y: int, z: int, w: int) -> np.ndarray:
        rows = tree_rows(self.ring, x, y, z, w)
        cols = tree_cols(self.ring, x, y, z, w)
        key = (x, y, z, w)
        if key in self.blocks:
            m = np.asarray(self.blocks[key], dtype=complex)
            if m.shape != (len(rows), len(cols)):
                raise FusionDataError(
                    f"F-block {key} has shape {m.shape}, expected "
                    f"({len(rows)},{len(cols)})")
            return m
        if len(rows) != len(cols):
            raise FusionDataError(f"no F-block for {key} and trees don't biject")
        return np.eye(len(rows), dtype=complex)

    def entry(self, x, y, z, w, rowlab, collab) -> complex:
        rows = tree_rows(self.ring, x, y, z, w)
        cols = tree_cols(self.ring, x, y, z, w)
        if rowlab not in rows or collab not in cols:
            return 0.0
        return self.block(x, y, z, w)[rows.index(rowlab), cols.index(collab)]


def trivial_f_table(ring: FusionRing) -> FSymbolTable:
    return FSymbolTable(ring, {})


@dataclass
class PentagonReport:
    max_deviation: float
    failures: list
    passed: bool


def verify_pentagon(ring: FusionRing, F: FSymbolTable,
                    tol: Tolerance = DEFAULT_TOL) -> PentagonReport:
    """Exhaustive pentagon check over all 5-object instances.

    For each (x, y, z, w) and total u the two re-association paths from
    ((x y) z) w trees to x (y (z w)) trees must agree as matrices on tree
    coordinates.
    """
    k = ring.rank
    N = ring.N
    maxdev = 0.0
    failures = []
    for x, y, z, w in itertools.product(range(k), repeat=4):
        for u in range(k):
            P1 = [(p, m1, r, m2, m3)
                  for p in range(k) for m1 in range(N[x, y, p])
                  for r in range(k) for m2 in range(N[p, z, r])
                  for m3 in range(N[r, w, u])]
            if not P1:
                continue
            P2 = [(q, rho, r, sg, m3)
                  for q in range(k) for rho in range(N[y, z, q])
                  for r in range(k) for sg in range(N[x, q, r])
                  for m3 in range(N[r, w, u])]
            P3 = [(q, rho, s, ta, kp)
                  for q in range(k) for rho in range(N[y, z, q])
                  for s in range(k) for ta in range(N[q, w, s])
                  for kp in range(N[x, s, u])]
            P4 = [(t, th, s, lm, kp)
                  for t in range(k) for th in range(N[z, w, t])
                  for s in range(k) for lm in range(N[y, t, s])
                  for kp in range(N[x, s, u])]
            P5 = [(p, m1, t, th, xi)
                  for p in range(k) for m1 in range(N[x, y, p])
                  for t in range(k) for th in range(N[z, w, t])
                  for xi in range(N[p, t, u])]

            def mk(src, dst, fn):
                T = np.zeros((len(dst), len(src)), dtype=complex)
                for i, sl in enumerate(src):
                    for j, dl in enumerate(dst):
                        v = fn(sl, dl)
                        if v is not None:
                            T[j, i] = v
                return T

            # a_{x,y,z} inside, fixing (r, m3)
            T1 = mk(P1, P2, lambda s_, d_: F.entry(
                x, y, z, s_[2], (s_[0], s_[1], s_[3]), (d_[0], d_[1], d_[3]))
                if (s_[2], s_[4]) == (d_[2], d_[4]) else None)
            # a_{x,q,w}, fixing (q, rho)
            T2 = mk(P2, P3, lambda s_, d_: F.entry(
                x, s_[0], w, u, (s_[2], s_[3], s_[4]), (d_[2], d_[3], d_[4]))
                if (s_[0], s_[1]) == (d_[0], d_[1]) else None)
            # id_x (x) a_{y,z,w}, fixing (s, kp)
            T3 = mk(P3, P4, lambda s_, d_: F.entry(
                y, z, w, s_[2], (s_[0], s_[1], s_[3]), (d_[0], d_[1], d_[3]))
                if (s_[2], s_[4]) == (d_[2], d_[4]) else None)
            # a_{p,z,w}, fixing (p, m1)
            T4 = mk(P1, P5, lambda s_, d_: F.entry(
                s_[0], z, w, u, (s_[2], s_[3], s_[4]), (d_[2], d_[3], d_[4]))
                if (s_[0], s_[1]) == (d_[0], d_[1]) else None)
            # a_{x,y,t}, fixing (t, th)
            T5 = mk(P5, P4, lambda s_, d_: F.entry(
                x, y, s_[2], u, (s_[0], s_[1], s_[4]), (d_[2], d_[3], d_[4]))
                if (s_[2], s_[3]) == (d_[0], d_[1]) else None)

            dev = float(np.max(np.abs(T3 @ T2 @ T1 - T5 @ T4))) if P4 else 0.0
            if dev > maxdev:
                maxdev = dev
            if dev > tol.eps:
                failures.append(((x, y, z, w, u), dev))
    return PentagonReport(maxdev, failures, maxdev <= tol.eps)


def verify_f_invertibility(ring: FusionRing, F: FSymbolTable,
                           tol: Tolerance = DEFAULT_TOL) -> bool:
    k = ring.rank
    for x, y, z, w in itertools.product(range(k), repeat=4):
        rows = tree_rows(ring, x, y, z, w)
        if not rows:
            continue
        m = F.block(x, y, z, w)
        if m.shape[0] != m.shape[1]:
            return False
        if abs(np.linalg.det(m)) < tol.eps:
            return False
    return True


# ---------------------------------------------------------------------------
# Fibonacci associator


@dataclass
class FibFDataReport:
    candidates: list
    substituted: bool
    gauge: str


def fib_f_data(tol: Tolerance = DEFAULT_TOL):
    """Fibonacci associator table plus a report of the gauge that passed.

    Tries the gauge [[a, 1], [-a, -a]] for both roots a of x^2 - x - 1 and
    records the pentagon verdict for each; if neither passes, substitutes
    the symmetric gauge [[1/phi, phi^-1/2], [phi^-1/2, -1/phi]].
    """
    ring = fib_ring()
    candidates = []
    chosen = None
    gauge = None
    for name, a in (("a=phi", GOLDEN), ("a=1-phi", 1.0 - GOLDEN)):
        table = FSymbolTable(ring, {(1, 1, 1, 1): np.array(
            [[a, 1.0], [-a, -a]], dtype=complex)})
        rep = verify_pentagon(ring, table, tol)
        candidates.append({"gauge": name, "passed": rep.passed,
                           "max_deviation": rep.max_deviation})
        if rep.passed and chosen is None:
            chosen, gauge = table, name
    substituted = chosen is None
    if substituted:
        s = math.sqrt(GOLDEN)
        chosen = FSymbolTable(ring, {(1, 1, 1, 1): np.array(
            [[1.0 / GOLDEN, 1.0 / s], [1.0 / s, -1.0 / GOLDEN]], dtype=complex)})
        gauge = "symmetric"
    return chosen, FibFDataReport(candidates, substituted, gauge)


# ---------------------------------------------------------------------------
# 3-cocycles on a finite group, exact on exponents


@dataclass
class Cocycle3:
    group: np.ndarray
    values: dict

    def __post_init__(self):
        self.group = np.asarray(self.group, dtype=int)
        self.identity = validate_group_table(self.group)

    @property
    def order(self) -> int:
        return self.group.shape[0]

    def omega(self, a: int, b: int, c: int) -> RootOfUnity:
        return self.values.get((a, b, c), RootOfUnity(1, 0))


@dataclass
class CocycleReport:
    failures: list
    passed: bool


def standard_cocycle(n: int, q: int) -> Cocycle3:
    """omega(a,b,c) = exp(2 pi i q a (b + c - ((b+c) mod n)) / n^2) on Z_n."""
    if n < 1:
        raise FusionDataError(f"need n >= 1, got {n}")
    table = cyclic_group_table(n)
    values = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        e = q * a * ((b + c) - ((b + c) % n))
        values[(a, b, c)] = RootOfUnity(n * n, e)
    return Cocycle3(table, values)


def verify_cocycle(coc: Cocycle3) -> CocycleReport:
    """Exact exponent-level check of the 3-cocycle identity and normalization."""
    t = coc.group
    n = coc.order
    e = coc.identity
    failures = []
    for g in range(n):
        for h in range(n):
            for (a, b, c) in [(g, e, h), (e, g, h), (g, h, e)]:
                if coc.omega(a, b, c).as_fraction() != 0:
                    failures.append(("normalization", (a, b, c)))
    for g, h, k, l in itertools.product(range(n), repeat=4):
        lhs = coc.omega(h, k, l) * coc.omega(g, t[h, k], l) * coc.omega(g, h, k)
        rhs = coc.omega(t[g, h], k, l) * coc.omega(g, h, t[k, l])
        if not lhs.exact_eq(rhs):
            failures.append(("cocycle", (g, h, k, l)))
    return CocycleReport(failures, not failures)


def pointed_f_from_cocycle(coc: Cocycle3) -> FSymbolTable:
    """1x1 F-blocks F(d_a, d_h, d_b) = omega(a, h, b) over the pointed ring."""
    ring = pointed_fusion_ring(coc.group)
    t = coc.group
    blocks = {}
    for a, h, b in itertools.product(range(coc.order), repeat=3):
        w = t[t[a, h], b]
        blocks[(a, h, b, int(w))] = np.array(
            [[coc.omega(a, h, b).to_scalar()]], dtype=complex)
    return FSymbolTable(ring, blocks)
