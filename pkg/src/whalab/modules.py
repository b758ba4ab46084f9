"""Semisimple module-category data over a fusion ring.

The action tensor ``A[x, a, b] = dim M(b, x |> a)`` and the module-associator
blocks drive one object: the recoupling tensor, which expands a composable
pair of module vertices in the fused basis.  The recoupling feeds both the
weak Hopf multiplication and the path-algebra half-braiding.

Vertex spaces M(a, x |> c) carry a fixed basis 0..dim-1; for regular-type
modules (the regular module and its direct sums) the recoupling blocks are
read off the category F-table, so that in the pointed case the recoupling
coefficient is literally omega(y, z, b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .fusion import FSymbolTable, FusionDataError, FusionRing, tree_cols, tree_rows
from .scalars import Tolerance, DEFAULT_TOL


@dataclass
class ModuleCategoryData:
    """Module simples, action multiplicities, and associator blocks.

    ``regular_map[m] = (copy, ring_simple)`` marks regular-type modules whose
    associator comes from the category F-table.  General modules instead
    provide ``mF`` blocks keyed (y, z, b, a) with rows = fused labels
    (x, alpha, h) and cols = pair labels (c, e2, e1), matching the regular
    read of F.
    """

    ring: FusionRing
    m_simples: list
    A: np.ndarray
    regular_map: list | None = None
    mF: dict = field(default_factory=dict)

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=int)
        k, r = self.ring.rank, self.rank
        if self.A.shape != (k, r, r):
            raise FusionDataError(f"action tensor shape {self.A.shape} != ({k},{r},{r})")

    @property
    def rank(self) -> int:
        return len(self.m_simples)

    def hom_dim(self, a: int, x: int, c: int) -> int:
        """dim M(a, x |> c)."""
        if not (0 <= a < self.rank and 0 <= c < self.rank and 0 <= x < self.ring.rank):
            raise FusionDataError(f"index out of range in hom_dim({a},{x},{c})")
        return int(self.A[x, c, a])

    def validate(self):
        u = self.ring.unit
        r = self.rank
        for a in range(r):
            for b in range(r):
                if self.A[u, a, b] != (1 if a == b else 0):
                    raise FusionDataError(f"unit action not identity at ({a},{b})")
        N = self.ring.N
        lhs = np.einsum("yac,xcb->xyab", self.A, self.A)
        rhs = np.einsum("xyz,zab->xyab", N, self.A)
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise FusionDataError(f"mixed associativity fails at {tuple(bad)}")


def regular_module(ring: FusionRing, F: FSymbolTable) -> ModuleCategoryData:
    """The fusion category acting on itself; A[x,a,b] = N[x,a,b]."""
    M = ModuleCategoryData(ring, list(ring.simples), ring.N.copy(),
                           regular_map=[(0, i) for i in range(ring.rank)])
    M.validate()
    return M


def direct_sum_module(M: ModuleCategoryData, k: int) -> ModuleCategoryData:
    """k disjoint copies; action and associator block-diagonal across copies."""
    if k < 1:
        raise FusionDataError(f"need k >= 1 copies, got {k}")
    if M.regular_map is None:
        raise FusionDataError("direct sums are supported for regular-type modules")
    r = M.rank
    simples = [f"{s}#{c}" for c in range(k) for s in M.m_simples]
    A = np.zeros((M.ring.rank, k * r, k * r), dtype=int)
    for c in range(k):
        A[:, c * r:(c + 1) * r, c * r:(c + 1) * r] = M.A
    rmap = [(c * (max(cp for cp, _ in M.regular_map) + 1) + cp, s)
            for c in range(k) for cp, s in M.regular_map]
    out = ModuleCategoryData(M.ring, simples, A, regular_map=rmap)
    out.validate()
    return out


# ---------------------------------------------------------------------------
# recoupling


def pair_rows(M: ModuleCategoryData, y: int, z: int, a: int, b: int) -> list:
    """Composable pairs (c, e1, e2): e1 in M(a, y|>c), e2 in M(c, z|>b)."""
    out = []
    for c in range(M.rank):
        for e1 in range(M.hom_dim(a, y, c)):
            for e2 in range(M.hom_dim(c, z, b)):
                out.append((c, e1, e2))
    return out


def fused_cols(M: ModuleCategoryData, y: int, z: int, a: int, b: int) -> list:
    """Fused labels (x, alpha, h): alpha < N[y,z,x], h in M(a, x|>b)."""
    out = []
    for x in range(M.ring.rank):
        for alpha in range(M.ring.N[y, z, x]):
            for h in range(M.hom_dim(a, x, b)):
                out.append((x, alpha, h))
    return out


@dataclass
class RecouplingTensor:
    y: int
    z: int
    blocks: dict  # (a, b) -> (matrix rows=pairs, cols=fused, row labels, col labels)

    def block(self, a: int, b: int):
        return self.blocks[(a, b)]


def _regular_gamma(M: ModuleCategoryData, F: FSymbolTable,
                   y: int, z: int, a: int, b: int) -> np.ndarray:
    rows = pair_rows(M, y, z, a, b)
    cols = fused_cols(M, y, z, a, b)
    G = np.zeros((len(rows), len(cols)), dtype=complex)
    ca, sa = M.regular_map[a]
    cb, sb = M.regular_map[b]
    if ca != cb:
        return G
    rring = M.ring
    fr = tree_rows(rring, y, z, sb, sa)
    fc = tree_cols(rring, y, z, sb, sa)
    if not rows:
        return G
    Fm = F.block(y, z, sb, sa)
    fri = {lab: i for i, lab in enumerate(fr)}
    fci = {lab: i for i, lab in enumerate(fc)}
    for i, (c, e1, e2) in enumerate(rows):
        cc, sc = M.regular_map[c]
        if cc != ca:
            continue
        col = fci.get((sc, e2, e1))
        if col is None:
            continue
        for j, (x, alpha, h) in enumerate(cols):
            row = fri.get((x, alpha, h))
            if row is not None:
                G[i, j] = Fm[row, col]
    return G


def gamma_block(M: ModuleCategoryData, F: FSymbolTable,
                y: int, z: int, a: int, b: int) -> np.ndarray:
    """Recoupling matrix for (y, z) between endpoints (a, b)."""
    if M.regular_map is not None:
        return _regular_gamma(M, F, y, z, a, b)
    rows = pair_rows(M, y, z, a, b)
    cols = fused_cols(M, y, z, a, b)
    G = np.zeros((len(rows), len(cols)), dtype=complex)
    key = (y, z, b, a)
    if key not in M.mF:
        if len(rows) != len(cols):
            raise FusionDataError(f"no associator block for {key}")
        return np.eye(len(rows), dtype=complex)
    m = np.asarray(M.mF[key], dtype=complex)
    if m.shape != (len(cols), len(rows)):
        raise FusionDataError(
            f"mF block {key} has shape {m.shape}, expected ({len(cols)},{len(rows)})")
    return m.T.copy()


def recoupling_tensor(ring: FusionRing, F: FSymbolTable, M: ModuleCategoryData,
                      y: int, z: int, tol: Tolerance = DEFAULT_TOL) -> RecouplingTensor:
    """All (a, b)-blocks of the recoupling for (y, z), checked invertible."""
    blocks = {}
    for a in range(M.rank):
        for b in range(M.rank):
            rows = pair_rows(M, y, z, a, b)
            cols = fused_cols(M, y, z, a, b)
            G = gamma_block(M, F, y, z, a, b)
            if rows and len(rows) != len(cols):
                raise FusionDataError(
                    f"recoupling block ({a},{b}) not square: {len(rows)} pairs, "
                    f"{len(cols)} fused labels")
            if rows and abs(np.linalg.det(G)) <= tol.eps:
                raise FusionDataError(f"recoupling block ({a},{b}) is singular")
            blocks[(a, b)] = (G, rows, cols)
    return RecouplingTensor(y, z, blocks)


def weak_fiber_dims(ring: FusionRing, M: ModuleCategoryData) -> dict:
    """dim V_x = sum over (a, c) of dim M(a, x |> c)."""
    return {x: int(M.A[x].sum()) for x in range(ring.rank)}


@dataclass
class ModulePentagonReport:
    max_deviation: float
    failures: list
    passed: bool


def verify_module_pentagon(ring: FusionRing, F: FSymbolTable, M: ModuleCategoryData,
                           tol: Tolerance = DEFAULT_TOL) -> ModulePentagonReport:
    """Mixed-pentagon check: two-step recouplings through either nesting agree
    up to the category F-move on tree labels.

    For a chain e1 in M(a, x|>c1), e2 in M(c1, y|>c2), e3 in M(c2, z|>b):
    G_L fuses (e1,e2) then (.,e3); G_R fuses (e2,e3) then (e1,.); the check is
    G_L[(u,(p,al,be),k)] = sum_{(q,rho,sg)} F^{x,y,z;u}[(p,al,be),(q,rho,sg)]
    * G_R[(u,(q,rho,sg),k)].
    """
    k = ring.rank
    maxdev = 0.0
    failures = []
    for x, y, z in itertools.product(range(k), repeat=3):
        for a, b in itertools.product(range(M.rank), repeat=2):
            chains = []
            for c1 in range(M.rank):
                for e1 in range(M.hom_dim(a, x, c1)):
                    for c2 in range(M.rank):
                        for e2 in range(M.hom_dim(c1, y, c2)):
                            for e3 in range(M.hom_dim(c2, z, b)):
                                chains.append((c1, e1, c2, e2, e3))
            if not chains:
                continue
            lcols = []
            for u in range(k):
                for p in range(k):
                    for al in range(ring.N[x, y, p]):
                        for be in range(ring.N[p, z, u]):
                            for kk in range(M.hom_dim(a, u, b)):
                                lcols.append((u, p, al, be, kk))
            rcols = []
            for u in range(k):
                for q in range(k):
                    for rho in range(ring.N[y, z, q]):
                        for sg in range(ring.N[x, q, u]):
                            for kk in range(M.hom_dim(a, u, b)):
                                rcols.append((u, q, rho, sg, kk))
            GL = np.zeros((len(chains), len(lcols)), dtype=complex)
            GR = np.zeros((len(chains), len(rcols)), dtype=complex)
            gcache = {}

            def gam(yy, zz, aa, bb):
                key = (yy, zz, aa, bb)
                if key not in gcache:
                    G = gamma_block(M, F, yy, zz, aa, bb)
                    gcache[key] = (G,
                                   {lab: i for i, lab in enumerate(pair_rows(M, yy, zz, aa, bb))},
                                   {lab: i for i, lab in enumerate(fused_cols(M, yy, zz, aa, bb))})
                return gcache[key]

            for ci, (c1, e1, c2, e2, e3) in enumerate(chains):
                G1, r1, f1 = gam(x, y, a, c2)
                for (p, al, h), j1 in f1.items():
                    cxy = G1[r1[(c1, e1, e2)], j1] if (c1, e1, e2) in r1 else 0
                    if abs(cxy) < 1e-16:
                        continue
                    G2, r2, f2 = gam(p, z, a, b)
                    ri = r2.get((c2, h, e3))
                    if ri is None:
                        continue
                    for (u, be, kk), j2 in f2.items():
                        v = cxy * G2[ri, j2]
                        if abs(v) > 1e-16:
                            GL[ci, lcols.index((u, p, al, be, kk))] += v
                G3, r3, f3 = gam(y, z, c1, b)
                for (q, rho, m_), j3 in f3.items():
                    cyz = G3[r3[(c2, e2, e3)], j3] if (c2, e2, e3) in r3 else 0
                    if abs(cyz) < 1e-16:
                        continue
                    G4, r4, f4 = gam(x, q, a, b)
                    ri = r4.get((c1, e1, m_))
                    if ri is None:
                        continue
                    for (u, sg, kk), j4 in f4.items():
                        v = cyz * G4[ri, j4]
                        if abs(v) > 1e-16:
                            GR[ci, rcols.index((u, q, rho, sg, kk))] += v
            # move matrix on tree labels
            W = np.zeros((len(lcols), len(rcols)), dtype=complex)
            for i, (u, p, al, be, kk) in enumerate(lcols):
                for j, (u2, q, rho, sg, kk2) in enumerate(rcols):
                    if u == u2 and kk == kk2:
                        W[i, j] = F.entry(x, y, z, u, (p, al, be), (q, rho, sg))
            dev = float(np.max(np.abs(GL - GR @ W.T))) if lcols else 0.0
            if dev > maxdev:
                maxdev = dev
            if dev > tol.eps:
                failures.append(((x, y, z, a, b), dev))
    return ModulePentagonReport(maxdev, failures, maxdev <= tol.eps)
