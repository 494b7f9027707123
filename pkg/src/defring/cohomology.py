"""Group cohomology in low degrees via the normalized bar resolution.

H^1 is computed from crossed homomorphisms parametrized by their values on
the distinguished generators (the BFS words propagate the cocycle law to all
pairs, so the constraint system stays small).  H^2 uses the normalized bar
complex directly when it is small, and otherwise restricts to a Sylow
p-subgroup: restriction is injective on cohomology with F_p-module
coefficients, so vanishing upstairs follows exactly from vanishing on the
Sylow subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .modrep import Representation

DENSE_ENTRY_LIMIT = 25_000_000
ASSEMBLY_GUARD = 10_000_000  # |G|^3 * dim M


class CohomologyError(ValueError):
    pass


def trivial_module(group, p: int) -> Representation:
    """F_p with trivial action."""
    mats = np.ones((group.order, 1, 1), dtype=np.int64)
    return Representation(group, mats, p, 1, validate=False)


def h1_dim(M: Representation, gens: tuple[int, ...] | None = None) -> int:
    """dim_k Z^1 - dim_k B^1 for crossed homs f(gh) = f(g) + g.f(h).

    A crossed homomorphism is determined by its values on any generating
    set; a 2-element one is probed for to keep the constraint system small.
    """
    if M.N != 1:
        raise CohomologyError("coefficients must be mod p")
    G, p, dm = M.group, M.p, M.degree
    if gens is None:
        if len(G.generators) > 2:
            pair = G.probe_generating_pair()
            gens = pair if pair is not None else G.generators
        else:
            gens = G.generators
    ng = len(gens)
    if ng == 0:
        return 0
    parent, genidx = G._bfs_words(gens)
    n_unk = ng * dm
    # coeff[e] expresses f(e) as a linear map of the generator values
    coeff = np.zeros((G.order, dm, n_unk), dtype=np.int64)
    by_depth = sorted(range(G.order), key=lambda e: _bfs_depth(parent, e))
    for e in by_depth:
        if e == 0:
            continue
        par, gi = int(parent[e]), int(genidx[e])
        coeff[e] = coeff[par]
        coeff[e][:, gi * dm : (gi + 1) * dm] += M.mats[par]
        coeff[e] %= p
    rows = []
    for e in range(G.order):
        for gi, s in enumerate(gens):
            block = (coeff[G.mul(e, s)] - coeff[e]) % p
            block[:, gi * dm : (gi + 1) * dm] -= M.mats[e]
            rows.append(block % p)
    system = np.vstack(rows)
    z1 = n_unk - kernels.rank_modp(system, p)
    fixed = np.vstack([(M.mats[s] - np.eye(dm, dtype=np.int64)) % p for s in gens])
    b1 = kernels.rank_modp(fixed, p)
    return z1 - b1


def _bfs_depth(parent, e):
    k = 0
    while e != 0:
        e = int(parent[e])
        k += 1
    return k


@dataclass
class BarComplex:
    """Normalized bar cochain complex of a group in degrees 1..3."""

    M: Representation

    def __post_init__(self):
        G = self.M.group
        self.n = G.order
        self.dm = self.M.degree
        self.p = self.M.p
        self.nontriv = self.n - 1  # elements 1..n-1

    def _idx1(self, g: int, c: int) -> int:
        return (g - 1) * self.dm + c

    def _idx2(self, g: int, h: int, c: int) -> int:
        return ((g - 1) * self.nontriv + (h - 1)) * self.dm + c

    @property
    def dim_c1(self) -> int:
        return self.nontriv * self.dm

    @property
    def dim_c2(self) -> int:
        return self.nontriv * self.nontriv * self.dm

    def d1_matrix(self) -> np.ndarray:
        """(d1 f)(g, h) = g.f(h) - f(gh) + f(g) on normalized cochains."""
        G, p, dm = self.M.group, self.p, self.dm
        rows = self.dim_c2
        mat = np.zeros((rows, self.dim_c1), dtype=np.int64)
        for g in range(1, self.n):
            act = self.M.mats[g]
            for h in range(1, self.n):
                r0 = self._idx2(g, h, 0)
                gh = G.mul(g, h)
                mat[r0 : r0 + dm, self._idx1(h, 0) : self._idx1(h, 0) + dm] += act
                if gh != 0:
                    for c in range(dm):
                        mat[r0 + c, self._idx1(gh, c)] -= 1
                for c in range(dm):
                    mat[r0 + c, self._idx1(g, c)] += 1
        return mat % p

    def d2_matrix(self) -> np.ndarray:
        """(d2 f)(g,h,k) = g.f(h,k) - f(gh,k) + f(g,hk) - f(g,h)."""
        G, p, dm = self.M.group, self.p, self.dm
        rows = self.nontriv**3 * dm
        if rows * self.dim_c2 > DENSE_ENTRY_LIMIT:
            raise CohomologyError("d2 too large to materialize densely")
        mat = np.zeros((rows, self.dim_c2), dtype=np.int64)
        r0 = 0
        for g in range(1, self.n):
            act = self.M.mats[g]
            for h in range(1, self.n):
                gh = G.mul(g, h)
                for k in range(1, self.n):
                    hk = G.mul(h, k)
                    c0 = self._idx2(h, k, 0)
                    mat[r0 : r0 + dm, c0 : c0 + dm] += act
                    if gh != 0:
                        c0 = self._idx2(gh, k, 0)
                        for c in range(dm):
                            mat[r0 + c, c0 + c] -= 1
                    if hk != 0:
                        c0 = self._idx2(g, hk, 0)
                        for c in range(dm):
                            mat[r0 + c, c0 + c] += 1
                    c0 = self._idx2(g, h, 0)
                    for c in range(dm):
                        mat[r0 + c, c0 + c] -= 1
                    r0 += dm
        return mat % p

    def h2_dim_direct(self) -> int:
        rank_d1 = kernels.rank_modp(self.d1_matrix(), self.p)
        rank_d2 = kernels.rank_modp(self.d2_matrix(), self.p)
        return (self.dim_c2 - rank_d2) - rank_d1

    # -- explicit 2-cochains --------------------------------------------------

    def cochain_vector(self, c) -> np.ndarray:
        """Flatten a callable c(g, h) -> length-dm vector into C^2 coordinates."""
        vec = np.zeros(self.dim_c2, dtype=np.int64)
        for g in range(1, self.n):
            for h in range(1, self.n):
                val = np.asarray(c(g, h), dtype=np.int64) % self.p
                vec[self._idx2(g, h, 0) : self._idx2(g, h, 0) + self.dm] = val
        return vec

    def is_cocycle(self, c) -> bool:
        G, p = self.M.group, self.p
        for g in range(1, self.n):
            act = self.M.mats[g]
            for h in range(1, self.n):
                gh = G.mul(g, h)
                for k in range(1, self.n):
                    hk = G.mul(h, k)
                    total = act @ np.asarray(c(h, k), dtype=np.int64)
                    if gh != 0:
                        total = total - np.asarray(c(gh, k))
                    if hk != 0:
                        total = total + np.asarray(c(g, hk))
                    total = total - np.asarray(c(g, h))
                    if (total % p).any():
                        return False
        return True

    def is_coboundary(self, c) -> bool:
        vec = self.cochain_vector(c)
        sol = kernels.solve_modp(self.d1_matrix(), vec, self.p)
        return sol is not None


def h2_dim(M: Representation, method: str = "auto") -> int:
    """dim_k H^2(G, M) for an F_p module M.

    method="direct" forces the bar computation (guarded); "auto" uses the
    direct route when small and otherwise certifies vanishing through a
    Sylow p-subgroup, falling back to direct within the assembly guard.
    """
    if M.N != 1:
        raise CohomologyError("coefficients must be mod p")
    G, p, dm = M.group, M.p, M.degree
    if G.order**3 * dm > ASSEMBLY_GUARD:
        raise CohomologyError(
            f"|G|^3 * dim M = {G.order ** 3 * dm} exceeds guard {ASSEMBLY_GUARD}"
        )
    if G.order == 1:
        return 0
    cx = BarComplex(M)
    direct_cost = (G.order - 1) ** 3 * dm * cx.dim_c2
    if method == "direct":
        return cx.h2_dim_direct()
    # Sylow restriction first: it is exact whenever it vanishes, and the
    # restricted complex is far smaller.
    syl, elems = G.sylow_subgroup(p)
    if syl.order < G.order:
        restricted = M.restrict(syl, elems)
        if h2_dim(restricted, method="auto") == 0:
            return 0  # restriction to a Sylow subgroup is injective
    if direct_cost <= DENSE_ENTRY_LIMIT:
        return cx.h2_dim_direct()
    raise CohomologyError(
        "H^2 does not vanish on the Sylow subgroup and the direct computation "
        "exceeds the dense limit"
    )


def hom_invariants_dim(K, M: Representation) -> int:
    """dim_k Hom(K, M)^G via the equivariant Hom solver (K reduced mod p)."""
    from .modrep import hom_space

    Kbar = K.reduce_mod(1) if getattr(K, "n", 1) != 1 else K
    return hom_space(Kbar, M).dimension


@dataclass
class WedgeReport:
    p: int
    is_cocycle: bool
    is_coboundary: bool | None  # None: inconclusive (p = 2, symmetric form)
    invariant: bool


def wedge_cocycle(p: int, action_mats=None) -> WedgeReport:
    """The alternating form c(u, v) = u0*v1 - u1*v0 on K = (Z/p)^2.

    It is a 2-cocycle by bilinearity; for p >= 3 antisymmetry forces it off
    the coboundaries, which the linear solve confirms; for p = 2 the form is
    symmetric and the coboundary question is reported as inconclusive.
    Invariance is checked against the supplied determinant-1 action matrices
    (by default the action of the multiplicative group on the twisted
    kernel module mod p).
    """
    def c(u, v):
        return (u[0] * v[1] - u[1] * v[0]) % p

    vectors = [(a, b) for a in range(p) for b in range(p)]
    # cocycle identity (trivial coefficients): c(h,k) - c(g+h,k) + c(g,h+k) - c(g,h)
    cocycle = True
    for g in vectors:
        for h in vectors:
            gh = ((g[0] + h[0]) % p, (g[1] + h[1]) % p)
            for k in vectors:
                hk = ((h[0] + k[0]) % p, (h[1] + k[1]) % p)
                if (c(h, k) - c(gh, k) + c(g, hk) - c(g, h)) % p:
                    cocycle = False
    # alternating: c(v, v) = 0
    assert all(c(v, v) == 0 for v in vectors)

    nonzero = [v for v in vectors if v != (0, 0)]
    pos = {v: i for i, v in enumerate(nonzero)}
    rows = []
    rhs = []
    for g in nonzero:
        for h in nonzero:
            row = np.zeros(len(nonzero), dtype=np.int64)
            row[pos[g]] += 1
            row[pos[h]] += 1
            gh = ((g[0] + h[0]) % p, (g[1] + h[1]) % p)
            if gh != (0, 0):
                row[pos[gh]] -= 1
            rows.append(row % p)
            rhs.append(c(g, h))
    sol = kernels.solve_modp(np.vstack(rows), np.array(rhs), p)
    if p == 2:
        coboundary = None
    else:
        coboundary = sol is not None

    if action_mats is None:
        from .modrep import twisted_kernel_module

        K = twisted_kernel_module(p, 1)
        action_mats = [K.mats[K.group.generators[0]]]
    invariant = True
    for A in action_mats:
        det = (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]) % p
        if det != 1:
            raise CohomologyError("invariance check needs a determinant-1 action")
        for u in vectors:
            for v in vectors:
                au = tuple(int(x) for x in (A @ np.array(u)) % p)
                av = tuple(int(x) for x in (A @ np.array(v)) % p)
                if c(au, av) != c(u, v):
                    invariant = False
    return WedgeReport(p, cocycle, coboundary, invariant)
