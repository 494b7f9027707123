"""Certification that the universal deformation ring is W[[t]]/(p^n t, t^2).

For an instance Gamma = K x| G with kernel module K and mod-p representation
V inflated from G, the certificate records the finite checks that pin the
deformation ring down:

  (a) Hom_G(K/pK, End V) is one-dimensional over F_p;
  (b) there is an injective equivariant alpha : K -> End(V_W)/p^n whose
      image either fails to commute mod p, or (p = 2, n = 1) admits no
      scalar a with alpha(g)^2 = a*alpha(g) for all g;

together with the explicit lift rho_R(k, g) = (1 + t*alpha(k)) rho_W(g) over
R = W[[t]]/(p^n t, t^2), verified to be a faithful homomorphism, and the
tangent-space cross-check dim H^1(Gamma, End V) = 1.

Negative controls replace K by a module with commutative alpha-image; the
verdict flips to refuted and the small-extension exponential lift over the
matching extension ring R' is constructed instead, exhibiting exactly the
extra lift that universality forbids.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from .cohomology import h1_dim
from .exactalg import pval, solve_module
from .groups import FiniteGroup, PModule, SemidirectGroup, pgl2, semidirect_product, symmetric_group, twisted_frobenius_group
from .localalg import AlgMatrix, ArtinLocalAlgebra, make_ring_R, make_ring_Rprime, make_ring_Rprime_2_1
from .modrep import (
    Representation,
    end_rep,
    galois_module_rep,
    hom_space,
    standard_perm_rep,
    twisted_kernel_module,
)


class CertifyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceSpec:
    """An addressable certification instance.

    family "twisted": parameters (p, n); family "standard": parameters
    (d, p) with n = 1.  `control` selects a negative-control kernel module:
    "commutative" (the regular module of the order-2 quotient, commuting
    alpha-image) or "scalar" (rank-1 trivial module mapping onto scalars).
    """

    family: str
    p: int
    n: int = 1
    d: int | None = None
    N: int | None = None
    control: str | None = None

    @property
    def precision(self) -> int:
        return self.N if self.N is not None else self.n + 2

    @property
    def name(self) -> str:
        if self.family == "twisted":
            base = f"twisted-p{self.p}n{self.n}"
        else:
            base = f"standard-d{self.d}p{self.p}"
        if self.control:
            base += f"-{self.control}"
        return base


def parse_instance_name(text: str) -> InstanceSpec:
    m = re.fullmatch(r"twisted-p(\d+)n(\d+)(?:-(commutative|scalar))?", text)
    if m:
        return InstanceSpec("twisted", int(m.group(1)), int(m.group(2)), control=m.group(3))
    m = re.fullmatch(r"standard-d(\d+)p(\d+)(?:-(commutative|scalar))?", text)
    if m:
        return InstanceSpec("standard", int(m.group(2)), 1, d=int(m.group(1)), control=m.group(3))
    raise CertifyError(f"unrecognized instance name: {text!r}")


def commutative_control_module(p: int, n: int) -> PModule:
    """Rank-2 module where the multiplicative generator acts trivially and
    the order-2 generator acts by Frobenius: the regular module of the
    order-2 quotient, whose alpha-images are multiplication operators and
    therefore commute."""
    from .exactalg import GaloisRing

    G = twisted_frobenius_group(p)
    ring = GaloisRing(p, n)
    eye = np.eye(2, dtype=np.int64)
    frob = np.array(ring.regular_matrix("frobenius").tolist())
    return PModule(G, p, n, [eye, frob])


def scalar_control_module(group: FiniteGroup, p: int) -> PModule:
    """Rank-1 trivial module; alpha lands in the scalar matrices."""
    eye = np.eye(1, dtype=np.int64)
    return PModule(group, p, 1, [eye for _ in group.generators])


@dataclass
class Assembly:
    spec: InstanceSpec
    G: FiniteGroup
    K: PModule
    gamma: SemidirectGroup
    rho_bar_g: Representation  # V as a G-representation over F_p
    rho_bar: Representation  # inflation to Gamma
    rho_w: Representation  # lift of V over Z/p^N
    M: Representation  # End(V) over F_p, G-action
    MW_mod_pn: Representation  # End(V_W)/p^n, G-action
    ring: ArtinLocalAlgebra

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def N(self) -> int:
        return self.spec.precision


def integral_standard_lift(G: FiniteGroup, p: int, N: int) -> Representation:
    """The standard piece of the permutation lattice over Z/p^N: the
    generator matrices in the difference basis have integer entries, so the
    mod-p^N reduction is a homomorphic lift of the mod-p representation."""
    npts = G.action.shape[1]
    d = npts - 1

    def diff_coords(a: int, b: int) -> np.ndarray:
        v = np.zeros(d, dtype=np.int64)
        if a < b:
            v[a:b] = 1
        elif a > b:
            v[b:a] = -1
        return v

    mats = []
    for s in G.generators:
        perm = G.action[s]
        cols = [diff_coords(int(perm[j]), int(perm[j + 1])) for j in range(d)]
        mats.append(np.stack(cols, axis=1))
    return Representation.from_generator_images(G, mats, p, N)


def assemble(spec: InstanceSpec) -> Assembly:
    p, n, N = spec.p, spec.n, spec.precision
    if spec.family == "twisted":
        rho_w = galois_module_rep(p, N)
        G = rho_w.group
        rho_bar_g = rho_w.reduce_mod(1)
        if spec.control is None:
            K = twisted_kernel_module(p, n)
        elif spec.control == "commutative":
            K = commutative_control_module(p, n)
        elif spec.control == "scalar":
            K = scalar_control_module(G, p)
        else:
            raise CertifyError(f"unknown control {spec.control!r}")
    elif spec.family == "standard":
        if spec.d is None:
            raise CertifyError("standard instance needs a degree d")
        if n != 1:
            raise CertifyError("standard instances are n = 1")
        from .modrep import admissible_degree

        if not admissible_degree(spec.d, p):
            raise CertifyError(
                f"(d, p) = ({spec.d}, {p}) inadmissible: need d < p-1 or d = p^f"
            )
        G = symmetric_group(spec.d + 1) if spec.d < p - 1 else pgl2(spec.d)
        pieces = standard_perm_rep(G, p)
        rho_bar_g = pieces.standard
        rho_w = integral_standard_lift(G, p, N)
        if spec.control is None:
            K = PModule(G, p, 1, [m % p for m in rho_bar_g.gen_mats])
        elif spec.control == "scalar":
            K = scalar_control_module(G, p)
        else:
            raise CertifyError("standard family supports only the scalar control")
    else:
        raise CertifyError(f"unknown family {spec.family!r}")
    if (rho_w.reduce_mod(1).mats != rho_bar_g.mats).any():
        raise CertifyError("lift does not reduce to the mod-p representation")
    gamma = semidirect_product(K, G)
    rho_bar = rho_bar_g.inflate(gamma.quotient_hom())
    M = end_rep(rho_bar_g)
    MW_mod_pn = end_rep(rho_w).reduce_mod(n)
    ring = make_ring_R(p, n, N)
    return Assembly(spec, G, K, gamma, rho_bar_g, rho_bar, rho_w, M, MW_mod_pn, ring)


# ---------------------------------------------------------------------------
# Condition (a)
# ---------------------------------------------------------------------------


@dataclass
class ConditionA:
    dim: int
    passed: bool


def check_condition_a(asm: Assembly) -> ConditionA:
    Kbar = asm.K.reduce_mod(1) if asm.n > 1 else asm.K
    dim = hom_space(Kbar, asm.M).dimension
    return ConditionA(dim, dim == 1)


# ---------------------------------------------------------------------------
# Condition (b): the map alpha
# ---------------------------------------------------------------------------


@dataclass
class AlphaMap:
    """An equivariant homomorphism K -> End(V_W)/p^n in matrix form."""

    p: int
    n: int
    d: int
    rank: int
    matrix: np.ndarray  # (d*d, rank) over Z/p^n, columns = images of basis

    def of_vec(self, kvec) -> np.ndarray:
        v = (self.matrix @ (np.asarray(kvec) % self.p**self.n)) % self.p**self.n
        return v.reshape(self.d, self.d)

    def kernel_trivial(self) -> bool:
        sol = solve_module(self.matrix.tolist(), [0] * (self.d * self.d), self.p, self.n)
        return not sol.kernel.generators

    def residue_nonzero(self) -> bool:
        return bool((self.matrix % self.p != 0).any())

    def to_json_dict(self) -> dict:
        return {
            "modulus": self.p**self.n,
            "matrix": self.matrix.tolist(),
        }


@dataclass
class ConditionB:
    status: str  # "ok" | "no_injective_generator" | "commutative_image"
    alpha: AlphaMap | None
    injective: bool
    residue_nonzero: bool
    witness: tuple[list[int], list[int]] | None  # basis vectors of K
    bullet_noncommuting: bool
    clause_p2n1: list[dict] | None  # per a: violating g or None
    bullet_no_scalar: bool
    hom_invariant_factors: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.status != "no_injective_generator"
            and self.injective
            and (self.bullet_noncommuting or self.bullet_no_scalar)
        )


def _kernel_elements(K: PModule):
    for code in range(K.size):
        yield K.decode(code)


def find_alpha(asm: Assembly) -> ConditionB:
    """Pick the first injective Howell generator of Hom_G(K, End(V_W)/p^n)
    and evaluate both disjuncts of condition (b) on it."""
    p, n = asm.p, asm.n
    hs = hom_space(asm.K, asm.MW_mod_pn)
    alpha = None
    for H in hs.basis:
        cand = AlphaMap(p, n, asm.rho_w.degree, asm.K.rank, H)
        if cand.kernel_trivial() and cand.residue_nonzero():
            alpha = cand
            break
    if alpha is None:
        return ConditionB(
            "no_injective_generator", None, False, False, None, False, None, False,
            hs.invariant_factors,
        )

    # generator pairs first, then everything else in encoding order
    basis_vecs = asm.K.basis_vectors()
    ordered_pairs = [(u, v) for u in basis_vecs for v in basis_vecs]
    seen_pairs = set(ordered_pairs)
    all_pairs = ordered_pairs + [
        (u, v)
        for u in _kernel_elements(asm.K)
        for v in _kernel_elements(asm.K)
        if (u, v) not in seen_pairs
    ]
    witness = None
    for u, v in all_pairs:
        au, av = alpha.of_vec(u) % p, alpha.of_vec(v) % p
        if ((au @ av) % p != (av @ au) % p).any():
            witness = (list(u), list(v))
            break

    clause = None
    bullet_no_scalar = False
    if p == 2 and n == 1:
        clause = []
        for a in range(p):
            violating = None
            for k in _kernel_elements(asm.K):
                ak = alpha.of_vec(k) % p
                if ((ak @ ak) % p != (a * ak) % p).any():
                    violating = list(k)
                    break
            clause.append({"a": a, "violating_g": violating})
        bullet_no_scalar = all(entry["violating_g"] is not None for entry in clause)

    status = "ok" if witness is not None or bullet_no_scalar else "commutative_image"
    return ConditionB(
        status,
        alpha,
        True,
        alpha.residue_nonzero(),
        witness,
        witness is not None,
        clause,
        bullet_no_scalar,
        hs.invariant_factors,
    )


# ---------------------------------------------------------------------------
# The lift over R
# ---------------------------------------------------------------------------


@dataclass
class RhoR:
    """rho_R(k, g) = (1 + t alpha(k)) rho_W(g) over R = W (+) (W/p^n)t."""

    asm: Assembly
    alpha: AlphaMap
    wpart: np.ndarray  # (|Gamma|, d, d) mod p^N
    tpart: np.ndarray  # (|Gamma|, d, d) mod p^n
    faithful: bool
    order_checks_passed: bool

    def generator_matrices(self) -> list[AlgMatrix]:
        R = self.asm.ring
        out = []
        for g in self.asm.gamma.generators:
            d = self.wpart.shape[1]
            rows = [
                [(int(self.wpart[g, i, j]), int(self.tpart[g, i, j])) for j in range(d)]
                for i in range(d)
            ]
            out.append(AlgMatrix.from_rows(R, rows))
        return out

    def specialize_t_to_zero(self) -> np.ndarray:
        return self.wpart


def build_rho_R(asm: Assembly, alpha: AlphaMap) -> RhoR:
    from .modrep import matrix_inv_mod

    p, n, N = asm.p, asm.n, asm.N
    mN, mn = p**N, p**n
    gamma, K = asm.gamma, asm.K
    d = asm.rho_w.degree
    order = gamma.order
    wpart = np.empty((order, d, d), dtype=np.int64)
    tpart = np.empty((order, d, d), dtype=np.int64)
    # verify equivariance of alpha on every group element first
    for g in range(asm.G.order):
        rho_g = asm.rho_w.mats[g] % mn
        inv_g = matrix_inv_mod(asm.rho_w.mats[g], p, N)
        for kv in K.basis_vectors():
            lhs = alpha.of_vec(K.act(g, kv))
            rhs = rho_g @ alpha.of_vec(kv) @ inv_g % mn
            if (lhs % mn != rhs % mn).any():
                raise CertifyError(f"alpha fails equivariance at group element {g}")
    for e in range(order):
        kvec, g = gamma.decode(e)
        w = asm.rho_w.mats[g]
        wpart[e] = w % mN
        tpart[e] = (alpha.of_vec(kvec) @ w) % mn
    # homomorphism on all |Gamma|^2 pairs, in the two coordinates of R
    table = gamma.table
    for e in range(order):
        w_prod = wpart[e] @ wpart % mN
        t_prod = (wpart[e] % mn) @ tpart + tpart[e] @ (wpart % mn)
        t_prod %= mn
        rows = table[e]
        if (w_prod != wpart[rows]).any() or (t_prod != tpart[rows]).any():
            raise CertifyError(f"rho_R fails multiplicativity at element {e}")
    eye = np.eye(d, dtype=np.int64)
    is_ident = (wpart == eye).all(axis=(1, 2)) & (tpart == 0).all(axis=(1, 2))
    faithful = np.nonzero(is_ident)[0].tolist() == [0]
    # order identities on the kernel: (1 + t alpha(k))^m = 1 + m t alpha(k),
    # so the matrix order of rho_R(k, 1) equals the additive order of k
    orders_ok = True
    for code in range(K.size):
        kv = K.decode(code)
        add_order = 1
        for c, _ in zip(kv, range(K.rank)):
            if c:
                add_order = max(add_order, mn // (p ** min(pval(c, p, n), n)))
        ak = alpha.of_vec(kv)
        mat_order = 1
        acc = ak % mn
        while (acc != 0).any():
            acc = (acc + ak) % mn
            mat_order += 1
        if add_order != mat_order:
            orders_ok = False
    return RhoR(asm, alpha, wpart, tpart, faithful, orders_ok)


# ---------------------------------------------------------------------------
# Small-extension exponential lifts (negative direction)
# ---------------------------------------------------------------------------


@dataclass
class ExpLiftReport:
    variant: str
    ring_name: str
    verified: bool
    orders_preserved: bool | None


def exp_lift_on_kernel(
    K: PModule, alpha: AlphaMap, N: int, a_hat: int | None = None
) -> ExpLiftReport:
    """Lift k -> 1 + t*alpha(k) (+ correction) from R to the matching small
    extension R', assuming the reduced alpha-image commutes.

    p odd: rho'(k) = 1 + alpha(k) t + (alpha_bar(k)^2 / 2) t^2 over
    W[[t]]/(p^n t, p t^2, t^3); p = 2, n >= 2: rho'(k) = 1 + t alpha(k) on
    cyclic generators over the same ring; p = 2, n = 1: the same formula
    over W[[t]]/(2t^2, t^3, 2t + a t^2) where a satisfies
    alpha_bar(g)^2 = a alpha_bar(g) for all g.
    """
    p, n, d = alpha.p, alpha.n, alpha.d
    mn = p**n
    mats = {k: alpha.of_vec(k) for k in _kernel_elements(K)}
    for u, au in mats.items():
        for v, av in mats.items():
            if ((au @ av) % p != (av @ au) % p).any():
                raise CertifyError("exp lift requires a commutative reduced image")

    if p != 2:
        ring = make_ring_Rprime(p, n, N)
        variant = "odd-exponential"
        inv2 = pow(2, -1, p)

        def rho(k):
            a = mats[k] % mn
            abar = mats[k] % p
            sq = (abar @ abar * inv2) % p
            rows = [
                [
                    ((1 if i == j else 0), int(a[i, j]), int(sq[i, j]))
                    for j in range(d)
                ]
                for i in range(d)
            ]
            return AlgMatrix.from_rows(ring, rows)

    elif n >= 2:
        ring = make_ring_Rprime(2, n, N)
        variant = "even-cyclic"

        def rho(k):
            a = mats[k] % mn
            rows = [
                [((1 if i == j else 0), int(a[i, j]), 0) for j in range(d)]
                for i in range(d)
            ]
            return AlgMatrix.from_rows(ring, rows)

    else:
        if a_hat is None:
            raise CertifyError("p = 2, n = 1 lift needs the scalar a with abar^2 = a*abar")
        for k, ak in mats.items():
            abar = ak % 2
            if ((abar @ abar) % 2 != (a_hat * abar) % 2).any():
                raise CertifyError("scalar clause fails for the supplied a")
        ring = make_ring_Rprime_2_1(a_hat, N)
        variant = "even-n1-clause"

        def rho(k):
            abar = mats[k] % 2
            rows = [
                [((1 if i == j else 0), int(abar[i, j]), 0) for j in range(d)]
                for i in range(d)
            ]
            return AlgMatrix.from_rows(ring, rows)

    images = {}
    for k in _kernel_elements(K):
        if p == 2 and n >= 2:
            # defined on cyclic generators and extended multiplicatively
            img = AlgMatrix.identity(ring, d)
            for i, c in enumerate(k):
                basis_img = rho(K.basis_vectors()[i])
                for _ in range(c):
                    img = img @ basis_img
            images[k] = img
        else:
            images[k] = rho(k)
    verified = True
    Ka = K
    madd = mn
    for u in _kernel_elements(Ka):
        for v in _kernel_elements(Ka):
            s = tuple((a + b) % madd for a, b in zip(u, v))
            if images[u] @ images[v] != images[s]:
                verified = False
    orders = None
    if p == 2 and n >= 2:
        orders = True
        for k in _kernel_elements(Ka):
            add_order = 1
            acc = k
            while any(acc):
                acc = tuple((a + b) % madd for a, b in zip(acc, k))
                add_order += 1
            if images[k].order() != add_order:
                orders = False
    return ExpLiftReport(variant, ring.name, verified, orders)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass
class Certificate:
    spec: InstanceSpec
    condition_a: ConditionA
    condition_b: ConditionB
    rho_r: RhoR | None
    tangent_dim: int | None
    verdict: str
    failed_stage: str | None

    def to_json_dict(self) -> dict:
        cb = self.condition_b
        out = {
            "instance": self.spec.name,
            "family": self.spec.family,
            "p": self.spec.p,
            "n": self.spec.n,
            "N": self.spec.precision,
            "ring": f"Z{self.spec.p}[[t]]/({self.spec.p}^{self.spec.n}*t, t^2)",
            "not_complete_intersection": True,
            "condition_a": {"dim": self.condition_a.dim, "pass": self.condition_a.passed},
            "condition_b": {
                "status": cb.status,
                "alpha": cb.alpha.to_json_dict() if cb.alpha else None,
                "hom_invariant_factors": cb.hom_invariant_factors,
                "injective": cb.injective,
                "residue_nonzero": cb.residue_nonzero,
                "witness": cb.witness,
                "noncommuting_bullet": cb.bullet_noncommuting,
                "clause_p2n1": cb.clause_p2n1,
                "no_scalar_bullet": cb.bullet_no_scalar,
                "pass": cb.passed,
            },
            "rho_R": None,
            "tangent_dim": self.tangent_dim,
            "verdict": self.verdict,
            "failed_stage": self.failed_stage,
            "group": None,
        }
        if self.rho_r is not None:
            out["rho_R"] = {
                "generators": [g.tolist() for g in self.rho_r.generator_matrices()],
                "faithful": self.rho_r.faithful,
                "order_checks": self.rho_r.order_checks_passed,
            }
            out["group"] = self.rho_r.asm.gamma.to_json_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


def certify_instance(spec: InstanceSpec) -> Certificate:
    asm = assemble(spec)
    cond_a = check_condition_a(asm)
    cond_b = find_alpha(asm)
    rho_r = None
    tangent = None
    failed = None
    if not cond_a.passed:
        failed = "condition_a"
    if not cond_b.passed and failed is None:
        failed = "condition_b"
    if failed is None:
        rho_r = build_rho_R(asm, cond_b.alpha)
        if not rho_r.faithful:
            failed = "rho_R_faithful"
        elif not rho_r.order_checks_passed:
            failed = "rho_R_orders"
        else:
            tangent = h1_dim(end_rep(asm.rho_bar))
            if tangent != 1:
                failed = "tangent_dim"
    verdict = "certified" if failed is None else "refuted"
    return Certificate(spec, cond_a, cond_b, rho_r, tangent, verdict, failed)


def verify_certificate(cert: dict) -> tuple[bool, list[str]]:
    """Re-validate an emitted certificate without re-deriving its data.

    The embedded alpha is checked for equivariance, injectivity and its
    witnesses; rho_R is rebuilt from the embedded alpha and compared against
    the embedded generator matrices; the dimensions are recomputed.
    """
    problems = []
    spec = parse_instance_name(cert["instance"])
    asm = assemble(spec)
    p, n = spec.p, spec.n
    cond_a = check_condition_a(asm)
    if cond_a.dim != cert["condition_a"]["dim"]:
        problems.append("condition_a dimension mismatch")
    cb = cert["condition_b"]
    if cb["alpha"] is not None:
        H = np.array(cb["alpha"]["matrix"], dtype=np.int64)
        alpha = AlphaMap(p, n, asm.rho_w.degree, asm.K.rank, H)
        if not alpha.kernel_trivial():
            problems.append("embedded alpha is not injective")
        if cb["witness"] is not None:
            u, v = cb["witness"]
            au, av = alpha.of_vec(u) % p, alpha.of_vec(v) % p
            if ((au @ av) % p == (av @ au) % p).all():
                problems.append("witness pair commutes")
        try:
            rho_r = build_rho_R(asm, alpha)
        except CertifyError as exc:
            problems.append(str(exc))
            rho_r = None
        if rho_r is not None and cert.get("rho_R"):
            embedded = cert["rho_R"]["generators"]
            rebuilt = [g.tolist() for g in rho_r.generator_matrices()]
            if embedded != rebuilt:
                problems.append("rho_R generator matrices differ")
            if cert["rho_R"]["faithful"] != rho_r.faithful:
                problems.append("faithfulness flag differs")
    if cert.get("tangent_dim") is not None:
        tangent = h1_dim(end_rep(asm.rho_bar))
        if tangent != cert["tangent_dim"]:
            problems.append("tangent dimension mismatch")
    return (not problems, problems)


# ---------------------------------------------------------------------------
# Negative controls
# ---------------------------------------------------------------------------


@dataclass
class NegativeControlReport:
    instance: str
    verdict: str
    failed_stage: str | None
    exp_lift: ExpLiftReport

    def to_json_dict(self) -> dict:
        return {
            "instance": self.instance,
            "verdict": self.verdict,
            "failed_stage": self.failed_stage,
            "exp_lift": {
                "variant": self.exp_lift.variant,
                "ring": self.exp_lift.ring_name,
                "verified": self.exp_lift.verified,
                "orders_preserved": self.exp_lift.orders_preserved,
            },
        }


def _injective_commutative_alpha(asm: Assembly) -> AlphaMap:
    """First injective combination of the Hom basis (controls only)."""
    p, n = asm.p, asm.n
    hs = hom_space(asm.K, asm.MW_mod_pn)
    mn = p**n
    k = len(hs.basis)
    for code in range(1, mn**k):
        coeffs = []
        c = code
        for _ in range(k):
            c, r = divmod(c, mn)
            coeffs.append(r)
        H = sum(c * B for c, B in zip(coeffs, hs.basis)) % mn
        cand = AlphaMap(p, n, asm.rho_w.degree, asm.K.rank, H)
        if cand.kernel_trivial():
            return cand
    raise CertifyError("no injective element in the Hom module")


def negative_control(p: int, n: int) -> NegativeControlReport:
    """Swap K for a commutative-image module: certification must refute, and
    the matching small-extension lift must succeed."""
    if p == 2 and n == 1:
        spec = InstanceSpec("twisted", p, n, control="scalar")
        cert = certify_instance(spec)
        asm = assemble(spec)
        alpha = _injective_commutative_alpha(asm)
        report = exp_lift_on_kernel(asm.K, alpha, spec.precision, a_hat=1)
    else:
        spec = InstanceSpec("twisted", p, n, control="commutative")
        cert = certify_instance(spec)
        asm = assemble(spec)
        alpha = _injective_commutative_alpha(asm)
        report = exp_lift_on_kernel(asm.K, alpha, spec.precision)
    if cert.verdict != "refuted":
        raise CertifyError("negative control unexpectedly certified")
    return NegativeControlReport(spec.name, cert.verdict, cert.failed_stage, report)
