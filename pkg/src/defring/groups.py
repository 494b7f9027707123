"""Finite groups with full multiplication tables and BFS generator words.

All groups here are small enough (a few thousand elements) that the full
table is the simplest correct representation: homomorphism checks become
exhaustive, and the breadth-first word of each element in the distinguished
generators gives a deterministic way to extend generator data (matrices,
images) to the whole group.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

TABLE_GUARD = 10_000  # max order for full-table construction


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group as an order x order multiplication table.

    Element 0 is the identity.  `words[i]` is a tuple of generator indices
    multiplying (left to right) to element i, found by BFS, so word length
    is minimal for the distinguished generator set.
    """

    def __init__(self, table: np.ndarray, generators, name: str = "G", action=None):
        table = np.asarray(table, dtype=np.int64)
        self.order = table.shape[0]
        if self.order > TABLE_GUARD:
            raise GroupError(f"order {self.order} exceeds full-table guard {TABLE_GUARD}")
        self.table = table
        self.generators = tuple(int(g) for g in generators)
        self.name = name
        self.action = None if action is None else np.asarray(action, dtype=np.int64)
        self._validate_table()
        self.inverse = self._inverse_table()
        self.parent, self.genidx = self._bfs_words(self.generators)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_permutations(cls, gens: list[tuple[int, ...]], name: str = "G"):
        """Close a set of permutations (tuples mapping i -> perm[i]) under
        composition; element order is BFS discovery order from the identity."""
        npts = len(gens[0])
        ident = tuple(range(npts))
        elems = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = tuple(g[s[i]] for i in range(npts))  # g after s
                    if h not in index:
                        index[h] = len(elems)
                        elems.append(h)
                        nxt.append(h)
            frontier = nxt
        n = len(elems)
        if n > TABLE_GUARD:
            raise GroupError(f"closure has {n} elements; exceeds guard")
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = index[tuple(a[b[k]] for k in range(npts))]
        action = np.array(elems, dtype=np.int64)
        return cls(table, [index[g] for g in gens], name=name, action=action)

    def _validate_table(self):
        t = self.table
        n = self.order
        if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
            raise GroupError("malformed table")
        if not (t[0] == np.arange(n)).all() or not (t[:, 0] == np.arange(n)).all():
            raise GroupError("element 0 is not the identity")
        # latin square property
        for i in range(n):
            if len(set(t[i].tolist())) != n or len(set(t[:, i].tolist())) != n:
                raise GroupError("table is not a latin square")
        if n <= 200:
            if not (t[t, :] == t[:, t]).all():
                raise GroupError("associativity fails")
        else:
            rng = np.random.default_rng(0)
            for _ in range(2000):
                i, j, k = rng.integers(0, n, 3)
                if t[t[i, j], k] != t[i, t[j, k]]:
                    raise GroupError("associativity fails")

    def _inverse_table(self):
        inv = np.empty(self.order, dtype=np.int64)
        for i in range(self.order):
            js = np.nonzero(self.table[i] == 0)[0]
            inv[i] = js[0]
        return inv

    def _bfs_words(self, gens):
        parent = np.full(self.order, -1, dtype=np.int64)
        genidx = np.full(self.order, -1, dtype=np.int64)
        parent[0] = 0
        seen = 1
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for gi, g in enumerate(gens):
                    h = int(self.table[e, g])
                    if parent[h] < 0 and h != 0:
                        parent[h] = e
                        genidx[h] = gi
                        seen += 1
                        nxt.append(h)
            frontier = nxt
        if seen != self.order:
            raise GroupError("distinguished generators do not generate the group")
        return parent, genidx

    # -- basic operations ------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.mul(self.mul(g, h), self.inv(g))

    def word(self, e: int) -> tuple[int, ...]:
        out = []
        while e != 0:
            out.append(int(self.genidx[e]))
            e = int(self.parent[e])
        return tuple(reversed(out))

    def element_order(self, e: int) -> int:
        k, acc = 1, e
        while acc != 0:
            acc = self.mul(acc, e)
            k += 1
        return k

    def exponent_of(self, e: int, k: int) -> int:
        acc = 0
        for _ in range(k):
            acc = self.mul(acc, e)
        return acc

    def closure(self, seeds) -> list[int]:
        seen = {0}
        frontier = [0]
        seeds = list(seeds)
        while frontier:
            nxt = []
            for e in frontier:
                for s in seeds:
                    h = int(self.table[e, s])
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return sorted(seen)

    def generates(self, seeds) -> bool:
        return len(self.closure(seeds)) == self.order

    def small_generating_set(self, limit: int = 3) -> tuple[int, ...]:
        """First generating tuple of minimal size, scanning element indices."""
        if self.order > 1000:
            return self.generators
        if self.order == 1:
            return ()
        for size in range(1, limit + 1):
            for combo in combinations(range(1, self.order), size):
                if self.generates(combo):
                    return combo
        return self.generators

    def probe_generating_pair(self, max_checks: int = 300) -> tuple[int, int] | None:
        """Cheap deterministic search for a 2-element generating set: pair a
        maximal-order element with candidates in index order."""
        if self.order == 1:
            return None
        orders = [self.element_order(e) for e in range(self.order)]
        a = max(range(1, self.order), key=lambda e: (orders[e], -e))
        checks = 0
        for b in range(1, self.order):
            if b == a:
                continue
            checks += 1
            if checks > max_checks:
                return None
            if self.generates((a, b)):
                return (a, b)
        return None

    def subgroup(self, elements) -> tuple["FiniteGroup", list[int]]:
        """The subgroup on the given (closed) element set, re-indexed; also
        returns the list mapping new indices to ambient ones."""
        elems = sorted(set(elements))
        if 0 not in elems:
            raise GroupError("subgroup must contain the identity")
        pos = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                c = self.mul(a, b)
                if c not in pos:
                    raise GroupError("element set is not closed")
                table[i, j] = pos[c]
        gens = self._subgroup_generators(elems, pos)
        sub = FiniteGroup(table, gens, name=f"{self.name}-sub{n}")
        return sub, elems

    def _subgroup_generators(self, elems, pos):
        chosen = []
        span = {0}
        for e in elems:
            if e in span or e == 0:
                continue
            chosen.append(e)
            span = set(self.closure([x for x in chosen]))
            if len(span) == len(elems):
                break
        return [pos[e] for e in chosen] if chosen else []

    def sylow_subgroup(self, p: int) -> tuple["FiniteGroup", list[int]]:
        """A Sylow p-subgroup, grown through normalizers."""
        target = 1
        n = self.order
        while n % p == 0:
            target *= p
            n //= p
        current = [0]
        while len(current) < target:
            cur_set = set(current)
            normalizer = [
                g
                for g in range(self.order)
                if all(self.conj(g, h) in cur_set for h in current)
            ]
            grown = False
            for x in normalizer:
                if x in cur_set:
                    continue
                trial = self.closure(current + [x])
                lt = len(trial)
                while lt % p == 0:
                    lt //= p
                if lt == 1 and len(trial) > len(current):
                    current = trial
                    grown = True
                    break
            if not grown:
                raise GroupError("Sylow growth failed")
        return self.subgroup(current)

    def table_hash(self) -> str:
        h = hashlib.sha256(self.table.astype("<i8").tobytes())
        return h.hexdigest()[:16]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "table_sha256_16": self.table_hash(),
            "generators": list(self.generators),
        }

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


# ---------------------------------------------------------------------------
# Concrete families
# ---------------------------------------------------------------------------


def symmetric_group(m: int) -> FiniteGroup:
    """S_m as permutations of {0..m-1}, generated by (0 1) and (0 1 ... m-1)."""
    if m > 8:
        raise GroupError("symmetric_group guard: m <= 8")
    if m < 2:
        raise GroupError("need m >= 2")
    transposition = tuple([1, 0] + list(range(2, m)))
    cycle = tuple(list(range(1, m)) + [0])
    gens = [transposition, cycle] if m > 2 else [transposition]
    return FiniteGroup.from_permutations(gens, name=f"S{m}")


class _SmallField:
    """F_q for q <= 9, elements encoded 0..q-1 as base-p digit strings."""

    # rewrite x^f into lower-degree terms: x^2 = 1 + x over F_2 (from
    # x^2+x+1), x^3 = 1 + x over F_2 (from x^3+x+1), x^2 = 2 over F_3
    # (from x^2+1)
    _POLYS = {4: (1, 1), 8: (1, 1, 0), 9: (2, 0)}

    def __init__(self, q: int):
        ps = [2, 3, 5, 7]
        p = next((p for p in ps if q % p == 0 and all(q % r for r in ps if r != p)), None)
        f = 0
        qq = q
        while p and qq % p == 0:
            qq //= p
            f += 1
        if p is None or qq != 1 or q > 9:
            raise GroupError(f"{q} is not a prime power <= 9")
        self.p, self.f, self.q = p, f, q
        if f == 1:
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            rewrite = self._POLYS[q]
            self.add = [[self._enc([(x + y) % p for x, y in zip(self._dec(a), self._dec(b))]) for b in range(q)] for a in range(q)]
            self.mul = [[self._polymul(a, b, rewrite) for b in range(q)] for a in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[a] = next(b for b in range(1, q) if self.mul[a][b] == 1)

    def _dec(self, a):
        out = []
        for _ in range(self.f):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _enc(self, digits):
        a = 0
        for d in reversed(digits):
            a = a * self.p + d
        return a

    def _polymul(self, a, b, rewrite):
        p, f = self.p, self.f
        da, db = self._dec(a), self._dec(b)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k] % p
            if c:
                for i, r in enumerate(rewrite):
                    prod[k - f + i] += c * r
            prod[k] = 0
        return self._enc([c % p for c in prod[:f]])

    def generator(self) -> int:
        for a in range(2, self.q):
            x, k = a, 1
            while x != 1:
                x = self.mul[x][a]
                k += 1
            if k == self.q - 1:
                return a
        raise GroupError("no field generator found")


def pgl2(q: int) -> FiniteGroup:
    """PGL_2(F_q) acting on the q+1 points of the projective line.

    Points are ordered 0, 1, ..., q-1, infinity.  The distinguished
    generators are z -> z+1, z -> g*z (g the first multiplicative
    generator), and z -> 1/z.
    """
    F = _SmallField(q)
    inf = q

    def apply_mat(a, b, c, d, pt):
        # [[a,b],[c,d]] acting on the column [z:1] (or [1:0] for infinity)
        if pt == inf:
            num, den = a, c
        else:
            num = F.add[F.mul[a][pt]][b]
            den = F.add[F.mul[c][pt]][d]
        if den == 0:
            return inf
        return F.mul[num][F.inv[den]]

    def perm_of(a, b, c, d):
        return tuple(apply_mat(a, b, c, d, pt) for pt in range(q + 1))

    g = F.generator() if q > 2 else 1
    gens = [perm_of(1, 1, 0, 1), perm_of(g, 0, 0, 1), perm_of(0, 1, 1, 0)]
    gens = [p for i, p in enumerate(gens) if p != tuple(range(q + 1))]
    G = FiniteGroup.from_permutations(gens, name=f"PGL2({q})")
    expected = q * (q - 1) * (q + 1)
    if G.order != expected:
        raise GroupError(f"PGL2({q}) closure has order {G.order}, expected {expected}")
    return G


def twisted_frobenius_group(p: int) -> FiniteGroup:
    """The multiplicative group of F_{p^2} extended by its field automorphism.

    Elements are pairs (i, e) standing for zeta^i sigma^e with
    sigma zeta sigma^-1 = zeta^p; encoded as index 2*i + e so that the
    identity (0, 0) is element 0.  Generators: zeta = (1,0), sigma = (0,1).
    """
    if p > 7:
        raise GroupError("twisted group guard: p <= 7")
    m = p * p - 1
    n = 2 * m

    def enc(i, e):
        return 2 * i + e

    table = np.empty((n, n), dtype=np.int64)
    for i in range(m):
        for e in range(2):
            for j in range(m):
                for f in range(2):
                    k = (i + (p**e) * j) % m
                    table[enc(i, e), enc(j, f)] = enc(k, (e + f) % 2)
    return FiniteGroup(table, [enc(1, 0), enc(0, 1)], name=f"TF{p}")


def twisted_element_parts(G: FiniteGroup, e: int) -> tuple[int, int]:
    """Inverse of the (i, e) encoding of twisted_frobenius_group."""
    return divmod(e, 2)


# ---------------------------------------------------------------------------
# Modules with group action and semidirect products
# ---------------------------------------------------------------------------


class PModule:
    """A free Z/p^n module of finite rank with an action of a FiniteGroup.

    The action is given by an invertible matrix per distinguished generator
    of the group and extended through BFS words; construction verifies the
    extension respects the full multiplication table.
    """

    def __init__(self, group: FiniteGroup, p: int, n: int, gen_mats):
        self.group = group
        self.p = p
        self.n = n
        self.modulus = p**n
        gen_mats = [np.asarray(m, dtype=np.int64) % self.modulus for m in gen_mats]
        if len(gen_mats) != len(group.generators):
            raise GroupError("need one action matrix per group generator")
        self.rank = int(gen_mats[0].shape[0]) if gen_mats else 0
        self.size = self.modulus**self.rank
        self.mats = self._extend(gen_mats)
        self._validate()

    def _extend(self, gen_mats):
        r = self.rank
        mats = np.zeros((self.group.order, r, r), dtype=np.int64)
        mats[0] = np.eye(r, dtype=np.int64)
        order_by_depth = np.argsort([len(self.group.word(e)) for e in range(self.group.order)], kind="stable")
        for e in order_by_depth:
            e = int(e)
            if e == 0:
                continue
            par, gi = int(self.group.parent[e]), int(self.group.genidx[e])
            mats[e] = mats[par] @ gen_mats[gi] % self.modulus
        return mats

    def _validate(self):
        from . import kernels

        m = self.modulus
        for g in range(self.group.order):
            if kernels.rank_modp(self.mats[g], self.p) != self.rank:
                raise GroupError("action matrix is not invertible")
            prods = self.mats[g][None, :, :] @ self.mats % m
            if not (prods == self.mats[self.group.table[g]] % m).all():
                raise GroupError("action does not respect the group table")

    @property
    def gen_mats(self) -> list[np.ndarray]:
        return [self.mats[g] for g in self.group.generators]

    @property
    def dim(self) -> int:
        return self.rank

    def act(self, g: int, vec):
        return tuple(int(x) for x in (self.mats[g] @ np.asarray(vec)) % self.modulus)

    def encode(self, vec) -> int:
        code = 0
        for c in reversed(vec):
            code = code * self.modulus + int(c) % self.modulus
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.rank):
            code, c = divmod(code, self.modulus)
            out.append(c)
        return tuple(out)

    def reduce_mod(self, n2: int) -> "PModule":
        gen_mats = [self.mats[g] % self.p**n2 for g in self.group.generators]
        return PModule(self.group, self.p, n2, gen_mats)

    def basis_vectors(self):
        return [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]


@dataclass
class GroupHom:
    """A homomorphism given on all elements, verified multiplicative."""

    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray  # element index -> element index

    def __post_init__(self):
        self.images = np.asarray(self.images, dtype=np.int64)
        t_s, t_t = self.source.table, self.target.table
        img = self.images
        if img[0] != 0:
            raise GroupError("homomorphism must fix the identity")
        if not (img[t_s] == t_t[img[:, None], img[None, :]]).all():
            raise GroupError("not multiplicative on all pairs")

    def __call__(self, e: int) -> int:
        return int(self.images[e])

    def is_injective(self) -> bool:
        return len(set(self.images.tolist())) == self.source.order

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.source.order == self.target.order

    def kernel(self) -> list[int]:
        return [e for e in range(self.source.order) if self.images[e] == 0]


class SemidirectGroup(FiniteGroup):
    """K x| G on pairs (k, g): (k1,g1)(k2,g2) = (k1 + g1.k2, g1 g2).

    Element index is k_code * |G| + g_index.  The distinguished generators
    are the standard basis of K (paired with 1) followed by (0, s) for each
    generator s of G.
    """

    def __init__(self, kmod: PModule, gq: FiniteGroup):
        if kmod.group is not gq and kmod.group.table_hash() != gq.table_hash():
            raise GroupError("module must be over the same group")
        self.kmod = kmod
        self.gq = gq
        ksize, gsize = kmod.size, gq.order
        if ksize * gsize > TABLE_GUARD:
            raise GroupError(f"semidirect order {ksize * gsize} exceeds guard")
        m = kmod.modulus
        all_vecs = np.array([kmod.decode(c) for c in range(ksize)], dtype=np.int64)
        act = np.empty((gsize, ksize), dtype=np.int64)
        radix = m ** np.arange(kmod.rank, dtype=np.int64)
        for g in range(gsize):
            imgs = (all_vecs @ kmod.mats[g].T) % m
            act[g] = imgs @ radix
        kadd = ((all_vecs[:, None, :] + all_vecs[None, :, :]) % m) @ radix
        n = ksize * gsize
        table = np.empty((n, n), dtype=np.int64)
        for g1 in range(gsize):
            moved = act[g1]  # k2 -> g1.k2
            ksum = kadd[:, moved]  # (k1, k2) -> k1 + g1.k2
            gprod = gq.table[g1]
            block = ksum[:, :, None] * gsize + gprod[None, None, :]
            table[g1::gsize, :] = block.reshape(ksize, n)
        gens = [int(kmod.encode(v)) * gsize for v in kmod.basis_vectors()]
        gens += [int(s) for s in gq.generators]
        super().__init__(table, gens, name=f"{kmod.size}:{gq.name}")
        self.ksize = ksize

    def encode(self, kvec, g: int) -> int:
        return self.kmod.encode(kvec) * self.gq.order + g

    def decode(self, e: int) -> tuple[tuple[int, ...], int]:
        kcode, g = divmod(e, self.gq.order)
        return self.kmod.decode(kcode), g

    def quotient_hom(self) -> GroupHom:
        images = np.array([e % self.gq.order for e in range(self.order)], dtype=np.int64)
        return GroupHom(self, self.gq, images)

    def section(self) -> np.ndarray:
        """g -> (0, g), a homomorphic section of the quotient."""
        return np.arange(self.gq.order, dtype=np.int64)

    def kernel_indices(self) -> list[int]:
        return [k * self.gq.order for k in range(self.ksize)]


def semidirect_product(kmod: PModule, gq: FiniteGroup) -> SemidirectGroup:
    return SemidirectGroup(kmod, gq)


# ---------------------------------------------------------------------------
# Orbits and isomorphism testing
# ---------------------------------------------------------------------------


def orbit_count_triples(G: FiniteGroup) -> int:
    """Number of orbits of the diagonal action on ordered triples of points."""
    if G.action is None:
        raise GroupError("group has no permutation action")
    npts = G.action.shape[1]
    gen_perms = [G.action[g] for g in G.generators]
    seen = np.zeros((npts, npts, npts), dtype=bool)
    count = 0
    for a in range(npts):
        for b in range(npts):
            for c in range(npts):
                if seen[a, b, c]:
                    continue
                count += 1
                stack = [(a, b, c)]
                seen[a, b, c] = True
                while stack:
                    x, y, z = stack.pop()
                    for perm in gen_perms:
                        t = (int(perm[x]), int(perm[y]), int(perm[z]))
                        if not seen[t]:
                            seen[t] = True
                            stack.append(t)
    return count


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    """Backtracking search for an isomorphism (small orders only)."""
    if G.order != H.order:
        return None
    if G.order > 48:
        raise GroupError("isomorphism search guard: order <= 48")
    gens = G.small_generating_set()
    gen_orders = [G.element_order(g) for g in gens]
    by_order: dict[int, list[int]] = {}
    for h in range(H.order):
        by_order.setdefault(H.element_order(h), []).append(h)
    candidates = [by_order.get(o, []) for o in gen_orders]
    words = [G.word(e) for e in range(G.order)]
    if tuple(gens) != G.generators:
        # re-derive words in terms of the small generating set
        sub = G._bfs_words(gens)
        parent, genidx = sub

        def word_of(e):
            out = []
            while e != 0:
                out.append(int(genidx[e]))
                e = int(parent[e])
            return tuple(reversed(out))

        words = [word_of(e) for e in range(G.order)]
    for images in product(*candidates):
        img = np.zeros(G.order, dtype=np.int64)
        ok = True
        for e in range(G.order):
            acc = 0
            for gi in words[e]:
                acc = H.mul(acc, images[gi])
            img[e] = acc
        if len(set(img.tolist())) != G.order:
            continue
        if (img[G.table] == H.table[img[:, None], img[None, :]]).all():
            return GroupHom(G, H, img)
    return None
