"""Modular representation utilities for cyclic p-groups and their covers.

Modules over k[Z/q] (q a power of the characteristic) decompose into
Jordan blocks J_i = k[x]/(x-1)^i; the block multiset is read off the rank
sequence of powers of sigma - 1.  An exact sequence of such modules
splits iff the block multiset of the middle term is the disjoint union of
the outer ones.  Right-exactness of the fixed-vector functor is a
necessary consequence of splitting but, despite a claim in circulation,
not a sufficient one (tests/test_modrep.py exhibits non-split sequences
with right-exact invariants); both criteria are implemented so the gap
is testable.  The Maschke averaging construction upgrades a section that
is equivariant for a p-Sylow subgroup to one equivariant for the whole
group, whenever the index is invertible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

from wildcoh import linalg
from wildcoh.cohom import CyclicModule
from wildcoh.gf import FieldCtx


def block_decomposition(mod: CyclicModule) -> Counter:
    """Multiset of Jordan block sizes of the generator (unipotent, order q)."""
    mod.validate()
    ctx = mod.ctx
    dim = mod.dim
    if dim == 0:
        return Counter()
    nil = linalg.mat_sub(ctx, mod.sigma, linalg.identity(dim))
    ranks = [dim]
    power = linalg.identity(dim)
    for _ in range(dim + 1):
        power = linalg.mat_mul(ctx, power, nil)
        r = linalg.rank(ctx, power)
        ranks.append(r)
        if r == 0:
            break
    if ranks[-1] != 0:
        raise AssertionError("generator minus identity is not nilpotent")
    blocks: Counter = Counter()
    # blocks of size >= j count rank(N^(j-1)) - rank(N^j)
    for j in range(1, len(ranks)):
        at_least_j = ranks[j - 1] - ranks[j]
        at_least_next = ranks[j] - ranks[j + 1] if j + 1 < len(ranks) else 0
        if at_least_j - at_least_next:
            blocks[j] = at_least_j - at_least_next
    if sum(size * mult for size, mult in blocks.items()) != dim:
        raise AssertionError("block sizes do not sum to the dimension")
    return blocks


@dataclass
class ExactTriple:
    """Stable subspace A of B with quotient C = B/A, all over one cyclic group."""

    b: CyclicModule
    a_basis: list[list[int]]

    def __post_init__(self):
        ctx = self.b.ctx
        ech = linalg.RowEchelon(ctx, self.a_basis)
        self._a_rows = ech.rows()
        for row in self._a_rows:
            if not ech.contains(linalg.mat_vec(ctx, self.b.sigma, row)):
                raise ValueError("subspace is not sigma-stable")
        self._a_ech = ech

    @property
    def a_dim(self) -> int:
        return len(self._a_rows)

    @property
    def c_dim(self) -> int:
        return self.b.dim - self.a_dim

    def a_module(self) -> CyclicModule:
        """Restriction of sigma to A, in the echelon basis of A."""
        ctx = self.b.ctx
        pivots = self._a_ech.pivots()
        rows = self._a_rows
        sigma_a = []
        for row in rows:
            image = linalg.mat_vec(ctx, self.b.sigma, row)
            # reduced basis: coordinates are read off at the pivot columns
            coords = [image[pc] for pc in pivots]
            sigma_a.append(coords)
        return CyclicModule(ctx=ctx, sigma=linalg.transpose(sigma_a), q=self.b.q)

    def c_module(self) -> CyclicModule:
        """Induced action on B/A, in the basis of non-pivot coordinates."""
        ctx = self.b.ctx
        dim = self.b.dim
        pivots = set(self._a_ech.pivots())
        free = [c for c in range(dim) if c not in pivots]
        sigma_c = []
        for fc in free:
            vec = [0] * dim
            vec[fc] = 1
            image = self._a_ech.reduce(linalg.mat_vec(ctx, self.b.sigma, vec))
            sigma_c.append([image[c] for c in free])
        return CyclicModule(ctx=ctx, sigma=linalg.transpose(sigma_c), q=self.b.q)


def _fixed_dim(mod: CyclicModule) -> int:
    aug = linalg.mat_sub(mod.ctx, mod.sigma, linalg.identity(mod.dim))
    return mod.dim - linalg.rank(mod.ctx, aug) if mod.dim else 0


def splits(triple: ExactTriple) -> bool:
    """True iff blocks(B) equals blocks(A) + blocks(C) as multisets."""
    outer = block_decomposition(triple.a_module()) + block_decomposition(
        triple.c_module()
    )
    return block_decomposition(triple.b) == outer


def invariants_additive(triple: ExactTriple) -> bool:
    """True iff dim A^G + dim C^G = dim B^G (right-exactness of invariants)."""
    return _fixed_dim(triple.a_module()) + _fixed_dim(triple.c_module()) == _fixed_dim(
        triple.b
    )


class GroupTable:
    """Finite group given by an element list and a composition function."""

    def __init__(self, elements: Sequence[Hashable], compose: Callable):
        self.elements = list(elements)
        self.compose = compose
        self._index = {g: i for i, g in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate group elements")
        identity = None
        for e in self.elements:
            if all(compose(e, g) == g for g in self.elements):
                identity = e
                break
        if identity is None:
            raise ValueError("no identity element found")
        self.identity = identity
        self._inverse = {}
        for g in self.elements:
            inv = next((h for h in self.elements if compose(g, h) == identity), None)
            if inv is None:
                raise ValueError(f"element {g} has no inverse")
            self._inverse[g] = inv

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._index

    def inverse(self, g):
        return self._inverse[g]

    def right_coset_representatives(self, subgroup: Sequence[Hashable]) -> list:
        """One representative per right coset Hg, in element-list order."""
        sub = list(subgroup)
        seen = set()
        reps = []
        for g in self.elements:
            coset = frozenset(self.compose(h, g) for h in sub)
            if coset not in seen:
                seen.add(coset)
                reps.append(g)
        return reps

    def element_order(self, g) -> int:
        acc = g
        k = 1
        while acc != self.identity:
            acc = self.compose(acc, g)
            k += 1
        return k

    def regular_representation(self) -> dict:
        """Left-regular permutation matrices, a faithful homomorphism."""
        n = self.order
        mats = {}
        for g in self.elements:
            m = linalg.zeros(n, n)
            for j, h in enumerate(self.elements):
                m[self._index[self.compose(g, h)]][j] = 1
            mats[g] = m
        return mats


@dataclass
class SectionAction:
    """Linear data for averaging: actions on the total and quotient spaces."""

    ctx: FieldCtx
    on_total: Mapping[Hashable, list[list[int]]]
    on_quotient: Mapping[Hashable, list[list[int]]]
    projection: list[list[int]]


def average_section(
    group: GroupTable,
    p_subgroup: Sequence[Hashable],
    section: list[list[int]],
    action: SectionAction,
) -> list[list[int]]:
    """Average a P-equivariant section into a G-equivariant one.

    Implements s~(x) = (1/m) sum g_i^{-1} s(g_i x) over right-coset
    representatives; requires the index m = [G:P] to be invertible in the
    field and verifies both the input hypothesis and the output.
    """
    ctx = action.ctx
    dim_c = len(action.projection)
    dim_b = len(action.projection[0]) if action.projection else 0
    if group.order % len(list(p_subgroup)) != 0:
        raise ValueError("subgroup order does not divide the group order")
    m = group.order // len(list(p_subgroup))
    if m % ctx.p == 0:
        raise ValueError(f"index {m} is not invertible in characteristic {ctx.p}")
    ident_c = linalg.identity(dim_c)
    if linalg.mat_mul(ctx, action.projection, section) != ident_c:
        raise ValueError("input is not a section of the projection")
    for h in p_subgroup:
        lhs = linalg.mat_mul(ctx, action.on_total[h], section)
        rhs = linalg.mat_mul(ctx, section, action.on_quotient[h])
        if lhs != rhs:
            raise ValueError("input section is not P-equivariant")
    reps = group.right_coset_representatives(p_subgroup)
    if len(reps) != m:
        raise AssertionError("coset count does not match the index")
    total = linalg.zeros(dim_b, dim_c)
    for g in reps:
        g_inv = group.inverse(g)
        term = linalg.mat_mul(
            ctx,
            action.on_total[g_inv],
            linalg.mat_mul(ctx, section, action.on_quotient[g]),
        )
        total = linalg.mat_add(ctx, total, term)
    inv_m = ctx.inv(ctx.embed(m))
    averaged = [[ctx.mul(inv_m, x) for x in row] for row in total]
    if linalg.mat_mul(ctx, action.projection, averaged) != ident_c:
        raise AssertionError("averaged map is no longer a section")
    for g in group.elements:
        lhs = linalg.mat_mul(ctx, action.on_total[g], averaged)
        rhs = linalg.mat_mul(ctx, averaged, action.on_quotient[g])
        if lhs != rhs:
            raise AssertionError("averaged section is not G-equivariant")
    return averaged


def random_cyclic_module(ctx, q: int, rng, max_dim: int = 10) -> CyclicModule:
    """Random module: a random block shape conjugated by a random invertible map."""
    blocks = []
    dim = 0
    while not blocks or (dim < max_dim and rng.random() < 0.6):
        size = rng.randint(1, q)
        if dim + size > max_dim:
            break
        blocks.append(size)
        dim += size
    sigma = linalg.zeros(dim, dim)
    at = 0
    for size in blocks:
        for i in range(size):
            sigma[at + i][at + i] = 1
            if i + 1 < size:
                sigma[at + i][at + i + 1] = 1
        at += size
    while True:
        g = [[rng.randrange(ctx.q) for _ in range(dim)] for _ in range(dim)]
        if linalg.rank(ctx, g) == dim:
            break
    conj = linalg.mat_mul(ctx, linalg.mat_mul(ctx, g, sigma), linalg.inverse(ctx, g))
    return CyclicModule(ctx=ctx, sigma=conj, q=q)


def random_exact_triple(ctx, q: int, rng, max_dim: int = 10) -> ExactTriple:
    """Random stable-subspace triple: generators closed under sigma."""
    mod = random_cyclic_module(ctx, q, rng, max_dim)
    dim = mod.dim
    r = rng.randint(0, dim)
    gens = [[rng.randrange(ctx.q) for _ in range(dim)] for _ in range(r)]
    ech = linalg.RowEchelon(ctx, gens)
    # close under sigma so the subspace is stable by construction
    frontier = ech.rows()
    while frontier:
        new_rows = []
        for row in frontier:
            residual = ech.add(linalg.mat_vec(ctx, mod.sigma, row))
            if any(residual):
                new_rows.append(residual)
        frontier = new_rows
    return ExactTriple(b=mod, a_basis=ech.rows())
