"""Presentations of finite modules by free abelian groups.

A finite module M over the order-p group ring sits in an exact row

    0 -> N -> Z^M -> M -> 0

where Z^M is free on the elements of M (basis written x-hat), the middle
map sends x-hat to x, and the group acts on Z^M by permuting the basis.
This module builds that row, constructs explicit bases of N that split
into free orbits and fixed vectors, and stabilizes by regular summands
when a direct search needs the extra room.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    InternalInvariantError,
    NotNoncyclotomic,
    PreconditionError,
    SearchExhausted,
)
from .intlinalg import IntMatrix, Lattice, column_rank, kernel_basis, snf, solve_columns
from .zmod import CyclicR, DirectSum, FinMod, TrivCyclic, build, direct_sum

GREEDY_ATTEMPTS = 6
DEFAULT_K_MAX = 4


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def _shift_matrix(p: int) -> IntMatrix:
    # regular representation: generator sends basis vector i to i+1 mod p
    return IntMatrix.from_cols([_unit(p, (i + 1) % p) for i in range(p)], rows=p)


def _preimage_lattice(mat: IntMatrix, lat: Lattice) -> Lattice:
    """{w : mat w in lat}, as a lattice in Z^(mat.cols)."""
    if lat.ambient != mat.rows:
        raise PreconditionError("target lattice lives in the wrong space")
    if lat.rank == 0:
        return kernel_basis(mat)
    stacked = IntMatrix.hstack(mat, -lat.basis)
    ker = kernel_basis(stacked)
    cols = ker.basis.submatrix(range(mat.cols), range(ker.rank))
    return Lattice(mat.cols, cols)


class EquivariantLattice:
    """A sublattice of Z^n kept stable by an ambient action of order p.

    `provenance` optionally records the module shape whose presentation
    kernel this is; the basis search uses it to take the constructive
    route instead of searching.
    """

    __slots__ = ("p", "lattice", "action", "provenance")

    def __init__(self, p: int, lattice: Lattice, action: IntMatrix, provenance=None):
        n = lattice.ambient
        if action.rows != n or action.cols != n:
            raise PreconditionError("action must be square on the ambient space")
        if action.pow(p) != IntMatrix.identity(n):
            raise PreconditionError("action order must divide p")
        if lattice.transform(action) != lattice:
            raise PreconditionError("lattice is not action-invariant")
        self.p = p
        self.lattice = lattice
        self.action = action
        self.provenance = provenance

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def restricted(self) -> IntMatrix:
        """The action written in the lattice's own basis."""
        c = solve_columns(self.lattice.basis, self.action @ self.lattice.basis)
        if c is None:
            raise InternalInvariantError("validated action failed to restrict")
        return c

    def twist_sublattice(self) -> Lattice:
        """(action - 1) applied to the lattice, in ambient coordinates."""
        n = self.lattice.ambient
        delta = self.action - IntMatrix.identity(n)
        return Lattice(n, delta @ self.lattice.basis)

    def is_noncyclotomic(self) -> bool:
        """Kernel of the norm operator on the lattice equals the twist image.

        Both sides are computed in basis coordinates, so the comparison is
        an exact lattice equality in Z^rank.
        """
        c = self.restricted()
        r = c.rows
        norm = IntMatrix.identity(r)
        acc = IntMatrix.identity(r)
        for _ in range(self.p - 1):
            acc = c @ acc
            norm = norm + acc
        twist = Lattice(r, c - IntMatrix.identity(r))
        return kernel_basis(norm) == twist

    def stabilized(self, k: int) -> "EquivariantLattice":
        """Direct sum with k regular-representation blocks."""
        if k == 0:
            return self
        shift = _shift_matrix(self.p)
        action = IntMatrix.block_diag(self.action, *([shift] * k))
        basis = IntMatrix.block_diag(self.lattice.basis, IntMatrix.identity(k * self.p))
        return EquivariantLattice(self.p, Lattice(action.rows, basis), action)


class AugPresentation:
    """The row 0 -> N -> Z^M -> M -> 0 in explicit coordinates.

    elements fixes the basis order of Z^M; pi_matrix has the element
    representatives as columns; action permutes the basis the way the
    automorphism permutes M.
    """

    __slots__ = ("M", "elements", "pi_matrix", "N", "action")

    def __init__(self, M: FinMod, elements, pi_matrix, N, action):
        self.M = M
        self.elements = elements
        self.pi_matrix = pi_matrix
        self.N = N
        self.action = action

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, x: Sequence[int]) -> int:
        return self.M.index_of(x)

    def hat(self, x: Sequence[int]) -> tuple[int, ...]:
        return _unit(self.size, self.index(x))

    @property
    def zero_index(self) -> int:
        return self.index((0,) * self.M.r)

    def kernel_pair(self) -> EquivariantLattice:
        return EquivariantLattice(self.M.p, self.N, self.action, provenance=self.M.shape)


def build_aug(M: FinMod) -> AugPresentation:
    """Present a finite module by the free abelian group on its elements."""
    if not M.is_finite():
        raise PreconditionError("only finite modules have a finite element basis")
    elements = tuple(M.enumerate())
    m = len(elements)
    pi = IntMatrix.from_cols(elements, rows=M.r)
    perm_cols = [_unit(m, M.index_of(M.act(x))) for x in elements]
    action = IntMatrix.from_cols(perm_cols, rows=m)
    n = _preimage_lattice(pi, M.rel)
    if n.rank != m:
        raise InternalInvariantError("presentation kernel must have full rank")
    if n.transform(action) != n:
        raise InternalInvariantError("presentation kernel must be action-invariant")
    if not n.member(_unit(m, M.index_of((0,) * M.r))):
        raise InternalInvariantError("zero-hat must lie in the kernel")
    return AugPresentation(M, elements, pi, n, action)


class InvariantBasis:
    """A basis split into p-cycles of the action and fixed vectors.

    The stored order is fixed vectors first, then the orbit blocks in
    order.  Every constructor in this module verifies the split before
    handing the object out.
    """

    __slots__ = ("p", "action", "ambient", "orbit_blocks", "fixed_vectors")

    def __init__(self, p, action, ambient, orbit_blocks, fixed_vectors):
        self.p = p
        self.action = action
        self.ambient = ambient
        self.orbit_blocks = tuple(tuple(tuple(v) for v in blk) for blk in orbit_blocks)
        self.fixed_vectors = tuple(tuple(v) for v in fixed_vectors)
        self.verify()

    def vectors(self) -> list[tuple[int, ...]]:
        out = list(self.fixed_vectors)
        for blk in self.orbit_blocks:
            out.extend(blk)
        return out

    @property
    def rank(self) -> int:
        return len(self.fixed_vectors) + self.p * len(self.orbit_blocks)

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_cols(self.vectors(), rows=self.ambient.ambient)

    def verify(self) -> None:
        vecs = self.vectors()
        n = self.ambient.ambient
        if any(len(v) != n for v in vecs):
            raise InternalInvariantError("basis vector outside the ambient space")
        if len(vecs) != self.ambient.rank:
            raise InternalInvariantError("basis size differs from the lattice rank")
        if Lattice(n, IntMatrix.from_cols(vecs, rows=n)) != self.ambient:
            raise InternalInvariantError("vectors do not span the lattice")
        for blk in self.orbit_blocks:
            if len(blk) != self.p:
                raise InternalInvariantError("orbit block of the wrong length")
            if blk[0] == blk[(1 % self.p)] and self.p > 1:
                raise InternalInvariantError("orbit block has period 1")
            for i, v in enumerate(blk):
                if self.action.apply(v) != blk[(i + 1) % self.p]:
                    raise InternalInvariantError("orbit block is not a p-cycle")
        for v in self.fixed_vectors:
            if self.action.apply(v) != v:
                raise InternalInvariantError("fixed vector moves under the action")

    def summary(self) -> str:
        return f"{len(self.orbit_blocks)} free orbit(s) + {len(self.fixed_vectors)} fixed"


def _check_assembly_convention(basis: InvariantBasis, pres: AugPresentation) -> None:
    # assembly needs the zero-hat vector isolated: first fixed vector is
    # exactly 0-hat, every other basis vector has zero 0-hat coefficient
    zi = pres.zero_index
    if not basis.fixed_vectors or basis.fixed_vectors[0] != _unit(pres.size, zi):
        raise PreconditionError("first fixed vector must be the zero-hat vector")
    rest = list(basis.fixed_vectors[1:])
    for blk in basis.orbit_blocks:
        rest.extend(blk)
    if any(v[zi] != 0 for v in rest):
        raise PreconditionError("basis vectors other than zero-hat must avoid it")


def cyclic_trivial_basis(n: int, p: int) -> InvariantBasis:
    """Kernel basis for Z/n with trivial action.

    {0-hat} plus {x-hat - x 1-hat : 2 <= x < n} plus {n 1-hat}; every
    vector is fixed.
    """
    pres = build_aug(build(TrivCyclic(n), p))
    m = pres.size
    fixed = [_unit(m, pres.index((0,)))]
    one = pres.index((1,)) if n > 1 else None
    for x in range(2, n):
        v = [0] * m
        v[pres.index((x,))] += 1
        v[one] -= x
        fixed.append(tuple(v))
    if n > 1:
        fixed.append(tuple(n if i == one else 0 for i in range(m)))
    return InvariantBasis(p, pres.action, pres.N, [], fixed)


def cyclic_r_basis(q: int, k: int, p: int) -> InvariantBasis:
    """Kernel basis for the rank-one quotient R/(q^k).

    One free orbit {q^k e_i-hat} plus, for every element x outside the
    generator orbit, xi_x = x-hat - sum x_i e_i-hat.  The action sends
    xi_x to xi of the shifted element, so the xi split into orbits and
    fixed vectors along the element orbits.
    """
    pres = build_aug(build(CyclicR(q, k), p))
    m = pres.size
    gen_idx = [pres.index(_unit(p, i)) for i in range(p)]
    gens = {tuple(_unit(p, i)) for i in range(p)}

    def xi(x: tuple[int, ...]) -> tuple[int, ...]:
        v = [0] * m
        v[pres.index(x)] += 1
        for i, c in enumerate(x):
            v[gen_idx[i]] -= c
        return tuple(v)

    fixed = []
    blocks = []
    for orb in pres.M.orbits():
        if orb[0] in gens:
            continue
        if len(orb) == 1:
            fixed.append(xi(orb[0]))
        else:
            blocks.append(tuple(xi(x) for x in orb))
    qk = q ** k
    blocks.append(tuple(tuple(qk if j == gen_idx[i] else 0 for j in range(m)) for i in range(p)))
    # xi_0 is 0-hat and lands first because enumerate() lists 0 first
    return InvariantBasis(p, pres.action, pres.N, blocks, fixed)


def free_r_xi_window(p: int, xs: Sequence[Sequence[int]]):
    """Windowed kernel vectors for the free rank-one module.

    The module is Z^p with the cyclic shift; its elements cannot all be
    listed, so the caller picks finitely many x (none of them a standard
    generator) and gets xi_x = x-hat - sum x_i e_i-hat over the index
    window consisting of the generators followed by the requested x.
    Returns (window, matrix of xi columns); independence is verified.
    """
    gens = [_unit(p, i) for i in range(p)]
    seen = set(gens)
    xs = [tuple(x) for x in xs]
    for x in xs:
        if len(x) != p:
            raise PreconditionError("window element of the wrong length")
        if x in seen:
            raise PreconditionError("window elements must be distinct non-generators")
        seen.add(x)
    window = gens + xs
    pos = {x: i for i, x in enumerate(window)}
    cols = []
    for x in xs:
        v = [0] * len(window)
        v[pos[x]] += 1
        for i, c in enumerate(x):
            v[i] -= c
        cols.append(tuple(v))
    if not cols:
        return window, IntMatrix.zeros(len(window), 0)
    mat = IntMatrix.from_cols(cols, rows=len(window))
    if column_rank(mat) != len(cols):
        raise InternalInvariantError("window vectors must be independent")
    return window, mat


def assemble_direct_sum(
    p1: AugPresentation,
    p2: AugPresentation,
    b1: InvariantBasis,
    b2: InvariantBasis,
) -> InvariantBasis:
    """Kernel basis of a direct sum from kernel bases of the summands.

    Z 0-hat, the two embedded bases with their zero-hats dropped, and one
    cross vector xi_x = x-hat - x1-hat - x2-hat for each element x with
    both components nonzero.
    """
    if p1.M.p != p2.M.p:
        raise PreconditionError("summands live over different group orders")
    if b1.ambient != p1.N or b2.ambient != p2.N:
        raise PreconditionError("basis does not present the matching kernel")
    _check_assembly_convention(b1, p1)
    _check_assembly_convention(b2, p2)

    msum = direct_sum(p1.M, p2.M)
    psum = build_aug(msum)
    m = psum.size
    r1 = p1.M.r

    def left(x1):
        return psum.index(tuple(x1) + (0,) * p2.M.r)

    def right(x2):
        return psum.index((0,) * r1 + tuple(x2))

    e1 = IntMatrix.from_cols([_unit(m, left(x)) for x in p1.elements], rows=m)
    e2 = IntMatrix.from_cols([_unit(m, right(x)) for x in p2.elements], rows=m)

    fixed = [_unit(m, psum.zero_index)]
    fixed += [e1.apply(v) for v in b1.fixed_vectors[1:]]
    fixed += [e2.apply(v) for v in b2.fixed_vectors[1:]]
    blocks = [tuple(e1.apply(v) for v in blk) for blk in b1.orbit_blocks]
    blocks += [tuple(e2.apply(v) for v in blk) for blk in b2.orbit_blocks]

    def xi(x):
        v = [0] * m
        v[psum.index(x)] += 1
        v[left(x[:r1])] -= 1
        v[right(x[r1:])] -= 1
        return tuple(v)

    for orb in msum.orbits():
        x = orb[0]
        if all(c == 0 for c in x[:r1]) or all(c == 0 for c in x[r1:]):
            continue
        if len(orb) == 1:
            fixed.append(xi(x))
        else:
            blocks.append(tuple(xi(y) for y in orb))
    return InvariantBasis(psum.M.p, psum.action, psum.N, blocks, fixed)


def _shape_basis(shape, p: int):
    """Constructive kernel basis for a finite shape tree."""
    if isinstance(shape, TrivCyclic):
        return build_aug(build(shape, p)), cyclic_trivial_basis(shape.n, p)
    if isinstance(shape, CyclicR):
        return build_aug(build(shape, p)), cyclic_r_basis(shape.q, shape.k, p)
    if isinstance(shape, DirectSum):
        pres, basis = _shape_basis(shape.parts[0], p)
        acc = pres.M
        for part in shape.parts[1:]:
            nxt_pres, nxt_basis = _shape_basis(part, p)
            basis = assemble_direct_sum(pres, nxt_pres, basis, nxt_basis)
            acc = direct_sum(acc, nxt_pres.M)
            pres = build_aug(acc)
        return pres, basis
    raise PreconditionError("shape has no finite presentation")


def _constructive_basis(eq: EquivariantLattice) -> Optional[InvariantBasis]:
    try:
        pres, basis = _shape_basis(eq.provenance, eq.p)
    except PreconditionError:
        return None
    if pres.N == eq.lattice and pres.action == eq.action:
        return basis
    return None


def _orbit_of(c: IntMatrix, v: tuple[int, ...], p: int) -> list[tuple[int, ...]]:
    orb = [v]
    cur = v
    for _ in range(p - 1):
        cur = c.apply(cur)
        orb.append(cur)
    return orb


def _candidate_pool(r: int, rng: random.Random) -> list[tuple[int, ...]]:
    pool = [_unit(r, i) for i in range(r)]
    for _ in range(4 * r):
        pool.append(tuple(rng.randint(-2, 2) for _ in range(r)))
    return pool


def _extract_orbits(c: IntMatrix, p: int, target: int, rng: random.Random):
    """Greedy selection of `target` orbits spanning a primitive sublattice."""
    if target == 0:
        return []
    r = c.rows
    pool = _candidate_pool(r, rng)
    chosen: list[tuple[int, ...]] = []
    blocks: list[tuple[tuple[int, ...], ...]] = []
    progress = True
    while progress and len(blocks) < target:
        progress = False
        for v in pool:
            if len(blocks) == target:
                break
            orb = _orbit_of(c, v, p)
            if orb[1] == orb[0]:
                continue
            cand = chosen + orb
            res = snf(IntMatrix.from_cols(cand, rows=r))
            if res.rank != len(cand) or any(d != 1 for d in res.diag[: res.rank]):
                continue
            chosen, blocks = cand, blocks + [tuple(orb)]
            progress = True
    return blocks if len(blocks) == target else None


def _complete_with_fixed(c: IntMatrix, blocks, fix: Lattice):
    """Fixed vectors extending the chosen orbits to a basis of Z^r."""
    r = c.rows
    chosen = [v for blk in blocks for v in blk]
    if chosen:
        res = snf(IntMatrix.from_cols(chosen, rows=r))
        if any(d != 1 for d in res.diag[: res.rank]):
            return None
        u = res.u
    else:
        u = IntMatrix.identity(r)
    need = r - len(chosen)
    if need == 0:
        return []
    if fix.rank == 0:
        return None
    proj = u.submatrix(range(len(chosen), r), range(r))
    sol = solve_columns(proj @ fix.basis, IntMatrix.identity(need))
    if sol is None:
        return None
    lifted = fix.basis @ sol
    return [lifted.col(j) for j in range(need)]


def _greedy_basis(eq: EquivariantLattice, rng: random.Random) -> Optional[InvariantBasis]:
    c = eq.restricted()
    r = c.rows
    fix = kernel_basis(c - IntMatrix.identity(r))
    orbit_count, rem = divmod(r - fix.rank, eq.p - 1)
    if rem:
        return None
    for _ in range(GREEDY_ATTEMPTS):
        blocks = _extract_orbits(c, eq.p, orbit_count, rng)
        if blocks is None:
            continue
        fixed = _complete_with_fixed(c, blocks, fix)
        if fixed is None:
            continue
        bas = eq.lattice.basis
        amb_blocks = [tuple(bas.apply(v) for v in blk) for blk in blocks]
        amb_fixed = [bas.apply(v) for v in fixed]
        return InvariantBasis(eq.p, eq.action, eq.lattice, amb_blocks, amb_fixed)
    return None


def find_invariant_basis(
    eq: EquivariantLattice,
    allow_stabilization: bool = False,
    k_max: int = DEFAULT_K_MAX,
    seed: int = 0,
) -> tuple[int, InvariantBasis]:
    """Split eq (possibly plus k regular blocks) into free orbits and fixed vectors.

    Returns (k, basis) with k = 0 whenever the direct search succeeds.
    Constructive route first when the lattice knows its shape; greedy
    orbit extraction with fixed completion otherwise; stabilization only
    when allowed.  Failures raise, never approximate.
    """
    if not eq.is_noncyclotomic():
        raise NotNoncyclotomic(
            "norm kernel exceeds the twist image; no free-plus-trivial basis exists"
        )
    if eq.provenance is not None:
        basis = _constructive_basis(eq)
        if basis is not None:
            return 0, basis
    rng = random.Random(seed)
    top = k_max if allow_stabilization else 0
    for k in range(top + 1):
        found = _greedy_basis(eq.stabilized(k), rng)
        if found is not None:
            return k, found
    raise SearchExhausted(
        f"no invariant basis found for rank {eq.rank} after stabilizing up to k={top}"
    )


@dataclass(frozen=True)
class StabilizedPresentation:
    """Exact row 0 -> N1 -> N2 -> M -> 0 with both lattices carrying split bases.

    N2 is the element lattice plus k regular blocks; its basis is the
    element basis itself, so cover[i] points at the basis vector of N2
    lying over elements[i].
    """

    M: FinMod
    k: int
    n1: InvariantBasis
    n2: InvariantBasis
    pi_matrix: IntMatrix
    cover: tuple[int, ...]


def _pad_with_regular_blocks(basis: InvariantBasis, p: int, delta: int) -> InvariantBasis:
    """Extend a split basis of L to one of L plus delta regular blocks."""
    old = basis.ambient.ambient
    extra = delta * p
    action = IntMatrix.block_diag(basis.action, *([_shift_matrix(p)] * delta))
    ambient = Lattice(
        old + extra, IntMatrix.block_diag(basis.ambient.basis, IntMatrix.identity(extra))
    )
    pad = (0,) * extra
    blocks = [tuple(v + pad for v in blk) for blk in basis.orbit_blocks]
    fixed = [v + pad for v in basis.fixed_vectors]
    for j in range(delta):
        base = old + j * p
        blocks.append(tuple(_unit(old + extra, base + i) for i in range(p)))
    return InvariantBasis(p, action, ambient, blocks, fixed)


def stabilize_presentation(
    M: FinMod, k_max: int = DEFAULT_K_MAX, seed: int = 0, k_min: int = 0
) -> StabilizedPresentation:
    """Present M with an invariant-basis kernel, adjoining regular blocks if needed.

    k_min forces at least that many regular blocks, which keeps two rows
    comparable when one needed stabilization and the other did not.
    """
    aug = build_aug(M)
    k, n1 = find_invariant_basis(
        aug.kernel_pair(), allow_stabilization=True, k_max=max(k_max, k_min), seed=seed
    )
    if k < k_min:
        n1 = _pad_with_regular_blocks(n1, M.p, k_min - k)
        k = k_min
    p = M.p
    m = aug.size
    total = m + k * p

    shift = _shift_matrix(p)
    action = IntMatrix.block_diag(aug.action, *([shift] * k)) if k else aug.action
    fixed = []
    blocks = []
    for orb in M.orbits():
        if len(orb) == 1:
            fixed.append(_unit(total, M.index_of(orb[0])))
        else:
            blocks.append(tuple(_unit(total, M.index_of(x)) for x in orb))
    for j in range(k):
        base = m + j * p
        blocks.append(tuple(_unit(total, base + i) for i in range(p)))
    n2 = InvariantBasis(p, action, Lattice.full(total), blocks, fixed)

    pi_ext = (
        IntMatrix.hstack(aug.pi_matrix, IntMatrix.zeros(M.r, k * p)) if k else aug.pi_matrix
    )
    if n1.ambient != _preimage_lattice(pi_ext, M.rel):
        raise InternalInvariantError("stabilized row is not exact")

    vec_pos = {v: i for i, v in enumerate(n2.vectors())}
    cover = tuple(vec_pos[_unit(total, M.index_of(x))] for x in aug.elements)
    return StabilizedPresentation(M, k, n1, n2, pi_ext, cover)
