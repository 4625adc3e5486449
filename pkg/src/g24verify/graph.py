"""The 416-vertex graph on iso-sets and its strongly-regular structure.

Vertices are the orthogonal bases in canonical order; two are adjacent when
their iso-sets share exactly 3 isotropic points.  Adjacency is bit-packed
(one Python int per row) so neighbourhood intersections are single AND +
popcount operations, which keeps every exhaustive pair scan exact and fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionError, VerificationError

VERTEX_COUNT = 416
ADJACENCY_OVERLAP = 3


@dataclass
class Graph:
    n: int
    rows: list[int]

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def edges(self):
        """Ordered pairs (i, j) with i < j, ascending."""
        for i in range(self.n):
            row = self.rows[i] >> (i + 1) << (i + 1)
            while row:
                j = (row & -row).bit_length() - 1
                yield i, j
                row &= row - 1

    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(self.n)) // 2

    def flip_edge(self, i: int, j: int) -> None:
        """Toggle one edge in place; test hook for fault injection."""
        if i == j:
            raise ValueError("cannot flip a loop")
        self.rows[i] ^= 1 << j
        self.rows[j] ^= 1 << i


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def feasible(self) -> bool:
        """k(k - lam - 1) = (v - k - 1) mu, the basic counting identity."""
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu


@dataclass(frozen=True)
class Spectrum:
    r: Fraction
    f: int
    s: Fraction
    g_mult: int


@dataclass
class Partition:
    """The anchored split: B = vertices whose iso-set contains the anchor."""

    anchor: int
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    b3: tuple[int, ...]
    c: tuple[int, ...]
    b1_mask: int
    b2_mask: int
    b3_mask: int
    c_mask: int

    def block_of(self, i: int) -> str:
        if self.b1_mask >> i & 1:
            return "B1"
        if self.b2_mask >> i & 1:
            return "B2"
        if self.b3_mask >> i & 1:
            return "B3"
        return "C"

    def b_masks(self) -> tuple[int, int, int]:
        return self.b1_mask, self.b2_mask, self.b3_mask


def build_graph(isosets: list[int]) -> Graph:
    """Edge (i, j) iff the iso-sets of i and j share exactly 3 indices."""
    n = len(isosets)
    if n != VERTEX_COUNT:
        raise ConstructionError(f"expected {VERTEX_COUNT} iso-sets, got {n}")
    for i, s in enumerate(isosets):
        if s.bit_count() != 15:
            raise ConstructionError(f"iso-set {i} has {s.bit_count()} members")
    rows = [0] * n
    for i in range(n):
        si = isosets[i]
        for j in range(i + 1, n):
            if (si & isosets[j]).bit_count() == ADJACENCY_OVERLAP:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, rows)


def intersection_size_distribution(isosets: list[int]) -> dict[int, int]:
    """Census of |iso-set_i & iso-set_j| over all unordered pairs."""
    dist: dict[int, int] = {}
    n = len(isosets)
    for i in range(n):
        si = isosets[i]
        for j in range(i + 1, n):
            c = (si & isosets[j]).bit_count()
            dist[c] = dist.get(c, 0) + 1
    return dict(sorted(dist.items()))


def verify_srg(g: Graph) -> SrgParams:
    """Confirm constant degree, lambda and mu by exhaustive pair scan."""
    n = g.n
    for i in range(n):
        if g.rows[i] >> i & 1:
            raise VerificationError(f"loop at vertex {i}", witness=(i, i))
        for j in range(i + 1, n):
            if g.adjacent(i, j) != g.adjacent(j, i):
                raise VerificationError(f"asymmetric pair ({i},{j})", witness=(i, j))

    k = g.degree(0)
    for i in range(1, n):
        if g.degree(i) != k:
            raise VerificationError(
                f"vertex {i} has degree {g.degree(i)}, vertex 0 has {k}",
                witness=(i, g.degree(i)),
            )

    lam = mu = None
    for i in range(n):
        ri = g.rows[i]
        for j in range(i + 1, n):
            common = (ri & g.rows[j]).bit_count()
            if ri >> j & 1:
                if lam is None:
                    lam = common
                elif common != lam:
                    raise VerificationError(
                        f"edge ({i},{j}) has {common} common neighbours, not {lam}",
                        witness=(i, j),
                    )
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    raise VerificationError(
                        f"non-edge ({i},{j}) has {common} common neighbours, not {mu}",
                        witness=(i, j),
                    )
    params = SrgParams(n, k, lam, mu)
    if not params.feasible():
        raise VerificationError(f"infeasible srg parameters {params}")
    return params


def verify_srg_identity(g: Graph, params: SrgParams) -> None:
    """Entrywise check of A^2 = k I + lambda A + mu (J - I - A), exactly.

    (A^2)_ij is the size of N(i) & N(j), computed by row convolution on the
    bit-packed rows; no floating point is involved.  A pass certifies the
    three-eigenvalue structure behind the dimension bounds.
    """
    n = g.n
    for i in range(n):
        ri = g.rows[i]
        if ri.bit_count() != params.k:
            raise VerificationError(f"diagonal of A^2 at {i} is not k", witness=(i, i))
        for j in range(i + 1, n):
            entry = (ri & g.rows[j]).bit_count()
            want = params.lam if ri >> j & 1 else params.mu
            if entry != want:
                raise VerificationError(
                    f"(A^2)[{i},{j}] = {entry}, expected {want}", witness=(i, j)
                )


def srg_spectrum(params: SrgParams) -> Spectrum:
    """Eigenvalues r > s and their multiplicities, in exact arithmetic.

    Requires the discriminant (lam-mu)^2 + 4(k-mu) to be a perfect square;
    the conference-graph case is rejected as out of scope.
    """
    if not params.feasible():
        raise ValueError(f"infeasible parameters {params}")
    v, k, lam, mu = params.v, params.k, params.lam, params.mu
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = math.isqrt(disc)
    if root * root != disc:
        raise ValueError(f"discriminant {disc} is not a perfect square")
    r = Fraction(lam - mu + root, 2)
    s = Fraction(lam - mu - root, 2)
    f_frac = Fraction(v - 1, 1) - Fraction(2 * k + (v - 1) * (lam - mu), root)
    f_frac /= 2
    if f_frac.denominator != 1:
        raise ValueError(f"non-integral multiplicity f = {f_frac}")
    f = int(f_frac)
    g_mult = v - 1 - f
    if k + f * r + g_mult * s != 0:
        raise VerificationError("spectrum fails the zero-trace identity")
    return Spectrum(r, f, s, g_mult)


def _components_within(g: Graph, mask: int) -> list[tuple[int, ...]]:
    comps = []
    remaining = mask
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        seen = 1 << start
        frontier = [start]
        while frontier:
            nxt = 0
            for u in frontier:
                nxt |= g.rows[u] & mask & ~seen
            seen |= nxt
            frontier = []
            while nxt:
                u = (nxt & -nxt).bit_length() - 1
                frontier.append(u)
                nxt &= nxt - 1
        comps.append(tuple(i for i in range(g.n) if seen >> i & 1))
        remaining &= ~seen
    return comps


def split_B_C(g: Graph, isosets: list[int], anchor: int = 1) -> Partition:
    """Split on the anchor index and decompose B into connected components.

    B is the set of vertices whose iso-set contains `anchor`; its induced
    subgraph must fall apart into exactly three components of 32 vertices,
    labelled B1, B2, B3 by smallest contained vertex index.
    """
    if not 1 <= anchor <= 65:
        raise ValueError(f"anchor {anchor} out of range 1..65")
    b_mask = 0
    for i, s in enumerate(isosets):
        if s >> anchor & 1:
            b_mask |= 1 << i
    comps = _components_within(g, b_mask)
    if len(comps) != 3:
        raise VerificationError(
            f"B splits into {len(comps)} components, expected 3",
            witness=[len(c) for c in comps],
        )
    comps.sort(key=lambda c: c[0])
    sizes = [len(c) for c in comps]
    if sizes != [32, 32, 32]:
        raise VerificationError(f"component sizes {sizes}, expected [32, 32, 32]")
    masks = []
    for comp in comps:
        m = 0
        for i in comp:
            m |= 1 << i
        masks.append(m)
    c_mask = ((1 << g.n) - 1) & ~b_mask
    c = tuple(i for i in range(g.n) if c_mask >> i & 1)
    return Partition(
        anchor,
        comps[0],
        comps[1],
        comps[2],
        c,
        masks[0],
        masks[1],
        masks[2],
        c_mask,
    )


def verify_claim1(g: Graph, part: Partition) -> None:
    """Adjacency counts into each B_h: 20 inside, 0 across B, 8 from C."""
    b_masks = part.b_masks()
    b_all = part.b1_mask | part.b2_mask | part.b3_mask
    for i in range(g.n):
        row = g.rows[i]
        in_b = bool(b_all >> i & 1)
        for h, mask in enumerate(b_masks, start=1):
            count = (row & mask).bit_count()
            if mask >> i & 1:
                want = 20
            elif in_b:
                want = 0
            else:
                want = 8
            if count != want:
                raise VerificationError(
                    f"vertex {i} sees {count} neighbours in B{h}, expected {want}",
                    witness=(i, h),
                )


def halved_5cube() -> Graph:
    """Even-weight 5-bit words, adjacent at Hamming distance 2 (16 vertices)."""
    words = [w for w in range(32) if bin(w).count("1") % 2 == 0]
    n = len(words)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if (words[i] ^ words[j]).bit_count() == 2:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, rows)


def coclique_extension(g: Graph, size: int = 2) -> Graph:
    """Blow each vertex up into a coclique of `size`; copies inherit edges."""
    n = g.n * size
    rows = [0] * n
    for i in range(g.n):
        for j in range(g.n):
            if g.adjacent(i, j):
                for a in range(size):
                    for b in range(size):
                        rows[i * size + a] |= 1 << (j * size + b)
    return Graph(n, rows)


def _induced(g: Graph, vertices: tuple[int, ...]) -> Graph:
    pos = {v: t for t, v in enumerate(vertices)}
    rows = [0] * len(vertices)
    for t, v in enumerate(vertices):
        row = g.rows[v]
        for u in vertices:
            if row >> u & 1:
                rows[t] |= 1 << pos[u]
    return Graph(len(vertices), rows)


def find_isomorphism(ga: Graph, gb: Graph) -> list[int] | None:
    """Backtracking isomorphism search; returns image of each ga vertex."""
    if ga.n != gb.n:
        return None
    n = ga.n
    if sorted(ga.degree(i) for i in range(n)) != sorted(gb.degree(i) for i in range(n)):
        return None

    # Map ga vertices in an order that keeps each new vertex attached to the
    # mapped prefix, so adjacency constraints bite as early as possible.
    order: list[int] = [0]
    placed = 1 << 0
    while len(order) < n:
        best, best_links = -1, -1
        for v in range(n):
            if placed >> v & 1:
                continue
            links = (ga.rows[v] & placed).bit_count()
            if links > best_links:
                best, best_links = v, links
        order.append(best)
        placed |= 1 << best

    full = (1 << n) - 1
    image = [-1] * n

    def extend(depth: int, used: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        cand = full & ~used
        for u in order[:depth]:
            if ga.adjacent(v, u):
                cand &= gb.rows[image[u]]
            else:
                cand &= ~gb.rows[image[u]]
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            image[v] = w
            if extend(depth + 1, used | 1 << w):
                return True
        image[v] = -1
        return False

    return image if extend(0, 0) else None


def check_component_structure(g: Graph, part: Partition, with_isomorphism: bool = True) -> dict:
    """Regularity of each component, cross-component silence, and (optionally)
    isomorphism of each B_h with the 2-coclique extension of the halved
    5-cube."""
    result: dict = {"regular_20": True, "cross_edges": 0}
    blocks = [part.b1, part.b2, part.b3]
    masks = part.b_masks()
    for h, (block, mask) in enumerate(zip(blocks, masks), start=1):
        for i in block:
            deg = (g.rows[i] & mask).bit_count()
            if deg != 20:
                raise VerificationError(
                    f"vertex {i} has degree {deg} inside B{h}, expected 20",
                    witness=(i, h),
                )
    for h in range(3):
        for hh in range(h + 1, 3):
            for i in blocks[h]:
                cross = (g.rows[i] & masks[hh]).bit_count()
                if cross:
                    raise VerificationError(
                        f"vertex {i} of B{h + 1} touches B{hh + 1}", witness=i
                    )
    if with_isomorphism:
        model = coclique_extension(halved_5cube(), 2)
        result["model_vertices"] = model.n
        isos = []
        for h, block in enumerate(blocks, start=1):
            mapping = find_isomorphism(model, _induced(g, block))
            if mapping is None:
                raise VerificationError(
                    f"B{h} is not isomorphic to the 2-coclique extension "
                    "of the halved 5-cube"
                )
            isos.append(mapping)
        result["isomorphisms_found"] = len(isos)
    return result
