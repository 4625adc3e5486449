"""Euclidean representation y = A + 4I and the certified dimension chain.

Columns of y realise the graph as a two-distance point set (squared
distances 144 on edges, 192 on non-edges).  The contrast vectors p and q
cut the affine hull twice, giving the chain 65 -> 64 -> 63; each step is
certified two-sided: a modular-rank lower bound (Gaussian elimination over
two large primes) meets an upper bound derived from the exactly verified
srg identity plus explicit orthogonal vectors.  No floating point anywhere;
numpy is used purely as an int64 array engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InconclusiveError, VerificationError
from .graph import Graph, Partition, Spectrum

DEFAULT_PRIMES = (2**31 - 1, 2**31 - 19)

# Inner products <p, y_i> and <q, y_i> by block B1/B2/B3/C.
P_PATTERN = {"B1": 0, "B2": 24, "B3": -24, "C": 0}
Q_PATTERN = {"B1": 48, "B2": -24, "B3": -24, "C": 0}


@dataclass
class ReprMatrix:
    """416x416 integer matrix with 4 on the diagonal and 1 on edges."""

    n: int
    entries: np.ndarray  # int64, symmetric

    def entry(self, i: int, j: int) -> int:
        return int(self.entries[i, j])

    def column(self, i: int) -> list[int]:
        return [int(v) for v in self.entries[:, i]]

    def column_sum(self, i: int) -> int:
        return int(self.entries[:, i].sum())


@dataclass
class DimensionCertificate:
    label: str
    size: int
    base_vertex: int
    affine_dim: int
    upper_bound: int
    lower_bounds: dict[int, int]
    linear_ranks: dict[int, int]
    upper_argument: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return max(self.lower_bounds.values()) == self.upper_bound == self.affine_dim


def build_representation(g: Graph) -> ReprMatrix:
    """y = A + 4I, materialised exactly from the bit-packed rows."""
    n = g.n
    nbytes = (n + 7) // 8
    bits = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        raw = np.frombuffer(g.rows[i].to_bytes(nbytes, "little"), dtype=np.uint8)
        bits[i] = np.unpackbits(raw, bitorder="little")[:n]
    entries = bits + 4 * np.eye(n, dtype=np.int64)
    return ReprMatrix(n, entries)


def pair_distance_sq(y: ReprMatrix, i: int, j: int) -> int:
    """||y_i - y_j||^2 by exact integer summation over the 416 coordinates."""
    if i == j:
        raise ValueError("distance requires two distinct vertices")
    d = y.entries[:, i] - y.entries[:, j]
    return int(d @ d)


def distance_census(y: ReprMatrix, g: Graph) -> dict[int, int]:
    """Exhaustive scan of all squared pair distances, checked against
    adjacency: 144 exactly on edges, 192 exactly on non-edges."""
    gram = y.entries.T @ y.entries  # int64; entries bounded by 416*16
    diag = np.diag(gram)
    d2 = diag[:, None] + diag[None, :] - 2 * gram
    iu = np.triu_indices(y.n, k=1)
    vals = d2[iu]
    census: dict[int, int] = {}
    for v in np.unique(vals):
        census[int(v)] = int((vals == int(v)).sum())
    adj = np.zeros((y.n, y.n), dtype=bool)
    for i in range(y.n):
        row = g.rows[i]
        for j in range(i + 1, y.n):
            if row >> j & 1:
                adj[i, j] = True
    mism = np.nonzero((d2[iu] == 144) != adj[iu])[0]
    if mism.size:
        t = mism[0]
        raise VerificationError(
            "distance/adjacency mismatch",
            witness=(int(iu[0][t]), int(iu[1][t]), int(vals[t])),
        )
    if set(census) != {144, 192}:
        raise VerificationError(f"unexpected squared distances {sorted(census)}")
    return census


def build_contrasts(part: Partition) -> tuple[list[int], list[int]]:
    """p: +1 on B2, -1 on B3; q: +2 on B1, -1 on B2 and B3; 0 elsewhere."""
    n = max(max(part.b1), max(part.b2), max(part.b3), max(part.c)) + 1
    p = [0] * n
    q = [0] * n
    for i in part.b1:
        q[i] = 2
    for i in part.b2:
        p[i] = 1
        q[i] = -1
    for i in part.b3:
        p[i] = -1
        q[i] = -1
    return p, q


def verify_inner_products(
    y: ReprMatrix, p: list[int], q: list[int], part: Partition
) -> None:
    """<p, y_i> and <q, y_i> must follow the block patterns for all 416 i."""
    pv = np.array(p, dtype=np.int64)
    qv = np.array(q, dtype=np.int64)
    p_dots = pv @ y.entries
    q_dots = qv @ y.entries
    for i in range(y.n):
        block = part.block_of(i)
        if int(p_dots[i]) != P_PATTERN[block]:
            raise VerificationError(
                f"<p, y_{i}> = {int(p_dots[i])}, expected {P_PATTERN[block]} on {block}",
                witness=i,
            )
        if int(q_dots[i]) != Q_PATTERN[block]:
            raise VerificationError(
                f"<q, y_{i}> = {int(q_dots[i])}, expected {Q_PATTERN[block]} on {block}",
                witness=i,
            )
    if int(pv @ qv) != 0:
        raise VerificationError(f"<p, q> = {int(pv @ qv)}, expected 0")
    if int(pv.sum()) != 0 or int(qv.sum()) != 0:
        raise VerificationError("contrast vectors must sum to zero")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2**31 range used."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rank_mod_prime(rows, prime: int) -> int:
    """Rank over GF(prime) by Gaussian elimination with modular inverses.

    Pivoting is deterministic: columns in order, first nonzero row below the
    pivot row.  Entries stay in [0, prime), so int64 holds every product of
    two residues for prime < 2**31.
    """
    if prime <= 2:
        raise ValueError("prime must exceed 2")
    if prime >= 2**31:
        raise ValueError("prime too large for the int64 elimination kernel")
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    a = np.array(rows, dtype=np.int64) % prime
    if a.ndim != 2:
        raise ValueError("rank_mod_prime expects a 2-d matrix")
    m, n = a.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, prime)
        a[r] = a[r] * inv % prime
        below = a[r + 1 :, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            a[r + 1 + nzb] = (a[r + 1 + nzb] - below[nzb, None] * a[r]) % prime
        r += 1
        if r == m:
            break
    return r


def _column_matrix(y: ReprMatrix, vertices: tuple[int, ...]) -> np.ndarray:
    return y.entries[:, list(vertices)].T  # one row per chosen column of y


def _difference_matrix(
    y: ReprMatrix, vertices: tuple[int, ...], base: int
) -> np.ndarray:
    cols = [v for v in vertices if v != base]
    mat = y.entries[:, cols].T - y.entries[:, base]
    return mat


def certified_dimension_chain(
    y: ReprMatrix,
    part: Partition,
    spectrum: Spectrum,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
) -> list[DimensionCertificate]:
    """Certificates for the affine dimensions of V, C+B1, and C.

    Upper bounds: rank(y) = 1 + f from the verified srg identity, minus one
    hyperplane cut per orthogonal vector (the all-ones direction, then p,
    then q), each cut shown proper by an explicit nonzero inner product.
    Lower bounds: modular rank of the difference matrix; rank over any prime
    never exceeds the rational rank, so lower = upper pins the dimension.
    """
    if len(primes) < 2:
        raise ValueError("at least two primes are required")
    if spectrum.f != 65 or spectrum.s != -4:
        raise VerificationError(f"unexpected spectrum {spectrum}")

    col_sums = y.entries.sum(axis=0)
    if not (col_sums == 104).all():
        bad = int(np.nonzero(col_sums != 104)[0][0])
        raise VerificationError(
            f"column {bad} sums to {int(col_sums[bad])}, expected 104", witness=bad
        )

    p, q = build_contrasts(part)
    verify_inner_products(y, p, q, part)

    rank_y = 1 + spectrum.f  # eigenvalues 104, 24, 0 of y; 0 has multiplicity g
    base_arg = [
        f"srg identity verified, so y = A + 4I has rank 1 + f = {rank_y}",
        "every column satisfies <1, y_i> = 104, a hyperplane off the origin",
    ]
    sets = [
        ("V", tuple(range(y.n)), rank_y - 1, base_arg),
        (
            "C+B1",
            tuple(sorted(part.c + part.b1)),
            rank_y - 2,
            base_arg
            + [
                "p is orthogonal to every column of the set",
                "<p, y_j> = 24 on B2, so the cut by p is proper",
            ],
        ),
        (
            "C",
            part.c,
            rank_y - 3,
            base_arg
            + [
                "p and q are orthogonal to every column of the set",
                "<p, y_j> = 24 on B2 and <q, y_j> = 48 on B1, so both cuts are proper",
                "<p, q> = 0, so the two cuts are independent",
            ],
        ),
    ]

    certificates = []
    for label, vertices, upper, argument in sets:
        base = vertices[0]
        diff = _difference_matrix(y, vertices, base)
        cols = _column_matrix(y, vertices)
        lower_bounds: dict[int, int] = {}
        linear_ranks: dict[int, int] = {}
        for prime in primes:
            dr = rank_mod_prime(diff, prime)
            cr = rank_mod_prime(cols, prime)
            if dr > upper or cr > upper + 1:
                raise VerificationError(
                    f"{label}: modular rank {dr}/{cr} exceeds certified upper bound "
                    f"{upper}/{upper + 1} (mod {prime})"
                )
            if cr != dr + 1:
                raise VerificationError(
                    f"{label}: linear rank {cr} != affine rank {dr} + 1 mod {prime}"
                )
            lower_bounds[prime] = dr
            linear_ranks[prime] = cr
        # Base-point independence, one prime: the affine rank cannot depend
        # on which member anchors the differences.
        alt = _difference_matrix(y, vertices, vertices[1])
        if rank_mod_prime(alt, primes[0]) != lower_bounds[primes[0]]:
            raise VerificationError(f"{label}: rank depends on the base point")

        lower = max(lower_bounds.values())
        if lower < upper:
            raise InconclusiveError(
                f"{label}: modular lower bound {lower} < upper bound {upper} "
                f"for primes {list(primes)}; try other primes"
            )
        certificates.append(
            DimensionCertificate(
                label=label,
                size=len(vertices),
                base_vertex=base,
                affine_dim=upper,
                upper_bound=upper,
                lower_bounds=lower_bounds,
                linear_ranks=linear_ranks,
                upper_argument=list(argument),
            )
        )
    return certificates
