"""PG(2,16) with a nondegenerate Hermitian form.

Points are normalized homogeneous triples over GF(16) (first nonzero
coordinate equal to 1), enumerated in lexicographic order of their
encodings.  The form is

    H(a, b) = a1*conj(b3) + a2*conj(b2) + a3*conj(b1)

with conjugation x -> x**4.  Its 65 isotropic points (H(a,a) = 0) receive
the canonical indices 1..65 in enumeration order; iso-sets are bit-packed
with bit i standing for canonical index i.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf16
from .errors import ConstructionError

Point = tuple[int, int, int]

POINT_COUNT = 273
ISOTROPIC_COUNT = 65
NONISOTROPIC_COUNT = 208
BASIS_COUNT = 416
ISOSET_SIZE = 15


def hermitian_form(a: Point, b: Point) -> int:
    return (
        gf16.mul(a[0], gf16.conj(b[2]))
        ^ gf16.mul(a[1], gf16.conj(b[1]))
        ^ gf16.mul(a[2], gf16.conj(b[0]))
    )


def is_isotropic(a: Point) -> bool:
    return hermitian_form(a, a) == 0


def normalize(v: Point) -> Point:
    """Scale so the first nonzero coordinate is 1; unique per point."""
    for c in v:
        if c:
            if c == 1:
                return v
            s = gf16.inv(c)
            return (gf16.mul(s, v[0]), gf16.mul(s, v[1]), gf16.mul(s, v[2]))
    raise ValueError("zero vector has no projective class")


def enumerate_points() -> list[Point]:
    """All 273 normalized points, lexicographically ordered."""
    pts: list[Point] = [(0, 0, 1)]
    pts.extend((0, 1, z) for z in range(16))
    pts.extend((1, y, z) for y in range(16) for z in range(16))
    return pts


def line_points(a: Point, b: Point) -> list[Point]:
    """The 17 points of the line ab: {a} and {la + b : l in GF(16)}."""
    if a == b:
        raise ValueError("two distinct points are needed to span a line")
    pts = {a}
    for lam in range(16):
        pts.add(
            normalize(
                (
                    gf16.mul(lam, a[0]) ^ b[0],
                    gf16.mul(lam, a[1]) ^ b[1],
                    gf16.mul(lam, a[2]) ^ b[2],
                )
            )
        )
    if len(pts) != 17:
        raise ConstructionError(f"line through {a}, {b} has {len(pts)} points")
    return sorted(pts)


@dataclass(frozen=True)
class Basis:
    """Orthogonal basis of three nonisotropic points plus its iso-set."""

    noniso_indices: tuple[int, int, int]
    points: tuple[Point, Point, Point]
    isoset: int


@dataclass
class Plane:
    points: list[Point]
    isotropic: list[Point]
    nonisotropic: list[Point]
    iso_number: dict[Point, int]

    def iso_index(self, p: Point) -> int:
        return self.iso_number[p]


def classify_points(points: list[Point]) -> tuple[list[Point], list[Point]]:
    iso = [p for p in points if is_isotropic(p)]
    noniso = [p for p in points if not is_isotropic(p)]
    return iso, noniso


def build_plane() -> Plane:
    points = enumerate_points()
    if len(points) != POINT_COUNT or len(set(points)) != POINT_COUNT:
        raise ConstructionError(f"expected {POINT_COUNT} distinct points")
    for p in points:
        if normalize(p) != p:
            raise ConstructionError(f"non-normalized point {p} enumerated")
    iso, noniso = classify_points(points)
    if len(iso) != ISOTROPIC_COUNT or len(noniso) != NONISOTROPIC_COUNT:
        raise ConstructionError(
            f"point census {len(iso)}/{len(noniso)}, "
            f"expected {ISOTROPIC_COUNT}/{NONISOTROPIC_COUNT}"
        )
    iso_number = {p: i + 1 for i, p in enumerate(iso)}
    return Plane(points, iso, noniso, iso_number)


def isoset_members(mask: int) -> list[int]:
    return [i for i in range(1, ISOTROPIC_COUNT + 1) if mask >> i & 1]


def isoset_from_indices(indices) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= ISOTROPIC_COUNT:
            raise ValueError(f"isotropic index {i} out of range")
        mask |= 1 << i
    return mask


def isotropic_on_line(plane: Plane, a: Point, b: Point) -> int:
    """Canonical indices of isotropic points on the line ab, bit-packed.

    Requires a, b nonisotropic and orthogonal; such a line is a secant of
    the unital and carries exactly 5 isotropic points.
    """
    if is_isotropic(a) or is_isotropic(b):
        raise ValueError("line endpoints must be nonisotropic")
    if hermitian_form(a, b) != 0:
        raise ValueError("line endpoints must be orthogonal")
    mask = 0
    for p in line_points(a, b):
        idx = plane.iso_number.get(p)
        if idx is not None:
            mask |= 1 << idx
    if mask.bit_count() != 5:
        raise ConstructionError(
            f"secant line {a},{b} carries {mask.bit_count()} isotropic points"
        )
    return mask


def enumerate_bases(plane: Plane) -> list[Basis]:
    """All 416 orthogonal bases, sorted by their nonisotropic index triple.

    Every orthogonal nonisotropic pair extends to exactly one basis: the
    perpendicular lines of the pair meet in a single point, which must turn
    out nonisotropic and orthogonal to both.
    """
    noniso = plane.nonisotropic
    n = len(noniso)
    orth = [
        [
            j
            for j in range(n)
            if j != i and hermitian_form(noniso[i], noniso[j]) == 0
        ]
        for i in range(n)
    ]

    triples: set[tuple[int, int, int]] = set()
    for i in range(n):
        orth_i = set(orth[i])
        for j in orth[i]:
            if j <= i:
                continue
            completions = [k for k in orth[j] if k in orth_i]
            if len(completions) != 1:
                raise ConstructionError(
                    f"orthogonal pair ({i},{j}) has {len(completions)} completions"
                )
            k = completions[0]
            triples.add(tuple(sorted((i, j, k))))

    bases: list[Basis] = []
    for tri in sorted(triples):
        a, b, c = (noniso[t] for t in tri)
        f_ab = isotropic_on_line(plane, a, b)
        f_ac = isotropic_on_line(plane, a, c)
        f_bc = isotropic_on_line(plane, b, c)
        if f_ab & f_ac or f_ab & f_bc or f_ac & f_bc:
            raise ConstructionError(f"triangle sides of {tri} share isotropic points")
        isoset = f_ab | f_ac | f_bc
        if isoset.bit_count() != ISOSET_SIZE:
            raise ConstructionError(
                f"iso-set of {tri} has {isoset.bit_count()} members"
            )
        bases.append(Basis(tri, (a, b, c), isoset))

    if len(bases) != BASIS_COUNT:
        raise ConstructionError(f"found {len(bases)} bases, expected {BASIS_COUNT}")
    if len({bs.isoset for bs in bases}) != BASIS_COUNT:
        raise ConstructionError("iso-sets are not pairwise distinct")
    return bases
