"""Exact polyhedral primitives over the rationals.

Everything here works on tuples of ``int``/``Fraction``; there is no floating
point anywhere.  The workhorse is a double description routine
(:class:`DoubleDescription`) that computes the extreme rays of a pointed cone
``{y : g.y >= 0 for all rows g}``.  Convex hulls (V to H), lower hulls of
lifted point sets and H to V conversions are all phrased in terms of it.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Iterator, Sequence

Scalar = Fraction
Point = tuple  # tuple of int | Fraction


# ---------------------------------------------------------------------------
# scalar / vector helpers


def canon(x) -> int | Fraction:
    """Return ``x`` as an ``int`` when integral, otherwise as a ``Fraction``."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def canon_point(p: Iterable) -> Point:
    return tuple(canon(c) for c in p)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def integer_row(row: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    if all(type(c) is int for c in row):
        return primitive(row)
    den = reduce(_lcm, (Fraction(c).denominator for c in row), 1)
    ints = [int(Fraction(c) * den) for c in row]
    g = reduce(math.gcd, ints, 0)
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(ints)


def primitive(row: Sequence[int]) -> tuple[int, ...]:
    g = reduce(math.gcd, row, 0)
    if g <= 1:
        return tuple(row)
    return tuple(c // g for c in row)


def det(matrix: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant.  Integer matrices use fraction-free Bareiss."""
    n = len(matrix)
    if n == 0:
        return 1
    if all(isinstance(c, int) for row in matrix for c in row):
        m = [list(row) for row in matrix]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k] != 0:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = m[k][k]
            for i in range(k + 1, n):
                mi = m[i]
                mik = mi[k]
                mk = m[k]
                for j in range(k + 1, n):
                    mi[j] = (mi[j] * pivot - mik * mk[j]) // prev
            prev = pivot
        return sign * m[n - 1][n - 1]
    m = [[Fraction(c) for c in row] for row in matrix]
    result = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            result = -result
        result *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return canon(result)


def _int_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        if all(isinstance(c, int) for c in row):
            out.append(list(row))
        else:
            den = reduce(_lcm, (Fraction(c).denominator for c in row), 1)
            out.append([int(Fraction(c) * den) for c in row])
    return out


def _reduce_row(row: list[int]) -> list[int]:
    g = reduce(math.gcd, row, 0)
    return [c // g for c in row] if g > 1 else row


def _echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form (rows rescaled by positive rationals)."""
    m = _int_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        top = m[r]
        p = top[c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = _reduce_row([a * p - f * b for a, b in zip(m[i], top)])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _diagonalize(m: list[list[int]], pivots: list[int]) -> list[list[int]]:
    """Clear the pivot columns above each pivot, staying in integers."""
    m = [list(row) for row in m]
    for r in range(len(m) - 1, -1, -1):
        c = pivots[r]
        p = m[r][c]
        for i in range(r):
            f = m[i][c]
            if f:
                m[i] = _reduce_row([a * p - f * b for a, b in zip(m[i], m[r])])
    return m


def _back_substitute(m: list[list[int]], pivots: list[int]):
    out = []
    for row, c in zip(_diagonalize(m, pivots), pivots):
        p = row[c]
        out.append([Fraction(x, p) for x in row])
    return out, pivots


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a rational matrix; returns (rows, pivots)."""
    m, pivots = _echelon(rows)
    return _back_substitute(m, pivots)


def rank(rows: Sequence[Sequence]) -> int:
    return len(_echelon(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Integer basis of ``{x : row . x = 0 for every row}``."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(integer_row(v))
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve a square nonsingular system exactly."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    n = len(matrix)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return tuple(row[-1] for row in red)


# ---------------------------------------------------------------------------
# affine hulls


class AffineHull:
    """Affine span of a finite point set.

    ``directions`` are the RREF basis rows of the linear part, so the
    coordinates at ``pivots`` form an injective chart of the hull.  They are
    derived on first use from the integer echelon form.
    """

    __slots__ = ("ambient_dim", "base", "pivots", "_echelon_rows", "_directions")

    def __init__(self, ambient_dim: int, base: Point, pivots: tuple[int, ...],
                 echelon_rows=None, directions=None):
        self.ambient_dim = ambient_dim
        self.base = base
        self.pivots = pivots
        self._echelon_rows = echelon_rows
        self._directions = directions

    @property
    def directions(self) -> tuple[tuple[Fraction, ...], ...]:
        if self._directions is None:
            red, _ = _back_substitute(self._echelon_rows or [], list(self.pivots))
            self._directions = tuple(tuple(r) for r in red)
        return self._directions

    def __eq__(self, other):
        return (isinstance(other, AffineHull) and self.base == other.base
                and self.pivots == other.pivots and self.directions == other.directions)

    def __repr__(self):
        return f"AffineHull(base={self.base}, pivots={self.pivots})"

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def chart(self, p: Sequence) -> tuple:
        return tuple(p[i] for i in self.pivots)

    def contains(self, p: Sequence) -> bool:
        diff = vsub(p, self.base)
        rebuilt = [Fraction(0)] * self.ambient_dim
        for coef, d in zip(self.chart(diff), self.directions):
            for i, x in enumerate(d):
                rebuilt[i] += coef * x
        return all(a == b for a, b in zip(rebuilt, diff))

    def equations(self) -> list[tuple[tuple[int, ...], int | Fraction]]:
        """Canonical equations ``e . x = c`` cutting out the hull."""
        eqs = []
        piv = set(self.pivots)
        for c in range(self.ambient_dim):
            if c in piv:
                continue
            row = [Fraction(0)] * self.ambient_dim
            row[c] = Fraction(1)
            for j, p in enumerate(self.pivots):
                row[p] = -self.directions[j][c]
            normal = integer_row(row)
            eqs.append((normal, canon(dot(normal, self.base))))
        return eqs


def affine_hull(points: Sequence[Sequence]) -> AffineHull:
    pts = list(points)
    if not pts:
        raise ValueError("affine hull of an empty set")
    base = canon_point(pts[0])
    diffs = [vsub(p, base) for p in pts[1:]]
    ech, pivots = _echelon(diffs) if diffs else ([], [])
    return AffineHull(len(base), base, tuple(pivots), ech)


def affine_dim(points: Sequence[Sequence]) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    return rank([vsub(p, pts[0]) for p in pts[1:]])


# ---------------------------------------------------------------------------
# double description


def _popcount(x: int) -> int:
    return x.bit_count()


class DoubleDescription:
    """Extreme rays of the pointed cone ``{y : row . y >= 0}``.

    Rows are integer vectors and must have full column rank.  Rows may be
    added incrementally with :meth:`add_row`; each ray carries the bitmask of
    rows it is tight on (bit ``i`` refers to ``self.rows[i]``).
    """

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("no rows")
        self.dim = len(rows[0])
        chosen: list[int] = []
        basis: list[tuple[list[int], int]] = []
        for i, row in enumerate(rows):
            v = list(row)
            for b, p in basis:
                if v[p]:
                    f, q = v[p], b[p]
                    v = _reduce_row([a * q - f * c for a, c in zip(v, b)])
            nz = next((j for j, x in enumerate(v) if x), None)
            if nz is None:
                continue
            basis.append((v, nz))
            chosen.append(i)
            if len(chosen) == self.dim:
                break
        if len(chosen) < self.dim:
            raise ValueError("rows do not have full column rank")
        self.rows: list[tuple[int, ...]] = [rows[i] for i in chosen]
        n = self.dim
        # columns of the inverse of the chosen square matrix are the initial rays
        m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        ech, piv = _echelon(m)
        diag = _diagonalize(ech, piv)
        scale = reduce(_lcm, (abs(diag[i][i]) for i in range(n)), 1)
        self.rays: list[tuple[int, ...]] = []
        self.zeros: list[int] = []
        full = (1 << n) - 1
        for j in range(n):
            col = [diag[i][n + j] * (scale // diag[i][i]) for i in range(n)]
            self.rays.append(primitive(col))
            self.zeros.append(full & ~(1 << j))
        chosen_set = set(chosen)
        for i, row in enumerate(rows):
            if i not in chosen_set:
                self.add_row(row)

    def add_row(self, row: Sequence[int]) -> None:
        row = tuple(row)
        idx = len(self.rows)
        self.rows.append(row)
        bit = 1 << idx
        vals = [sum(a * b for a, b in zip(r, row)) for r in self.rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        if not neg:
            for i, s in enumerate(vals):
                if s == 0:
                    self.zeros[i] |= bit
            return
        need = self.dim - 2
        zeros = self.zeros
        pairs = []
        union = 0
        for p in pos:
            zp = zeros[p]
            for q in neg:
                common = zp & zeros[q]
                if common.bit_count() >= need:
                    pairs.append((p, q, common))
                    union |= common
        new_rays, new_zeros = [], []
        if pairs:
            # rays tight at each row of interest, as bitmasks over ray indices
            tight_at: dict[int, int] = {}
            for r, z in enumerate(zeros):
                z &= union
                rb = 1 << r
                while z:
                    low = z & -z
                    tight_at[low] = tight_at.get(low, 0) | rb
                    z ^= low
            all_rays = (1 << len(self.rays)) - 1
            rays_of = self.rays
            for p, q, common in pairs:
                # adjacent iff p and q are the only rays tight on all of common
                rays = all_rays
                c = common
                while c:
                    low = c & -c
                    rays &= tight_at[low]
                    c ^= low
                    if rays.bit_count() <= 2:
                        break
                if rays.bit_count() > 2:
                    continue
                sp, sq = vals[p], -vals[q]
                rp, rq = rays_of[p], rays_of[q]
                ray = primitive(tuple(sp * b + sq * a for a, b in zip(rp, rq)))
                new_rays.append(ray)
                new_zeros.append(common | bit)
        keep_rays, keep_zeros = [], []
        for i, s in enumerate(vals):
            if s > 0:
                keep_rays.append(self.rays[i])
                keep_zeros.append(zeros[i])
            elif s == 0:
                keep_rays.append(self.rays[i])
                keep_zeros.append(zeros[i] | bit)
        self.rays = keep_rays + new_rays
        self.zeros = keep_zeros + new_zeros

    def tight_rows(self, ray_index: int) -> list[int]:
        z = self.zeros[ray_index]
        return [i for i in range(len(self.rows)) if z >> i & 1]


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Polytope:
    """Dual description of a polytope.

    ``facets`` are ``(normal, offset)`` pairs meaning ``normal . x <= offset``;
    normals are primitive integer vectors supported on the hull chart
    coordinates.  ``equations`` are ``(normal, value)`` pairs cutting out the
    affine hull.
    """

    ambient_dim: int
    vertices: tuple[Point, ...]
    facets: tuple[tuple[tuple[int, ...], int | Fraction], ...]
    equations: tuple[tuple[tuple[int, ...], int | Fraction], ...] = ()
    hull: AffineHull | None = field(default=None, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    def contains(self, p: Sequence) -> bool:
        return (all(dot(n, p) == c for n, c in self.equations)
                and all(dot(n, p) <= c for n, c in self.facets))

    def minimize(self, covector: Sequence) -> Point:
        """Lexicographically smallest vertex among the minimizers of ``covector``."""
        return min(self.vertices, key=lambda v: (dot(covector, v), v))


def _homogenize(coords: Sequence) -> tuple[int, ...]:
    return integer_row(tuple(coords) + (1,))


def dual_description(points: Iterable[Sequence]) -> Polytope:
    """Minimal vertex set and irredundant facets of ``conv(points)``."""
    pts = sorted(set(canon_point(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    hull = affine_hull(pts)
    eqs = tuple(sorted(hull.equations()))
    if hull.dim == 0:
        return Polytope(hull.ambient_dim, (pts[0],), (), eqs, hull)
    rows = [_homogenize(hull.chart(p)) for p in pts]
    dd = DoubleDescription(rows)
    # rows in dd are permuted (chosen basis first); map back to points
    row_point = {}
    for i, r in enumerate(rows):
        row_point.setdefault(r, i)
    order = [row_point[r] for r in dd.rows]
    facets = set()
    incident: dict[int, int] = {}
    full = (1 << len(dd.rows)) - 1
    for ray, z in zip(dd.rays, dd.zeros):
        a, a0 = ray[:-1], ray[-1]
        g = reduce(math.gcd, a, 0)
        normal = [0] * hull.ambient_dim
        for c, piv in zip(a, hull.pivots):
            normal[piv] = -c // g
        facets.add((tuple(normal), canon(Fraction(a0, g))))
        for i in range(len(dd.rows)):
            if z >> i & 1:
                incident[i] = incident.get(i, full) & z
    verts = sorted(pts[order[i]] for i, z in incident.items() if z == 1 << i)
    return Polytope(hull.ambient_dim, tuple(verts), tuple(sorted(facets)), eqs, hull)


def polytope_vertices(points: Iterable[Sequence]) -> tuple[Point, ...]:
    return dual_description(points).vertices


def h_to_v(inequalities: Sequence[tuple[Sequence, object]], dim: int) -> list[Point]:
    """Vertices of the bounded polyhedron ``{x : a . x <= b}``.

    Returns an empty list for an empty polyhedron.
    """
    rows = []
    for a, b in inequalities:
        rows.append(integer_row(tuple(-Fraction(c) for c in a) + (Fraction(b),)))
    rows.append(tuple([0] * dim + [1]))
    dd = DoubleDescription(rows)
    out = []
    for ray in dd.rays:
        t = ray[-1]
        if t > 0:
            out.append(tuple(canon(Fraction(c, t)) for c in ray[:-1]))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# lower hulls, triangulations, volumes


def _integer_lifts(lifts: Sequence) -> list[int]:
    """Common positive rescaling of rational lifts to integers."""
    if all(type(x) is int for x in lifts):
        return list(lifts)
    fr = [Fraction(x) for x in lifts]
    den = reduce(_lcm, (x.denominator for x in fr), 1)
    return [int(x * den) for x in fr]


def lower_facet_indices(ground: Sequence[Sequence], lifts: Sequence, *,
                        all_faces: bool = False):
    """Lower facets of the lifted points ``(ground[i], lifts[i])`` as index sets.

    Facets have the dimension of ``affspan(ground)``.  Ground points that are
    repeated keep only their lowest lift in any facet.  With ``all_faces``
    the point sets of every facet of the lifted polyhedron are returned as a
    second list (vertical facets included), which is enough to recover the
    face lattice of each lower facet.
    """
    hull = affine_hull(ground)
    if hull.dim == 0:
        low = min(range(len(ground)), key=lambda i: (lifts[i], i))
        res = [frozenset([low])]
        return (res, []) if all_faces else res
    lifts = _integer_lifts(lifts)
    rows = [integer_row(hull.chart(g) + (lifts[i], 1)) for i, g in enumerate(ground)]
    d = hull.dim
    vertical = tuple([0] * d + [1, 0])
    dd = DoubleDescription([vertical] + rows)
    # map dd row positions back to input indices (vertical ray gets None)
    first_index: dict[tuple, list[int]] = {}
    for i, r in enumerate(rows):
        first_index.setdefault(r, []).append(i)
    pos_to_inputs = [[] if r == vertical else first_index[r] for r in dd.rows]
    facets, others = [], []
    for ray, z in zip(dd.rays, dd.zeros):
        members = set()
        for i in range(len(dd.rows)):
            if z >> i & 1:
                members.update(pos_to_inputs[i])
        if ray[d] > 0:
            facets.append(frozenset(members))
        elif all_faces:
            others.append(frozenset(members))
    if all_faces:
        return facets, facets + others
    return facets


def pulling_triangulation(face: frozenset, dim: int, facets: Sequence[frozenset]
                          ) -> list[tuple[int, ...]]:
    """Triangulate the ``dim``-face ``face`` of a polytope known by its facets.

    ``facets`` are point sets of the facets of the ambient polytope (any
    superset of them is fine as long as every face of ``face`` is an
    intersection of ``face`` with members).  Cones from the smallest index
    over the faces not containing it.
    """
    out: list[tuple[int, ...]] = []

    def rec(f: frozenset, d: int, apex_chain: tuple):
        if len(f) == d + 1:
            out.append(tuple(sorted(apex_chain + tuple(f))))
            return
        v = min(f)
        cands = {f & g for g in facets}
        cands.discard(f)
        maximal = [c for c in cands if c and not any(c < o for o in cands)]
        for sub in maximal:
            if v not in sub:
                rec(sub, d - 1, apex_chain + (v,))

    rec(frozenset(face), dim, ())
    return out


def lower_hull(points: Iterable[Sequence]) -> set[frozenset[Point]]:
    """Lower facets of a finite point set whose last coordinate is the lift."""
    pts = sorted(set(canon_point(p) for p in points))
    if not pts:
        raise ValueError("lower hull of an empty set")
    ground = [p[:-1] for p in pts]
    lifts = [p[-1] for p in pts]
    return {frozenset(pts[i] for i in f) for f in lower_facet_indices(ground, lifts)}


def _hash_rational(*key, bits: int = 31) -> Fraction:
    """Deterministic uniform rational in [0, 1) with denominator ``2**bits``."""
    h = hashlib.blake2b(repr(key).encode(), digest_size=8).digest()
    return Fraction(int.from_bytes(h, "big") >> (64 - bits), 1 << bits)


def triangulate(points: Sequence[Sequence], seed: int = 0) -> list[tuple[int, ...]]:
    """A triangulation of ``conv(points)`` (full-dimensional in its hull).

    Simplices are index tuples.  Built from a pseudo-random regular
    triangulation; non-simplicial cells are re-triangulated recursively.
    """
    pts = [canon_point(p) for p in points]
    hull = affine_hull(pts)
    d = hull.dim
    if d == 0:
        return [(0,)]
    charts = [hull.chart(p) for p in pts]
    return _triangulate(charts, list(range(len(pts))), d, seed, 0)


def _triangulate(charts, idx, d, seed, depth):
    if len(idx) == d + 1:
        return [tuple(sorted(idx))]
    if depth > 20:
        raise RuntimeError("triangulation did not become simplicial")
    lifts = [_hash_rational("tri", seed, depth, charts[i]) for i in idx]
    out = []
    for f in lower_facet_indices([charts[i] for i in idx], lifts):
        cell = [idx[j] for j in f]
        out.extend(_triangulate(charts, cell, d, seed, depth + 1))
    return out


def simplex_volume(vertices: Sequence[Sequence]) -> Fraction:
    """Euclidean volume of a full-dimensional simplex given by k+1 vertices in R^k."""
    v0 = vertices[0]
    k = len(v0)
    m = [vsub(v, v0) for v in vertices[1:]]
    return Fraction(abs(det(m)), math.factorial(k))


def euclidean_volume(points: Iterable[Sequence], seed: int | None = None) -> int | Fraction:
    """k-dimensional Euclidean volume of ``conv(points)`` in R^k (0 if not spanning).

    By default the hull is cut by a pulling triangulation of its vertices;
    with a ``seed`` a pseudo-random regular triangulation of all points is
    used instead (the two must agree).
    """
    pts = sorted(set(canon_point(p) for p in points))
    if not pts:
        return 0
    k = len(pts[0])
    if k == 0:
        return 1
    if affine_dim(pts) < k:
        return 0
    if seed is None:
        poly = dual_description(pts)
        pts = list(poly.vertices)
        facets = [frozenset(i for i, v in enumerate(pts) if dot(n, v) == c)
                  for n, c in poly.facets]
        simplices = pulling_triangulation(frozenset(range(len(pts))), k, facets)
    else:
        simplices = triangulate(pts, seed)
    total = 0
    for simplex in simplices:
        v0 = pts[simplex[0]]
        total += abs(det([vsub(pts[i], v0) for i in simplex[1:]]))
    return canon(Fraction(total, math.factorial(k)))


def minkowski_points(point_sets: Sequence[Iterable[Sequence]]) -> set[Point]:
    out: set[Point] = {()}
    first = True
    for s in point_sets:
        s = [canon_point(p) for p in s]
        if first:
            out = set(s)
            first = False
        else:
            out = {vadd(a, b) for a in out for b in s}
    return out


def minkowski_vertices(vertex_sets: Sequence[Iterable[Sequence]]) -> set[Point]:
    """Vertices of the Minkowski sum of the convex hulls of the given sets."""
    acc: list[Point] | None = None
    for s in vertex_sets:
        s = list(polytope_vertices(s))
        if acc is None:
            acc = s
        else:
            acc = list(polytope_vertices(vadd(a, b) for a in acc for b in s))
    if acc is None:
        raise ValueError("no summands")
    return set(acc)


# ---------------------------------------------------------------------------
# lattice points


def _floor(x) -> int:
    return math.floor(x)


def _ceil(x) -> int:
    return math.ceil(x)


class _Slicer:
    """Per-coordinate interval bounds from the projections onto coordinate prefixes."""

    def __init__(self, poly: Polytope):
        self.dim = poly.ambient_dim
        self.levels = []
        verts = poly.vertices
        for j in range(1, self.dim + 1):
            proj = dual_description(v[:j] for v in verts)
            ineq = [(n, Fraction(c)) for n, c in proj.facets if n[j - 1] != 0]
            eq = [(n, Fraction(c)) for n, c in proj.equations if n[j - 1] != 0]
            self.levels.append((ineq, eq))

    def bounds(self, prefix: tuple) -> tuple[int, int]:
        j = len(prefix)
        ineq, eq = self.levels[j]
        lo, hi = None, None
        for n, c in eq:
            rest = c - sum(a * b for a, b in zip(n, prefix))
            val = rest / n[j]
            if val.denominator != 1:
                return 1, 0
            return int(val), int(val)
        for n, c in ineq:
            rest = c - sum(a * b for a, b in zip(n, prefix))
            a = n[j]
            if a > 0:
                b = _floor(rest / a)
                hi = b if hi is None or b < hi else hi
            else:
                b = _ceil(rest / a)
                lo = b if lo is None or b > lo else lo
        return lo, hi


def lattice_points(poly: Polytope) -> Iterator[tuple[int, ...]]:
    """Stream the integer points of ``poly`` in lexicographic order."""
    if poly.ambient_dim == 0:
        yield ()
        return
    slicer = _Slicer(poly)
    m = poly.ambient_dim

    def rec(prefix):
        lo, hi = slicer.bounds(prefix)
        if len(prefix) == m - 1:
            for x in range(lo, hi + 1):
                yield prefix + (x,)
            return
        for x in range(lo, hi + 1):
            yield from rec(prefix + (x,))

    yield from rec(())


def count_lattice_points(poly: Polytope) -> int:
    """Number of integer points of ``poly``."""
    if poly.ambient_dim == 0:
        return 1
    slicer = _Slicer(poly)
    m = poly.ambient_dim
    total = 0
    stack = [()]
    while stack:
        prefix = stack.pop()
        lo, hi = slicer.bounds(prefix)
        if hi < lo:
            continue
        if len(prefix) == m - 1:
            total += hi - lo + 1
        else:
            stack.extend(prefix + (x,) for x in range(lo, hi + 1))
    return total


def box_lattice_points(poly: Polytope) -> list[tuple[int, ...]]:
    """Naive enumeration over the vertex bounding box (test oracle)."""
    m = poly.ambient_dim
    ranges = []
    for j in range(m):
        cs = [v[j] for v in poly.vertices]
        ranges.append(range(_ceil(min(cs)), _floor(max(cs)) + 1))
    return [p for p in product(*ranges) if poly.contains(p)]


def random_rational_covector(rng: random.Random, dim: int, bits: int = 31) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randrange(-(1 << (bits - 1)), 1 << (bits - 1)), 1 << bits)
                 for _ in range(dim))
