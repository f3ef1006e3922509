"""Point configurations, coherent mixed subdivisions and their refinements.

Coherent mixed subdivisions are computed through the Cayley trick: the sets
``A_0, ..., A_r`` in ``Z^m`` are placed in ``R^(m+r)`` as ``(b, e_i)`` (with
``e_0 = 0``), lifted by the weights, and the lower facets of the lifted
Cayley configuration are read back as cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import ConfigDegenerate, RetriesExhausted
from .geometry import (
    Point,
    _hash_rational,
    affine_dim,
    affine_hull,
    canon_point,
    det,
    dot,
    dual_description,
    euclidean_volume,
    h_to_v,
    lower_facet_indices,
    minkowski_points,
    minkowski_vertices,
    nullspace,
    rank,
    vsub,
)


@dataclass(frozen=True)
class PointConfiguration:
    """A tuple of finite lattice point sets sharing one ambient dimension."""

    sets: tuple[tuple[Point, ...], ...]

    def __post_init__(self):
        if not self.sets:
            raise ValueError("a configuration needs at least one set")
        m = None
        for s in self.sets:
            if not s:
                raise ValueError("every set of a configuration must be nonempty")
            for p in s:
                if m is None:
                    m = len(p)
                elif len(p) != m:
                    raise ValueError("points of mixed ambient dimension")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[Sequence]]) -> "PointConfiguration":
        return cls(tuple(tuple(sorted({canon_point(p) for p in s})) for s in sets))

    @property
    def ambient_dim(self) -> int:
        return len(self.sets[0][0])

    @property
    def num_sets(self) -> int:
        return len(self.sets)

    @cached_property
    def dim(self) -> int:
        """Dimension of the affine span of the Minkowski sum."""
        diffs = [vsub(p, s[0]) for s in self.sets for p in s[1:]]
        return rank(diffs) if diffs else 0

    def vertex_reduced(self) -> "PointConfiguration":
        """Same convex hulls, each set cut down to the vertices of its hull."""
        return PointConfiguration(tuple(dual_description(s).vertices for s in self.sets))

    def minkowski_hull_points(self) -> list[Point]:
        return sorted(minkowski_points(self.sets))


@dataclass(frozen=True, order=True)
class Cell:
    """A tuple of subsets, one per set of the configuration."""

    parts: tuple[tuple[Point, ...], ...]

    @classmethod
    def of(cls, parts: Iterable[Iterable[Sequence]]) -> "Cell":
        return cls(tuple(tuple(sorted({canon_point(p) for p in part})) for part in parts))

    @property
    def type_vector(self) -> tuple[int, ...]:
        return tuple(affine_dim(part) for part in self.parts)

    def points(self) -> set[Point]:
        return minkowski_points(self.parts)

    def is_subcell_of(self, other: "Cell") -> bool:
        return all(set(a) <= set(b) for a, b in zip(self.parts, other.parts))

    def is_fine_mixed(self, dim: int) -> bool:
        return (sum(len(part) - 1 for part in self.parts) == dim
                and sum(self.type_vector) == dim)

    def mixed_edges(self) -> list[tuple]:
        """Edge vectors ``c - c_0`` of every part (used for fine cell volumes)."""
        return [vsub(p, part[0]) for part in self.parts for p in part[1:]]


@dataclass(frozen=True)
class WeightVector:
    """Weights on the points of each set.

    ``perturbation`` is ``None`` in one-level mode.  In two-level mode the
    effective weight is ``base + eps * perturbation`` for infinitesimal eps.
    """

    base: tuple[Mapping[Point, Fraction], ...]
    perturbation: tuple[Mapping[Point, Fraction], ...] | None = None

    @classmethod
    def zero(cls, config: PointConfiguration) -> "WeightVector":
        return cls(tuple({p: Fraction(0) for p in s} for s in config.sets))

    @classmethod
    def from_lists(cls, config: PointConfiguration, values: Sequence[Sequence]) -> "WeightVector":
        """Weights listed per set in the (sorted) point order of ``config``."""
        return cls(tuple({p: Fraction(w) for p, w in zip(s, vals)}
                         for s, vals in zip(config.sets, values)))

    @property
    def mode(self) -> str:
        return "one-level" if self.perturbation is None else "two-level"

    def restrict(self, cell: Cell) -> "WeightVector":
        base = tuple({p: w[p] for p in part} for w, part in zip(self.base, cell.parts))
        pert = None
        if self.perturbation is not None:
            pert = tuple({p: w[p] for p in part}
                         for w, part in zip(self.perturbation, cell.parts))
        return WeightVector(base, pert)

    def perturbation_only(self) -> "WeightVector":
        return WeightVector(self.perturbation)


@dataclass(frozen=True)
class Subdivision:
    config: PointConfiguration
    cells: tuple[Cell, ...]
    hull_invocations: int = field(default=1, compare=False)

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    def is_fine_mixed(self) -> bool:
        d = self.config.dim
        return all(c.is_fine_mixed(d) for c in self.cells)


# ---------------------------------------------------------------------------
# Cayley trick


def cayley_embed(config: PointConfiguration, weights: WeightVector
                 ) -> list[tuple[tuple, tuple[int, Point]]]:
    """Lifted Cayley points ``(b, e_i, w_b)`` with back-references ``(i, b)``."""
    r = config.num_sets - 1
    out = []
    for i, s in enumerate(config.sets):
        e = [0] * r
        if i > 0:
            e[i - 1] = 1
        for b in s:
            out.append((tuple(b) + tuple(e) + (weights.base[i][b],), (i, b)))
    return out


def _cells_from_lift(config: PointConfiguration, lift: Sequence[Mapping]) -> list[Cell]:
    if config.dim < config.ambient_dim:
        raise ConfigDegenerate(
            f"Minkowski sum spans dimension {config.dim} < {config.ambient_dim}")
    embedded = cayley_embed(config, WeightVector(tuple(lift)))
    ground = [p[:-1] for p, _ in embedded]
    lifts = [p[-1] for p, _ in embedded]
    cells = []
    for facet in lower_facet_indices(ground, lifts):
        parts: list[list[Point]] = [[] for _ in config.sets]
        for j in facet:
            i, b = embedded[j][1]
            parts[i].append(b)
        cells.append(Cell.of(parts))
    return sorted(cells)


def _sub_config(cell: Cell) -> PointConfiguration:
    return PointConfiguration(cell.parts)


def coherent_subdivision(config: PointConfiguration, weights: WeightVector) -> Subdivision:
    """Coherent mixed subdivision induced by ``weights``.

    In two-level mode each cell of the base subdivision is refined by the
    perturbation weights, which is exactly the subdivision induced by
    ``base + eps * perturbation`` for small eps.
    """
    cells = _cells_from_lift(config, weights.base)
    if weights.perturbation is None:
        return Subdivision(config, tuple(cells), 1)
    out, hulls = [], 1
    for cell in cells:
        sub = _cells_from_lift(_sub_config(cell), weights.restrict(cell).perturbation)
        hulls += 1
        out.extend(sub)
    return Subdivision(config, tuple(sorted(out)), hulls)


def perturbation_weights(cell: Cell, seed: int, attempt: int) -> list[dict[Point, int]]:
    """Counter-based random weights, numerators over 2**31, keyed by point only.

    Keys do not involve the cell, so cells sharing a face lift it identically
    and their refinements agree on it.
    """
    return [{b: _hash_rational("pert", seed, attempt, i, b).numerator for b in part}
            for i, part in enumerate(cell.parts)]


def fine_mixed_refinement(config: PointConfiguration, base: WeightVector, seed: int,
                          *, max_retries: int = 8,
                          base_subdivision: Subdivision | None = None) -> Subdivision:
    """A fine mixed subdivision refining the coherent subdivision of ``base``.

    Every cell of the base subdivision that is not yet fine mixed is refined
    by the same random weights; if some sub-cell fails to be fine mixed, all
    cells are redrawn.
    """
    if base_subdivision is None:
        base_subdivision = coherent_subdivision(config, base)
    d = config.dim
    hulls = base_subdivision.hull_invocations
    todo = [cell for cell in base_subdivision.cells if not cell.is_fine_mixed(d)]
    done = [cell for cell in base_subdivision.cells if cell.is_fine_mixed(d)]
    for attempt in range(max_retries):
        out = list(done)
        ok = True
        for cell in todo:
            sub = _cells_from_lift(_sub_config(cell), perturbation_weights(cell, seed, attempt))
            hulls += 1
            if not all(c.is_fine_mixed(d) for c in sub):
                ok = False
                break
            out.extend(sub)
        if ok:
            return Subdivision(config, tuple(sorted(out)), hulls)
    raise RetriesExhausted(f"no fine mixed refinement after {max_retries} draws")


def refines(s1: Subdivision, s2: Subdivision) -> bool:
    """True iff every cell of ``s1`` lies componentwise inside some cell of ``s2``."""
    return all(any(c1.is_subcell_of(c2) for c2 in s2.cells) for c1 in s1.cells)


# ---------------------------------------------------------------------------
# volumes and validity


class _Chart:
    """Injective coordinate chart on the affine span of the configuration."""

    def __init__(self, config: PointConfiguration):
        base = tuple(sum(s[0][j] for s in config.sets) for j in range(config.ambient_dim))
        dirs = [vsub(p, s[0]) for s in config.sets for p in s[1:]]
        hull = affine_hull([base] + [tuple(b + x for b, x in zip(base, d)) for d in dirs])
        self.pivots = hull.pivots

    def __call__(self, p: Sequence) -> tuple:
        return tuple(p[i] for i in self.pivots)


def cell_volume(cell: Cell, chart=None) -> int | Fraction:
    """Volume of ``conv(C_0 + ... + C_r)`` (in chart coordinates if given)."""
    proj = chart if chart is not None else (lambda p: tuple(p))
    dim = len(proj(cell.parts[0][0]))
    if cell.is_fine_mixed(dim):
        edges = [proj(e) for e in cell.mixed_edges()]
        denom = math.prod(math.factorial(len(part) - 1) for part in cell.parts)
        v = Fraction(abs(det(edges)), denom)
        return v.numerator if v.denominator == 1 else v
    return euclidean_volume(proj(p) for p in cell.points())


def configuration_volume(config: PointConfiguration, chart=None) -> int | Fraction:
    proj = chart if chart is not None else (lambda p: tuple(p))
    return euclidean_volume(minkowski_vertices([[proj(p) for p in s] for s in config.sets]))


@dataclass(frozen=True)
class Diagnosis:
    valid: bool
    message: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.valid


def _is_face(q_vertices: set, poly) -> bool:
    tight = [(n, c) for n, c in poly.facets
             if all(sum(a * b for a, b in zip(n, v)) == c for v in q_vertices)]
    face = {v for v in poly.vertices
            if all(sum(a * b for a, b in zip(n, v)) == c for n, c in tight)}
    return face == q_vertices


def _proper_pair(p1, p2) -> bool:
    """Whether two full-dimensional polytopes meet in a common face."""
    for a, b in ((p1, p2), (p2, p1)):
        for n, c in a.facets:
            vals = [sum(x * y for x, y in zip(n, v)) for v in b.vertices]
            if all(v >= c for v in vals):
                if all(v > c for v in vals):
                    return True
                fa = [v for v in a.vertices if sum(x * y for x, y in zip(n, v)) == c]
                fb = [v for v, val in zip(b.vertices, vals) if val == c]
                if set(dual_description(fa).vertices) == set(dual_description(fb).vertices):
                    return True
    ineqs = list(p1.facets) + list(p2.facets)
    q = set(h_to_v(ineqs, p1.ambient_dim))
    if not q:
        return True
    return _is_face(q, p1) and _is_face(q, p2)


def _cell_facets(cell: Cell, chart: _Chart, d: int) -> list[tuple[frozenset, tuple, object]]:
    """Facets of conv(C) in chart coordinates: (vertex set, outward normal, offset)."""
    if not cell.is_fine_mixed(d):
        poly = dual_description([chart(p) for p in cell.points()])
        return [(frozenset(v for v in poly.vertices if dot(n, v) == c), n, c)
                for n, c in poly.facets]
    # a product of simplices: dropping one point of a part leaves a facet
    out = []
    for j, part in enumerate(cell.parts):
        if len(part) < 2:
            continue
        for c in part:
            sub = list(cell.parts)
            sub[j] = tuple(x for x in part if x != c)
            pts = [chart(p) for p in minkowski_points(sub)]
            (normal,) = nullspace([vsub(p, pts[0]) for p in pts[1:]], d)
            offset = dot(normal, pts[0])
            # c moves the facet inward
            if dot(normal, vsub(chart(c), chart(sub[j][0]))) > 0:
                normal, offset = tuple(-x for x in normal), -offset
            out.append((frozenset(pts), normal, offset))
    return out


def _witness_pair(sub: Subdivision, chart: _Chart, i: int) -> tuple:
    polys = [dual_description([chart(p) for p in c.points()]) for c in sub.cells]
    for j in range(len(sub.cells)):
        if j != i and not _proper_pair(polys[i], polys[j]):
            return (sub.cells[i], sub.cells[j])
    return (sub.cells[i],)


def is_valid_subdivision(sub: Subdivision) -> Diagnosis:
    """Check the three subdivision conditions exactly.

    Condition 2 is certified through facets: every facet of a cell either
    lies on the boundary of conv(A) or is exactly a facet of one other cell
    on the opposite side.  With the volume identity this forces the cells to
    cover conv(A) once and to meet face to face.
    """
    config = sub.config
    d = config.dim
    chart = _Chart(config)
    if not sub.cells:
        return Diagnosis(False, "no cells")
    for cell in sub.cells:
        if len(cell.parts) != config.num_sets or any(
                not set(part) <= set(s) for part, s in zip(cell.parts, config.sets)):
            return Diagnosis(False, "cell is not a cell of the configuration", (cell,))
        if any(not part for part in cell.parts):
            return Diagnosis(False, "cell has an empty part", (cell,))
    for cell in sub.cells:
        edges = [chart(e) for e in cell.mixed_edges()]
        if (rank(edges) if edges else 0) != d:
            return Diagnosis(False, "condition 1: cell is not full-dimensional", (cell,))
    charted = [[chart(p) for p in s] for s in config.sets]
    owners: dict[frozenset, list] = {}
    for i, cell in enumerate(sub.cells):
        for key, normal, offset in _cell_facets(cell, chart, d):
            owners.setdefault(key, []).append((i, normal))
    for key, own in owners.items():
        i, normal = own[0]
        if len(own) == 1:
            offset = dot(normal, next(iter(key)))
            if sum(max(dot(normal, a) for a in s) for s in charted) == offset:
                continue
        elif len(own) == 2:
            # the two outward normals must be opposite
            n2 = own[1][1]
            if rank([normal, n2]) == 1 and dot(normal, n2) < 0:
                continue
        return Diagnosis(False, "condition 2: cells do not meet in a common face",
                         _witness_pair(sub, chart, i))
    total = sum(cell_volume(c, chart) for c in sub.cells)
    whole = configuration_volume(config, chart)
    if total != whole:
        return Diagnosis(False, f"condition 3: cell volumes sum to {total}, hull has {whole}")
    return Diagnosis(True)


def mixed_volume(sets: Sequence[Iterable[Sequence]]) -> int | Fraction:
    """Mixed volume of k polytopes in R^k by inclusion-exclusion (Euclidean normalization)."""
    sets = [list(s) for s in sets]
    k = len(sets)
    total = Fraction(0)
    for size in range(1, k + 1):
        sign = (-1) ** (k - size)
        for idx in combinations(range(k), size):
            total += sign * euclidean_volume(minkowski_vertices([sets[i] for i in idx]))
    return total.numerator if total.denominator == 1 else total


def fully_mixed_volume(sub: Subdivision) -> int | Fraction:
    """Sum of volumes of the cells of type (1, ..., 1)."""
    total = sum(cell_volume(c) for c in sub.cells if all(t == 1 for t in c.type_vector))
    return total
