"""Rebuilding a polytope from a vertex oracle.

The oracle answers "which point minimizes this covector".  We first find the
affine hull of the target by probing, then grow a hull inside that hull: any
facet of the current hull is tested by maximizing its normal; a point beyond
the facet is inserted, otherwise the facet is confirmed.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from .errors import OracleInconsistent, TieUnresolved
from .geometry import (
    AffineHull,
    DoubleDescription,
    Point,
    Polytope,
    _hash_rational,
    affine_hull,
    canon,
    canon_point,
    dot,
    dual_description,
    integer_row,
    nullspace,
    rank,
    vsub,
)
from .oracle import PerturbedCovector, ProjectionSplit, mfp_vertex
from .subdivision import PointConfiguration


class VertexOracle:
    """Covector -> minimizing point, with call statistics.

    Subclasses implement :meth:`_answer`.  Answers are cached per covector,
    so repeated probes cost nothing and repeated runs agree.
    """

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.calls = 0
        self._cache: dict[tuple, Point] = {}
        self._lock = threading.Lock()

    def query(self, covector: Sequence) -> Point:
        key = tuple(canon(Fraction(c)) for c in covector)
        if len(key) != self.ambient:
            raise ValueError("covector has the wrong length")
        with self._lock:
            self.calls += 1
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        ans = canon_point(self._answer(key))
        with self._lock:
            self._cache[key] = ans
        return ans

    __call__ = query

    def _answer(self, covector: tuple) -> Point:
        raise NotImplementedError


class MFPOracle(VertexOracle):
    """Vertex oracle of the mixed fiber polytope of ``config``.

    Each query gets a tiebreak and refinement seed derived from ``seed`` and
    the covector itself, so answers do not depend on query order.  An
    ``observer`` receives every (p-coherent, fine mixed) subdivision pair.
    """

    max_tie_retries = 4

    def __init__(self, config: PointConfiguration, split: ProjectionSplit, seed: int = 0,
                 reference: bool = False, observer=None):
        super().__init__(split.keep_dim)
        self.observer = observer
        # the polytope only depends on conv(A_i)
        self.config = config.vertex_reduced()
        self.split = split
        self.seed = seed
        self.reference = reference
        self.subdivisions = 0
        self.hull_invocations = 0

    def gamma(self, covector: tuple, attempt: int = 0) -> PerturbedCovector:
        return PerturbedCovector.seeded(covector, self.seed, covector, attempt)

    def _answer(self, covector: tuple) -> Point:
        from .verification import mfp_vertex_reference

        for attempt in range(self.max_tie_retries):
            g = self.gamma(covector, attempt)
            try:
                if self.reference:
                    return mfp_vertex_reference(self.config, self.split, g)
                sub_seed = int(_hash_rational("query", self.seed, covector, attempt).numerator)
                ans = mfp_vertex(self.config, self.split, g, seed=sub_seed,
                                 observer=self.observer)
            except TieUnresolved:
                continue
            with self._lock:
                self.subdivisions += ans.subdivisions
                self.hull_invocations += ans.hull_invocations
            return ans.vertex
        raise TieUnresolved(f"covector {covector} kept tying after resampling")


class PolytopeOracle(VertexOracle):
    """Oracle backed by an explicit vertex list (lex-smallest minimizer)."""

    def __init__(self, vertices: Sequence[Sequence]):
        verts = sorted(canon_point(v) for v in vertices)
        super().__init__(len(verts[0]))
        self.vertices = verts

    def _answer(self, covector: tuple) -> Point:
        return min(self.vertices, key=lambda v: (dot(covector, v), v))


def _batch_query(oracle: Callable, covectors: list, threads: int) -> list:
    if threads <= 1 or len(covectors) <= 1:
        return [oracle(c) for c in covectors]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(oracle, covectors))


def _unit(n: int, j: int, sign: int) -> tuple:
    return tuple(sign if i == j else 0 for i in range(n))


def detect_affine_hull(oracle: Callable, ambient: int, threads: int = 1
                       ) -> tuple[Point, list[tuple], list[Point]]:
    """Base point and direction basis of the affine hull of the oracle's polytope.

    Also returns every point seen, so callers can reuse them as initial hull
    points.
    """
    probes = [_unit(ambient, j, s) for j in range(ambient) for s in (1, -1)]
    answers = _batch_query(oracle, probes, threads)
    asked = set(probes)
    seen = sorted(set(answers))
    # coordinates with equal minimum and maximum are constant on the polytope
    flat = [_unit(ambient, j, 1) for j in range(ambient)
            if answers[2 * j][j] == answers[2 * j + 1][j]]
    while True:
        hull = affine_hull(seen)
        if hull.dim == ambient:
            break
        diffs = [vsub(p, hull.base) for p in seen[1:]]
        # equations still to be checked: complement of the hull modulo known constants
        complement = nullspace(diffs, ambient) if diffs else [
            _unit(ambient, j, 1) for j in range(ambient)]
        complement = _unchecked(complement, flat)
        probes = [d for v in complement for d in (v, tuple(-c for c in v)) if d not in asked]
        if not probes:
            break
        asked.update(probes)
        fresh = [p for p in _batch_query(oracle, probes, threads) if not hull.contains(p)]
        if not fresh:
            break
        seen = sorted(set(seen) | set(fresh))
    return hull.base, [vsub(p, hull.base) for p in _independent(seen, hull)], seen


def _unchecked(complement: list[tuple], known: list[tuple]) -> list[tuple]:
    """Vectors of ``complement`` extending the span of ``known`` to the span of both."""
    out: list[tuple] = []
    r = rank(known) if known else 0
    for v in complement:
        if rank(known + out + [v]) > r + len(out):
            out.append(v)
    return out


def _independent(points: list[Point], hull: AffineHull) -> list[Point]:
    """A greedy affinely independent subset of ``points`` spanning the hull (base excluded)."""
    chosen: list[Point] = []
    for p in points:
        if len(chosen) == hull.dim:
            break
        if p == hull.base:
            continue
        if affine_hull([hull.base, *chosen, p]).dim == len(chosen) + 1:
            chosen.append(p)
    return chosen


@dataclass
class ReconstructionResult:
    polytope: Polytope
    oracle_calls: int


class _Hull:
    """Incremental dual description inside a fixed affine hull."""

    def __init__(self, hull: AffineHull, points: list[Point]):
        self.hull = hull
        self.points: list[Point] = []
        self._rows: set[tuple] = set()
        rows = []
        for p in points:
            r = self._row(p)
            if r not in self._rows:
                self._rows.add(r)
                self.points.append(p)
                rows.append(r)
        self.dd = DoubleDescription(rows)

    def _row(self, p):
        return integer_row(tuple(self.hull.chart(p)) + (1,))

    def insert(self, p: Point) -> None:
        r = self._row(p)
        if r in self._rows:
            return
        self._rows.add(r)
        self.points.append(p)
        self.dd.add_row(r)

    def facets(self) -> list[tuple[tuple[int, ...], int | Fraction]]:
        out = []
        for ray in self.dd.rays:
            a, a0 = ray[:-1], ray[-1]
            g = reduce(math.gcd, a, 0)
            normal = [0] * self.hull.ambient_dim
            for c, piv in zip(a, self.hull.pivots):
                normal[piv] = -c // g
            out.append((tuple(normal), canon(Fraction(a0, g))))
        return sorted(set(out))


def reconstruct(oracle: Callable, ambient: int, *, batch_size: int = 1,
                threads: int = 1) -> ReconstructionResult:
    """Polytope of a vertex oracle, with the number of oracle queries spent.

    The result only depends on the oracle and ``batch_size``; ``threads``
    merely runs a batch concurrently.
    """
    calls = [0]

    def ask(c):
        calls[0] += 1
        return oracle(c)

    base, _, seen = detect_affine_hull(ask, ambient, threads)
    hull = affine_hull(seen)
    if hull.dim == 0:
        return ReconstructionResult(dual_description([base]), calls[0])
    state = _Hull(hull, seen)
    confirmed: set[tuple] = set()
    while True:
        open_facets = [f for f in state.facets() if f not in confirmed]
        if not open_facets:
            break
        batch = open_facets[:max(1, batch_size)]
        answers = _batch_query(ask, [tuple(-c for c in n) for n, _ in batch], threads)
        for (normal, offset), v in zip(batch, answers):
            if not hull.contains(v):
                raise OracleInconsistent(f"oracle point {v} leaves the affine hull")
            for n2, c2 in confirmed:
                if dot(n2, v) > c2:
                    raise OracleInconsistent(f"point {v} violates confirmed facet {n2} <= {c2}")
            if dot(normal, v) > offset:
                state.insert(v)
            elif (normal, offset) in state.facets():
                confirmed.add((normal, offset))
    return ReconstructionResult(dual_description(state.points), calls[0])
