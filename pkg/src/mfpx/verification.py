"""Brute-force reference oracle built directly from Minkowski integrals.

The extremal point of a Minkowski integral is the integral of the fiberwise
minimal section; the mixed fiber polytope vertex is then recovered from the
subset sums ``Delta_S = sum_{i in S} Delta_i`` by inclusion-exclusion, using
that the polytope-valued map is a homogeneous polynomial of degree k+1.
Nothing here shares code with the subdivision engine beyond the exact
lower-hull primitive.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NonIntegralResult, TieUnresolved
from .geometry import (
    affine_dim,
    canon,
    det,
    lower_facet_indices,
    polytope_vertices,
    pulling_triangulation,
    triangulate,
    vsub,
)
from .oracle import PerturbedCovector, ProjectionSplit
from .subdivision import PointConfiguration


def _fiber_minima(points: Iterable[Sequence], split: ProjectionSplit,
                  gamma: PerturbedCovector) -> dict[tuple, tuple]:
    best: dict[tuple, tuple] = {}
    for a in points:
        a = tuple(a)
        q = split.p(a)
        key = gamma.key(split.pi(a))
        cur = best.get(q)
        if cur is None or key < cur[0]:
            best[q] = (key, a)
        elif key == cur[0] and a != cur[1]:
            raise TieUnresolved(f"points {a} and {cur[1]} tie in fiber {q}")
    return best


def _section_integral(best: dict, split: ProjectionSplit, gamma: PerturbedCovector,
                      triangulation_seed: int | None = None):
    qs = sorted(best)
    zero = (0,) * split.keep_dim
    if affine_dim(qs) < split.k:
        return zero
    sections = [split.pi(best[q][1]) for q in qs]
    # accumulate |det| * (sum of vertex sections); divide by (k+1)! once at the end
    total = [0] * split.keep_dim
    first = lower_facet_indices(qs, [best[q][0][0] for q in qs])
    for cell in first:
        idx = sorted(cell)
        pts = [qs[i] for i in idx]
        second, faces = lower_facet_indices(pts, [best[q][0][1] for q in pts],
                                            all_faces=True)
        for sub in second:
            if triangulation_seed is None:
                simplices = pulling_triangulation(sub, split.k, faces)
            else:
                sub = sorted(sub)
                simplices = [[sub[j] for j in s]
                             for s in triangulate([pts[j] for j in sub], triangulation_seed)]
            for simplex in simplices:
                verts = [idx[j] for j in simplex]
                q0 = qs[verts[0]]
                w = abs(det([vsub(qs[i], q0) for i in verts[1:]]))
                for c in range(split.keep_dim):
                    total[c] += w * sum(sections[i][c] for i in verts)
    scale = math.factorial(split.k + 1)
    return tuple(canon(Fraction(x, scale)) for x in total)


def minkowski_integral_vertex(vertices: Iterable[Sequence], split: ProjectionSplit,
                              gamma: PerturbedCovector,
                              triangulation_seed: int | None = None) -> tuple:
    """pi-image of the gamma-extremal point of the Minkowski integral of conv(vertices).

    Ties of the primary covector are broken by the tiebreak covector, both
    inside fibers and across the lower envelope.  Cells are cut into
    simplices by pulling, or by a random regular triangulation when
    ``triangulation_seed`` is given.
    """
    return _section_integral(_fiber_minima(vertices, split, gamma), split, gamma,
                             triangulation_seed)


def _fiber_reduced_sum(sets: Sequence[Sequence[tuple]], split: ProjectionSplit,
                       gamma: PerturbedCovector) -> dict:
    """Fiber minima of the Minkowski sum of the sets, built one summand at a time."""
    acc = _fiber_minima(sets[0], split, gamma)
    for s in sets[1:]:
        nxt: dict[tuple, tuple] = {}
        for (key, a) in acc.values():
            for b in s:
                c = tuple(x + y for x, y in zip(a, b))
                q = split.p(c)
                kb = gamma.key(split.pi(b))
                k2 = (key[0] + kb[0], key[1] + kb[1])
                cur = nxt.get(q)
                if cur is None or k2 < cur[0]:
                    nxt[q] = (k2, c)
        acc = nxt
    return acc


def mfp_vertex_reference(config: PointConfiguration, split: ProjectionSplit,
                         gamma: PerturbedCovector, *, require_integral: bool = True) -> tuple:
    """Inclusion-exclusion of Minkowski-integral vertices over all subset sums."""
    k1 = config.num_sets
    sets = [polytope_vertices(s) for s in config.sets]
    total = [Fraction(0)] * split.keep_dim
    for size in range(1, k1 + 1):
        sign = (-1) ** (k1 - size)
        for subset in combinations(range(k1), size):
            best = _fiber_reduced_sum([sets[i] for i in subset], split, gamma)
            term = _section_integral(best, split, gamma)
            for c, x in enumerate(term):
                total[c] += sign * x
    result = tuple(canon(x) for x in total)
    if require_integral and any(isinstance(x, Fraction) for x in result):
        raise NonIntegralResult(f"reference vertex {result} is not integral")
    return result
