"""Vertex oracle for mixed fiber polytopes.

Given a configuration ``A_0, ..., A_k`` in ``Z^n`` and a covector on the
first ``n - k`` coordinates, :func:`mfp_vertex` returns the point of the mixed
fiber polytope minimizing the covector.  The fibers of the projection onto the
last ``k`` coordinates are reduced to their minimizers, the projected
configuration is subdivided coherently by the fiberwise minima, the
subdivision is refined to a fine mixed one, and the cells of type
``(1, .., 0, .., 1)`` contribute ``vol(C) * pi(preimage of C_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .errors import TieUnresolved
from .geometry import Point, _hash_rational, canon, det, dot
from .subdivision import (
    PointConfiguration,
    Subdivision,
    WeightVector,
    coherent_subdivision,
    fine_mixed_refinement,
)


@dataclass(frozen=True)
class ProjectionSplit:
    """``pi`` keeps the first ``n - k`` coordinates, ``p`` the last ``k``."""

    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got n={self.n}, k={self.k}")

    @property
    def keep_dim(self) -> int:
        return self.n - self.k

    def pi(self, a: Sequence) -> tuple:
        return tuple(a[: self.n - self.k])

    def p(self, a: Sequence) -> tuple:
        return tuple(a[self.n - self.k:])


@dataclass(frozen=True)
class PerturbedCovector:
    """A covector with a random companion used to break ties lexicographically."""

    primary: tuple
    tiebreak: tuple

    @classmethod
    def seeded(cls, primary: Sequence, seed: int, *salt) -> "PerturbedCovector":
        primary = tuple(canon(c) for c in primary)
        tb = tuple(_hash_rational("tiebreak", seed, salt, j) - Fraction(1, 2)
                   for j in range(len(primary)))
        return cls(primary, tb)

    def key(self, x: Sequence) -> tuple:
        return dot(self.primary, x), dot(self.tiebreak, x)

    def value(self, x: Sequence):
        return dot(self.primary, x)


@dataclass(frozen=True)
class FiberReducedConfig:
    reduced: PointConfiguration
    projected: PointConfiguration
    weights: WeightVector
    argmin_map: tuple[dict[Point, Point], ...]


def fiber_reduce(config: PointConfiguration, split: ProjectionSplit,
                 gamma: PerturbedCovector) -> FiberReducedConfig:
    """Keep, in every fiber of ``p`` within each ``A_i``, the lex-minimizer of gamma."""
    if len(gamma.primary) != split.keep_dim:
        raise ValueError("covector length does not match the kept coordinates")
    argmins, weights, ties = [], [], []
    for s in config.sets:
        best: dict[Point, tuple] = {}
        for a in s:
            q = split.p(a)
            key = gamma.key(split.pi(a))
            cur = best.get(q)
            if cur is None or key < cur[0]:
                best[q] = (key, a)
            elif key == cur[0] and a != cur[1]:
                raise TieUnresolved(f"points {a} and {cur[1]} tie in fiber {q}")
        argmins.append({q: a for q, (_, a) in best.items()})
        weights.append({q: key[0] for q, (key, _) in best.items()})
        ties.append({q: key[1] for q, (key, _) in best.items()})
    reduced = PointConfiguration(tuple(tuple(sorted(m.values())) for m in argmins))
    projected = PointConfiguration(tuple(tuple(sorted(m)) for m in argmins))
    # the tiebreak enters as an infinitesimal second level, as in the fibers
    w = WeightVector(tuple({q: Fraction(v) for q, v in ws.items()} for ws in weights),
                     tuple({q: Fraction(v) for q, v in ts.items()} for ts in ties))
    return FiberReducedConfig(reduced, projected, w, tuple(argmins))


def projected_dim(config: PointConfiguration, split: ProjectionSplit) -> int:
    proj = PointConfiguration(tuple(tuple(sorted({split.p(a) for a in s}))
                                    for s in config.sets))
    return proj.dim


class VertexAnswer(NamedTuple):
    vertex: tuple[int, ...]
    hull_invocations: int
    subdivisions: int


Observer = Callable[[Subdivision, Subdivision], None]


def mfp_vertex(config: PointConfiguration, split: ProjectionSplit,
               gamma: PerturbedCovector, seed: int = 0,
               observer: Observer | None = None) -> VertexAnswer:
    """Vertex of the mixed fiber polytope minimizing ``gamma``.

    ``observer`` (if given) receives the p-coherent subdivision and its fine
    mixed refinement.
    """
    if config.num_sets != split.k + 1:
        raise ValueError(f"expected {split.k + 1} sets, got {config.num_sets}")
    zero = (0,) * split.keep_dim
    if projected_dim(config, split) < split.k:
        return VertexAnswer(zero, 0, 0)
    fr = fiber_reduce(config, split, gamma)
    base = coherent_subdivision(fr.projected, fr.weights)
    fine = fine_mixed_refinement(fr.projected, fr.weights, seed, base_subdivision=base)
    if observer is not None:
        observer(base, fine)
    v = [0] * split.keep_dim
    for cell in fine.cells:
        tv = cell.type_vector
        if tv.count(0) != 1 or any(t not in (0, 1) for t in tv):
            continue
        i = tv.index(0)
        vol = abs(det(cell.mixed_edges()))
        if vol == 0:
            continue
        pre = split.pi(fr.argmin_map[i][cell.parts[i][0]])
        for j, c in enumerate(pre):
            v[j] += vol * c
    return VertexAnswer(tuple(v), fine.hull_invocations, 1)


def mfp_support_value(config: PointConfiguration, split: ProjectionSplit,
                      gamma: PerturbedCovector, seed: int = 0):
    """Minimum of ``gamma.primary`` over the mixed fiber polytope."""
    return gamma.value(mfp_vertex(config, split, gamma, seed).vertex)
