"""Elimination problems: supports plus a projection split."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ParseError
from .oracle import ProjectionSplit
from .polynomials import Poly, PolySystem, RawSupports
from .subdivision import PointConfiguration


@dataclass(frozen=True)
class EliminationProblem:
    """k+1 supports in Z^n; the first n-k coordinates are kept."""

    config: PointConfiguration
    split: ProjectionSplit
    provenance: str = "raw-supports"
    keep_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.config.num_sets != self.split.k + 1:
            raise ValueError(f"{self.config.num_sets} supports for {self.split.k} eliminated "
                             f"variables; expected {self.split.k + 1}")
        if self.config.ambient_dim != self.split.n:
            raise ValueError("support dimension does not match the split")


def problem_from_supports(sets: Sequence, n: int, k: int, provenance="raw-supports",
                          keep_names=()) -> EliminationProblem:
    split = ProjectionSplit(n, k)
    return EliminationProblem(PointConfiguration.from_sets(sets), split, provenance,
                              tuple(keep_names))


def problem_from_system(system: PolySystem) -> EliminationProblem:
    k = len(system.elim_vars)
    n = len(system.variables)
    if len(system.polynomials) != k + 1:
        raise ParseError(f"{len(system.polynomials)} polynomials for {k} eliminated variables; "
                         f"expected {k + 1}")
    if k == 0 or not system.keep_vars:
        raise ParseError("need at least one kept and one eliminated variable")
    return problem_from_supports(system.supports(), n, k, "polynomials", system.keep_vars)


def problem_from_raw(raw: RawSupports) -> EliminationProblem:
    if not 1 <= raw.k < raw.n:
        raise ParseError(f"split {raw.k} not in 1..{raw.n - 1}")
    if len(raw.sets) != raw.k + 1:
        raise ParseError(f"{len(raw.sets)} polytopes for split {raw.k}; expected {raw.k + 1}")
    return problem_from_supports(raw.sets, raw.n, raw.k)


def implicitization_problem(h: Sequence[Poly]) -> EliminationProblem:
    """Supports of ``x_i - h_i(y)`` for Laurent polynomials ``h_i`` in k variables."""
    k = len(h) - 1
    if k < 1:
        raise ValueError("need at least two polynomials")
    if any(p.nvars != k for p in h):
        raise ValueError(f"every h_i must be a polynomial in {k} variables")
    if any(p.is_zero() for p in h):
        raise ValueError("empty support")
    n = 2 * k + 1
    sets = []
    for i, p in enumerate(h):
        unit = tuple(int(j == i) for j in range(k + 1)) + (0,) * k
        sets.append({unit} | {(0,) * (k + 1) + tuple(b) for b in p.support})
    return problem_from_supports(sets, n, k, "implicitization",
                                 tuple(f"x{i}" for i in range(k + 1)))


def lie_relations(g: Sequence[Poly], order: int) -> list[Poly]:
    """Right-hand sides of ``x1^(j) = R_j`` for ``j = 1..order``.

    The ring has the state variables ``x_1..x_n`` followed by symbols for
    ``x1', .., x1^(order-1)``.  ``R_1 = g_1`` and ``R_{j+1} = D(R_j)`` for the
    derivation with ``D(x_1) = x1'``, ``D(x_i) = g_i`` for ``i >= 2`` and
    ``D(x1^(j)) = x1^(j+1)``, so earlier derivatives of ``x_1`` stay symbolic.
    """
    n = len(g)
    m = n + max(order - 1, 0)
    ring = [p.embed(m, range(n)) for p in g]
    generic = any(p.generic for p in g)

    def derive(f: Poly) -> Poly:
        out = Poly(m, {}, generic)
        for i in range(m):
            df = f.diff(i)
            if df.is_zero():
                continue
            if i == 0 or i >= n:
                # x_1 and its derivatives move one step up
                nxt = n if i == 0 else i + 1
                out = out + df * Poly.variable(m, nxt, generic)
            else:
                out = out + df * ring[i]
        return out

    rels = [ring[0]]
    while len(rels) < order:
        rels.append(derive(rels[-1]))
    return rels


def ode_problem(g: Sequence[Poly], order: int | None = None, mode: str = "exact"
                ) -> EliminationProblem:
    """Supports of ``y - x_1`` and ``x1^(j) - R_j`` for ``j = 1..order``.

    Coordinates: kept ``(y, x1', .., x1^(order))``, eliminated ``(x_1..x_n)``.
    With ``mode="template"`` the ``g_i`` should be generic polynomials.
    """
    n = len(g)
    order = n if order is None else order
    if order < 1:
        raise ValueError("order must be positive")
    if order + 1 != n + 1:
        # the eliminant is a hypersurface only when the counts match
        raise ValueError(f"order {order} does not match the {n} state variables")
    if mode == "template" and not all(p.generic for p in g):
        g = [Poly(p.nvars, p.terms, generic=True) for p in g]
    rels = lie_relations(g, order)
    keep = order + 1
    total = keep + n
    # ring position -> output coordinate
    pos = [keep + i for i in range(n)] + [1 + j for j in range(order - 1)]
    sets = [{tuple(int(c == 0) for c in range(total)),
             tuple(int(c == keep) for c in range(total))}]
    for j, r in enumerate(rels, start=1):
        lhs = tuple(int(c == j) for c in range(total))
        sets.append({lhs} | set(r.embed(total, pos).support))
    names = ("y",) + tuple("x1" + "'" * j for j in range(1, order + 1))
    return problem_from_supports(sets, total, n, f"ode-{mode}", names)


def dense_template(n: int, d: int, D: int) -> list[Poly]:
    """Generic ``g_1`` of degree ``d`` and ``g_2..g_n`` of degree ``D`` in ``n`` variables."""
    if n < 1 or d < 0 or D < 0:
        raise ValueError("bad template")
    return [Poly.dense(n, d)] + [Poly.dense(n, D) for _ in range(n - 1)]
