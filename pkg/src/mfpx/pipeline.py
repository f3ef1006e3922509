"""End-to-end Newton polytope computation and the text report format."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import Polytope, count_lattice_points, dot
from .problems import EliminationProblem
from .reconstruction import MFPOracle, _batch_query, reconstruct


@dataclass
class Report:
    polytope: Polytope
    oracle_calls: int
    subdivision_computations: int
    hull_invocations: int = 0
    lattice_count: int | None = None
    verified: bool | None = None
    mismatches: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return len(self.polytope.vertices)

    @property
    def facet_count(self) -> int:
        return len(self.polytope.facets)


def vertex_probe(poly: Polytope, v: Sequence) -> tuple:
    """A covector minimized over ``poly`` exactly at the vertex ``v``.

    The sum of the outer normals of the facets through ``v`` lies inside the
    normal cone of ``v``; its negative is minimized only there.
    """
    acc = [0] * poly.ambient_dim
    for n, c in poly.facets:
        if dot(n, v) == c:
            acc = [a + b for a, b in zip(acc, n)]
    return tuple(-a for a in acc)


def verify_vertices(problem: EliminationProblem, poly: Polytope, seed: int = 0,
                    threads: int = 1) -> list[tuple]:
    """Re-derive every vertex with the reference oracle; return the failures."""
    ref = MFPOracle(problem.config, problem.split, seed=seed, reference=True)
    probes = [vertex_probe(poly, v) for v in poly.vertices]
    got = _batch_query(ref, probes, threads)
    return [(g, v, w) for g, v, w in zip(probes, poly.vertices, got) if v != w]


def compute_newton_polytope(problem: EliminationProblem, seed: int = 0, verify: bool = False,
                            *, count_lattice: bool = True, threads: int = 1,
                            batch_size: int = 1, observer=None) -> Report:
    """Reconstruct the polytope of ``problem``; optionally verify and count points.

    ``observer`` is handed to the oracle and sees every subdivision pair.
    """
    timings = {}
    t0 = time.perf_counter()
    oracle = MFPOracle(problem.config, problem.split, seed=seed, observer=observer)
    res = reconstruct(oracle, problem.split.keep_dim, batch_size=batch_size, threads=threads)
    timings["reconstruct"] = time.perf_counter() - t0
    report = Report(res.polytope, res.oracle_calls, oracle.subdivisions,
                    oracle.hull_invocations, timings=timings)
    if verify:
        t0 = time.perf_counter()
        report.mismatches = verify_vertices(problem, res.polytope, seed, threads)
        report.verified = not report.mismatches
        timings["verify"] = time.perf_counter() - t0
    if count_lattice:
        t0 = time.perf_counter()
        report.lattice_count = count_lattice_points(res.polytope)
        timings["lattice"] = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# text format


def _vec(v) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def format_report(report: Report, emit: str = "both", stats: bool = False) -> str:
    poly = report.polytope
    lines = [f"dim {poly.dim}"]
    if emit in ("vertices", "both"):
        lines += [f"vertex {_vec(v)}" for v in sorted(poly.vertices)]
    if emit in ("facets", "both"):
        lines += [f"facet {_vec(n)} <= {c}" for n, c in sorted(poly.facets)]
        lines += [f"equation {_vec(n)} = {c}" for n, c in sorted(poly.equations)]
    if report.lattice_count is not None:
        lines.append(f"lattice_count {report.lattice_count}")
    lines.append(f"oracle_calls {report.oracle_calls}")
    lines.append(f"subdivisions {report.subdivision_computations}")
    if stats:
        lines.append(f"lower_hulls {report.hull_invocations}")
        lines.append(f"vertex_count {report.vertex_count}")
        lines.append(f"facet_count {report.facet_count}")
    if report.verified is not None:
        lines.append(f"verified {'true' if report.verified else 'false'}")
        for g, v, w in report.mismatches:
            lines.append(f"mismatch {_vec(g)} expected {_vec(v)} got {_vec(w)}")
    return "\n".join(lines) + "\n"


_VEC = r"\((-?[\d/]+(?:,-?[\d/]+)*)?\)"


def _parse_vec(s: str) -> tuple:
    s = s.strip()[1:-1]
    return tuple(Fraction(x) if "/" in x else int(x) for x in s.split(",")) if s else ()


def parse_report(text: str) -> dict:
    """Read back the output of :func:`format_report`."""
    out: dict = {"vertices": [], "facets": [], "equations": []}
    for line in text.splitlines():
        if not line.strip():
            continue
        if m := re.fullmatch(rf"vertex ({_VEC})", line):
            out["vertices"].append(_parse_vec(m.group(1)))
        elif m := re.fullmatch(rf"facet ({_VEC}) <= (-?[\d/]+)", line):
            out["facets"].append((_parse_vec(m.group(1)), Fraction(m.group(3))))
        elif m := re.fullmatch(rf"equation ({_VEC}) = (-?[\d/]+)", line):
            out["equations"].append((_parse_vec(m.group(1)), Fraction(m.group(3))))
        elif m := re.fullmatch(r"verified (true|false)", line):
            out["verified"] = m.group(1) == "true"
        elif m := re.fullmatch(r"(\w+) (-?\d+)", line):
            out[m.group(1)] = int(m.group(2))
        elif line.startswith("mismatch "):
            out.setdefault("mismatches", []).append(line[len("mismatch "):])
        else:
            raise ValueError(f"unrecognized report line: {line!r}")
    return out


def report_polytope(parsed: dict, ambient: int) -> Polytope:
    """Polytope from a parsed report (facets and equations taken as given)."""
    return Polytope(ambient, tuple(parsed["vertices"]),
                    tuple((n, int(c) if c.denominator == 1 else c) for n, c in parsed["facets"]),
                    tuple((n, int(c) if c.denominator == 1 else c) for n, c in parsed["equations"]))
