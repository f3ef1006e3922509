"""Laurent polynomials with integer coefficients, and the input file parser.

Polynomials are dicts from exponent tuples to nonzero coefficients.  A
``generic`` polynomial only tracks its support: coefficients are all 1 and
sums never cancel, which models "random coefficients" exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import EmptyPolynomial, ParseError, UnknownVariable

Exponent = tuple[int, ...]


class Poly:
    __slots__ = ("nvars", "terms", "generic")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None,
                 generic: bool = False):
        self.nvars = nvars
        self.generic = generic
        self.terms: dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError("exponent length mismatch")
            if c:
                self.terms[tuple(e)] = 1 if generic else c

    @classmethod
    def constant(cls, nvars: int, c: int, generic: bool = False) -> "Poly":
        return cls(nvars, {(0,) * nvars: c}, generic)

    @classmethod
    def variable(cls, nvars: int, i: int, generic: bool = False) -> "Poly":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1}, generic)

    @classmethod
    def dense(cls, nvars: int, degree: int, variables: Sequence[int] | None = None) -> "Poly":
        """Generic polynomial with every monomial of total degree <= degree."""
        variables = list(range(nvars)) if variables is None else list(variables)
        terms = {}

        def rec(pos, left, exp):
            if pos == len(variables):
                terms[tuple(exp)] = 1
                return
            for a in range(left + 1):
                exp[variables[pos]] = a
                rec(pos + 1, left - a, exp)
            exp[variables[pos]] = 0

        rec(0, degree, [0] * nvars)
        return cls(nvars, terms, generic=True)

    @property
    def support(self) -> frozenset[Exponent]:
        return frozenset(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _like(self, other: "Poly") -> bool:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")
        return self.generic or other.generic

    def __add__(self, other: "Poly") -> "Poly":
        generic = self._like(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = 1 if generic else out.get(e, 0) + c
        return Poly(self.nvars, out, generic)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()}, self.generic)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        generic = self._like(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = 1 if generic else out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out, generic)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("negative power of a non-unit monomial")
            return Poly(self.nvars, {tuple(-a * -n for a in e): c ** -n}, self.generic)
        out = Poly.constant(self.nvars, 1, self.generic)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.nvars, out, self.generic)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Rename variable ``j`` to ``positions[j]`` in a ring with ``nvars`` variables."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * nvars
            for a, p in zip(e, positions):
                f[p] += a
            out[tuple(f)] = c
        return Poly(nvars, out, self.generic)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def to_str(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        first = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([first] + [f"{sg} {s}" for sg, s in parts[1:]])

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms!r})"


# ---------------------------------------------------------------------------
# expression parser

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*^()]))")


class _Parser:
    def __init__(self, text: str, names: Sequence[str], line: int, offset: int, generic=False):
        self.text = text
        self.index = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.line = line
        self.offset = offset
        self.generic = generic
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise self.error(f"unexpected character {text[col]!r}", col)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.toks.append(("end", "", len(text.rstrip())))
        self.i = 0

    def error(self, msg, col, cls=ParseError):
        return cls(msg, self.line, self.offset + col + 1)

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            what = tok[1] or "end of line"
            raise self.error(f"expected {value!r}, found {what!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise self.error("empty polynomial", self.peek()[2], EmptyPolynomial)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        start = self.peek()[2]
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take()
        e = self.exponent()
        try:
            return base ** e
        except ValueError as exc:
            raise self.error(str(exc), start) from None

    def exponent(self) -> int:
        tok = self.peek()
        if tok[1] == "(":
            self.take()
            e = self.exponent()
            self.take(")")
            return e
        sign = 1
        if tok[1] == "-":
            self.take()
            sign = -1
            tok = self.peek()
        if tok[0] != "int":
            raise self.error("expected an integer exponent", tok[2])
        self.take()
        return sign * int(tok[1])

    def atom(self) -> Poly:
        kind, val, col = self.peek()
        if kind == "int":
            self.take()
            return Poly.constant(self.nvars, int(val), self.generic)
        if kind == "name":
            self.take()
            if val not in self.index:
                raise self.error(f"unknown variable {val!r}", col, UnknownVariable)
            return Poly.variable(self.nvars, self.index[val], self.generic)
        if val == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        what = val or "end of line"
        raise self.error(f"unexpected {what!r}", col)


def parse_polynomial(text: str, names: Sequence[str], *, line: int = 1, offset: int = 0) -> Poly:
    """Parse one polynomial over the variables ``names``."""
    p = _Parser(text, names, line, offset).parse()
    if p.is_zero():
        raise EmptyPolynomial("polynomial is identically zero", line, offset + 1)
    return p


# ---------------------------------------------------------------------------
# input files


@dataclass
class PolySystem:
    keep_vars: tuple[str, ...]
    elim_vars: tuple[str, ...]
    names: tuple[str, ...] = ()
    polynomials: tuple[Poly, ...] = ()

    @property
    def variables(self) -> tuple[str, ...]:
        return self.keep_vars + self.elim_vars

    def supports(self) -> list[frozenset[Exponent]]:
        return [p.support for p in self.polynomials]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _declared_names(rest: str, lineno: int, col0: int, what: str) -> tuple[str, ...]:
    names = rest.split()
    for n in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", n):
            raise ParseError(f"bad {what} variable name {n!r}", lineno, col0 + rest.index(n) + 1)
    if len(set(names)) != len(names):
        raise ParseError(f"repeated {what} variable", lineno, col0 + 1)
    return tuple(names)


def parse_system(text: str) -> PolySystem:
    """Parse ``keep``/``eliminate`` declarations and ``name = polynomial`` lines."""
    keep = elim = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        word = line.split()[0]
        col0 = line.index(word) + len(word)
        if word in ("keep", "eliminate") and "=" not in line:
            names = _declared_names(line[col0:], lineno, col0, word)
            if word == "keep":
                if keep is not None:
                    raise ParseError("second keep line", lineno, 1)
                keep = names
            else:
                if elim is not None:
                    raise ParseError("second eliminate line", lineno, 1)
                elim = names
            continue
        if "=" not in line:
            raise ParseError("expected 'name = polynomial'", lineno, line.index(word) + 1)
        lhs, rhs = line.split("=", 1)
        name = lhs.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", name):
            raise ParseError(f"bad polynomial name {name!r}", lineno, 1)
        if keep is None or elim is None:
            raise ParseError("polynomials must follow the keep and eliminate lines", lineno, 1)
        entries.append((name, rhs, lineno, len(lhs) + 1))
    if keep is None:
        raise ParseError("missing keep line", 0)
    if elim is None:
        raise ParseError("missing eliminate line", 0)
    overlap = set(keep) & set(elim)
    if overlap:
        raise ParseError(f"variables both kept and eliminated: {sorted(overlap)}", 0)
    names = keep + elim
    polys = []
    for name, rhs, lineno, off in entries:
        polys.append(parse_polynomial(rhs, names, line=lineno, offset=off))
    return PolySystem(keep, elim, tuple(e[0] for e in entries), tuple(polys))


@dataclass
class RawSupports:
    n: int
    k: int
    sets: list[list[tuple[int, ...]]] = field(default_factory=list)


_POINT = re.compile(r"\(([^()]*)\)")


def parse_raw(text: str) -> RawSupports:
    """Parse ``dim <n> split <k>`` followed by ``polytope <i>: (..) (..)`` lines."""
    header = None
    sets: dict[int, list] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if header is None:
            m = re.fullmatch(r"\s*dim\s+(\d+)\s+split\s+(\d+)\s*", line)
            if not m:
                raise ParseError("expected 'dim <n> split <k>'", lineno, 1)
            header = (int(m.group(1)), int(m.group(2)))
            continue
        m = re.match(r"\s*polytope\s+(\d+)\s*:", line)
        if not m:
            raise ParseError("expected 'polytope <i>: ...'", lineno, 1)
        idx = int(m.group(1))
        if idx in sets:
            raise ParseError(f"polytope {idx} given twice", lineno, m.start(1) + 1)
        pts = []
        cur = m.end()
        while True:
            while cur < len(line) and line[cur].isspace():
                cur += 1
            if cur == len(line):
                break
            pm = _POINT.match(line, cur)
            if not pm:
                what = "unterminated point" if line[cur] == "(" else (
                    f"unexpected {line[cur]!r}, expected a point")
                raise ParseError(what, lineno, cur + 1)
            try:
                pt = tuple(int(c) for c in pm.group(1).split(","))
            except ValueError:
                raise ParseError("bad lattice point", lineno, cur + 1) from None
            if len(pt) != header[0]:
                raise ParseError(f"point has {len(pt)} coordinates, expected {header[0]}",
                                 lineno, cur + 1)
            pts.append(pt)
            cur = pm.end()
        if not pts:
            raise EmptyPolynomial(f"polytope {idx} has no points", lineno, 1)
        sets[idx] = pts
    if header is None:
        raise ParseError("missing 'dim <n> split <k>' line", 0)
    n, k = header
    if sorted(sets) != list(range(len(sets))):
        raise ParseError("polytopes must be numbered 0, 1, ...", 0)
    return RawSupports(n, k, [sets[i] for i in range(len(sets))])


def parse_ode(text: str) -> tuple[tuple[str, ...], list[Poly]]:
    """Parse a ``vars`` line and ``x' = g`` lines, one per variable, in order."""
    names = None
    rhs: dict[str, Poly] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        word = line.split()[0]
        if word == "vars" and "=" not in line:
            col0 = line.index(word) + len(word)
            names = _declared_names(line[col0:], lineno, col0, "state")
            continue
        if names is None:
            raise ParseError("missing vars line before the equations", lineno, 1)
        if "=" not in line:
            raise ParseError("expected \"x' = polynomial\"", lineno, 1)
        lhs, body = line.split("=", 1)
        lhs = lhs.strip()
        if not lhs.endswith("'") or lhs[:-1] not in names:
            raise UnknownVariable(f"left side {lhs!r} is not the derivative of a state variable",
                                  lineno, 1)
        if lhs[:-1] in rhs:
            raise ParseError(f"{lhs} given twice", lineno, 1)
        rhs[lhs[:-1]] = parse_polynomial(body, names, line=lineno, offset=len(line.split("=", 1)[0]) + 1)
    if names is None:
        raise ParseError("missing vars line", 0)
    missing = [n for n in names if n not in rhs]
    if missing:
        raise ParseError(f"no equation for {', '.join(missing)}", 0)
    return names, [rhs[n] for n in names]


def supports_of(polys: Iterable[Poly]) -> list[frozenset[Exponent]]:
    return [p.support for p in polys]
