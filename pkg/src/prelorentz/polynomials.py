"""Sparse multivariate polynomials over the rationals.

A :class:`MultiPoly` stores an ordered tuple of variable names and a map from
exponent vectors to nonzero exact coefficients.  Coefficients are Python
``int`` whenever they are integral and :class:`fractions.Fraction` otherwise,
so the integer-coefficient polynomials that dominate this package never pay
for rational normalisation.

Example:
    >>> p = MultiPoly.variable(("x", "y"), "x") + MultiPoly.variable(("x", "y"), "y")
    >>> str(p * p)
    'x^2 + 2*x*y + y^2'
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

from .exceptions import InputError

Coefficient = Union[int, Fraction]
Exponent = tuple[int, ...]


def _normalize(c: Rational) -> Coefficient:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        f = Fraction(c.numerator, c.denominator)
        return f.numerator if f.denominator == 1 else f
    raise InputError(f"coefficient {c!r} is not an exact rational")


_COEF_RE = re.compile(r"[+-]?\d+(/\d+)?")


def parse_coefficient(text: str | int) -> Coefficient:
    """Parse ``"p/q"`` or an integer string into an exact coefficient."""
    if isinstance(text, bool):
        raise InputError(f"bad coefficient {text!r}")
    if isinstance(text, int):
        return text
    text = str(text).strip()
    if not _COEF_RE.fullmatch(text):
        raise InputError(f"bad coefficient {text!r}; expected an integer or 'p/q'")
    try:
        return _normalize(Fraction(text))
    except ZeroDivisionError as exc:
        raise InputError(f"bad coefficient {text!r}") from exc


def format_coefficient(c: Coefficient) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def grlex_key(exp: Exponent) -> tuple:
    """Sort key placing higher total degree first, then lexicographically larger."""
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Immutable sparse polynomial in a fixed, ordered list of variables."""

    __slots__ = ("vars", "terms", "_index")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, Rational] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise InputError(f"duplicate variable names in {vars!r}")
        n = len(vars)
        clean: dict[Exponent, Coefficient] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise InputError(f"exponent {exp!r} does not match {n} variables")
            if any((not isinstance(e, int)) or e < 0 for e in exp):
                raise InputError(f"exponent {exp!r} must be non-negative integers")
            c = _normalize(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vars)})

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Exponent, Coefficient]) -> "MultiPoly":
        # Trusted constructor: caller guarantees canonical, zero-free terms.
        p = object.__new__(cls)
        object.__setattr__(p, "vars", vars)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_index", {v: i for i, v in enumerate(vars)})
        return p

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MultiPoly":
        return cls(vars)

    @classmethod
    def constant(cls, vars: Sequence[str], c: Rational) -> "MultiPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "MultiPoly":
        vars = tuple(vars)
        if name not in vars:
            raise InputError(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exp: 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], exponents: Mapping[str, int], c: Rational = 1) -> "MultiPoly":
        vars = tuple(vars)
        unknown = set(exponents) - set(vars)
        if unknown:
            raise InputError(f"unknown variables {sorted(unknown)!r}")
        return cls(vars, {tuple(exponents.get(v, 0) for v in vars): c})

    # -- basic queries ----------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Sequence[int]) -> Coefficient:
        return self.terms.get(tuple(exp), 0)

    def sorted_terms(self) -> list[tuple[Exponent, Coefficient]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.vars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise InputError(
                    f"variable lists differ: {self.vars!r} vs {other.vars!r}; align with extend_vars first"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(self.vars, other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _normalize(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out: dict[Exponent, Coefficient] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.vars, {e: _normalize(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise InputError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Rational) -> "MultiPoly":
        c = _normalize(c)
        if not c:
            return MultiPoly.zero(self.vars)
        return MultiPoly._raw(self.vars, {e: _normalize(v * c) for e, v in self.terms.items()})

    # -- evaluation and substitution --------------------------------------

    def evaluate(self, point: Mapping[str, Rational]) -> Coefficient:
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise InputError(f"no value for variables {missing!r}")
        vals = [point[v] for v in self.vars]
        total: Rational = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v**k
            total += t
        return _normalize(total)

    def substitute(self, name: str, value: Rational) -> "MultiPoly":
        """Set one variable to a constant; the variable stays in ``vars`` with exponent 0."""
        i = self.index(name)
        out: dict[Exponent, Coefficient] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * value ** e[i]
        return MultiPoly(self.vars, out)

    def drop_var(self, name: str) -> "MultiPoly":
        """Remove a variable that does not occur in any term."""
        i = self.index(name)
        if any(e[i] for e in self.terms):
            raise InputError(f"variable {name!r} still occurs")
        vars = self.vars[:i] + self.vars[i + 1:]
        return MultiPoly._raw(vars, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def extend_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a variable list containing every current variable."""
        vars = tuple(vars)
        missing = [v for v in self.vars if v not in vars]
        if missing:
            raise InputError(f"target variable list lacks {missing!r}")
        if len(set(vars)) != len(vars):
            raise InputError(f"duplicate variable names in {vars!r}")
        pos = [self._index.get(v) for v in vars]
        out = {tuple(e[p] if p is not None else 0 for p in pos): c for e, c in self.terms.items()}
        return MultiPoly._raw(vars, out)

    # -- presentation -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, exp) if k
            )
            neg = c < 0
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_coefficient(mag)}*{mono}"
            else:
                body = format_coefficient(mag)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"MultiPoly({list(self.vars)!r}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": format_coefficient(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        if not isinstance(data, Mapping) or "vars" not in data or "terms" not in data:
            raise InputError("polynomial JSON needs 'vars' and 'terms'")
        vars = data["vars"]
        if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
            raise InputError("'vars' must be a list of strings")
        terms: dict[Exponent, Coefficient] = {}
        for t in data["terms"]:
            try:
                exp = tuple(t["exp"])
                coef = parse_coefficient(t["coef"])
            except (KeyError, TypeError) as exc:
                raise InputError(f"malformed term {t!r}") from exc
            if exp in terms:
                raise InputError(f"duplicate exponent {list(exp)!r}")
            terms[exp] = coef
        return cls(vars, terms)


def extend_vars(p: MultiPoly, q: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Align two polynomials on p's variables followed by q's new ones."""
    vars = p.vars + tuple(v for v in q.vars if v not in p._index)
    return p.extend_vars(vars), q.extend_vars(vars)


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def product(factors: Iterable[MultiPoly], vars: Sequence[str]) -> MultiPoly:
    result = MultiPoly.constant(vars, 1)
    for f in factors:
        result = result * f
    return result


def identify_variables(
    p: MultiPoly, mapping: Mapping[str, str], new_vars: Sequence[str] | None = None
) -> MultiPoly:
    """Substitute variables by (possibly shared) target variables.

    Variables absent from ``mapping`` keep their own name.  The result lives
    over ``new_vars`` when given, else over the distinct images in source
    order.
    """
    unknown = [v for v in mapping if v not in p._index]
    if unknown:
        raise InputError(f"cannot identify unknown variables {unknown!r}")
    images = [mapping.get(v, v) for v in p.vars]
    if new_vars is None:
        new_vars = tuple(dict.fromkeys(images))
    else:
        new_vars = tuple(new_vars)
        if len(set(new_vars)) != len(new_vars):
            raise InputError(f"duplicate variable names in {new_vars!r}")
    target = {v: i for i, v in enumerate(new_vars)}
    missing = [t for t in images if t not in target]
    if missing:
        raise InputError(f"targets {missing!r} not in the new variable list")
    slots = [target[t] for t in images]
    m = len(new_vars)
    out: dict[Exponent, Coefficient] = {}
    for e, c in p.terms.items():
        ne = [0] * m
        for s, k in zip(slots, e):
            ne[s] += k
        ne = tuple(ne)
        out[ne] = out.get(ne, 0) + c
    return MultiPoly._raw(new_vars, {e: c for e, c in out.items() if c})


def power_truncation(p: MultiPoly, alpha: Sequence[int], beta: Sequence[int]) -> MultiPoly:
    """Keep exactly the terms whose exponent lies between ``alpha`` and ``beta``."""
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != p.nvars or len(beta) != p.nvars:
        raise InputError("bounds must have one entry per variable")
    if any(a > b for a, b in zip(alpha, beta)):
        raise InputError(f"lower bound {alpha!r} is not below upper bound {beta!r}")
    keep = {
        e: c
        for e, c in p.terms.items()
        if all(a <= g <= b for a, g, b in zip(alpha, e, beta))
    }
    return MultiPoly._raw(p.vars, keep)


def multi_affine_part(p: MultiPoly, v: str) -> MultiPoly:
    """Drop every term in which ``v`` appears with exponent above one."""
    i = p.index(v)
    return MultiPoly._raw(p.vars, {e: c for e, c in p.terms.items() if e[i] <= 1})


def homogenize(p: MultiPoly, y: str = "y") -> MultiPoly:
    """Lift ``p`` to the minimal-degree homogeneous polynomial in ``vars + (y,)``."""
    if y in p._index:
        raise InputError(f"homogenising variable {y!r} already in use")
    d = p.degree()
    vars = p.vars + (y,)
    return MultiPoly._raw(vars, {e + (d - sum(e),): c for e, c in p.terms.items()})


def partial_derivative(p: MultiPoly, v: str, order: int = 1) -> MultiPoly:
    if not isinstance(order, int) or order < 0:
        raise InputError("derivative order must be a non-negative integer")
    i = p.index(v)
    out: dict[Exponent, Coefficient] = {}
    for e, c in p.terms.items():
        k = e[i]
        if k < order:
            continue
        ne = e[:i] + (k - order,) + e[i + 1:]
        out[ne] = c * math.perm(k, order)
    return MultiPoly._raw(p.vars, out)


def support(p: MultiPoly) -> frozenset[Exponent]:
    return frozenset(p.terms)
