"""Sparse multivariate polynomials over Q or F_p.

A polynomial is a mapping from exponent tuples to nonzero field elements.
Term order only matters when something asks for leading terms or for the
printed form, so it is supplied per call rather than stored on the value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .fields import FieldSpec

__all__ = [
    "RingContext",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "Polynomial",
    "mono_cmp",
    "hasse_derivative",
    "monomials_of_degree",
    "LengthMismatch",
    "ContextMismatch",
    "PolynomialSyntaxError",
]

_ALIASES = ("x", "y", "z", "w")


class LengthMismatch(ValueError):
    pass


class ContextMismatch(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders


def _grevlex_key(e: Sequence[int]) -> tuple:
    return (sum(e),) + tuple(-a for a in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, or ``block`` (grevlex on ``e[:split]`` then on ``e[split:]``)."""

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 1:
            raise ValueError("block order needs split >= 1")

    @classmethod
    def block(cls, split: int) -> "MonomialOrder":
        return cls("block", split)

    def key(self, e: tuple) -> tuple:
        """Sort key: larger key means larger monomial."""
        return _order_key(self, e)

    def __str__(self) -> str:
        return f"block({self.split})" if self.kind == "block" else self.kind


@lru_cache(maxsize=1 << 20)
def _order_key(order: MonomialOrder, e: tuple) -> tuple:
    if order.kind == "grevlex":
        return _grevlex_key(e)
    if order.kind == "lex":
        return e
    k = order.split
    return _grevlex_key(e[:k]) + _grevlex_key(e[k:])


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def mono_cmp(a: Sequence[int], b: Sequence[int], order: MonomialOrder = GREVLEX) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to or larger than ``b``."""
    if len(a) != len(b):
        raise LengthMismatch(f"monomials of length {len(a)} and {len(b)}")
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return (ka > kb) - (ka < kb)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree ``d`` in ``n`` variables, grevlex-descending."""
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_grevlex_key, reverse=True)
    return tuple(out)


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class RingContext:
    """Polynomial ring ``field[x0, ..., x_{n-1}]``."""

    field: FieldSpec
    num_vars: int
    var_names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if not self.var_names:
            names = _ALIASES[:3] if self.num_vars == 3 else tuple(f"x{i}" for i in range(self.num_vars))
            object.__setattr__(self, "var_names", tuple(names))
        if len(self.var_names) != self.num_vars or len(set(self.var_names)) != self.num_vars:
            raise ValueError(f"bad variable names {self.var_names!r}")

    def __str__(self) -> str:
        return f"{self.field}[{','.join(self.var_names)}]"

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.num_vars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        if len(exps) != self.num_vars:
            raise LengthMismatch(f"exponent vector of length {len(exps)} in {self.num_vars} variables")
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def var(self, i: int | str) -> "Polynomial":
        idx = self.var_index(i) if isinstance(i, str) else i
        e = [0] * self.num_vars
        e[idx] = 1
        return self.monomial(e)

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.num_vars)]

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        if len(coeffs) != self.num_vars:
            raise LengthMismatch("coefficient vector length differs from number of variables")
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field(c)
            if c:
                e = [0] * self.num_vars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def var_index(self, name: str) -> int:
        if name in self.var_names:
            return self.var_names.index(name)
        if re.fullmatch(r"x\d+", name) and int(name[1:]) < self.num_vars:
            return int(name[1:])
        if name in _ALIASES and _ALIASES.index(name) < self.num_vars:
            return _ALIASES.index(name)
        raise PolynomialSyntaxError(f"unknown variable {name!r} in {self}")

    def from_dict(self, terms: Mapping) -> "Polynomial":
        f = self.field
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.num_vars:
                raise LengthMismatch("exponent vector length differs from number of variables")
            c = f(c)
            if c:
                out[e] = f.add(out.get(e, f.zero), c)
                if not out[e]:
                    del out[e]
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return _parse(self, text)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ContextMismatch("polynomial from a different ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def extend(self, extra: int, front: bool = True, names: Sequence[str] | None = None) -> "RingContext":
        """A ring with ``extra`` new variables before (or after) the current ones."""
        if names is None:
            names = [f"_t{i}" for i in range(extra)]
        new = tuple(names) + self.var_names if front else self.var_names + tuple(names)
        return RingContext(self.field, self.num_vars + extra, new)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial.  ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: RingContext, terms: dict):
        self.ring = ring
        self._t = terms
        self._hash = None

    # -- basic protocol -------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple, object]:
        return self._t

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == self.ring.const(other)._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out = dict(self._t)
        for e, c in other._t.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self.ring.field.characteristic
        return Polynomial(self.ring, {e: ((-c) % p if p else -c) for e, c in self._t.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero
        p = f.characteristic
        return Polynomial(self.ring, {e: ((v * c) % p if p else v * c) for e, v in self._t.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field(other))
        other = self._coerce(other)
        p = self.ring.field.characteristic
        out: dict = {}
        get = out.get
        a_items = list(self._t.items())
        for eb, cb in other._t.items():
            for ea, ca in a_items:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, shift: Sequence[int], c=1) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        p = f.characteristic
        out = {}
        for e, v in self._t.items():
            out[tuple(a + b for a, b in zip(e, shift))] = (v * c) % p if p else v * c
        return Polynomial(self.ring, out if c else {})

    # -- structure ----------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._t), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._t}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self._t.items() if sum(e) == d})

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple, object]]:
        """Terms in strictly descending ``order``."""
        return sorted(self._t.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple:
        if not self._t:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._t, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self._t[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._t:
            return self
        f = self.ring.field
        return self.scale(f.inv(self.leading_coefficient(order)))

    def coefficient(self, exps: Sequence[int]):
        return self._t.get(tuple(exps), self.ring.field.zero)

    def coefficient_vector(self, monomials: Sequence[tuple]) -> list:
        z = self.ring.field.zero
        return [self._t.get(m, z) for m in monomials]

    def variables_used(self) -> set[int]:
        return {i for e in self._t for i, a in enumerate(e) if a}

    # -- evaluation / derivatives ----------------------------------------

    def evaluate(self, point: Sequence):
        """Exact value at ``point`` (coordinates in the ring's field)."""
        if len(point) != self.ring.num_vars:
            raise LengthMismatch(f"point of length {len(point)} in {self.ring.num_vars} variables")
        f = self.ring.field
        pt = [f(c) for c in point]
        p = f.characteristic
        acc = f.zero
        for e, c in self._t.items():
            v = c
            for x, a in zip(pt, e):
                if a:
                    v = v * (pow(x, a, p) if p else x**a)
            acc = acc + v
        return acc % p if p else acc

    __call__ = evaluate

    def hasse(self, a: Sequence[int]) -> "Polynomial":
        return hasse_derivative(self, a)

    def change_ring(self, ring: RingContext, var_map: Sequence[int]) -> "Polynomial":
        """Image under ``x_i -> y_{var_map[i]}`` in ``ring`` (same field)."""
        if ring.field != self.ring.field:
            raise ContextMismatch("field changes are not supported")
        out = {}
        n = ring.num_vars
        for e, c in self._t.items():
            new = [0] * n
            for i, a in enumerate(e):
                if a:
                    new[var_map[i]] += a
            out[tuple(new)] = c
        return Polynomial(ring, out)


def hasse_derivative(f: Polynomial, a: Sequence[int]) -> Polynomial:
    """Divided-power derivative ``D^a f``: ``x^b -> prod C(b_i, a_i) x^(b-a)``."""
    a = tuple(a)
    if len(a) != f.ring.num_vars:
        raise LengthMismatch(f"derivative multi-index of length {len(a)} in {f.ring.num_vars} variables")
    fld = f.ring.field
    p = fld.characteristic
    out = {}
    for b, c in f._t.items():
        if any(bi < ai for bi, ai in zip(b, a)):
            continue
        k = 1
        for bi, ai in zip(b, a):
            if ai:
                k *= comb(bi, ai)
        v = (c * k) % p if p else c * k
        if v:
            out[tuple(bi - ai for bi, ai in zip(b, a))] = v
    return Polynomial(f.ring, out)


# ---------------------------------------------------------------------------
# text format


def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_monomial(ring: RingContext, e: Sequence[int]) -> str:
    parts = []
    for name, a in zip(ring.var_names, e):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if not f._t:
        return "0"
    fld = f.ring.field
    out = []
    for e, c in f.sorted_terms(order):
        c = fld.symmetric(c)
        neg = c < 0
        c = -c if neg else c
        mono = format_monomial(f.ring, e)
        if not mono:
            body = _format_coeff(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_format_coeff(c)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-])|(\()|(\)))")


def _parse(ring: RingContext, text: str) -> Polynomial:
    """Parse the ``coeff*mono`` grammar, e.g. ``x^2*y - 3*z^3`` or ``1/2*x0*x1``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        kind = m.lastindex
        tokens.append((kind, m.group(kind)))
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial")
    fld = ring.field
    n = ring.num_vars
    result: dict = {}
    i = 0

    def expect_exponent(j):
        if j < len(tokens) and tokens[j][0] == 3:
            if j + 1 >= len(tokens) or tokens[j + 1][0] != 1 or "/" in tokens[j + 1][1]:
                raise PolynomialSyntaxError(f"bad exponent in {text!r}")
            return int(tokens[j + 1][1]), j + 2
        return 1, j

    while i < len(tokens):
        sign = 1
        if tokens[i][0] == 5:
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif result or i > 0:
            raise PolynomialSyntaxError(f"expected '+' or '-' in {text!r}")
        coeff = Fraction(1)
        exps = [0] * n
        seen = False
        while i < len(tokens) and tokens[i][0] in (1, 2):
            kind, val = tokens[i]
            if kind == 1:
                coeff *= Fraction(val)
                i += 1
                e, i = expect_exponent(i)
                if e != 1:
                    raise PolynomialSyntaxError(f"exponent on a constant in {text!r}")
            else:
                idx = ring.var_index(val)
                e, i = expect_exponent(i + 1)
                exps[idx] += e
            seen = True
            if i < len(tokens) and tokens[i][0] == 4:
                i += 1
                if i >= len(tokens) or tokens[i][0] not in (1, 2):
                    raise PolynomialSyntaxError(f"dangling '*' in {text!r}")
            else:
                break
        if not seen:
            raise PolynomialSyntaxError(f"empty term in {text!r}")
        c = fld(coeff * sign)
        key = tuple(exps)
        v = fld.add(result.get(key, fld.zero), c)
        if v:
            result[key] = v
        else:
            result.pop(key, None)
    return Polynomial(ring, result)
