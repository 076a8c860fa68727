"""Exact coefficient fields (Q and F_p) and dense exact linear algebra.

Field elements are plain Python values: ``fractions.Fraction`` over Q and
``int`` residues in ``[0, p)`` over F_p.  A :class:`FieldSpec` carries the
arithmetic; it never wraps individual scalars, which keeps the polynomial
and Groebner code free of per-coefficient object overhead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "ZeroInversion",
    "NonPrimeField",
    "ExactMatrix",
    "Echelon",
    "field_inv",
    "matrix_rank",
    "matrix_kernel_basis",
    "is_prime",
    "echelon",
    "rank_of_rows",
]

# residues below this bound keep p*p inside int64 during numpy elimination
_NUMPY_PRIME_BOUND = 1 << 31


class ZeroInversion(ZeroDivisionError):
    """Raised when inverting zero in a field."""


class NonPrimeField(ValueError):
    """Raised for characteristics that are not 0 or a prime (F_{p^e} is unsupported)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _is_prime_power(n: int) -> bool:
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            while n % d == 0:
                n //= d
            return n == 1
    return False


@dataclass(frozen=True)
class FieldSpec:
    """The scalar field: ``characteristic == 0`` is Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p == 0 or is_prime(p):
            return
        if p > 1 and _is_prime_power(p):
            raise NonPrimeField(f"F_{p} is a proper extension field; only prime fields are supported")
        raise NonPrimeField(f"characteristic {p} is neither 0 nor a prime")

    # -- construction / parsing -------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``qq`` or ``fp:<p>``."""
        t = text.strip().lower()
        if t in ("qq", "q", "rationals"):
            return cls(0)
        if t.startswith("fp:"):
            return cls(int(t[3:]))
        raise ValueError(f"unrecognised field {text!r}; expected 'qq' or 'fp:<p>'")

    def __str__(self) -> str:
        return "qq" if self.characteristic == 0 else f"fp:{self.characteristic}"

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    # -- elements ----------------------------------------------------------

    def __call__(self, value) -> int | Fraction:
        """Coerce an int, Fraction or string like ``-3/4`` into the field."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value.strip())
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            num = value.numerator % p
            den = value.denominator % p
            if den == 0:
                raise ZeroInversion(f"denominator of {value} vanishes mod {p}")
            return num * pow(den, p - 2, p) % p
        if isinstance(value, (int, np.integer)):
            return int(value) % p
        raise TypeError(f"cannot coerce {value!r} into {self}")

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        if a == 0:
            raise ZeroInversion("inverse of zero")
        p = self.characteristic
        return pow(a, p - 2, p) if p else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        p = self.characteristic
        if e < 0:
            return self.pow(self.inv(a), -e)
        return pow(a, e, p) if p else a**e

    def symmetric(self, a) -> int | Fraction:
        """Representative used for printing: residues shifted into (-p/2, p/2]."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a

    def elements(self) -> list[int]:
        """All elements of F_p (prime fields only)."""
        if not self.characteristic:
            raise ValueError("Q is infinite")
        return list(range(self.characteristic))


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def field_inv(a, field: FieldSpec):
    """Multiplicative inverse of ``a`` in ``field``; raises ZeroInversion on 0."""
    return field.inv(a)


# ---------------------------------------------------------------------------
# dense exact matrices


@dataclass(frozen=True)
class ExactMatrix:
    """Row-major dense matrix over an exact field."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = tuple(field(v) for r in rows for v in r)
        return cls(field, len(rows), cols, flat)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def apply(self, v: Sequence) -> list:
        f = self.field
        out = []
        for i in range(self.rows):
            acc = f.zero
            for a, b in zip(self.row(i), v):
                acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space.

    ``add`` reduces a candidate row against the current basis and keeps it
    when it is independent.  Over F_p (p < 2^31) rows are int64 numpy
    vectors; over Q they are integer lists with the content divided out.
    """

    def __init__(self, field: FieldSpec, cols: int):
        self.field = field
        self.cols = cols
        self.pivots: list[int] = []
        self._rows: list = []
        p = field.characteristic
        self._numpy = 0 < p < _NUMPY_PRIME_BOUND

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _prep(self, row: Sequence):
        p = self.field.characteristic
        if self._numpy:
            return np.array([int(v) % p for v in row], dtype=np.int64)
        if p:
            return [int(v) % p for v in row]
        # clear denominators: keep an integer row
        den = 1
        for v in row:
            v = Fraction(v)
            den = den * v.denominator // gcd(den, v.denominator)
        return [int(Fraction(v) * den) for v in row]

    def reduce(self, row):
        """Reduce ``row`` (already prepared) against the basis; returns the residue."""
        p = self.field.characteristic
        if self._numpy:
            for pc, prow in zip(self.pivots, self._rows):
                c = row[pc]
                if c:
                    row = (row - c * prow) % p
            return row
        if p:
            for pc, prow in zip(self.pivots, self._rows):
                c = row[pc]
                if c:
                    row = [(a - c * b) % p for a, b in zip(row, prow)]
            return row
        for pc, prow in zip(self.pivots, self._rows):
            c = row[pc]
            if c:
                lead = prow[pc]
                row = [lead * a - c * b for a, b in zip(row, prow)]
                g = 0
                for a in row:
                    g = gcd(g, a)
                if g > 1:
                    row = [a // g for a in row]
        return row

    def add(self, row: Sequence) -> bool:
        """Insert ``row`` if it is independent of the basis.  Returns True if added."""
        r = self.reduce(self._prep(row))
        p = self.field.characteristic
        nz = np.flatnonzero(r) if self._numpy else [i for i, a in enumerate(r) if a]
        if len(nz) == 0:
            return False
        pc = int(nz[0])
        if p:
            inv = pow(int(r[pc]), p - 2, p)
            r = (r * inv) % p if self._numpy else [(a * inv) % p for a in r]
            # keep the basis fully reduced
            for k, prow in enumerate(self._rows):
                c = prow[pc]
                if c:
                    if self._numpy:
                        self._rows[k] = (prow - c * r) % p
                    else:
                        self._rows[k] = [(a - c * b) % p for a, b in zip(prow, r)]
        else:
            if r[pc] < 0:
                r = [-a for a in r]
            for k, prow in enumerate(self._rows):
                c = prow[pc]
                if c:
                    new = [r[pc] * a - c * b for a, b in zip(prow, r)]
                    g = 0
                    for a in new:
                        g = gcd(g, a)
                    self._rows[k] = [a // g for a in new] if g > 1 else new
        self.pivots.append(pc)
        self._rows.append(r)
        return True

    def contains(self, row: Sequence) -> bool:
        r = self.reduce(self._prep(row))
        return not any(int(a) for a in r)

    def rows(self) -> list[list]:
        """The basis rows as field elements, each normalised to pivot 1."""
        p = self.field.characteristic
        out = []
        for pc, r in zip(self.pivots, self._rows):
            if p:
                out.append([int(a) for a in r])
            else:
                lead = r[pc]
                out.append([Fraction(a, lead) for a in r])
        return out

    def kernel_basis(self) -> list[list]:
        """Right kernel of the stored row space (vectors v with row . v = 0)."""
        f = self.field
        rows = self.rows()
        pivset = set(self.pivots)
        basis = []
        for free in range(self.cols):
            if free in pivset:
                continue
            v = [f.zero] * self.cols
            v[free] = f.one
            for pc, r in zip(self.pivots, rows):
                v[pc] = f.neg(r[free])
            basis.append(v)
        return basis


def echelon(field: FieldSpec, rows: Sequence[Sequence], cols: int) -> Echelon:
    """Row-echelon basis of the span of ``rows`` (entries already in ``field``)."""
    ech = Echelon(field, cols)
    if cols == 0 or not len(rows):
        return ech
    if ech._numpy:
        A = np.array(rows, dtype=np.int64).reshape(len(rows), cols) % field.characteristic
        _bulk_rref_mod_p(ech, A)
        return ech
    for row in rows:
        ech.add(row)
        if ech.rank == cols:
            break
    return ech


def _echelon_of(M: ExactMatrix) -> Echelon:
    return echelon(M.field, M.to_rows(), M.cols)


def _bulk_rref_mod_p(ech: Echelon, A: np.ndarray) -> None:
    """Gauss-Jordan on a whole int64 matrix, first-nonzero pivoting."""
    p = ech.field.characteristic
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    ech.pivots = pivots
    ech._rows = [A[i].copy() for i in range(r)]


def matrix_rank(M: ExactMatrix) -> int:
    """Exact rank of ``M``."""
    return _echelon_of(M).rank


def matrix_kernel_basis(M: ExactMatrix) -> list[list]:
    """Basis of the right kernel of ``M``; ``len == M.cols - rank(M)``."""
    return _echelon_of(M).kernel_basis()


def rank_of_rows(field: FieldSpec, rows: Iterable[Sequence], cols: int) -> int:
    return echelon(field, list(rows), cols).rank
