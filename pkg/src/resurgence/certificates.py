"""Waldschmidt-constant certificates (data only; checking lives in ``asymptotics``)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Polynomial

__all__ = [
    "CompleteIntersectionCertificate",
    "BezoutDescentCertificate",
    "ExplicitElementCertificate",
    "WaldschmidtCertificate",
]


@dataclass(frozen=True)
class CompleteIntersectionCertificate:
    """The point ideal lies in a complete intersection whose least degree is ``alpha``.

    Symbolic powers of a complete intersection are ordinary powers, so
    ``alpha(I^(m)) >= m * alpha`` for every ``m``.
    """

    generators: tuple[Polynomial, ...]
    alpha: int
    kind: str = field(default="CompleteIntersection", init=False)

    @property
    def lower_slope(self) -> Fraction:
        return Fraction(self.alpha)


@dataclass(frozen=True)
class BezoutDescentCertificate:
    """Line arrangement data proving ``alpha(I^(m)) >= slope * m`` for all ``m``.

    ``points_per_line`` is the least number of configuration points on a
    line, ``lines_per_point`` the most lines through a configuration point,
    ``num_lines`` the number of (distinct, degree one) lines, and
    ``base_alphas`` the interpolated ``alpha(I^(m))`` for ``m = 1 ..
    lines_per_point``.
    """

    num_lines: int
    points_per_line: int
    lines_per_point: int
    slope: int
    base_alphas: tuple[int, ...]
    kind: str = field(default="BezoutDescent", init=False)

    @property
    def lower_slope(self) -> Fraction:
        return Fraction(self.slope)


@dataclass(frozen=True)
class ExplicitElementCertificate:
    """A form of degree ``degree`` vanishing to order ``multiplicity`` at every point.

    Its powers give ``alpha(I^(k*multiplicity)) <= k * degree``, hence the
    Waldschmidt constant is at most ``degree / multiplicity``.
    """

    element: Polynomial
    multiplicity: int
    degree: int
    name: str = ""
    kind: str = field(default="ExplicitElement", init=False)

    @property
    def upper_slope(self) -> Fraction:
        return Fraction(self.degree, self.multiplicity)


WaldschmidtCertificate = CompleteIntersectionCertificate | BezoutDescentCertificate | ExplicitElementCertificate
