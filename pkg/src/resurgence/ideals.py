"""Ideals of a polynomial ring: powers, intersections, colons, saturation,
Hilbert functions and graded generator counts.

Every algorithm bottoms out in :func:`resurgence.groebner.buchberger`.  An
:class:`Ideal` caches its grevlex Groebner bases; for homogeneous ideals a
basis truncated at some degree is kept as well, because most membership
questions only ever touch one degree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

from .fields import FieldSpec, echelon
from .groebner import GroebnerBasis, buchberger
from .poly import GREVLEX, ContextMismatch, MonomialOrder, Polynomial, RingContext, monomials_of_degree

__all__ = [
    "Ideal",
    "GradedProfile",
    "ideal_power",
    "intersect",
    "colon",
    "colon_ideal",
    "saturate_variable",
    "saturate_irrelevant",
    "hilbert_function",
    "graded_min_gens",
    "reg_points",
    "is_member",
    "exact_divide",
    "dumps_ideal",
    "loads_ideal",
    "ZeroExponent",
    "ZeroDivisorPolynomial",
    "NonHomogeneousInput",
    "MissingDegreeBound",
    "NotZeroDimensional",
]


class ZeroExponent(ValueError):
    pass


class ZeroDivisorPolynomial(ValueError):
    pass


class NonHomogeneousInput(ValueError):
    pass


class MissingDegreeBound(ValueError):
    pass


class NotZeroDimensional(ValueError):
    pass


class Ideal:
    """An ideal given by generators, with lazily computed Groebner bases.

    ``scheme_degree`` is optional metadata: the length of the zero-dimensional
    scheme the ideal defines (number of points, or total multiplicity length
    for fat points).  ``saturated`` records that the ideal is known to be
    saturated with respect to the irrelevant ideal.
    """

    def __init__(
        self,
        ring: RingContext,
        generators: Iterable[Polynomial],
        *,
        saturated: bool = False,
        scheme_degree: int | None = None,
    ):
        gens = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                raise ContextMismatch(f"{g.ring} vs {ring}")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.homogeneous = all(g.is_homogeneous() for g in gens)
        self.saturated = saturated
        self.scheme_degree = scheme_degree
        self._lock = threading.Lock()
        self._gbs: dict[MonomialOrder, GroebnerBasis] = {}
        self._trunc: GroebnerBasis | None = None

    def __repr__(self) -> str:
        degs = sorted(g.degree() for g in self.generators)
        return f"Ideal({len(self.generators)} generators of degrees {degs} in {self.ring})"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    # -- Groebner bases ---------------------------------------------------

    def groebner(self, order: MonomialOrder = GREVLEX, *, max_pairs: int | None = None, criteria: bool = True) -> GroebnerBasis:
        gb = self._gbs.get(order)
        if gb is None:
            computed = buchberger(self.generators, order, max_pairs=max_pairs, criteria=criteria) if self.generators else None
            if computed is None:
                computed = GroebnerBasis(self.ring, order, [], True)
            with self._lock:
                gb = self._gbs.setdefault(order, computed)
        return gb

    def truncated_groebner(self, degree: int, *, max_pairs: int | None = None) -> GroebnerBasis:
        """A grevlex basis valid for all forms of degree <= ``degree`` (homogeneous ideals)."""
        full = self._gbs.get(GREVLEX)
        if full is not None:
            return full
        if not self.homogeneous:
            return self.groebner(max_pairs=max_pairs)
        tr = self._trunc
        if tr is not None and tr.degree_cap is not None and tr.degree_cap >= degree:
            return tr
        computed = buchberger(self.generators, GREVLEX, degree_cap=degree, max_pairs=max_pairs)
        with self._lock:
            cur = self._trunc
            if cur is None or cur.degree_cap < degree:
                self._trunc = computed
            return self._trunc

    def contains(self, f: Polynomial, *, max_pairs: int | None = None) -> bool:
        """Ideal membership by normal form."""
        if f.ring != self.ring:
            raise ContextMismatch(f"{f.ring} vs {self.ring}")
        if f.is_zero():
            return True
        if not self.generators:
            return False
        if self.homogeneous and GREVLEX not in self._gbs:
            # a homogeneous ideal contains f iff it contains each homogeneous component
            parts = {}
            for e, c in f.terms.items():
                parts.setdefault(sum(e), {})[e] = c
            gb = self.truncated_groebner(max(parts), max_pairs=max_pairs)
            return all(gb.contains(Polynomial(self.ring, t)) for t in parts.values())
        return self.groebner(max_pairs=max_pairs).contains(f)

    __contains__ = contains

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.groebner().normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    __hash__ = None  # type: ignore[assignment]

    def is_unit(self) -> bool:
        gb = self.groebner()
        return any(g.degree() == 0 for g in gb.elements)

    # -- convenience wrappers --------------------------------------------

    def __pow__(self, r: int) -> "Ideal":
        return ideal_power(self, r)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def intersect(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def colon(self, f: Polynomial) -> "Ideal":
        return colon(self, f)

    def saturate(self) -> "Ideal":
        return saturate_irrelevant(self)

    def hilbert_function(self, d: int) -> int:
        return hilbert_function(self, d)

    def alpha(self) -> int:
        """Least degree of a nonzero form (homogeneous ideals)."""
        self._require_homogeneous()
        return min(g.degree() for g in self.groebner().elements)

    def _require_homogeneous(self) -> None:
        if not self.homogeneous:
            raise NonHomogeneousInput("operation requires a homogeneous ideal")


# ---------------------------------------------------------------------------
# constructions


def ideal_power(I: Ideal, r: int) -> Ideal:
    """``I^r``: all ``r``-fold products of generators (deduplicated)."""
    if r < 1:
        raise ZeroExponent("ideal powers need r >= 1")
    if r == 1:
        return Ideal(I.ring, I.generators)
    gens = I.generators
    products: list[Polynomial] = []
    # cache partial products along the multiset enumeration
    cache: dict[tuple[int, ...], Polynomial] = {(): I.ring.one}
    for combo in combinations_with_replacement(range(len(gens)), r):
        prefix = combo[:-1]
        base = cache.get(prefix)
        if base is None:
            base = cache[prefix] = _product(gens, prefix, I.ring)
        products.append(base * gens[combo[-1]])
    return Ideal(I.ring, products)


def _product(gens, combo, ring):
    out = ring.one
    for i in combo:
        out = out * gens[i]
    return out


def _embed(f: Polynomial, ring: RingContext, offset: int) -> Polynomial:
    return f.change_ring(ring, [i + offset for i in range(f.ring.num_vars)])


def _restrict(f: Polynomial, ring: RingContext, offset: int) -> Polynomial:
    return Polynomial(ring, {e[offset:]: c for e, c in f.terms.items()})


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I cap J`` by eliminating ``w`` from ``w I + (1 - w) J``."""
    if I.ring != J.ring:
        raise ContextMismatch(f"{I.ring} vs {J.ring}")
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal(ring, [])
    T = ring.extend(1, front=True, names=["_w"])
    w = T.var(0)
    one_minus_w = T.one - w
    gens = [w * _embed(f, T, 1) for f in I.generators]
    gens += [one_minus_w * _embed(g, T, 1) for g in J.generators]
    gb = buchberger(gens, MonomialOrder.block(1))
    kept = [_restrict(g, ring, 1) for g in gb.elements if all(e[0] == 0 for e in g.terms)]
    sat = I.saturated and J.saturated
    return Ideal(ring, kept, saturated=sat)


def exact_divide(g: Polynomial, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """The quotient ``g / f``; raises ValueError if ``f`` does not divide ``g``."""
    if f.is_zero():
        raise ZeroDivisorPolynomial("division by the zero polynomial")
    fld = f.ring.field
    lf = f.leading_monomial(order)
    inv = fld.inv(f.terms[lf])
    q = f.ring.zero
    r = g
    while r:
        lr = r.leading_monomial(order)
        shift = tuple(a - b for a, b in zip(lr, lf))
        if min(shift) < 0:
            raise ValueError("polynomial does not divide exactly")
        c = fld.mul(r.terms[lr], inv)
        q = q + f.ring.monomial(shift, c)
        r = r - f.mul_monomial(shift, c)
    return q


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f = {g : g f in I}``, as ``(I cap (f)) / f``."""
    if f.is_zero():
        raise ZeroDivisorPolynomial("colon by the zero polynomial")
    if f.ring != I.ring:
        raise ContextMismatch(f"{f.ring} vs {I.ring}")
    meet = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [exact_divide(g, f) for g in meet.generators])


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """``I : J`` as the intersection of ``I : g`` over the generators of ``J``."""
    parts = [colon(I, g) for g in J.generators]
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return out


def saturate_variable(I: Ideal, i: int) -> Ideal:
    """``I : x_i^infinity`` for homogeneous ``I``.

    Uses the grevlex property that for a homogeneous basis with ``x_i`` as
    the smallest variable, dividing every element by its largest power of
    ``x_i`` yields a basis of the saturation.
    """
    I._require_homogeneous()
    ring = I.ring
    n = ring.num_vars
    perm = [k for k in range(n) if k != i] + [i]  # new position -> old index
    where = {old: new for new, old in enumerate(perm)}
    P = RingContext(ring.field, n, tuple(ring.var_names[k] for k in perm))
    gb = buchberger([g.change_ring(P, [where[k] for k in range(n)]) for g in I.generators], GREVLEX)
    back = [perm[k] for k in range(n)]
    out = []
    for g in gb.elements:
        k = min(e[-1] for e in g.terms)
        stripped = Polynomial(P, {e[:-1] + (e[-1] - k,): c for e, c in g.terms.items()})
        out.append(stripped.change_ring(ring, back))
    return Ideal(ring, out)


def saturate_irrelevant(I: Ideal) -> Ideal:
    """``I : M^infinity`` with ``M = (x_0, ..., x_N)``.

    Computed as the intersection of the per-variable saturations: a
    non-irrelevant associated prime survives in ``I : x_i^inf`` exactly when
    it avoids ``x_i = 0``, and every such prime avoids some coordinate
    hyperplane.
    """
    if not I.homogeneous:
        raise NonHomogeneousInput("saturation with respect to the irrelevant ideal needs a homogeneous ideal")
    if I.saturated:
        return I
    parts = [saturate_variable(I, i) for i in range(I.ring.num_vars)]
    # identical pieces (common when no point lies on a coordinate hyperplane) need no intersection
    uniq: list[Ideal] = []
    for P in parts:
        if not any(P == Q for Q in uniq):
            uniq.append(P)
    out = uniq[0]
    for P in uniq[1:]:
        out = intersect(out, P)
    result = Ideal(I.ring, out.groebner().elements, saturated=True, scheme_degree=I.scheme_degree)
    result._gbs[GREVLEX] = out.groebner()
    return result


# ---------------------------------------------------------------------------
# graded invariants


def hilbert_function(I: Ideal, d: int) -> int:
    """``dim_K (R/I)_d`` by counting standard monomials of the grevlex basis."""
    I._require_homogeneous()
    if d < 0:
        return 0
    if not I.generators:
        return comb(d + I.ring.num_vars - 1, I.ring.num_vars - 1)
    gb = I.truncated_groebner(d) if GREVLEX not in I._gbs else I.groebner()
    return gb.standard_monomial_count(d)


@dataclass
class GradedProfile:
    """Per-degree dimensions of ``I_d`` and counts of minimal generators."""

    dims: dict[int, int]
    min_gens: dict[int, int]
    degree_bound: int

    @property
    def alpha(self) -> int | None:
        return min((d for d, v in self.dims.items() if v > 0), default=None)

    @property
    def omega(self) -> int | None:
        return max((d for d, v in self.min_gens.items() if v > 0), default=None)

    @property
    def num_generators(self) -> int:
        return sum(self.min_gens.values())

    def generator_degrees(self) -> dict[int, int]:
        return {d: v for d, v in sorted(self.min_gens.items()) if v}


def _degree_basis(I: Ideal, gb: GroebnerBasis, d: int) -> list[Polynomial]:
    """Basis of ``I_d``: ``m - NF(m)`` for the non-standard monomials ``m``."""
    lms = gb.leading_monomials
    ring = I.ring
    out = []
    for m in monomials_of_degree(ring.num_vars, d):
        if any(all(a <= b for a, b in zip(l, m)) for l in lms):
            mono = ring.monomial(m)
            out.append(mono - gb.normal_form(mono))
    return out


def graded_min_gens(I: Ideal, degree_bound: int | None = None) -> GradedProfile:
    """Dimensions of ``I_d`` and minimal generator counts ``dim I_d - dim(R_1 I_{d-1})``.

    Without ``degree_bound`` the ideal must be a saturated point ideal with
    known ``scheme_degree``; the bound is then ``reg(I) + 1``.
    """
    I._require_homogeneous()
    if degree_bound is None:
        if not (I.saturated and I.scheme_degree is not None):
            raise MissingDegreeBound("pass degree_bound unless the ideal is a saturated point ideal of known degree")
        degree_bound = reg_points(I) + 1
    ring = I.ring
    n = ring.num_vars
    gb = I.truncated_groebner(degree_bound)
    dims: dict[int, int] = {}
    mins: dict[int, int] = {}
    prev: list[Polynomial] = []
    xs = ring.gens()
    for d in range(degree_bound + 1):
        basis = _degree_basis(I, gb, d)
        dims[d] = len(basis)
        if not basis:
            mins[d] = 0
            prev = basis
            continue
        monos = monomials_of_degree(n, d)
        rows = [(x * b).coefficient_vector(monos) for b in prev for x in xs]
        spanned = echelon(ring.field, rows, len(monos)).rank if rows else 0
        mins[d] = len(basis) - spanned
        prev = basis
    return GradedProfile(dims, mins, degree_bound)


def reg_points(I: Ideal, degree: int | None = None, *, cap: int | None = None) -> int:
    """Castelnuovo-Mumford regularity of a saturated zero-dimensional ideal.

    ``1 + min{t : HF(R/I, t) = degree}``; ``degree`` defaults to the ideal's
    ``scheme_degree``.
    """
    I._require_homogeneous()
    D = degree if degree is not None else I.scheme_degree
    if D is None:
        raise MissingDegreeBound("the degree of the zero-dimensional scheme is required")
    limit = cap if cap is not None else D + 1
    for t in range(limit + 1):
        h = hilbert_function(I, t)
        if h == D:
            return t + 1
        if h > D:
            raise NotZeroDimensional(f"HF(R/I, {t}) = {h} exceeds the expected degree {D}")
    raise NotZeroDimensional(f"Hilbert function did not reach {D} by degree {limit}")


def is_member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


# ---------------------------------------------------------------------------
# serialization


def dumps_ideal(I: Ideal) -> str:
    lines = [f"ring {I.ring.field} {I.ring.num_vars}"]
    lines += [str(g) for g in I.generators]
    return "\n".join(lines) + "\n"


def loads_ideal(text: str) -> Ideal:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("ring "):
        raise ValueError("ideal documents start with 'ring <field> <num_vars>'")
    _, fld, nv = lines[0].split()
    ring = RingContext(FieldSpec.parse(fld), int(nv))
    return Ideal(ring, [ring.parse(ln) for ln in lines[1:]])
