"""Buchberger's algorithm, reduced Groebner bases and normal forms.

The kernel works on plain dicts ``{exponents: coefficient}`` and only
wraps results back into :class:`Polynomial` at the boundary.  Reduction
keeps a max-heap of pending monomials so finding the next term to reduce
is logarithmic, and divisor lookups are memoised per monomial.

Pair handling follows the Gebauer-Moeller installation of Buchberger's two
criteria (coprime leading monomials; the chain criterion).  Pairs are
processed by the normal strategy, lowest lcm degree first, which for
homogeneous input makes the computation degree-by-degree and lets a
``degree_cap`` truncate it soundly.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from operator import add, sub
from typing import Iterable, Sequence

from .poly import GREVLEX, ContextMismatch, MonomialOrder, Polynomial, RingContext, monomials_of_degree

__all__ = [
    "GroebnerBasis",
    "GBStats",
    "buchberger",
    "normal_form",
    "s_poly",
    "EmptyIdeal",
    "ResourceCap",
    "ZeroInput",
]


class EmptyIdeal(ValueError):
    """All generators were zero."""


class ZeroInput(ValueError):
    """An S-polynomial was requested for a zero polynomial."""


class ResourceCap(RuntimeError):
    """A Groebner computation exceeded its configured pair budget."""


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Reducer:
    """Monic reducers with memoised leading-monomial divisor lookup."""

    def __init__(self, order: MonomialOrder, p: int):
        self.order = order
        self.p = p
        self.lms: list[tuple] = []
        self.tails: list[list] = []  # [(exps, coeff)] without the leading term
        self._hit: dict[tuple, int] = {}
        self._miss: dict[tuple, int] = {}

    def add(self, lm: tuple, tail: list) -> int:
        self.lms.append(lm)
        self.tails.append(tail)
        return len(self.lms) - 1

    def divisor(self, e: tuple) -> int:
        j = self._hit.get(e)
        if j is not None:
            return j
        n = len(self.lms)
        start = self._miss.get(e, 0)
        if start == n:
            return -1
        lms = self.lms
        for j in range(start, n):
            if _divides(lms[j], e):
                self._hit[e] = j
                return j
        self._miss[e] = n
        return -1

    def reduce(self, h: dict, full: bool = True) -> dict:
        """Reduce ``h`` in place-copy; returns the remainder dict.

        With ``full=False`` only the leading term is reduced away (top
        reduction) and the rest of ``h`` is returned untouched.
        """
        key = self.order.key
        p = self.p
        heap = [(_neg(key(e)), e) for e in h]
        heapq.heapify(heap)
        push, pop = heapq.heappush, heapq.heappop
        rem: dict = {}
        divisor = self.divisor
        tails = self.tails
        lms = self.lms
        while heap:
            _, e = pop(heap)
            c = h.pop(e, None)
            if c is None:
                continue
            j = divisor(e)
            if j < 0:
                rem[e] = c
                if not full:
                    rem.update(h)
                    return rem
                continue
            shift = tuple(map(sub, e, lms[j]))
            if p:
                for ge, gc in tails[j]:
                    ne = tuple(map(add, ge, shift))
                    v = h.get(ne)
                    if v is None:
                        h[ne] = (-c * gc) % p
                        push(heap, (_neg(key(ne)), ne))
                    else:
                        v = (v - c * gc) % p
                        if v:
                            h[ne] = v
                        else:
                            del h[ne]
            else:
                for ge, gc in tails[j]:
                    ne = tuple(map(add, ge, shift))
                    v = h.get(ne)
                    if v is None:
                        h[ne] = -c * gc
                        push(heap, (_neg(key(ne)), ne))
                    else:
                        v = v - c * gc
                        if v:
                            h[ne] = v
                        else:
                            del h[ne]
        return rem


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


def _monic_split(terms: dict, order: MonomialOrder, p: int) -> tuple[tuple, list]:
    lm = max(terms, key=order.key)
    lc = terms[lm]
    if p:
        inv = pow(lc, p - 2, p)
        tail = [(e, (c * inv) % p) for e, c in terms.items() if e != lm]
    else:
        tail = [(e, c / lc) for e, c in terms.items() if e != lm]
    return lm, tail


@dataclass
class GBStats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    pairs_skipped_coprime: int = 0
    pairs_skipped_chain: int = 0
    pairs_over_cap: int = 0
    zero_reductions: int = 0


class GroebnerBasis:
    """A Groebner basis; reduced bases are monic, interreduced and sorted by leading monomial."""

    def __init__(
        self,
        ring: RingContext,
        order: MonomialOrder,
        elements: Sequence[Polynomial],
        reduced: bool = True,
        degree_cap: int | None = None,
        stats: GBStats | None = None,
    ):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.reduced = reduced
        self.degree_cap = degree_cap
        self.stats = stats or GBStats()
        self._lock = threading.Lock()
        self._reducer: _Reducer | None = None

    def __repr__(self) -> str:
        cap = f", degree_cap={self.degree_cap}" if self.degree_cap is not None else ""
        return f"GroebnerBasis({len(self.elements)} elements, {self.order}{cap})"

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and set(self.elements) == set(other.elements)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def _get_reducer(self) -> _Reducer:
        r = self._reducer
        if r is None:
            with self._lock:
                if self._reducer is None:
                    red = _Reducer(self.order, self.ring.field.characteristic)
                    for g in self.elements:
                        lm, tail = _monic_split(dict(g.terms), self.order, red.p)
                        red.add(lm, tail)
                    self._reducer = red
                r = self._reducer
        return r

    def _check_cap(self, f: Polynomial) -> None:
        if self.degree_cap is not None and f and (not f.is_homogeneous() or f.degree() > self.degree_cap):
            raise ValueError(
                f"basis truncated at degree {self.degree_cap} cannot reduce a form of degree {f.degree()}"
            )

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Fully reduced remainder of ``f``; zero iff ``f`` lies in the ideal."""
        if f.ring != self.ring:
            raise ContextMismatch(f"{f.ring} vs {self.ring}")
        self._check_cap(f)
        rem = self._get_reducer().reduce(dict(f.terms))
        return Polynomial(self.ring, rem)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def standard_monomial_count(self, d: int) -> int:
        """Number of degree-``d`` monomials divisible by no leading monomial."""
        lms = self.leading_monomials
        return sum(
            1 for m in monomials_of_degree(self.ring.num_vars, d) if not any(_divides(l, m) for l in lms)
        )

    def standard_monomials(self, d: int) -> list[tuple]:
        lms = self.leading_monomials
        return [m for m in monomials_of_degree(self.ring.num_vars, d) if not any(_divides(l, m) for l in lms)]


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def s_poly(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """``(L/lt(f)) f - (L/lt(g)) g`` with ``L`` the lcm of the leading monomials."""
    if f.is_zero() or g.is_zero():
        raise ZeroInput("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise ContextMismatch(f"{f.ring} vs {g.ring}")
    fld = f.ring.field
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    L = _lcm(lf, lg)
    a = f.mul_monomial(tuple(map(sub, L, lf)), fld.inv(f.terms[lf]))
    b = g.mul_monomial(tuple(map(sub, L, lg)), fld.inv(g.terms[lg]))
    return a - b


def buchberger(
    gens: Iterable[Polynomial],
    order: MonomialOrder = GREVLEX,
    *,
    criteria: bool = True,
    degree_cap: int | None = None,
    max_pairs: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``degree_cap`` (homogeneous input only) stops at S-pairs whose lcm has
    degree above the cap; the result is then a basis of the ideal up to
    that degree and is flagged accordingly.  ``max_pairs`` raises
    :class:`ResourceCap` when more S-pairs than that would be reduced.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise EmptyIdeal("all generators are zero")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ContextMismatch(f"{g.ring} vs {ring}")
    if degree_cap is not None:
        if not all(g.is_homogeneous() for g in gens):
            raise ValueError("degree_cap requires homogeneous generators")
        gens = [g for g in gens if g.degree() <= degree_cap]
        if not gens:
            return GroebnerBasis(ring, order, [], True, degree_cap)

    p = ring.field.characteristic
    key = order.key
    stats = GBStats()
    red = _Reducer(order, p)
    polys: list[tuple[tuple, list]] = []  # (lm, tail) by index, never removed
    active: list[int] = []  # indices still eligible for new pairs
    pairs: list[tuple] = []  # heap of (lcm degree, lcm key, seq, i, j)
    seq = 0

    def insert(terms: dict) -> None:
        nonlocal seq, active, pairs
        lm, tail = _monic_split(terms, order, p)
        h = len(polys)
        polys.append((lm, tail))
        red.add(lm, tail)
        if not criteria:
            for g in active:
                L = _lcm(polys[g][0], lm)
                stats.pairs_total += 1
                heapq.heappush(pairs, (sum(L), key(L), seq, g, h))
                seq += 1
            active.append(h)
            return
        # Gebauer-Moeller update
        cand = [(g, _lcm(polys[g][0], lm)) for g in active]
        stats.pairs_total += len(cand)
        kept = []
        for idx, (g, L) in enumerate(cand):
            if _coprime(polys[g][0], lm):
                kept.append((g, L, True))
                continue
            dominated = False
            for g2, L2 in cand[idx + 1:]:
                if _divides(L2, L) and L2 != L:
                    dominated = True
                    break
            if not dominated:
                for g2, L2, _ in kept:
                    if _divides(L2, L):
                        dominated = True
                        break
            if dominated:
                stats.pairs_skipped_chain += 1
            else:
                kept.append((g, L, False))
        new_pairs = []
        for g, L, cop in kept:
            if cop:
                stats.pairs_skipped_coprime += 1
            else:
                new_pairs.append((g, L))
        # drop old pairs made redundant by the chain criterion
        survivors = []
        for item in pairs:
            _, _, _, i, j = item
            L = _lcm(polys[i][0], polys[j][0])
            if (
                _divides(lm, L)
                and _lcm(polys[i][0], lm) != L
                and _lcm(polys[j][0], lm) != L
            ):
                stats.pairs_skipped_chain += 1
                continue
            survivors.append(item)
        if len(survivors) != len(pairs):
            heapq.heapify(survivors)
            pairs = survivors
        for g, L in new_pairs:
            heapq.heappush(pairs, (sum(L), key(L), seq, g, h))
            seq += 1
        active = [g for g in active if not _divides(lm, polys[g][0])]
        active.append(h)

    # seed with the inputs, lowest degree first, each reduced by the earlier ones
    for g in sorted(gens, key=lambda f: (f.degree(), key(f.leading_monomial(order)))):
        r = red.reduce(dict(g.terms))
        if r:
            insert(r)

    while pairs:
        deg, _, _, i, j = heapq.heappop(pairs)
        if degree_cap is not None and deg > degree_cap:
            stats.pairs_over_cap += 1 + len(pairs)
            break
        if max_pairs is not None and stats.pairs_reduced >= max_pairs:
            raise ResourceCap(f"Groebner basis exceeded the budget of {max_pairs} S-pairs")
        stats.pairs_reduced += 1
        h = _spoly_terms(polys[i], polys[j], p)
        r = red.reduce(h) if h else h
        if r:
            insert(r)
        else:
            stats.zero_reductions += 1

    elements = _reduce_basis(ring, order, [polys[g] for g in active], p)
    return GroebnerBasis(ring, order, elements, True, degree_cap, stats)


def _spoly_terms(f: tuple[tuple, list], g: tuple[tuple, list], p: int) -> dict:
    (lf, tf), (lg, tg) = f, g
    L = _lcm(lf, lg)
    sf = tuple(map(sub, L, lf))
    sg = tuple(map(sub, L, lg))
    out: dict = {}
    for e, c in tf:
        out[tuple(map(add, e, sf))] = c
    for e, c in tg:
        ne = tuple(map(add, e, sg))
        v = out.get(ne)
        if v is None:
            out[ne] = (-c) % p if p else -c
        else:
            v = (v - c) % p if p else v - c
            if v:
                out[ne] = v
            else:
                del out[ne]
    return out


def _reduce_basis(ring: RingContext, order: MonomialOrder, items: list[tuple[tuple, list]], p: int) -> list[Polynomial]:
    """Minimalise, interreduce, make monic, sort ascending by leading monomial."""
    key = order.key
    items = sorted(items, key=lambda it: key(it[0]))
    minimal: list[tuple[tuple, list]] = []
    for lm, tail in items:
        if any(_divides(m, lm) for m, _ in minimal):
            continue
        minimal.append((lm, tail))
    out = []
    for idx, (lm, tail) in enumerate(minimal):
        red = _Reducer(order, p)
        for k, (lm2, tail2) in enumerate(minimal):
            if k != idx:
                red.add(lm2, tail2)
        rem = red.reduce(dict(tail)) if tail else {}
        rem[lm] = 1 if p else ring.field.one
        out.append(Polynomial(ring, rem))
    return out
