"""Containment of symbolic in ordinary powers, Waldschmidt and resurgence brackets.

Every claim produced here is backed by something re-checkable: a witness
polynomial with both membership facts verified, a full generator reduction,
the m >= N r containment valid for every homogeneous ideal, or a
certificate bounding the Waldschmidt constant from below.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from .certificates import (
    BezoutDescentCertificate,
    CompleteIntersectionCertificate,
    ExplicitElementCertificate,
)
from .fields import echelon
from .groebner import ResourceCap
from .ideals import Ideal, hilbert_function, ideal_power
from .poly import Polynomial, format_polynomial, monomials_of_degree
from .points import (
    CHMN_CONICS,
    DegenerateParameter,
    PointConfiguration,
    alpha_interpolation,
    all_but_one_config,
    chmn_config,
    fermat_config,
    hyperplane_product_avoiding,
    incidence_audit,
    interpolation_profile,
    points_hilbert_function,
    regularity_interpolation,
    symbolic_power,
    vanishing_order,
)

__all__ = [
    "HOLDS",
    "FAILS",
    "NORMAL_FORM_ALL_GENS",
    "WITNESS_NON_MEMBER",
    "ELS_SHORTCUT",
    "Budget",
    "ContainmentReport",
    "check_containment",
    "in_symbolic_power",
    "not_in_power",
    "WaldschmidtBracket",
    "waldschmidt_table",
    "lower_certificate",
    "verify_certificate",
    "bezout_descent_certify",
    "ResurgenceBracket",
    "resurgence_bracket",
    "asymptotic_bracket",
    "reg_upper_bound",
    "fermat_hilbert_burch",
    "family_cell",
    "Check",
    "Ledger",
    "verify_theorem",
    "CertificateMissing",
    "DescentArithmeticFails",
    "BaseCaseFails",
    "HypothesisViolated",
    "CertificateRejected",
]

HOLDS = "Holds"
FAILS = "Fails"
NORMAL_FORM_ALL_GENS = "NormalFormAllGens"
WITNESS_NON_MEMBER = "WitnessNonMember"
ELS_SHORTCUT = "ELSHHShortcut"


class CertificateMissing(RuntimeError):
    pass


class CertificateRejected(RuntimeError):
    pass


class DescentArithmeticFails(ValueError):
    pass


class BaseCaseFails(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    """Resource limits: largest degree handled and Buchberger pair budget."""

    max_degree: int | None = None
    max_pairs: int | None = None

    def check_degree(self, d: int, what: str) -> None:
        if self.max_degree is not None and d > self.max_degree:
            raise ResourceCap(f"{what} needs degree {d} > max_degree {self.max_degree}")


DEFAULT_BUDGET = Budget()


def _fmt(f: Polynomial | None) -> str | None:
    return None if f is None else format_polynomial(f)


def _frac(q: Fraction | None) -> str | None:
    if q is None:
        return None
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# membership facts


def in_symbolic_power(cfg: PointConfiguration, f: Polynomial, m: int) -> bool:
    """``f in I^(m)``: ``f`` vanishes to order at least ``m`` at every point (Hasse check)."""
    if f.is_zero():
        return True
    return all(vanishing_order(f, pt, limit=m) >= m for pt in cfg.points)


def _power_generators(cfg: PointConfiguration, r: int) -> list[Polynomial]:
    return list(cfg.power(r).generators)


def _slice_contains(cfg: PointConfiguration, f: Polynomial, r: int) -> bool:
    """Membership of a form in ``(I^r)_d`` by linear algebra on the degree slice.

    The slice is spanned by monomial multiples of the products of ``r``
    generators; this avoids Groebner bases altogether.
    """
    d = f.degree()
    n = cfg.ring.num_vars
    cols = monomials_of_degree(n, d)
    index = {mo: i for i, mo in enumerate(cols)}
    rows = []
    for g in _power_generators(cfg, r):
        e = g.degree()
        if e > d:
            continue
        items = list(g.terms.items())
        for mu in monomials_of_degree(n, d - e):
            row = [0] * len(cols)
            for ex, c in items:
                row[index[tuple(a + b for a, b in zip(ex, mu))]] = c
            rows.append(row)
    if not rows:
        return False
    ech = echelon(cfg.field, rows, len(cols))
    return ech.contains(f.coefficient_vector(cols))


def _evaluation_certifies(cfg: PointConfiguration, f: Polynomial, r: int) -> bool:
    """Non-membership in ``I^r`` via the excluded point of an all-but-one configuration.

    If every form of ``I`` of degree below ``reg(I)`` vanishes at ``q``, then
    every form of ``I^r`` of degree below ``r * reg(I)`` vanishes at ``q``;
    a form of such degree with ``f(q) != 0`` is therefore outside ``I^r``.
    """
    q = cfg.excluded_point
    if q is None or not f.evaluate(q.coords):
        return False
    reg = regularity_interpolation(cfg)
    if f.degree() >= r * reg:
        return False
    # forms of I below degree reg are combinations of generators below reg
    return all(g.degree() >= reg or not g.evaluate(q.coords) for g in cfg.ideal().generators)


def not_in_power(cfg: PointConfiguration, f: Polynomial, r: int, budget: Budget = DEFAULT_BUDGET) -> dict:
    """Independent checks that the homogeneous form ``f`` is not in ``I^r``.

    Returns a dict of check name to bool (or ``None`` when skipped for budget).
    ``f`` is outside ``I^r`` iff the ``linear`` or ``groebner`` entry is True;
    the degree and evaluation entries are sufficient shortcuts.
    """
    out: dict[str, bool | None] = {}
    alpha = interpolation_profile(cfg, 1).alpha
    out["degree"] = f.degree() < r * alpha
    out["evaluation"] = _evaluation_certifies(cfg, f, r) if cfg.excluded_point is not None else None
    out["linear"] = not _slice_contains(cfg, f, r)
    try:
        budget.check_degree(f.degree(), "normal form")
        gb = cfg.power(r).truncated_groebner(f.degree(), max_pairs=budget.max_pairs)
        out["groebner"] = not gb.normal_form(f).is_zero()
    except ResourceCap:
        out["groebner"] = None
    return out


# ---------------------------------------------------------------------------
# containment


@dataclass
class ContainmentReport:
    m: int
    r: int
    verdict: str
    method: str
    witness: Polynomial | None = None
    witness_name: str | None = None
    checks: dict = field(default_factory=dict)
    timing: float = 0.0

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def as_dict(self, timings: bool = True) -> dict:
        out = {
            "m": self.m,
            "r": self.r,
            "verdict": self.verdict,
            "method": self.method,
            "checks": self.checks,
        }
        if self.witness is not None:
            out["witness"] = _fmt(self.witness)
            out["witness_degree"] = self.witness.degree()
            if self.witness_name:
                out["witness_name"] = self.witness_name
        if timings:
            out["timing"] = round(self.timing, 4)
        return out


def _candidates(cfg: PointConfiguration, m: int, extra: Iterable) -> list[tuple[str, Polynomial]]:
    out = []
    for item in extra:
        if isinstance(item, tuple):
            out.append(item)
        else:
            out.append(("candidate", item))
    for cert in cfg.elements():
        k = -(-m // cert.multiplicity)
        name = cert.name if k == 1 else f"({cert.name})^{k}"
        out.append((name, cert.element if k == 1 else cert.element**k))
    return out


def _witness_checks(cfg: PointConfiguration, f: Polynomial, m: int, r: int, budget: Budget) -> dict | None:
    """Both membership facts for a non-containment witness, or None if it is not one."""
    if not in_symbolic_power(cfg, f, m):
        return None
    outside = not_in_power(cfg, f, r, budget)
    if outside["linear"] is False or outside["groebner"] is False:
        return None
    if not (outside["linear"] or outside["groebner"]):
        return None
    return {"in_symbolic_power": True, **{f"not_in_power_{k}": v for k, v in outside.items()}}


def check_containment(
    cfg: PointConfiguration,
    m: int,
    r: int,
    *,
    budget: Budget = DEFAULT_BUDGET,
    candidates: Iterable = (),
    shortcut: bool = True,
    try_candidates: bool = True,
) -> ContainmentReport:
    """Decide ``I^(m) subseteq I^r``.

    Order of attack: the ``m >= N r`` shortcut, then candidate witnesses
    (supplied forms and powers of the configuration's explicit elements),
    then reduction of every generator of ``I^(m)`` modulo a Groebner basis of
    ``I^r`` truncated at the largest generator degree.
    """
    if m < 1 or r < 1:
        raise ValueError("m and r must be at least 1")
    start = time.perf_counter()
    N = cfg.N
    if shortcut and m >= N * r:
        return ContainmentReport(m, r, HOLDS, ELS_SHORTCUT, checks={"m_ge_Nr": True}, timing=time.perf_counter() - start)
    if r == 1:
        # I^(m) is contained in I^(1) = I for every m >= 1
        return ContainmentReport(m, r, HOLDS, NORMAL_FORM_ALL_GENS, checks={"r_is_1": True}, timing=time.perf_counter() - start)
    if try_candidates:
        for name, f in _candidates(cfg, m, candidates):
            if budget.max_degree is not None and f.degree() > budget.max_degree:
                continue
            checks = _witness_checks(cfg, f, m, r, budget)
            if checks is not None:
                return ContainmentReport(m, r, FAILS, WITNESS_NON_MEMBER, f, name, checks, time.perf_counter() - start)
    S = symbolic_power(cfg, m)
    gens = sorted(S.generators, key=lambda g: (g.degree(), format_polynomial(g)))
    top = max(g.degree() for g in gens)
    budget.check_degree(top, f"generators of I^({m})")
    gb = cfg.power(r).truncated_groebner(top, max_pairs=budget.max_pairs)
    for g in gens:
        if not gb.normal_form(g).is_zero():
            checks = _witness_checks(cfg, g, m, r, budget)
            if checks is None:
                raise AssertionError("generator failed to reduce but is not a verified witness")
            return ContainmentReport(m, r, FAILS, NORMAL_FORM_ALL_GENS, g, "generator of symbolic power", checks, time.perf_counter() - start)
    checks = {"generators_reduced": len(gens), "max_generator_degree": top}
    return ContainmentReport(m, r, HOLDS, NORMAL_FORM_ALL_GENS, checks=checks, timing=time.perf_counter() - start)


# ---------------------------------------------------------------------------
# certificates


def _verify_ci(cfg: PointConfiguration, cert: CompleteIntersectionCertificate) -> dict:
    ring = cfg.ring
    gens = cert.generators
    if len(gens) != cfg.N:
        raise CertificateRejected(f"expected {cfg.N} generators, got {len(gens)}")
    if any(not g.is_homogeneous() for g in gens):
        raise CertificateRejected("complete intersection generators must be forms")
    if min(g.degree() for g in gens) != cert.alpha:
        raise CertificateRejected("claimed alpha differs from the least generator degree")
    C = Ideal(ring, gens)
    # I inside C puts V(C) inside the finite point set, so N forms cut out a
    # codimension N scheme and form a regular sequence
    if not all(C.contains(g) for g in cfg.ideal().generators):
        raise CertificateRejected("the point ideal is not contained in the complete intersection")
    prod = 1
    for g in gens:
        prod *= g.degree()
    top = sum(g.degree() - 1 for g in gens)
    hf = [hilbert_function(C, t) for t in (top, top + 1)]
    if hf != [prod, prod]:
        raise CertificateRejected(f"Hilbert function {hf} does not stabilise at {prod}")
    return {"contains_point_ideal": True, "degree": prod, "alpha": cert.alpha}


def _line_data(cfg: PointConfiguration) -> tuple[int, int, int]:
    audit = incidence_audit(cfg, conics={})
    lines = cfg.lines
    for i in range(len(lines)):
        for j in range(i):
            a, b = lines[i], lines[j]
            if a.monic() == b.monic():
                raise DescentArithmeticFails("recorded lines are not distinct")
    return len(lines), audit.min_points_per_line, audit.max_lines_per_point


def bezout_descent_certify(cfg: PointConfiguration, slope: int) -> BezoutDescentCertificate:
    """Certify ``alpha(I^(m)) >= slope * m`` for every ``m`` from line incidences.

    With ``k`` points on every line and at most ``c`` lines through a point, a
    form of degree below ``slope * m`` vanishing to order ``m`` meets each
    line in more than its degree, so contains every line when ``k >=
    slope``.  Removing the ``L`` lines drops multiplicities by at most ``c``
    and degrees by ``L >= slope * c``, reducing to ``m - c``.  The cases
    ``m <= c`` are checked by interpolation.
    """
    if cfg.N != 2:
        raise DescentArithmeticFails("the descent argument is for plane configurations")
    if not cfg.lines:
        raise DescentArithmeticFails("no lines recorded")
    L, k, c = _line_data(cfg)
    if k < slope:
        raise DescentArithmeticFails(f"a line holds only {k} < {slope} points")
    if L < slope * c:
        raise DescentArithmeticFails(f"{L} lines < {slope} * {c}")
    base = []
    for m in range(1, c + 1):
        a = alpha_interpolation(cfg, slope * m - 1, m) if slope * m - 1 >= 1 else None
        if a is not None:
            raise BaseCaseFails(f"alpha(I^({m})) = {a} < {slope * m}")
        base.append(alpha_interpolation(cfg, slope * m + cfg.fat_length(m), m))
    return BezoutDescentCertificate(L, k, c, slope, tuple(base))


def _verify_bezout(cfg: PointConfiguration, cert: BezoutDescentCertificate) -> dict:
    fresh = bezout_descent_certify(cfg, cert.slope)
    if (fresh.num_lines, fresh.points_per_line, fresh.lines_per_point) != (cert.num_lines, cert.points_per_line, cert.lines_per_point):
        raise CertificateRejected("recorded incidence numbers do not match the configuration")
    return {"lines": fresh.num_lines, "points_per_line": fresh.points_per_line, "lines_per_point": fresh.lines_per_point, "base_alphas": list(fresh.base_alphas)}


def _verify_explicit(cfg: PointConfiguration, cert: ExplicitElementCertificate) -> dict:
    F = cert.element
    if not F.is_homogeneous() or F.degree() != cert.degree:
        raise CertificateRejected("element degree differs from the claim")
    orders = {vanishing_order(F, pt, limit=cert.multiplicity + 1) for pt in cfg.points}
    if min(orders) < cert.multiplicity:
        raise CertificateRejected(f"element vanishes only to order {min(orders)}")
    return {"degree": cert.degree, "multiplicity": cert.multiplicity, "orders": sorted(orders)}


def verify_certificate(cfg: PointConfiguration, cert) -> dict:
    """Re-check a certificate against the configuration; raises CertificateRejected."""
    if isinstance(cert, CompleteIntersectionCertificate):
        return _verify_ci(cfg, cert)
    if isinstance(cert, BezoutDescentCertificate):
        return _verify_bezout(cfg, cert)
    if isinstance(cert, ExplicitElementCertificate):
        return _verify_explicit(cfg, cert)
    raise TypeError(f"unknown certificate {cert!r}")


def lower_certificate(cfg: PointConfiguration):
    """A verified lower-bound certificate: complete intersection first, then line descent."""
    def build():
        if cfg.lower_certificate is not None:
            try:
                _verify_ci(cfg, cfg.lower_certificate)
                return cfg.lower_certificate
            except CertificateRejected:
                pass
        if cfg.lines and cfg.N == 2:
            L, k, c = _line_data(cfg)
            for a in range(min(k, L // max(c, 1)), 0, -1):
                try:
                    return bezout_descent_certify(cfg, a)
                except (DescentArithmeticFails, BaseCaseFails):
                    continue
        return False

    cert = cfg._cached("lower_cert", build)
    return cert or None


# ---------------------------------------------------------------------------
# Waldschmidt constant


@dataclass
class WaldschmidtBracket:
    rows: list[tuple[int, int, Fraction]]
    lower: Fraction | None
    upper: Fraction
    certificate: object | None
    upper_elements: list[str]

    @property
    def certified(self) -> bool:
        return self.lower is not None

    @property
    def collapsed(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    def as_dict(self) -> dict:
        return {
            "table": [{"m": m, "alpha": a, "ratio": _frac(q)} for m, a, q in self.rows],
            "lower": _frac(self.lower),
            "upper": _frac(self.upper),
            "certified": self.certified,
            "certificate": getattr(self.certificate, "kind", None),
            "upper_elements": self.upper_elements,
        }


def waldschmidt_table(cfg: PointConfiguration, m_max: int = 3) -> WaldschmidtBracket:
    """``alpha(I^(m))`` for ``m <= m_max`` and a bracket for the Waldschmidt constant.

    The upper end is the least ratio ``alpha(I^(m)) / m`` over the table and
    the verified explicit elements; the lower end comes from a certificate and
    is None when no certificate is available.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    alpha1 = interpolation_profile(cfg, 1).alpha
    rows = []
    for m in range(1, m_max + 1):
        a = alpha_interpolation(cfg, m * alpha1, m)
        rows.append((m, a, Fraction(a, m)))
    upper = min(q for _, _, q in rows)
    used = []
    for cert in cfg.elements():
        _verify_explicit(cfg, cert)
        if cert.upper_slope < upper:
            upper = cert.upper_slope
        used.append(cert.name)
    cert = lower_certificate(cfg)
    lower = cert.lower_slope if cert is not None else None
    if lower is not None and lower > upper:
        raise AssertionError("certified lower bound exceeds the computed upper bound")
    return WaldschmidtBracket(rows, lower, upper, cert, used)


def asymptotic_bracket(cfg: PointConfiguration, wb: WaldschmidtBracket | None = None) -> tuple[Fraction, Fraction]:
    """``[alpha(I) / upper, omega(I) / lower]`` from the Waldschmidt bracket."""
    wb = wb or waldschmidt_table(cfg)
    if wb.lower is None:
        raise CertificateMissing(f"no lower Waldschmidt certificate for {cfg.label!r}")
    prof = interpolation_profile(cfg, 1)
    return Fraction(prof.alpha) / wb.upper, Fraction(prof.omega) / wb.lower


# ---------------------------------------------------------------------------
# resurgence


def reg_upper_bound(reg: int, omega: int, r: int) -> int:
    """Upper bound for ``reg(I^r)`` of a point ideal: ``min(r reg, 2 reg + (r - 2) omega)``."""
    if r == 1:
        return reg
    return min(r * reg, 2 * reg + (r - 2) * omega)


def _threshold(N: int, a: Fraction, reg: int, omega: int, r: int) -> tuple[int, str]:
    """Least ``m`` from which containment in ``I^r`` is certified, and the reason."""
    bound = reg_upper_bound(reg, omega, r)
    # a * m > bound  <=>  m > bound / a
    m_crit = (bound * a.denominator) // a.numerator + 1
    if N * r <= m_crit:
        return N * r, ELS_SHORTCUT
    return m_crit, "alpha-reg"


@dataclass
class ResurgenceBracket:
    lower: Fraction
    upper: Fraction
    hat_lower: Fraction
    hat_upper: Fraction
    cells: dict[tuple[int, int], dict]
    rows: list[dict]
    tail: dict
    witnesses: list[ContainmentReport]
    partial: bool
    family: dict | None = None

    def as_dict(self, timings: bool = True) -> dict:
        grid = []
        for (m, r) in sorted(self.cells, key=lambda c: (c[1], c[0])):
            cell = dict(self.cells[(m, r)])
            if not timings:
                cell.pop("timing", None)
            grid.append(cell)
        out = {
            "rho_lower": _frac(self.lower),
            "rho_upper": _frac(self.upper),
            "hat_lower": _frac(self.hat_lower),
            "hat_upper": _frac(self.hat_upper),
            "partial": self.partial,
            "grid": grid,
            "rows": self.rows,
            "tail": self.tail,
        }
        if self.family is not None:
            out["family"] = self.family if timings else {k: v for k, v in self.family.items() if k != "timing"}
        return out


DEFAULT_EXPLICIT = {"fermat": ((5, 3),), "chmn": ((4, 3),)}


def _decide(cfg, m, r, budget) -> dict:
    start = time.perf_counter()
    try:
        rep = check_containment(cfg, m, r, budget=budget)
    except ResourceCap as exc:
        return {"m": m, "r": r, "ratio": _frac(Fraction(m, r)), "status": "partial", "reason": str(exc), "timing": round(time.perf_counter() - start, 4)}
    d = rep.as_dict()
    d["ratio"] = _frac(Fraction(m, r))
    d["status"] = "decided"
    d["_report"] = rep
    return d


def resurgence_bracket(
    cfg: PointConfiguration,
    r_max: int = 4,
    *,
    budget: Budget = DEFAULT_BUDGET,
    explicit: Sequence[tuple[int, int]] | None = None,
    m_max: int = 3,
    jobs: int = 1,
    family_t: int | None = None,
    tail_window: int = 64,
) -> ResurgenceBracket:
    """Bracket the resurgence by a finite grid plus certified tails.

    For each ``r <= r_max`` containment is certified from a threshold
    ``T(r)`` on (by ``m >= N r``, or ``alpha-hat_lb * m > reg_ub(I^r)``).
    Cells ``r < m < T(r)`` are examined in decreasing order of ``m / r`` and
    skipped once their ratio cannot exceed the best non-containment found.
    Cells listed in ``explicit`` are always decided by computation.  Rows
    beyond ``r_max`` contribute ``(T(r) - 1) / r`` to the upper end.
    """
    wb = waldschmidt_table(cfg, m_max)
    if wb.lower is None:
        raise CertificateMissing(f"no lower Waldschmidt certificate for {cfg.label!r}")
    a = wb.lower
    prof = interpolation_profile(cfg, 1)
    reg, omega, N = prof.degree_bound, prof.omega, cfg.N
    if explicit is None:
        explicit = DEFAULT_EXPLICIT.get(cfg.kind, ())
    rows = []
    todo = []
    for r in range(2, r_max + 1):
        T, why = _threshold(N, a, reg, omega, r)
        rows.append({"r": r, "threshold": T, "criterion": why, "reg_ub": reg_upper_bound(reg, omega, r)})
        todo.extend((m, r) for m in range(r + 1, T))
    todo.sort(key=lambda c: (-Fraction(c[0], c[1]), c[1]))
    forced = [tuple(c) for c in explicit]
    cells: dict[tuple[int, int], dict] = {}
    lower = Fraction(1)
    partial = False
    witnesses: list[ContainmentReport] = []

    def absorb(cell, d):
        nonlocal lower, partial
        rep = d.pop("_report", None)
        cells[cell] = d
        if d["status"] == "partial":
            partial = True
        elif rep is not None and rep.verdict == FAILS:
            witnesses.append(rep)
            lower = max(lower, Fraction(*cell))

    pool = ThreadPoolExecutor(jobs) if jobs > 1 else None
    try:
        i = 0
        while i < len(todo):
            batch = todo[i : i + max(jobs, 1)]
            i += len(batch)
            live = [c for c in batch if Fraction(*c) > lower]
            results = list(pool.map(lambda c: _decide(cfg, *c, budget), live)) if pool else [_decide(cfg, *c, budget) for c in live]
            got = dict(zip(live, results))
            for c in batch:
                # replay the sequential pruning so output does not depend on jobs
                if Fraction(*c) <= lower:
                    cells[c] = {"m": c[0], "r": c[1], "ratio": _frac(Fraction(*c)), "status": "skipped", "reason": "ratio at most the lower bound"}
                else:
                    absorb(c, got[c])
        for c in forced:
            if cells.get(c, {}).get("status", "skipped") == "skipped":
                absorb(c, _decide(cfg, *c, budget))
    finally:
        if pool:
            pool.shutdown()
    for c in explicit:
        cells[tuple(c)]["explicit"] = True

    undecided = [Fraction(m, r) for (m, r), d in cells.items() if d["status"] == "partial"]
    upper = max([lower, *undecided])

    # rows past r_max: exact values over a window, then a decreasing bound
    R = r_max + tail_window
    tail_vals = []
    for r in range(max(r_max + 1, 2), R + 1):
        T, _ = _threshold(N, a, reg, omega, r)
        tail_vals.append(Fraction(T - 1, r))
    r_next = R + 1
    # for r > R the cell ratio is at most min(reg_ub(r) / (a r), N), which
    # decreases in r because reg >= omega
    beyond = min(Fraction(2 * reg + (r_next - 2) * omega, r_next) / a, Fraction(N))
    tail_sup = max(tail_vals + [beyond])
    upper = max(upper, tail_sup)
    tail = {"from_r": r_max + 1, "window_to": R, "window_max": _frac(max(tail_vals)), "beyond_bound": _frac(beyond), "sup": _frac(tail_sup)}

    hat_lower = Fraction(prof.alpha) / wb.upper
    hat_upper = Fraction(omega) / a
    family = None
    if family_t is not None and cfg.kind == "all-but-one":
        family = family_cell(cfg, family_t, budget)
        if family["verdict"] == FAILS:
            lower = max(lower, Fraction(family["m"], family["r"]))
    if lower > upper or hat_lower > hat_upper:
        raise AssertionError("inconsistent bracket")
    return ResurgenceBracket(lower, upper, hat_lower, hat_upper, cells, rows, tail, witnesses, partial, family)


def family_cell(cfg: PointConfiguration, t: int = 1, budget: Budget = DEFAULT_BUDGET) -> dict:
    """The non-containment ``I^((N(s-1)+1) s^(N-1) t)`` not in ``I^(s^N t + 1)``.

    The witness is ``F^((N(s-1)+1) t)`` for the hyperplane product ``F``.
    Membership in the symbolic power follows from the exact order ``s^(N-1)``
    of ``F`` at each point (orders add under products); non-membership from
    evaluation at the excluded point, which is exact for any ``t``.  The
    linear-algebra re-check runs when the witness degree is within budget.
    """
    if cfg.kind != "all-but-one":
        raise ValueError("the witness family belongs to all-but-one configurations")
    start = time.perf_counter()
    s, N = cfg.params["s"], cfg.params["N"]
    e = N * (s - 1) + 1
    m, r = e * s ** (N - 1) * t, s**N * t + 1
    F = cfg.elements()[0].element
    orders = {vanishing_order(F, pt, limit=s ** (N - 1) + 1) for pt in cfg.points}
    q = cfg.excluded_point
    checks = {
        "F_degree": F.degree() == s**N,
        "F_exact_order": orders == {s ** (N - 1)},
        "F_nonzero_at_q": bool(F.evaluate(q.coords)),
        "witness_degree_below_r_reg": e * t * s**N < r * regularity_interpolation(cfg),
        "low_degree_generators_vanish_at_q": all(
            g.degree() >= regularity_interpolation(cfg) or not g.evaluate(q.coords) for g in cfg.ideal().generators
        ),
    }
    deg = e * t * s**N
    if budget.max_degree is None or deg <= budget.max_degree:
        W = F ** (e * t)
        checks["linear_not_in_power"] = not _slice_contains(cfg, W, r)
    else:
        checks["linear_not_in_power"] = None
    ok = all(v is not False for v in checks.values())
    return {
        "t": t,
        "m": m,
        "r": r,
        "ratio": _frac(Fraction(m, r)),
        "witness": f"F^{e * t}",
        "witness_degree": deg,
        "verdict": FAILS if ok else "undecided",
        "checks": checks,
        "timing": round(time.perf_counter() - start, 4),
    }


# ---------------------------------------------------------------------------
# theorem ledgers


def fermat_hilbert_burch(n: int, d: int) -> int:
    """``HF(R/I, d)`` predicted by the Hilbert-Burch resolution of the Fermat point ideal."""
    def c2(k: int) -> int:
        return comb(k, 2) if k >= 2 else 0

    return comb(d + 2, 2) - 3 * c2(d - n + 1) + c2(d - 2 * n + 2) + c2(d - n - 1)


@dataclass
class Check:
    name: str
    statement: str
    verdict: str
    value: object = None
    witness: str | None = None
    timing: float = 0.0

    def as_dict(self, timings: bool = True) -> dict:
        out = {"name": self.name, "statement": self.statement, "verdict": self.verdict}
        if self.value is not None:
            out["value"] = self.value
        if self.witness is not None:
            out["witness"] = self.witness
        if timings:
            out["timing"] = round(self.timing, 4)
        return out


@dataclass
class Ledger:
    config: str
    field: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    bracket: ResurgenceBracket | None = None

    @property
    def passed(self) -> bool:
        return all(c.verdict == "pass" for c in self.checks)

    @property
    def partial(self) -> bool:
        return any(c.verdict == "partial" for c in self.checks)

    def check(self, name: str, statement: str, fn: Callable[[], tuple]) -> Check:
        """Run ``fn`` returning ``(ok, value[, witness])``; ResourceCap marks it partial."""
        start = time.perf_counter()
        try:
            res = fn()
            ok, value = res[0], res[1]
            witness = res[2] if len(res) > 2 else None
            verdict = "pass" if ok else "fail"
        except ResourceCap as exc:
            verdict, value, witness = "partial", str(exc), None
        c = Check(name, statement, verdict, value, witness, time.perf_counter() - start)
        self.checks.append(c)
        return c

    def as_dict(self, timings: bool = True) -> dict:
        from . import __version__

        out = {
            "config": self.config,
            "field": self.field,
            "params": self.params,
            "version": __version__,
            "checks": [c.as_dict(timings) for c in self.checks],
            "passed": self.passed,
            "partial": self.partial,
        }
        if self.bracket is not None:
            out["bracket"] = self.bracket.as_dict(timings)
        return out


def _bracket_checks(ledger: Ledger, cfg: PointConfiguration, wald, hat, rho, r_max, budget, jobs) -> None:
    state = {}

    def wald_fn():
        wb = waldschmidt_table(cfg, 3)
        state["wb"] = wb
        return (wb.lower, wb.upper) == wald, {"lower": _frac(wb.lower), "upper": _frac(wb.upper), "alpha_3": wb.rows[2][1]}

    ledger.check("waldschmidt", f"Waldschmidt bracket is [{_frac(wald[0])}, {_frac(wald[1])}]", wald_fn)

    def hat_fn():
        lo, hi = asymptotic_bracket(cfg, state.get("wb"))
        return (lo, hi) == hat, [_frac(lo), _frac(hi)]

    ledger.check("asymptotic-bracket", f"asymptotic resurgence bracket is [{_frac(hat[0])}, {_frac(hat[1])}]", hat_fn)

    def rho_fn():
        br = resurgence_bracket(cfg, r_max, budget=budget, jobs=jobs)
        ledger.bracket = br
        if br.partial:
            raise ResourceCap("bracket is partial")
        return (br.lower, br.upper) == rho, [_frac(br.lower), _frac(br.upper)]

    ledger.check("resurgence-bracket", f"resurgence bracket is [{_frac(rho[0])}, {_frac(rho[1])}] over r <= {r_max}", rho_fn)


def _containment_check(ledger, cfg, m, r, expect, budget, name=None, witness_name=None, **kw):
    def fn():
        rep = check_containment(cfg, m, r, budget=budget, **kw)
        ok = rep.verdict == expect
        if expect == FAILS and witness_name is not None:
            ok = ok and rep.witness_name == witness_name
        return ok, rep.as_dict(timings=False), _fmt(rep.witness)

    word = "is contained in" if expect == HOLDS else "is not contained in"
    ledger.check(name or f"containment-{m}-{r}", f"I^({m}) {word} I^{r}", fn)


def _fermat_ledger(n: int, p: int, budget: Budget, jobs: int) -> Ledger:
    from .fields import GF, is_prime

    if n < 3:
        raise HypothesisViolated("n >= 3")
    if not is_prime(p) or p == 2:
        raise HypothesisViolated("the field must be F_p with p an odd prime")
    if (p - 1) % n:
        raise HypothesisViolated(f"n | p - 1 (so F_{p} has the n-th roots of unity)")
    cfg = fermat_config(n, GF(p))
    led = Ledger(cfg.label, str(cfg.field), {"theorem": "fermat", "n": n, "p": p})
    prof = interpolation_profile(cfg, 1)
    I = cfg.ideal()
    led.check("points", f"{n * n + 3} distinct points", lambda: (len(cfg) == n * n + 3, len(cfg)))
    led.check(
        "generators",
        f"3 minimal generators, all of degree {n + 1}",
        lambda: (prof.generator_degrees() == {n + 1: 3}, {str(k): v for k, v in prof.generator_degrees().items()}),
    )
    led.check("alpha-omega", f"alpha(I) = omega(I) = {n + 1}", lambda: ((prof.alpha, prof.omega) == (n + 1, n + 1), [prof.alpha, prof.omega]))
    hb_reg = 1 + next(d for d in range(4 * n) if fermat_hilbert_burch(n, d) == n * n + 3)
    led.check("regularity", f"reg(I) = {hb_reg}", lambda: (regularity_interpolation(cfg) == hb_reg == prof.degree_bound, regularity_interpolation(cfg)))

    def hb():
        top = 2 * n + 2
        vals = [(hilbert_function(I, d), points_hilbert_function(cfg, d), fermat_hilbert_burch(n, d)) for d in range(top + 1)]
        return all(a == b == c for a, b, c in vals), [v[0] for v in vals]

    led.check("hilbert-burch", f"HF(R/I, d) matches the Hilbert-Burch formula for d <= {2 * n + 2}", hb)
    led.check(
        "complete-intersection",
        f"I lies in the complete intersection (y^{n} - z^{n}, z^{n} - x^{n})",
        lambda: (True, _verify_ci(cfg, cfg.lower_certificate)),
    )
    _containment_check(led, cfg, 3, 2, FAILS, budget, witness_name="difference product")
    _containment_check(led, cfg, 5, 3, HOLDS, budget, try_candidates=False)
    led.check("alpha-3", f"alpha(I^(3)) = {3 * n}", lambda: (alpha_interpolation(cfg, 3 * (n + 1), 3) == 3 * n, alpha_interpolation(cfg, 3 * (n + 1), 3)))
    F = lambda a, b: (Fraction(a, b), Fraction(a, b))
    _bracket_checks(led, cfg, (Fraction(n), Fraction(n)), F(n + 1, n), F(3, 2), 4, budget, jobs)
    return led


def _chmn_ledger(t, field_spec, budget: Budget, jobs: int, full: bool = True) -> Ledger:
    try:
        cfg = chmn_config(t, field_spec)
    except DegenerateParameter as exc:
        raise HypothesisViolated(str(exc)) from exc
    led = Ledger(cfg.label, str(cfg.field), {"theorem": "chmn", "t": cfg.params["t"]})
    prof = interpolation_profile(cfg, 1)
    led.check("points", "19 distinct points", lambda: (len(cfg) == 19, len(cfg)))

    def audit():
        a = incidence_audit(cfg)
        return a.passed and len(a.conics) == len(CHMN_CONICS), a.as_dict()

    led.check("incidence", "19 triple points on 12 lines, each line with at least 4 points, 10 conic sextuples", audit)
    led.check("alpha-omega", "alpha(I) = omega(I) = 5", lambda: ((prof.alpha, prof.omega) == (5, 5), [prof.alpha, prof.omega]))
    led.check("regularity", "reg(I) = 7", lambda: (regularity_interpolation(cfg) == 7, regularity_interpolation(cfg)))
    led.check(
        "hilbert-function",
        "HF(R/I, 5) = 18 and HF(R/I, 6) = 19",
        lambda: ((points_hilbert_function(cfg, 5), points_hilbert_function(cfg, 6)) == (18, 19), [points_hilbert_function(cfg, 5), points_hilbert_function(cfg, 6)]),
    )
    _containment_check(led, cfg, 3, 2, FAILS, budget, witness_name="line product")
    if not full:
        return led

    def descent():
        cert = bezout_descent_certify(cfg, 4)
        return (cert.points_per_line, cert.lines_per_point, cert.num_lines) == (4, 3, 12), {
            "k": cert.points_per_line, "c": cert.lines_per_point, "L": cert.num_lines, "base_alphas": list(cert.base_alphas)
        }

    led.check("bezout-descent", "line descent certifies alpha(I^(m)) >= 4m for all m", descent)
    led.check("alpha-3", "alpha(I^(3)) = 12", lambda: (alpha_interpolation(cfg, 15, 3) == 12, alpha_interpolation(cfg, 15, 3)))
    F = lambda a, b: (Fraction(a, b), Fraction(a, b))
    _bracket_checks(led, cfg, (Fraction(4), Fraction(4)), F(5, 4), F(3, 2), 4, budget, jobs)
    return led


def _reg_ledger(s: int, N: int) -> Ledger:
    from .fields import is_prime

    if not is_prime(s):
        raise HypothesisViolated("s must be prime (prime fields only)")
    if N < 2:
        raise HypothesisViolated("N >= 2")
    cfg = all_but_one_config(s, N)
    led = Ledger(cfg.label, str(cfg.field), {"theorem": "reg-lemma", "s": s, "N": N})
    count = (s ** (N + 1) - 1) // (s - 1) - 1
    led.check("points", f"{count} points", lambda: (len(cfg) == count, len(cfg)))
    want = N * (s - 1) + 1
    led.check("regularity", f"reg(I) = N(s-1)+1 = {want}", lambda: (regularity_interpolation(cfg) == want, regularity_interpolation(cfg)))
    return led


FINITE_FIELD_CASES = ("i", "ii", "iii")


def finite_field_case(case: str, s: int, N: int) -> tuple[int, int]:
    """``(m, r)`` with ``m = N r - (N - 1)`` for a case, or HypothesisViolated."""
    from .fields import is_prime

    p = s
    if not is_prime(p):
        raise HypothesisViolated("s must be a prime p (prime fields only)")
    if case == "i":
        if not (p > 2 and N == 2):
            raise HypothesisViolated("case (i) needs p > 2 and N = 2")
        r = (s + 1) // 2
    elif case == "ii":
        if not (p > 2 and 2 * N == p + 1):
            raise HypothesisViolated("case (ii) needs s = p > 2 and N = (p+1)/2")
        r = 2
    elif case == "iii":
        if not (p > (N - 1) ** 2 and p % N == 1 % N):
            raise HypothesisViolated("case (iii) needs s = p > (N-1)^2 and p = 1 mod N")
        r = (p + N - 1) // N
    else:
        raise HypothesisViolated(f"unknown case {case!r}")
    return N * r - (N - 1), r


def _finite_field_ledger(s: int, N: int, cases: Sequence[str] | None, budget: Budget, jobs: int, family_t: int | None) -> Ledger:
    if cases is None:
        cases = []
        for c in FINITE_FIELD_CASES:
            try:
                finite_field_case(c, s, N)
                cases.append(c)
            except HypothesisViolated:
                pass
        if not cases:
            raise HypothesisViolated(f"none of the cases (i)-(iii) applies to s = {s}, N = {N}")
    cells = {c: finite_field_case(c, s, N) for c in cases}
    cfg = all_but_one_config(s, N)
    led = Ledger(cfg.label, str(cfg.field), {"theorem": "finite-field", "s": s, "N": N, "cases": list(cases)})
    reg = N * (s - 1) + 1
    led.check("regularity", f"reg(I) = {reg}", lambda: (regularity_interpolation(cfg) == reg, regularity_interpolation(cfg)))

    def hyper():
        F = hyperplane_product_avoiding(cfg)
        return F.degree() == s**N, {"degree": F.degree(), "order": s ** (N - 1)}

    led.check("hyperplane-product", f"F has degree {s ** N} and order exactly {s ** (N - 1)} at every point", hyper)
    F = cfg.elements()[0].element
    for case, (m, r) in cells.items():
        def fn(m=m, r=r):
            if not in_symbolic_power(cfg, F, m):
                return False, "F not in the symbolic power"
            out = not_in_power(cfg, F, r, budget)
            ok = bool(out["evaluation"] or out["linear"]) and out["linear"] is not False and out["groebner"] is not False
            return ok, out, _fmt(F) if F.degree() <= 30 else f"F (degree {F.degree()})"

        led.check(f"case-{case}", f"F in I^({m}) and F not in I^{r}, so I^({m}) is not contained in I^{r}", fn)
    if N == 2 and s <= 3:
        s_ = Fraction(s)
        _bracket_checks_ff(led, cfg, s_, budget, jobs, family_t)
    elif family_t is not None:
        led.check("family", f"witness family at t = {family_t}", lambda: (family_cell(cfg, family_t, budget)["verdict"] == FAILS, family_cell(cfg, family_t, budget)))
    return led


def _bracket_checks_ff(led, cfg, s, budget, jobs, family_t) -> None:
    def wald():
        wb = waldschmidt_table(cfg, 3)
        return (wb.lower, wb.upper) == (s, s), wb.as_dict()

    led.check("waldschmidt", f"Waldschmidt bracket is [{s}, {s}]", wald)
    N = cfg.N
    target = Fraction(N * (int(s) - 1) + 1, int(s))

    def rho():
        br = resurgence_bracket(cfg, 3, budget=budget, jobs=jobs, family_t=family_t)
        led.bracket = br
        if br.partial:
            raise ResourceCap("bracket is partial")
        if br.family is not None:
            led.check(
                "family",
                f"I^({br.family['m']}) is not contained in I^{br.family['r']} (witness family, t = {family_t})",
                lambda: (br.family["verdict"] == FAILS, br.family["checks"], br.family["witness"]),
            )
        return br.lower <= target <= br.upper and br.hat_lower <= br.upper, [_frac(br.lower), _frac(br.upper), _frac(br.hat_lower), _frac(br.hat_upper)]

    led.check("resurgence-bracket", f"certified brackets are consistent with rho = {_frac(target)}", rho)


def verify_theorem(
    name: str,
    *,
    n: int | None = None,
    p: int | None = None,
    t=None,
    field_spec=None,
    s: int | None = None,
    N: int | None = None,
    cases: Sequence[str] | None = None,
    budget: Budget = DEFAULT_BUDGET,
    jobs: int = 1,
    family_t: int | None = None,
) -> Ledger:
    """Run the evidence list for ``fermat``, ``chmn``, ``reg-lemma`` or ``finite-field``."""
    if name == "fermat":
        return _fermat_ledger(n, p, budget, jobs)
    if name == "chmn":
        return _chmn_ledger(t, field_spec, budget, jobs)
    if name == "reg-lemma":
        return _reg_ledger(s, N)
    if name == "finite-field":
        return _finite_field_ledger(s, N, cases, budget, jobs, family_t)
    raise ValueError(f"unknown theorem {name!r}")
