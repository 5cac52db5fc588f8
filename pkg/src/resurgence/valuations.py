"""Monomial valuations, values on ideals, and skew Waldschmidt constants.

Only monomial valuations (nonnegative integer weight vectors) are supported:
they suffice for every monomial-ideal computation here, but suprema taken
"over all valuations" are therefore suprema over the monomial class and are
labeled as such by callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Tuple

from . import families as fam
from .closures import minimal_covers
from .errors import CapabilityError, DimensionError, DomainError
from .monomials import Monomial, MonomialIdeal
from .polyhedra import HalfSpace, LinearProgram, lp_minimize


@dataclass(frozen=True)
class MonomialValuation:
    """v(x^a) = <weights, a> for a nonnegative, not-all-zero weight vector."""

    weights: Tuple[int, ...]

    def __post_init__(self):
        if not self.weights or all(w == 0 for w in self.weights):
            raise DomainError("valuation weights must not be all zero")
        if any(w < 0 for w in self.weights):
            raise DomainError("valuation weights must be nonnegative")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @property
    def is_primitive(self) -> bool:
        g = 0
        for w in self.weights:
            g = gcd(g, w)
        return g == 1

    def of_monomial(self, m: Monomial) -> int:
        if len(m) != len(self.weights):
            raise DimensionError("monomial and valuation dimensions differ")
        return sum(w * e for w, e in zip(self.weights, m))

    def of_ideal(self, ideal: MonomialIdeal) -> int:
        """min over minimal generators (valid since the weights are >= 0)."""
        value, _ = self.of_ideal_with_argmin(ideal)
        return value

    def of_ideal_with_argmin(self, ideal: MonomialIdeal) -> Tuple[int, Monomial]:
        if ideal.nvars != len(self.weights):
            raise DimensionError("ideal and valuation dimensions differ")
        if ideal.is_zero():
            raise DomainError("the zero ideal has no valuation value")
        view = ideal.view_kind
        if view == "closure":
            _, base, _poly, scale = ideal._view
            value, arg = self.of_ideal_with_argmin(base)
            return scale * value, tuple(scale * e for e in arg)
        best = None
        arg = None
        for g in ideal.generators:
            v = self.of_monomial(g)
            if best is None or v < best:
                best, arg = v, g
        return best, arg


def degree_valuation(nvars: int) -> MonomialValuation:
    """Weights (1,..,1): realizes the classical Waldschmidt constant."""
    return MonomialValuation((1,) * nvars)


def value_of_monomial(v: MonomialValuation, m) -> int:
    return v.of_monomial(tuple(m))


def value_of_ideal(v: MonomialValuation, ideal: MonomialIdeal) -> int:
    return v.of_ideal(ideal)


@dataclass(frozen=True)
class WaldschmidtResult:
    """Skew Waldschmidt constant v^(family) = lim v(a_n)/n = inf v(a_n)/n.

    certified means lower == upper == the exact constant.  The 'window'
    method only bounds the infimum from above by a finite prefix; no lower
    bound is invented, so `lower` is None there.
    """

    upper: Fraction
    lower: Optional[Fraction]
    certified: bool
    method: str  # "closed-form" | "lp" | "veronese" | "window"
    window: Optional[int] = None
    dual: Optional[tuple] = None

    @property
    def value(self) -> Fraction:
        return self.upper


def skew_waldschmidt(v: MonomialValuation, family: fam.GradedFamily, window: int = 12,
                     kmax: int = 6) -> WaldschmidtResult:
    """Dispatch by family kind.

    powers / power-pattern / closures thereof: exact slope * v(I);
    symbolic: exact via the fractional-cover LP; families with a verified
    standard Veronese index k: exact v(a_k)/k; otherwise a window upper
    bound inf_{n <= window} v(a_n)/n, explicitly uncertified.
    """
    if window < 1:
        raise DomainError("window must be positive")
    sem = family.power_semantics()
    if sem is not None and sem[1].subadditive and not sem[0].is_zero():
        base, fn, _closed = sem
        if base.is_unit():
            exact = Fraction(0)
        else:
            exact = fn.slope * v.of_ideal(base)
        return WaldschmidtResult(exact, exact, True, "closed-form")
    if family.kind == "symbolic":
        return _symbolic_waldschmidt(v, family.ideal)
    if family.kind == "closure_of":
        inner = skew_waldschmidt(v, family.inner, window=window, kmax=kmax)
        # monomial valuations do not see the integral closure
        return inner
    if family.kind == "veronese":
        inner = skew_waldschmidt(v, family.inner, window=window, kmax=kmax)
        scaled = inner.upper * family.step
        return WaldschmidtResult(scaled, None if inner.lower is None else inner.lower * family.step,
                                 inner.certified, inner.method, inner.window, inner.dual)
    k, report = fam.find_standard_veronese(family, kmax, min(window, 8))
    if k is not None:
        exact = Fraction(v.of_ideal(family.member(k)), k)
        return WaldschmidtResult(exact, exact, True, "veronese", window=report.horizon)
    upper = None
    for n in range(1, window + 1):
        member = family.member(n)
        if member.is_zero():
            raise CapabilityError(f"family member {n} is the zero ideal; no value")
        q = Fraction(v.of_ideal(member), n)
        if upper is None or q < upper:
            upper = q
    return WaldschmidtResult(upper, None, False, "window", window=window)


def _symbolic_waldschmidt(v: MonomialValuation, ideal: MonomialIdeal) -> WaldschmidtResult:
    """Exact constant for symbolic powers: minimize <w, y> over the fractional
    vertex covers {y >= 0 : sum_{i in C} y_i >= 1 for every minimal cover C}."""
    covers = minimal_covers(ideal)
    constraints = tuple(HalfSpace(tuple(c), 1) for c in covers)
    lp = LinearProgram(tuple(Fraction(w) for w in v.weights), constraints, nonneg=True)
    res = lp_minimize(lp)
    if not res.is_optimal:  # pragma: no cover - the cover LP is always feasible & bounded
        raise AssertionError(f"cover LP returned {res.status}")
    return WaldschmidtResult(res.optimum, res.optimum, True, "lp", dual=res.dual)
