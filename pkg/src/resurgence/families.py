"""Graded families of monomial ideals: constructors, lazy cached members,
and finite-window validation of the graded / filtration / standard-Veronese /
base-equivalence hypotheses.

Members obey the global conventions member(0) = S and member(i) = (0) for
i < 0.  Validation is always finite-window: a report either carries a
structural certificate (true by construction of the kind) or a window
certificate with its horizon; the library never asserts an infinite
hypothesis from finitely many members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Tuple

from . import closures
from .errors import DomainError, FamilyRangeError
from .monomials import MonomialIdeal
from .rationals import ceil_frac


# ---------------------------------------------------------------------------
# index functions: the exponent vocabulary for power-pattern families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexFunction:
    """A nonnegative, nondecreasing exponent rule n -> e(n).

    kinds: 'affine' a*n + b; 'ceil_mul' ceil(ratio*n) + offset;
    'ceil_sqrt' ceil(sqrt(n)); 'ceil_log2p1' ceil(log2(n + 1)).
    """

    kind: str
    a: Fraction = Fraction(0)
    b: int = 0

    def __call__(self, n: int) -> int:
        if self.kind == "affine":
            value = int(self.a) * n + self.b
        elif self.kind == "ceil_mul":
            value = ceil_frac(self.a * n) + self.b
        elif self.kind == "ceil_sqrt":
            value = 0 if n <= 0 else math.isqrt(n - 1) + 1
        elif self.kind == "ceil_log2p1":
            value = max(n, 0).bit_length()
        else:  # pragma: no cover
            raise DomainError(f"unknown index function {self.kind!r}")
        if value < 0:
            raise DomainError(f"index function produced a negative exponent at n={n}")
        return value

    @property
    def slope(self) -> Fraction:
        """Exact limit of e(n)/n."""
        return self.a if self.kind in ("affine", "ceil_mul") else Fraction(0)

    @property
    def subadditive(self) -> bool:
        """e(p+q) <= e(p) + e(q) for all p, q >= 1 (makes the family graded)."""
        if self.kind in ("affine", "ceil_mul"):
            return self.b >= 0
        return True  # ceil(sqrt) and ceil(log2(n+1)) are subadditive

    @property
    def pure_slope(self) -> bool:
        """True when e(n) = ceil(slope * n) exactly (no offset)."""
        return self.kind in ("affine", "ceil_mul") and self.b == 0 and self.a > 0


def affine(a: int, b: int = 0) -> IndexFunction:
    if a < 0:
        raise DomainError("index functions must be nondecreasing")
    return IndexFunction("affine", Fraction(a), b)


def ceil_mul(ratio: Fraction, offset: int = 0) -> IndexFunction:
    ratio = Fraction(ratio)
    if ratio < 0:
        raise DomainError("index functions must be nondecreasing")
    return IndexFunction("ceil_mul", ratio, offset)


def ceil_sqrt() -> IndexFunction:
    return IndexFunction("ceil_sqrt")


def ceil_log2p1() -> IndexFunction:
    return IndexFunction("ceil_log2p1")


# ---------------------------------------------------------------------------
# ideal expressions (periodic patterns, table tails, recurrences)
# ---------------------------------------------------------------------------


class Expr:
    """Ideal-valued expression evaluated at a member index n.

    Leaves are named base ideals or shifted references to other families;
    nodes are sums, products, and powers with IndexFunction exponents.
    """

    def evaluate(self, n: int, env: "Environment") -> MonomialIdeal:
        raise NotImplementedError

    def depends_on_index(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Base(Expr):
    name: str

    def evaluate(self, n, env):
        return env.ideal(self.name)

    def depends_on_index(self):
        return False


@dataclass(frozen=True)
class Ref(Expr):
    """Member of another family at index n + shift (conventions apply)."""

    family: str
    shift: int = 0

    def evaluate(self, n, env):
        return env.family(self.family).member(n + self.shift)

    def depends_on_index(self):
        return True


@dataclass(frozen=True)
class Product(Expr):
    factors: Tuple[Expr, ...]

    def evaluate(self, n, env):
        result = None
        for f in self.factors:
            ideal = f.evaluate(n, env)
            result = ideal if result is None else result.multiply(ideal)
        return result

    def depends_on_index(self):
        return any(f.depends_on_index() for f in self.factors)


@dataclass(frozen=True)
class Sum(Expr):
    terms: Tuple[Expr, ...]

    def evaluate(self, n, env):
        result = None
        for t in self.terms:
            ideal = t.evaluate(n, env)
            result = ideal if result is None else result.add(ideal)
        return result

    def depends_on_index(self):
        return any(t.depends_on_index() for t in self.terms)


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: IndexFunction

    def evaluate(self, n, env):
        return self.base.evaluate(n, env).power(self.exponent(n))

    def depends_on_index(self):
        return self.base.depends_on_index() or not (
            self.exponent.kind == "affine" and self.exponent.a == 0
        )


class Environment:
    """Named base ideals and families available to expressions."""

    def __init__(self, ideals: Mapping[str, MonomialIdeal] | None = None,
                 families: Mapping[str, "GradedFamily"] | None = None):
        self._ideals = dict(ideals or {})
        self._families = dict(families or {})

    def ideal(self, name: str) -> MonomialIdeal:
        if name not in self._ideals:
            raise FamilyRangeError(f"unknown ideal name {name!r}")
        return self._ideals[name]

    def family(self, name: str) -> "GradedFamily":
        if name not in self._families:
            raise FamilyRangeError(f"unknown family name {name!r}")
        return self._families[name]

    def bind_family(self, name: str, fam: "GradedFamily"):
        self._families[name] = fam


# ---------------------------------------------------------------------------
# graded families
# ---------------------------------------------------------------------------


class GradedFamily:
    """A lazily evaluated family {a_i} of monomial ideals.

    member() is a pure function of (kind, n); computed members are cached and
    never mutated (single writer per index, any number of readers).
    """

    def __init__(self, kind: str, nvars: int, *, ideal=None, fn=None, inner=None,
                 step=None, period=None, patterns=None, prefix=None, tail=None,
                 expr=None, env=None, func=None, name=None):
        self.kind = kind
        self.nvars = nvars
        self.ideal = ideal
        self.fn = fn
        self.inner = inner
        self.step = step
        self.period = period
        self.patterns = patterns
        self.prefix = prefix
        self.tail = tail
        self.expr = expr
        self.env = env
        self.func = func
        self.name = name
        self._cache: dict[int, MonomialIdeal] = {}

    # -- member access -------------------------------------------------------

    def member(self, n: int) -> MonomialIdeal:
        if n < 0:
            return MonomialIdeal.zero(self.nvars)
        if n == 0:
            return MonomialIdeal.unit(self.nvars)
        got = self._cache.get(n)
        if got is None:
            got = self._compute(n)
            self._cache[n] = got
        return got

    def _compute(self, n: int) -> MonomialIdeal:
        kind = self.kind
        if kind == "powers":
            return self.ideal.power(n)
        if kind == "power_fn":
            return self.ideal.power(self.fn(n))
        if kind == "symbolic":
            return closures.symbolic_power(self.ideal, n)
        if kind == "closure_of":
            sem = self.inner.power_semantics()
            if sem is not None and not sem[2] and not sem[0].is_zero():
                base, fn, _ = sem
                e = fn(n)
                return MonomialIdeal.unit(self.nvars) if e == 0 else closures.integral_closure(base, e)
            inner_member = self.inner.member(n)
            if inner_member.is_zero() or inner_member.is_unit():
                return inner_member
            return closures.integral_closure(inner_member, 1)
        if kind == "veronese":
            return self.inner.member(self.step * n)
        if kind == "periodic":
            expr = self.patterns[n % self.period]
            return expr.evaluate(n, self.env)
        if kind == "table":
            if n <= len(self.prefix):
                return self.prefix[n - 1]
            if self.tail is None:
                raise FamilyRangeError(f"table family has no member at index {n} and no tail rule")
            return self.tail.evaluate(n, self.env)
        if kind == "expression":
            return self.expr.evaluate(n, self.env)
        if kind == "custom":
            return self.func(n)
        raise DomainError(f"unknown family kind {kind!r}")  # pragma: no cover

    # -- structure predicates --------------------------------------------------

    def power_semantics(self):
        """(base ideal, exponent rule, closed?) when members are I^e(n) or
        their integral closures; None otherwise."""
        if self.kind == "powers":
            return (self.ideal, affine(1), False)
        if self.kind == "power_fn":
            return (self.ideal, self.fn, False)
        if self.kind == "closure_of":
            sem = self.inner.power_semantics()
            if sem is not None and not sem[2]:
                return (sem[0], sem[1], True)
        return None

    @property
    def is_structural_filtration(self) -> bool:
        if self.kind in ("powers", "symbolic"):
            return True
        if self.kind == "power_fn":
            return True  # index functions are nondecreasing by construction
        if self.kind in ("closure_of", "veronese"):
            return self.inner.is_structural_filtration
        return False

    @property
    def is_structural_graded(self) -> bool:
        if self.kind in ("powers", "symbolic"):
            return True
        if self.kind == "power_fn":
            return self.fn.subadditive
        if self.kind in ("closure_of", "veronese"):
            return self.inner.is_structural_graded
        return False

    def structural_veronese_k(self) -> Optional[int]:
        """A k with member(k*n) = member(k)^n for all n, exactly by construction."""
        if self.kind == "powers":
            return 1
        if self.kind == "power_fn" and self.fn.pure_slope:
            return self.fn.slope.denominator
        if self.kind == "veronese":
            return self.inner.structural_veronese_k()
        return None

    def base_equivalence(self) -> Optional[Tuple[MonomialIdeal, closures.EquivalenceConstant]]:
        """(base ideal b, shift certificate) when the family is structurally
        b-equivalent: ordinary powers (k = 0) or closures of powers
        (Briancon-Skoda)."""
        if self.kind == "powers":
            if not self.ideal.is_proper():
                return None
            return (self.ideal, closures.bequiv_constant("powers", self.ideal))
        if self.kind == "closure_of" and self.inner.kind == "powers":
            base = self.inner.ideal
            if not base.is_proper():
                return None
            return (base, closures.bequiv_constant("closure_powers", base))
        return None

    def members_integrally_closed(self) -> bool:
        """Structurally true when every member equals its integral closure."""
        if self.kind == "closure_of":
            return True
        if self.kind == "symbolic":
            return True  # intersections of powers of monomial primes
        if self.kind == "veronese":
            return self.inner.members_integrally_closed()
        return False

    def eventually_constant(self) -> Optional[Tuple[int, MonomialIdeal]]:
        """(d0, C) with member(d) = C for all d >= d0, when provable."""
        if self.kind == "power_fn" and self.fn.kind == "affine" and self.fn.a == 0:
            return (1, self.member(1))
        if self.kind == "table" and self.tail is not None and not self.tail.depends_on_index():
            d0 = len(self.prefix) + 1
            return (d0, self.member(d0))
        if self.kind == "closure_of":
            inner = self.inner.eventually_constant()
            if inner is not None and inner[1].is_proper():
                return (inner[0], closures.integral_closure(inner[1], 1))
            return inner
        return None

    def value_rule(self, weights: Tuple[int, ...]) -> Optional[Callable[[int], int]]:
        """Closed-form n -> v(member(n)) when the kind supports one."""
        sem = self.power_semantics()
        if sem is not None:
            base, fn, _closed = sem
            if base.is_zero():
                return None
            v_base = min(sum(w * e for w, e in zip(weights, g)) for g in base.generators)
            return lambda n: fn(n) * v_base
        if self.kind == "veronese":
            inner = self.inner.value_rule(weights)
            if inner is not None:
                step = self.step
                return lambda n: inner(step * n)
        return None

    def __repr__(self):
        label = self.name or self.kind
        return f"GradedFamily({label})"


# -- constructors -------------------------------------------------------------


def powers(ideal: MonomialIdeal, name=None) -> GradedFamily:
    return GradedFamily("powers", ideal.nvars, ideal=ideal, name=name)


def power_pattern(ideal: MonomialIdeal, fn: IndexFunction, name=None) -> GradedFamily:
    return GradedFamily("power_fn", ideal.nvars, ideal=ideal, fn=fn, name=name)


def ceiling(ideal: MonomialIdeal, alpha: Fraction, name=None) -> GradedFamily:
    """The family I^(ceil(alpha * n)) for an exact rational alpha > 0.

    Irrational scaling rules are approximated by a caller-chosen rational;
    exactness is only ever claimed for the rational actually supplied.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("ceiling families need alpha > 0")
    return power_pattern(ideal, ceil_mul(alpha), name=name)


def constant(ideal: MonomialIdeal, name=None) -> GradedFamily:
    return power_pattern(ideal, affine(0, 1), name=name)


def symbolic(ideal: MonomialIdeal, name=None) -> GradedFamily:
    return GradedFamily("symbolic", ideal.nvars, ideal=ideal, name=name)


def closure_of(family: GradedFamily, name=None) -> GradedFamily:
    return GradedFamily("closure_of", family.nvars, inner=family, name=name)


def closure_powers(ideal: MonomialIdeal, name=None) -> GradedFamily:
    return closure_of(powers(ideal), name=name)


def veronese(family: GradedFamily, k: int, name=None) -> GradedFamily:
    if k < 1:
        raise DomainError("Veronese step must be positive")
    return GradedFamily("veronese", family.nvars, inner=family, step=k, name=name)


def periodic(nvars: int, period: int, patterns: Mapping[int, Expr], env: Environment,
             name=None) -> GradedFamily:
    if period < 1 or set(patterns) != set(range(period)):
        raise DomainError("periodic family needs one pattern per residue class 0..period-1")
    return GradedFamily("periodic", nvars, period=period, patterns=dict(patterns), env=env, name=name)


def table(nvars: int, prefix: Sequence[MonomialIdeal], tail: Optional[Expr] = None,
          env: Optional[Environment] = None, name=None) -> GradedFamily:
    return GradedFamily("table", nvars, prefix=tuple(prefix), tail=tail,
                        env=env or Environment(), name=name)


def expression(nvars: int, expr: Expr, env: Environment, name=None) -> GradedFamily:
    return GradedFamily("expression", nvars, expr=expr, env=env, name=name)


def from_function(nvars: int, func: Callable[[int], MonomialIdeal], name=None) -> GradedFamily:
    """Library-only escape hatch: members computed by an arbitrary function."""
    return GradedFamily("custom", nvars, func=func, name=name)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    """Outcome of a finite-window hypothesis check.

    holds=False always carries an independently checkable counterexample;
    holds=True is either 'structural' (true by construction) or a 'window'
    certificate valid up to `horizon` only.
    """

    property: str
    horizon: int
    holds: bool
    certificate: str = "window"
    params: dict = field(default_factory=dict)
    counterexample: Optional[dict] = None

    def describe(self) -> str:
        status = "holds" if self.holds else "fails"
        return f"{self.property}{self.params or ''} {status} ({self.certificate}, horizon {self.horizon})"


def validate_graded(family: GradedFamily, horizon: int) -> ValidationReport:
    """Check a_p a_q <= a_(p+q) for all p + q <= horizon."""
    if family.is_structural_graded:
        return ValidationReport("graded", horizon, True, "structural")
    for p in range(1, horizon):
        for q in range(p, horizon - p + 1):
            product = family.member(p).multiply(family.member(q))
            witness = product.witness_not_in(family.member(p + q))
            if witness is not None:
                return ValidationReport(
                    "graded", horizon, False,
                    counterexample={"indices": (p, q), "witness": witness},
                )
    return ValidationReport("graded", horizon, True)


def validate_filtration(family: GradedFamily, horizon: int) -> ValidationReport:
    """Check a_(p+1) <= a_p for all p < horizon."""
    if family.is_structural_filtration:
        return ValidationReport("filtration", horizon, True, "structural")
    for p in range(1, horizon):
        witness = family.member(p + 1).witness_not_in(family.member(p))
        if witness is not None:
            return ValidationReport(
                "filtration", horizon, False,
                counterexample={"indices": (p + 1, p), "witness": witness},
            )
    return ValidationReport("filtration", horizon, True)


def is_standard_veronese(family: GradedFamily, k: int, horizon: int) -> ValidationReport:
    """Check member(k*n) == member(k)^n (equal minimal generators) for n <= horizon."""
    params = {"k": k}
    sk = family.structural_veronese_k()
    if sk is not None and k % sk == 0:
        return ValidationReport("standard_veronese", horizon, True, "structural", params)
    bk = family.member(k)
    for n in range(1, horizon + 1):
        left = family.member(k * n)
        right = bk.power(n)
        if left != right:
            witness = left.witness_not_in(right) or right.witness_not_in(left)
            return ValidationReport(
                "standard_veronese", horizon, False, "window", params,
                counterexample={"indices": (k * n, n), "witness": witness},
            )
    return ValidationReport("standard_veronese", horizon, True, "window", params)


def find_standard_veronese(family: GradedFamily, kmax: int, horizon: int):
    """Smallest k <= kmax passing is_standard_veronese, with its report.

    Noetherian families admit some such k but no bound is known a priori;
    a miss up to kmax is reported as a failure to find, never as evidence
    of non-Noetherianity.
    """
    sk = family.structural_veronese_k()
    if sk is not None and sk <= kmax:
        return sk, ValidationReport("standard_veronese", horizon, True, "structural", {"k": sk})
    for k in range(1, kmax + 1):
        report = is_standard_veronese(family, k, horizon)
        if report.holds:
            return k, report
    return None, ValidationReport("standard_veronese", horizon, False, "window", {"k": None, "kmax": kmax})


def is_b_equivalent(family: GradedFamily, base: MonomialIdeal, k: int, horizon: int) -> ValidationReport:
    """Check member(i+k) <= base^i <= member(i) for i <= horizon."""
    params = {"k": k}
    for i in range(1, horizon + 1):
        bi = base.power(i)
        witness = family.member(i + k).witness_not_in(bi)
        if witness is not None:
            return ValidationReport(
                "b_equivalent", horizon, False, "window", params,
                counterexample={"indices": (i + k, i), "witness": witness, "side": "family_in_power"},
            )
        witness = bi.witness_not_in(family.member(i))
        if witness is not None:
            return ValidationReport(
                "b_equivalent", horizon, False, "window", params,
                counterexample={"indices": (i, i), "witness": witness, "side": "power_in_family"},
            )
    return ValidationReport("b_equivalent", horizon, True, "window", params)
