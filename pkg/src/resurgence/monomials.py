"""Monomials and monomial ideals with exact arbitrary-precision exponents.

A monomial is an exponent tuple; a MonomialIdeal stores its divisibility-minimal
generators sorted lexicographically (deterministic reports, bit-stable goldens).
Ideals may alternatively be membership *views* (symbolic power, integral
closure) that answer `contains` without expanding generators; containment tests
always orient explicit generators on the left and a predicate on the right.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence, Tuple

from .errors import CapabilityError, DimensionError, DomainError, RepresentationError

Monomial = Tuple[int, ...]

# Cap on candidate lattice points when materializing generators of a view.
MATERIALIZE_CAP = 100_000


def monomial(*exponents: int) -> Monomial:
    return tuple(int(e) for e in exponents)


def check_monomial(m: Sequence[int], nvars: int) -> Monomial:
    m = tuple(int(e) for e in m)
    if len(m) != nvars:
        raise DimensionError(f"monomial has {len(m)} exponents, ambient ring has {nvars} variables")
    if any(e < 0 for e in m):
        raise DomainError(f"negative exponent in monomial {m}")
    return m


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def degree(m: Monomial) -> int:
    return sum(m)


_VAR_NAMES = "xyzwvutsrq"


def format_monomial(m: Monomial, names: Optional[Sequence[str]] = None) -> str:
    """Human-readable rendering, e.g. (2,1) -> 'x^2*y'."""
    if names is None:
        names = list(_VAR_NAMES[: len(m)]) if len(m) <= len(_VAR_NAMES) else [f"x{i}" for i in range(len(m))]
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def minimize_monomials(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    """Divisibility-minimal subset, sorted lexicographically. Idempotent.

    Monomials of equal total degree never divide one another unless equal,
    so after a degree sort each candidate is only tested against kept
    generators of strictly smaller degree.
    """
    unique = sorted(set(gens), key=lambda m: (degree(m), m))
    kept: list[Monomial] = []
    degrees: list[int] = []
    for g in unique:
        dg = degree(g)
        if any(d < dg and divides(r, g) for r, d in zip(kept, degrees)):
            continue
        kept.append(g)
        degrees.append(dg)
    return tuple(sorted(kept))


class MonomialIdeal:
    """A monomial ideal in k[x_1..x_n], explicit or as a membership view.

    Views:
      * symbolic view: (cover supports, n) - membership means every stored
        cover C satisfies sum_{i in C} m_i >= n;
      * closure view: (base ideal, newton polyhedron of base, scale n) -
        membership means m lies in n * NP(base).
    Explicit generators of a view are materialized lazily (bounded search)
    and cached; all values are immutable after construction.
    """

    __slots__ = ("nvars", "_gens", "_view", "_cache")

    def __init__(self, nvars: int, gens: Optional[Tuple[Monomial, ...]], view=None):
        self.nvars = int(nvars)
        if self.nvars <= 0:
            raise DimensionError("ambient variable count must be positive")
        self._gens = gens
        self._view = view
        self._cache: dict = {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_generators(cls, nvars: int, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        checked = [check_monomial(g, nvars) for g in gens]
        return cls(nvars, minimize_monomials(checked))

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ())

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ((0,) * nvars,))

    @classmethod
    def symbolic_view(cls, nvars: int, covers: Tuple[Monomial, ...], n: int) -> "MonomialIdeal":
        return cls(nvars, None, view=("symbolic", covers, n))

    @classmethod
    def closure_view(cls, base: "MonomialIdeal", polyhedron, scale: int) -> "MonomialIdeal":
        return cls(base.nvars, None, view=("closure", base, polyhedron, scale))

    # -- basic predicates ----------------------------------------------------

    @property
    def view_kind(self) -> str:
        return self._view[0] if self._view is not None else "explicit"

    @property
    def is_explicit(self) -> bool:
        return self._gens is not None

    def is_zero(self) -> bool:
        return self.is_explicit and not self._gens

    def is_unit(self) -> bool:
        if self.is_explicit:
            return bool(self._gens) and degree(self._gens[0]) == 0
        return self.contains((0,) * self.nvars)

    def is_proper(self) -> bool:
        return not self.is_zero() and not self.is_unit()

    # -- generators ----------------------------------------------------------

    @property
    def generators(self) -> Tuple[Monomial, ...]:
        """Minimal generators, materializing a view on first access."""
        if self._gens is None:
            self._gens = self._materialize()
        return self._gens

    def _materialize(self) -> Tuple[Monomial, ...]:
        kind = self._view[0]
        if kind == "symbolic":
            _, covers, n = self._view
            rows = [tuple(c) for c in covers]
            rhs = [n] * len(rows)
            box = self._symbolic_box(rows, n)
        elif kind == "closure":
            _, base, poly, scale = self._view
            rows, rhs, box = [], [], []
            for hs in poly.halfspaces:
                if all(w >= 0 for w in hs.normal) and hs.offset > 0:
                    rows.append(tuple(int(w) for w in hs.normal))
                    rhs.append(int(hs.offset) * scale)
            for j in range(self.nvars):
                box.append(scale * max(g[j] for g in base.generators))
        else:  # pragma: no cover - no other view kinds exist
            raise RepresentationError(f"cannot materialize view {kind!r}")
        return minimal_lattice_points(rows, rhs, box)

    def _symbolic_box(self, rows, n):
        # A minimal generator of the symbolic region never needs an exponent
        # above n: decrementing a coordinate > n keeps every cover sum >= n.
        return [n] * self.nvars

    # -- membership ----------------------------------------------------------

    def contains(self, m: Sequence[int]) -> bool:
        m = check_monomial(m, self.nvars)
        if self._view is None:
            return self._contains_explicit(m)
        kind = self._view[0]
        if kind == "symbolic":
            _, covers, n = self._view
            return all(sum(m[i] for i, on in enumerate(c) if on) >= n for c in covers)
        _, base, poly, scale = self._view
        return poly.contains(m, scale=scale)

    def _contains_explicit(self, m: Monomial) -> bool:
        gens = self._gens
        if not gens:
            return False
        fast = self._membership_index()
        if fast is not None:
            kind = fast[0]
            if kind == "uniform-complete":
                return degree(m) >= fast[1]
            if kind == "staircase2":
                xs, ymins = fast[1], fast[2]
                # largest generator x-exponent <= m_x
                import bisect

                k = bisect.bisect_right(xs, m[0]) - 1
                return k >= 0 and ymins[k] <= m[1]
        return any(divides(g, m) for g in gens)

    def _membership_index(self):
        """Lazy per-ideal membership accelerator.

        'uniform-complete': the ideal is the set of ALL monomials of one total
        degree d (i.e. the d-th power of the maximal ideal), so membership is
        a degree test. 'staircase2': two variables; binary search along the
        staircase.
        """
        idx = self._cache.get("index", False)
        if idx is not False:
            return idx
        gens = self._gens
        idx = None
        if gens and not self.is_unit():
            d = degree(gens[0])
            if all(degree(g) == d for g in gens):
                from math import comb

                if len(gens) == comb(d + self.nvars - 1, self.nvars - 1):
                    idx = ("uniform-complete", d)
            if idx is None and self.nvars == 2 and len(gens) > 8:
                by_x = sorted(gens)
                xs, ymins = [], []
                best = None
                for g in by_x:
                    best = g[1] if best is None else min(best, g[1])
                    if xs and xs[-1] == g[0]:
                        ymins[-1] = best
                    else:
                        xs.append(g[0])
                        ymins.append(best)
                idx = ("staircase2", xs, ymins)
        self._cache["index"] = idx
        return idx

    def min_degree(self) -> int:
        """Smallest total degree of a member (explicit ideals only)."""
        if self.is_zero():
            raise DomainError("zero ideal has no members")
        d = self._cache.get("mindeg")
        if d is None:
            d = min(degree(g) for g in self.generators)
            self._cache["mindeg"] = d
        return d

    # -- arithmetic ------------------------------------------------------------

    def _require_same_ring(self, other: "MonomialIdeal"):
        if self.nvars != other.nvars:
            raise DimensionError(f"ambient rings differ: {self.nvars} vs {other.nvars} variables")

    def multiply(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._require_same_ring(other)
        if self.is_zero() or other.is_zero():
            return MonomialIdeal.zero(self.nvars)
        if self.is_unit():
            return other if other.is_explicit else MonomialIdeal.from_generators(other.nvars, other.generators)
        if other.is_unit():
            return self
        gens = [mul(a, b) for a in self.generators for b in other.generators]
        return MonomialIdeal(self.nvars, minimize_monomials(gens))

    def add(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """Ideal sum (union of generator sets)."""
        self._require_same_ring(other)
        return MonomialIdeal(self.nvars, minimize_monomials(self.generators + other.generators))

    def power(self, n: int) -> "MonomialIdeal":
        """I^n by repeated squaring, minimizing at every step (I^0 = unit)."""
        if n < 0:
            raise DomainError("negative ideal power")
        if n == 0:
            return MonomialIdeal.unit(self.nvars)
        if n == 1 or self.is_zero() or self.is_unit():
            return self
        fast = self._membership_index()
        if fast is not None and fast[0] == "uniform-complete":
            # (m^d)^n = m^(dn): generate all monomials of total degree dn.
            return complete_power_ideal(self.nvars, fast[1] * n)
        result = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result.multiply(base)
            k >>= 1
            if k:
                base = base.multiply(base)
        return result

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._require_same_ring(other)
        if self.is_zero() or other.is_zero():
            return MonomialIdeal.zero(self.nvars)
        gens = [lcm(a, b) for a in self.generators for b in other.generators]
        return MonomialIdeal(self.nvars, minimize_monomials(gens))

    def is_subset_of(self, other: "MonomialIdeal") -> bool:
        """Containment self <= other: every minimal generator is a member.

        The left side must expand to generators; the right side may be any view.
        """
        self._require_same_ring(other)
        if not self.is_explicit and self._view[0] not in ("symbolic", "closure"):
            raise RepresentationError("left side of a containment needs explicit generators")
        return all(other.contains(g) for g in self.generators)

    def witness_not_in(self, other: "MonomialIdeal") -> Optional[Monomial]:
        """A minimal generator of self outside other, or None if contained."""
        self._require_same_ring(other)
        for g in self.generators:
            if not other.contains(g):
                return g
        return None

    # -- equality / ordering / rendering -----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.generators == other.generators

    def __hash__(self):
        return hash((self.nvars, self.generators))

    def __repr__(self):
        if self._gens is None:
            return f"MonomialIdeal(view={self.view_kind})"
        if self.is_zero():
            return "MonomialIdeal(0)"
        return "MonomialIdeal(" + ", ".join(format_monomial(g) for g in self.generators) + ")"


def complete_power_ideal(nvars: int, d: int) -> MonomialIdeal:
    """The ideal generated by all monomials of total degree d (d-th power of the
    homogeneous maximal ideal)."""
    if d == 0:
        return MonomialIdeal.unit(nvars)
    gens = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + nvars - 2 - prev)
        gens.append(tuple(exps))
    return MonomialIdeal(nvars, tuple(sorted(gens)))


def minimal_lattice_points(rows, rhs, box) -> Tuple[Monomial, ...]:
    """Divisibility-minimal nonnegative lattice points of {a : W a >= m}.

    `rows` are nonnegative integer weight vectors, `rhs` their bounds, `box`
    componentwise upper bounds guaranteed to contain every minimal point.
    For each prefix of the first n-1 coordinates the least feasible last
    coordinate c(prefix) is computed; c is componentwise nonincreasing in the
    prefix, so a candidate is minimal iff no single-step prefix decrement
    keeps c equal.
    """
    n = len(box)
    if n == 0:
        raise DimensionError("empty ambient dimension")
    prefix_count = 1
    for b in box[:-1]:
        prefix_count *= b + 1
    if prefix_count > MATERIALIZE_CAP:
        raise CapabilityError(
            f"materialization would scan {prefix_count} candidate lattice points (cap {MATERIALIZE_CAP})"
        )
    last = n - 1
    cvals: dict = {}

    def cval(prefix) -> Optional[int]:
        c = 0
        for w, m in zip(rows, rhs):
            partial = sum(w[j] * prefix[j] for j in range(last))
            if w[last] == 0:
                if partial < m:
                    return None
            else:
                need = m - partial
                if need > 0:
                    c = max(c, -(-need // w[last]))
        return c

    ranges = [range(b + 1) for b in box[:-1]]
    for prefix in itertools.product(*ranges) if ranges else [()]:
        cvals[prefix] = cval(prefix)

    points = []
    for prefix, c in cvals.items():
        if c is None:
            continue
        minimal = True
        for j in range(last):
            if prefix[j] > 0:
                neighbor = cvals[prefix[:j] + (prefix[j] - 1,) + prefix[j + 1 :]]
                if neighbor is not None and neighbor <= c:
                    minimal = False
                    break
        if minimal:
            points.append(prefix + (c,))
    return minimize_monomials(points)
