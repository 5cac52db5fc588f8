"""Exact rational polyhedra and linear programming.

H-representations are produced by an incremental double-description pass over
the dual cone of the homogenized generators; every facet normal is stored as a
primitive integer vector, so Newton-polyhedron facets (and hence Rees
valuations) are canonical across runs.  The LP solver is a dense two-phase
simplex over fractions.Fraction with Bland's anti-cycling rule; no floating
point enters any decision.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

from .errors import CapabilityError, DimensionError, DomainError

MAX_HULL_DIM = 8

Vector = Tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# small exact linear algebra
# ---------------------------------------------------------------------------


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _rank(rows: Sequence[Sequence]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        pv = mat[row][col]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col] / pv
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def _primitive(vec: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector by a positive factor to coprime integers."""
    fracs = [Fraction(x) for x in vec]
    if all(f == 0 for f in fracs):
        return tuple(0 for _ in fracs)
    denom_lcm = 1
    for f in fracs:
        denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(v // g for v in ints)


def _primitive_signed(vec: Sequence) -> Tuple[int, ...]:
    """Primitive integer vector with the first nonzero entry positive."""
    p = _primitive(vec)
    first = next((v for v in p if v != 0), 0)
    return tuple(-v for v in p) if first < 0 else p


# ---------------------------------------------------------------------------
# halfspaces and polyhedra
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class HalfSpace:
    """The set {y : <normal, y> >= offset}, normalized to coprime integers."""

    normal: Tuple[int, ...]
    offset: int

    @classmethod
    def normalized(cls, normal: Sequence, offset) -> "HalfSpace":
        joint = _primitive(tuple(normal) + (offset,))
        if all(v == 0 for v in joint[:-1]):
            raise DomainError("halfspace normal must be nonzero")
        return cls(joint[:-1], joint[-1])

    def satisfied_by(self, point: Sequence, scale: int = 1) -> bool:
        # normals/offsets are ints; integer points never touch Fraction here
        total = 0
        for w, x in zip(self.normal, point):
            total += w * x
        return total >= self.offset * scale

    def is_coordinate(self) -> bool:
        """True for a halfspace whose boundary passes through the origin."""
        return self.offset == 0


@dataclass(frozen=True)
class RationalPolyhedron:
    """Irredundant H-representation plus (optional) generator data."""

    dim: int
    halfspaces: Tuple[HalfSpace, ...]
    vertices: Tuple[Tuple[Fraction, ...], ...] = ()
    recession_rays: Tuple[Tuple[int, ...], ...] = ()

    def contains(self, point: Sequence, scale: int = 1) -> bool:
        """Membership in scale * P (homogeneous scaling of the offsets)."""
        if len(point) != self.dim:
            raise DimensionError(f"point has dimension {len(point)}, polyhedron {self.dim}")
        return all(h.satisfied_by(point, scale) for h in self.halfspaces)

    def valuation_candidates(self) -> Tuple[HalfSpace, ...]:
        """Facets whose normals are nonnegative weight vectors (the candidates
        for monomial valuations; for a Newton polyhedron this is every facet)."""
        return tuple(h for h in self.halfspaces if all(w >= 0 for w in h.normal))

    def scaled(self, factor: int) -> "RationalPolyhedron":
        if factor <= 0:
            raise DomainError("scale factor must be positive")
        return RationalPolyhedron(
            self.dim,
            tuple(HalfSpace(h.normal, h.offset * factor) for h in self.halfspaces),
            tuple(tuple(Fraction(v) * factor for v in vx) for vx in self.vertices),
            self.recession_rays,
        )


def _dual_description(generators: list[Vector], dim: int):
    """Lineality basis and extreme rays of {z : <g, z> >= 0 for all g}.

    Incremental double description: the lineality space starts as all of R^dim
    and is cut down whenever a constraint sees it; sign-split ray pairs are
    combined on the constraint hyperplane and non-extreme combinations are
    discarded by an exact rank test on their tight sets.
    """
    lineality: list[Vector] = [
        tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)
    ]
    rays: list[Tuple[int, ...]] = []
    processed: list[Vector] = []

    def tight_rank(ray) -> int:
        tight = [g for g in processed if _dot(g, ray) == 0]
        if not tight:
            return 0
        return _rank(tight)

    def is_extreme(ray) -> bool:
        if all(v == 0 for v in ray):
            return False
        return tight_rank(ray) >= dim - len(lineality) - 1

    for g in generators:
        lvals = [_dot(g, l) for l in lineality]
        pivot_idx = next((i for i, v in enumerate(lvals) if v != 0), None)
        if pivot_idx is not None:
            pivot = lineality[pivot_idx]
            pval = lvals[pivot_idx]
            if pval < 0:
                pivot = tuple(-x for x in pivot)
                pval = -pval
            new_lineality = []
            for i, l in enumerate(lineality):
                if i == pivot_idx:
                    continue
                coeff = lvals[i] / pval
                new_lineality.append(tuple(x - coeff * p for x, p in zip(l, pivot)))
            new_rays = []
            for r in rays:
                coeff = _dot(g, r) / pval
                new_rays.append(_primitive(tuple(Fraction(x) - coeff * p for x, p in zip(r, pivot))))
            new_rays.append(_primitive(pivot))
            lineality = new_lineality
            rays = new_rays
        else:
            plus = [r for r in rays if _dot(g, r) > 0]
            zero = [r for r in rays if _dot(g, r) == 0]
            minus = [r for r in rays if _dot(g, r) < 0]
            combos = []
            for p, m in itertools.product(plus, minus):
                vp, vm = _dot(g, p), _dot(g, m)
                combo = tuple(vp * Fraction(x) - vm * Fraction(y) for x, y in zip(m, p))
                combos.append(_primitive(combo))
            rays = plus + zero + combos
        processed.append(g)
        seen = set()
        filtered = []
        for r in rays:
            if r in seen:
                continue
            seen.add(r)
            if all(_dot(g2, r) >= 0 for g2 in processed) and is_extreme(r):
                filtered.append(r)
        rays = filtered
    return [tuple(l) for l in lineality], rays


def hull_with_recession(
    points: Iterable[Sequence], rays: Iterable[Sequence] = ()
) -> RationalPolyhedron:
    """Irredundant H-representation of conv(points) + cone(rays).

    Works in the homogenization cone: a facet <a, y> >= b corresponds to an
    extreme ray (a, -b) of the dual cone of {(p, 1)} u {(r, 0)}; a lineality
    direction of that dual cone is an affine-hull equation, emitted as an
    opposite pair of halfspaces.
    """
    raw = [tuple(p) for p in points]
    if not raw:
        raise DomainError("hull needs at least one point")
    dim = len(raw[0])
    if dim > MAX_HULL_DIM:
        raise CapabilityError(f"hull dimension {dim} exceeds the configured maximum {MAX_HULL_DIM}")
    if any(len(p) != dim for p in raw):
        raise DimensionError("hull points have mixed dimensions")
    rs = [tuple(Fraction(x) for x in r) for r in rays]
    if any(len(r) != dim for r in rs):
        raise DimensionError("hull rays have mixed dimensions")
    if dim == 2 and {_primitive(r) for r in rs} == {(1, 0), (0, 1)}:
        return _staircase_hull_2d(raw)

    pts = [tuple(Fraction(x) for x in p) for p in raw]
    generators = [p + (Fraction(1),) for p in pts] + [r + (Fraction(0),) for r in rs]
    lineality, extreme = _dual_description(generators, dim + 1)

    halfspaces = set()
    for z in extreme:
        normal, last = z[:-1], z[-1]
        if all(v == 0 for v in normal):
            continue  # homogenization facet "1 >= 0"
        halfspaces.add(HalfSpace(tuple(normal), -last))
    for l in lineality:
        normal = _primitive_signed(l[:-1])
        if all(v == 0 for v in normal):
            continue
        z = _primitive_signed(l)
        halfspaces.add(HalfSpace(z[:-1], -z[-1]))
        halfspaces.add(HalfSpace(tuple(-v for v in z[:-1]), z[-1]))

    ordered = tuple(sorted(halfspaces))
    vertices = []
    for p in pts:
        tight = [h.normal for h in ordered if _dot(h.normal, p) == h.offset]
        if tight and _rank(tight) == dim and p not in vertices:
            vertices.append(p)
    ray_set = tuple(sorted({_primitive(r) for r in rs})) if rs else ()
    return RationalPolyhedron(dim, ordered, tuple(sorted(vertices)), ray_set)


def _staircase_hull_2d(pts) -> RationalPolyhedron:
    """Plane case with the positive orthant as recession cone: the boundary is
    the lower-left convex chain of the dominance-minimal points, so a monotone
    chain replaces the double-description pass (staircases can be large)."""
    minimal: list = []
    best_y = None
    for p in sorted(set(pts)):  # x ascending, y ascending within equal x
        if best_y is None or p[1] < best_y:
            minimal.append(p)
            best_y = p[1]
    chain: list = []
    for p in minimal:
        while len(chain) >= 2:
            (x0, y0), (x1, y1) = chain[-2], chain[-1]
            # pop while the middle point is not a strict corner of the chain
            if (x1 - x0) * (p[1] - y1) - (y1 - y0) * (p[0] - x1) <= 0:
                chain.pop()
            else:
                break
        chain.append(p)
    halfspaces = {
        HalfSpace.normalized((1, 0), chain[0][0]),
        HalfSpace.normalized((0, 1), chain[-1][1]),
    }
    for (x0, y0), (x1, y1) in zip(chain, chain[1:]):
        normal = (y0 - y1, x1 - x0)
        halfspaces.add(HalfSpace.normalized(normal, normal[0] * x0 + normal[1] * y0))
    return RationalPolyhedron(2, tuple(sorted(halfspaces)), tuple(sorted(chain)),
                              ((0, 1), (1, 0)))


# ---------------------------------------------------------------------------
# exact linear programming
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearProgram:
    """min <objective, y> subject to <normal_i, y> >= offset_i (and y >= 0 if nonneg)."""

    objective: Tuple[Fraction, ...]
    constraints: Tuple[HalfSpace, ...]
    nonneg: bool = True

    def __post_init__(self):
        for c in self.constraints:
            if len(c.normal) != len(self.objective):
                raise DimensionError("objective length differs from constraint dimension")


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    optimum: Optional[Fraction] = None
    argmin: Optional[Tuple[Fraction, ...]] = None
    dual: Optional[Tuple[Fraction, ...]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def lp_minimize(lp: LinearProgram) -> LPResult:
    """Exact optimum with a verified dual certificate.

    Returns Infeasible / Unbounded as values.  For a finite optimum the dual
    multipliers u satisfy u >= 0, A^T u <= c (with equality on free-variable
    coordinates) and b.u = optimum; these conditions are re-checked exactly
    before returning.
    """
    nvar = len(lp.objective)
    if lp.nonneg:
        cols = [list(h.normal) for h in lp.constraints]
        obj = [Fraction(x) for x in lp.objective]
    else:
        # free variables: y = u - v
        cols = [list(h.normal) + [-x for x in h.normal] for h in lp.constraints]
        obj = [Fraction(x) for x in lp.objective] + [-Fraction(x) for x in lp.objective]
    m = len(lp.constraints)
    n_struct = len(obj)
    # A y - s = b, rows flipped to make b >= 0; artificials appended last.
    A = []
    b = []
    flips = []
    for i in range(m):
        row = [Fraction(x) for x in cols[i]]
        row += [Fraction(-1) if j == i else Fraction(0) for j in range(m)]
        rhs = Fraction(lp.constraints[i].offset)
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
            flips.append(-1)
        else:
            flips.append(1)
        A.append(row)
        b.append(rhs)
    n_total = n_struct + m
    art = list(range(n_total, n_total + m))
    for i in range(m):
        A[i] = A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]

    # phase 1: minimize the artificial total starting from the artificial basis
    c1 = [Fraction(0)] * n_total + [Fraction(1)] * m
    basis, T = _simplex_loop(A, b, c1, list(art), barred=set())
    if T is None:
        raise AssertionError("phase-1 objective is bounded below by zero")
    phase1 = sum(c1[basis[i]] * T[i][-1] for i in range(len(basis)))
    if phase1 > 0:
        return LPResult("infeasible")
    # pivot artificials out of the basis where possible (degenerate rows stay)
    for i, bv in enumerate(basis):
        if bv >= n_total:
            entering = next((j for j in range(n_total) if T[i][j] != 0), None)
            if entering is not None:
                pv = T[i][entering]
                T[i] = [x / pv for x in T[i]]
                for r in range(len(T)):
                    if r != i and T[r][entering] != 0:
                        f = T[r][entering]
                        T[r] = [x - f * y for x, y in zip(T[r], T[i])]
                basis[i] = entering

    # phase 2 with artificials barred; rebuild from the phase-1 tableau
    c2 = [Fraction(x) for x in obj] + [Fraction(0)] * m + [Fraction(0)] * m
    A2 = [row[:-1] for row in T]
    b2 = [row[-1] for row in T]
    basis2, T2 = _simplex_loop(A2, b2, c2, basis, barred=set(art))
    if T2 is None:
        return LPResult("unbounded")
    x = [Fraction(0)] * (n_total + m)
    for i, bv in enumerate(basis2):
        x[bv] = T2[i][-1]
    if lp.nonneg:
        y = tuple(x[:nvar])
    else:
        y = tuple(x[j] - x[nvar + j] for j in range(nvar))
    optimum = sum(Fraction(ci) * yi for ci, yi in zip(lp.objective, y))
    # dual from the artificial columns (they started as the identity)
    u_std = []
    for j in range(m):
        u_std.append(sum(c2[basis2[i]] * T2[i][n_total + j] for i in range(len(basis2))))
    dual = tuple(flips[i] * u_std[i] for i in range(m))
    _verify_dual(lp, optimum, dual)
    return LPResult("optimal", optimum, y, dual)


def _simplex_loop(A, b, c, basis, barred):
    """Bland-rule simplex iterations on a tableau with a known feasible basis."""
    T = [row[:] + [b[i]] for i, row in enumerate(A)]
    m = len(T)
    n = len(A[0]) if m else 0
    while True:
        duals = [c[basis[i]] for i in range(m)]
        entering = None
        for j in range(n):
            if j in basis or j in barred:
                continue
            red = c[j] - sum(duals[i] * T[i][j] for i in range(m))
            if red < 0:
                entering = j
                break
        if entering is None:
            return basis, T
        leaving = None
        best = None
        for i in range(m):
            if T[i][entering] > 0:
                ratio = T[i][-1] / T[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return basis, None
        pv = T[leaving][entering]
        T[leaving] = [x / pv for x in T[leaving]]
        for i in range(m):
            if i != leaving and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [x - f * y for x, y in zip(T[i], T[leaving])]
        basis[leaving] = entering


def _verify_dual(lp: LinearProgram, optimum: Fraction, dual: Sequence[Fraction]):
    if any(u < 0 for u in dual):
        raise AssertionError("dual certificate has a negative multiplier")
    nvar = len(lp.objective)
    for j in range(nvar):
        coeff = sum(Fraction(u) * Fraction(lp.constraints[i].normal[j]) for i, u in enumerate(dual))
        if lp.nonneg:
            if coeff > Fraction(lp.objective[j]):
                raise AssertionError("dual certificate violates A^T u <= c")
        else:
            if coeff != Fraction(lp.objective[j]):
                raise AssertionError("dual certificate violates A^T u = c on a free variable")
    value = sum(Fraction(u) * Fraction(lp.constraints[i].offset) for i, u in enumerate(dual))
    if value != optimum:
        raise AssertionError("dual objective does not match the primal optimum")


def halfspace_redundant(poly: RationalPolyhedron, index: int) -> bool:
    """LP witness check: can the polyhedron do without halfspace `index`?"""
    target = poly.halfspaces[index]
    others = tuple(h for i, h in enumerate(poly.halfspaces) if i != index)
    lp = LinearProgram(tuple(Fraction(v) for v in target.normal), others, nonneg=False)
    res = lp_minimize(lp)
    if res.status == "unbounded":
        return False
    if res.status == "infeasible":
        return True
    return res.optimum >= target.offset
