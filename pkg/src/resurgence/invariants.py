"""Containment invariants of pairs of graded families.

Conventions throughout: sup of an empty set is -inf and inf of an empty set
is +inf (SequenceValue / ExtendedRational encode both).  Window suprema are
certified lower bounds of the true supremum; a report carries certified=True
only when a theorem route (Rees-valuation formula, base-equivalence, or the
finite certified search region) pins the exact value, with every hypothesis
it used recorded in the report.  The eventual quantifier in the asymptotic
resurgence ("for all large t") is never evaluated directly: it is not finitely
decidable, so asymptotic values are only produced through those routes or
labeled as estimates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Tuple

from . import families as fam
from .closures import bequiv_constant, EquivalenceConstant, rees_valuations
from .errors import CapabilityError, DomainError, HypothesisError
from .rationals import NEG_INFINITY, POS_INFINITY, ExtendedRational, ceil_frac, finite
from .valuations import MonomialValuation, skew_waldschmidt


# ---------------------------------------------------------------------------
# escape sequences beta and lambda
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceValue:
    """Value of an escape index: a finite integer, '> bound', or empty set.

    certified=False marks window answers that the structure of the families
    could not close (e.g. a largest escape index for a non-filtration family).
    """

    kind: str  # "finite" | "exceeds" | "empty"
    value: Optional[int] = None
    bound: Optional[int] = None
    certified: bool = True

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "exceeds":
            return f">{self.bound}"
        return "empty"


def _least_failing(fails: Callable[[int], bool], cutoff: int) -> Optional[int]:
    """Least d <= cutoff with fails(d), given an upward-closed failure set.

    Galloping doubles the probe index, so members are only evaluated near the
    answer, never at the cutoff unless the answer is out of reach.
    """
    lo, d = 0, 1
    while d < cutoff and not fails(d):
        lo, d = d, min(2 * d, cutoff)
    if not fails(d):
        return None
    hi = d
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fails(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _greatest_failing(fails: Callable[[int], bool], cutoff: int):
    """Greatest d <= cutoff with fails(d), for a downward-closed failure set;
    None if nothing fails, ('exceeds',) if the cutoff itself fails."""
    if not fails(1):
        return None
    lo, d = 1, 1
    while d < cutoff and fails(d):
        lo, d = d, min(2 * d, cutoff)
    if fails(d):
        return ("exceeds",)
    hi = d
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fails(mid):
            lo = mid
        else:
            hi = mid
    return ("finite", lo)


def _power_pair_tests(a: fam.GradedFamily, b: fam.GradedFamily):
    """Integer containment test for same-base power-pattern pairs.

    a_s <= b_d iff e_a(s) >= e_b(d), valid when the right side is an
    integral-closure family or both sides are plain power families of the
    same proper base (a Rees valuation of the base separates the powers;
    a closure on the left only cannot be decided by exponents alone).
    """
    sa, sb = a.power_semantics(), b.power_semantics()
    if sa is None or sb is None:
        return None
    base_a, fa, closed_a = sa
    base_b, fb, closed_b = sb
    if base_a != base_b or not base_a.is_proper():
        return None
    if closed_b or not closed_a:
        return fa, fb
    return None


def beta(a: fam.GradedFamily, b: fam.GradedFamily, s: int, cutoff: int) -> SequenceValue:
    """Least d <= cutoff with a_s not contained in b_d.

    Binary search when b is a filtration by construction (the escape set is
    upward closed); linear scan otherwise.  'empty' is only reported when the
    family provably never escapes (constant tail reached inside the window).
    """
    if s < 1 or cutoff < 1:
        raise DomainError("beta needs s >= 1 and cutoff >= 1")
    pair = _power_pair_tests(a, b)
    if pair is not None:
        fa, fb = pair
        va = fa(s)
        fails = lambda d: va < fb(d)
    else:
        a_s = a.member(s)
        if a_s.is_zero():
            return SequenceValue("empty")
        fails = lambda d: not a_s.is_subset_of(b.member(d))
    return _beta_search(fails, b, cutoff)


def _beta_search(fails, b, cutoff) -> SequenceValue:
    if b.is_structural_filtration:
        hit = _least_failing(fails, cutoff)
        if hit is not None:
            return SequenceValue("finite", hit)
        ec = b.eventually_constant()
        if ec is not None and ec[0] <= cutoff:
            return SequenceValue("empty")
        return SequenceValue("exceeds", bound=cutoff)
    for d in range(1, cutoff + 1):
        if fails(d):
            return SequenceValue("finite", d)
    ec = b.eventually_constant()
    if ec is not None and ec[0] <= cutoff:
        return SequenceValue("empty")
    return SequenceValue("exceeds", bound=cutoff)


def lambda_(a: fam.GradedFamily, b: fam.GradedFamily, n: int, cutoff: int) -> SequenceValue:
    """Greatest d <= cutoff with a_d not contained in b_n.

    For a filtration a the escape set is downward closed, so the window
    answer is the true supremum whenever it falls below the cutoff.
    """
    if n < 1 or cutoff < 1:
        raise DomainError("lambda needs n >= 1 and cutoff >= 1")
    pair = _power_pair_tests(a, b)
    if pair is not None:
        fa, fb = pair
        vb = fb(n)
        fails = lambda d: fa(d) < vb
    else:
        b_n = b.member(n)
        fails = lambda d: not a.member(d).is_subset_of(b_n)
    return _lambda_search(fails, a, cutoff)


def _lambda_search(fails, a, cutoff) -> SequenceValue:
    if a.is_structural_filtration:
        got = _greatest_failing(fails, cutoff)
        if got is None:
            return SequenceValue("empty")
        if got[0] == "exceeds":
            return SequenceValue("exceeds", bound=cutoff)
        return SequenceValue("finite", got[1])
    best = None
    for d in range(cutoff, 0, -1):
        if fails(d):
            best = d
            break
    if best is None:
        return SequenceValue("empty", certified=False)
    if best == cutoff:
        return SequenceValue("exceeds", bound=cutoff)
    return SequenceValue("finite", best, certified=False)


def _value_rule(v: MonomialValuation, family: fam.GradedFamily) -> Callable[[int], int]:
    rule = family.value_rule(v.weights)
    if rule is not None:
        return rule
    return lambda n: v.of_ideal(family.member(n))


def beta_v(v: MonomialValuation, a: fam.GradedFamily, b: fam.GradedFamily,
           s: int, cutoff: int) -> SequenceValue:
    """Least d <= cutoff with v(a_s) < v(b_d); closed-form value sequences are
    used for power-pattern families without materializing any ideal."""
    if s < 1 or cutoff < 1:
        raise DomainError("beta_v needs s >= 1 and cutoff >= 1")
    va = _value_rule(v, a)(s)
    vb = _value_rule(v, b)
    fails = lambda d: va < vb(d)
    return _beta_search(fails, b, cutoff)


def lambda_v(v: MonomialValuation, a: fam.GradedFamily, b: fam.GradedFamily,
             n: int, cutoff: int) -> SequenceValue:
    """Greatest d <= cutoff with v(a_d) < v(b_n)."""
    if n < 1 or cutoff < 1:
        raise DomainError("lambda_v needs n >= 1 and cutoff >= 1")
    vb = _value_rule(v, b)(n)
    va = _value_rule(v, a)
    fails = lambda d: va(d) < vb
    return _lambda_search(fails, a, cutoff)


def noncontainment_table(a: fam.GradedFamily, b: fam.GradedFamily, s_max: int,
                         cutoff: int) -> Tuple[Tuple[int, SequenceValue], ...]:
    """(s, beta_s) for s <= s_max; the finite rows form the noncontainment set."""
    return tuple((s, beta(a, b, s, cutoff)) for s in range(1, s_max + 1))


# ---------------------------------------------------------------------------
# dual sequences
# ---------------------------------------------------------------------------


def dual_sequences(alpha: Mapping[int, int], beta_seq: Mapping[int, int],
                   alpha_nondecreasing: bool = False):
    """Left and right dual sequences of two finite sequence windows.

    left[n]  = inf {d : alpha_d >= beta_n},
    right[n] = sup {d : alpha_d <= beta_n},
    computed on the window only.  Entries are ('value', d), ('empty',) or
    ('undetermined',): a position is undetermined when the window cannot
    settle it (suprema need the monotonicity flag to be closed off).
    """
    ds = sorted(alpha)
    left = {}
    right = {}
    for n in sorted(beta_seq):
        target = beta_seq[n]
        hit = next((d for d in ds if alpha[d] >= target), None)
        left[n] = ("value", hit) if hit is not None else ("undetermined",)
        qualifying = [d for d in ds if alpha[d] <= target]
        if not qualifying:
            right[n] = ("empty",) if alpha_nondecreasing else ("undetermined",)
        else:
            d_star = max(qualifying)
            if alpha_nondecreasing and (d_star + 1) in alpha and alpha[d_star + 1] > target:
                right[n] = ("value", d_star)
            else:
                right[n] = ("undetermined",)
    return left, right


# ---------------------------------------------------------------------------
# resurgence reports
# ---------------------------------------------------------------------------


@dataclass
class ResurgenceReport:
    """Result record for a resurgence-type quantity.

    Every witness (s, r, m) is re-checkable: m is a member of a_s outside b_r.
    `hypotheses` holds the ValidationReports and structural facts the value
    relies on; user-asserted hypotheses are echoed verbatim, and any value
    downstream of an assertion is labeled certified-given-assertions in
    `claims`.
    """

    quantity: str
    value: ExtendedRational
    certified: bool
    witnesses: Tuple = ()
    hypotheses: Tuple = ()
    claims: Tuple[str, ...] = ()
    notes: Tuple[str, ...] = ()
    search: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)


def _scale_extended(x: ExtendedRational, k: int) -> ExtendedRational:
    if k <= 0:
        raise DomainError("scale factor must be positive")
    return x if not x.is_finite else finite(x.value * k)


def rho_window(a: fam.GradedFamily, b: fam.GradedFamily, s_max: int, r_max: int) -> ResurgenceReport:
    """sup { s/r : s <= s_max, r <= r_max, a_s not contained in b_r }.

    Computed through beta (only r = beta_s contributes for each s).  The
    window value is a certified lower bound of the true supremum; it is
    stamped exact when a closed form applies (pure-ceiling pairs over one
    base ideal) or when the no-escape analysis of the -inf case closes.
    """
    best = None
    pairs = []
    for s in range(1, s_max + 1):
        sv = beta(a, b, s, cutoff=r_max)
        if sv.is_finite:
            pairs.append((s, sv.value))
            ratio = Fraction(s, sv.value)
            if best is None or ratio > best[0]:
                best = (ratio, s, sv.value)
    search = {"s_max": s_max, "r_max": r_max}
    details = {"noncontainment_pairs": tuple(pairs)}
    if best is None:
        certified, notes = _neg_infinity_analysis(a, b, r_max)
        return ResurgenceReport("rho_window", NEG_INFINITY, certified, (), (),
                                claims=("no noncontainment on the window",),
                                notes=notes, search=search, details=details)
    value = finite(best[0])
    witness = a.member(best[1]).witness_not_in(b.member(best[2]))
    witnesses = ((best[1], best[2], witness),)
    certified = False
    claims: Tuple[str, ...] = ("window supremum; certified lower bound of rho",)
    pair = _power_pair_tests(a, b)
    if pair is not None and pair[0].pure_slope and pair[1].pure_slope:
        exact = pair[1].slope / pair[0].slope
        details["window_supremum"] = best[0]
        value = finite(exact)
        certified = True
        claims = ("exact: ceiling-pair closed form (value slope_b/slope_a)",)
    return ResurgenceReport("rho_window", value, certified, witnesses, (),
                            claims=claims, search=search, details=details)


def _global_filtration_certificate(family, horizon) -> bool:
    """True when the filtration property holds for ALL indices: either by
    construction, or window-verified up to a constant tail."""
    if family.is_structural_filtration:
        return True
    ec = family.eventually_constant()
    if ec is not None and ec[0] <= horizon:
        return fam.validate_filtration(family, ec[0] + 1).holds
    return False


def _neg_infinity_analysis(a, b, r_max):
    """-inf is exact iff a_1 lies in every b_i; checkable for filtrations with
    a constant tail reached inside the window."""
    notes = []
    if not (_global_filtration_certificate(a, r_max) and _global_filtration_certificate(b, r_max)):
        notes.append("no noncontainment found on the window; -inf not certified (families not known filtrations)")
        return False, tuple(notes)
    ec = b.eventually_constant()
    if ec is None or ec[0] > r_max:
        notes.append("no noncontainment found on the window; -inf not certified (no constant tail inside window)")
        return False, tuple(notes)
    if a.member(1).is_subset_of(ec[1]):
        notes.append("exact: a_1 lies in the intersection of all b_i (constant tail verified)")
        return True, tuple(notes)
    notes.append("a_1 escapes the constant tail beyond the window")  # pragma: no cover
    return False, tuple(notes)


def rho_n(a: fam.GradedFamily, b: fam.GradedFamily, n: int, s_max: int, cutoff: int) -> ResurgenceReport:
    """sup { s / beta_s : n <= s <= s_max, beta_s finite within cutoff }."""
    if n < 1:
        raise DomainError("rho_n needs n >= 1")
    best = None
    pairs = []
    for s in range(n, s_max + 1):
        sv = beta(a, b, s, cutoff)
        if sv.is_finite:
            pairs.append((s, sv.value))
            ratio = Fraction(s, sv.value)
            if best is None or ratio > best[0]:
                best = (ratio, s, sv.value)
    search = {"n": n, "s_max": s_max, "cutoff": cutoff}
    details = {"noncontainment_pairs": tuple(pairs)}
    if best is None:
        return ResurgenceReport("rho_n", NEG_INFINITY, False, (), (),
                                notes=("no noncontainment with s >= n on the window",),
                                search=search, details=details)
    witness = a.member(best[1]).witness_not_in(b.member(best[2]))
    return ResurgenceReport("rho_n", finite(best[0]), False,
                            ((best[1], best[2], witness),), (),
                            claims=("window supremum of the tail s/beta_s",),
                            search=search, details=details)


def rho_lim_estimate(a: fam.GradedFamily, b: fam.GradedFamily, n_grid: Sequence[int],
                     cutoff: int, tail: int = 10, kmax: int = 6, horizon: int = 8) -> ResurgenceReport:
    """rho^n along a grid, with the certified limit when a theorem route applies.

    The grid values are window evaluations (nonincreasing in n by
    construction); the limit equals the Rees-valuation asymptotic resurgence
    exactly when b is structurally base-equivalent and a is a filtration.
    """
    grid = sorted(set(n_grid))
    if not grid or grid[0] < 1:
        raise DomainError("rho_lim needs a grid of indices >= 1")
    s_max = grid[-1] + tail
    values = []
    for n in grid:
        rep = rho_n(a, b, n, s_max, cutoff)
        values.append((n, rep.value))
    details = {"grid_values": tuple(values)}
    notes = []
    certified = False
    claims: Tuple[str, ...] = ()
    value = values[-1][1]
    if a.is_structural_filtration and b.base_equivalence() is not None:
        rees = rho_hat_rees(a, b, kmax=kmax, horizon=horizon)
        value = rees.value
        certified = True
        claims = ("exact: rho^lim equals the asymptotic resurgence (base-equivalent route)",)
        details["rees_report"] = rees
    else:
        notes.append("window trend only; the limit is reported by its last grid value")
    return ResurgenceReport("rho_lim", value, certified, (), (),
                            claims=claims, notes=tuple(notes),
                            search={"grid": tuple(grid), "cutoff": cutoff, "s_max": s_max},
                            details=details)


# ---------------------------------------------------------------------------
# asymptotic resurgence via Rees valuations
# ---------------------------------------------------------------------------


def rho_hat_rees(a: fam.GradedFamily, b: fam.GradedFamily, kmax: int = 6,
                 horizon: int = 8, assertions: Tuple[str, ...] = ()) -> ResurgenceReport:
    """Asymptotic resurgence of (a, closure of b) by the Rees-valuation formula.

    Routes, in order:
      * b structurally base-equivalent (powers, closures of powers): the value
        is max over the Rees valuations w of the base of w(base)/w^(a), and it
        also equals rho(a, closure(b)) and rho_hat(a, b);
      * b with a standard Veronese index k (structural or window-certified up
        to `horizon`, searched k <= kmax): max over Rees valuations of b_k of
        (w(b_k)/k) / w^(a); the equality with rho_hat(a, b) additionally needs
        the module-finiteness of the closure Rees algebra, which is only
        accepted as a user assertion here.
    The value is +inf as soon as some w^(a) = 0.  Suprema are over monomial
    valuations (they exhaust the Rees valuations of monomial ideals).
    """
    hyps: list = []
    claims: list[str] = []
    notes: list[str] = []
    details: dict = {}
    beq = b.base_equivalence()
    if beq is not None:
        base, const = beq
        hyps.append(f"structural: b is base-equivalent with shift {const.k} (bound {const.bound})")
        rv = rees_valuations(base)
        ratios = _valuation_ratios(rv, lambda val: Fraction(val), a, kmax, horizon)
        claims += [
            "equals rho_hat(a, closure(b))",
            "equals rho(a, closure(b))",
            "equals rho_hat(a, b)",
        ]
        details["base"] = base
    else:
        k, vrep = fam.find_standard_veronese(b, kmax, horizon)
        if k is None:
            raise CapabilityError(
                f"no standard Veronese index k <= {kmax} found (horizon {horizon}); "
                "the Rees formula does not apply - use rho_hat_beta_limit for an estimate"
            )
        hyps.append(vrep)
        bk = b.member(k)
        if not bk.is_proper():
            raise DomainError(f"member b_{k} is not a proper nonzero ideal")
        rv = rees_valuations(bk)
        ratios = _valuation_ratios(rv, lambda val: Fraction(val, k), a, kmax, horizon)
        claims.append("equals rho_hat(a, closure(b))")
        if "closure_module_finite" in assertions:
            claims.append(
                "equals rho_hat(a, b) [certified-given-assertions: closure_module_finite]"
            )
            hyps.append("user-asserted: R(closure(b)) is a module-finite R(b)-algebra extension")
        else:
            notes.append(
                "equality with rho_hat(a, b) needs the module-finiteness hypothesis; "
                "assert 'closure_module_finite' to claim it"
            )
        if k > 1 and b.member(1).is_proper():
            # open data for the RV(b_1)-versus-RV(b_k) question: same formula
            # evaluated over the Rees valuations of b_1, never a theorem.
            rv1 = rees_valuations(b.member(1))
            ratios1 = _valuation_ratios(rv1, lambda val: Fraction(val, k), a, kmax, horizon,
                                        proxy_member=b.member(k))
            details["rv_b1_data"] = tuple(ratios1)
            rv1_max, _ = _max_ratio(ratios1)
            details["rv_b1_max"] = rv1_max
    value, maximizer = _max_ratio(ratios)
    details["valuations"] = tuple(ratios)
    details["maximizer"] = maximizer
    notes.append("valuation suprema range over monomial valuations "
                 "(these exhaust the Rees valuations of monomial ideals)")
    return ResurgenceReport("rho_hat_rees", value, True, (), tuple(hyps),
                            claims=tuple(claims), notes=tuple(notes),
                            search={"kmax": kmax, "horizon": horizon}, details=details)


def _valuation_ratios(rv, vhat_b_of, a, kmax, horizon, proxy_member=None):
    """(weights, vhat(b), vhat(a), ratio) per Rees valuation, exact only."""
    rows = []
    for weights, val in rv.valuations:
        v = MonomialValuation(weights)
        # with a proxy member (b_k), vhat(b) is read off that member instead of
        # the valuation's own value: under a standard Veronese index the
        # constant equals v(b_k)/k for every valuation
        vb = vhat_b_of(v.of_ideal(proxy_member) if proxy_member is not None else val)
        wa = skew_waldschmidt(v, a, window=max(horizon, 8), kmax=kmax)
        if not wa.certified:
            raise CapabilityError(
                f"no exact skew Waldschmidt constant for the left family (kind {a.kind}); "
                "use rho_hat_beta_limit"
            )
        va = wa.value
        if va == 0:
            rows.append((weights, vb, va, POS_INFINITY))
        else:
            rows.append((weights, vb, va, finite(vb / va)))
    return rows


def _max_ratio(rows):
    best = None
    best_w = None
    for weights, _vb, _va, ratio in rows:
        if best is None or ratio > best:
            best = ratio
            best_w = weights
    return best, best_w


def rho_hat_beta_limit(a: fam.GradedFamily, b: fam.GradedFamily, n_max: int, cutoff: int,
                       grid: Optional[Sequence[int]] = None, kmax: int = 6,
                       horizon: int = 8) -> ResurgenceReport:
    """Estimate of rho_hat(a, closure(b)) as N / beta_N, with diagnostics.

    Reports the three escape sequences beta_n, beta_n against the closure
    family, and beta^v0_n for a Rees valuation v0 side by side; their n-th
    ratios converge to the same reciprocal exactly under the standard-Veronese
    plus module-finiteness hypotheses, so the spread at n = n_max is the
    convergence diagnostic.  Always certified=False (finite-N estimate).
    """
    hyps: list = []
    notes: list[str] = []
    filt = fam.validate_filtration(b, min(n_max, 20))
    if not filt.holds:
        raise HypothesisError("b must be a filtration for the beta-limit estimate", filt)
    hyps.append(filt)
    bbar = fam.closure_of(b)
    k, vrep = fam.find_standard_veronese(b, kmax, horizon)
    if k is not None:
        hyps.append(vrep)
        anchor = b.member(k)
        scale = k
    else:
        notes.append(
            f"no standard Veronese index k <= {kmax} found; v0 taken from the Rees "
            "valuations of b_1; the limit theorem is not certified for this family"
        )
        anchor = b.member(1)
        scale = 1
    if not anchor.is_proper():
        raise DomainError("anchor member of b is not a proper nonzero ideal")
    rv = rees_valuations(anchor)
    try:
        rows = _valuation_ratios(rv, lambda val: Fraction(val, scale), a, kmax, horizon)
        _, v0w = _max_ratio(rows)
    except CapabilityError:
        rows = ()
        v0w = rv.valuations[0][0]
        notes.append("v0 defaulted to the first Rees valuation (no exact skew Waldschmidt for a)")
    v0 = MonomialValuation(v0w)
    if grid is None:
        grid = sorted({max(1, n_max // 4), max(1, n_max // 2), max(1, (3 * n_max) // 4), n_max})
    else:
        grid = sorted(set(grid) | {n_max})
    seq_plain, seq_closure, seq_val = [], [], []
    for n in grid:
        seq_plain.append((n, beta(a, b, n, cutoff)))
        seq_closure.append((n, beta(a, bbar, n, cutoff)))
        seq_val.append((n, beta_v(v0, a, b, n, cutoff)))
    last = seq_plain[-1][1]
    if not last.is_finite:
        raise CapabilityError(f"beta_{n_max} is not finite within cutoff {cutoff}")
    value = finite(Fraction(n_max, last.value))
    details = {
        "beta": tuple(seq_plain),
        "beta_closure": tuple(seq_closure),
        "beta_valuation": tuple(seq_val),
        "v0": v0.weights,
        "valuations": tuple(rows),
    }
    notes.append("estimate: n_max / beta_(n_max); the reciprocal ratios beta_n/n converge to 1/rho_hat under the recorded hypotheses")
    return ResurgenceReport("rho_hat_beta", value, False, (), tuple(hyps),
                            notes=tuple(notes),
                            search={"n_max": n_max, "cutoff": cutoff, "grid": tuple(grid)},
                            details=details)


# ---------------------------------------------------------------------------
# exact resurgence via the finite certified search region
# ---------------------------------------------------------------------------


def rho_exact_certified(a: fam.GradedFamily, b: fam.GradedFamily, search_budget: int = 60,
                        kmax: int = 6, horizon: int = 8,
                        assertions: Tuple[str, ...] = ()) -> ResurgenceReport:
    """Exact rho(a, b) through the finite search region, when certifiable.

    Hypotheses (validated or structural, failures raised, never ignored):
      (i)  every Rees valuation w of b_1 has w^(b) = w(b_1) - structural for
           base-equivalent kinds, user-assertable otherwise;
      (ii) a closure gap k with closure(b_(i+k)) contained in b_i for all i -
           0 for integrally closed members, Briancon-Skoda for powers.
    With rho_hat = rho_hat_rees(a, b): a witness pair s0/r0 > rho_hat bounds
    the search region r < N = k*rho_hat/(s0/r0 - rho_hat), s < (r+k)*rho_hat;
    the maximum of s/r over noncontainments there is exactly rho and is
    rational by construction.  If no witness exists up to the budget the
    report returns rho_hat with the equality claim left uncertified.
    """
    hyps: list = []
    claims: list[str] = []
    notes: list[str] = []
    # hypothesis (i)
    if b.base_equivalence() is not None:
        hyps.append("structural: skew Waldschmidt constants of b equal the values on b_1 "
                    "(base-equivalent family)")
    elif "waldschmidt_equals_v_b1" in assertions:
        hyps.append("user-asserted: w^(b) = w(b_1) for every Rees valuation w of b_1")
        claims.append("certified-given-assertions")
    else:
        _disprove_or_fail_hypothesis_i(b, horizon)
    # hypothesis (ii): the closure gap
    gap = _closure_gap(b, horizon, assertions)
    hyps.append(f"closure gap k = {gap.k} "
                f"({'certified bound' if gap.certified else f'window-tightened, horizon {gap.horizon}'})")
    rees = rho_hat_rees(a, b, kmax=kmax, horizon=horizon, assertions=assertions)
    hyps.extend(rees.hypotheses)
    rho_hat = rees.value
    details = {"rho_hat": rho_hat, "rees_report": rees, "gap": gap}
    search = {"budget": search_budget, "kmax": kmax, "horizon": horizon}
    if rho_hat == POS_INFINITY:
        return ResurgenceReport("rho_exact", POS_INFINITY, True, (), tuple(hyps),
                                claims=("rho >= rho_hat = +inf",), search=search, details=details)
    if rho_hat == NEG_INFINITY:
        return ResurgenceReport("rho_exact", NEG_INFINITY, True, (), tuple(hyps),
                                claims=("any escape would contradict rho_hat = -inf under the closure gap",),
                                search=search, details=details)
    if gap.k == 0:
        if gap.certified:
            claims.append("members of b are integrally closed: rho(a, b) = rho(a, closure(b)) = rho_hat")
        else:
            claims.append(f"closure gap 0 is window-tightened (horizon {gap.horizon}): "
                          "equality certified given the window certificate")
        return ResurgenceReport("rho_exact", rho_hat, True, (), tuple(hyps),
                                claims=tuple(claims), search=search, details=details)
    witness_pair = _search_witness(a, b, rho_hat.value, search_budget)
    if witness_pair is None:
        notes.append(f"no escape pair with s/r > rho_hat found with s + r <= {search_budget}; "
                     "rho = rho_hat up to the search budget")
        return ResurgenceReport("rho_exact", rho_hat, False, (), tuple(hyps),
                                claims=tuple(claims), notes=tuple(notes),
                                search=search, details=details)
    s0, r0 = witness_pair
    bound_n = (gap.k * rho_hat.value) / (Fraction(s0, r0) - rho_hat.value)
    r_limit = ceil_frac(bound_n) - 1
    best = None
    for r in range(1, r_limit + 1):
        s_limit = ceil_frac((r + gap.k) * rho_hat.value) - 1
        found = _max_escape_s(a, b, r, s_limit)
        if found is not None:
            ratio = Fraction(found, r)
            if best is None or ratio > best[0]:
                best = (ratio, found, r)
    if best is None:  # pragma: no cover - (s0, r0) lies in the region
        raise AssertionError("search region lost the witness pair")
    witness = a.member(best[1]).witness_not_in(b.member(best[2]))
    claims += [
        "exact maximum over the certified finite region",
        "rho is rational (finite maximum of integer ratios)",
    ]
    details["region"] = {"N": bound_n, "witness_pair": (s0, r0)}
    return ResurgenceReport("rho_exact", finite(best[0]), True,
                            ((best[1], best[2], witness),), tuple(hyps),
                            claims=tuple(claims), search=search, details=details)


def _disprove_or_fail_hypothesis_i(b, horizon):
    """Window-probe hypothesis (i); raise with a definitive counterexample when
    a prefix already pushes the skew Waldschmidt constant below w(b_1)."""
    b1 = b.member(1)
    if not b1.is_proper():
        raise HypothesisError("b_1 is not a proper nonzero ideal")
    for weights, val in rees_valuations(b1).valuations:
        v = MonomialValuation(weights)
        upper = min(Fraction(v.of_ideal(b.member(n)), n) for n in range(1, horizon + 1))
        if upper < val:
            raise HypothesisError(
                f"hypothesis w^(b) = w(b_1) fails: weights {weights} give "
                f"w(b_1) = {val} but a window prefix already shows w^(b) <= {upper}"
            )
    raise HypothesisError(
        "cannot certify w^(b) = w(b_1) for this family kind from a finite window; "
        "assert 'waldschmidt_equals_v_b1' explicitly if it is known"
    )


def _closure_gap(b, horizon, assertions) -> EquivalenceConstant:
    if b.members_integrally_closed():
        return EquivalenceConstant(0, 0, True, horizon)
    if b.kind == "powers":
        return bequiv_constant("closure_powers", b.ideal, horizon)
    for text in assertions:
        if text.startswith("closure_gap:"):
            k = int(text.split(":", 1)[1])
            return EquivalenceConstant(k, k, False, horizon)
    raise HypothesisError(
        "no closure-gap certificate for this family kind; assert 'closure_gap:<k>' if known"
    )


def _search_witness(a, b, rho_hat: Fraction, budget: int):
    """First (s, r) in increasing s+r with an escape and s/r > rho_hat."""
    for total in range(2, budget + 1):
        for r in range(1, total):
            s = total - r
            if Fraction(s, r) <= rho_hat:
                continue
            if not a.member(s).is_subset_of(b.member(r)):
                return s, r
    return None


def _max_escape_s(a, b, r, s_limit):
    """Largest s <= s_limit with a_s escaping b_r (top-down break for filtrations)."""
    b_r = b.member(r)
    if a.is_structural_filtration:
        for s in range(s_limit, 0, -1):
            if not a.member(s).is_subset_of(b_r):
                return s
        return None
    best = None
    for s in range(1, s_limit + 1):
        if not a.member(s).is_subset_of(b_r):
            best = s
    return best


# ---------------------------------------------------------------------------
# scaling and topology checks
# ---------------------------------------------------------------------------


@dataclass
class VeroneseScalingResult:
    """Window and exact comparisons of rho(a, powers(b_k)) against k*rho(a, b)."""

    holds: bool
    k: int
    window_lhs: ExtendedRational
    window_rhs_scaled: ExtendedRational
    exact_lhs: Optional[ExtendedRational]
    exact_rhs_scaled: Optional[ExtendedRational]
    hypothesis: fam.ValidationReport
    notes: Tuple[str, ...] = ()


def veronese_scaling_check(a: fam.GradedFamily, b: fam.GradedFamily, k: int,
                           window: int) -> VeroneseScalingResult:
    """Check rho(a, powers(b_k)) <= k * rho(a, b) on matched windows, and the
    exact asymptotic equality when the Rees formula applies to both sides.

    The window matching widens the right search to r <= k*window: an escape
    from b_k^r is an escape from b_(kr), so the two window suprema nest the
    same way the full suprema do.
    """
    ver = fam.is_standard_veronese(b, k, min(window, 8))
    if not ver.holds:
        raise HypothesisError(f"b is not standard-Veronese at k = {k} on the window", ver)
    bk_family = fam.powers(b.member(k), name=f"powers(b_{k})")
    lhs = rho_window(a, bk_family, window, window)
    rhs = rho_window(a, b, window, k * window)
    rhs_scaled = _scale_extended(rhs.value, k)
    window_ok = lhs.value <= rhs_scaled
    exact_lhs = exact_rhs = None
    notes = []
    try:
        exact_lhs = rho_hat_rees(a, bk_family).value
        exact_rhs = _scale_extended(rho_hat_rees(a, b).value, k)
        exact_ok = exact_lhs == exact_rhs
        if not exact_ok:
            notes.append("asymptotic scaling equality fails")
    except CapabilityError as exc:
        exact_ok = True
        notes.append(f"exact comparison skipped: {exc}")
    return VeroneseScalingResult(window_ok and exact_ok, k, lhs.value, rhs_scaled,
                                 exact_lhs, exact_rhs, ver, tuple(notes))


@dataclass
class LinearlyFinerResult:
    """Outcome of the linear-comparability check between two filtrations.

    f is (slope, intercept) with a_(slope*i + intercept) <= b_i verified on
    the window; a verification failure signals that the window estimate of
    rho undershot the true value.
    """

    finer: bool
    f: Optional[Tuple[int, int]]
    rho_star: ExtendedRational
    failure: Optional[Tuple[int, tuple]] = None


def linearly_finer_check(a: fam.GradedFamily, b: fam.GradedFamily, window: int,
                         rho_star: Optional[ExtendedRational] = None) -> LinearlyFinerResult:
    """Build f(n) = ceil(rho*) n + 1 from the window resurgence and verify
    a_(f(i)) <= b_i for i <= window."""
    if rho_star is None:
        rho_star = rho_window(a, b, window, window).value
    if rho_star == POS_INFINITY:
        return LinearlyFinerResult(False, None, rho_star)
    if rho_star == NEG_INFINITY:
        f = (1, 0)  # a_i <= b_i already
    else:
        f = (max(ceil_frac(rho_star.value), 0), 1)
    slope, intercept = f
    for i in range(1, window + 1):
        witness = a.member(slope * i + intercept).witness_not_in(b.member(i))
        if witness is not None:
            return LinearlyFinerResult(False, f, rho_star, failure=(i, witness))
    return LinearlyFinerResult(True, f, rho_star)
