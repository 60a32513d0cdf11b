"""Closed-form fixed-point generating functions and the polynomial calculus
behind them.

For a self-map f with zeta function Z(q) = prod_m (1-q^m)^{D_m}, the
classical closed forms implemented here are:

* symmetric powers with multiplicity bound l:
      sum_k (fixed multisets of size k) q^k = Z(q^{l+1}) Z(q)^{-1}
  (the unbounded case is Z(q)^{-1});
* subsets of size at most k:
      sum_k (invariant subsets) q^k = (1-q)^{-1} (Z(q^2) Z(q)^{-1} - 1);
* tuples with a repetition bound, as an exponential generating function:
      sum_k (fixed tuples) q^k / k! = (1 + q/1! + ... + q^l/l!)^{L(f)};
* orbit spaces map(K, M)/G for a finite group action, via the Burnside
  average over the group.

Each of these fixed-point counts is a fixed numerical polynomial in the
orbit counts t_1..t_k of the input map (t_m = number of periodic orbits of
least period m, equivalently the reduced orbit counts of the pointed
extension).  This module computes those polynomials: directly for the group
average, and by a recursion over partition families in general, peeling one
group orbit of partitions at a time and correcting by a smaller functor on
the blocks.  Wedges add polynomials, smash products multiply them, and
composites substitute the iterate-transported orbit-count polynomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import factorial, gcd, lcm
from time import perf_counter

from .dynamics import (
    DoldProfile,
    FiniteSelfMap,
    LefschetzSequence,
    cycle_profile,
    divisors,
    mobius,
    zeta_of_map,
    zeta_series,
)
from .multipoly import MultiPoly
from .oracles import (
    PointedFiniteSet,
    coefficient_traces,
    fixed_bounded_multisets,
    fixed_bounded_tuples,
    fixed_gmap_space,
    fixed_invariant_subsets,
    fixed_partition_orbits,
)
from .partitions import (
    PartitionFamily,
    PermutationGroup,
    minimal_excluded_step,
    natural_gset,
    perm_cycle_type,
    validate_gset,
)
from .series import (
    Poly,
    PowerSeries,
    egf_pack,
    egf_unpack,
    exponent_product,
    rat,
    rat_str,
)

DEFAULT_ORDER = 12


class LefschetzPolynomial:
    """A numerical polynomial in the orbit counts t_1..t_k (t_i of weight i)
    of weighted degree at most k, returning a fixed-point count when
    evaluated at the orbit profile of a map."""

    __slots__ = ("poly", "degree_bound")

    def __init__(self, poly: MultiPoly, degree_bound: int):
        poly = poly.resize(degree_bound)
        if poly.weighted_degree() > degree_bound:
            raise ValueError(
                f"weighted degree {poly.weighted_degree()} exceeds the bound {degree_bound}"
            )
        self.poly = poly
        self.degree_bound = degree_bound

    def evaluate(self, data) -> Fraction:
        if isinstance(data, DoldProfile):
            values = [data.count(m) for m in range(1, self.degree_bound + 1)]
        else:
            values = list(data)
        return self.poly.evaluate(values)

    def evaluate_map(self, f: FiniteSelfMap) -> Fraction:
        horizon = max(self.degree_bound, 1)
        return self.evaluate(cycle_profile(f, horizon))

    def weighted_degree(self) -> int:
        return self.poly.weighted_degree()

    def __eq__(self, other):
        if not isinstance(other, LefschetzPolynomial):
            return NotImplemented
        return self.poly == other.poly

    def __repr__(self):
        return f"LefschetzPolynomial({self.poly}, degree_bound={self.degree_bound})"

    def to_json(self) -> dict:
        return {"degree_bound": self.degree_bound, "polynomial": self.poly.to_json()}


def integer_lattice_check(
    poly: MultiPoly, box: int = 4, max_points: int = 100_000, seed: int = 12345
) -> bool:
    """Check integrality of the polynomial's values on the lattice
    [-box, box]^nvars, exhaustively when that is at most max_points points
    and on a seeded sample otherwise."""
    n = poly.nvars
    if n == 0:
        return poly.evaluate([]).denominator == 1
    total = (2 * box + 1) ** n
    if total <= max_points:
        points = iter_product(range(-box, box + 1), repeat=n)
    else:
        rng = random.Random(seed)
        points = (
            tuple(rng.randint(-box, box) for _ in range(n))
            for _ in range(min(max_points, 10_000))
        )
    for point in points:
        if poly.evaluate(point).denominator != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# closed-form series


def _require_unit(zeta: PowerSeries):
    if zeta.coeffs[0] != 1:
        raise ValueError("zeta-type series must have constant term 1")


def rhs_symmetric_power(zeta: PowerSeries, bound=None, order=None) -> PowerSeries:
    """Z(q^{l+1}) Z(q)^{-1} for a finite bound l, and Z(q)^{-1} when unbounded."""
    _require_unit(zeta)
    if order is not None:
        zeta = zeta.truncated(order)
    if bound is None:
        return zeta.inverse()
    if bound < 0:
        raise ValueError("multiplicity bound must be >= 0")
    return zeta.substitute_power(bound + 1) * zeta.inverse()


def rhs_borsuk_ulam(zeta: PowerSeries, order=None) -> PowerSeries:
    """(1-q)^{-1} (Z(q^2) Z(q)^{-1} - 1): the q^k coefficient counts the
    invariant nonempty subsets of size at most k (zero at k = 0)."""
    _require_unit(zeta)
    if order is not None:
        zeta = zeta.truncated(order)
    n = zeta.order
    ratio = zeta.substitute_power(2) * zeta.inverse()
    geometric = PowerSeries([1] * (n + 1), order=n)
    return geometric * (ratio - PowerSeries.one(n))


def rhs_bounded_tuples(lefschetz_number: int, bound: int, order: int) -> PowerSeries:
    """(1 + q/1! + ... + q^l/l!)^{L}, an exponential generating function whose
    unpacked k-th coefficient counts fixed k-tuples with repetition bound l.
    Negative L is allowed as a formal identity."""
    if bound < 0:
        raise ValueError("repetition bound must be >= 0")
    base = egf_pack([1] * (min(bound, order) + 1), order)
    return base ** int(lefschetz_number)


def configuration_trace_series(
    zeta: PowerSeries, parity: str, epsilon: int = 1, order=None
) -> PowerSeries:
    """Generating function of the signed cohomology traces on unordered
    configuration spaces of a closed orientable r-manifold: Z(q) when r is
    odd and Z(q^2) Z(q)^{-1} when r is even.  The q^k coefficient equals
    epsilon^k times the trace, where epsilon records whether the map
    preserves orientation; dividing out epsilon^k is left to the caller."""
    _require_unit(zeta)
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if order is not None:
        zeta = zeta.truncated(order)
    if parity == "odd":
        return zeta
    return zeta.substitute_power(2) * zeta.inverse()


# ---------------------------------------------------------------------------
# symbolic orbit products


def falling_binomial(var: int, j: int, nvars: int) -> MultiPoly:
    """C(t_var, j) = t(t-1)...(t-j+1)/j! as a polynomial in t_var."""
    poly = MultiPoly.constant(1, nvars)
    t = MultiPoly.variable(var, nvars)
    for i in range(j):
        poly = poly * (t - MultiPoly.constant(i, nvars))
    return poly / factorial(j)


def rising_binomial(var: int, j: int, nvars: int) -> MultiPoly:
    """C(t_var + j - 1, j) = t(t+1)...(t+j-1)/j!."""
    poly = MultiPoly.constant(1, nvars)
    t = MultiPoly.variable(var, nvars)
    for i in range(j):
        poly = poly * (t + MultiPoly.constant(i, nvars))
    return poly / factorial(j)


def _orbit_factor_polys(m: int, bound, nvars: int, order: int) -> list:
    """q-coefficients of (1 + q^m + ... + q^{lm}) ** t_m, or of
    (1 - q^m)^{-t_m} when the bound is None, as polynomials in t_m."""
    out = [MultiPoly.zero(nvars) for _ in range(order + 1)]
    out[0] = MultiPoly.constant(1, nvars)
    if bound is None:
        for j in range(1, order // m + 1):
            out[m * j] = rising_binomial(m, j, nvars)
        return out
    base = [Fraction(0)] * (order + 1)
    for i in range(1, bound + 1):
        if m * i <= order:
            base[m * i] = Fraction(1)
    power = [Fraction(1)] + [Fraction(0)] * order
    j = 0
    while True:
        j += 1
        nxt = [Fraction(0)] * (order + 1)
        for a, ca in enumerate(power):
            if ca == 0:
                continue
            for b in range(m, order + 1 - a):
                if base[b]:
                    nxt[a + b] += ca * base[b]
        power = nxt
        if not any(power):
            break
        binom = falling_binomial(m, j, nvars)
        for idx, c in enumerate(power):
            if c:
                out[idx] = out[idx] + c * binom
    return out


def _convolve_poly_series(a: list, b: list, order: int, nvars: int) -> list:
    out = [MultiPoly.zero(nvars) for _ in range(order + 1)]
    for i, pa in enumerate(a):
        if pa.is_zero:
            continue
        for j in range(order + 1 - i):
            pb = b[j]
            if not pb.is_zero:
                out[i + j] = out[i + j] + pa * pb
    return out


def symmetric_power_polys(bound, order: int) -> list:
    """q-coefficients of prod_{m=1}^{order} (orbit factor for period m), in
    variables t_1..t_order.  The q^k coefficient is the fixed-point count of
    the bounded k-th symmetric power as a polynomial in the orbit counts."""
    nvars = order
    result = [MultiPoly.constant(1, nvars)] + [
        MultiPoly.zero(nvars) for _ in range(order)
    ]
    for m in range(1, order + 1):
        result = _convolve_poly_series(
            result, _orbit_factor_polys(m, bound, nvars, order), order, nvars
        )
    return result


def bounded_power_polynomial(k: int, bound) -> LefschetzPolynomial:
    """The fixed-point polynomial of the compactified k-th symmetric power
    with multiplicity bound l: the coefficient of q^k in
    prod_{m=1}^{k} (1 + q^m + ... + q^{lm})^{t_m}."""
    if k < 0:
        raise ValueError("power must be >= 0")
    if k == 0:
        return LefschetzPolynomial(MultiPoly.constant(1, 0), 0)
    polys = symmetric_power_polys(bound, k)
    return LefschetzPolynomial(polys[k], k)


# ---------------------------------------------------------------------------
# group averages and the partition-family recursion


def _divisor_sum_linear(n: int, nvars: int) -> MultiPoly:
    """sum_{m | n} m * t_m: the fixed points of the n-th iterate in the t's."""
    terms = {}
    for m in divisors(n):
        exps = [0] * nvars
        exps[m - 1] = 1
        terms[tuple(exps)] = Fraction(m)
    return MultiPoly(nvars, terms)


def _validate_traces(group: PermutationGroup, coeff_traces):
    if coeff_traces is None:
        return None
    table = {tuple(g): rat(v) for g, v in coeff_traces.items()}
    for g in group.elements:
        if g not in table:
            raise ValueError("coefficient traces must be defined on every group element")
    return table


def gsymm_polynomial(
    group: PermutationGroup, gset=None, coeff_traces=None
) -> LefschetzPolynomial:
    """The fixed-point polynomial of the orbit space map(K, -)/G.

    For each group element g with d_g(n) orbits of length n on K, a fixed
    point contributes prod_n (sum_{m|n} m t_m)^{d_g(n)}; the polynomial is
    the average over the group, optionally weighted by the trace of g^{-1}
    on a coefficient space.
    """
    if gset is None:
        gset = group.elements
    gset = validate_gset(group, gset)
    k = len(gset[0]) if gset else 0
    traces = _validate_traces(group, coeff_traces)
    total = MultiPoly.zero(k)
    for g, perm in zip(group.elements, gset):
        weight = traces[group.inverse(g)] if traces is not None else Fraction(1)
        if weight == 0:
            continue
        term = MultiPoly.constant(weight, k)
        for n, count in perm_cycle_type(perm).items():
            term = term * _divisor_sum_linear(n, k) ** count
        total = total + term
    return LefschetzPolynomial(total / group.order, k)


def general_lefschetz_polynomial(
    group: PermutationGroup,
    family: PartitionFamily,
    coeff_traces=None,
    gset=None,
    rng=None,
) -> LefschetzPolynomial:
    """The fixed-point polynomial of the compactified space of maps K -> X
    with fiber partition in the family, modulo the group.

    Recursion: if the family is the full partition lattice this is the group
    average above.  Otherwise adjoin the orbit of a minimal excluded
    partition; the enlarged family's polynomial splits off a correction
    living on the blocks of the chosen partition, acted on by its stabilizer,
    with fibers forced discrete:

        L(family) = L(family + orbit) - L(stabilizer on blocks, discrete).

    The result does not depend on which minimal partition is chosen; passing
    an `rng` randomizes the choice (used to test exactly that).
    """
    k = family.ground
    if gset is None:
        gset = natural_gset(group, k)
    gset = validate_gset(group, gset)
    if any(len(perm) != k for perm in gset):
        raise ValueError("action table degree disagrees with the family's ground size")
    traces = _validate_traces(group, coeff_traces)
    if not family.is_stable_under(gset):
        raise ValueError("family is not stable under the group action")
    memo = {}

    def rec(grp, fam, act):
        key = (grp.elements, act, tuple(fam.sorted_members()))
        cached = memo.get(key)
        if cached is not None:
            return cached
        if fam.is_full():
            value = gsymm_polynomial(grp, act, traces).poly
        else:
            step = minimal_excluded_step(fam, grp, act, rng)
            enlarged = rec(grp, step.extended_family, act)
            stabilizer = PermutationGroup(grp.degree, step.stabilizer, validate=False)
            correction = rec(
                stabilizer,
                PartitionFamily.discrete_only(step.block_ground),
                step.block_action,
            )
            value = enlarged - correction.extend(fam.ground)
        memo[key] = value
        return value

    return LefschetzPolynomial(rec(group, family, gset), k)


def falling_factorial(r: int) -> Poly:
    """t(t-1)...(t-r+1) as a univariate polynomial."""
    poly = Poly.one()
    t = Poly.x()
    for i in range(r):
        poly = poly * (t - Poly.constant(i))
    return poly


def order_polynomial(family: PartitionFamily) -> Poly:
    """sum_r n_r(family) t(t-1)...(t-r+1), where n_r counts the members with
    r blocks.  Evaluated at the number of fixed points of a map, it counts
    the fixed maps K -> M with fiber partition in the family."""
    counts = family.block_counts()
    result = Poly.zero()
    for r, n_r in enumerate(counts, start=1):
        if n_r:
            result = result + n_r * falling_factorial(r)
    return result


def disjoint_union_combine(block_count_lists) -> Poly:
    """Combine block-count vectors of families on disjoint index sets: the
    product family's n_r is the convolution of the factors' counts."""
    combined = {0: 1}
    for counts in block_count_lists:
        nxt = {}
        for r0, c0 in combined.items():
            for r, n_r in enumerate(counts, start=1):
                if n_r:
                    nxt[r0 + r] = nxt.get(r0 + r, 0) + c0 * n_r
        combined = nxt
    result = Poly.zero()
    for r, n_r in combined.items():
        if n_r and r >= 1:
            result = result + n_r * falling_factorial(r)
    return result


# ---------------------------------------------------------------------------
# iterates and composition


def iterate_profile_images(d: int, source_vars: int, target_vars: int) -> list:
    """Substitution images expressing the orbit counts of the d-th iterate:
    t_i(f^d) = sum over n with n/gcd(n, d) = i of gcd(n, d) t_n(f)."""
    if target_vars < source_vars * d:
        raise ValueError("target variable space too small for the iterate substitution")
    images = [MultiPoly.zero(target_vars) for _ in range(source_vars)]
    for n in range(1, source_vars * d + 1):
        g = gcd(n, d)
        i = n // g
        if i <= source_vars:
            images[i - 1] = images[i - 1] + g * MultiPoly.variable(n, target_vars)
    return images


def dold_polynomial_of_functor(lp: LefschetzPolynomial, m: int) -> MultiPoly:
    """The m-th orbit count of the induced map, as a polynomial in the orbit
    counts of the input: Moebius inversion of the fixed-point polynomial
    along the iterate substitution.  Weighted degree at most m * k."""
    if m < 1:
        raise ValueError("orbit length must be >= 1")
    k = lp.degree_bound
    if k == 0:
        value = lp.poly.evaluate([])
        return MultiPoly.constant(value if m == 1 else 0, 1)
    target = k * m
    acc = MultiPoly.zero(target)
    for d in divisors(m):
        images = iterate_profile_images(d, k, target)
        acc = acc + mobius(m // d) * lp.poly.substitute(images)
    result = acc / m
    if not integer_lattice_check(result, box=2, max_points=400):
        raise RuntimeError("orbit-count polynomial failed the integrality check")
    return result


def compose_lefschetz(
    outer: LefschetzPolynomial, inner: LefschetzPolynomial
) -> LefschetzPolynomial:
    """Fixed-point polynomial of a composite: substitute the inner functor's
    orbit-count polynomials into the outer polynomial.

    The substitution bounds the weighted degree by (inner degree) * (outer
    degree); the coarser classical bound k^l is asserted as well whenever
    k >= 2 (for k = 1 it can undercount, e.g. composing with the identity).
    """
    l = outer.degree_bound
    k = inner.degree_bound
    if l == 0:
        return outer
    if k == 0:
        base = inner.poly.evaluate([])
        point = [base] + [0] * (l - 1)
        return LefschetzPolynomial(
            MultiPoly.constant(outer.poly.evaluate(point), 0), 0
        )
    target = k * l
    images = [
        dold_polynomial_of_functor(inner, i).resize(target) for i in range(1, l + 1)
    ]
    poly = outer.poly.substitute(images)
    if k >= 2 and poly.weighted_degree() > k ** l:
        raise RuntimeError("composite exceeded the classical degree bound")
    return LefschetzPolynomial(poly, max(target, k))


# ---------------------------------------------------------------------------
# functor expressions and realization


@dataclass(frozen=True)
class IdentityFunctor:
    """X itself; fixed-point polynomial t_1."""


@dataclass(frozen=True)
class ConstantSphereSmash:
    """The constant functor with value a sphere: reduced Euler characteristic
    +1 for even-dimensional spheres, -1 for odd.  Smashing with the odd one
    negates a fixed-point polynomial."""

    parity: str

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")


@dataclass(frozen=True)
class BoundedSymmetricPower:
    """The compactified k-th symmetric power with multiplicity bound l."""

    power: int
    bound: int


@dataclass(frozen=True)
class Wedge:
    parts: tuple


@dataclass(frozen=True)
class Smash:
    parts: tuple


@dataclass(frozen=True)
class Compose:
    outer: object
    inner: object


def expression_polynomial(expr) -> LefschetzPolynomial:
    """Evaluate a functor expression to its fixed-point polynomial: wedges
    add, smash products multiply, composition substitutes."""
    if isinstance(expr, IdentityFunctor):
        return LefschetzPolynomial(MultiPoly.variable(1, 1), 1)
    if isinstance(expr, ConstantSphereSmash):
        value = 1 if expr.parity == "even" else -1
        return LefschetzPolynomial(MultiPoly.constant(value, 0), 0)
    if isinstance(expr, BoundedSymmetricPower):
        return bounded_power_polynomial(expr.power, expr.bound)
    if isinstance(expr, Wedge):
        parts = [expression_polynomial(p) for p in expr.parts]
        bound = max((p.degree_bound for p in parts), default=0)
        total = MultiPoly.zero(bound)
        for p in parts:
            total = total + p.poly.extend(bound)
        return LefschetzPolynomial(total, bound)
    if isinstance(expr, Smash):
        parts = [expression_polynomial(p) for p in expr.parts]
        bound = sum(p.degree_bound for p in parts)
        total = MultiPoly.constant(1, bound)
        for p in parts:
            total = total * p.poly.extend(bound)
        return LefschetzPolynomial(total, bound)
    if isinstance(expr, Compose):
        return compose_lefschetz(
            expression_polynomial(expr.outer), expression_polynomial(expr.inner)
        )
    raise TypeError(f"not a functor expression: {expr!r}")


def realize_polynomial(p: MultiPoly, k: int):
    """Find a positive integer r and a functor expression whose fixed-point
    polynomial is exactly r * p.

    The coefficient of q^i in prod_m (1 + q^m)^{t_m} is t_i plus terms in
    t_1..t_{i-1}, so products of these polynomials form a triangular basis:
    eliminating leading monomials expresses p as a rational combination, and
    r clears the denominators.  Wedges supply integer multiples, smashing
    with an odd sphere supplies signs.
    """
    p = p.resize(k)
    if p.weighted_degree() > k:
        raise ValueError("polynomial weight exceeds the requested degree")
    basis = symmetric_power_polys(1, k) if k else [MultiPoly.constant(1, 0)]
    remainder = p
    combo = {}
    while not remainder.is_zero:
        exps, coeff = remainder.leading_term()
        prod = MultiPoly.constant(1, k)
        for i, e in enumerate(exps):
            if e:
                prod = prod * basis[i + 1] ** e
        combo[exps] = coeff
        remainder = remainder - coeff * prod
    r = 1
    for coeff in combo.values():
        r = lcm(r, coeff.denominator)
    terms = []
    for exps in sorted(combo, key=MultiPoly._ORDER_KEY, reverse=True):
        c = combo[exps] * r
        c = int(c)
        factors = []
        for i, e in enumerate(exps):
            atom = IdentityFunctor() if i == 0 else BoundedSymmetricPower(i + 1, 1)
            factors.extend([atom] * e)
        if not factors:
            base = ConstantSphereSmash("even")
        elif len(factors) == 1:
            base = factors[0]
        else:
            base = Smash(tuple(factors))
        if c < 0:
            base = Smash((ConstantSphereSmash("odd"), base))
            c = -c
        terms.extend([base] * c)
    expr = terms[0] if len(terms) == 1 else Wedge(tuple(terms))
    achieved = expression_polynomial(expr)
    if achieved.poly != p * r:
        raise RuntimeError("realization failed to reproduce the target polynomial")
    return r, expr


# ---------------------------------------------------------------------------
# coefficient spaces


def coefficient_identities_check(
    profile: DoldProfile, euler: int, bound, order=None
) -> dict:
    """Check the closed forms for symmetric powers with a coefficient space
    of reduced Euler characteristic n against the polynomial calculus.

    The left side is the group-average polynomial with traces n^{cycles},
    evaluated at the given orbit profile, for each power k <= order.  The
    applicable right sides are Z^{-n} (unbounded multiplicities, and again
    for n <= 0 once the bound reaches -n) and prod_m (1 + n q^m)^{D_m}
    (multiplicity bound 1).
    """
    if order is None:
        order = min(profile.horizon, 4)
    if profile.horizon < order:
        raise ValueError(f"profile horizon {profile.horizon} is below the order {order}")
    if order > 5:
        raise ValueError("powers above 5 need symmetric groups beyond the supported size")
    if bound is not None and bound < 0:
        raise ValueError("multiplicity bound must be >= 0 (or None for unbounded)")

    lhs = [Fraction(1)]
    for k in range(1, order + 1):
        if bound is not None and bound == 0:
            lhs.append(Fraction(0))
            continue
        group = PermutationGroup.symmetric(k)
        if bound is None or bound >= k:
            family = PartitionFamily.full(k)
        else:
            family = PartitionFamily.max_block(k, bound)
        traces = coefficient_traces(group, euler)
        lp = general_lefschetz_polynomial(group, family, traces)
        lhs.append(lp.evaluate(profile))
    if any(v.denominator != 1 for v in lhs):
        raise RuntimeError("coefficient polynomial produced a non-integer count")
    lhs_int = [int(v) for v in lhs]

    counts = {m: profile.count(m) for m in range(1, order + 1)}
    clauses = []
    power_series_rhs = None
    if bound is None or (euler <= 0 and bound >= -euler):
        power_series_rhs = exponent_product(
            {m: -euler * counts[m] for m in counts}, order
        )
    if bound is None:
        clauses.append(("unbounded-multiplicity", power_series_rhs))
    if bound == 1:
        rhs = PowerSeries.one(order)
        for m, d in counts.items():
            base = PowerSeries.one(order) + PowerSeries.monomial(m, order, euler)
            rhs = rhs * base ** d
        clauses.append(("multiplicity-one", rhs))
    if bound is not None and euler <= 0 and bound >= -euler:
        clauses.append(("bounded-multiplicity", power_series_rhs))
    if not clauses:
        raise ValueError(
            "no closed form applies: need an unbounded multiplicity, bound 1, "
            "or a nonpositive Euler characteristic with bound >= -euler"
        )

    results = []
    overall = True
    for name, rhs in clauses:
        mismatch = None
        for k in range(order + 1):
            if lhs_int[k] != rhs[k]:
                mismatch = {
                    "k": k,
                    "polynomial_side": lhs_int[k],
                    "series_side": rat_str(rhs[k]),
                }
                break
        results.append({"clause": name, "pass": mismatch is None, "first_mismatch": mismatch})
        overall = overall and mismatch is None
    return {
        "identity": "coefficient-space",
        "euler": euler,
        "bound": "inf" if bound is None else bound,
        "order": order,
        "polynomial_side": lhs_int,
        "clauses": results,
        "pass": overall,
    }


# ---------------------------------------------------------------------------
# the oracle-vs-closed-form harness


def compare_series_with_counts(series: PowerSeries, counts, start: int = 0):
    """First index where oracle counts and series coefficients disagree, or None."""
    for k, value in enumerate(counts, start):
        if series[k] != value:
            return {"k": k, "oracle": value, "coefficient": rat_str(series[k])}
    return None


def _parse_bound(value):
    if value is None or value == "inf":
        return None
    return int(value)


def _parse_group_and_action(plan):
    group = PermutationGroup.from_json(plan["group"])
    gset = None
    if "gset" in plan:
        obj = plan["gset"]
        size = int(obj["size"])
        table = [None] * group.order
        for idx, perm in obj["action"].items():
            table[int(idx)] = tuple(int(x) for x in perm)
        if any(entry is None or len(entry) != size for entry in table):
            raise ValueError("the action table must cover every group element")
        gset = tuple(table)
    return group, gset


def verify_identity(plan: dict, max_enum=None) -> dict:
    """Run one closed-form-versus-oracle verification plan and report.

    Plans are dictionaries with an "identity" key selecting the statement to
    check ("md", "main", "prod", "sub", "gsymm", "partition", "coeffic" or
    "config-trace") plus the statement's inputs.  The report carries the
    overall verdict, the first mismatch if any, and the elapsed time.
    """
    started = perf_counter()
    identity = plan["identity"]
    k_max = int(plan.get("k_max", 6))
    report = {"identity": identity, "pass": False, "first_mismatch": None}

    if identity == "md":
        f = FiniteSelfMap.from_json(plan["map"])
        rhs = rhs_symmetric_power(zeta_of_map(f, k_max), None)
        counts = [fixed_bounded_multisets(f, k, None, max_enum) for k in range(k_max + 1)]
        report["first_mismatch"] = compare_series_with_counts(rhs, counts)
        report["series"] = rhs.to_json()
        report["counts"] = counts
    elif identity == "main":
        f = FiniteSelfMap.from_json(plan["map"])
        bound = _parse_bound(plan["l"])
        rhs = rhs_symmetric_power(zeta_of_map(f, k_max), bound)
        counts = [fixed_bounded_multisets(f, k, bound, max_enum) for k in range(k_max + 1)]
        report["first_mismatch"] = compare_series_with_counts(rhs, counts)
        report["series"] = rhs.to_json()
        report["counts"] = counts
    elif identity == "prod":
        f = FiniteSelfMap.from_json(plan["map"])
        rhs = rhs_borsuk_ulam(zeta_of_map(f, k_max))
        counts = [0] + [
            fixed_invariant_subsets(f, k, max_enum) for k in range(1, k_max + 1)
        ]
        report["first_mismatch"] = compare_series_with_counts(rhs, counts)
        report["series"] = rhs.to_json()
        report["counts"] = counts
    elif identity == "sub":
        f = FiniteSelfMap.from_json(plan["map"])
        bound = int(plan["l"])
        rhs = rhs_bounded_tuples(len(f.fixed_points()), bound, k_max)
        unpacked = egf_unpack(rhs)
        counts = [fixed_bounded_tuples(f, k, bound, max_enum) for k in range(k_max + 1)]
        mismatch = None
        for k in range(k_max + 1):
            if unpacked[k] != counts[k]:
                mismatch = {"k": k, "oracle": counts[k], "coefficient": rat_str(unpacked[k])}
                break
        report["first_mismatch"] = mismatch
        report["series"] = rhs.to_json()
        report["counts"] = counts
    elif identity == "gsymm":
        f = FiniteSelfMap.from_json(plan["map"])
        group, gset = _parse_group_and_action(plan)
        lp = gsymm_polynomial(group, gset)
        value = lp.evaluate_map(f)
        oracle = fixed_gmap_space(f, group, gset, max_enum)
        if value != oracle:
            report["first_mismatch"] = {"oracle": oracle, "polynomial": rat_str(value)}
        report["polynomial"] = lp.to_json()
        report["value"] = rat_str(value)
        report["oracle"] = oracle
    elif identity == "partition":
        f = FiniteSelfMap.from_json(plan["map"])
        group, gset = _parse_group_and_action(plan)
        family = PartitionFamily.from_json(plan["family"])
        coefficient = None
        traces = None
        if "coefficient_size" in plan:
            size = int(plan["coefficient_size"])
            coefficient = PointedFiniteSet.smash_power(size, group, gset)
            traces = coefficient_traces(group, size, gset)
        lp = general_lefschetz_polynomial(group, family, traces, gset)
        value = lp.evaluate_map(f)
        oracle = fixed_partition_orbits(f, group, family, coefficient, gset, max_enum)
        if value != oracle:
            report["first_mismatch"] = {"oracle": oracle, "polynomial": rat_str(value)}
        report["polynomial"] = lp.to_json()
        report["value"] = rat_str(value)
        report["oracle"] = oracle
    elif identity == "coeffic":
        if "profile" in plan:
            profile = DoldProfile.from_json(plan["profile"])
        else:
            f = FiniteSelfMap.from_json(plan["map"])
            profile = cycle_profile(f, int(plan.get("N", 4)))
        inner = coefficient_identities_check(
            profile,
            int(plan["euler"]),
            _parse_bound(plan.get("l", "inf")),
            int(plan.get("N", min(profile.horizon, 4))),
        )
        inner["identity"] = "coeffic"
        inner["elapsed_s"] = round(perf_counter() - started, 6)
        return inner
    elif identity == "config-trace":
        if "zeta" in plan:
            zeta = PowerSeries.from_json(plan["zeta"])
        elif "lefschetz" in plan:
            values = plan["lefschetz"]
            zeta = zeta_series(LefschetzSequence(values), min(k_max, len(values)))
        elif "graded" in plan:
            from .graded import GradedEndomorphism, graded_zeta

            zeta = graded_zeta(GradedEndomorphism.from_json(plan["graded"]), k_max)
        else:
            f = FiniteSelfMap.from_json(plan["map"])
            zeta = zeta_of_map(f, k_max)
        epsilon = int(plan.get("epsilon", 1))
        series = configuration_trace_series(zeta, plan["parity"], epsilon)
        traces = [series[k] * (epsilon ** k) for k in range(series.order + 1)]
        report["series"] = series.to_json()
        report["lefschetz_traces"] = [rat_str(t) for t in traces]
        if "expected_traces" in plan:
            expected = [rat(v) for v in plan["expected_traces"]]
            mismatch = None
            for k, want in enumerate(expected):
                if k > series.order or traces[k] != want:
                    mismatch = {"k": k, "expected": rat_str(want)}
                    break
            report["first_mismatch"] = mismatch
    else:
        raise ValueError(f"unknown identity {identity!r}")

    report["pass"] = report["first_mismatch"] is None
    report["elapsed_s"] = round(perf_counter() - started, 6)
    return report
