"""Finite self-maps and the combinatorics of their iterates.

A self-map f of {0..n-1} has, for each m >= 1, some number D_m of periodic
orbits of least period m (its Dold indices); the fixed-point counts of the
iterates are L(f^k) = sum_{m | k} m * D_m, and Moebius inversion recovers
D_m from the L(f^k).  Both data determine the zeta function

    Z(f; q) = prod_m (1 - q^m)^{D_m} = exp(-sum_k L(f^k) q^k / k),

and this module computes it by both routes and insists that they agree.
Profiles not arising from an actual map (negative entries included) are
allowed wherever the arithmetic makes sense.
"""

from __future__ import annotations

from .series import PowerSeries, exponent_product, series_exp_neg_weighted


class HorizonError(ValueError):
    """An operation needed data beyond the stored horizon."""


class NotRealizableError(ValueError):
    """Moebius inversion produced a non-integral orbit count."""


class InconsistentInputError(RuntimeError):
    """Lefschetz numbers and orbit counts fail to satisfy Moebius inversion."""


def divisors(n: int) -> list:
    if n < 1:
        raise ValueError("divisors are defined for n >= 1")
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("the Moebius function is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


class FiniteSelfMap:
    """A self-map of {0..n-1}, given by its value table."""

    __slots__ = ("size", "mapping")

    def __init__(self, mapping, size=None):
        mapping = tuple(int(x) for x in mapping)
        if size is None:
            size = len(mapping)
        if size != len(mapping):
            raise ValueError("declared size disagrees with the value table")
        for x in mapping:
            if not 0 <= x < size:
                raise ValueError(f"value {x} outside 0..{size - 1}")
        self.size = size
        self.mapping = mapping

    @classmethod
    def identity(cls, n: int) -> "FiniteSelfMap":
        return cls(range(n))

    @classmethod
    def from_cycle_lengths(cls, lengths, tails: int = 0) -> "FiniteSelfMap":
        """Disjoint cycles of the given lengths, plus `tails` extra points
        feeding into the first cycle point (or fixed, if there are no cycles)."""
        mapping = []
        start = 0
        for length in lengths:
            if length < 1:
                raise ValueError("cycle lengths must be >= 1")
            mapping.extend(start + (i + 1) % length for i in range(length))
            start += length
        for _ in range(tails):
            mapping.append(0 if mapping else len(mapping))
        return cls(mapping)

    @classmethod
    def random(cls, rng, size: int) -> "FiniteSelfMap":
        return cls([rng.randrange(size) for _ in range(size)] if size else [])

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteSelfMap":
        return cls(obj["map"], size=int(obj["size"]))

    def to_json(self) -> dict:
        return {"size": self.size, "map": list(self.mapping)}

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def compose(self, other: "FiniteSelfMap") -> "FiniteSelfMap":
        """self after other."""
        if self.size != other.size:
            raise ValueError("cannot compose maps of different sizes")
        return FiniteSelfMap([self.mapping[y] for y in other.mapping], size=self.size)

    def iterate(self, j: int) -> "FiniteSelfMap":
        if j < 0:
            raise ValueError("iteration count must be >= 0")
        result = FiniteSelfMap.identity(self.size)
        for _ in range(j):
            result = self.compose(result)
        return result

    def pointed(self) -> "FiniteSelfMap":
        """Adjoin a fixed basepoint at index 0, shifting everything else up."""
        return FiniteSelfMap([0] + [x + 1 for x in self.mapping], size=self.size + 1)

    def fixed_points(self) -> list:
        return [x for x in range(self.size) if self.mapping[x] == x]

    def cycle_lengths(self) -> list:
        """Lengths of the periodic orbits in the functional graph (tails ignored)."""
        state = [0] * self.size  # 0 unvisited, 1 on current path, 2 finished
        lengths = []
        for start in range(self.size):
            if state[start]:
                continue
            path = []
            x = start
            while state[x] == 0:
                state[x] = 1
                path.append(x)
                x = self.mapping[x]
            if state[x] == 1:
                lengths.append(len(path) - path.index(x))
            for y in path:
                state[y] = 2
        return lengths

    def __eq__(self, other):
        if not isinstance(other, FiniteSelfMap):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"FiniteSelfMap({list(self.mapping)})"


class DoldProfile:
    """The vector (D_1, ..., D_N) of periodic-orbit counts up to a horizon.

    Profiles from an actual map are nonnegative; abstract profiles (obtained
    by inverting a Lefschetz sequence) may have negative integer entries.
    """

    __slots__ = ("horizon", "values")

    def __init__(self, values, horizon=None):
        values = tuple(int(v) for v in values)
        if horizon is None:
            horizon = len(values)
        if horizon != len(values):
            raise ValueError("declared horizon disagrees with the value list")
        if horizon < 1:
            raise ValueError("horizon must be >= 1")
        self.horizon = horizon
        self.values = values

    def count(self, m: int) -> int:
        if not 1 <= m <= self.horizon:
            raise HorizonError(f"D_{m} requested beyond horizon {self.horizon}")
        return self.values[m - 1]

    def is_realizable(self) -> bool:
        return all(v >= 0 for v in self.values)

    def to_json(self) -> dict:
        return {"horizon": self.horizon, "values": list(self.values)}

    @classmethod
    def from_json(cls, obj) -> "DoldProfile":
        if isinstance(obj, dict):
            return cls(obj["values"], horizon=int(obj["horizon"]))
        return cls(obj)

    def __eq__(self, other):
        if not isinstance(other, DoldProfile):
            return NotImplemented
        return self.values == other.values

    def __repr__(self):
        return f"DoldProfile({list(self.values)})"


class LefschetzSequence:
    """The vector (L(f^1), ..., L(f^N)) of fixed-point counts of the iterates."""

    __slots__ = ("horizon", "values")

    def __init__(self, values, horizon=None):
        values = tuple(int(v) for v in values)
        if horizon is None:
            horizon = len(values)
        if horizon != len(values):
            raise ValueError("declared horizon disagrees with the value list")
        if horizon < 1:
            raise ValueError("horizon must be >= 1")
        self.horizon = horizon
        self.values = values

    def value(self, k: int) -> int:
        if not 1 <= k <= self.horizon:
            raise HorizonError(f"L(f^{k}) requested beyond horizon {self.horizon}")
        return self.values[k - 1]

    def to_json(self) -> dict:
        return {"horizon": self.horizon, "values": list(self.values)}

    @classmethod
    def from_json(cls, obj) -> "LefschetzSequence":
        if isinstance(obj, dict):
            return cls(obj["values"], horizon=int(obj["horizon"]))
        return cls(obj)

    def __eq__(self, other):
        if not isinstance(other, LefschetzSequence):
            return NotImplemented
        return self.values == other.values

    def __repr__(self):
        return f"LefschetzSequence({list(self.values)})"


def cycle_profile(f: FiniteSelfMap, horizon: int) -> DoldProfile:
    """D_m = number of periodic orbits of least period m, for m <= horizon."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    counts = [0] * horizon
    for length in f.cycle_lengths():
        if length <= horizon:
            counts[length - 1] += 1
    return DoldProfile(counts)


def lefschetz_sequence(f: FiniteSelfMap, horizon: int) -> LefschetzSequence:
    """Fixed-point counts of f, f^2, ..., f^horizon by explicit iteration."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    values = []
    current = f
    for _ in range(horizon):
        values.append(len(current.fixed_points()))
        current = current.compose(f)
    return LefschetzSequence(values)


def dold_from_lefschetz(seq: LefschetzSequence) -> DoldProfile:
    """Moebius inversion D_m = (1/m) sum_{d | m} mu(m/d) L(f^d)."""
    counts = []
    for m in range(1, seq.horizon + 1):
        total = sum(mobius(m // d) * seq.value(d) for d in divisors(m))
        if total % m:
            raise NotRealizableError(
                f"sum_(d|{m}) mu({m}/d) L(f^d) = {total} is not divisible by {m}"
            )
        counts.append(total // m)
    return DoldProfile(counts)


def lefschetz_from_dold(profile: DoldProfile) -> LefschetzSequence:
    """The inverse relation L(f^k) = sum_{m | k} m * D_m."""
    values = [
        sum(m * profile.count(m) for m in divisors(k))
        for k in range(1, profile.horizon + 1)
    ]
    return LefschetzSequence(values)


def iterate_dold_profile(profile: DoldProfile, j: int) -> DoldProfile:
    """Orbit counts of the j-th iterate from those of the map itself.

    An orbit of length n splits under f^j into gcd(n, j) orbits of length
    n / gcd(n, j), hence D_i(f^j) = sum over n with n/gcd(n,j) = i of
    gcd(n, j) * D_n(f).  The output horizon is floor(horizon / j).
    """
    if j < 1:
        raise ValueError("iteration count must be >= 1")
    out_horizon = profile.horizon // j
    if out_horizon < 1:
        raise HorizonError(
            f"horizon {profile.horizon} is too short for the {j}-th iterate"
        )
    from math import gcd

    counts = [0] * out_horizon
    for n in range(1, out_horizon * j + 1):
        g = gcd(n, j)
        i = n // g
        if i <= out_horizon:
            counts[i - 1] += g * profile.count(n)
    return DoldProfile(counts)


def zeta_series(data, order: int, reduced: bool = False) -> PowerSeries:
    """The zeta function Z = prod_m (1-q^m)^{D_m} = exp(-sum L(f^k) q^k / k).

    Accepts either a DoldProfile or a LefschetzSequence, derives the other by
    (inverse) Moebius inversion, computes both closed forms and insists they
    agree before returning the common value.  With `reduced`, D_1 is lowered
    by one (equivalently, the result is divided by 1 - q).
    """
    if isinstance(data, DoldProfile):
        profile = data
        seq = lefschetz_from_dold(profile)
    elif isinstance(data, LefschetzSequence):
        seq = data
        profile = dold_from_lefschetz(seq)
    else:
        raise TypeError("expected a DoldProfile or a LefschetzSequence")
    if profile.horizon < order:
        raise HorizonError(
            f"zeta to order {order} needs horizon >= {order}, got {profile.horizon}"
        )
    shift = 1 if reduced else 0
    exponents = {m: profile.count(m) for m in range(1, order + 1)}
    exponents[1] = exponents.get(1, 0) - shift
    product_form = exponent_product(exponents, order)
    exp_form = series_exp_neg_weighted(
        [seq.value(k) - shift for k in range(1, order + 1)], order
    )
    if product_form.coeffs != exp_form.coeffs:
        raise InconsistentInputError(
            "orbit-product and exponential forms of the zeta function disagree"
        )
    return product_form


def zeta_of_map(f: FiniteSelfMap, order: int, reduced: bool = False) -> PowerSeries:
    """Zeta function of a finite self-map, straight from its cycle structure."""
    return zeta_series(cycle_profile(f, order), order, reduced=reduced)
