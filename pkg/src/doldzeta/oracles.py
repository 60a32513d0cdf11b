"""Brute-force fixed-point counts for maps induced on derived spaces.

Given a finite self-map f, each functor here has a concrete finite model:
multisets of bounded multiplicity, subsets of bounded size, tuples with a
repetition bound, or group orbits of maps with a constrained fiber
partition.  Counting the fixed points of the induced map by exhaustive
enumeration gives the ground truth against which every closed-form series
in this package is verified.

All enumerations sit behind a size guard (default 10^7 candidate points,
overridable through the DOLD_ZETA_MAX_ENUM environment variable).
"""

from __future__ import annotations

import os
from itertools import combinations, combinations_with_replacement, product

from .dynamics import FiniteSelfMap
from .partitions import (
    PartitionFamily,
    PermutationGroup,
    fiber_partition,
    invert_perm,
    natural_gset,
    perm_cycle_count,
    validate_gset,
)

DEFAULT_MAX_ENUM = 10_000_000


class EnumerationLimitError(ValueError):
    """An oracle refused an enumeration larger than the configured guard."""

    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(
            f"enumeration of {size} candidates exceeds the guard {limit}; "
            "raise DOLD_ZETA_MAX_ENUM to override"
        )


def enumeration_limit(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("DOLD_ZETA_MAX_ENUM")
    return int(env) if env else DEFAULT_MAX_ENUM


def _guard(size: int, max_enum=None):
    limit = enumeration_limit(max_enum)
    if size > limit:
        raise EnumerationLimitError(size, limit)


class PointedFiniteSet:
    """A finite pointed set (basepoint index 0), optionally with a group
    action fixing the basepoint.  Its reduced Euler characteristic is
    size - 1."""

    __slots__ = ("size", "action")

    def __init__(self, size: int, action=None):
        if size < 1:
            raise ValueError("a pointed set has at least its basepoint")
        self.size = size
        self.action = None
        if action is not None:
            table = {}
            for g, perm in action.items():
                perm = tuple(int(y) for y in perm)
                if sorted(perm) != list(range(size)) or perm[0] != 0:
                    raise ValueError("action must permute the set and fix the basepoint")
                table[tuple(g)] = perm
            self.action = table

    @property
    def reduced_euler(self) -> int:
        return self.size - 1

    def act(self, g, y: int) -> int:
        if self.action is None:
            return y
        return self.action[tuple(g)][y]

    def trace(self, g) -> int:
        """Number of non-basepoint fixed points of the group element."""
        if self.action is None:
            return self.size - 1
        perm = self.action[tuple(g)]
        return sum(1 for y in range(1, self.size) if perm[y] == y)

    @classmethod
    def smash_power(cls, points: int, group: PermutationGroup, gset=None) -> "PointedFiniteSet":
        """The k-fold smash power of a pointed set with `points` non-basepoint
        elements, with the group permuting the k factors through `gset`.

        Non-basepoint elements are the tuples in {0..points-1}^k, encoded in
        mixed radix; a factor permutation s sends x to x o s^{-1}.  For any
        group element g with c(g) cycles on the factors, the trace is
        points^{c(g)}.
        """
        if gset is None:
            gset = natural_gset(group, group.degree)
        k = len(gset[0]) if gset else group.degree
        if points < 0:
            raise ValueError("the number of non-basepoint elements must be >= 0")
        size = points ** k + 1

        def encode(tup):
            y = 0
            for x in tup:
                y = y * points + x
            return y + 1

        tuples = list(product(range(points), repeat=k)) if points else []
        action = {}
        for g, perm in zip(group.elements, gset):
            inv = invert_perm(perm)
            images = [0] * size
            for tup in tuples:
                images[encode(tup)] = encode(tuple(tup[inv[j]] for j in range(k)))
            action[g] = tuple(images)
        return cls(size, action)


def fixed_bounded_multisets(f: FiniteSelfMap, k: int, bound=None, max_enum=None) -> int:
    """Fixed points of the induced map on multisets of size k with all
    multiplicities <= bound (bound None means unbounded).

    A multiset m is fixed exactly when its pushforward along f equals m,
    i.e. sum_{x: f(x)=y} m_x = m_y for every y; such a multiset is a sum of
    periodic orbits.  k = 0 counts the empty multiset once.
    """
    if k < 0:
        raise ValueError("multiset size must be >= 0")
    if k == 0:
        return 1
    n = f.size
    if n == 0:
        return 0
    if bound is not None and bound <= 0:
        return 0
    from math import comb

    _guard(comb(n + k - 1, k), max_enum)
    count = 0
    for combo in combinations_with_replacement(range(n), k):
        mult = [0] * n
        for x in combo:
            mult[x] += 1
        if bound is not None and max(mult) > bound:
            continue
        push = [0] * n
        for x, m in enumerate(mult):
            if m:
                push[f(x)] += m
        if push == mult:
            count += 1
    return count


def fixed_invariant_subsets(f: FiniteSelfMap, k: int, max_enum=None) -> int:
    """Nonempty subsets A with |A| <= k and f(A) = A (unions of periodic orbits)."""
    if k < 1:
        return 0
    n = f.size
    from math import comb

    _guard(sum(comb(n, j) for j in range(1, min(k, n) + 1)), max_enum)
    count = 0
    for j in range(1, min(k, n) + 1):
        for combo in combinations(range(n), j):
            subset = set(combo)
            if {f(x) for x in subset} == subset:
                count += 1
    return count


def fixed_bounded_tuples(f: FiniteSelfMap, k: int, bound: int, max_enum=None) -> int:
    """Fixed tuples of length k over the fixed-point set of f, in which no
    value is repeated more than `bound` times.  k = 0 counts 1."""
    if k < 0:
        raise ValueError("tuple length must be >= 0")
    if k == 0:
        return 1
    if bound is not None and bound <= 0:
        return 0
    fixed = f.fixed_points()
    _guard(len(fixed) ** k, max_enum)
    count = 0
    for tup in product(fixed, repeat=k):
        if bound is None or max(tup.count(x) for x in set(tup)) <= bound:
            count += 1
    return count


def _orbit_ids(points, movers):
    """Partition `points` into orbits under the given family of bijections."""
    ids = {}
    next_id = 0
    for p in points:
        if p in ids:
            continue
        stack = [p]
        ids[p] = next_id
        while stack:
            q = stack.pop()
            for move in movers:
                r = move(q)
                if r not in ids:
                    ids[r] = next_id
                    stack.append(r)
        next_id += 1
    return ids


def fixed_partition_orbits(
    f: FiniteSelfMap,
    group: PermutationGroup,
    family: PartitionFamily,
    coefficient: PointedFiniteSet = None,
    gset=None,
    max_enum=None,
) -> int:
    """Fixed points of the induced map on the orbit space of maps a: K -> M
    whose fiber partition lies in the family, optionally smashed with a
    pointed coefficient set.

    Candidate points are pairs (a, y) with pi(a) in the family and y a
    non-basepoint element of the coefficient set; the group acts diagonally
    (a by precomposition, y through its own action) and the induced map
    sends [a, y] to [f o a, y].  An orbit counts as fixed when the image of
    a representative lands back in the same orbit, equivalently when some
    g in G satisfies f o a = a o g and g fixes y.
    """
    k = family.ground
    if gset is None:
        gset = natural_gset(group, k)
    gset = validate_gset(group, gset)
    if any(len(perm) != k for perm in gset):
        raise ValueError("the action table must give one degree-k permutation per element")
    n = f.size
    ys = list(range(1, coefficient.size)) if coefficient is not None else [None]
    _guard(n ** k * max(1, len(ys)), max_enum)

    admissible = [
        a for a in product(range(n), repeat=k) if fiber_partition(a) in family
    ]
    points = [(a, y) for a in admissible for y in ys]

    inverses = [invert_perm(perm) for perm in gset]
    movers = []
    for g, inv in zip(group.elements, inverses):
        def move(point, g=g, inv=inv):
            a, y = point
            image_a = tuple(a[inv[i]] for i in range(k))
            image_y = coefficient.act(g, y) if coefficient is not None else None
            return (image_a, image_y)

        movers.append(move)

    ids = _orbit_ids(points, movers)
    fixed = set()
    for (a, y), oid in ids.items():
        if oid in fixed:
            continue
        target = (tuple(f(x) for x in a), y)
        if ids.get(target) == oid:
            fixed.add(oid)
    return len(fixed)


def fixed_gmap_space(
    f: FiniteSelfMap,
    group: PermutationGroup,
    gset=None,
    max_enum=None,
) -> int:
    """Fixed points of a |-> f o a on the orbit space map(K, M)/G.

    Computed twice: by explicit orbit enumeration, and as the Burnside
    average (1/|G|) sum_g #{a : f o a = a o g}.  The two counts must agree;
    a mismatch is an internal logic error.
    """
    if gset is None:
        gset = group.elements
    gset = validate_gset(group, gset)
    k = len(gset[0]) if gset else group.degree
    n = f.size
    _guard(n ** k, max_enum)

    maps = list(product(range(n), repeat=k))
    inverses = [invert_perm(perm) for perm in gset]
    movers = [
        (lambda a, inv=inv: tuple(a[inv[i]] for i in range(k))) for inv in inverses
    ]
    ids = _orbit_ids(maps, movers)
    fixed = set()
    for a, oid in ids.items():
        if oid not in fixed:
            image = tuple(f(x) for x in a)
            if ids[image] == oid:
                fixed.add(oid)
    orbit_count = len(fixed)

    total = 0
    for perm in gset:
        for a in maps:
            if all(f(a[i]) == a[perm[i]] for i in range(k)):
                total += 1
    if total % group.order:
        raise RuntimeError("Burnside sum is not divisible by the group order")
    burnside = total // group.order
    if burnside != orbit_count:
        raise RuntimeError(
            f"orbit enumeration ({orbit_count}) disagrees with the Burnside "
            f"average ({burnside})"
        )
    return orbit_count


def induced_bounded_multiset_map(
    pointed_map: FiniteSelfMap, k: int, bound=None, max_enum=None
) -> FiniteSelfMap:
    """The induced self-map on bounded multisets over the non-basepoint part
    of a pointed map (basepoint 0 absorbing).

    Point 0 of the result is the basepoint; the remaining points are the
    multisets of size k drawn from {1..n-1} with multiplicities <= bound.
    A multiset maps to its pushforward, or to the basepoint whenever the
    pushforward touches 0 or violates the bound.
    """
    if pointed_map(0) != 0:
        raise ValueError("expected a pointed map fixing index 0")
    if k < 1:
        raise ValueError("multiset size must be >= 1")
    from math import comb

    n = pointed_map.size
    _guard(comb(max(n - 1, 0) + k - 1, k) if n > 1 else 0, max_enum)
    multisets = []
    for combo in combinations_with_replacement(range(1, n), k):
        if bound is None or max(combo.count(x) for x in set(combo)) <= bound:
            multisets.append(combo)
    index = {m: i + 1 for i, m in enumerate(multisets)}
    mapping = [0]
    for m in multisets:
        image = tuple(sorted(pointed_map(x) for x in m))
        if 0 in image:
            mapping.append(0)
        elif bound is not None and max(image.count(x) for x in set(image)) > bound:
            mapping.append(0)
        else:
            mapping.append(index[image])
    return FiniteSelfMap(mapping)


def coefficient_traces(group: PermutationGroup, euler: int, gset=None) -> dict:
    """Traces of the group elements on the smash power of a pointed set with
    reduced Euler characteristic `euler`: g has trace euler^{c(g)}, with c(g)
    the number of cycles of g on the smash factors.  For euler >= 0 this is a
    literal fixed-tuple count; the same formula extends to all integers."""
    if gset is None:
        gset = natural_gset(group, group.degree)
    return {g: euler ** perm_cycle_count(perm) for g, perm in zip(group.elements, gset)}
