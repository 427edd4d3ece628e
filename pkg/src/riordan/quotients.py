"""Finite quotients of the Riordan group over F_p, as explicit p-groups.

Fixing a prime p and a level n >= 2, the quotient of the full group by the
band subgroup H^n semidirect N^n is a finite p-group of order p^(2(n-1)).
Its elements are coded as coordinate tuples

    (a_1, ..., a_{n-1}, b_2, ..., b_n)

listing the h coefficients below degree n and the g coefficients up to
degree n, each reduced mod p.  The group law is evaluated directly on
tuples (powers of the left factor's substitution series are cached per
b-part), and is spot-checked against the series product at construction.

On top of the law sit brute-force engines for the structural statements:
subgroup closure by coset BFS, commutator subgroups via normal closure of
generator commutators, the lower central series and its closed form, width,
generation checks, twist generation of H^m, the projection tower, and
sigma-filtration containments.

Everything returned is immutable; closure work touches no shared mutable
state beyond a per-group cache of substitution powers, so concurrent use on
distinct handles is safe.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import deque
from dataclasses import dataclass

from .group import RiordanElem, rmul
from .series import (
    CoeffRing,
    NottSeries,
    UnitSeries,
    _comp_inverse_coeffs,
    _compose_coeffs,
    _inv_unit_coeffs,
    _mul_coeffs,
    twist,
)

DEFAULT_MAX_ELEMENTS = 1 << 20

# Beyond this many products, closure verification falls back to a
# deterministic sample instead of every (element, generator) pair.
_FULL_VERIFY_LIMIT = 1 << 21


class CapExceededError(RuntimeError):
    """Raised when an operation would enumerate more elements than allowed."""


def max_elements():
    """The enumeration cap; override with the RIORDAN_MAX_ELEMS env var."""
    raw = os.environ.get("RIORDAN_MAX_ELEMS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    value = int(raw)
    if value < 1:
        raise ValueError("RIORDAN_MAX_ELEMS must be a positive integer")
    return value


class SubgroupHandle:
    """A subgroup of one quotient: generators, order, and its elements.

    Closure results carry their full element set.  Structural subgroups
    (the whole group, the band subgroups) carry a membership predicate and
    enumerate themselves only on demand, subject to the element cap.
    The generator tuple always generates the subgroup.
    """

    __slots__ = ("group", "gens", "order", "name", "_elements", "_member", "_builder", "_sorted")

    def __init__(self, group, gens, order, *, elements=None, member=None, builder=None, name="subgroup"):
        if elements is None and member is None:
            raise ValueError("a handle needs elements or a membership predicate")
        self.group = group
        self.gens = tuple(gens)
        self.order = order
        self.name = name
        self._elements = frozenset(elements) if elements is not None else None
        self._member = member
        self._builder = builder
        self._sorted = None

    def __contains__(self, x):
        if self._elements is not None:
            return x in self._elements
        return self._member(x)

    def element_set(self):
        """The full element set; raises CapExceededError past the cap."""
        if self._elements is None:
            if self.order > max_elements():
                raise CapExceededError(
                    f"subgroup {self.name} has {self.order} elements, cap is {max_elements()}"
                )
            self._elements = frozenset(self._builder())
            if len(self._elements) != self.order:
                raise RuntimeError(
                    f"subgroup {self.name}: enumerated {len(self._elements)} elements, "
                    f"expected {self.order}"
                )
        return self._elements

    def sorted_elements(self):
        if self._sorted is None:
            self._sorted = tuple(sorted(self.element_set()))
        return self._sorted

    def __repr__(self):
        return (
            f"SubgroupHandle({self.name}, p={self.group.p}, level={self.group.level}, "
            f"order={self.order}, gens={len(self.gens)})"
        )


class QuotientGroup:
    """The quotient of the Riordan group over F_p at a given level n >= 2."""

    __slots__ = ("p", "level", "na", "order", "identity", "_pow_cache", "_full")

    def __init__(self, p, level):
        ring = CoeffRing(p)  # validates primality
        level = int(level)
        if level < 2:
            raise ValueError("quotient level must be >= 2")
        self.p = ring.p
        self.level = level
        self.na = level - 1
        self.order = p ** (2 * (level - 1))
        self.identity = (0,) * (2 * (level - 1))
        self._pow_cache = {}
        self._full = None
        self._spot_check_law()

    # -- codec ---------------------------------------------------------

    def canonicalize(self, a):
        """The coordinate tuple of a Riordan element modulo level-n tails.

        Two elements canonicalize equally exactly when they differ by a
        factor in H^n semidirect N^n; requires trunc >= level.
        """
        if not isinstance(a, RiordanElem):
            raise TypeError("canonicalize expects a RiordanElem")
        if a.ring.p != self.p:
            raise ValueError(f"element ring {a.ring} does not match F_{self.p}")
        n = self.level
        if a.trunc < n:
            raise ValueError(f"truncation {a.trunc} is below the quotient level {n}")
        return tuple(a.h.coeffs[1:n]) + tuple(a.g.coeffs[2 : n + 1])

    def lift(self, x):
        """The canonical series representative of a coordinate tuple."""
        x = self.validate_tuple(x)
        ring = CoeffRing(self.p)
        na = self.na
        h = UnitSeries(ring, (1,) + x[:na] + (0,))
        g = NottSeries(ring, (0, 1) + x[na:])
        return RiordanElem(h, g)

    def validate_tuple(self, x):
        x = tuple(int(v) for v in x)
        if len(x) != 2 * self.na:
            raise ValueError(f"element tuple must have length {2 * self.na}")
        if any(v < 0 or v >= self.p for v in x):
            raise ValueError(f"coordinates must lie in 0..{self.p - 1}")
        return x

    def project(self, x):
        """The image tuple in the quotient one level down."""
        if self.level <= 2:
            raise ValueError("no quotient below level 2")
        na, lo = self.na, self.na - 1
        return x[:lo] + x[na : na + lo]

    # -- group law ------------------------------------------------------

    def _pows(self, bkey):
        # Powers g^0..g^level of the substitution series with b-coefficients
        # bkey, each as coefficient tuples of length level+1.
        pw = self._pow_cache.get(bkey)
        if pw is None:
            g = (0, 1) + bkey
            pw = [(1,) + (0,) * self.level, g]
            for _ in range(self.level - 1):
                pw.append(_mul_coeffs(pw[-1], g, self.p))
            pw = tuple(pw)
            self._pow_cache[bkey] = pw
        return pw

    def mul(self, x, y):
        """The quotient law: substitute x's g into both components of y."""
        p, na, L = self.p, self.na, self.level
        pows = self._pows(x[na:])
        # h-part: h_x * h_y(g_x)
        acc = list(pows[0])
        for i in range(1, L):
            c = y[i - 1]
            if c:
                pi = pows[i]
                for k in range(i, L + 1):
                    acc[k] += c * pi[k]
        hx = (1,) + x[:na] + (0,)
        h = _mul_coeffs(hx, tuple(acc), p)
        # g-part: g_x + sum_j y_bj * g_x^j
        gacc = list(pows[1])
        for j in range(2, L + 1):
            c = y[na + j - 2]
            if c:
                pj = pows[j]
                for k in range(j, L + 1):
                    gacc[k] += c * pj[k]
        return h[1:L] + tuple(c % p for c in gacc[2 : L + 1])

    def inv(self, x):
        p, na, L = self.p, self.na, self.level
        gbar = _comp_inverse_coeffs((0, 1) + x[na:], p)
        hinv = _inv_unit_coeffs((1,) + x[:na] + (0,), p)
        h = _compose_coeffs(hinv, gbar, p)
        return h[1:L] + gbar[2:]

    def conj(self, x, t):
        """x conjugated by t: t^(-1) x t."""
        return self.mul(self.mul(self.inv(t), x), t)

    def comm(self, x, y):
        """The commutator x^(-1) y^(-1) x y."""
        return self.mul(self.inv(self.mul(y, x)), self.mul(x, y))

    def _spot_check_law(self):
        # Construction-time agreement between the tuple law and the series
        # product followed by canonicalization.
        rng = random.Random(11)
        width = 2 * self.na
        for _ in range(8):
            x = tuple(rng.randrange(self.p) for _ in range(width))
            y = tuple(rng.randrange(self.p) for _ in range(width))
            via_series = self.canonicalize(rmul(self.lift(x), self.lift(y)))
            if via_series != self.mul(x, y):
                raise RuntimeError(
                    f"quotient law disagrees with the series product at p={self.p}, "
                    f"level={self.level}"
                )

    # -- enumeration and closure ----------------------------------------

    def iter_elements(self):
        """All coordinate tuples in lexicographic order, subject to the cap."""
        if self.order > max_elements():
            raise CapExceededError(
                f"group order {self.order} exceeds the enumeration cap {max_elements()}"
            )
        return itertools.product(range(self.p), repeat=2 * self.na)

    def _extend(self, elems, kept, g):
        # Grow the subgroup `elems` to <elems, g>.  The old subgroup's right
        # cosets partition the result; BFS walks coset representatives by
        # right multiplication with the kept generators.
        kept.append(g)
        base = sorted(elems)
        cap = max_elements()
        mul = self.mul
        queue = deque([g])
        while queue:
            r = queue.popleft()
            if r in elems:
                continue
            if len(elems) + len(base) > cap:
                raise CapExceededError(
                    f"closure exceeded the element cap {cap} at p={self.p}, level={self.level}"
                )
            for t in base:
                elems.add(mul(t, r))
            for s in kept:
                queue.append(mul(r, s))

    def _closure(self, gens):
        elems = {self.identity}
        kept = []
        for g in gens:
            if g not in elems:
                self._extend(elems, kept, g)
        return elems, kept

    def _verify_closed(self, elems, gens):
        # Closure under right multiplication by every generator, plus the
        # construction invariants (identity present, generators inside),
        # proves the set is exactly the generated subgroup.  Past the
        # product limit a deterministic sample is checked instead.
        if self.identity not in elems:
            raise RuntimeError("subgroup verification failed: identity missing")
        if not gens:
            return
        ordered = sorted(elems)
        total = len(ordered) * len(gens)
        if total > _FULL_VERIFY_LIMIT:
            step = -(-total // _FULL_VERIFY_LIMIT)
            sample = ordered[::step]
        else:
            sample = ordered
        mul = self.mul
        for g in gens:
            if g not in elems:
                raise RuntimeError("subgroup verification failed: generator missing")
            if self.inv(g) not in elems:
                raise RuntimeError("subgroup verification failed: not inverse-closed")
            for s in sample:
                if mul(s, g) not in elems:
                    raise RuntimeError("subgroup verification failed: not closed under the law")

    def subgroup(self, gens, check=True):
        """The subgroup generated by coordinate tuples, as an explicit handle."""
        gens = [self.validate_tuple(g) for g in gens]
        if not gens:
            raise ValueError("subgroup needs at least one generator")
        elems, kept = self._closure(gens)
        if check:
            self._verify_closed(elems, kept)
        return SubgroupHandle(
            self, kept, len(elems), elements=elems, name="closure"
        )

    # -- structural subgroups --------------------------------------------

    def standard_subgroup(self, m, n):
        """The image of H^m semidirect N^n in this quotient."""
        m, n = int(m), int(n)
        if m < 1 or n < 1:
            raise ValueError("band parameters must be >= 1")
        p, na = self.p, self.na
        afree = tuple(range(m - 1, na))
        bfree = tuple(range(na + n - 1, 2 * na))
        free = afree + bfree
        azero = tuple(range(0, min(m - 1, na)))
        bzero = tuple(range(na, min(na + n - 1, 2 * na)))
        zero = azero + bzero

        def member(x, _zero=zero):
            return all(x[i] == 0 for i in _zero)

        def build(_free=free, _width=2 * na, _p=p):
            for combo in itertools.product(range(_p), repeat=len(_free)):
                t = [0] * _width
                for pos, v in zip(_free, combo):
                    t[pos] = v
                yield tuple(t)

        gens = []
        for pos in free:
            t = [0] * (2 * na)
            t[pos] = 1
            gens.append(tuple(t))
        order = p ** len(free)
        return SubgroupHandle(
            self, gens, order, member=member, builder=build, name=f"H^{m}xN^{n}"
        )

    def full_group(self):
        """The whole quotient as a handle (coordinate generators)."""
        if self._full is None:
            handle = self.standard_subgroup(1, 1)
            self._full = SubgroupHandle(
                self,
                handle.gens,
                self.order,
                member=lambda x: True,
                builder=self.iter_elements,
                name="R",
            )
        return self._full

    def __repr__(self):
        return f"QuotientGroup(p={self.p}, level={self.level}, order={self.order})"


def commutator_subgroup(A, B):
    """The subgroup generated by all commutators [a, b], a in A, b in B.

    Generator-based normal closure: seed with commutators of generator
    pairs, then close under conjugation by the generators of the join.
    This equals [A, B] exactly in a finite group, with no all-pairs pass.
    Both handles must carry true generating sets of their subgroups.
    """
    G = A.group
    if B.group is not G:
        raise ValueError("handles belong to different quotient groups")
    seeds = []
    seen = set()
    for x in A.gens:
        for y in B.gens:
            c = G.comm(x, y)
            if c != G.identity and c not in seen:
                seen.add(c)
                seeds.append(c)
    elems, kept = G._closure(seeds)
    conjugators = []
    cseen = set()
    for t in A.gens + B.gens:
        if t not in cseen:
            cseen.add(t)
            conjugators.append((t, G.inv(t)))
    changed = True
    while changed:
        changed = False
        for t, ti in conjugators:
            for x in list(kept):
                c = G.mul(G.mul(ti, x), t)
                if c not in elems:
                    G._extend(elems, kept, c)
                    changed = True
    G._verify_closed(elems, kept)
    return SubgroupHandle(G, kept, len(elems), elements=elems, name="commutator")


def lower_central_series(G, depth):
    """[gamma_1, ..., gamma_depth] with gamma_{i+1} = [G, gamma_i]."""
    depth = int(depth)
    if depth < 2:
        raise ValueError("depth must be >= 2")
    full = G.full_group()
    chain = [full]
    while len(chain) < depth:
        chain.append(commutator_subgroup(full, chain[-1]))
    return chain


@dataclass(frozen=True)
class LcsCheckRow:
    i: int
    tau: int
    brute_order: int
    formula_order: int
    passed: bool


def lcs_level_exponent(i, p):
    """The closed-form filtration depth of gamma_i for p > 2."""
    if p == 2:
        raise ValueError("the closed form requires p > 2")
    if i < 2:
        raise ValueError("defined for i >= 2")
    return i + (i - 2) // (p - 1)


def verify_lcs_formula(G, depth):
    """Compare each brute-forced gamma_i against H^tau semidirect N^(tau+1).

    tau = i + floor((i-2)/(p-1)); requires p > 2 (the brute-force series
    itself stays available at p = 2 through lower_central_series).
    """
    if G.p == 2:
        raise ValueError(
            "the lower-central-series closed form requires p > 2; "
            "lower_central_series still works at p = 2"
        )
    depth = int(depth)
    chain = lower_central_series(G, depth)
    rows = []
    for i in range(2, depth + 1):
        tau = lcs_level_exponent(i, G.p)
        expected = G.standard_subgroup(tau, tau + 1)
        brute = chain[i - 1]
        ok = brute.order == expected.order and brute.element_set() == expected.element_set()
        rows.append(LcsCheckRow(i, tau, brute.order, expected.order, ok))
    return rows


@dataclass(frozen=True)
class WidthEntry:
    i: int
    gamma_order: int
    width: int
    boundary_flag: bool
    exceeds_bound: bool


def width_report(G, depth):
    """log_p of each lower-central index, with truncation-boundary flags.

    boundary_flag marks rows whose value is forced by the quotient level
    rather than the group (the next gamma already falls outside the level);
    exceeds_bound marks widths above 4.
    """
    depth = int(depth)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    chain = lower_central_series(G, depth + 1)
    entries = []
    for i in range(1, depth + 1):
        o1, o2 = chain[i - 1].order, chain[i].order
        if o1 % o2:
            raise RuntimeError("lower central series is not descending")
        q = o1 // o2
        width = 0
        while q > 1:
            if q % G.p:
                raise RuntimeError("subgroup index is not a power of p")
            q //= G.p
            width += 1
        if G.p == 2:
            flag = o2 == 1
        else:
            flag = lcs_level_exponent(i + 1, G.p) + 1 > G.level
        entries.append(WidthEntry(i, o1, width, flag, width > 4))
    return entries


@dataclass(frozen=True)
class GenerationReport:
    generates: bool
    closure_order: int
    group_order: int


def generation_check(G, candidates):
    """Whether the candidate elements generate the whole quotient."""
    gens = []
    for c in candidates:
        gens.append(G.canonicalize(c) if isinstance(c, RiordanElem) else G.validate_tuple(c))
    handle = G.subgroup(gens)
    return GenerationReport(handle.order == G.order, handle.order, G.order)


@dataclass(frozen=True)
class HmGenerationReport:
    matches: bool
    closure_order: int
    expected_order: int
    p: int
    level: int
    m: int
    generators: int


def hm_generation_check(p, level, m):
    """Twists of 1+x against depth-(m-1) substitutions generate H^m.

    The twist representatives run over cosets of N^(m-1) modulo N^(level-1);
    their closure inside the quotient is compared with the image of H^m.
    """
    level, m = int(level), int(m)
    if not 2 <= m < level:
        raise ValueError("need 2 <= m < level")
    G = QuotientGroup(p, level)
    ring = CoeffRing(p)
    h = UnitSeries(ring, (1, 1) + (0,) * (level - 1))
    x_series = NottSeries.identity(ring, level)
    gens = []
    for combo in itertools.product(range(p), repeat=level - m):
        gc = [0] * (level + 1)
        gc[1] = 1
        for k, v in zip(range(m, level), combo):
            gc[k] = v
        t = twist(h, NottSeries(ring, gc))
        gens.append(G.canonicalize(RiordanElem(t, x_series)))
    handle = G.subgroup(gens)
    expected = G.standard_subgroup(m, level)
    matches = handle.order == expected.order and handle.element_set() == expected.element_set()
    return HmGenerationReport(
        matches, handle.order, expected.order, G.p, level, m, len(handle.gens)
    )


@dataclass(frozen=True)
class TowerReport:
    passed: bool
    pairs_checked: int
    mode: str
    surjective: bool


def tower_consistency(G_hi, G_lo, samples=None, seed=0):
    """Coordinate truncation is a surjective homomorphism one level down.

    samples=None checks every pair exhaustively (small groups only);
    otherwise that many seeded random pairs are checked.
    """
    if G_hi.p != G_lo.p:
        raise ValueError("quotients must share the prime")
    if G_hi.level != G_lo.level + 1:
        raise ValueError("levels must be consecutive (high, low)")
    na_hi, na_lo = G_hi.na, G_lo.na

    def proj(x):
        return x[:na_lo] + x[na_hi : na_hi + na_lo]

    if proj(G_hi.identity) != G_lo.identity:
        return TowerReport(False, 0, "exhaustive", False)
    if samples is None:
        if G_hi.order ** 2 > 4 * 10**6:
            raise CapExceededError(
                f"exhaustive tower check needs {G_hi.order ** 2} pairs; pass samples="
            )
        elems = list(G_hi.iter_elements())
        images = {proj(x) for x in elems}
        surjective = len(images) == G_lo.order
        pairs = 0
        for x in elems:
            for y in elems:
                if proj(G_hi.mul(x, y)) != G_lo.mul(proj(x), proj(y)):
                    return TowerReport(False, pairs, "exhaustive", surjective)
                pairs += 1
        return TowerReport(surjective, pairs, "exhaustive", surjective)
    samples = int(samples)
    rng = random.Random(seed)
    width = 2 * na_hi
    seen = set()
    for k in range(samples):
        x = tuple(rng.randrange(G_hi.p) for _ in range(width))
        y = tuple(rng.randrange(G_hi.p) for _ in range(width))
        seen.add(proj(x))
        if proj(G_hi.mul(x, y)) != G_lo.mul(proj(x), proj(y)):
            return TowerReport(False, k + 1, "sampled", False)
    surjective = len(seen) == G_lo.order if len(seen) >= G_lo.order else True
    return TowerReport(True, samples, "sampled", surjective)


@dataclass(frozen=True)
class SigmaCheckReport:
    contained: bool
    i: int
    j: int
    commutator_order: int
    target_name: str
    target_order: int


def sigma_filtration_check(p, level, sigma, i, j):
    """[G_i, G_j] lands in G_{i+j} for the filtration H^sigma(n) semidirect N^n.

    sigma must satisfy sigma(1) = 1, be nondecreasing, and be subadditive on
    1..level; i + j must stay below the level so the target is visible.
    """
    level, i, j = int(level), int(i), int(j)
    if i < 1 or j < 1:
        raise ValueError("filtration indices must be >= 1")
    if i + j >= level:
        raise ValueError("need i + j < level")
    vals = {n: int(sigma(n)) for n in range(1, level + 1)}
    if vals[1] != 1:
        raise ValueError("sigma(1) must be 1")
    for n in range(1, level):
        if vals[n + 1] < vals[n]:
            raise ValueError(f"sigma must be nondecreasing, fails at {n + 1}")
    for a in range(1, level):
        for b in range(1, level - a + 1):
            if vals[a + b] > vals[a] + vals[b]:
                raise ValueError(f"sigma must be subadditive, fails at {a}+{b}")
    G = QuotientGroup(p, level)
    A = G.standard_subgroup(vals[i], i)
    B = G.standard_subgroup(vals[j], j)
    K = commutator_subgroup(A, B)
    target = G.standard_subgroup(vals[i + j], i + j)
    contained = all(x in target for x in K.element_set())
    return SigmaCheckReport(contained, i, j, K.order, target.name, target.order)
