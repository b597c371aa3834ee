"""Component algebra for minimal strata and the genus-one monodromy oracle.

A component term is a genus-zero one-zero base plus an ordered list of
handle parameters s_1..s_g.  Rewriting rules on adjacent parameters (the
swap, slide and reflection relations, plus the genus-one gcd rule at the
first slot) generate an equivalence; its classes enumerate candidate
connected components independently of the classifier's case analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import MalformedSignature, NotGenusOne, OutOfRange
from .signature import StratumSignature, check_wellformed, degree_gcd, genus


@dataclass(frozen=True)
class ComponentTerm:
    """Base H(n0, -p_1..-p_s) with n0 >= 0, plus bubble parameters."""

    base_degree: int
    poles: tuple
    bubbles: tuple

    def __init__(self, base_degree, poles, bubbles=()):
        object.__setattr__(self, "base_degree", int(base_degree))
        object.__setattr__(self, "poles", tuple(sorted(int(p) for p in poles)))
        object.__setattr__(self, "bubbles", tuple(int(s) for s in bubbles))
        if self.base_degree < 0:
            raise OutOfRange("base degree must be >= 0")
        if self.base_degree != sum(self.poles) - 2:
            raise MalformedSignature(
                "base degree must be sum(poles) - 2 (genus-zero base)")
        for i, s in enumerate(self.bubbles):
            hi = self.degree_before(i) + 1
            if not 1 <= s <= hi:
                raise OutOfRange(f"bubble {s} at slot {i + 1} not in 1..{hi}")

    def degree_before(self, i: int) -> int:
        """Zero degree before the (i+1)-th bubble is attached."""
        return self.base_degree + 2 * i

    @property
    def genus(self) -> int:
        return len(self.bubbles)

    def signature(self) -> StratumSignature:
        return StratumSignature([self.base_degree + 2 * self.genus], self.poles)

    def with_bubbles(self, bubbles) -> "ComponentTerm":
        return ComponentTerm(self.base_degree, self.poles, bubbles)


def bubble(term: ComponentTerm, s: int) -> ComponentTerm:
    """Append one handle; the zero degree grows by 2."""
    hi = term.degree_before(term.genus) + 1
    if not 1 <= s <= hi:
        raise OutOfRange(f"bubble parameter {s} not in 1..{hi}")
    return term.with_bubbles(term.bubbles + (s,))


def _valid(term: ComponentTerm, bubbles) -> bool:
    for i, s in enumerate(bubbles):
        if not 1 <= s <= term.degree_before(i) + 1:
            return False
    return True


def neighbors(term: ComponentTerm) -> set:
    """All terms reachable by one rewriting rule.

    At slot i (zero degree m before it) with the next value t:
      (1) swap s,t           if s,t <= m+1 and not (s == m/2+1 and t == (m+2)/2+1)
      (2) s,t -> t-1, s+1    if s <= m+1 and 2 <= t <= m+3
      (3) s,t -> t-2, s      if s <= m+1, t <= m+3 and t - s >= 2
      (4) s -> m+2-s         at any slot
    plus, at the first slot only (genus-one base), replacement by any s'
    with gcd(s', poles) = gcd(s, poles).
    """
    out = set()
    bs = term.bubbles

    def emit(new_bubbles):
        nb = tuple(new_bubbles)
        if nb != bs and _valid(term, nb):
            out.add(term.with_bubbles(nb))

    for i in range(len(bs)):
        m = term.degree_before(i)
        s = bs[i]
        emit(bs[:i] + (m + 2 - s,) + bs[i + 1:])                     # (4)
        if i + 1 < len(bs):
            t = bs[i + 1]
            # the protected pair {m/2+1, m/2+2} must be blocked in both
            # orders, else the hyperelliptic chain leaks into the others
            guard_ok = {2 * s, 2 * t} != {m + 2, m + 4}
            if s <= m + 1 and t <= m + 1 and guard_ok:
                emit(bs[:i] + (t, s) + bs[i + 2:])                   # (1)
            if s <= m + 1 and 2 <= t <= m + 3:
                emit(bs[:i] + (t - 1, s + 1) + bs[i + 2:])           # (2)
            if s <= m + 1 and t <= m + 3 and t - s >= 2:
                emit(bs[:i] + (t - 2, s) + bs[i + 2:])               # (3)
            if t <= m + 1 and s + 2 <= m + 3 and s + 2 - t >= 2:
                emit(bs[:i] + (t, s + 2) + bs[i + 2:])               # (3) inverse

    if bs:
        g0 = reduce(math.gcd, (bs[0],) + term.poles)
        for s in range(1, term.base_degree + 2):
            if s != bs[0] and reduce(math.gcd, (s,) + term.poles) == g0:
                emit((s,) + bs[1:])
    return out


def all_terms(minimal_sig: StratumSignature) -> list:
    """Every admissible bubble tuple for the given minimal stratum."""
    check_wellformed(minimal_sig)
    if len(minimal_sig.zeros) != 1:
        raise MalformedSignature("component terms need a minimal stratum")
    g = genus(minimal_sig)
    if g < 1:
        raise MalformedSignature("need genus >= 1")
    n0 = minimal_sig.zeros[0] - 2 * g
    if n0 < 0:
        raise MalformedSignature("zero degree too small for the genus")
    base = ComponentTerm(n0, minimal_sig.poles)
    tuples = [()]
    for i in range(g):
        hi = base.degree_before(i) + 1
        tuples = [t + (s,) for t in tuples for s in range(1, hi + 1)]
    return [base.with_bubbles(t) for t in tuples]


def component_classes(minimal_sig: StratumSignature) -> list:
    """Equivalence classes of all admissible terms under the rewriting
    rules; each class is reported by its lexicographically least tuple."""
    terms = all_terms(minimal_sig)
    index = {t: i for i, t in enumerate(terms)}
    parent = list(range(len(terms)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for t in terms:
        for u in neighbors(t):
            union(index[t], index[u])

    groups = {}
    for t, i in index.items():
        groups.setdefault(find(i), []).append(t.bubbles)
    reps = sorted(min(v) for v in groups.values())
    return reps


def pq_orbit_classes(sig: StratumSignature, workers: int = 1) -> list:
    """Genus-one monodromy orbits.

    For H(n,-n) the states are (Z/n)^2 minus the origin; otherwise the
    translation reductions collapse the state space to all of (Z/d)^2,
    d the gcd of all degrees.  Orbits under (p,q) -> (p+q,q) and
    (p,q) -> (p,q+p); returns [(gcd label, orbit size), ...].

    workers > 1 maps seed-state chunks in parallel; the edges are merged
    into one union-find afterwards, so the result is schedule-independent.
    """
    check_wellformed(sig)
    if any(z < 1 for z in sig.zeros):
        raise MalformedSignature(f"{sig} has a marked point")
    if genus(sig) != 1:
        raise NotGenusOne(f"{sig} is not genus one")
    two_singularities = (sig.r + sig.s == 2)
    if two_singularities:
        mod = sig.zeros[0]
        states = [(p, q) for p in range(mod) for q in range(mod)
                  if (p, q) != (0, 0)]
    else:
        mod = degree_gcd(sig)
        states = [(p, q) for p in range(mod) for q in range(mod)]
    index = {st: i for i, st in enumerate(states)}

    def edges_for(chunk):
        out = []
        for (p, q) in chunk:
            i = index[(p, q)]
            out.append((i, index[((p + q) % mod, q)]))
            out.append((i, index[(p, (q + p) % mod)]))
        return out

    if workers > 1 and len(states) > workers:
        from concurrent.futures import ThreadPoolExecutor
        size = (len(states) + workers - 1) // workers
        chunks = [states[i:i + size] for i in range(0, len(states), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            edge_lists = list(pool.map(edges_for, chunks))
        edges = [e for part in edge_lists for e in part]
    else:
        edges = edges_for(states)

    parent = list(range(len(states)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    orbits = {}
    for st, i in index.items():
        orbits.setdefault(find(i), []).append(st)
    out = []
    for root in sorted(orbits):
        members = orbits[root]
        labels = {math.gcd(math.gcd(p, q), mod) for p, q in members}
        if len(labels) != 1:
            raise AssertionError("gcd label is not constant on an orbit")
        out.append((labels.pop(), len(members)))
    out.sort()
    return out


def minimal_component_count(sig: StratumSignature) -> int:
    """The classification table for minimal strata of genus >= 2."""
    check_wellformed(sig)
    if len(sig.zeros) != 1 or genus(sig) < 2:
        raise MalformedSignature("minimal stratum of genus >= 2 required")
    n = sig.zeros[0]
    poles = sig.poles
    g = genus(sig)
    if n % 2 == 1:
        return 1
    if len(poles) == 1:
        return 2 if (g == 2 and poles[0] == 2) else 3
    if len(poles) == 2 and poles[0] == poles[1]:
        p = poles[0]
        if p == 1:
            return 3 if g > 2 else 2
        return 3 if p % 2 == 0 else 2
    if all(p % 2 == 0 for p in poles):
        return 2
    return 1
