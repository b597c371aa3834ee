"""Connected-component classification of strata.

Genus 0 strata are connected; genus 1 components are counted by the
divisors of the degree gcd (dropping the full divisor when there are
only two singularities); genus >= 2 follows the hyperelliptic / even
type case analysis, with minimal strata agreeing with the dedicated
table.  cross_check replays the brute-force oracles against the
classifier and reports agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from .errors import MalformedSignature
from .signature import (StratumSignature, check_wellformed, degree_gcd, genus,
                        is_even_type, is_hyperelliptic_type, is_nonempty)
from .surgery import component_classes, minimal_component_count, pq_orbit_classes

HYPERELLIPTIC = "Hyperelliptic"
SPIN_EVEN = "SpinEven"
SPIN_ODD = "SpinOdd"
UNIQUE = "Unique"
NON_HYPERELLIPTIC = "NonHyperelliptic"


@dataclass(frozen=True)
class ComponentDescriptor:
    label: str
    rotation: int = 0
    notes: str = ""

    def __str__(self):
        if self.label == "Rotation":
            return f"Rotation({self.rotation})"
        return self.label


def _rotation(k, notes=""):
    return ComponentDescriptor("Rotation", rotation=k, notes=notes)


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


def classify(sig: StratumSignature) -> list:
    """Component descriptors of the stratum; empty list iff it is empty."""
    check_wellformed(sig)
    if any(z < 1 for z in sig.zeros):
        raise MalformedSignature(f"{sig} has a marked point (degree-0 zero)")
    if not is_nonempty(sig):
        return []
    g = genus(sig)
    if g == 0:
        return [ComponentDescriptor(UNIQUE)]
    if g == 1:
        d = degree_gcd(sig)
        divs = _divisors(d)
        if sig.r + sig.s == 2:
            divs = [k for k in divs if k != sig.zeros[0]]
        return [_rotation(k) for k in divs]

    hyp = is_hyperelliptic_type(sig)
    even = is_even_type(sig)
    pole_sum = sig.pole_sum()

    if pole_sum % 2 == 1:
        return [ComponentDescriptor(UNIQUE)]
    if pole_sum == 2 and g == 2:
        if hyp:
            return [ComponentDescriptor(HYPERELLIPTIC),
                    ComponentDescriptor(
                        NON_HYPERELLIPTIC,
                        notes="also distinguished by spin parity")]
        return [ComponentDescriptor(UNIQUE)]
    out = []
    if hyp:
        out.append(ComponentDescriptor(HYPERELLIPTIC))
        if even:
            out += [ComponentDescriptor(SPIN_EVEN), ComponentDescriptor(SPIN_ODD)]
        else:
            out.append(ComponentDescriptor(NON_HYPERELLIPTIC))
    else:
        if even:
            out += [ComponentDescriptor(SPIN_EVEN), ComponentDescriptor(SPIN_ODD)]
        else:
            out.append(ComponentDescriptor(UNIQUE))
    return out


@dataclass
class OracleResult:
    name: str
    status: str            # "agree" | "disagree" | "skipped" | "budget"
    expected: object = None
    observed: object = None


@dataclass
class Report:
    signature: StratumSignature
    results: list = field(default_factory=list)
    budget_exceeded: bool = False

    @property
    def agreements(self):
        return [r for r in self.results if r.status == "agree"]

    @property
    def disagreements(self):
        return [r for r in self.results if r.status == "disagree"]


def cross_check(sig: StratumSignature, budget: int = 200000) -> Report:
    """Replay every applicable brute-force oracle against classify.

    budget caps the total enumerated state count; oracles beyond it are
    reported as truncated rather than run.
    """
    report = Report(sig)
    check_wellformed(sig)
    if any(z < 1 for z in sig.zeros):
        raise MalformedSignature(f"{sig} has a marked point")
    comps = classify(sig)
    g = genus(sig) if is_nonempty(sig) else None

    if g == 1:
        d = sig.zeros[0] if sig.r + sig.s == 2 else degree_gcd(sig)
        cost = d * d
        if cost > budget:
            report.results.append(OracleResult("pq_orbits", "budget"))
            report.budget_exceeded = True
        else:
            orbits = pq_orbit_classes(sig)
            want = sorted(c.rotation for c in comps)
            got = sorted(lbl for lbl, _size in orbits)
            status = "agree" if want == got else "disagree"
            report.results.append(OracleResult("pq_orbits", status, want, got))

    if g is not None and g >= 2 and sig.r == 1:
        n0 = sig.zeros[0] - 2 * g
        cost = 1
        for i in range(g):
            cost *= n0 + 2 * i + 1
        if cost > budget:
            report.results.append(OracleResult("bubble_bfs", "budget"))
            report.budget_exceeded = True
        else:
            classes = component_classes(sig)
            table = minimal_component_count(sig)
            ok = (len(classes) == len(comps) == table)
            report.results.append(OracleResult(
                "bubble_bfs", "agree" if ok else "disagree",
                len(comps), (len(classes), table)))

    if g is not None and g >= 2 and sig.r > 1:
        table = minimal_component_count(
            StratumSignature([sig.zero_sum()], sig.poles))
        ok = len(comps) <= table
        report.results.append(OracleResult(
            "minimal_upper_bound", "agree" if ok else "disagree",
            f"<= {table}", len(comps)))

    if g == 1 and sig.r == 1:
        # rotation labels must be exactly the candidate divisors realized
        # by bubbling; checked against the gcd values of the parameters
        n = sig.zeros[0]
        got = sorted({reduce(math.gcd, (k,) + sig.poles)
                      for k in range(1, n)})
        want = sorted(c.rotation for c in comps)
        report.results.append(OracleResult(
            "bubble_gcd_labels", "agree" if got == want else "disagree",
            want, got))

    return report
