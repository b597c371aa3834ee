"""Explicit surface families.

Handles are attached in two certified steps: first a slit (a new saddle
connection) is inserted into a one-zero surface so that the zero splits
with prescribed degrees, then the slit's direct gluing is replaced by a
cylinder.  Replacing the slit vector z by the adjacent pair (z1, z2) on
the upper side and (z2, z1) on the lower side, z1 + z2 = z, inserts
exactly that cylinder, so the split degrees carry the attaching angle.
Every step is checked on the assembled surface rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .construction import (CMINUS, CPLUS, Surface, ZipperedDatum, assemble,
                           assemble_band, pole_profile, singularity_degrees,
                           stratum_of, surface_genus)
from .errors import (Disconnected, InternalError, NonPositiveRealPart,
                     NotTwoSimplePoles, OutOfRange)
from .exact import QQi
from .signature import StratumSignature


def parallelogram_example(z1: QQi, z2: QQi) -> Surface:
    """Two half-planes D+(z1,z2) / D-(z2,z1): the plane with a
    parallelogram removed and opposite sides glued, a surface in H(2,-2)."""
    if z1.re <= 0 or z2.re <= 0:
        raise NonPositiveRealPart("parallelogram sides need positive real part")
    datum = parallelogram_datum()
    return assemble(datum, (z1, z2))


def parallelogram_datum() -> ZipperedDatum:
    return ZipperedDatum(n=2, pi_t=(1, 2), pi_b=(2, 1), nplus=(0, 2),
                         nminus=(0, 2), d_breaks=(0, 1), splus=0, sminus=0)


@dataclass
class Sketch:
    """Mutable layout: label lists per boundary slot, chains fixed."""
    top: list                 # d half-plane slots then splus cylinder slots
    bottom: list
    d: int
    d_breaks: list
    splus: int
    sminus: int
    zeta: list = field(default_factory=list)   # zeta[label-1]

    def n(self) -> int:
        return sum(len(s) for s in self.top)

    def to_datum(self) -> ZipperedDatum:
        pi_t = [lbl for slot in self.top for lbl in slot]
        pi_b = [lbl for slot in self.bottom for lbl in slot]
        nplus, nminus = [0], [0]
        for slot in self.top:
            nplus.append(nplus[-1] + len(slot))
        for slot in self.bottom:
            nminus.append(nminus[-1] + len(slot))
        return ZipperedDatum(self.n(), pi_t, pi_b, nplus, nminus,
                             self.d_breaks, self.splus, self.sminus)

    def assemble(self) -> Surface:
        return assemble(self.to_datum(), tuple(self.zeta))

    def top_domain_index(self, slot: int) -> int:
        return slot if slot < self.d else 2 * self.d + (slot - self.d)

    def bottom_domain_index(self, slot: int) -> int:
        if slot < self.d:
            return self.d + slot
        return 2 * self.d + self.splus + (slot - self.d)

    def copy(self) -> "Sketch":
        return Sketch([list(s) for s in self.top],
                      [list(s) for s in self.bottom],
                      self.d, list(self.d_breaks), self.splus, self.sminus,
                      list(self.zeta))


def _fresh_zeta(label: int) -> QQi:
    return QQi(1, Fraction(1, 13 + label))


def genus0_base(poles) -> Sketch:
    """The connected one-zero genus-zero surface with the given poles,
    built as chains of bare half-plane pairs tied together by connector
    segments, with one-segment cylinder blocks for the simple poles."""
    poles = sorted(int(p) for p in poles)
    if any(p < 1 for p in poles):
        raise OutOfRange("pole orders must be >= 1")
    if sum(poles) < 2:
        raise OutOfRange("need total pole order >= 2")
    big = sorted((p for p in poles if p >= 2), reverse=True)
    s1 = sum(1 for p in poles if p == 1)
    want = StratumSignature([sum(poles) - 2], poles)

    attempts = []
    if big:
        d = sum(q - 1 for q in big)
        d_breaks = [0]
        for q in big:
            d_breaks.append(d_breaks[-1] + q - 1)
        chain_first = d_breaks[:-1]           # first pair slot of each chain
        n_labels = (len(big) - 1) + s1
        for host_mode in (0, 1):
            top = [[] for _ in range(d)] + [[] for _ in range(s1)]
            bottom = [[] for _ in range(d)]
            lbl = 0
            ok = True
            for c in range(1, len(big)):      # connector for chain c+1
                lbl += 1
                top[chain_first[c]].append(lbl)
                bottom[chain_first[c - 1]].append(lbl)
            for j in range(s1):               # one label per cylinder block
                lbl += 1
                top[d + j].append(lbl)
                host = chain_first[-1] if host_mode == 0 else chain_first[0]
                bottom[host].append(lbl)
            sk = Sketch(top, bottom, d, d_breaks, splus=s1, sminus=0)
            sk.zeta = [_fresh_zeta(i + 1) for i in range(n_labels)]
            attempts.append(sk)
    else:
        # all poles simple: a star of cylinder blocks
        top = [[j + 1 for j in range(s1 - 1)]]
        bottom = [[j + 1] for j in range(s1 - 1)]
        sk = Sketch(top, bottom, d=0, d_breaks=[0], splus=1, sminus=s1 - 1)
        sk.zeta = [_fresh_zeta(i + 1) for i in range(s1 - 1)]
        attempts.append(sk)

    for sk in attempts:
        try:
            surf = sk.assemble()
        except Disconnected:
            continue
        if stratum_of(surf) == want and len(surf.vertex_classes) == 1:
            return sk
    raise InternalError(f"could not realize the base surface for poles {poles}")


def _split_prediction(surface: Surface, corner_p, corner_q):
    """Estimated degrees of the two zeros created by cutting the single
    vertex link at two corners; used only to prefilter slit positions."""
    vc = surface.vertex_classes[0]
    idx = {c: i for i, c in enumerate(vc.corners)}
    if corner_p not in idx or corner_q not in idx:
        return None
    i, j = idx[corner_p], idx[corner_q]
    if i == j:
        return None
    angles = vc.angles
    m = len(angles)
    arc1 = sum(angles[(i + 1 + t) % m] for t in range((j - i) % m - 1))
    arc2 = sum(angles[(j + 1 + t) % m] for t in range((i - j) % m - 1))
    return (round(arc1 / (2 * math.pi)), round(arc2 / (2 * math.pi)))


def insert_slit(sketch: Sketch, s_param: int) -> tuple:
    """Add one segment joining the (unique) zero to itself so that it
    breaks into degrees (s_param - 1, m + 1 - s_param); returns
    (new sketch, slit label).  Position is found by search and certified
    on the assembled surface."""
    base = sketch.assemble()
    if len(base.vertex_classes) != 1:
        raise InternalError("insert_slit needs a one-zero surface")
    m = base.vertex_classes[0].degree
    if not 1 <= s_param <= m + 1:
        raise OutOfRange(f"bubble parameter {s_param} not in 1..{m + 1}")
    want = tuple(sorted((s_param - 1, m + 1 - s_param)))
    label = sketch.n() + 1

    candidates = []
    for ts in range(len(sketch.top)):
        dom_t = sketch.top_domain_index(ts)
        for i in range(len(sketch.top[ts]) + 1):
            for bs in range(len(sketch.bottom)):
                dom_b = sketch.bottom_domain_index(bs)
                for j in range(len(sketch.bottom[bs]) + 1):
                    pred = _split_prediction(base, (dom_t, i), (dom_b, j))
                    rank = 0 if (pred is not None and
                                 tuple(sorted(pred)) == want) else 1
                    candidates.append((rank, ts, i, bs, j))
    candidates.sort()

    for _rank, ts, i, bs, j in candidates:
        sk = sketch.copy()
        sk.top[ts].insert(i, label)
        sk.bottom[bs].insert(j, label)
        sk.zeta.append(_fresh_zeta(label))
        try:
            surf = sk.assemble()
        except Disconnected:
            continue
        if len(surf.vertex_classes) != 2:
            continue
        degs = singularity_degrees(surf)
        if degs != want:
            continue
        edge = ("seg", label)
        if surf.edge_tail[edge] == surf.edge_head[edge]:
            continue
        return sk, label
    raise InternalError(
        f"no slit position realizes split {want} on this surface")


def bubble_at_slit(sketch: Sketch, label: int) -> Sketch:
    """Replace the slit's direct gluing by a cylinder: the slit vector z
    becomes the adjacent pair (z1, z2) upstairs and (z2, z1) downstairs,
    with z = z1 + z2.  The tilt of z1, z2 is chosen so the inserted
    cylinder is visible in the z direction."""
    sk = sketch.copy()
    new_label = sk.n() + 1
    zhat = sk.zeta[label - 1]
    h = Fraction(1, 16 + 2 * new_label)
    z1 = QQi(zhat.re / 2, zhat.im / 2 - h)
    z2 = QQi(zhat.re / 2, zhat.im / 2 + h)
    placed_top = placed_bottom = False
    for slot in sk.top:
        if label in slot:
            slot.insert(slot.index(label) + 1, new_label)
            placed_top = True
            break
    for slot in sk.bottom:
        if label in slot:
            slot.insert(slot.index(label), new_label)
            placed_bottom = True
            break
    if not (placed_top and placed_bottom):
        raise InternalError("slit label not present on both sides")
    sk.zeta[label - 1] = z1
    sk.zeta.append(z2)
    return sk


def add_bubble(sketch: Sketch, s_param: int) -> Sketch:
    """One handle, attaching angle encoded by s_param (certified)."""
    base = sketch.assemble()
    m = base.vertex_classes[0].degree
    old_sig = stratum_of(base)
    slitted, label = insert_slit(sketch, s_param)
    bubbled = bubble_at_slit(slitted, label)
    surf = bubbled.assemble()
    want = StratumSignature([m + 2], old_sig.poles)
    if stratum_of(surf) != want:
        raise InternalError("bubbling produced the wrong stratum")
    if surface_genus(surf) != surface_genus(base) + 1:
        raise InternalError("bubbling did not raise the genus by one")
    return bubbled


def bubble_chain_sketch(poles, s_list) -> Sketch:
    """C_0 + bubbles s_1, ..., s_g realized as an explicit surface."""
    sk = genus0_base(poles)
    for s in s_list:
        sk = add_bubble(sk, s)
    return sk


def bubbled_torus(k: int, poles) -> tuple:
    """Genus-one datum in H(sum(poles), -poles) with a handle bubbled at
    angle parameter k; returns (datum, zeta)."""
    poles = sorted(int(p) for p in poles)
    n = sum(poles)
    if n < 2:
        raise OutOfRange("need total pole order >= 2")
    if not 1 <= k <= n - 1:
        raise OutOfRange(f"k = {k} not in 1..{n - 1}")
    sk = bubble_chain_sketch(poles, [k])
    return sk.to_datum(), tuple(sk.zeta)


def bubbled_torus_surface(k: int, poles) -> Surface:
    datum, zeta = bubbled_torus(k, poles)
    return assemble(datum, zeta)


def close_two_simple_poles(surface: Surface, twist=0) -> Surface:
    """Cut both infinite cylinders along closed geodesics and glue the
    circles, yielding a compact surface.  The regluing twist defaults
    to 0; all choices land in the same connected component."""
    prof = pole_profile(surface)
    if len(prof) != 2 or any(p.order != 1 for p in prof):
        raise NotTwoSimplePoles(
            f"surface has poles {[p.order for p in prof]}, need exactly [1, 1]")
    cplus = [dom for dom in surface.domains if dom.kind == CPLUS]
    cminus = [dom for dom in surface.domains if dom.kind == CMINUS]
    if len(cplus) != 1 or len(cminus) != 1:
        raise InternalError("two-simple-pole surface is not a cylinder pair")
    bottom_labels = list(cplus[0].labels)
    top_labels = list(cminus[0].labels)
    zeta = surface.zeta

    def extents(labels):
        ys = [Fraction(0)]
        cur = Fraction(0)
        for lbl in labels:
            cur += zeta[lbl - 1].im
            ys.append(cur)
        return min(ys), max(ys)

    lo_b, hi_b = extents(bottom_labels)
    lo_t, _hi_t = extents(top_labels)
    height = hi_b - lo_t + 1
    tau = QQi(Fraction(twist), height)
    return assemble_band(bottom_labels, top_labels, zeta, tau)
