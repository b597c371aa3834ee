"""Bounded-length saddle connection and cylinder census.

Saddle connections are found by developing sight cones from every
singularity corner across the gluings; all incidence decisions are
exact rational tests, so grazing and collinear configurations are
decided correctly.  A sight cone is an angular interval of directions;
its boundaries are blocked directions (they pass through an earlier
singularity) except for the artificial quarter-turn rays used to split
wide sectors, which stay admissible.

Cylinders are found by shooting a symbolically perturbed line parallel
to each saddle connection from each of its sides: the offset is an
exact dual number, so the trace resolves every corner passage without
numeric guessing.  A closed trace certifies a cylinder; its height and
second boundary come from the nearest obstacles, and cylinders found
from both boundaries are matched by their midline itinerary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .construction import SEG, Surface
from .errors import InternalError
from .exact import Eps, QQi

MAX_STATES = 500000
MAX_TRACE_STEPS = 50000


# -- exact ray / cone helpers -------------------------------------------------


def _piece_base(piece):
    """(base point, direction, s_max) with s_max None for rays."""
    if piece.start is not None and piece.end is not None:
        return piece.start, piece.end - piece.start, Fraction(1)
    if piece.start is not None:
        return piece.start, piece.direction, None
    return piece.end, -piece.direction, None


def _ray_piece_hit(apex: QQi, d: QQi, piece):
    """(t, s) for apex + t*d = base + s*u on the piece, t > 0, or None."""
    base, u, s_max = _piece_base(piece)
    den = u.cross(d)
    if den == 0:
        return None
    w = base - apex
    t = u.cross(w) / den
    s = d.cross(w) / den
    if t <= 0 or s < 0 or (s_max is not None and s > s_max):
        return None
    return t, s


def _first_hit(apex, d, pieces, t_min):
    best = None
    for idx, piece in enumerate(pieces):
        hit = _ray_piece_hit(apex, d, piece)
        if hit is not None and hit[0] > t_min:
            if best is None or hit[0] < best[0]:
                best = (hit[0], idx)
    return best


def _entry_t(apex, d, pieces, entry_idx):
    if entry_idx is None:
        return Fraction(0)
    hit = _ray_piece_hit(apex, d, pieces[entry_idx])
    if hit is None:
        raise InternalError("lost the entry piece while tracing")
    return hit[0]


def _angle_key(lo: QQi, w: QQi):
    """Monotone key for directions strictly inside a cone of angle < pi."""
    c, d = lo.cross(w), lo.dot(w)
    if c <= 0:
        raise InternalError("direction outside the open cone")
    return -d / c


def _inside_cone(lo, hi, lo_closed, w):
    cl = lo.cross(w)
    if w.cross(hi) <= 0:
        return False
    if cl > 0:
        return True
    return lo_closed and cl == 0 and lo.dot(w) > 0


def _sector_subcones(lo: QQi, hi: QQi, angle: float):
    """Cover the sector (ccw from lo by `angle`, ending at hi) with cones
    of angle < pi: [(lo, r1, False), (r1, r2, True), ...]; the artificial
    split rays stay admissible (closed), the true boundaries do not."""
    rays = [lo]
    acc, cur = 0.0, lo
    while acc + math.pi / 2 < angle - 1e-12 and len(rays) < 5:
        cur = cur.perp()
        acc += math.pi / 2
        rays.append(cur)
    rays.append(hi)
    out = []
    for i, (a, b) in enumerate(zip(rays, rays[1:])):
        closed = i > 0
        c = a.cross(b)
        if c > 0:
            out.append((a, b, closed))
        elif c == 0 and a.dot(b) < 0:
            m = a.perp()
            out.append((a, m, closed))
            out.append((m, b, True))
        # zero-width leftovers (c == 0, dot > 0) are dropped
    return out


def _window_mindist2(apex, lo, hi, piece):
    """Minimal |x - apex|^2 over the part of the piece within the cone."""
    pts = []
    for d in (lo, hi):
        hit = _ray_piece_hit(apex, d, piece)
        if hit is not None:
            pts.append(apex + d * hit[0])
    for endpoint in (piece.start, piece.end):
        if endpoint is not None:
            w = endpoint - apex
            if w and lo.cross(w) >= 0 and w.cross(hi) >= 0:
                pts.append(endpoint)
    if not pts:
        return None
    best = min((p - apex).norm2() for p in pts)
    base, u, s_max = _piece_base(piece)
    n2 = u.norm2()
    s = u.dot(apex - base) / n2
    if s >= 0 and (s_max is None or s <= s_max):
        foot = base + u * s
        w = foot - apex
        if w and w.norm2() < best and lo.cross(w) >= 0 and w.cross(hi) >= 0:
            best = w.norm2()
    return best


# -- saddle connections --------------------------------------------------------


@dataclass(frozen=True)
class SaddleConnection:
    start: int
    end: int
    holonomy: QQi
    length2: Fraction
    crossings: tuple           # ((domain, piece), ...) along the segment
    locus: tuple = ()          # exact crossing/chord points: the identity
    seed: tuple = field(compare=False, hash=False, default=None)

    def sort_key(self):
        return (self.length2, self.crossings,
                (self.holonomy.re, self.holonomy.im), self.start, self.end,
                self.locus)


def _corner_count(dom):
    if dom.kind == "band":
        return 2 * len(dom.labels) + 2
    return len(dom.pieces) - 1


class _Census:
    def __init__(self, surface: Surface, bound: Fraction):
        self.surface = surface
        self.bound2 = bound * bound
        self.glue_map = {}
        self.trans_map = {}
        for (da, pa), (db, pb), t in surface.glue_pairs:
            self.glue_map[(da, pa)] = (db, pb)
            self.glue_map[(db, pb)] = (da, pa)
            self.trans_map[(da, pa)] = t        # from A chart to B chart
            self.trans_map[(db, pb)] = -t
        self.cw_of = {}
        for dom in surface.domains:
            for cid, cw_ray, _ccw_ray, _ang in surface._domain_corners(dom):
                self.cw_of[(dom.index, cid)] = cw_ray
        self.found = {}

    def emit(self, start_cls, end_cls, hol, records, anchor, seed):
        """seed: {+1: (dom, pt), -1: (dom, pt)} keyed by the side, left of
        the (pre-canonical) holonomy direction."""
        if not hol or hol.norm2() > self.bound2:
            return
        fwd = (tuple(records), anchor)
        rev = (tuple(reversed(records)), anchor)
        key = min(
            (fwd, (hol.re, hol.im), (start_cls, end_cls)),
            (rev, ((-hol).re, (-hol).im), (end_cls, start_cls)),
        )
        if key in self.found:
            return
        if hol.im < 0 or (hol.im == 0 and hol.re < 0):
            hol, start_cls, end_cls = -hol, end_cls, start_cls
            records = tuple(reversed(records))
            seed = {1: seed[-1], -1: seed[1]}
        locus = tuple(
            (pair, pt if pt == "edge" else (pt[0], pt[1]))
            for pair, pt in records) + (anchor,)
        self.found[key] = SaddleConnection(
            start_cls, end_cls, hol, hol.norm2(),
            tuple(pair for pair, _pt in records), locus=locus,
            seed=(seed[1], seed[-1]))

    def crossing_records(self, apex, w, path):
        """Absolute crossing points anchored to the smaller chart side."""
        out = []
        for dom_idx, pidx, apex_i in path:
            piece = self.surface.domains[dom_idx].pieces[pidx]
            hit = _ray_piece_hit(apex_i, w, piece)
            if hit is None:
                raise InternalError("crossing record lost its piece")
            pt = apex_i + w * hit[0]
            other = self.glue_map[(dom_idx, pidx)]
            pair = tuple(sorted(((dom_idx, pidx), other)))
            if pair[0] != (dom_idx, pidx):
                pt = pt + self.trans_map[(dom_idx, pidx)]
            out.append((pair, (pt.re, pt.im)))
        return out

    def run(self):
        surface = self.surface
        states = []
        for corner_key, angle in sorted(surface.corner_angle.items()):
            dom_idx, _cid = corner_key
            apex = surface.ray_point(self.cw_of[corner_key])
            lo = surface.ray_direction(self.cw_of[corner_key])
            hi = surface.ray_direction(surface.corner_ccw_ray[corner_key])
            cls = surface.corner_class[corner_key]
            for clo, chi, closed in _sector_subcones(lo, hi, angle):
                states.append((dom_idx, apex, clo, chi, closed, None, (), cls))
        processed = 0
        while states:
            processed += 1
            if processed > MAX_STATES:
                raise InternalError("saddle connection census exceeded cap")
            (dom_idx, apex, lo, hi, lo_closed, entry_idx, path,
             start_cls) = states.pop()
            dom = surface.domains[dom_idx]
            pieces = dom.pieces

            for cid in range(_corner_count(dom)):
                corner_key = (dom_idx, cid)
                v = surface.ray_point(self.cw_of[corner_key])
                w = v - apex
                if not w or w.norm2() > self.bound2:
                    continue
                if not _inside_cone(lo, hi, lo_closed, w):
                    continue
                t_min = _entry_t(apex, w, pieces, entry_idx)
                if t_min >= 1:
                    continue
                first = _first_hit(apex, w, pieces, t_min)
                if first is not None and first[0] < 1:
                    continue
                records = self.crossing_records(apex, w, path)
                anchor = self._chord_anchor(dom_idx, apex, w) if not path else ()
                # push-off seed: the segment midpoint in the chart where it
                # crosses the middle of its course
                mid_dom, mid_pt = self._midpoint_chart(dom_idx, apex, w, path)
                seed = {1: (mid_dom, mid_pt), -1: (mid_dom, mid_pt)}
                self.emit(start_cls, surface.corner_class[corner_key], w,
                          records, anchor, seed)

            events = []
            for piece in pieces:
                for endpoint in (piece.start, piece.end):
                    if endpoint is None:
                        continue
                    w = endpoint - apex
                    if w and lo.cross(w) > 0 and w.cross(hi) > 0:
                        if not any(w.cross(u) == 0 and w.dot(u) > 0
                                   for u in events):
                            events.append(w)
            events.sort(key=lambda w: _angle_key(lo, w))
            lo_flag = lo_closed
            if lo_flag:
                # an admissible boundary ray stops being admissible once
                # its continuation runs into a corner (or grazes out)
                if entry_idx is None:
                    t_lo = Fraction(0)
                else:
                    ehit = _ray_piece_hit(apex, lo, pieces[entry_idx])
                    t_lo = ehit[0] if ehit is not None else None
                if t_lo is None:
                    lo_flag = False
                else:
                    hit = _first_hit(apex, lo, pieces, t_lo)
                    if hit is not None:
                        full = _ray_piece_hit(apex, lo, pieces[hit[1]])
                        _base, _u, s_max = _piece_base(pieces[hit[1]])
                        if full is not None and (full[1] == 0 or
                                                 full[1] == s_max):
                            lo_flag = False
            rays = [(lo, lo_flag)] + [(e, False) for e in events] + \
                   [(hi, False)]
            for (a, aflag), (b, _bf) in zip(rays, rays[1:]):
                if a.cross(b) <= 0:
                    continue
                mid = a + b
                t_min = _entry_t(apex, mid, pieces, entry_idx)
                first = _first_hit(apex, mid, pieces, t_min)
                if first is None:
                    continue
                _t, pidx = first
                dist2 = _window_mindist2(apex, a, b, pieces[pidx])
                if dist2 is None or dist2 > self.bound2:
                    continue
                other_dom, other_piece = self.glue_map[(dom_idx, pidx)]
                shift = self.trans_map[(dom_idx, pidx)]
                states.append((other_dom, apex + shift, a, b, aflag,
                               other_piece, path + ((dom_idx, pidx, apex),),
                               start_cls))
        return self.found

    def _chord_anchor(self, dom_idx, apex, w):
        """Disambiguates crossing-free chords inside a single domain."""
        p, q = apex, apex + w
        a = (dom_idx, (p.re, p.im), (q.re, q.im))
        b = (dom_idx, (q.re, q.im), (p.re, p.im))
        return min(a, b)

    def _midpoint_chart(self, dom_final, apex_final, w, path):
        """A point strictly inside one chart on the traced segment: the
        midpoint of the largest parameter gap between crossings."""
        charts = []          # (t_crossing, dom_after, apex_after)
        ts = [Fraction(0)]
        for dom_idx, pidx, apex_i in path:
            hit = _ray_piece_hit(apex_i, w, self.surface.domains[
                dom_idx].pieces[pidx])
            ts.append(hit[0])
        ts.append(Fraction(1))
        gaps = [(ts[i + 1] - ts[i], i) for i in range(len(ts) - 1)]
        _width, gi = max(gaps)
        tstar = (ts[gi] + ts[gi + 1]) / 2
        if gi < len(path):
            dom_idx, _pidx, apex_i = path[gi]
            return dom_idx, apex_i + w * tstar
        return dom_final, apex_final + w * tstar


def saddle_connections(surface: Surface, length_bound) -> list:
    """All saddle connections of flat length <= bound, in deterministic
    order (length, then crossing sequence, then holonomy)."""
    bound = Fraction(length_bound)
    if bound <= 0:
        raise ValueError("length bound must be positive")
    census = _Census(surface, bound)

    # the labelled segments (and seam cuts) are saddle connections already
    for dom in surface.domains:
        for pi, piece in enumerate(dom.pieces):
            is_edge_rep = (piece.kind == SEG and dom.is_plus) or \
                (piece.kind == SEG and dom.kind == "band"
                 and pi <= len(dom.labels)) or piece.kind == "lcut"
            if not is_edge_rep:
                continue
            edge = surface.edge_id((dom.index, pi, 0))
            hol = surface.edge_holonomy(edge)
            tail, head = surface.edge_tail[edge], surface.edge_head[edge]
            other_dom, other_pi = census.glue_map[(dom.index, pi)]
            pair = tuple(sorted(((dom.index, pi), (other_dom, other_pi))))
            # side +1 (left of hol) is the interior of the copy whose
            # domain lies left of the edge: the plus copy / seam RCUT
            other_piece = surface.domains[other_dom].pieces[other_pi]
            mid_here = piece.start + hol * Fraction(1, 2)
            mid_other = other_piece.start + hol * Fraction(1, 2)
            if piece.kind == "lcut":
                seed = {1: (other_dom, mid_other), -1: (dom.index, mid_here)}
            else:
                seed = {1: (dom.index, mid_here), -1: (other_dom, mid_other)}
            census.emit(tail, head, hol, [(pair, "edge")], (), seed)

    census.run()
    out = sorted(census.found.values(), key=lambda sc: sc.sort_key())
    return out


# -- cylinders -----------------------------------------------------------------


def _eps_point(p: QQi, n: QQi, scale: Fraction):
    """p + eps * scale * n as a pair of dual numbers."""
    return (Eps(p.re, n.re * scale), Eps(p.im, n.im * scale))


def _eps_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _eps_cross_qq(u: QQi, p) -> Eps:
    """cross(u, p) with p a dual-number point."""
    return Eps(0, 0) + p[1].scale(u.re) - p[0].scale(u.im)


def _eps_dot_qq(u: QQi, p) -> Eps:
    return p[0].scale(u.re) + p[1].scale(u.im)


class _Trace:
    """Straight-line trace with dual-number coordinates."""

    def __init__(self, surface, census_maps, dom_idx, point, h: QQi,
                 max_len2: Fraction):
        self.surface = surface
        self.glue_map, self.trans_map = census_maps
        self.dom = dom_idx
        self.point = point                  # (Eps, Eps)
        self.h = h
        self.entry = None
        self.max_len2 = max_len2
        self.travel = Fraction(0)           # rational part of total t
        self.itinerary = []                 # (dom, entry_pt, exit_pt)
        self.segment_entry = point

    def step(self):
        """Advance to the next boundary crossing; False if escaped."""
        pieces = self.surface.domains[self.dom].pieces
        best = None
        for idx, piece in enumerate(pieces):
            if idx == self.entry:
                continue
            base, u, s_max = _piece_base(piece)
            den = u.cross(self.h)
            if den == 0:
                continue
            w = _eps_sub((Eps(base.re), Eps(base.im)), self.point)
            t = _eps_cross_qq(u, w).scale(Fraction(1) / den)
            s = _eps_cross_qq(self.h, w).scale(Fraction(1) / den)
            zero = Eps(0)
            if t <= zero:
                continue
            if s < zero or (s_max is not None and s > Eps(s_max)):
                continue
            if best is None or t < best[0]:
                best = (t, idx, s)
        if best is None:
            return False
        t, idx, s = best
        piece = pieces[idx]
        _base, _u, s_max = _piece_base(piece)
        if (s.a == 0 and s.b == 0) or \
                (s_max is not None and s == Eps(s_max)):
            raise InternalError("trace hit a corner")
        self.last_piece = idx
        exit_pt = (self.point[0] + Eps(self.h.re).scale(t.a) +
                   Eps(0, self.h.re * t.b),
                   self.point[1] + Eps(self.h.im).scale(t.a) +
                   Eps(0, self.h.im * t.b))
        self.itinerary.append((self.dom, self.segment_entry, exit_pt))
        self.travel += t.a
        other_dom, other_piece = self.glue_map[(self.dom, idx)]
        shift = self.trans_map[(self.dom, idx)]
        new_pt = (exit_pt[0] + Eps(shift.re), exit_pt[1] + Eps(shift.im))
        self.dom, self.point, self.entry = other_dom, new_pt, other_piece
        self.segment_entry = new_pt
        return True

    def run_until_closed(self):
        """Trace until a crossing state recurs (the line is periodic);
        returns the waist holonomy, or None if the line escapes or
        exceeds the length budget.  Chart coordinates of a periodic
        line recur exactly; the waist is the travel in between."""
        h2 = self.h.norm2()
        seen = {}
        for _ in range(MAX_TRACE_STEPS):
            if self.travel * self.travel * h2 > self.max_len2 * 4:
                return None
            if not self.step():
                return None
            key = (self.dom, self.entry,
                   self.point[0].key(), self.point[1].key())
            if key in seen:
                return self.h * (self.travel - seen[key])
            seen[key] = self.travel
        raise InternalError("cylinder trace exceeded step cap")


@dataclass(frozen=True)
class Cylinder:
    waist: QQi
    length2: Fraction
    height_cross: Fraction               # transverse extent, cross-measure
    boundary: tuple                      # bounding saddle connections

    def sort_key(self):
        return (self.length2, (self.waist.re, self.waist.im),
                tuple(sc.sort_key() for sc in self.boundary))


def _ceiling_gap(surface, trace_itinerary, h, side_sign):
    """Smallest positive transverse offset (cross measure, toward the
    traced side) of a corner within the swept spans; None if unbounded."""
    best = None
    for dom_idx, entry, exit_pt in trace_itinerary:
        dom = surface.domains[dom_idx]
        lam_in = _eps_dot_qq(h, entry)
        lam_out = _eps_dot_qq(h, exit_pt) if exit_pt is not None else None
        base_cross = _eps_cross_qq(h, entry)
        cw_of = {}
        for cid, cw_ray, _ccw, _ang in surface._domain_corners(dom):
            cw_of[cid] = cw_ray
        for cid in range(_corner_count(dom)):
            v = surface.ray_point(cw_of[cid])
            lam_v = Eps(h.dot(v))
            if lam_v < lam_in or (lam_out is not None and lam_v > lam_out):
                continue
            c = (Eps(h.cross(v)) - base_cross)
            cval = c.a * side_sign
            if cval > 0 and (best is None or cval < best):
                best = cval
    return best


def cylinders(surface: Surface, length_bound) -> list:
    """All maximal flat cylinders with waist length <= bound, reported
    with their bounding saddle connections.  The infinite cylinder ends
    around simple poles are poles, not cylinders, and are not listed."""
    bound = Fraction(length_bound)
    if bound <= 0:
        raise ValueError("length bound must be positive")
    b2 = bound * bound
    scs = saddle_connections(surface, bound)
    census = _Census(surface, bound)
    maps = (census.glue_map, census.trans_map)

    groups = {}
    for sc in scs:
        if sc.seed is None:
            continue
        h = sc.holonomy
        for side, (start_dom, base_pt) in zip((1, -1), sc.seed):
            n = h.perp() * side
            start = _eps_point(base_pt, n, Fraction(1))
            tr = _Trace(surface, maps, start_dom, start, h, b2)
            waist = tr.run_until_closed()
            if waist is None or waist.norm2() > b2:
                continue
            gap = _ceiling_gap(surface, tr.itinerary, h, side)
            if gap is None:
                continue              # unbounded: a pole end, not a cylinder
            # midline itinerary is the canonical cylinder identity
            offset = gap / (2 * h.norm2())
            mid_start_q = base_pt + n * offset
            mid_start = (Eps(mid_start_q.re), Eps(mid_start_q.im))
            tm = _Trace(surface, maps, start_dom, mid_start, h, b2)
            mwaist = tm.run_until_closed()
            if mwaist is None:
                continue
            key_pts = []
            for dom_idx, _entry, exit_pt in tm.itinerary:
                key_pts.append((dom_idx, exit_pt[0].a, exit_pt[1].a))
            wcan = waist if (waist.im > 0 or (waist.im == 0 and
                                              waist.re > 0)) else -waist
            key = (wcan, frozenset(key_pts))
            bucket = groups.setdefault(key, {"waist": wcan, "gap": gap,
                                             "scs": set()})
            bucket["scs"].add(sc)

    out = []
    for key, data in groups.items():
        boundary = tuple(sorted(data["scs"], key=lambda s: s.sort_key()))
        out.append(Cylinder(data["waist"], data["waist"].norm2(),
                            data["gap"], boundary))
    out.sort(key=lambda c: c.sort_key())
    return out


