"""Assembly of translation surfaces with poles from zippered data.

A datum lists side labels 1..n, permutations giving the order of the
labelled segments along the top and bottom boundaries, break positions
cutting those sequences into half-plane domains and half-infinite
cylinders, and a chain structure pairing the half-planes around the
higher-order poles.  Together with a vector of segment holonomies (all
with positive real part) it assembles into a flat surface whose
singularities, pole orders, flat residues and genus are derived here.

Gluing conventions: pairs are indexed 1..d; the left line of the i-th
upper half-plane is glued to the left line of the i-th lower one, and
the right line of the i-th lower half-plane is glued to the right line
of pair i+1 inside the same chain, cyclically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (AngleNotMultipleOf2Pi, Disconnected, EulerMismatch,
                     InternalError, InvalidDatum, NonPositiveRealPart)
from .exact import QQi, ZERO, ccw_angle, rat, rat_str
from .signature import StratumSignature

ANGLE_TOL = 1e-9

# Domain kinds
DPLUS, DMINUS, CPLUS, CMINUS, BAND = "D+", "D-", "C+", "C-", "band"

# Piece kinds
LHALF, RHALF = "lhalf", "rhalf"
LVERT, RVERT = "lvert", "rvert"
LCUT, RCUT = "lcut", "rcut"
SEG = "seg"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ZipperedDatum:
    """Combinatorial half of the construction data.

    pi_t / pi_b list the segment labels in left-to-right order along the
    top / bottom boundary.  nplus / nminus are the break positions, with
    the first d+1 entries delimiting half-plane domains and the rest
    delimiting cylinder blocks; d_breaks groups the half-plane pairs
    into chains, one chain per pole of order >= 2.
    """

    n: int
    pi_t: tuple
    pi_b: tuple
    nplus: tuple
    nminus: tuple
    d_breaks: tuple
    splus: int
    sminus: int

    def __init__(self, n, pi_t, pi_b, nplus, nminus, d_breaks, splus, sminus):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "pi_t", tuple(int(x) for x in pi_t))
        object.__setattr__(self, "pi_b", tuple(int(x) for x in pi_b))
        object.__setattr__(self, "nplus", tuple(int(x) for x in nplus))
        object.__setattr__(self, "nminus", tuple(int(x) for x in nminus))
        object.__setattr__(self, "d_breaks", tuple(int(x) for x in d_breaks))
        object.__setattr__(self, "splus", int(splus))
        object.__setattr__(self, "sminus", int(sminus))

    @property
    def d(self) -> int:
        return len(self.nplus) - self.splus - 1

    def to_json_dict(self, zeta=None) -> dict:
        doc = {
            "n": self.n,
            "pi_t": list(self.pi_t),
            "pi_b": list(self.pi_b),
            "nplus": list(self.nplus),
            "nminus": list(self.nminus),
            "d_breaks": list(self.d_breaks),
            "splus": self.splus,
            "sminus": self.sminus,
        }
        if zeta is not None:
            doc["zeta"] = [[rat_str(z.re), rat_str(z.im)] for z in zeta]
        return doc


def datum_from_json_dict(doc: dict):
    """Return (datum, zeta or None) from the documented JSON layout."""
    required = ["n", "pi_t", "pi_b", "nplus", "nminus", "d_breaks", "splus", "sminus"]
    missing = [k for k in required if k not in doc]
    if missing:
        raise InvalidDatum(f"datum document missing fields: {missing}")
    datum = ZipperedDatum(doc["n"], doc["pi_t"], doc["pi_b"], doc["nplus"],
                          doc["nminus"], doc["d_breaks"], doc["splus"], doc["sminus"])
    zeta = None
    if "zeta" in doc and doc["zeta"] is not None:
        zeta = []
        for entry in doc["zeta"]:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise InvalidDatum(f"zeta entry {entry!r} is not a [re, im] pair")
            zeta.append(QQi(rat(entry[0]), rat(entry[1])))
        zeta = tuple(zeta)
    return datum, zeta


def load_datum(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return datum_from_json_dict(doc)


def save_datum(path: str, datum: ZipperedDatum, zeta=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(datum.to_json_dict(zeta), fh, indent=1, sort_keys=True)
        fh.write("\n")


def default_zeta(n: int) -> tuple:
    """Generic rational parameters (1, j/(n+1)); avoids vertical saddle
    connections for the datum-only workflows."""
    return tuple(QQi(1, Fraction(j, n + 1)) for j in range(1, n + 1))


def validate_datum(datum: ZipperedDatum) -> list:
    """Shape checks; violations are data, not exceptions."""
    out = []
    n = datum.n
    if n < 0:
        out.append(Violation("NegativeN", f"n = {n} < 0"))
        return out
    if datum.splus < 0 or datum.sminus < 0:
        out.append(Violation("NegativeCounts", "splus/sminus must be >= 0"))
        return out

    for name, perm in (("pi_t", datum.pi_t), ("pi_b", datum.pi_b)):
        if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
            out.append(Violation("NotPermutation",
                                 f"{name} is not a bijection onto 1..{n}"))

    d_top = len(datum.nplus) - datum.splus - 1
    d_bot = len(datum.nminus) - datum.sminus - 1
    if d_top < 0 or d_bot < 0:
        out.append(Violation("ShortBreaks", "break lists shorter than s+1"))
        return out
    if d_top != d_bot:
        out.append(Violation("DMismatch",
                             f"top gives d={d_top}, bottom gives d={d_bot}"))
        return out
    d = d_top

    for name, breaks, s in (("nplus", datum.nplus, datum.splus),
                            ("nminus", datum.nminus, datum.sminus)):
        if breaks[0] != 0 or breaks[-1] != n:
            out.append(Violation("BadEndpoints",
                                 f"{name} must run from 0 to n={n}"))
            continue
        if any(breaks[i] > breaks[i + 1] for i in range(len(breaks) - 1)):
            out.append(Violation("NonMonotonicBreaks",
                                 f"{name} is not nondecreasing"))
            continue
        # cylinder blocks occupy indices d..d+s and must be nonempty
        for i in range(d, d + s):
            if breaks[i + 1] <= breaks[i]:
                out.append(Violation("EmptyCylinder",
                                     f"{name}: cylinder block {i - d} is empty"))

    db = datum.d_breaks
    if len(db) < 1 or db[0] != 0 or db[-1] != d or \
            any(db[i] >= db[i + 1] for i in range(len(db) - 1)):
        out.append(Violation("BadDBreaks",
                             f"d_breaks must strictly increase from 0 to d={d}"))

    if d == 0 and datum.splus == 0 and datum.sminus == 0:
        out.append(Violation("NoDomains", "datum describes an empty surface"))
    return out


@dataclass
class Piece:
    kind: str
    label: Optional[int]       # segment label, or None
    start: Optional[QQi]       # finite endpoints in the domain chart
    end: Optional[QQi]
    direction: QQi             # canonical direction (polyline order)


@dataclass
class Domain:
    index: int
    kind: str
    labels: tuple              # segment labels in boundary order
    pieces: list = field(default_factory=list)
    # band-only extras
    top_labels: tuple = ()
    tau: Optional[QQi] = None

    @property
    def is_plus(self) -> bool:
        return self.kind in (DPLUS, CPLUS)


@dataclass(frozen=True)
class PoleRecord:
    order: int
    flat_residue: QQi


@dataclass
class VertexClass:
    index: int
    corners: list              # ccw walk: corner ids (dom_idx, corner_idx)
    crossings: list            # ccw: piece-end crossed after corners[i]
    angles: list               # sector angle per corner (floats, exact pi cases)
    total_angle: float = 0.0
    degree: int = -1
    dart_positions: dict = field(default_factory=dict)  # dart -> cumulative angle
    darts_ccw: list = field(default_factory=list)


@dataclass
class Face:
    index: int
    domains: list
    kind: str                  # "chain" | "cyl+" | "cyl-" | "band"
    pole_order: int            # 0 for band faces
    residue: QQi


class Surface:
    """An assembled surface: immutable after construction.

    Charts: every domain carries its own plane chart with the boundary
    polyline based at the origin; gluings are translations between
    charts.  All derived combinatorics (vertex classes, cone angles,
    faces, degrees) are computed once here.
    """

    def __init__(self, datum, zeta, domains, glue, translations, cut_edges):
        self.datum = datum
        self.zeta = zeta
        self.domains = domains
        self.glue = glue                  # ccw-side piece-end -> cw-side piece-end
        self.glue_pairs = translations    # frozen list ((dA,pA),(dB,pB),t_AB)
        self.cut_edges = cut_edges        # list of band domain indices
        self._check_connected()
        self._walk_vertices()
        self._build_faces()
        self._consistency()

    # -- piece-end helpers -------------------------------------------------

    def piece(self, dom_idx, piece_idx) -> Piece:
        return self.domains[dom_idx].pieces[piece_idx]

    def ray_direction(self, ray) -> QQi:
        dom_idx, piece_idx, end = ray
        p = self.piece(dom_idx, piece_idx)
        return p.direction if end == 0 else -p.direction

    def ray_point(self, ray) -> QQi:
        dom_idx, piece_idx, end = ray
        p = self.piece(dom_idx, piece_idx)
        return p.start if end == 0 else p.end

    def edge_id(self, ray):
        """Edge of the cell complex crossed at this piece-end, or None."""
        dom_idx, piece_idx, end = ray
        p = self.piece(dom_idx, piece_idx)
        if p.kind == SEG:
            return ("seg", p.label)
        if p.kind in (LCUT, RCUT):
            return ("cut", dom_idx)
        return None

    def edge_holonomy(self, edge) -> QQi:
        kind, key = edge
        if kind == "seg":
            return self.zeta[key - 1]
        return self.domains[key].tau

    def n_edges(self) -> int:
        return self.datum.n + len(self.cut_edges)

    def edges(self) -> list:
        out = [("seg", lbl) for lbl in range(1, self.datum.n + 1)]
        out += [("cut", b) for b in self.cut_edges]
        return out

    # -- connectivity ------------------------------------------------------

    def _check_connected(self):
        if not self.domains:
            raise Disconnected("no domains")
        adj = {i: set() for i in range(len(self.domains))}
        for (da, _pa), (db, _pb), _t in self.glue_pairs:
            adj[da].add(db)
            adj[db].add(da)
        seen = {0}
        stack = [0]
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(self.domains):
            raise Disconnected(
                f"gluing graph has {len(self.domains) - len(seen)} unreachable domains")

    # -- corner / vertex machinery -----------------------------------------

    def _domain_corners(self, dom: Domain):
        """Yield (corner_idx, cw_ray, ccw_ray, angle) for one domain."""
        pieces = dom.pieces
        di = dom.index
        if dom.kind in (DPLUS, CPLUS):
            for i in range(len(pieces) - 1):
                u = pieces[i].direction
                v = pieces[i + 1].direction
                ang = ccw_angle(v, -u)
                if ang == 0.0:
                    ang = 2 * math.pi
                yield i, (di, i + 1, 0), (di, i, 1), ang
        elif dom.kind in (DMINUS, CMINUS):
            for i in range(len(pieces) - 1):
                u = -pieces[i + 1].direction
                v = -pieces[i].direction
                ang = ccw_angle(v, -u)
                if ang == 0.0:
                    ang = 2 * math.pi
                yield i, (di, i, 1), (di, i + 1, 0), ang
        else:  # band: circuit bottom L->R, right cut up, top R->L, left cut down
            nb = len(dom.labels)
            # piece layout: [LCUT] + bottom segs (1..nb) + [RCUT] + top segs
            lcut, rcut = 0, nb + 1
            def top_piece(j):  # top segment j (1-based along top polyline)
                return nb + 1 + j
            seqs = []
            # corner at B0 between LCUT (down) and bottom 1
            seqs.append((0, (di, 1, 0), (di, lcut, 0),
                         (-pieces[lcut].direction, pieces[1].direction)))
            for i in range(1, nb):  # bottom internal corners at B_i
                seqs.append((i, (di, i + 1, 0), (di, i, 1),
                             (pieces[i].direction, pieces[i + 1].direction)))
            # corner at Bn between bottom nb and RCUT
            seqs.append((nb, (di, rcut, 0), (di, nb, 1),
                         (pieces[nb].direction, pieces[rcut].direction)))
            # corner at Tn between RCUT and top nb (reversed)
            seqs.append((nb + 1, (di, top_piece(nb), 1), (di, rcut, 1),
                         (pieces[rcut].direction, -pieces[top_piece(nb)].direction)))
            for i in range(nb - 1, 0, -1):  # top internal at T_i
                seqs.append((2 * nb + 1 - i, (di, top_piece(i), 1),
                             (di, top_piece(i + 1), 0),
                             (-pieces[top_piece(i + 1)].direction,
                              -pieces[top_piece(i)].direction)))
            # corner at T0 between top 1 (reversed) and LCUT (down)
            seqs.append((2 * nb + 1, (di, lcut, 1), (di, top_piece(1), 0),
                         (-pieces[top_piece(1)].direction, -pieces[lcut].direction)))
            for cid, cw, ccwr, (u, v) in seqs:
                ang = ccw_angle(v, -u)
                if ang == 0.0:
                    ang = 2 * math.pi
                yield cid, cw, ccwr, ang

    def _walk_vertices(self):
        cw_lookup = {}
        self.corner_ccw_ray = {}
        self.corner_angle = {}
        for dom in self.domains:
            for cid, cw_ray, ccw_ray, ang in self._domain_corners(dom):
                corner = (dom.index, cid)
                cw_lookup[cw_ray] = corner
                self.corner_ccw_ray[corner] = ccw_ray
                self.corner_angle[corner] = ang

        self.vertex_classes = []
        self.corner_class = {}
        visited = set()
        for dom in self.domains:
            ncor = len(dom.pieces) - 1 if dom.kind != BAND else 2 * len(dom.labels) + 2
            for cid in range(ncor):
                start = (dom.index, cid)
                if start in visited:
                    continue
                corners, crossings, angles = [], [], []
                cur = start
                while True:
                    visited.add(cur)
                    corners.append(cur)
                    angles.append(self.corner_angle[cur])
                    ray = self.corner_ccw_ray[cur]
                    crossings.append(ray)
                    glued = self.glue[ray]
                    cur = cw_lookup[glued]
                    if cur == start:
                        break
                vc = VertexClass(len(self.vertex_classes), corners, crossings, angles)
                vc.total_angle = sum(angles)
                turns = vc.total_angle / (2 * math.pi)
                if abs(turns - round(turns)) > ANGLE_TOL or round(turns) < 1:
                    raise AngleNotMultipleOf2Pi(
                        f"vertex class {vc.index}: total angle {vc.total_angle}")
                vc.degree = int(round(turns)) - 1
                # ccw dart order with cumulative angular positions
                pos = 0.0
                for corner, ray, ang in zip(corners, crossings, angles):
                    pos += ang
                    edge = self.edge_id(ray)
                    if edge is not None:
                        dart = (edge, ray[2])
                        vc.dart_positions[dart] = pos
                        vc.darts_ccw.append(dart)
                for c in corners:
                    self.corner_class[c] = vc.index
                self.vertex_classes.append(vc)

        # edge endpoints: tail = class at end 0, head = class at end 1
        self.edge_tail = {}
        self.edge_head = {}
        for dom in self.domains:
            for pi, p in enumerate(dom.pieces):
                edge = self.edge_id((dom.index, pi, 0))
                if edge is None:
                    continue
                for end in (0, 1):
                    corner = self._corner_at_piece_end(dom, pi, end)
                    cls = self.corner_class[corner]
                    if end == 0:
                        prev = self.edge_tail.setdefault(edge, cls)
                    else:
                        prev = self.edge_head.setdefault(edge, cls)
                    if prev != cls:
                        raise InternalError(f"edge {edge} endpoint mismatch")

    def _corner_at_piece_end(self, dom: Domain, piece_idx: int, end: int):
        """Corner id of the domain at the given finite piece end."""
        if dom.kind != BAND:
            # pieces i and i+1 meet at corner i
            return (dom.index, piece_idx - 1 + end)
        nb = len(dom.labels)
        lcut, rcut = 0, nb + 1
        if piece_idx == lcut:
            return (dom.index, 0) if end == 0 else (dom.index, 2 * nb + 1)
        if piece_idx == rcut:
            return (dom.index, nb) if end == 0 else (dom.index, nb + 1)
        if piece_idx <= nb:  # bottom segment j at corners j-1 / j
            return (dom.index, piece_idx - 1 + end)
        j = piece_idx - nb - 1  # top segment j: T_{j-1} at end0, T_j at end1
        tcorner = lambda i: (dom.index, 2 * nb + 1 - i)
        return tcorner(j - 1) if end == 0 else tcorner(j)

    # -- faces ---------------------------------------------------------------

    def _build_faces(self):
        # faces = components of domains glued along half-lines / verticals;
        # bands are faces of their own (their cuts are edges, not seams)
        parent = list(range(len(self.domains)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for (da, pa), (db, pb), _t in self.glue_pairs:
            if self.piece(da, pa).kind in (LHALF, RHALF, LVERT, RVERT):
                union(da, db)

        groups = {}
        for i in range(len(self.domains)):
            groups.setdefault(find(i), []).append(i)

        self.faces = []
        for root in sorted(groups):
            doms = sorted(groups[root])
            kinds = {self.domains[i].kind for i in doms}
            residue = ZERO
            for i in doms:
                dom = self.domains[i]
                w = ZERO
                for lbl in dom.labels:
                    w = w + self.zeta[lbl - 1]
                if dom.kind in (DPLUS, CPLUS):
                    residue = residue + w
                elif dom.kind in (DMINUS, CMINUS):
                    residue = residue - w
            if kinds <= {DPLUS, DMINUS}:
                kind, order = "chain", len(doms) // 2 + 1
            elif kinds == {CPLUS}:
                kind, order = "cyl+", 1
            elif kinds == {CMINUS}:
                kind, order = "cyl-", 1
            elif kinds == {BAND}:
                kind, order, residue = "band", 0, ZERO
            else:
                raise InternalError(f"face mixes domain kinds {kinds}")
            self.faces.append(Face(len(self.faces), doms, kind, order, residue))

    # -- global checks -------------------------------------------------------

    def _consistency(self):
        V = len(self.vertex_classes)
        E = self.n_edges()
        F = len(self.faces)
        chi = V - E + F
        if chi % 2 != 0:
            raise EulerMismatch(f"odd Euler characteristic {chi}")
        self._genus = (2 - chi) // 2
        if self._genus < 0:
            raise EulerMismatch(f"negative genus from Euler characteristic {chi}")

        degs = sum(vc.degree for vc in self.vertex_classes)
        orders = sum(f.pole_order for f in self.faces if f.pole_order)
        if degs - orders != 2 * self._genus - 2:
            raise EulerMismatch(
                f"degrees {degs} - pole orders {orders} != 2g-2 with g={self._genus}")

        res_sum = ZERO
        for f in self.faces:
            if f.pole_order:
                res_sum = res_sum + f.residue
                if f.pole_order == 1 and not f.residue:
                    raise InternalError("order-1 pole with zero flat residue")
        if self.poles_count() and res_sum != ZERO:
            raise InternalError(f"flat residues sum to {res_sum}, not 0")

    def poles_count(self) -> int:
        return sum(1 for f in self.faces if f.pole_order)

    @property
    def is_compact(self) -> bool:
        return self.poles_count() == 0


# ---------------------------------------------------------------------------


def _polyline_points(labels, zeta):
    pts = [ZERO]
    for lbl in labels:
        pts.append(pts[-1] + zeta[lbl - 1])
    return pts


def _make_domain(index, kind, labels, zeta) -> Domain:
    dom = Domain(index, kind, tuple(labels))
    pts = _polyline_points(labels, zeta)
    w = pts[-1]
    pieces = []
    if kind in (DPLUS, DMINUS):
        pieces.append(Piece(LHALF, None, None, ZERO, QQi(1, 0)))
    elif kind == CPLUS:
        pieces.append(Piece(LVERT, None, None, ZERO, QQi(0, -1)))
    else:
        pieces.append(Piece(LVERT, None, None, ZERO, QQi(0, 1)))
    for i, lbl in enumerate(labels):
        pieces.append(Piece(SEG, lbl, pts[i], pts[i + 1], zeta[lbl - 1]))
    if kind in (DPLUS, DMINUS):
        pieces.append(Piece(RHALF, None, w, None, QQi(1, 0)))
    elif kind == CPLUS:
        pieces.append(Piece(RVERT, None, w, None, QQi(0, 1)))
    else:
        pieces.append(Piece(RVERT, None, w, None, QQi(0, -1)))
    dom.pieces = pieces
    return dom


def make_band_domain(index, bottom_labels, top_labels, zeta, tau) -> Domain:
    """The compact seam domain used by the two-simple-pole closing: a finite
    cylinder with polygonal bottom (plus copies) and top (minus copies),
    rolled up along a cut of vector tau."""
    dom = Domain(index, BAND, tuple(bottom_labels))
    dom.top_labels = tuple(top_labels)
    dom.tau = tau
    bpts = _polyline_points(bottom_labels, zeta)
    tpts = [tau + p for p in _polyline_points(top_labels, zeta)]
    w_b, w_t = bpts[-1], tpts[-1] - tau
    if w_b != w_t:
        raise InternalError("band boundary circles have different holonomy")
    pieces = [Piece(LCUT, None, ZERO, tau, tau)]
    for i, lbl in enumerate(bottom_labels):
        pieces.append(Piece(SEG, lbl, bpts[i], bpts[i + 1], zeta[lbl - 1]))
    pieces.append(Piece(RCUT, None, w_b, tau + w_b, tau))
    for i, lbl in enumerate(top_labels):
        pieces.append(Piece(SEG, lbl, tpts[i], tpts[i + 1], zeta[lbl - 1]))
    dom.pieces = pieces
    return dom


def _chain_successor(d_breaks):
    """sigma: pair i -> pair whose upper right line receives i's lower right."""
    succ = {}
    for k in range(len(d_breaks) - 1):
        lo, hi = d_breaks[k] + 1, d_breaks[k + 1]
        for i in range(lo, hi):
            succ[i] = i + 1
        succ[hi] = lo
    return succ


def assemble(datum: ZipperedDatum, zeta=None) -> Surface:
    """Glue the basic domains; raises on invalid data or a disconnected
    result.  zeta defaults to the documented generic family."""
    violations = validate_datum(datum)
    if violations:
        raise InvalidDatum("; ".join(str(v) for v in violations))
    n = datum.n
    if zeta is None:
        zeta = default_zeta(n)
    zeta = tuple(zeta)
    if len(zeta) != n:
        raise InvalidDatum(f"zeta has {len(zeta)} entries, expected {n}")
    for i, z in enumerate(zeta):
        if z.re <= 0:
            raise NonPositiveRealPart(f"Re(zeta_{i + 1}) = {z.re} <= 0")

    d = datum.d
    domains = []
    top_of = {}
    bot_of = {}

    def top_slice(i):
        return datum.pi_t[datum.nplus[i]:datum.nplus[i + 1]]

    def bot_slice(i):
        return datum.pi_b[datum.nminus[i]:datum.nminus[i + 1]]

    for i in range(d):
        dom = _make_domain(len(domains), DPLUS, top_slice(i), zeta)
        top_of[i + 1] = dom.index
        domains.append(dom)
    for i in range(d):
        dom = _make_domain(len(domains), DMINUS, bot_slice(i), zeta)
        bot_of[i + 1] = dom.index
        domains.append(dom)
    cplus = []
    for j in range(datum.splus):
        dom = _make_domain(len(domains), CPLUS, top_slice(d + j), zeta)
        cplus.append(dom.index)
        domains.append(dom)
    cminus = []
    for j in range(datum.sminus):
        dom = _make_domain(len(domains), CMINUS, bot_slice(d + j), zeta)
        cminus.append(dom.index)
        domains.append(dom)

    glue, pairs = {}, []

    def add_glue(ccw_side, cw_side):
        glue[ccw_side] = cw_side
        a, b = (ccw_side[0], ccw_side[1]), (cw_side[0], cw_side[1])
        pa = domains[a[0]].pieces[a[1]]
        pb = domains[b[0]].pieces[b[1]]
        ref_a = pa.start if pa.start is not None else pa.end
        ref_b = pb.start if pb.start is not None else pb.end
        # match corresponding finite ends
        if pa.kind == SEG:
            t = pb.start - pa.start
        elif (pa.start is None) == (pb.start is None):
            t = ref_b - ref_a
        else:
            t = ref_b - ref_a
        pairs.append((a, b, t))

    # segment gluings: plus copy <-> minus copy of each label
    plus_pos, minus_pos = {}, {}
    for dom in domains:
        if dom.kind == BAND:
            continue
        for pi, p in enumerate(dom.pieces):
            if p.kind != SEG:
                continue
            if dom.is_plus:
                plus_pos[p.label] = (dom.index, pi)
            else:
                minus_pos[p.label] = (dom.index, pi)
    for lbl in range(1, n + 1):
        dp, pp = plus_pos[lbl]
        dm, pm = minus_pos[lbl]
        add_glue((dm, pm, 0), (dp, pp, 0))   # minus end0 is the ccw side
        add_glue((dp, pp, 1), (dm, pm, 1))   # plus end1 is the ccw side

    succ = _chain_successor(datum.d_breaks)
    for i in range(1, d + 1):
        ti, bi = top_of[i], bot_of[i]
        # left lines: plus end1 (ccw side) -> minus end1
        add_glue((ti, 0, 1), (bi, 0, 1))
        # right lines: minus end0 (ccw side) -> successor plus end0
        ts = top_of[succ[i]]
        last_b = len(domains[bi].pieces) - 1
        last_t = len(domains[ts].pieces) - 1
        add_glue((bi, last_b, 0), (ts, last_t, 0))
    for ci in cplus:
        last = len(domains[ci].pieces) - 1
        add_glue((ci, 0, 1), (ci, last, 0))
    for ci in cminus:
        last = len(domains[ci].pieces) - 1
        add_glue((ci, last, 0), (ci, 0, 1))

    return Surface(datum, zeta, domains, glue, pairs, cut_edges=[])


def assemble_band(bottom_labels, top_labels, zeta, tau) -> Surface:
    """Assemble a compact surface consisting of a single band domain."""
    n = len(zeta)
    dom = make_band_domain(0, bottom_labels, top_labels, zeta, tau)
    glue, pairs = {}, []

    def add_glue(ccw_side, cw_side):
        glue[ccw_side] = cw_side
        pa = dom.pieces[ccw_side[1]]
        pb = dom.pieces[cw_side[1]]
        t = pb.start - pa.start
        pairs.append(((0, ccw_side[1]), (0, cw_side[1]), t))

    nb = len(bottom_labels)
    bottom_piece = {lbl: 1 + i for i, lbl in enumerate(bottom_labels)}
    top_piece = {lbl: nb + 2 + i for i, lbl in enumerate(top_labels)}
    for lbl in range(1, n + 1):
        bp, tp = bottom_piece[lbl], top_piece[lbl]
        add_glue((0, tp, 0), (0, bp, 0))
        add_glue((0, bp, 1), (0, tp, 1))
    lcut, rcut = 0, nb + 1
    add_glue((0, lcut, 0), (0, rcut, 0))
    add_glue((0, rcut, 1), (0, lcut, 1))

    class _FakeDatum:
        n = len(zeta)
    return Surface(_FakeDatum(), tuple(zeta), [dom], glue, pairs, cut_edges=[0])


# -- derived analyses --------------------------------------------------------


def singularity_degrees(surface: Surface) -> tuple:
    """Sorted multiset of vertex degrees (cone angle / 2pi - 1)."""
    return tuple(sorted(vc.degree for vc in surface.vertex_classes))


def pole_profile(surface: Surface) -> list:
    """One record per pole, chains first, then upper and lower cylinders."""
    out = []
    for f in surface.faces:
        if f.pole_order:
            out.append(PoleRecord(f.pole_order, f.residue))
    return out


def surface_genus(surface: Surface) -> int:
    """Genus via Euler characteristic, cross-checked against the datum
    count n = 2g + r + s - 2 and stratum arithmetic."""
    g = surface._genus
    r = len(surface.vertex_classes)
    s = surface.poles_count()
    if not surface.is_compact:
        n = surface.datum.n
        if n != 2 * g + r + s - 2:
            raise EulerMismatch(
                f"n={n} but 2g+r+s-2={2 * g + r + s - 2} (g={g}, r={r}, s={s})")
    from .signature import genus as sig_genus
    if sig_genus(stratum_of(surface)) != g:
        raise EulerMismatch("stratum arithmetic disagrees with Euler count")
    return g


def stratum_of(surface: Surface) -> StratumSignature:
    zeros = singularity_degrees(surface)
    poles = tuple(p.order for p in pole_profile(surface))
    return StratumSignature(zeros, poles)
