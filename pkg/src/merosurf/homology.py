"""First homology of the compactified surface and the flat invariants
living on it: winding indices of curves, the genus-one rotation number,
spin parity, and the combinatorial hyperellipticity certificate.

Cycles are integer chains on the oriented saddle-connection edges (plus
the seam edge of a compact closing).  Winding indices are computed on
explicit closed walks whose pushoffs are embedded; basis searches are
restricted to such walks and failures are reported, never guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional

from .construction import Surface, ZipperedDatum, stratum_of, surface_genus, validate_datum
from .errors import (EulerMismatch, GenusZero, IndexNotInteger, InternalError,
                     InvalidDatum, NoEmbeddedBasis, NotClosed, NotGenusOne,
                     SpinUndefined)
from .intmat import matvec, smith_normal_form, solve_gf2

TWO_PI = 2 * math.pi
INDEX_TOL = 1e-6


@dataclass(frozen=True)
class Cycle:
    """Integer coefficients over oriented edges; optionally backed by an
    explicit closed walk (tuple of (edge, +1/-1) steps)."""

    coeffs: tuple                      # sorted ((edge, coeff), ...)
    walk: Optional[tuple] = None

    def coeff_dict(self):
        return dict(self.coeffs)

    @staticmethod
    def from_dict(d, walk=None):
        items = tuple(sorted((e, c) for e, c in d.items() if c != 0))
        return Cycle(items, walk)


def cycle_from_walk(surface: Surface, walk) -> Cycle:
    """Build the chain of a closed walk, checking closure as we go."""
    walk = tuple(walk)
    if not walk:
        raise NotClosed("empty walk")
    verts = []
    for edge, direction in walk:
        tail, head = surface.edge_tail[edge], surface.edge_head[edge]
        if direction == 1:
            verts.append((tail, head))
        elif direction == -1:
            verts.append((head, tail))
        else:
            raise NotClosed(f"bad step direction {direction}")
    for i in range(len(verts)):
        if verts[i][1] != verts[(i + 1) % len(verts)][0]:
            raise NotClosed("walk steps do not concatenate into a loop")
    coeffs = {}
    for edge, direction in walk:
        coeffs[edge] = coeffs.get(edge, 0) + direction
    return Cycle.from_dict(coeffs, walk)


@dataclass
class CellComplex:
    vertices: int
    edges: list                       # edge ids, tail/head in endpoint lists
    tails: list
    heads: list
    faces: int
    boundary1: list                   # V x E
    boundary2: list                   # E x F

    def euler(self) -> int:
        return self.vertices - len(self.edges) + self.faces


def cell_complex(surface: Surface) -> CellComplex:
    """Cells: singularity classes / saddle connections / pole disks (and
    for compact closings the seam edge and band face)."""
    edges = surface.edges()
    eidx = {e: i for i, e in enumerate(edges)}
    V = len(surface.vertex_classes)
    F = len(surface.faces)
    B1 = [[0] * len(edges) for _ in range(V)]
    tails, heads = [], []
    for j, e in enumerate(edges):
        t, h = surface.edge_tail[e], surface.edge_head[e]
        tails.append(t)
        heads.append(h)
        B1[h][j] += 1
        B1[t][j] -= 1
    B2 = [[0] * F for _ in range(len(edges))]
    for f in surface.faces:
        for di in f.domains:
            dom = surface.domains[di]
            if dom.kind == "band":
                for lbl in dom.labels:
                    B2[eidx[("seg", lbl)]][f.index] += 1
                for lbl in dom.top_labels:
                    B2[eidx[("seg", lbl)]][f.index] -= 1
            else:
                sign = 1 if dom.is_plus else -1
                for lbl in dom.labels:
                    B2[eidx[("seg", lbl)]][f.index] += sign
    cx = CellComplex(V, edges, tails, heads, F, B1, B2)
    if cx.euler() != 2 - 2 * surface._genus:
        raise EulerMismatch("cell complex Euler characteristic disagrees with genus")
    if any(matvec(B1, [row[f] for row in B2]) != [0] * V for f in range(F)):
        raise InternalError("boundary of a face boundary is nonzero")
    return cx


# -- intersection pairing ----------------------------------------------------


def _vertex_passages(surface, vc, coeffs):
    """Resolve the chain flow through one vertex into (in_dart, out_dart)
    passages; any valid resolution computes the same pairing with cycles."""
    ins, outs = [], []
    for k, dart in enumerate(vc.darts_ccw):
        edge, end = dart
        c = coeffs.get(edge, 0)
        if c == 0:
            continue
        arriving = (end == 1 and c > 0) or (end == 0 and c < 0)
        for _ in range(abs(c)):
            (ins if arriving else outs).append(k)
    if len(ins) != len(outs):
        raise InternalError("chain is not a cycle at a vertex")
    ins.sort()
    outs.sort()
    return list(zip(ins, outs))


def intersection_number(surface: Surface, a: Cycle, b: Cycle) -> int:
    """Algebraic intersection of two cycles via chord crossings in the
    vertex links; depends only on the homology classes."""
    ca, cb = a.coeff_dict(), b.coeff_dict()
    total = 0
    for vc in surface.vertex_classes:
        pa = _vertex_passages(surface, vc, ca)
        pb = _vertex_passages(surface, vc, cb)
        if not pa or not pb:
            continue
        # circle positions: per ccw dart k, slots b_in < a_in < dart < a_out < b_out
        points = []
        for idx, (kin, kout) in enumerate(pa):
            points.append(((kin, -1, idx), ("a", idx, "in")))
            points.append(((kout, 1, idx), ("a", idx, "out")))
        for idx, (kin, kout) in enumerate(pb):
            points.append(((kin, -2, idx), ("b", idx, "in")))
            points.append(((kout, 2, idx), ("b", idx, "out")))
        points.sort(key=lambda p: p[0])
        rank = {tag: i for i, (_, tag) in enumerate(points)}
        N = len(points)
        for i in range(len(pa)):
            p_in, p_out = rank[("a", i, "in")], rank[("a", i, "out")]
            for j in range(len(pb)):
                q_in, q_out = rank[("b", j, "in")], rank[("b", j, "out")]
                din = (q_in - p_in) % N
                dout = (q_out - p_in) % N
                dp = (p_out - p_in) % N
                in_arc = 0 < din < dp
                out_arc = 0 < dout < dp
                if in_arc != out_arc:
                    total += 1 if in_arc else -1
    return total


# -- homology coordinates ----------------------------------------------------


class HomologyData:
    """H_1 of the compactified surface with an explicit chain basis and
    the intersection Gram matrix on it."""

    def __init__(self, surface: Surface):
        self.surface = surface
        cx = cell_complex(surface)
        self.complex = cx
        self.edges = cx.edges
        self.eidx = {e: i for i, e in enumerate(self.edges)}
        E = len(self.edges)

        S1, _U1, _U1inv, V1, V1inv = smith_normal_form(cx.boundary1)
        rank1 = sum(1 for i in range(min(len(S1), E)) if S1[i][i] != 0)
        self._V1, self._V1inv, self._rank1 = V1, V1inv, rank1
        kdim = E - rank1

        # face boundaries in kernel coordinates
        X = [[0] * cx.faces for _ in range(kdim)]
        for f in range(cx.faces):
            col = [cx.boundary2[i][f] for i in range(E)]
            z = matvec(V1inv, col)
            if any(z[i] != 0 for i in range(rank1)):
                raise InternalError("face boundary is not a cycle")
            for i in range(kdim):
                X[i][f] = z[rank1 + i]
        S2, U2, U2inv, _V2, _V2inv = smith_normal_form(X)
        rank2 = 0
        for i in range(min(kdim, cx.faces)):
            if S2[i][i] != 0:
                if S2[i][i] != 1:
                    raise InternalError("torsion in surface H_1")
                rank2 += 1
        self._U2, self._U2inv, self._rank2 = U2, U2inv, rank2
        self.rank = kdim - rank2
        if self.rank != 2 * surface._genus:
            raise EulerMismatch("H_1 rank disagrees with genus")

        self.basis_chains = []
        for i in range(rank2, kdim):
            x = [self._U2inv[r][i] for r in range(kdim)]
            chain = [0] * E
            for r in range(kdim):
                if x[r]:
                    for e in range(E):
                        chain[e] += V1[e][rank1 + r] * x[r]
            self.basis_chains.append(chain)

        self.basis_cycles = [self._chain_to_cycle(c) for c in self.basis_chains]
        g2 = self.rank
        self.gram = [[0] * g2 for _ in range(g2)]
        for i in range(g2):
            for j in range(i + 1, g2):
                v = intersection_number(surface, self.basis_cycles[i],
                                        self.basis_cycles[j])
                self.gram[i][j] = v
                self.gram[j][i] = -v

    def _chain_to_cycle(self, chain):
        return Cycle.from_dict({self.edges[i]: chain[i]
                                for i in range(len(chain)) if chain[i]})

    def chain_vector(self, cycle: Cycle):
        v = [0] * len(self.edges)
        for e, c in cycle.coeffs:
            v[self.eidx[e]] = c
        return v

    def coords(self, cycle: Cycle):
        """H_1 coordinates of a cycle."""
        z = matvec(self._V1inv, self.chain_vector(cycle))
        if any(z[i] != 0 for i in range(self._rank1)):
            raise NotClosed("chain has nonzero boundary")
        x = z[self._rank1:]
        w = matvec(self._U2, x)
        return w[self._rank2:]

    def pairing(self, xc, yc) -> int:
        return sum(xc[i] * self.gram[i][j] * yc[j]
                   for i in range(self.rank) for j in range(self.rank))

    def cycle_from_coords(self, coords) -> Cycle:
        d = {}
        for i, c in enumerate(coords):
            if c:
                for e, v in self.basis_cycles[i].coeffs:
                    d[e] = d.get(e, 0) + c * v
        return Cycle.from_dict(d)


def homology_data(surface: Surface) -> HomologyData:
    cached = getattr(surface, "_homology_cache", None)
    if cached is None:
        cached = HomologyData(surface)
        surface._homology_cache = cached
    return cached


# -- symplectic bases --------------------------------------------------------


@dataclass
class SymplecticBasis:
    pairs: list                      # [(alpha_cycle, beta_cycle), ...]
    coord_pairs: list                # same, in H_1 coordinates


def _ext_gcd_combo(values):
    """gcd of values plus coefficients achieving it."""
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        if g == 0:
            g, coeffs = abs(v), [0] * len(values)
            coeffs[i] = 1 if v > 0 else -1
            continue
        a, b = g, v
        # extended euclid on (a, b)
        old_r, r = a, b
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        new_coeffs = [c * old_s for c in coeffs]
        new_coeffs[i] += old_t
        g, coeffs = old_r, new_coeffs
        if g < 0:
            g, coeffs = -g, [-c for c in coeffs]
    return g, coeffs


def symplectic_transform(Q, seed_order=None):
    """Integer symplectic Gram-Schmidt for a unimodular alternating form.

    Returns pair vectors [(u1, v1), ...] with Q(u_i, v_i) = 1 and all other
    pairings zero.  seed_order permutes the starting generators so that
    independent bases can be produced for well-definedness tests.
    """
    dim = len(Q)

    def form(x, y):
        return sum(x[i] * Q[i][j] * y[j] for i in range(dim) for j in range(dim))

    gens = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    if seed_order:
        gens = [gens[i] for i in seed_order]
    pairs = []
    while True:
        gens = [g for g in gens if any(g)]
        if not gens:
            break
        u = None
        for cand in gens:
            if any(form(cand, w) != 0 for w in gens):
                u = cand
                break
        if u is None:
            raise InternalError("nonzero null vectors: form is degenerate")
        vals = [form(u, w) for w in gens]
        g, coeffs = _ext_gcd_combo(vals)
        if g != 1:
            raise InternalError("intersection form is not unimodular")
        v = [0] * dim
        for c, w in zip(coeffs, gens):
            if c:
                for i in range(dim):
                    v[i] += c * w[i]
        pairs.append((u, v))
        nxt = []
        for w in gens:
            fu, fv = form(u, w), form(v, w)
            w2 = [w[i] + fv * u[i] - fu * v[i] for i in range(dim)]
            nxt.append(w2)
        gens = nxt
    return pairs


def symplectic_basis(surface: Surface, seed_order=None) -> SymplecticBasis:
    """A symplectic basis of H_1 realized by integer edge cycles."""
    g = surface_genus(surface)
    if g == 0:
        raise GenusZero("no symplectic basis in genus 0")
    hom = homology_data(surface)
    coord_pairs = symplectic_transform(hom.gram, seed_order)
    pairs = [(hom.cycle_from_coords(a), hom.cycle_from_coords(b))
             for a, b in coord_pairs]
    # verify the standard form on the nose
    for i, (a, b) in enumerate(pairs):
        if intersection_number(surface, a, b) != 1:
            raise InternalError("symplectic reduction failed (diagonal)")
        for j in range(i + 1, len(pairs)):
            c, d = pairs[j]
            if (intersection_number(surface, a, c) or
                    intersection_number(surface, a, d) or
                    intersection_number(surface, b, c) or
                    intersection_number(surface, b, d)):
                raise InternalError("symplectic reduction failed (off-diagonal)")
    return SymplecticBasis(pairs, coord_pairs)


# -- embedded walks ----------------------------------------------------------


def fundamental_cycle_walks(surface: Surface):
    """Spanning-tree fundamental cycles as embedded closed walks."""
    edges = surface.edges()
    V = len(surface.vertex_classes)
    parent = {0: None}
    order = [0]
    adj = {}
    for e in edges:
        t, h = surface.edge_tail[e], surface.edge_head[e]
        adj.setdefault(t, []).append((e, 1, h))
        adj.setdefault(h, []).append((e, -1, t))
    tree_edges = set()
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for e, d, w in adj.get(v, []):
            if w not in parent:
                parent[w] = (v, e, d)
                tree_edges.add(e)
                order.append(w)
    if len(parent) != V:
        raise InternalError("1-skeleton is disconnected")

    def path_to_root(v):
        steps = []
        while parent[v] is not None:
            u, e, d = parent[v]
            steps.append((e, -d))      # step from v toward the root
            v = u
        return steps, v

    walks = []
    for e in edges:
        if e in tree_edges:
            continue
        t, h = surface.edge_tail[e], surface.edge_head[e]
        up_h, _ = path_to_root(h)
        up_t, _ = path_to_root(t)
        # strip the common tail of the two root paths
        while up_h and up_t and up_h[-1] == up_t[-1]:
            up_h.pop()
            up_t.pop()
        walk = [(e, 1)] + up_h + [(ed, -d) for ed, d in reversed(up_t)]
        walks.append(cycle_from_walk(surface, walk))
    return walks


def simple_cycle_walks(surface: Surface, limit=4000):
    """All graph-simple closed walks (distinct vertices, each edge once),
    one orientation and basepoint per cycle."""
    edges = surface.edges()
    adj = {}
    for e in edges:
        t, h = surface.edge_tail[e], surface.edge_head[e]
        adj.setdefault(t, []).append((e, 1, h))
        adj.setdefault(h, []).append((e, -1, t))
    for v in adj:
        adj[v].sort(key=lambda x: (repr(x[0]), x[1]))
    out = []
    seen = set()

    def dfs(start, v, walk, used_edges, visited):
        if len(out) >= limit:
            return
        for e, d, w in adj.get(v, []):
            if e in used_edges:
                continue
            if w == start and walk:
                key = frozenset((ed, dd) for ed, dd in walk + [(e, d)])
                norm = frozenset((ed, -dd) for ed, dd in walk + [(e, d)])
                if key in seen or norm in seen:
                    continue
                seen.add(key)
                out.append(cycle_from_walk(surface, walk + [(e, d)]))
                continue
            if w in visited or w < start:
                continue
            visited.add(w)
            used_edges.add(e)
            dfs(start, w, walk + [(e, d)], used_edges, visited)
            used_edges.discard(e)
            visited.discard(w)

    for start in range(len(surface.vertex_classes)):
        dfs(start, start, [], set(), {start})
    return out


# -- winding index -----------------------------------------------------------


def curve_index(surface: Surface, cycle: Cycle, pushoff: str = "left") -> int:
    """Total turning of the pushed-off representative divided by 2*pi.

    The walk is desingularized on the given side; at each vertex passage
    the turning is pi minus the cone angle swept on that side.
    """
    if pushoff not in ("left", "right"):
        raise ValueError("pushoff must be 'left' or 'right'")
    walk = cycle.walk
    if walk is None:
        raise NotClosed("curve_index requires an explicit closed walk")
    cycle_from_walk(surface, walk)   # closure validation
    m = len(walk)
    total = 0.0
    for i in range(m):
        e_in, d_in = walk[i]
        e_out, d_out = walk[(i + 1) % m]
        v = surface.edge_head[e_in] if d_in == 1 else surface.edge_tail[e_in]
        vc = surface.vertex_classes[v]
        in_dart = (e_in, 1 if d_in == 1 else 0)
        out_dart = (e_out, 0 if d_out == 1 else 1)
        theta = vc.total_angle
        if in_dart == out_dart:
            alpha_left = theta
            alpha_right = theta
        else:
            alpha_left = (vc.dart_positions[in_dart] -
                          vc.dart_positions[out_dart]) % theta
            alpha_right = theta - alpha_left
        total += (math.pi - alpha_left) if pushoff == "left" \
            else (alpha_right - math.pi)
    ind = total / TWO_PI
    if abs(ind - round(ind)) > INDEX_TOL:
        raise IndexNotInteger(f"turning {total} is not a multiple of 2*pi")
    return int(round(ind))


# -- rotation number ---------------------------------------------------------


def _embedded_candidates(surface: Surface):
    cands = fundamental_cycle_walks(surface)
    seen = {c.coeffs for c in cands}
    for c in simple_cycle_walks(surface):
        if c.coeffs not in seen:
            seen.add(c.coeffs)
            cands.append(c)
    return cands


def embedded_symplectic_pair(surface: Surface):
    """Two embedded cycles with intersection number +-1 (genus one)."""
    hom = homology_data(surface)
    cands = _embedded_candidates(surface)
    coords = [hom.coords(c) for c in cands]
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            if abs(hom.pairing(coords[i], coords[j])) == 1:
                return cands[i], cands[j]
    raise NoEmbeddedBasis(
        "no pair of embedded cycles with unit intersection was found")


def rotation_number(surface: Surface) -> int:
    """gcd of the winding indices of a symplectic pair and all degrees."""
    if surface_genus(surface) != 1:
        raise NotGenusOne("rotation number is defined for genus one only")
    a, b = embedded_symplectic_pair(surface)
    sig = stratum_of(surface)
    values = [abs(curve_index(surface, a)), abs(curve_index(surface, b))]
    values += [z for z in sig.zeros]
    values += [p for p in sig.poles]
    rot = reduce(math.gcd, values)
    if rot < 1:
        raise InternalError("rotation number collapsed to 0")
    return rot


# -- spin parity -------------------------------------------------------------


def _phi_evaluator(surface: Surface):
    """The quadratic refinement phi([c]) = ind(c) + 1 mod 2 on H_1(F_2),
    extended from embedded generators by phi(x+y) = phi(x)+phi(y)+x.y."""
    hom = homology_data(surface)
    gens = fundamental_cycle_walks(surface)
    if len(gens) < hom.rank:
        raise InternalError("fundamental cycles do not span H_1")
    coords = [hom.coords(c) for c in gens]
    phis = [(curve_index(surface, c) + 1) % 2 for c in gens]
    pair = [[hom.pairing(coords[i], coords[j]) % 2 for j in range(len(gens))]
            for i in range(len(gens))]
    A = [[coords[j][i] % 2 for j in range(len(gens))] for i in range(hom.rank)]

    def phi(vec) -> int:
        lam = solve_gf2(A, [v % 2 for v in vec])
        if lam is None:
            raise InternalError("class not in the span of the generators")
        val = 0
        sel = [i for i, l in enumerate(lam) if l]
        for i in sel:
            val ^= phis[i]
        for ai in range(len(sel)):
            for bi in range(ai + 1, len(sel)):
                val ^= pair[sel[ai]][sel[bi]] & 1
        return val

    return hom, phi


def spin_parity(surface: Surface, seed_order=None) -> int:
    """Arf invariant sum((ind(a_i)+1)(ind(b_i)+1)) mod 2 over a symplectic
    basis.  Defined when all zero degrees are even and the poles are all
    even; with exactly two simple poles the computation routes through
    the compact closing."""
    sig = stratum_of(surface)
    if any(z % 2 for z in sig.zeros):
        raise SpinUndefined(f"odd zero degree in {sig}")
    if sig.poles and any(p % 2 for p in sig.poles):
        if sig.poles == (1, 1):
            from .builders import close_two_simple_poles
            return spin_parity(close_two_simple_poles(surface), seed_order)
        raise SpinUndefined(f"odd pole orders in {sig} (and not two simple poles)")
    hom, phi = _phi_evaluator(surface)
    coord_pairs = symplectic_transform(hom.gram, seed_order)
    parity = 0
    for a, b in coord_pairs:
        parity ^= phi(a) & phi(b)
    return parity


# -- hyperelliptic certificate -----------------------------------------------


def has_zippered_involution(datum: ZipperedDatum) -> bool:
    """Search for a domain pairing sending each upper domain to a lower
    one with the reversed label sequence, compatibly with the half-line
    gluings.  For generic parameters this certifies hyperellipticity."""
    if validate_datum(datum):
        raise InvalidDatum("has_zippered_involution needs a valid datum")
    d = datum.d

    def top_slice(i):
        return datum.pi_t[datum.nplus[i]:datum.nplus[i + 1]]

    def bot_slice(i):
        return datum.pi_b[datum.nminus[i]:datum.nminus[i + 1]]

    # upper cylinder blocks must match reversed lower blocks as multisets
    ctop = sorted(tuple(reversed(top_slice(d + j))) for j in range(datum.splus))
    cbot = sorted(tuple(bot_slice(d + j)) for j in range(datum.sminus))
    if ctop != cbot:
        return False

    if d == 0:
        return True

    tops = [tuple(top_slice(i)) for i in range(d)]
    bots = [tuple(bot_slice(i)) for i in range(d)]
    succ = {}
    db = datum.d_breaks
    for k in range(len(db) - 1):
        lo, hi = db[k] + 1, db[k + 1]
        for i in range(lo, hi):
            succ[i] = i + 1
        succ[hi] = lo
    candidates = {i: [j for j in range(1, d + 1)
                      if bots[j - 1] == tuple(reversed(tops[i - 1]))]
                  for i in range(1, d + 1)}

    # tau sends pair i to pair mu(i) reversed; compatibility with the
    # right-line gluings amounts to sigma(mu(i)) = mu^{-1}(i) for all i
    mu = {}
    used = set()

    def backtrack(i):
        if i > d:
            inv = {v: k for k, v in mu.items()}
            return all(succ[mu[i_]] == inv[i_] for i_ in range(1, d + 1))
        for j in candidates[i]:
            if j in used:
                continue
            mu[i] = j
            used.add(j)
            if backtrack(i + 1):
                return True
            del mu[i]
            used.discard(j)
        return False

    return backtrack(1)
