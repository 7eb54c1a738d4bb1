"""Tangles and the contraction evaluator for bracket state sums.

A tangle is a planar diagram in a disk: vertices as in a long diagram plus
``2k`` boundary points listed counterclockwise, each attached to an edge.
Closed components are allowed.  Its bracket is a mapping from planar
matchings of the boundary points to ``SkeinPoly`` coefficients.

The contraction evaluator adds vertices one at a time and keeps, for every
reachable connectivity pattern of the cut edges, the accumulated weights.
A long diagram is the 2-ended tangle whose boundary points are its open
ends; the pattern count stays near the Catalan number of the cut width
instead of ``2^n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import CROSSING, DOUBLE, DiagramError, LongDiagram, ValidityReport
from .poly import DELTA, SkeinPoly

__all__ = [
    "TangleVertex",
    "Tangle",
    "validate_tangle",
    "tangle_bracket",
    "contract_long",
    "identity_tangle",
]

_CROSS_ARCS = (((0, 1), (2, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True)
class TangleVertex:
    """``ends`` counterclockwise; ``inc[s]`` tells whether the edge at slot
    ``s`` points into the vertex.  For crossings slot 0 is an under end."""

    kind: str
    ends: tuple
    inc: tuple

    def oriented_pairs(self):
        if self.inc[0] == self.inc[1]:
            return ((0, 3), (1, 2))
        return ((0, 1), (2, 3))

    @property
    def sign(self) -> int:
        if self.kind != CROSSING:
            return 0
        # slot 0 under; normalise so the under strand enters at slot 0
        over_in = 3 if self.inc[3] else 1
        if not self.inc[0]:
            over_in = 4 - over_in
        return 1 if over_in == 3 else -1


@dataclass(frozen=True)
class Tangle:
    vertices: tuple[TangleVertex, ...]
    boundary: tuple  # edge labels, counterclockwise around the disk

    @property
    def n_double(self) -> int:
        return sum(1 for v in self.vertices if v.kind == DOUBLE)

    @classmethod
    def build(cls, vertices: Iterable[tuple[str, Sequence, Sequence]], boundary: Sequence) -> "Tangle":
        vs = tuple(TangleVertex(k, tuple(e), tuple(bool(f) for f in inc)) for k, e, inc in vertices)
        return cls(vs, tuple(boundary))


def identity_tangle(k: int) -> Tangle:
    """``k`` parallel strands; boundary ``0..2k-1`` with strand ``i`` joining
    points ``i`` and ``2k-1-i``."""
    return Tangle((), tuple(list(range(k)) + list(reversed(range(k)))))


# ------------------------------------------------------------- validation


def _face_count(rot: list[list], ends_of: dict) -> int:
    """Count the orbits of ``h -> sigma(alpha(h))`` on half-edges."""
    nxt = {}
    for v, row in enumerate(rot):
        for s in range(len(row)):
            nxt[(v, s)] = (v, (s + 1) % len(row))
    alpha = {}
    for e, (h1, h2) in ends_of.items():
        alpha[h1] = h2
        alpha[h2] = h1
    seen = set()
    faces = 0
    for h in nxt:
        if h in seen:
            continue
        faces += 1
        cur = h
        while cur not in seen:
            seen.add(cur)
            cur = nxt[alpha[cur]]
    return faces


def validate_tangle(t: Tangle) -> ValidityReport:
    """Edge multiplicities, passage orientation and the Euler check
    ``V - E + F = 2C`` (``C`` connected components) with the boundary circle
    collapsed to one vertex."""
    where: dict = {}
    for vi, v in enumerate(t.vertices):
        if v.kind not in (CROSSING, DOUBLE):
            return ValidityReport(False, f"vertex {vi}: unknown kind {v.kind!r}")
        if len(v.ends) != 4 or len(v.inc) != 4:
            return ValidityReport(False, f"vertex {vi}: arity must be 4")
        if v.inc[0] == v.inc[2] or v.inc[1] == v.inc[3]:
            return ValidityReport(False, f"vertex {vi}: a passage must enter and leave")
        for s, e in enumerate(v.ends):
            where.setdefault(e, []).append((vi, s))
    nb = len(t.vertices)
    # seen from outside the disk the boundary circle turns the other way
    k = len(t.boundary)
    for p, e in enumerate(t.boundary):
        where.setdefault(e, []).append((nb, k - 1 - p))
    if len(t.boundary) % 2:
        return ValidityReport(False, "odd number of boundary points")
    for e, locs in where.items():
        if len(locs) != 2:
            return ValidityReport(False, f"edge multiplicity: edge {e} has {len(locs)} ends")
        vend = [(v, s) for v, s in locs if v < nb]
        if len(vend) == 2:
            flags = [t.vertices[v].inc[s] for v, s in vend]
            if flags[0] == flags[1]:
                return ValidityReport(False, f"edge {e}: inconsistent orientation")
    rot = [list(v.ends) for v in t.vertices]
    if t.boundary:
        rot.append(list(reversed(t.boundary)))
    ends_of = {e: tuple(locs) for e, locs in where.items()}
    F = _face_count(rot, ends_of)
    # connected components by union-find on vertices
    parent = list(range(len(rot)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (v1, _), (v2, _) in ends_of.values():
        parent[find(v1)] = find(v2)
    C = len({find(x) for x in range(len(rot))})
    V, E = len(rot), len(ends_of)
    if V - E + F != 2 * C:
        return ValidityReport(False, f"planarity: V - E + F = {V - E + F}, expected {2 * C}")
    return ValidityReport(True)


# ------------------------------------------------------------ contraction


def _records(vertices, fixed=None) -> list[tuple]:
    """Per vertex: the smoothing options ``(arcs, wa, wb)``.

    ``fixed`` maps a vertex index to ``"oriented"`` or ``"other"``; such a
    vertex gets that single smoothing with weight 1.
    """
    fixed = fixed or {}
    out = []
    for i, v in enumerate(vertices):
        ori = v.oriented_pairs()
        other = _CROSS_ARCS[1] if ori == _CROSS_ARCS[0] else _CROSS_ARCS[0]
        if i in fixed:
            if fixed[i] not in ("oriented", "other"):
                raise ValueError(f"unknown smoothing {fixed[i]!r}")
            opts = (((ori if fixed[i] == "oriented" else other), 0, 0),)
        elif v.kind == CROSSING:
            opts = ((_CROSS_ARCS[0], 1, 0), (_CROSS_ARCS[1], -1, 0))
        else:
            opts = ((ori, 0, 1), (other, 0, 0))
        arcs = tuple(
            (tuple((v.ends[s], v.ends[u]) for s, u in pairs), wa, wb) for pairs, wa, wb in opts
        )
        out.append(arcs)
    return out


def _order(vertices, boundary) -> list[int]:
    """Greedy vertex order keeping the cut narrow."""
    n = len(vertices)
    slots_left: dict = {}
    for v in vertices:
        for e in v.ends:
            slots_left[e] = slots_left.get(e, 0) + 1
    open_edges: set = set()
    done = [False] * n
    order = []
    for _ in range(n):
        best, best_cost = -1, None
        for i in range(n):
            if done[i]:
                continue
            ends = vertices[i].ends
            closing = sum(1 for e in set(ends) if e in open_edges)
            opening = sum(
                1 for e in set(ends) if e not in open_edges and slots_left[e] > ends.count(e)
            )
            cost = (opening - closing, -closing)
            if best_cost is None or cost < best_cost:
                best, best_cost = i, cost
        done[best] = True
        order.append(best)
        for e in vertices[best].ends:
            slots_left[e] -= 1
            if slots_left[e] == 0:
                open_edges.discard(e)
            else:
                open_edges.add(e)
    return order


def _join(mate: dict, x, y) -> int:
    """Join the path ends at edges ``x`` and ``y``; return closed loops made."""
    if x == y:
        if x in mate:
            raise DiagramError("edge joined to itself twice")
        return 1
    if mate.get(x) == y:
        del mate[x], mate[y]
        return 1
    ex = mate.pop(x, x)
    if ex != x:
        del mate[ex]
    ey = mate.pop(y, y)
    if ey != y:
        del mate[ey]
    mate[ex] = ey
    mate[ey] = ex
    return 0


def _contract(vertices, boundary, fixed=None) -> dict:
    """``{matching of boundary edges: {(a, b, loops): count}}``."""
    recs = _records(vertices, fixed)
    states: dict = {(): {(0, 0, 0): 1}}
    for vi in _order(vertices, boundary):
        new: dict = {}
        for key, coeffs in states.items():
            for arcs, wa, wb in recs[vi]:
                mate = {}
                for a, b in key:
                    mate[a] = b
                    mate[b] = a
                loops = 0
                for x, y in arcs:
                    loops += _join(mate, x, y)
                nkey = tuple(sorted((a, b) for a, b in mate.items() if a < b))
                bucket = new.setdefault(nkey, {})
                for (a, b, l), c in coeffs.items():
                    k = (a + wa, b + wb, l + loops)
                    bucket[k] = bucket.get(k, 0) + c
        states = new
    return states


def _to_poly(coeffs: dict, n_double: int, drop_loops: int = 0) -> SkeinPoly:
    dpow = {}
    out: dict = {}
    for (a, b, l), c in coeffs.items():
        l -= drop_loops
        if l not in dpow:
            dpow[l] = DELTA**l
        for e, v in dpow[l].items():
            key = (a + e, b, n_double - b)
            out[key] = out.get(key, 0) + v * c
    return SkeinPoly(out)


def tangle_bracket(t: Tangle) -> dict:
    """Bracket of a tangle as ``{matching: SkeinPoly}``.

    A matching is a sorted tuple of boundary position pairs ``(i, j)``,
    ``i < j``.  Two tangles with the same boundary are bracket-equal in every
    closure exactly when these mappings agree.
    """
    rep = validate_tangle(t)
    if not rep.ok:
        raise DiagramError(rep.reason)
    pos: dict = {}
    for p, e in enumerate(t.boundary):
        pos.setdefault(e, []).append(p)
    states = _contract(t.vertices, t.boundary)
    out: dict = {}
    nd = t.n_double
    for key, coeffs in states.items():
        pairs = []
        used = set()
        for a, b in key:
            pairs.append(tuple(sorted((pos[a][0], pos[b][0]))))
            used.update((a, b))
        for e, ps in pos.items():
            if e not in used and len(ps) == 2:
                pairs.append((ps[0], ps[1]))
        m = tuple(sorted(pairs))
        out[m] = out.get(m, SkeinPoly()) + _to_poly(coeffs, nd)
    return {m: p for m, p in out.items() if not p.is_zero()}


def contract_long(d: LongDiagram, fixed: dict | None = None) -> SkeinPoly:
    """Singular bracket of a long diagram by contraction.

    Vertices listed in ``fixed`` are smoothed as given (``"oriented"`` or
    ``"other"``) instead of expanded, which yields the bracket of a partially
    smoothed diagram; a fixed double point then carries no ``B``/``C``.
    """
    if not d.vertices:
        return SkeinPoly.constant(1)
    verts = [TangleVertex(v.kind, v.ends, v.incoming()) for v in d.vertices]
    states = _contract(verts, (0, d.last_edge), fixed)
    total: dict = {}
    for coeffs in states.values():
        for k, c in coeffs.items():
            total[k] = total.get(k, 0) + c
    nd = sum(1 for i, v in enumerate(d.vertices) if v.kind == DOUBLE and i not in (fixed or {}))
    return _to_poly(total, nd)
