"""Long knot diagrams as planar rotation systems.

Edges are labelled ``0..E`` in traversal order: edge 0 comes in from the
left end, edge ``E`` leaves to the right end.  Every vertex lists its four
edge-ends counterclockwise:

* crossing: slot 0 is the incoming under-strand end (PD convention), so
  slot 2 is the outgoing under end and slots 1/3 carry the over strand;
* double point: slot 0 is the incoming end with the lower label.

The open ends are closed through an implicit vertex at infinity (slot 0
holds the tail of edge 0, slot 1 the head of edge ``E``) when faces are
traced, which makes the Euler check ``V - E + F = 2`` meaningful.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "CROSSING",
    "DOUBLE",
    "Vertex",
    "LongDiagram",
    "FramingData",
    "ValidityReport",
    "Face",
    "DiagramError",
    "NotADoublePoint",
    "NotACrossing",
    "validate",
    "writhe",
    "whitney_index",
    "framing",
    "mirror",
    "reverse",
    "connected_sum",
    "resolve",
    "make_singular",
    "canonical_form",
    "add_kink",
    "faces",
    "from_pd",
    "from_closed_pd",
    "diagram_to_json",
    "diagram_from_json",
    "UNKNOT",
]

CROSSING = "crossing"
DOUBLE = "double"
SCHEMA_VERSION = 1


class DiagramError(ValueError):
    """A diagram violates the model's structural rules."""


class NotADoublePoint(DiagramError):
    pass


class NotACrossing(DiagramError):
    pass


@dataclass(frozen=True)
class Vertex:
    kind: str
    ends: tuple[int, int, int, int]

    def incoming(self) -> tuple[bool, bool, bool, bool]:
        """Per-slot flag: does the edge at this slot point into the vertex."""
        e = self.ends
        f1 = e[1] < e[3]
        return (True, f1, False, not f1)

    @property
    def sign(self) -> int:
        if self.kind != CROSSING:
            return 0
        return 1 if self.ends[3] < self.ends[1] else -1

    def oriented_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Slot pairs of the smoothing that respects orientation."""
        if self.incoming()[1]:
            return ((0, 3), (1, 2))
        return ((0, 1), (2, 3))

    def first_visit(self) -> int:
        return min(self.ends)


@dataclass(frozen=True)
class FramingData:
    writhe: int
    whitney: int


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Face:
    """A face as its boundary darts ``(edge, forward)``; the face lies to the
    right of each dart."""

    index: int
    darts: tuple[tuple[int, bool], ...]
    corners: tuple[tuple[int, int], ...]  # (vertex, slot) reached by each dart

    def __len__(self):
        return len(self.darts)

    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.corners)


@dataclass(frozen=True)
class LongDiagram:
    n_edges: int
    vertices: tuple[Vertex, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def last_edge(self) -> int:
        return self.n_edges - 1

    def __len__(self):
        return len(self.vertices)

    def crossing_ids(self) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.kind == CROSSING]

    def double_point_ids(self) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.kind == DOUBLE]

    @property
    def n_crossings(self) -> int:
        return sum(1 for v in self.vertices if v.kind == CROSSING)

    @property
    def n_double(self) -> int:
        return sum(1 for v in self.vertices if v.kind == DOUBLE)

    def key(self) -> tuple:
        """Hashable identity of the canonical form."""
        c = canonical_form(self)
        return (c.n_edges, tuple((v.kind, v.ends) for v in c.vertices))

    def replace_vertex(self, i: int, v: Vertex) -> "LongDiagram":
        vs = list(self.vertices)
        vs[i] = v
        return LongDiagram(self.n_edges, tuple(vs))

    def vertex_at_edge(self, e: int) -> int:
        """Index of the vertex that edge ``e`` runs into."""
        for i, v in enumerate(self.vertices):
            inc = v.incoming()
            for s in range(4):
                if inc[s] and v.ends[s] == e:
                    return i
        raise DiagramError(f"edge {e} does not end at a vertex")


UNKNOT = LongDiagram(1, ())


# ------------------------------------------------------------------ faces


def _occurrences(d: LongDiagram) -> tuple[list, list, dict]:
    """Rotation lists, tail/head locations per edge, vertex degrees."""
    inf = len(d.vertices)
    rot = [list(v.ends) for v in d.vertices] + [[0, d.last_edge]]
    tail: list = [None] * d.n_edges
    head: list = [None] * d.n_edges
    for vi, v in enumerate(d.vertices):
        inc = v.incoming()
        for s, e in enumerate(v.ends):
            if inc[s]:
                head[e] = (vi, s)
            else:
                tail[e] = (vi, s)
    tail[0] = (inf, 0)
    head[d.last_edge] = (inf, 1)
    return rot, [tail, head], {}


def faces(d: LongDiagram) -> list[Face]:
    """All faces, in a deterministic order (by first dart ``(0,fwd)``,
    ``(0,back)``, ``(1,fwd)``...).  Face ids used by move events index into
    this list."""
    if "faces" in d._cache:
        return d._cache["faces"]
    rot, (tail, head), _ = _occurrences(d)
    where: dict = {}
    for e in range(d.n_edges):
        where[tail[e]] = (e, True)
        where[head[e]] = (e, False)
    seen = set()
    out: list[Face] = []
    for e in range(d.n_edges):
        for fwd in (True, False):
            if (e, fwd) in seen:
                continue
            darts = []
            corners = []
            cur = (e, fwd)
            while cur not in seen:
                seen.add(cur)
                darts.append(cur)
                ce, cf = cur
                v, s = head[ce] if cf else tail[ce]
                corners.append((v, s))
                nxt = (v, (s + 1) % len(rot[v]))
                f, is_tail = where[nxt]
                cur = (f, is_tail)
            out.append(Face(len(out), tuple(darts), tuple(corners)))
    d._cache["faces"] = out
    return out


# ------------------------------------------------------------- validation


def validate(d: LongDiagram) -> ValidityReport:
    """Check labels, passage structure, orientation conventions and planarity."""
    E = d.last_edge
    if d.n_edges < 1:
        return ValidityReport(False, "edge count must be at least 1")
    if E == 0:
        if d.vertices:
            return ValidityReport(False, "edge multiplicity: a single edge cannot carry vertices")
        return ValidityReport(True)
    if E != 2 * len(d.vertices):
        return ValidityReport(False, f"edge count {d.n_edges} does not match {len(d.vertices)} vertices")
    count = [0] * d.n_edges
    for i, v in enumerate(d.vertices):
        if v.kind not in (CROSSING, DOUBLE):
            return ValidityReport(False, f"vertex {i}: unknown kind {v.kind!r}")
        if len(v.ends) != 4:
            return ValidityReport(False, f"vertex {i}: arity {len(v.ends)} != 4")
        for e in v.ends:
            if not (0 <= e <= E):
                return ValidityReport(False, f"vertex {i}: edge {e} out of range")
            count[e] += 1
    for e, c in enumerate(count):
        want = 1 if e in (0, E) else 2
        if c != want:
            return ValidityReport(False, f"edge multiplicity: edge {e} used {c} times")
    incoming = [0] * d.n_edges
    for i, v in enumerate(d.vertices):
        a, b, c, dd = v.ends
        if c != a + 1:
            return ValidityReport(False, f"vertex {i}: slot 2 must continue slot 0")
        if abs(b - dd) != 1:
            return ValidityReport(False, f"vertex {i}: slots 1/3 are not one passage")
        incoming[a] += 1
        incoming[min(b, dd)] += 1
        if v.kind == DOUBLE and a > min(b, dd):
            return ValidityReport(False, f"vertex {i}: double point must start at lower incoming edge")
    if any(incoming[e] != 1 for e in range(E)):
        return ValidityReport(False, "traversal: an edge does not enter exactly one vertex")
    F = len(faces(d))
    V = len(d.vertices) + 1
    if V - d.n_edges + F != 2:
        return ValidityReport(False, f"planarity: V - E + F = {V - d.n_edges + F}")
    return ValidityReport(True)


def _require_valid(d: LongDiagram) -> None:
    rep = validate(d)
    if not rep.ok:
        raise DiagramError(rep.reason)


# ---------------------------------------------------------------- framing


def writhe(d: LongDiagram) -> int:
    return sum(v.sign for v in d.vertices)


def _whitney_sign(v: Vertex) -> int:
    e = v.ends
    in_b = 1 if e[1] < e[3] else 3
    out_b = 4 - in_b
    if e[0] < e[in_b]:
        first_out, second_out = 2, out_b
    else:
        first_out, second_out = out_b, 2
    return 1 if second_out == (first_out + 1) % 4 else -1


def whitney_index(d: LongDiagram) -> int:
    """Rotation number of the underlying long plane curve.

    Sum over all self-intersections of the sign of ``det(t1, t2)`` with
    ``t1`` the tangent of the earlier pass; the global sign is fixed so that
    a counterclockwise curl counts ``+1``.
    """
    return -sum(_whitney_sign(v) for v in d.vertices)


def framing(d: LongDiagram) -> FramingData:
    return FramingData(writhe(d), whitney_index(d))


# ------------------------------------------------------ vertex rewriting


def _rotate(ends: Sequence[int], r: int) -> tuple[int, int, int, int]:
    return tuple(ends[r:]) + tuple(ends[:r])  # type: ignore[return-value]


def _crossing_from(ends: Sequence[int], under_in_slot: int) -> Vertex:
    return Vertex(CROSSING, _rotate(ends, under_in_slot))


def _double_from(ends: Sequence[int], inc: Sequence[bool]) -> Vertex:
    ins = [s for s in range(4) if inc[s]]
    s0 = min(ins, key=lambda s: ends[s])
    return Vertex(DOUBLE, _rotate(ends, s0))


def mirror(d: LongDiagram) -> LongDiagram:
    """Swap over and under at every crossing."""
    out = []
    for v in d.vertices:
        if v.kind == CROSSING:
            over_in = 1 if v.ends[1] < v.ends[3] else 3
            v = _crossing_from(v.ends, over_in)
        out.append(v)
    return LongDiagram(d.n_edges, tuple(out))


def reverse(d: LongDiagram) -> LongDiagram:
    """Reverse the orientation of the strand (relabel ``e -> E - e``)."""
    E = d.last_edge
    out = []
    for v in d.vertices:
        ends = tuple(E - e for e in v.ends)
        inc = tuple(not f for f in v.incoming())
        if v.kind == CROSSING:
            out.append(_crossing_from(ends, 2))
        else:
            out.append(_double_from(ends, inc))
    return canonical_form(LongDiagram(d.n_edges, tuple(out)))


def connected_sum(d1: LongDiagram, d2: LongDiagram) -> LongDiagram:
    """Glue the right end of ``d1`` to the left end of ``d2``."""
    off = d1.last_edge
    shifted = tuple(Vertex(v.kind, tuple(e + off for e in v.ends)) for v in d2.vertices)
    return LongDiagram(d1.n_edges + d2.n_edges - 1, d1.vertices + shifted)


def make_singular(d: LongDiagram, c: int) -> LongDiagram:
    """Replace crossing ``c`` by a double point."""
    if not (0 <= c < len(d.vertices)) or d.vertices[c].kind != CROSSING:
        raise NotACrossing(f"vertex {c} is not a crossing")
    v = d.vertices[c]
    return d.replace_vertex(c, _double_from(v.ends, v.incoming()))


def resolve(d: LongDiagram, dp: int, sign: int) -> LongDiagram:
    """Replace double point ``dp`` by the crossing of the given sign."""
    if not (0 <= dp < len(d.vertices)) or d.vertices[dp].kind != DOUBLE:
        raise NotADoublePoint(f"vertex {dp} is not a double point")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    v = d.vertices[dp]
    other_in = 1 if v.incoming()[1] else 3
    for cand in (_crossing_from(v.ends, 0), _crossing_from(v.ends, other_in)):
        if cand.sign == sign:
            return d.replace_vertex(dp, cand)
    raise AssertionError("unreachable: the two resolutions have opposite signs")


def change_crossing(d: LongDiagram, c: int) -> LongDiagram:
    """Switch over/under at crossing ``c``."""
    if not (0 <= c < len(d.vertices)) or d.vertices[c].kind != CROSSING:
        raise NotACrossing(f"vertex {c} is not a crossing")
    sign = d.vertices[c].sign
    return resolve(make_singular(d, c), c, -sign)


def add_kink(d: LongDiagram, edge: int, sign: int, turn: int) -> LongDiagram:
    """Insert a curl on ``edge`` with crossing ``sign`` and rotation ``turn``.

    ``turn=+1`` is a counterclockwise curl (loop on the left of the strand).
    """
    if sign not in (1, -1) or turn not in (1, -1):
        raise ValueError("sign and turn must be +-1")
    if not 0 <= edge <= d.last_edge:
        raise DiagramError(f"edge {edge} out of range")
    m = edge
    shifted = [Vertex(v.kind, tuple(e + 2 if e > m else e for e in v.ends)) for v in d.vertices]
    table = {
        (1, 1): (m, m + 2, m + 1, m + 1),
        (-1, 1): (m + 1, m, m + 2, m + 1),
        (-1, -1): (m, m + 1, m + 1, m + 2),
        (1, -1): (m + 1, m + 1, m + 2, m),
    }
    # the incoming slot of `edge` moves to the new first edge after the curl
    for i, v in enumerate(shifted):
        inc = v.incoming()
        ends = list(v.ends)
        for s in range(4):
            if ends[s] == m and inc[s]:
                ends[s] = m + 2
        shifted[i] = Vertex(v.kind, tuple(ends))
    shifted.append(Vertex(CROSSING, table[(sign, turn)]))
    return canonical_form(LongDiagram(d.n_edges + 2, tuple(shifted)))


# ------------------------------------------------ raw form and relabelling


@dataclass
class RawVertex:
    """Vertex with arbitrary labels and explicit per-slot direction flags.

    ``under`` is the slot parity (0 or 1) of the under strand for crossings.
    """

    kind: str
    ends: list
    inc: list
    under: int | None = None


def to_raw(d: LongDiagram) -> tuple[list[RawVertex], int, int]:
    raw = []
    for v in d.vertices:
        raw.append(RawVertex(v.kind, list(v.ends), list(v.incoming()), 0 if v.kind == CROSSING else None))
    return raw, 0, d.last_edge


def from_raw(raw: list[RawVertex], start, end) -> LongDiagram:
    """Relabel a raw diagram by traversal order and normalise every vertex."""
    if not raw:
        if start != end:
            raise DiagramError("open ends differ but there are no vertices")
        return UNKNOT
    heads: dict = {}
    for vi, rv in enumerate(raw):
        for s in range(4):
            if rv.inc[s]:
                if rv.ends[s] in heads:
                    raise DiagramError(f"edge {rv.ends[s]} enters two vertices")
                heads[rv.ends[s]] = (vi, s)
    new = [[None] * 4 for _ in raw]
    lab = 0
    cur = start
    steps = 0
    while True:
        if cur not in heads:
            if cur != end:
                raise DiagramError(f"strand breaks at edge {cur}")
            break
        vi, s = heads[cur]
        if new[vi][s] is not None:
            raise DiagramError("traversal revisits an edge-end")
        new[vi][s] = lab
        out = (s + 2) % 4
        if raw[vi].inc[out]:
            raise DiagramError(f"passage through vertex {vi} is not oriented consistently")
        lab += 1
        new[vi][out] = lab
        cur = raw[vi].ends[out]
        steps += 1
        if steps > 2 * len(raw):
            raise DiagramError("traversal does not terminate")
    if any(x is None for row in new for x in row):
        raise DiagramError("diagram has more than one component")
    verts = []
    for rv, ends in zip(raw, new):
        if rv.kind == CROSSING:
            u = rv.under
            s_in = u if rv.inc[u] else u + 2
            verts.append(_crossing_from(ends, s_in))
        else:
            verts.append(_double_from(ends, rv.inc))
    verts.sort(key=Vertex.first_visit)
    return LongDiagram(lab + 1, tuple(verts))


def canonical_form(d: LongDiagram) -> LongDiagram:
    """Vertices sorted by first visit along the strand."""
    if "canonical" in d._cache:
        return d._cache["canonical"]
    out = LongDiagram(d.n_edges, tuple(sorted(d.vertices, key=Vertex.first_visit)))
    out._cache["canonical"] = out
    d._cache["canonical"] = out
    return out


def from_pd(vertices: Iterable[tuple[str, Sequence[int]]]) -> LongDiagram:
    """Build a diagram from PD-style data with arbitrary edge labels.

    Crossings must list their incoming under end first; double points must
    list some incoming end first.  The two labels used once are the open
    ends; the strand direction is inferred from the slot-0 rule.
    """
    verts = [(k, list(e)) for k, e in vertices]
    if not verts:
        return UNKNOT
    count: dict = {}
    for k, ends in verts:
        if len(ends) != 4:
            raise DiagramError(f"vertex with ends {ends} does not have 4 ends")
        for e in ends:
            count[e] = count.get(e, 0) + 1
    singles = sorted(e for e, c in count.items() if c == 1)
    if len(singles) != 2 or any(c not in (1, 2) for c in count.values()):
        raise DiagramError("edge multiplicity: need exactly two open ends")
    errors = []
    for start, end in (singles, singles[::-1]):
        try:
            raw = _orient_pd(verts, start, end)
            return from_raw(raw, start, end)
        except DiagramError as exc:
            errors.append(str(exc))
    raise DiagramError("no consistent orientation: " + "; ".join(errors))


def _orient_pd(verts, start, end) -> list[RawVertex]:
    where: dict = {}
    for vi, (_, ends) in enumerate(verts):
        for s, e in enumerate(ends):
            where.setdefault(e, []).append((vi, s))
    inc = [[None] * 4 for _ in verts]
    cur = start
    prev_loc = None
    for _ in range(2 * len(verts)):
        locs = [loc for loc in where[cur] if loc != prev_loc]
        if not locs:
            raise DiagramError("strand breaks")
        vi, s = locs[0]
        out = (s + 2) % 4
        if inc[vi][s] is not None:
            raise DiagramError("traversal revisits an edge-end")
        inc[vi][s] = True
        inc[vi][out] = False
        prev_loc = (vi, out)
        cur = verts[vi][1][out]
        if cur == end:
            break
    else:
        raise DiagramError("traversal does not reach the right end")
    raw = []
    for (k, ends), flags in zip(verts, inc):
        if any(f is None for f in flags):
            raise DiagramError("diagram has more than one component")
        if not flags[0]:
            raise DiagramError("slot 0 is not an incoming end")
        raw.append(RawVertex(k, list(ends), list(flags), 0 if k == CROSSING else None))
    return raw


def from_closed_pd(pd: Iterable[Sequence[int]], cut: int) -> LongDiagram:
    """Open a closed-knot PD code (``X[i,j,k,l]``, labels ``1..2n`` cyclic)
    at edge ``cut``."""
    pd = [list(x) for x in pd]
    n2 = 2 * len(pd)
    raw = []
    start, end = ("cut", "in"), ("cut", "out")
    for i, j, k, l in pd:
        over_in_l = (j - l) % n2 == 1
        inc = [True, not over_in_l, False, over_in_l]
        ends = []
        for s, e in enumerate((i, j, k, l)):
            if e == cut:
                ends.append(start if inc[s] else end)
            else:
                ends.append(e)
        raw.append(RawVertex(CROSSING, ends, inc, 0))
    return from_raw(raw, start, end)


# -------------------------------------------------------------------- json


def diagram_to_json(d: LongDiagram) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "edges": d.n_edges,
        "vertices": [{"kind": v.kind, "ends": list(v.ends)} for v in d.vertices],
    }


def diagram_from_json(data: dict) -> LongDiagram:
    """Parse and validate the JSON diagram form.

    With ``"relabel": true`` the edge labels may be arbitrary (see
    :func:`from_pd`); otherwise they must already follow the traversal
    convention.
    """
    if not isinstance(data, dict):
        raise DiagramError("diagram JSON must be an object")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise DiagramError(f"unsupported diagram schema {schema!r}")
    vs = data.get("vertices")
    if not isinstance(vs, list):
        raise DiagramError("'vertices' must be a list")
    parsed = []
    for i, item in enumerate(vs):
        if not isinstance(item, dict):
            raise DiagramError(f"vertex {i}: expected an object")
        kind = item.get("kind")
        ends = item.get("ends")
        if kind not in (CROSSING, DOUBLE):
            raise DiagramError(f"vertex {i}: unknown kind {kind!r}")
        if not isinstance(ends, list) or len(ends) != 4 or not all(isinstance(e, int) for e in ends):
            raise DiagramError(f"vertex {i}: 'ends' must be 4 integers")
        parsed.append((kind, tuple(ends)))
    if data.get("relabel"):
        return from_pd(parsed)
    if "edges" not in data:
        raise DiagramError("missing 'edges'")
    d = LongDiagram(int(data["edges"]), tuple(Vertex(k, e) for k, e in parsed))
    _require_valid(d)
    return d


def dumps(d: LongDiagram) -> str:
    return json.dumps(diagram_to_json(d))
