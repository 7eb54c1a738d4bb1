"""Scripted framed homotopies of long diagrams.

A path is a start diagram plus a list of move events.  Regular isotopy is
generated by R2 and R3 events; wall crossings are crossing changes.  There
is no R1 event, because a path must not pass through a cusp.

Event addressing (all ids refer to the current diagram, after the previous
event; see :func:`skeincross.diagram.faces` for face numbering):

``R2Insert(face, a, b, over, a_first)``
    Push a finger of edge ``a`` across edge ``b`` inside ``face``.  Both
    edges must lie on the face boundary; ``over`` (``"a"`` or ``"b"``) is the
    strand on top.  When ``a == b``, ``a_first`` says whether the finger
    starts before the crossed part along the edge's orientation.
``R2Remove(face)``
    Remove a bigon whose two sides pass over/over and under/under.
``R3(face, edge)``
    Move the triangle side ``edge`` across the opposite crossing.  The side's
    strand must be above or below both of its neighbours in the triangle.
``CrossingChange(crossing)``
    Switch over/under at vertex ``crossing`` (index into ``d.vertices``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import diagram as dg
from .bracket import jones
from .diagram import (
    CROSSING,
    LongDiagram,
    RawVertex,
    change_crossing,
    faces,
    framing,
    from_raw,
    make_singular,
    to_raw,
    validate,
)

__all__ = [
    "InapplicableMove",
    "R2Insert",
    "R2Remove",
    "R3",
    "CrossingChange",
    "MoveEvent",
    "Path",
    "PathTrace",
    "WallCrossing",
    "Certificate",
    "apply_event",
    "applicable_events",
    "inverse_event",
    "invert_path",
    "validate_path",
    "wall_crossings",
    "essentialness_check",
    "is_loop",
    "random_path",
    "event_to_json",
    "event_from_json",
    "path_to_json",
    "path_from_json",
]


class InapplicableMove(dg.DiagramError):
    """The event does not match the diagram at its address."""


@dataclass(frozen=True)
class R2Insert:
    face: int
    a: int
    b: int
    over: str = "a"
    a_first: bool = True


@dataclass(frozen=True)
class R2Remove:
    face: int


@dataclass(frozen=True)
class R3:
    face: int
    edge: int


@dataclass(frozen=True)
class CrossingChange:
    crossing: int


MoveEvent = R2Insert | R2Remove | R3 | CrossingChange


# ------------------------------------------------------------------ R2 insert


def _dart_on(face, edge):
    for e, fwd in face.darts:
        if e == edge:
            return fwd
    return None


def _r2_insert(d: LongDiagram, ev: R2Insert) -> LongDiagram:
    fl = faces(d)
    if not 0 <= ev.face < len(fl):
        raise InapplicableMove(f"no face {ev.face}")
    face = fl[ev.face]
    fa, fb = _dart_on(face, ev.a), _dart_on(face, ev.b)
    if fa is None or fb is None:
        raise InapplicableMove(f"edges {ev.a}, {ev.b} are not both on face {ev.face}")
    if ev.over not in ("a", "b"):
        raise InapplicableMove("over must be 'a' or 'b'")
    # picture: a runs along the top of the face, b along the bottom; the
    # face is on the right of each dart
    da = 1 if fa else -1
    db = -1 if fb else 1
    raw, start, end = to_raw(d)

    def pieces(e, names):
        return [("p", e, k) for k in names]

    if ev.a != ev.b:
        a0, a1, a2 = pieces(ev.a, "abc")
        b0, b1, b2 = pieces(ev.b, "xyz")
        splits = {ev.a: (a0, a2), ev.b: (b0, b2)}
    else:
        p = pieces(ev.a, "abcde")
        if ev.a_first:
            a0, a1, a2, b1, b2 = p
            b0 = a2
        else:
            b0, b1, b2, a1, a2 = p
            a0 = b2
        splits = {ev.a: (p[0], p[4])}
    for rv in raw:
        for s in range(4):
            e = rv.ends[s]
            if e in splits:
                rv.ends[s] = splits[e][1] if rv.inc[s] else splits[e][0]
    if start in splits:
        start = splits[start][0]
    if end in splits:
        end = splits[end][1]
    b_left, b_right = (b0, b2) if db == 1 else (b2, b0)
    n_p, n_q = (a0, a2) if da == 1 else (a2, a0)
    under = 0 if ev.over == "a" else 1
    # slots counterclockwise: east, north, west, south
    bin_w = db == 1
    p_inc = [not bin_w, da == 1, bin_w, da != 1]
    q_inc = [not bin_w, da != 1, bin_w, da == 1]
    raw.append(RawVertex(CROSSING, [b1, n_p, b_left, a1], p_inc, under))
    raw.append(RawVertex(CROSSING, [b_right, n_q, b1, a1], q_inc, under))
    return from_raw(raw, start, end)


# ------------------------------------------------------------------ R2 remove


def _slot_of(v: dg.Vertex, edge: int, incoming: bool) -> int:
    inc = v.incoming()
    for s in range(4):
        if v.ends[s] == edge and inc[s] == incoming:
            return s
    raise InapplicableMove(f"edge {edge} not at vertex")


def _bigon(d: LongDiagram, face_id: int):
    fl = faces(d)
    if not 0 <= face_id < len(fl):
        raise InapplicableMove(f"no face {face_id}")
    f = fl[face_id]
    inf = len(d.vertices)
    if len(f) != 2:
        raise InapplicableMove(f"face {face_id} is not a bigon")
    (x, _), (y, _) = f.darts
    vs = f.vertices()
    if x == y or vs[0] == vs[1] or inf in vs:
        raise InapplicableMove(f"face {face_id} is not a bigon between two vertices")
    if any(d.vertices[v].kind != CROSSING for v in vs):
        raise InapplicableMove("bigon corners must be crossings")
    return x, y


def _r2_remove(d: LongDiagram, ev: R2Remove) -> LongDiagram:
    x, y = _bigon(d, ev.face)
    verts = d.vertices
    ends_x = [i for i, v in enumerate(verts) if x in v.ends]
    ends_y = [i for i, v in enumerate(verts) if y in v.ends]
    if sorted(ends_x) != sorted(ends_y) or len(set(ends_x)) != 2:
        raise InapplicableMove("bigon sides do not join the same two crossings")
    parity = set()
    for e in (x, y):
        tail_v = next(i for i, v in enumerate(verts) if _has(v, e, False))
        head_v = next(i for i, v in enumerate(verts) if _has(v, e, True))
        ps = (_slot_of(verts[tail_v], e, False) % 2, _slot_of(verts[head_v], e, True) % 2)
        if ps[0] != ps[1]:
            raise InapplicableMove(f"strand of edge {e} is not on the same level at both crossings")
        parity.add(ps[0])
    if len(parity) != 2:
        raise InapplicableMove("both bigon sides on the same level")
    drop = set(ends_x)
    raw, start, end = to_raw(d)
    rename: dict = {}
    for e in (x, y):
        tail_v = next(i for i in drop if _has(verts[i], e, False))
        head_v = next(i for i in drop if _has(verts[i], e, True))
        s_out = _slot_of(verts[tail_v], e, False)
        s_in = _slot_of(verts[head_v], e, True)
        before = verts[tail_v].ends[(s_out + 2) % 4]
        after = verts[head_v].ends[(s_in + 2) % 4]
        rename[after] = before

    def find(e):
        while e in rename:
            e = rename[e]
        return e

    kept = []
    for i, rv in enumerate(raw):
        if i in drop:
            continue
        rv.ends = [find(e) for e in rv.ends]
        kept.append(rv)
    return from_raw(kept, find(start), find(end))


def _has(v: dg.Vertex, e: int, incoming: bool) -> bool:
    inc = v.incoming()
    return any(v.ends[s] == e and inc[s] == incoming for s in range(4))


# ------------------------------------------------------------------------ R3


def _triangle(d: LongDiagram, face_id: int):
    fl = faces(d)
    if not 0 <= face_id < len(fl):
        raise InapplicableMove(f"no face {face_id}")
    f = fl[face_id]
    inf = len(d.vertices)
    vs = f.vertices()
    edges = [e for e, _ in f.darts]
    if len(f) != 3 or len(set(vs)) != 3 or len(set(edges)) != 3 or inf in vs:
        raise InapplicableMove(f"face {face_id} is not a triangle of three vertices")
    if any(d.vertices[v].kind != CROSSING for v in vs):
        raise InapplicableMove("triangle corners must be crossings")
    return f


def _r3_info(d: LongDiagram, face_id: int):
    """Per triangle corner: vertex id, slot of the arriving side, slot of
    the leaving side.  Per side: its two corners."""
    f = _triangle(d, face_id)
    corners = []
    k = len(f.darts)
    for i in range(k):
        v, s = f.corners[i]
        corners.append((v, s, (s + 1) % 4))
    return f, corners


def _movable_sides(d: LongDiagram, face_id: int) -> list[int]:
    f, corners = _r3_info(d, face_id)
    out = []
    for i, (e, _) in enumerate(f.darts):
        # side i arrives at corner i and leaves corner i-1
        v1, s_arrive, _ = corners[i]
        v0, _, s_leave = corners[i - 1]
        if s_arrive % 2 == s_leave % 2:
            out.append(e)
    return out


def _r3(d: LongDiagram, ev: R3) -> LongDiagram:
    f, corners = _r3_info(d, ev.face)
    sides = [e for e, _ in f.darts]
    if ev.edge not in sides:
        raise InapplicableMove(f"edge {ev.edge} is not a side of face {ev.face}")
    if ev.edge not in _movable_sides(d, ev.face):
        raise InapplicableMove(f"side {ev.edge} is neither above nor below both other strands")
    verts = d.vertices
    # side i joins corner i-1 (slot s_leave) and corner i (slot s_arrive)
    side_at = {}  # (vertex, slot) -> side index
    for i in range(3):
        v1, s_arrive, _ = corners[i]
        v0, _, s_leave = corners[i - 1]
        side_at[(v1, s_arrive)] = i
        side_at[(v0, s_leave)] = i
    # outer end of side i's strand at each of its corners
    outer = {}
    for (v, s), i in side_at.items():
        outer[(i, v)] = verts[v].ends[(s + 2) % 4]
    other_corner = {}
    for (v, s), i in side_at.items():
        ends = [w for (w, _), j in side_at.items() if j == i]
        other_corner[(i, v)] = ends[0] if ends[1] == v else ends[1]
    raw, start, end = to_raw(d)
    for v in {c[0] for c in corners}:
        rv = raw[v]
        new_ends = list(rv.ends)
        for s in range(4):
            if (v, s) in side_at:
                new_ends[s] = ("side", side_at[(v, s)])
            else:
                i = side_at[(v, (s + 2) % 4)]
                new_ends[s] = outer[(i, other_corner[(i, v)])]
        rv.ends = new_ends
        rv.inc = [not f for f in rv.inc]
    return from_raw(raw, start, end)


# ----------------------------------------------------------------- dispatch


def apply_event(d: LongDiagram, ev) -> LongDiagram:
    """Apply one event; the result is validated."""
    if isinstance(ev, CrossingChange):
        try:
            out = change_crossing(d, ev.crossing)
        except dg.NotACrossing as exc:
            raise InapplicableMove(str(exc)) from None
    elif isinstance(ev, R2Insert):
        out = _r2_insert(d, ev)
    elif isinstance(ev, R2Remove):
        out = _r2_remove(d, ev)
    elif isinstance(ev, R3):
        out = _r3(d, ev)
    else:
        raise TypeError(f"not a move event: {ev!r}")
    rep = validate(out)
    if not rep.ok:
        raise InapplicableMove(f"result is not a valid diagram: {rep.reason}")
    return out


def applicable_events(d: LongDiagram, kinds: Iterable[str] = ("r2insert", "r2remove", "r3", "cross")
                      ) -> Iterator:
    """Every event that applies to ``d`` (R2 inserts: all edge pairs per
    face, both heights, both orders for a repeated edge)."""
    kinds = set(kinds)
    fl = faces(d)
    if "r2remove" in kinds:
        for f in fl:
            if len(f) == 2:
                try:
                    _bigon(d, f.index)
                    ev = R2Remove(f.index)
                    apply_event(d, ev)
                except InapplicableMove:
                    continue
                yield ev
    if "r3" in kinds:
        for f in fl:
            if len(f) == 3:
                try:
                    sides = _movable_sides(d, f.index)
                except InapplicableMove:
                    continue
                if sides:
                    yield R3(f.index, sides[0])
    if "cross" in kinds:
        for c in d.crossing_ids():
            yield CrossingChange(c)
    if "r2insert" in kinds:
        for f in fl:
            edges = sorted({e for e, _ in f.darts})
            for a in edges:
                for b in edges:
                    for over in ("a", "b"):
                        if a == b:
                            for first in (True, False):
                                yield R2Insert(f.index, a, b, over, first)
                        else:
                            yield R2Insert(f.index, a, b, over)


def inverse_event(d: LongDiagram, ev):
    """An event taking ``apply_event(d, ev)`` back to ``d``."""
    after = apply_event(d, ev)
    if isinstance(ev, CrossingChange):
        return CrossingChange(ev.crossing)
    target = d.key()
    kinds = {R2Insert: ("r2remove",), R3: ("r3",), R2Remove: ("r2insert",)}[type(ev)]
    for cand in applicable_events(after, kinds):
        if isinstance(cand, R3):
            f = faces(after)[cand.face]
            for e in {e for e, _ in f.darts}:
                try:
                    c = R3(cand.face, e)
                    if apply_event(after, c).key() == target:
                        return c
                except InapplicableMove:
                    continue
            continue
        try:
            if apply_event(after, cand).key() == target:
                return cand
        except InapplicableMove:
            continue
    raise InapplicableMove(f"no inverse found for {ev!r}")


# --------------------------------------------------------------------- paths


@dataclass(frozen=True)
class Path:
    start: LongDiagram
    events: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    def then(self, other: "Path") -> "Path":
        """Concatenation; ``other`` must start where ``self`` ends."""
        end = validate_path(self).final
        if end.key() != other.start.key():
            raise ValueError("paths do not meet")
        return Path(self.start, self.events + other.events)


@dataclass(frozen=True)
class WallCrossing:
    singular: LongDiagram
    ind: int
    position: int
    crossing: int


@dataclass
class PathTrace:
    diagrams: list
    framings: list
    ok: bool = True
    failed_at: int | None = None
    reason: str | None = None
    walls: list = field(default_factory=list)

    @property
    def final(self) -> LongDiagram:
        if not self.ok:
            raise InapplicableMove(f"event {self.failed_at}: {self.reason}")
        return self.diagrams[-1]

    def __len__(self):
        return len(self.diagrams)


def validate_path(p: Path) -> PathTrace:
    """Apply every event, recording diagrams and framing data; stops at
    the first failure.  Framing bookkeeping is checked at each step."""
    d = p.start
    rep = validate(d)
    if not rep.ok:
        return PathTrace([d], [], False, -1, f"start diagram invalid: {rep.reason}")
    fr = framing(d)
    trace = PathTrace([d], [fr])
    for i, ev in enumerate(p.events):
        ind = 0
        if isinstance(ev, CrossingChange):
            if not (0 <= ev.crossing < len(d.vertices)) or d.vertices[ev.crossing].kind != CROSSING:
                trace.ok, trace.failed_at, trace.reason = False, i, f"vertex {ev.crossing} is not a crossing"
                return trace
            ind = 1 if d.vertices[ev.crossing].sign < 0 else -1
            trace.walls.append(WallCrossing(make_singular(d, ev.crossing), ind, i, ev.crossing))
        try:
            nd = apply_event(d, ev)
        except InapplicableMove as exc:
            trace.ok, trace.failed_at, trace.reason = False, i, str(exc)
            return trace
        nfr = framing(nd)
        if nfr.writhe != fr.writhe + 2 * ind or nfr.whitney != fr.whitney:
            trace.ok, trace.failed_at, trace.reason = False, i, "framing bookkeeping violated"
            return trace
        trace.diagrams.append(nd)
        trace.framings.append(nfr)
        d, fr = nd, nfr
    return trace


def wall_crossings(p: Path) -> list[WallCrossing]:
    return list(_checked(p).walls)


def _checked(p: Path) -> PathTrace:
    tr = validate_path(p)
    if not tr.ok:
        raise InapplicableMove(f"event {tr.failed_at}: {tr.reason}")
    return tr


def is_loop(p: Path) -> bool:
    tr = _checked(p)
    return tr.diagrams[-1].key() == p.start.key()


def invert_path(p: Path) -> Path:
    """The reversed path, starting at the end of ``p``."""
    tr = _checked(p)
    inv = [inverse_event(tr.diagrams[i], ev) for i, ev in enumerate(p.events)]
    return Path(tr.diagrams[-1], tuple(reversed(inv)))


def random_path(start: LongDiagram, rng, steps: int, kinds: Iterable[str] = ("r2insert", "r2remove", "r3", "cross"),
                max_crossings: int = 9) -> Path:
    """A random valid path of ``steps`` events drawn uniformly from the
    applicable ones; R2 inserts are skipped once the diagram has
    ``max_crossings - 1`` or more crossings.  ``rng`` is a ``random.Random``."""
    kinds = tuple(kinds)
    d = start
    events = []
    for _ in range(steps):
        allowed = [k for k in kinds if k != "r2insert" or len(d) + 2 <= max_crossings]
        cands = list(applicable_events(d, allowed))
        rng.shuffle(cands)
        for ev in cands:
            try:
                nd = apply_event(d, ev)
            except InapplicableMove:
                continue
            events.append(ev)
            d = nd
            break
        else:
            break
    return Path(start, tuple(events))


# ----------------------------------------------------------- essentialness


@dataclass(frozen=True)
class Certificate:
    """``status`` is ``"essential"`` when some invariant separates the two
    resolutions, otherwise ``"inconclusive"``."""

    status: str
    crossing: int
    jones: tuple
    framings: tuple
    reason: str

    @property
    def essential(self) -> bool:
        return self.status == "essential"


def essentialness_check(d: LongDiagram, c: int) -> Certificate:
    """Compare Jones polynomial, writhe and Whitney index of the two
    resolutions of the wall through crossing ``c``.

    The writhes always differ by 2 (that is the framing change itself), so
    only the Jones polynomial can tell the knot types apart; the framing
    data is recorded but does not certify anything.
    """
    s = make_singular(d, c)
    plus = dg.resolve(s, c, 1)
    minus = dg.resolve(s, c, -1)
    jp, jm = jones(plus), jones(minus)
    frs = (framing(plus), framing(minus))
    if jp != jm:
        return Certificate("essential", c, (jp, jm), frs, "Jones polynomials of the resolutions differ")
    return Certificate("inconclusive", c, (jp, jm), frs, "Jones polynomials agree; knot types not decided")


# ---------------------------------------------------------------------- json


def event_to_json(ev) -> dict:
    if isinstance(ev, CrossingChange):
        return {"op": "cross", "crossing": ev.crossing}
    if isinstance(ev, R2Remove):
        return {"op": "r2remove", "face": ev.face}
    if isinstance(ev, R3):
        return {"op": "r3", "face": ev.face, "edge": ev.edge}
    if isinstance(ev, R2Insert):
        out = {"op": "r2insert", "face": ev.face, "a": ev.a, "b": ev.b, "over": ev.over}
        if ev.a == ev.b:
            out["a_first"] = ev.a_first
        return out
    raise TypeError(f"not a move event: {ev!r}")


def _int_field(obj: dict, name: str, where: str) -> int:
    v = obj.get(name)
    if not isinstance(v, int) or isinstance(v, bool):
        raise dg.DiagramError(f"{where}: field {name!r} must be an integer")
    return v


def event_from_json(obj: dict, where: str = "event") -> object:
    if not isinstance(obj, dict):
        raise dg.DiagramError(f"{where}: expected an object")
    op = obj.get("op")
    if op == "cross":
        return CrossingChange(_int_field(obj, "crossing", where))
    if op == "r2remove":
        return R2Remove(_int_field(obj, "face", where))
    if op == "r3":
        return R3(_int_field(obj, "face", where), _int_field(obj, "edge", where))
    if op == "r2insert":
        over = obj.get("over", "a")
        if over not in ("a", "b"):
            raise dg.DiagramError(f"{where}: 'over' must be \"a\" or \"b\"")
        first = obj.get("a_first", True)
        if not isinstance(first, bool):
            raise dg.DiagramError(f"{where}: 'a_first' must be a boolean")
        return R2Insert(_int_field(obj, "face", where), _int_field(obj, "a", where),
                        _int_field(obj, "b", where), over, first)
    raise dg.DiagramError(f"{where}: unknown op {op!r}")


def path_to_json(p: Path, start_name: str | None = None) -> dict:
    return {
        "schema": dg.SCHEMA_VERSION,
        "start": start_name if start_name is not None else dg.diagram_to_json(p.start),
        "events": [event_to_json(e) for e in p.events],
    }


def path_from_json(obj: dict, resolve_name=None) -> Path:
    """``resolve_name`` maps a string ``start`` to a diagram (the catalog
    passes its own lookup)."""
    if not isinstance(obj, dict):
        raise dg.DiagramError("path JSON must be an object")
    schema = obj.get("schema", dg.SCHEMA_VERSION)
    if schema != dg.SCHEMA_VERSION:
        raise dg.DiagramError(f"unsupported path schema {schema!r}")
    start = obj.get("start")
    if isinstance(start, str):
        if resolve_name is None:
            raise dg.DiagramError("named start diagram needs a catalog")
        d = resolve_name(start)
    else:
        d = dg.diagram_from_json(start)
    evs = obj.get("events", [])
    if not isinstance(evs, list):
        raise dg.DiagramError("'events' must be a list")
    return Path(d, tuple(event_from_json(e, f"event {i}") for i, e in enumerate(evs)))


def dumps_path(p: Path, start_name: str | None = None) -> str:
    return json.dumps(path_to_json(p, start_name))
