"""Best-first search for R2/R3 scripts that simplify a diagram.

Development helper used by ``gen_fixtures.py``; the resulting scripts are
checked in as data, so nothing at runtime depends on this search.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque

from skeincross.diagram import LongDiagram
from skeincross.homotopy import InapplicableMove, apply_event, applicable_events


def simplify(d: LongDiagram, target_crossings: int = 0, max_extra: int = 2,
             max_states: int = 200_000) -> list:
    """Events taking ``d`` to a diagram with ``target_crossings`` crossings,
    never exceeding ``len(d) + max_extra`` crossings."""
    cap = len(d) + max_extra
    tie = itertools.count()
    start = d.key()
    seen = {start: None}
    heap = [(len(d), 0, next(tie), d, [])]
    while heap:
        n, steps, _, cur, path = heapq.heappop(heap)
        if n <= target_crossings:
            return path
        kinds = ["r2remove", "r3"] + (["r2insert"] if n + 2 <= cap else [])
        for ev in applicable_events(cur, kinds):
            try:
                nxt = apply_event(cur, ev)
            except InapplicableMove:
                continue
            k = nxt.key()
            if k in seen:
                continue
            seen[k] = True
            if len(seen) > max_states:
                raise RuntimeError("search budget exhausted")
            heapq.heappush(heap, (len(nxt), steps + 1, next(tie), nxt, path + [ev]))
    raise RuntimeError("no simplifying script found")


def greedy_reduce(d: LongDiagram) -> tuple[LongDiagram, list]:
    """Remove bigons while possible; when none is left, look for the
    shortest R3 sequence that exposes one.  Stops when neither helps."""
    path = []
    while len(d) > 0:
        rem = list(applicable_events(d, ["r2remove"]))
        if rem:
            path.append(rem[0])
            d = apply_event(d, rem[0])
            continue
        queue = deque([(d, [])])
        seen = {d.key()}
        found = None
        while queue and found is None:
            cur, p = queue.popleft()
            for ev in applicable_events(cur, ["r3"]):
                nxt = apply_event(cur, ev)
                if nxt.key() in seen:
                    continue
                seen.add(nxt.key())
                if any(True for _ in applicable_events(nxt, ["r2remove"])):
                    found = (nxt, p + [ev])
                    break
                queue.append((nxt, p + [ev]))
        if found is None:
            break
        d = found[0]
        path += found[1]
    return d, path
