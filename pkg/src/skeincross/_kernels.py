"""State-enumeration kernels for the bracket state sum.

A diagram is handed to the kernels as a graph on edge-ends: node ``2e`` is
the tail of edge ``e`` and ``2e + 1`` its head.  Every node has exactly two
neighbours, its partner across the edge (``x ^ 1``) and its partner across
the smoothing arc at the vertex it sits on.  The tail of edge 0 and the head
of the last edge are joined through the point at infinity.

``arcs[v, bit, k]`` are the two nodes joined by the ``k``-th arc when vertex
``v`` is smoothed with ``bit``; ``wa``/``wb`` give that smoothing's
A-exponent and B-degree.  Each kernel walks the states ``lo <= s < hi``
(bit ``v`` of ``s`` picks the smoothing at ``v``) and fills an integer
histogram indexed by ``(A-exponent + n, B-degree, closed loops)``.

Two interchangeable backends:

* ``numba`` -- ``@njit`` union-find per state (default when numba imports);
* ``numpy`` -- chunked, vectorised min-label propagation.

Set ``SKEINCROSS_NO_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

__all__ = ["BACKEND", "HAVE_NUMBA", "available_backends", "state_histogram"]

_NO_NUMBA = os.environ.get("SKEINCROSS_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _NO_NUMBA:
        raise ImportError("numba disabled by SKEINCROSS_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

MAX_VERTICES = 40


def available_backends() -> list[str]:
    return ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]


# ------------------------------------------------------------------ numba

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _find(parent, x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            nxt = parent[x]
            parent[x] = root
            x = nxt
        return root

    @njit(cache=True, nogil=True)
    def _hist_numba(arcs, wa, wb, n_nodes, lo, hi, hist):
        n = arcs.shape[0]
        n_edges = n_nodes // 2
        parent = np.empty(n_nodes, dtype=np.int64)
        for s in range(lo, hi):
            # edges are fixed links, so start from one class per edge
            for e in range(n_edges):
                parent[2 * e] = 2 * e
                parent[2 * e + 1] = 2 * e
            parent[n_nodes - 1] = 0
            parent[n_nodes - 2] = 0
            aexp = 0
            bdeg = 0
            for v in range(n):
                bit = (s >> v) & 1
                aexp += wa[v, bit]
                bdeg += wb[v, bit]
                for k in range(2):
                    r1 = _find(parent, arcs[v, bit, k, 0])
                    r2 = _find(parent, arcs[v, bit, k, 1])
                    if r1 != r2:
                        parent[r1] = r2
            comps = 0
            for x in range(n_nodes):
                if _find(parent, x) == x:
                    comps += 1
            hist[aexp + n, bdeg, comps - 1] += 1


# ------------------------------------------------------------------ numpy

_CHUNK = 1 << 12


def _arc_tables(arcs: np.ndarray, n_nodes: int):
    """Per node: the vertex it sits on (-1 at infinity) and its arc partner
    for each smoothing bit."""
    vert = np.full(n_nodes, -1, dtype=np.int64)
    mate = np.zeros((n_nodes, 2), dtype=np.int64)
    mate[0, :] = n_nodes - 1
    mate[n_nodes - 1, :] = 0
    for v in range(arcs.shape[0]):
        for bit in range(2):
            for k in range(2):
                x, y = int(arcs[v, bit, k, 0]), int(arcs[v, bit, k, 1])
                vert[x] = vert[y] = v
                mate[x, bit] = y
                mate[y, bit] = x
    return vert, mate


def _hist_numpy(arcs, wa, wb, n_nodes, lo, hi, hist):
    n = arcs.shape[0]
    vert, mate = _arc_tables(arcs, n_nodes)
    at_inf = vert < 0
    vsafe = np.where(at_inf, 0, vert)
    idx = np.arange(n_nodes, dtype=np.int64)
    edge_mate = idx ^ 1
    shifts = np.arange(n, dtype=np.int64)
    rows = shifts[None, :]
    for c0 in range(lo, hi, _CHUNK):
        c1 = min(hi, c0 + _CHUNK)
        states = np.arange(c0, c1, dtype=np.int64)
        bits = (states[:, None] >> shifts[None, :]) & 1
        nb = np.where(bits[:, vsafe] == 1, mate[:, 1], mate[:, 0])
        nb[:, at_inf] = mate[at_inf, 0]
        lab = np.broadcast_to(np.minimum(idx, edge_mate), nb.shape).copy()
        while True:
            new = np.minimum(lab, np.take_along_axis(lab, nb, axis=1))
            new = np.minimum(new, new[:, edge_mate])
            # pointer jumping: a label is itself a node of the same loop
            new = np.take_along_axis(new, new, axis=1)
            if np.array_equal(new, lab):
                break
            lab = new
        comps = (lab == idx[None, :]).sum(axis=1)
        aexp = wa[rows, bits].sum(axis=1)
        bdeg = wb[rows, bits].sum(axis=1)
        np.add.at(hist, (aexp + n, bdeg, comps - 1), 1)


# ---------------------------------------------------------------- dispatch


def state_histogram(arcs, wa, wb, n_edges: int, n_double: int, *, backend: str | None = None,
                    threads: int = 1) -> np.ndarray:
    """Histogram of states by ``(a + n, b, closed loops)``.

    The long strand closed through infinity is not counted as a loop.
    Partitioning over ``threads`` workers sums integer histograms, so the
    result is identical to the sequential one.
    """
    backend = backend or BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable")
    arcs = np.ascontiguousarray(arcs, dtype=np.int64).reshape(-1, 2, 2, 2)
    n = arcs.shape[0]
    if n > MAX_VERTICES:
        raise ValueError(f"{n} vertices is beyond exhaustive enumeration")
    wa = np.ascontiguousarray(wa, dtype=np.int64).reshape(n, 2)
    wb = np.ascontiguousarray(wb, dtype=np.int64).reshape(n, 2)
    n_nodes = 2 * n_edges
    shape = (2 * n + 1, n_double + 1, n + 2)
    total = 1 << n
    if n == 0:
        # the bare long strand: one state, no loops
        hist = np.zeros(shape, dtype=np.int64)
        hist[0, 0, 0] = 1
        return hist
    kernel = _hist_numba if backend == "numba" else _hist_numpy
    threads = max(1, int(threads))
    if threads == 1 or total < 1024:
        hist = np.zeros(shape, dtype=np.int64)
        kernel(arcs, wa, wb, n_nodes, 0, total, hist)
        return hist
    bounds = np.linspace(0, total, threads + 1).astype(np.int64)
    parts = [np.zeros(shape, dtype=np.int64) for _ in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futs = [
            pool.submit(kernel, arcs, wa, wb, n_nodes, int(bounds[i]), int(bounds[i + 1]), parts[i])
            for i in range(threads)
        ]
        for f in futs:
            f.result()
    # integer addition is associative, so the reduction order does not matter
    return sum(parts[1:], parts[0])
