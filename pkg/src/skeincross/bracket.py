"""Kauffman bracket, singular bracket and the normalised polynomials.

Local rules (``delta = -A^2 - A^-2``):

* crossing: ``A`` times the smoothing joining slots (0,1),(2,3) plus
  ``A^-1`` times the smoothing joining (0,3),(1,2);
* double point: ``B`` times the smoothing that respects orientation plus
  ``C`` times the other one.

Each closed loop contributes ``delta``; the open long strand contributes 1.
For a positive crossing the ``A`` smoothing is the oriented one, so a
positive kink evaluates to ``-A^3``.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .diagram import CROSSING, LongDiagram, writhe
from .poly import DELTA, LaurentPoly, SkeinPoly, eval_bc, neg_a_power

__all__ = [
    "HasDoublePoints",
    "kauffman_bracket",
    "singular_bracket",
    "singular_bracket_eval",
    "vs_polynomial",
    "jones",
    "vertex_arcs",
    "CONTRACT_THRESHOLD",
]

# below this many vertices the exhaustive sum is the default
CONTRACT_THRESHOLD = 16

CROSSING_ARCS = (((0, 1), (2, 3)), ((0, 3), (1, 2)))


class HasDoublePoints(ValueError):
    """The operation is only defined for diagrams without double points."""


def vertex_arcs(v) -> tuple[tuple, tuple, int, int]:
    """``(arcs_bit0, arcs_bit1, wa, wb)`` as slot pairs.

    Crossings: bit 0 is the ``A`` smoothing.  Double points: bit 0 is the
    oriented (``B``) smoothing.  ``wa``/``wb`` are the weights of bit 0 and
    the opposite weights belong to bit 1 (``wa`` flips sign, ``wb`` is 0).
    """
    if v.kind == CROSSING:
        return CROSSING_ARCS[0], CROSSING_ARCS[1], 1, 0
    ori = v.oriented_pairs()
    other = ((0, 1), (2, 3)) if ori == ((0, 3), (1, 2)) else ((0, 3), (1, 2))
    return ori, other, 0, 1


def _arrays(d: LongDiagram):
    n = len(d.vertices)
    arcs = np.zeros((n, 2, 2, 2), dtype=np.int64)
    wa = np.zeros((n, 2), dtype=np.int64)
    wb = np.zeros((n, 2), dtype=np.int64)
    for i, v in enumerate(d.vertices):
        inc = v.incoming()
        node = [2 * e + (1 if inc[s] else 0) for s, e in enumerate(v.ends)]
        a0, a1, w_a, w_b = vertex_arcs(v)
        for bit, pairs in enumerate((a0, a1)):
            for k, (s, t) in enumerate(pairs):
                arcs[i, bit, k] = (node[s], node[t])
        wa[i] = (w_a, -w_a)
        wb[i] = (w_b, 0)
    return arcs, wa, wb


def _histogram_to_poly(hist: np.ndarray, n: int, n_double: int) -> SkeinPoly:
    out: dict = {}
    dpow = [SkeinPoly.constant(1)]
    for _ in range(hist.shape[2]):
        dpow.append(dpow[-1] * DELTA)
    for ai, bdeg, loops in zip(*np.nonzero(hist)):
        count = int(hist[ai, bdeg, loops])
        shift = int(ai) - n
        for (a, _, _), c in dpow[int(loops)].items():
            key = (a + shift, int(bdeg), n_double - int(bdeg))
            out[key] = out.get(key, 0) + c * count
    return SkeinPoly(out)


def _choose_method(d: LongDiagram, method: str) -> str:
    if method == "auto":
        return "contract" if len(d.vertices) >= CONTRACT_THRESHOLD else "naive"
    if method not in ("naive", "contract"):
        raise ValueError(f"unknown method {method!r}")
    return method


def singular_bracket(d: LongDiagram, *, method: str = "auto", backend: str | None = None,
                     threads: int = 1) -> SkeinPoly:
    """State sum with double points expanded as ``B*oriented + C*other``."""
    method = _choose_method(d, method)
    if method == "contract":
        from .tangle import contract_long

        return contract_long(d)
    arcs, wa, wb = _arrays(d)
    nd = d.n_double
    hist = _kernels.state_histogram(arcs, wa, wb, d.n_edges, nd, backend=backend, threads=threads)
    return _histogram_to_poly(hist, len(d.vertices), nd)


def kauffman_bracket(d: LongDiagram, **kw) -> LaurentPoly:
    if d.n_double:
        raise HasDoublePoints("kauffman_bracket needs a diagram without double points")
    return singular_bracket(d, **kw).coefficient_bc(0, 0)


def singular_bracket_eval(d: LongDiagram, **kw) -> LaurentPoly:
    """The specialisation ``<d>_s(A, 1, -1)``."""
    return eval_bc(singular_bracket(d, **kw), LaurentPoly.constant(1), LaurentPoly.constant(-1))


def vs_polynomial(d: LongDiagram, **kw) -> SkeinPoly:
    """``(-A)^(-3w) <d>_s``."""
    return singular_bracket(d, **kw) * SkeinPoly.from_laurent(neg_a_power(-3 * writhe(d)))


def jones(d: LongDiagram, **kw) -> LaurentPoly:
    """``(-A)^(-3w) <d>`` for a diagram without double points."""
    return kauffman_bracket(d, **kw) * neg_a_power(-3 * writhe(d))
