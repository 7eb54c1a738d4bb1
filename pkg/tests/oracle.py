"""Brute-force reference evaluator, independent of the production path.

It reads only the vertex kinds and edge labels of a diagram and rebuilds
everything else itself: edge orientation from the traversal numbering,
crossing signs from the slot geometry, and the state sum with plain dict
polynomials keyed by ``(a, b, c)``.
"""

import itertools

# slot s points in direction 90*s degrees (east, north, west, south)


def incoming(v):
    """A slot is entered on edge e when the opposite slot leaves on e + 1."""
    return [v.ends[(s + 2) % 4] == v.ends[s] + 1 for s in range(4)]


def crossing_sign(v):
    inc = incoming(v)
    under_in = 0 if inc[0] else 2
    over_in = 1 if inc[1] else 3
    under_heading = (90 * under_in + 180) % 360
    over_heading = (90 * over_in + 180) % 360
    return 1 if (over_heading + 90) % 360 == under_heading else -1


def writhe(d):
    return sum(crossing_sign(v) for v in d.vertices if v.kind == "crossing")


def pmul(p, q):
    out = {}
    for (a1, b1, c1), x in p.items():
        for (a2, b2, c2), y in q.items():
            k = (a1 + a2, b1 + b2, c1 + c2)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


def padd(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


DELTA = {(2, 0, 0): -1, (-2, 0, 0): -1}


def _components(n_edges, joins):
    parent = list(range(2 * n_edges))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for e in range(n_edges):
        union(2 * e, 2 * e + 1)
    union(0, 2 * n_edges - 1)
    for x, y in joins:
        union(x, y)
    return len({find(x) for x in range(2 * n_edges)})


def singular_bracket(d):
    """Dict polynomial ``{(a, b, c): coeff}``."""
    choices = []
    for v in d.vertices:
        inc = incoming(v)
        node = [2 * e + (1 if inc[s] else 0) for s, e in enumerate(v.ends)]
        a_arcs = ((node[0], node[1]), (node[2], node[3]))
        b_arcs = ((node[0], node[3]), (node[1], node[2]))
        if v.kind == "crossing":
            choices.append(((a_arcs, (1, 0, 0)), (b_arcs, (-1, 0, 0))))
        else:
            # the oriented smoothing joins each entering slot to an adjacent leaving one
            ori, other = (a_arcs, b_arcs) if inc[0] != inc[1] else (b_arcs, a_arcs)
            choices.append(((ori, (0, 1, 0)), (other, (0, 0, 1))))
    total = {}
    for state in itertools.product(*choices):
        joins = [arc for arcs, _ in state for arc in arcs]
        w = [0, 0, 0]
        for _, (a, b, c) in state:
            w[0] += a
            w[1] += b
            w[2] += c
        term = {tuple(w): 1}
        for _ in range(_components(d.n_edges, joins) - 1):
            term = pmul(term, DELTA)
        total = padd(total, term)
    return total


def kauffman_bracket(d):
    """``{a: coeff}`` for a diagram without double points."""
    return {a: v for (a, _, _), v in singular_bracket(d).items()}


def jones(d):
    """``(-A^3)^(-w) <d>`` as ``{a: coeff}``."""
    w = writhe(d)
    sign = -1 if w % 2 else 1
    return {a - 3 * w: sign * v for a, v in kauffman_bracket(d).items()}


def as_dict(p):
    """Production polynomial to the oracle's dict form."""
    return dict(p.items())
