"""Pure-Python permutation kernels (reference implementation and fallback).

A permutation is a tuple p with p[i] the image of point i. ``compose(p, q)``
applies p first, then q.
"""

from __future__ import annotations

import math


def compose(p, q):
    return tuple(q[i] for i in p)


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def closure(gens, degree, budget):
    """Breadth-first closure from the identity.

    Returns (elements, parent, via) where element k equals
    compose(elements[parent[k]], gens[via[k]]), or None once more than
    ``budget`` elements are found.
    """
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    parent = [-1]
    via = [-1]
    head = 0
    while head < len(elements):
        p = elements[head]
        for gi, g in enumerate(gens):
            q = tuple([g[i] for i in p])
            if q not in index:
                index[q] = len(elements)
                elements.append(q)
                parent.append(head)
                via.append(gi)
                if len(elements) > budget:
                    return None
        head += 1
    return elements, parent, via


def element_orders(elements):
    out = []
    for p in elements:
        seen = [False] * len(p)
        order = 1
        for start in range(len(p)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = p[i]
                length += 1
            order = math.lcm(order, length)
        out.append(order)
    return out
