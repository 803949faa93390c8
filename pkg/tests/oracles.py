"""Independent reference computations used by the tests."""

from fractions import Fraction

from configph.metric_graph import MetricGraph


def grid_components(g: MetricGraph, r: Fraction, step: Fraction) -> int:
    """Components of the discretized configuration space.

    The tree is sampled every ``step`` along each edge (edge lengths must be
    multiples of step). Two grid configurations are adjacent when one robot
    moves to a neighboring grid point; both must keep distance >= r. Distances
    come from all-pairs shortest paths on the sampled tree, computed by BFS with
    exact rationals, so nothing is shared with the geometric pipeline.
    """
    nodes = {v: ("v", v) for v in g.vertices}
    adj: dict = {n: [] for n in nodes.values()}
    for e in g.edges:
        n = int(e.length / step)
        if n * step != e.length:
            raise ValueError("edge length must be a multiple of step")
        chain = [nodes[e.u]] + [("e", e.id, k) for k in range(1, n)] + [nodes[e.v]]
        for a in chain:
            adj.setdefault(a, [])
        for a, b in zip(chain, chain[1:]):
            adj[a].append(b)
            adj[b].append(a)
    pts = sorted(adj, key=repr)
    dist = {}
    for s in pts:
        d = {s: 0}
        todo = [s]
        while todo:
            nxt = []
            for a in todo:
                for b in adj[a]:
                    if b not in d:
                        d[b] = d[a] + 1
                        nxt.append(b)
            todo = nxt
        dist[s] = d
    ok = {(a, b) for a in pts for b in pts if dist[a][b] * step >= r}
    parent = {c: c for c in ok}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in ok:
        for a2 in adj[a]:
            if (a2, b) in ok:
                parent[find((a, b))] = find((a2, b))
        for b2 in adj[b]:
            if (a, b2) in ok:
                parent[find((a, b))] = find((a, b2))
    return len({find(c) for c in ok})
