"""Hypothesis strategies for small metric trees and parameters."""

from fractions import Fraction

from hypothesis import strategies as st

from configph.metric_graph import build_graph

LENGTHS = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]


def rationals(lo: int = 1, hi: int = 40, dens=(2, 3, 4, 8)):
    return st.builds(Fraction, st.integers(lo, hi), st.sampled_from(dens))


@st.composite
def trees(draw, max_edges: int = 5):
    """A random tree on 2..max_edges+1 vertices; e1 is the variable edge."""
    n = draw(st.integers(1, max_edges))
    parents = [draw(st.integers(0, i)) for i in range(n)]
    edges = [{"id": f"e{i + 1}", "u": f"v{parents[i]}", "v": f"v{i + 1}",
              "len": str(draw(st.sampled_from(LENGTHS)))} for i in range(n)]
    spec = {"vertices": [f"v{i}" for i in range(n + 1)], "edges": edges}
    return build_graph(spec)


params = st.tuples(rationals(1, 24), rationals(1, 24))


def random_instance(rng):
    """Seeded counterpart of ``trees`` plus a parameter point, for fixed-count sweeps."""
    n = rng.randint(1, 5)
    edges = [{"id": f"e{i + 1}", "u": f"v{rng.randint(0, i)}", "v": f"v{i + 1}",
              "len": str(rng.choice(LENGTHS))} for i in range(n)]
    g = build_graph({"vertices": [f"v{i}" for i in range(n + 1)], "edges": edges})
    r = Fraction(rng.randint(1, 24), rng.choice((2, 3, 4, 8)))
    L = Fraction(rng.randint(1, 24), rng.choice((2, 3, 4, 8)))
    return g, r, L
