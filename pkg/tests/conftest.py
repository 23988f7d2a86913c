from __future__ import annotations

import random
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from latticewalk.algebra import EgfSeq, Poly
from latticewalk.generators import random_bipartite_graph, random_graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(-5, 5)
polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-4, 4), max_size=4
).map(Poly)
ring_elems = st.one_of(small_ints, polys)


def egf_seqs(order: int, elems=small_ints):
    return st.lists(elems, min_size=order + 1, max_size=order + 1).map(EgfSeq)


@st.composite
def graphs(draw, max_vertices: int = 5, max_edges: int = 9, weights: str = "int"):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    n = draw(st.integers(1, max_vertices))
    return random_graph(rng, n, draw(st.integers(0, max_edges)), weights)


@st.composite
def bipartite_graphs(draw, max_side: int = 3, max_edges: int = 7):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_bipartite_graph(rng, draw(st.integers(1, max_side)), draw(st.integers(1, max_side)),
                                  draw(st.integers(0, max_edges)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
