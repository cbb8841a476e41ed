"""Reflection functors: kernels, cokernels, dimension vectors, round trips."""

from __future__ import annotations

import random

import pytest

from mckay.bgp import (QuiverRep, assembled_rank, dim_vector_reflect, direct_sum,
                       find_isomorphism, make_rep, random_representation,
                       reflect_minus, reflect_plus, round_trip_isomorphism)
from mckay.chartab import dixon_character_table
from mckay.errors import PreconditionError
from mckay.groups import build_group, parse_descriptor
from mckay.heights import Arrow, OrientedQuiver, enumerate_heights
from mckay.mckaygraph import mckay_graph

DOUBLE = OrientedQuiver(2, (Arrow(1, 0, 0), Arrow(1, 0, 1)))
DOUBLE_N = [[0, 2], [2, 0]]


def graph_for(label):
    g = build_group(parse_descriptor(label))
    return mckay_graph(g, dixon_character_table(g))


def test_kernel_example_with_invertible_assembled_map():
    rep = make_rep(DOUBLE, (2, 1), [[[1], [0]], [[0], [1]]])
    reflected = reflect_plus(rep, 0)
    assert reflected.dims == (0, 1)
    assert dim_vector_reflect((2, 1), 0, DOUBLE_N) == (0, 1)


def test_simple_at_sink_reflects_to_zero():
    rep = make_rep(DOUBLE, (1, 0), [[[]], [[]]])
    assert reflect_plus(rep, 0).dims == (0, 0)


def test_one_dimensional_kernel_example():
    rep = make_rep(DOUBLE, (1, 1), [[[1]], [[3]]])
    reflected = reflect_plus(rep, 0)
    assert reflected.dims == (1, 1)
    # The reversed arrows carry the components of the kernel inclusion, so
    # composing with the original assembled map must give zero.
    a, b = reflected.maps[0][0][0], reflected.maps[1][0][0]
    assert (a, b) != (0, 0)
    assert rep.maps[0][0][0] * a + rep.maps[1][0][0] * b == 0


def test_simple_at_source_reflects_to_zero():
    quiver = OrientedQuiver(2, (Arrow(0, 1, 0), Arrow(0, 1, 1)))
    rep = make_rep(quiver, (1, 0), [[], []])
    assert reflect_minus(rep, 0).dims == (0, 0)


def test_reflect_requires_correct_vertex_type():
    rep = make_rep(DOUBLE, (1, 1), [[[1]], [[0]]])
    with pytest.raises(PreconditionError):
        reflect_plus(rep, 1)
    with pytest.raises(PreconditionError):
        reflect_minus(rep, 0)


def test_dim_vector_reflection_involution_and_delta():
    rng = random.Random(2)
    graph = graph_for("bd:2")
    n = [list(row) for row in graph.n]
    for _ in range(25):
        d = tuple(rng.randint(0, 5) for _ in range(graph.size))
        for v in range(graph.size):
            assert dim_vector_reflect(dim_vector_reflect(d, v, n), v, n) == d
    delta = graph.delta
    for v in range(graph.size):
        assert dim_vector_reflect(delta, v, n) == delta


@pytest.mark.parametrize("label", ["cyclic:4", "bd:2"])
def test_reflected_dims_follow_simple_reflections(label):
    graph = graph_for(label)
    n = [list(row) for row in graph.n]
    rng = random.Random(23)
    checked = 0
    for h in enumerate_heights(graph, 2)[:4]:
        quiver = h.quiver()
        for _ in range(25):
            rep = random_representation(quiver, rng)
            for v in quiver.sinks():
                if assembled_rank(rep, v) == rep.dims[v]:
                    assert reflect_plus(rep, v).dims == \
                        dim_vector_reflect(rep.dims, v, n)
                    checked += 1
            for v in quiver.sources():
                if assembled_rank(rep, v) == rep.dims[v]:
                    assert reflect_minus(rep, v).dims == \
                        dim_vector_reflect(rep.dims, v, n)
                    checked += 1
    assert checked > 50


def test_round_trip_isomorphism_at_sinks():
    graph = graph_for("cyclic:4")
    rng = random.Random(31)
    done = 0
    for h in enumerate_heights(graph, 2)[:3]:
        quiver = h.quiver()
        while done < 12:
            rep = random_representation(quiver, rng)
            sink = quiver.sinks()[0]
            if assembled_rank(rep, sink) != rep.dims[sink]:
                continue
            result = round_trip_isomorphism(rep, sink)
            assert result is not None
            back, phi = result
            assert back.dims == rep.dims
            done += 1
        done = 0


def test_round_trip_general_intertwiner_search():
    rep = make_rep(DOUBLE, (2, 1), [[[1], [0]], [[1], [1]]])
    back = reflect_minus(reflect_plus(rep, 0), 0)
    iso = find_isomorphism(rep, back)
    assert iso is not None


def test_reflection_distributes_over_direct_sums():
    graph = graph_for("bd:2")
    h = enumerate_heights(graph, 1)[0]
    quiver = h.quiver()
    rng = random.Random(4)
    a = random_representation(quiver, rng)
    b = random_representation(quiver, rng)
    v = quiver.sinks()[0]
    lhs = reflect_plus(direct_sum(a, b), v)
    rhs = direct_sum(reflect_plus(a, v), reflect_plus(b, v))
    assert lhs.dims == rhs.dims
    assert find_isomorphism(lhs, rhs) is not None


def test_quiver_rep_json_round_trip():
    rep = make_rep(DOUBLE, (2, 1), [[[1], [0]], [[0], [1]]])
    blob = rep.to_json()
    again = QuiverRep.from_json(blob)
    assert again.dims == rep.dims
    assert again.maps == rep.maps
    assert again.quiver.arrows == rep.quiver.arrows
