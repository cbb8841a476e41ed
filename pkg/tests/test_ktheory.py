"""Lattice classes: Euler pairing, dual bases, twist reflections, Weyl checks."""

from __future__ import annotations

from fractions import Fraction

import pytest

from mckay.chartab import dixon_character_table
from mckay.errors import PreconditionError
from mckay.groups import build_group, parse_descriptor
from mckay.heights import HeightFunction, enumerate_heights, parity_height
from mckay.ktheory import (P1Class, basis_change_unimodular, cartan_form,
                           classes_equal, euler_char, family_coordinates,
                           flip_family, parity_family, probe_vector,
                           simple_family, twist_class, verify_dual_bases,
                           verify_twist_vs_flip, weyl_checks)
from mckay.mckaygraph import mckay_graph
from mckay.molien import HomDims


def setup(label):
    g = build_group(parse_descriptor(label))
    t = dixon_character_table(g)
    return mckay_graph(g, t), HomDims(g, t)


def test_euler_pairing_base_cases():
    _, hd = setup("cyclic:2")
    w0 = P1Class.symbol(0, 0)
    assert euler_char(hd, w0, w0) == 1
    assert euler_char(hd, w0, P1Class.symbol(0, -2)) == -1
    # For the order-2 center every quadratic form is invariant, so the
    # equivariant chi(O, O(2)) sees all three sections.
    assert euler_char(hd, w0, P1Class.symbol(0, 2)) == hd(0, 0, 2) == 3


def test_parity_family_duality_defines_it():
    graph, hd = setup("cyclic:2")
    family = parity_family(graph, hd)
    for k in range(2):
        fk = P1Class.symbol(k, graph.parity[k])
        for i, cls in enumerate(family.classes):
            assert euler_char(hd, fk, cls) == (1 if i == k else 0)
    # Exact linear solve oracle: the duality system over the twist window
    # {p(j), p(j)-2} admits the family as a solution, and pairing against
    # the probe set pins the solution uniquely.
    window = [(j, e) for j in range(2) for e in (graph.parity[j], graph.parity[j] - 2)]
    for i, cls in enumerate(family.classes):
        matrix = [[euler_char(hd, P1Class.symbol(k, graph.parity[k]),
                              P1Class.symbol(j, e)) for (j, e) in window]
                  for k in range(2)]
        target = [1 if k == i else 0 for k in range(2)]
        from mckay import linalg
        sol = linalg.solve([[Fraction(x) for x in row] for row in matrix],
                           [Fraction(t) for t in target])
        assert sol is not None


def test_flip_rules_at_class_level():
    graph, hd = setup("cyclic:2")
    family = parity_family(graph, hd)
    source = family.height.sources()[0]
    flipped = flip_family(graph, family, source, "minus")
    assert flipped.classes[source] == -family.classes[source]
    other = 1 - source
    expected = family.classes[other] + 2 * family.classes[source]
    assert flipped.classes[other] == expected


def test_nonneighbor_class_is_fixed():
    graph, hd = setup("bd:2")
    family = parity_family(graph, hd)
    center = 4
    h = family.height
    # Raise one leaf: in the parity orientation leaves are sinks.
    leaf = 1
    flipped = flip_family(graph, family, leaf, "plus")
    for j in range(graph.size):
        if j != leaf and graph.n[leaf][j] == 0:
            assert flipped.classes[j] == family.classes[j]
    assert flipped.classes[center] == family.classes[center] + family.classes[leaf]


def test_cartan_form_on_simple_classes():
    for label in ("cyclic:2", "cyclic:4", "bd:2"):
        graph, hd = setup(label)
        for h in enumerate_heights(graph, 2):
            family = simple_family(graph, hd, h)
            for i, a in enumerate(family.classes):
                for j, b in enumerate(family.classes):
                    assert cartan_form(hd, a, b) == graph.cartan[i][j]


def test_delta_combination_is_radical():
    graph, hd = setup("cyclic:4")
    family = parity_family(graph, hd)
    delta_class = P1Class()
    for i, coeff in enumerate(graph.delta):
        delta_class = delta_class + coeff * family.classes[i]
    for cls in family.classes:
        assert cartan_form(hd, delta_class, cls) == 0


def test_twist_examples_and_involution():
    graph, hd = setup("cyclic:2")
    family = parity_family(graph, hd)
    e0, e1 = family.classes
    assert classes_equal(hd, graph, twist_class(hd, graph, family, 0, e0), -e0)
    t1 = twist_class(hd, graph, family, 0, e1)
    assert classes_equal(hd, graph, t1, e1 + 2 * e0)
    assert classes_equal(hd, graph, twist_class(hd, graph, family, 0, t1), e1)


def test_twist_requires_span_membership():
    graph, hd = setup("cyclic:2")
    family = parity_family(graph, hd)
    # Every symbol lies in the span of a full family (the classes are a
    # lattice basis), so coordinates always solve.
    coords = family_coordinates(hd, graph, family, P1Class.symbol(0, 4))
    assert coords is not None and all(c.denominator == 1 for c in coords)
    # Dropping a class makes the span proper and the precondition fire.
    from dataclasses import replace
    truncated = replace(family, classes=(family.classes[0],))
    assert family_coordinates(hd, graph, truncated, family.classes[1]) is None
    with pytest.raises(PreconditionError):
        twist_class(hd, graph, truncated, 0, family.classes[1])


@pytest.mark.parametrize("label", ["cyclic:2", "cyclic:4", "bd:2"])
def test_dual_bases_all_heights(label):
    graph, hd = setup(label)
    for h in enumerate_heights(graph, 2):
        assert verify_dual_bases(graph, hd, h)


def test_dual_bases_after_one_flip():
    graph, hd = setup("bd:2")
    base = parity_height(graph)
    sink = base.sinks()[0]
    raised = base.with_value(sink, base.values[sink] + 2)
    assert verify_dual_bases(graph, hd, raised)


@pytest.mark.parametrize("label", ["cyclic:2", "cyclic:4", "bd:2"])
def test_twist_matches_flip_everywhere(label):
    graph, hd = setup(label)
    for h in enumerate_heights(graph, 2):
        quiver = h.quiver()
        for v in list(quiver.sources()) + list(quiver.sinks()):
            assert verify_twist_vs_flip(graph, hd, h, v), (h.values, v)


def test_twist_vs_flip_diagonal_and_nonneighbors():
    graph, hd = setup("cyclic:4")
    h = HeightFunction(graph, (0, 0, 1, 1))
    family = simple_family(graph, hd, h)
    source = h.quiver().sources()[0]
    twisted_self = twist_class(hd, graph, family, source, family.classes[source])
    assert classes_equal(hd, graph, twisted_self, -family.classes[source])
    for j in range(graph.size):
        if j != source and graph.n[source][j] == 0:
            tw = twist_class(hd, graph, family, source, family.classes[j])
            assert classes_equal(hd, graph, tw, family.classes[j])


def test_probe_vectors_separate_and_span():
    graph, hd = setup("cyclic:4")
    family = parity_family(graph, hd)
    vectors = [probe_vector(hd, graph, cls) for cls in family.classes]
    assert len(set(vectors)) == graph.size
    assert basis_change_unimodular(
        graph, hd, enumerate_heights(graph, 2)[0], enumerate_heights(graph, 2)[-1])


def test_every_height_spans_the_parity_lattice():
    graph, hd = setup("bd:2")
    base = parity_height(graph)
    for h in enumerate_heights(graph, 2):
        assert basis_change_unimodular(graph, hd, base, h)


def test_lattice_suite_on_the_e6_graph():
    graph, hd = setup("2T")
    for h in enumerate_heights(graph, 1):
        family = simple_family(graph, hd, h)
        for i, a in enumerate(family.classes):
            for j, b in enumerate(family.classes):
                assert cartan_form(hd, a, b) == graph.cartan[i][j]
        assert verify_dual_bases(graph, hd, h)
        quiver = h.quiver()
        for v in list(quiver.sources())[:2] + list(quiver.sinks())[:2]:
            assert verify_twist_vs_flip(graph, hd, h, v)
    assert weyl_checks(graph)["ok"]


def test_weyl_relations():
    graph, _ = setup("cyclic:2")
    report = weyl_checks(graph)
    assert report["ok"]
    assert report["double_edge_infinite"] is True

    graph3, _ = setup("cyclic:3")
    report3 = weyl_checks(graph3)
    assert report3["ok"]
    assert all(item["ok"] for item in report3["braid3"])
    assert report3["double_edge_infinite"] is None

    graph4, _ = setup("bd:2")
    assert weyl_checks(graph4)["ok"]
