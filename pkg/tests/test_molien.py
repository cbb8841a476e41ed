"""Molien matrices, the Koszul identity, Hom dimensions, the height regrading."""

from __future__ import annotations

import pytest

from mckay.chartab import dixon_character_table
from mckay.exactnum import Poly, RatFunc
from mckay.groups import build_group, parse_descriptor
from mckay.mckaygraph import mckay_graph
from mckay.molien import (HomDims, graded_dim_Bh, hom_dim_series, koszul_check,
                          molien_matrices)
from mckay.heights import HeightFunction


def setup(label):
    g = build_group(parse_descriptor(label))
    t = dixon_character_table(g)
    return g, t


def test_order_two_molien_entries():
    g, t = setup("cyclic:2")
    m = molien_matrices(g, t)
    assert m.S[0][0] == RatFunc(Poly.rational([1, 0, 1]),
                                Poly.rational([1, 0, -2, 0, 1]))
    assert m.E[0][0] == Poly.rational([1, 0, 1])
    assert m.E[0][1] == Poly.rational([0, 2])


def test_s_at_zero_is_identity():
    for label in ("cyclic:3", "bd:2", "2T"):
        g, t = setup(label)
        m = molien_matrices(g, t)
        for p in range(m.count):
            for q in range(m.count):
                assert m.S[p][q].series(0).coeffs[0] == (1 if p == q else 0)


def test_koszul_identity_by_hand_for_order_two():
    g, t = setup("cyclic:2")
    m = molien_matrices(g, t)
    # (1+t^2)^2/(1-t^2)^2 - 4t^2/(1-t^2)^2 = 1 and the cross terms cancel.
    e_neg = [[RatFunc.from_poly(m.E[q][r].compose_neg()) for r in range(2)]
             for q in range(2)]
    diag = m.S[0][0] * e_neg[0][0] + m.S[0][1] * e_neg[1][0]
    off = m.S[0][0] * e_neg[0][1] + m.S[0][1] * e_neg[1][1]
    assert diag == RatFunc.constant(1)
    assert off == RatFunc.constant(0)
    assert koszul_check(m) == (True, None)


@pytest.mark.parametrize("label", ["cyclic:4", "cyclic:6", "bd:2", "bd:3", "2T"])
def test_koszul_identity(label):
    g, t = setup(label)
    ok, witness = koszul_check(molien_matrices(g, t))
    assert ok, witness


def test_hom_dim_schur_and_examples():
    g, t = setup("cyclic:2")
    hd = HomDims(g, t)
    assert hd(0, 0, 0) == 1
    assert hd(0, 1, 0) == 0
    assert hd(0, 0, 2) == 3
    assert hd(0, 1, 1) == 2
    assert hd(0, 1, -4) == 0


@pytest.mark.parametrize("label", ["cyclic:2", "cyclic:5", "bd:2", "2T"])
def test_hom_dims_match_series_coefficients(label):
    g, t = setup(label)
    hd = HomDims(g, t)
    m = molien_matrices(g, t)
    for p in range(t.count):
        for q in range(t.count):
            series = m.S[p][q].series(8)
            assert hom_dim_series(hd, q, p, 8).coeffs == series.coeffs
            # V is self-dual, so the dimensions are symmetric.
            assert hom_dim_series(hd, p, q, 8).coeffs == series.coeffs


def test_e_matrix_encodes_multiplicities():
    for label in ("cyclic:4", "bd:2", "2T"):
        g, t = setup(label)
        graph = mckay_graph(g, t)
        m = molien_matrices(g, t)
        for q in range(t.count):
            for r in range(t.count):
                coeffs = list(m.E[q][r].coeffs) + [0, 0, 0]
                assert coeffs[0] == (1 if q == r else 0)
                assert coeffs[1] == graph.n[q][r]
                assert coeffs[2] == (1 if q == r else 0)


def test_graded_dims_by_height():
    g, t = setup("cyclic:2")
    hd = HomDims(g, t)
    graph = mckay_graph(g, t)
    h = HeightFunction(graph, (0, 1))
    assert graded_dim_Bh(hd, h, 0, 0, 0) == 1
    assert graded_dim_Bh(hd, h, 0, 1, 0) == 0
    assert graded_dim_Bh(hd, h, 0, 1, 1) == 2
    assert graded_dim_Bh(hd, h, 0, 0, 2) == 3
    # Degree parity that cannot be written as h(j) + 2d - h(i) gives zero.
    assert graded_dim_Bh(hd, h, 0, 1, 2) == 0
