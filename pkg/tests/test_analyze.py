"""Tests for weight enumeration, supports, and design verification."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

import prmhull.analyze as analyze
from oracles import ref_weight_distribution
from prmhull import field_make
from prmhull.analyze import (
    NOT_A_DESIGN,
    BlockFamily,
    WeightDistribution,
    design_lambda,
    min_distance,
    min_weight_supports,
    weight_distribution,
)
from prmhull.code import LinearCode, code_from_rows, dual
from prmhull.errors import BudgetExceeded, OutOfRange
from prmhull.exactla import MatrixFq
from prmhull.prm import min_dist_formula, prm_code


def make_code(q, rows):
    return LinearCode(MatrixFq(field_make(q), np.array(rows, dtype=np.int32)))


def tetracode():
    return make_code(3, [[1, 1, 1, 0], [0, 1, 2, 1]])


# ---------------------------------------------------------------------------
# weight distribution


def test_tetracode_distribution():
    dist = weight_distribution(tetracode())
    assert dist.to_pairs() == [[0, 1], [3, 8]]


def test_distribution_matches_exhaustive_oracle():
    cases = [
        make_code(2, [[1, 1, 0, 1, 0], [0, 1, 1, 1, 1]]),
        make_code(3, [[1, 0, 2, 1], [0, 1, 1, 2]]),
        make_code(4, [[1, 0, 2, 3, 1], [0, 1, 1, 0, 2]]),
        make_code(5, [[1, 2, 3, 4, 0], [0, 1, 2, 3, 4], [1, 1, 1, 1, 2]]),
        make_code(9, [[1, 3, 0, 7], [0, 1, 8, 2]]),
        prm_code(field_make(3), 2, 2),
    ]
    for C in cases:
        expected = ref_weight_distribution(C.field, C.G.a)
        got = weight_distribution(C)
        assert got.counts.tolist() == expected, C


def test_packed_and_generic_paths_agree():
    codes = [
        tetracode(),
        prm_code(field_make(3), 2, 1),
        prm_code(field_make(3), 2, 2),
        prm_code(field_make(3), 2, 3),
        prm_code(field_make(3), 1, 2),  # full space
        make_code(3, np.eye(7, dtype=np.int32)),
    ]
    rng = np.random.default_rng(5)
    for _ in range(4):
        rows = rng.integers(0, 3, size=(5, 70))  # multi-word packing
        codes.append(code_from_rows(field_make(3), rows))
    for C in codes:
        packed = weight_distribution(C, method="packed")
        generic = weight_distribution(C, method="generic")
        assert packed == generic


def test_packed_engine_rejects_other_fields():
    with pytest.raises(OutOfRange):
        weight_distribution(make_code(5, [[1, 2]]), method="packed")


def test_distribution_invariants():
    for n, k, q in [(1, 1, 3), (2, 2, 3), (2, 1, 5), (1, 3, 4), (2, 2, 4)]:
        C = prm_code(field_make(q), n, k)
        dist = weight_distribution(C)
        assert dist.total() == q**C.K
        assert dist.counts[0] == 1
        D = min_dist_formula(n, k, q)
        assert not dist.counts[1:D].any()
        assert dist.counts[D] > 0
        # Scalar orbits: q-1 divides every nonzero-weight count.
        assert all(c % (q - 1) == 0 for c in dist.counts[1:])


def test_zero_dimensional_code():
    Z = dual(make_code(3, np.eye(4, dtype=np.int32)))
    dist = weight_distribution(Z)
    assert dist.to_pairs() == [[0, 1]]


def test_budget_enforced():
    C = prm_code(field_make(3), 2, 2)  # 3^6 codewords
    with pytest.raises(BudgetExceeded):
        weight_distribution(C, budget=3**6 - 1)
    assert weight_distribution(C, budget=3**6).total() == 3**6
    with pytest.raises(BudgetExceeded):
        min_distance(C, budget=100)
    with pytest.raises(BudgetExceeded):
        min_weight_supports(C, 4, budget=100)


def test_worker_count_invariance(monkeypatch):
    monkeypatch.setattr(analyze, "_MIN_WORKER_STEPS", 1)
    C = prm_code(field_make(3), 2, 2)
    base = weight_distribution(C)
    for workers in (2, 3, 5):
        assert weight_distribution(C, workers=workers) == base
    D = prm_code(field_make(4), 1, 2)
    base4 = weight_distribution(D)
    assert weight_distribution(D, workers=3) == base4


def test_polynomial_string():
    dist = weight_distribution(tetracode())
    assert dist.to_polynomial_string() == "x^4 + 8xy^3"
    zero = WeightDistribution([1])
    assert zero.to_polynomial_string() == "1"
    rep2 = weight_distribution(make_code(2, [[1, 1]]))
    assert rep2.to_polynomial_string() == "x^2 + y^2"


def test_pairs_roundtrip_and_equality():
    dist = weight_distribution(tetracode())
    assert dist.min_nonzero_weight() == 3
    assert dist == WeightDistribution([1, 0, 0, 8, 0])
    assert dist != WeightDistribution([1, 0, 0, 0, 8])


# ---------------------------------------------------------------------------
# minimum distance


def test_min_distance_known_codes():
    f3, f5 = field_make(3), field_make(5)
    assert min_distance(prm_code(f3, 2, 1)) == 9
    assert min_distance(prm_code(f5, 1, 2)) == 4
    assert min_distance(prm_code(f5, 2, 2)) == 20


def test_min_distance_matches_formula_on_grid():
    for q in (2, 3, 4):
        f = field_make(q)
        for n in (1, 2):
            for k in range(1, n * (q - 1) + 1):
                C = prm_code(f, n, k)
                if q**C.K > 10**6:
                    continue
                assert min_distance(C) == min_dist_formula(n, k, q), (n, k, q)


def test_min_distance_stop_at():
    C = tetracode()
    # A correct lower bound: the scan completes and the result is exact.
    assert min_distance(C, stop_at=3) == 3
    # An overclaimed bound: the scan returns a witness strictly below it.
    assert min_distance(C, stop_at=4) == 3


def test_min_distance_zero_code():
    Z = dual(make_code(3, np.eye(3, dtype=np.int32)))
    with pytest.raises(OutOfRange):
        min_distance(Z)


# ---------------------------------------------------------------------------
# supports


def test_tetracode_supports():
    fam = min_weight_supports(tetracode(), 3)
    assert fam.ground_size == 4
    assert len(fam.blocks) == 4  # 8 words / 2 nonzero scalars
    assert all(len(b) == 3 for b in fam.blocks)
    assert fam.blocks == ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def test_supports_below_distance_empty():
    fam = min_weight_supports(tetracode(), 2)
    assert fam.blocks == ()


def test_supports_paths_and_workers_agree(monkeypatch):
    monkeypatch.setattr(analyze, "_MIN_WORKER_STEPS", 1)
    C = prm_code(field_make(3), 2, 2)
    w = min_distance(C)
    base = min_weight_supports(C, w)
    assert min_weight_supports(C, w, method="generic") == base
    assert min_weight_supports(C, w, workers=3) == base
    assert len(base.blocks) >= 1


def test_supports_multiword_packing():
    # 70 columns forces two 64-bit words per bitplane.
    rng = np.random.default_rng(11)
    C = code_from_rows(field_make(3), rng.integers(0, 3, size=(4, 70)))
    w = min_distance(C)
    packed = min_weight_supports(C, w, method="packed")
    generic = min_weight_supports(C, w, method="generic")
    assert packed == generic
    assert all(len(b) == w for b in packed.blocks)


def test_supports_weight_validation():
    with pytest.raises(OutOfRange):
        min_weight_supports(tetracode(), 0)
    with pytest.raises(OutOfRange):
        min_weight_supports(tetracode(), 5)


# ---------------------------------------------------------------------------
# designs


def test_tetracode_design():
    fam = min_weight_supports(tetracode(), 3)
    # All four 3-subsets of a 4-set: complete design at every t.
    assert design_lambda(fam, 1) == 3
    assert design_lambda(fam, 2) == 2
    assert design_lambda(fam, 3) == 1


def test_complete_design_lambda():
    v, s = 6, 3
    fam = BlockFamily(v, tuple(itertools.combinations(range(v), s)))
    assert design_lambda(fam, 2) == math.comb(v - 2, s - 2)


def test_not_a_design_cases():
    assert design_lambda(BlockFamily(3, ((0, 1), (0, 2))), 2) is NOT_A_DESIGN
    assert design_lambda(BlockFamily(4, ((0, 1), (0, 1, 2))), 1) is NOT_A_DESIGN  # mixed sizes
    assert design_lambda(BlockFamily(4, ()), 2) is NOT_A_DESIGN  # empty family
    assert design_lambda(BlockFamily(4, ((0, 1), (2, 3))), 3) is NOT_A_DESIGN  # t > block size
    with pytest.raises(OutOfRange):
        design_lambda(BlockFamily(4, ((0, 1),)), 0)


def test_projective_plane_code_gives_design():
    # Weight-9 words of the [13, 3, 9] code over F_3: the 13 lines of the
    # projective plane (complements of point sets of lines), a 2-design.
    C = prm_code(field_make(3), 2, 1)
    fam = min_weight_supports(C, 9)
    lam = design_lambda(fam, 2)
    assert lam is not NOT_A_DESIGN
    assert len(fam.blocks) == 13
    assert lam == 6  # C(9,2) * 13 / C(13,2)
