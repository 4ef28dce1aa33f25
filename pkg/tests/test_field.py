"""Tests for finite-field construction and arithmetic."""

from __future__ import annotations

import numpy as np
import pytest

from prmhull.errors import DivisionByZero, NotPrimePower
from prmhull.field import Field, field_make, power_sum

SWEEP_Q = [2, 3, 4, 5, 7, 8, 9]


def poly_eval(coeffs, x, p):
    """Horner evaluation of a constant-first coefficient list over F_p."""
    out = 0
    for c in reversed(coeffs):
        out = (out * x + c) % p
    return out


class TestConstruction:
    def test_prime_field(self):
        f = field_make(5)
        assert (f.q, f.p, f.e) == (5, 5, 1)
        assert f.modulus == (0, 1)

    @pytest.mark.parametrize("q", [6, 1, 0, 12, 100, (1 << 16) + 1])
    def test_not_prime_power(self, q):
        with pytest.raises(NotPrimePower):
            Field(q)

    def test_field_make_cached(self):
        assert field_make(9) is field_make(9)

    def test_modulus_q4(self):
        # the 4 monic quadratics over F_2 in lex order (constant first) are
        # x^2, x^2+x, x^2+1, x^2+x+1; the first three have roots 0, 0, 1,
        # so the unique irreducible one is x^2+x+1
        for coeffs in [(0, 0, 1), (0, 1, 1), (1, 0, 1)]:
            assert any(poly_eval(coeffs, x, 2) == 0 for x in range(2))
        assert all(poly_eval((1, 1, 1), x, 2) != 0 for x in range(2))
        assert field_make(4).modulus == (1, 1, 1)

    def test_modulus_q9(self):
        # lex-smaller monic quadratics over F_3 all have roots; x^2+1 does not
        for coeffs in [(0, 0, 1), (0, 1, 1), (0, 2, 1)]:
            assert any(poly_eval(coeffs, x, 3) == 0 for x in range(3))
        assert all(poly_eval((1, 0, 1), x, 3) != 0 for x in range(3))
        assert field_make(9).modulus == (1, 0, 1)

    def test_modulus_q8(self):
        # cubics over F_2 are irreducible iff rootless; enumerate all monic
        # cubics in lex order and take the first rootless one as the oracle
        expected = None
        for c0 in range(2):
            for c1 in range(2):
                for c2 in range(2):
                    coeffs = (c0, c1, c2, 1)
                    if all(poly_eval(coeffs, x, 2) != 0 for x in range(2)):
                        expected = coeffs
                        break
                if expected:
                    break
            if expected:
                break
        assert expected == (1, 0, 1, 1)
        assert field_make(8).modulus == (1, 0, 1, 1)

    def test_large_binary_field(self):
        f = field_make(1 << 16)
        assert (f.p, f.e) == (2, 16)
        assert f.mul(2, 2) == 4  # x * x = x^2, no reduction at this degree
        assert f.pow(3, f.q - 1) == 1


class TestScalarArithmetic:
    def test_f5_product(self):
        assert field_make(5).mul(3, 4) == 2

    def test_f4_x_squared(self):
        # under modulus x^2+x+1: x*x = x+1, i.e. index 2 * index 2 = index 3
        assert field_make(4).mul(2, 2) == 3

    def test_pow_zero_zero(self):
        for q in SWEEP_Q:
            assert field_make(q).pow(0, 0) == 1

    def test_pow_of_zero(self):
        f = field_make(9)
        assert f.pow(0, 1) == 0
        assert f.pow(0, 8) == 0  # 0^(q-1) stays 0

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64])
    def test_field_axioms_full_tables(self, q):
        f = field_make(q)
        idx = np.arange(q, dtype=np.int32)
        a = idx[:, None, None]
        b = idx[None, :, None]
        c = idx[None, None, :]
        add = f.vadd
        mul = f.vmul
        assert np.array_equal(add(idx[:, None], idx[None, :]), add(idx[None, :], idx[:, None]))
        assert np.array_equal(mul(idx[:, None], idx[None, :]), mul(idx[None, :], idx[:, None]))
        assert np.array_equal(add(add(a, b), c), add(a, add(b, c)))
        assert np.array_equal(mul(mul(a, b), c), mul(a, mul(b, c)))
        assert np.array_equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
        # identities and inverses
        assert np.array_equal(add(idx, np.zeros(q, np.int32)), idx)
        assert np.array_equal(mul(idx, np.ones(q, np.int32)), idx)
        for x in range(1, q):
            assert f.mul(x, f.inv(x)) == 1
        for x in range(q):
            assert f.add(x, f.neg(x)) == 0
            assert f.sub(x, x) == 0

    @pytest.mark.parametrize("q", SWEEP_Q + [16, 27, 121])
    def test_fermat(self, q):
        f = field_make(q)
        for a in range(1, q):
            assert f.pow(a, q - 1) == 1
        for a in range(q):
            assert f.pow(a, q) == a

    def test_inv_zero_raises(self):
        with pytest.raises(DivisionByZero):
            field_make(7).inv(0)
        with pytest.raises(DivisionByZero):
            field_make(8).inv(0)


class TestVectorized:
    @pytest.mark.parametrize("q", SWEEP_Q + [16, 25, 27, 257, 512])
    def test_vector_ops_match_scalar(self, q):
        f = field_make(q)
        rng = np.random.default_rng(q)
        a = rng.integers(0, q, size=200).astype(np.int32)
        b = rng.integers(0, q, size=200).astype(np.int32)
        assert [f.add(int(x), int(y)) for x, y in zip(a, b)] == list(f.vadd(a, b))
        assert [f.sub(int(x), int(y)) for x, y in zip(a, b)] == list(f.vsub(a, b))
        assert [f.mul(int(x), int(y)) for x, y in zip(a, b)] == list(f.vmul(a, b))
        assert [f.neg(int(x)) for x in a] == list(f.vneg(a))
        s = int(b[0])
        if s:
            assert [f.mul(s, int(x)) for x in a] == list(f.vscale(s, a))
        for m in [0, 1, 2, 3, q - 1, q, 2 * q + 1]:
            assert [f.pow(int(x), m) for x in a] == list(f.vpow(a, m))

    @pytest.mark.parametrize("q", SWEEP_Q)
    def test_vsum_matches_scalar_fold(self, q):
        f = field_make(q)
        rng = np.random.default_rng(q + 100)
        a = rng.integers(0, q, size=137).astype(np.int32)
        acc = 0
        for x in a:
            acc = f.add(acc, int(x))
        assert f.vsum(a) == acc


class TestPowerSum:
    def test_known_values(self):
        f5 = field_make(5)
        assert power_sum(f5, 4) == 4  # -1 in F_5
        assert power_sum(f5, 2) == 0
        assert power_sum(field_make(3), 0) == 0  # q copies of 1 in char p

    @pytest.mark.parametrize("q", SWEEP_Q)
    def test_closed_form(self, q):
        # sum of beta^r over F_q is -1 when r > 0 and (q-1) | r, else 0
        f = field_make(q)
        for r in range(2 * q + 1):
            expected = f.neg(1) if r > 0 and r % (q - 1) == 0 else 0
            assert power_sum(f, r) == expected, (q, r)
