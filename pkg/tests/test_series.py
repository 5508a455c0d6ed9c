"""Series kernel: arithmetic windows, calculus, composition, serialization."""

from __future__ import annotations

import random

import pytest

from localp2.series import (
    LaurentSeries,
    SeriesError,
    TruncatedSeries,
    VariableMismatchError,
    WindowError,
    parse_rat,
    rat,
    rat_to_str,
)


def ts(coeffs, order=None):
    return TruncatedSeries("y", [rat(c) for c in coeffs], order)


def ls(val, coeffs, order=None):
    return LaurentSeries("y", val, [rat(c) for c in coeffs], order)


def rand_series(rng, order, allow_negative_val=False):
    val = rng.randint(-3, 2) if allow_negative_val else 0
    coeffs = [rat(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order - val)]
    return LaurentSeries("y", val, coeffs, order)


class TestRational:
    def test_roundtrip(self):
        for s in ["3", "-45/8", "0", "1/1916006400", "-2489343025368827360553366826757/2217600"]:
            assert rat_to_str(parse_rat(s)) == s

    def test_canonical(self):
        assert rat_to_str(rat(2, 4)) == "1/2"
        assert rat_to_str(rat(-2, 4)) == "-1/2"
        with pytest.raises(ValueError):
            parse_rat("1/-2")
        with pytest.raises(ValueError):
            parse_rat(" 1/2")


class TestArithmetic:
    def test_difference_of_squares(self):
        # (1 + y)(1 - y) at order 3 -> 1 - y^2
        f = ts([1, 1, 0])
        g = ts([1, -1, 0])
        p = f.mul(g)
        assert p.coeff_list(0, 3) == [rat(1), rat(0), rat(-1)]

    def test_geometric_inverse(self):
        # 1 / (1 + 27y) at order 3 -> 1 - 27y + 729y^2
        f = ts([1, 27, 0])
        assert f.invert().coeff_list(0, 3) == [rat(1), rat(-27), rat(729)]

    def test_laurent_valuations_add(self):
        # y^-1 * y^2 = y
        a = LaurentSeries.monomial("y", 1, -1, 3)
        b = LaurentSeries.monomial("y", 1, 2, 5)
        p = a.mul(b)
        assert p.valuation == 1 and p.coeff(1) == 1

    def test_mul_window_rule(self):
        # order = min(Na + vb, Nb + va)
        a = ls(0, [1, 2, 3])
        b = ls(2, [1, 1])
        assert a.mul(b).order == min(3 + 2, 4 + 0)

    def test_add_clips_to_common_window(self):
        a = ls(0, [1, 2, 3, 4])
        b = ls(0, [1, 1])
        assert a.add(b).order == 2

    def test_var_mismatch(self):
        with pytest.raises(VariableMismatchError):
            ts([1]).mul(LaurentSeries("s", 0, [rat(1)]))

    def test_div_by_zero_window(self):
        with pytest.raises(WindowError):
            ts([1, 2]).div(LaurentSeries.zero("y", 5))

    def test_ring_axioms_randomized(self):
        rng = random.Random(7)
        for _ in range(60):
            f = rand_series(rng, 6, True)
            g = rand_series(rng, 6, True)
            h = rand_series(rng, 6, True)
            assert f.mul(g).agrees(g.mul(f))
            assert f.mul(g).mul(h).agrees(f.mul(g.mul(h)))
            assert f.mul(g.add(h)).agrees(f.mul(g).add(f.mul(h)))

    def test_zero_window_semantics(self):
        z = LaurentSeries.zero("y", 4)
        assert z.is_zero()
        assert z.coeff(3) == 0
        with pytest.raises(WindowError):
            z.coeff(4)


class TestCalculus:
    def test_theta_monomial(self):
        f = LaurentSeries.monomial("y", 1, 5, 9)
        assert f.theta().coeff(5) == 5

    def test_derive_shifts(self):
        f = ts([*map(rat, [3, 1, 4, 1, 5])])
        d = f.derive()
        assert d.order == 4
        assert d.coeff_list(0, 4) == [rat(1), rat(8), rat(3), rat(20)]

    def test_theta_of_geometric(self):
        # theta(1/(1+27y)) = -27y/(1+27y)^2, expanded: -27y + 1458y^2 - ...
        n = 7
        f = LaurentSeries.from_poly("y", [1, 27], n).invert()
        lhs = f.theta()
        g = LaurentSeries.from_poly("y", [1, 27], n)
        rhs = LaurentSeries.monomial("y", -27, 1, n).div(g.mul(g))
        assert lhs.agrees(rhs)
        assert lhs.coeff_list(0, 5) == [rat(0), rat(-27), rat(1458), rat(-59049), rat(2125764)]

    def test_leibniz_randomized(self):
        rng = random.Random(11)
        for _ in range(40):
            f = rand_series(rng, 6)
            g = rand_series(rng, 6)
            lhs = f.mul(g).derive()
            rhs = f.derive().mul(g).add(f.mul(g.derive()))
            assert lhs.agrees(rhs)

    def test_derive_empty_window(self):
        with pytest.raises(WindowError):
            LaurentSeries.zero("y", 0).derive()


class TestComposeReverse:
    def test_reverse_identity(self):
        f = LaurentSeries.monomial("y", 1, 1, 8)
        assert f.reverse().agrees(f)

    def test_reverse_y_plus_y2(self):
        # reverse(y + y^2) = y - y^2 + 2y^3 - 5y^4, checked by round trip
        f = LaurentSeries.from_poly("y", [0, 1, 1], 6)
        r = f.reverse()
        assert r.coeff_list(1, 5) == [rat(1), rat(-1), rat(2), rat(-5)]
        ident = f.compose(r)
        assert ident.coeff_list(0, ident.order) == [rat(0), rat(1)] + [rat(0)] * (ident.order - 2)

    def test_round_trip_randomized(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(4, 8)
            coeffs = [0, rat(rng.choice([1, -1, 2, 3]), rng.randint(1, 4))]
            coeffs += [rat(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(n - 2)]
            f = LaurentSeries("y", 0, [rat(c) for c in coeffs], n)
            r = f.reverse()
            both = f.compose(r)
            for k in range(both.order):
                assert both.coeff(k) == (1 if k == 1 else 0)

    def test_compose_needs_zero_constant(self):
        with pytest.raises(SeriesError):
            ts([1, 1]).compose(ts([1, 1]))

    def test_laurent_compose(self):
        # (1/s) composed with s = x - x^2:  1/(x - x^2) = x^-1 (1 + x + x^2 + ...)
        f = LaurentSeries.monomial("y", 1, -1, 4)
        inner = LaurentSeries.from_poly("y", [0, 1, -1], 8)
        c = f.compose(inner)
        assert c.valuation == -1
        assert c.coeff(-1) == 1 and c.coeff(0) == 1 and c.coeff(1) == 1

    def test_exp_log(self):
        f = LaurentSeries.monomial("y", 1, 1, 8)
        e = f.exp()
        assert e.coeff_list(0, 5) == [rat(1), rat(1), rat(1, 2), rat(1, 6), rat(1, 24)]
        lg = LaurentSeries.from_poly("y", [1, 1], 8).log()
        assert lg.coeff_list(1, 5) == [rat(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]
        # round trip on 2y + y^3
        g = LaurentSeries.from_poly("y", [0, 2, 0, 1], 9)
        assert g.exp().log().agrees(g)


class TestSerialization:
    def test_record_round_trip(self):
        f = ls(-2, [rat(1, 3), rat(-45, 8), 0, rat(7)], order=2)
        rec = f.to_record()
        assert rec["coeffs"][0] == "1/3"
        g = LaurentSeries.from_record(rec)
        assert g == f

    def test_truncated_embeds(self):
        f = ts([5, 6, 7])
        g = TruncatedSeries.from_laurent(LaurentSeries("y", 0, [rat(5), rat(6), rat(7)]))
        assert f == g
