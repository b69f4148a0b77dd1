import random

import pytest

from delta_forge import (
    RingParams,
    SeriesRing,
    WittRing,
    delta,
    frobenius,
    invert,
    is_constant,
    teichmueller,
)
from delta_forge.errors import InputError, NonUnitError, PrecisionExhausted
from delta_forge.selftest import find_irreducible, make_ring


def W(p, prec, m=1):
    return WittRing(RingParams(p=p, prec=prec, m=m, modulus=find_irreducible(p, m)))


class TestRingParams:
    def test_rejects_even_prime(self):
        with pytest.raises(InputError):
            RingParams(p=2, prec=4)

    def test_rejects_composite(self):
        with pytest.raises(InputError):
            RingParams(p=9, prec=4)

    def test_rejects_low_precision(self):
        with pytest.raises(InputError):
            RingParams(p=3, prec=1)

    def test_rejects_reducible_modulus(self):
        # t^2 - 1 = (t-1)(t+1) over F_5
        with pytest.raises(InputError):
            RingParams(p=5, prec=3, m=2, modulus=(4, 0, 1))

    def test_accepts_irreducible_modulus(self):
        params = RingParams(p=5, prec=3, m=2, modulus=(2, 0, 1))
        assert params.q == 25


class TestFromInt:
    def test_zero_and_one(self):
        ring = W(3, 4)
        assert ring.from_int(0).is_zero()
        assert ring.from_int(1) == ring.one

    def test_negative_reduction(self):
        # -563 mod 125
        assert W(5, 3).from_int(-563).coeffs == (62,)

    def test_ring_homomorphism(self):
        ring = W(7, 5)
        rng = random.Random(7)
        for _ in range(50):
            a, b = rng.randrange(-10**6, 10**6), rng.randrange(-10**6, 10**6)
            assert ring.from_int(a) + ring.from_int(b) == ring.from_int(a + b)
            assert ring.from_int(a) * ring.from_int(b) == ring.from_int(a * b)


class TestDelta:
    def test_constants(self):
        ring = W(3, 4)
        assert delta(ring.from_int(0)).is_zero()
        assert delta(ring.from_int(1)).is_zero()

    def test_fermat_quotient_small(self):
        # (2 - 2^3)/3 = -2 and (2 - 2^5)/5 = -6
        assert W(3, 4).from_int(2).delta() == -2
        assert W(5, 4).from_int(2).delta() == -6

    def test_precision_drop(self):
        x = W(3, 4).from_int(2)
        assert x.delta().prec == 3

    def test_precision_exhausted(self):
        ring = W(3, 4)
        x = ring.from_int(2, prec=1)
        with pytest.raises(PrecisionExhausted):
            x.delta()

    def test_matches_definition_with_frobenius(self):
        ring = W(5, 6, 2)
        rng = random.Random(11)
        for _ in range(30):
            x = ring.random_element(rng)
            p = ring.p
            assert x.delta() * p == (frobenius(x) - x**p).at_prec(x.prec - 1)


class TestFrobenius:
    def test_identity_at_m1(self):
        ring = W(3, 5)
        rng = random.Random(1)
        for _ in range(20):
            x = ring.random_element(rng)
            assert frobenius(x) == x

    def test_reduces_to_pth_power(self):
        ring = W(3, 5, 2)
        rng = random.Random(2)
        for _ in range(30):
            x = ring.random_element(rng)
            assert frobenius(x).at_prec(1) == (x**3).at_prec(1)

    def test_lifted_root_kills_modulus(self):
        ring = W(5, 4, 2)
        c = ring.params.modulus
        r = ring.phi_t
        acc = ring.from_int(c[-1])
        for coef in reversed(c[:-1]):
            acc = acc * r + ring.from_int(coef)
        assert acc.is_zero()

    def test_rejected_on_series_backend(self):
        from delta_forge.errors import BackendError

        with pytest.raises(BackendError):
            SeriesRing(5).one.frobenius()


class TestTeichmueller:
    def test_fixed_points(self):
        ring = W(5, 3)
        assert teichmueller(0, ring).is_zero()
        assert teichmueller(1, ring) == 1

    def test_small_value(self):
        # iterate x -> x^5 mod 25 starting at 2
        assert W(5, 2).teichmueller(2).coeffs == (7,)

    def test_multiplicative_order(self):
        ring = W(7, 4, 2)
        for r in ring.residue_elements():
            if all(c == 0 for c in r):
                continue
            t = ring.teichmueller(r)
            assert t ** (ring.q - 1) == 1

    def test_delta_kernel(self):
        ring = W(5, 4)
        for a in range(5):
            assert is_constant(ring.teichmueller(a))

    def test_p_is_not_constant(self):
        ring = W(5, 4)
        assert not is_constant(ring.from_int(5))


class TestInvert:
    def test_unit_inverse(self):
        # 4 * 94 = 376 = 3*125 + 1
        assert W(5, 3).from_int(4).invert().coeffs == (94,)

    def test_non_unit_rejected(self):
        with pytest.raises(NonUnitError):
            W(5, 3).from_int(10).invert()

    def test_extension_field_inverse(self):
        ring = W(3, 5, 2)
        rng = random.Random(3)
        for _ in range(30):
            x = ring.random_unit(rng)
            assert x * invert(x) == 1


class TestCarryTerm:
    def test_definition(self):
        ring = W(3, 6)
        rng = random.Random(4)
        p = ring.p
        for _ in range(30):
            x, y = ring.random_element(rng), ring.random_element(rng)
            lhs = ring.carry_term(x, y) * p
            assert lhs == (x**p + y**p - (x + y) ** p).at_prec(lhs.prec)

    def test_symmetry(self):
        ring = W(5, 4, 2)
        rng = random.Random(5)
        x, y = ring.random_element(rng), ring.random_element(rng)
        assert ring.carry_term(x, y) == ring.carry_term(y, x)


class TestMixedPrecision:
    def test_min_precision_arithmetic(self):
        ring = W(3, 6)
        x = ring.from_int(7)
        y = ring.from_int(11, prec=3)
        assert (x + y).prec == 3
        assert (x * y).prec == 3

    def test_equality_at_min_precision(self):
        ring = W(3, 6)
        assert ring.from_int(5 + 81) == ring.from_int(5, prec=4)


class TestSeriesBackend:
    def test_delta_is_derivative(self):
        R = SeriesRing(6)
        f = R.t * R.t
        assert f.delta() == R.element([0, 2])

    def test_invert_geometric(self):
        R = SeriesRing(5)
        inv = (R.one + R.t).invert()
        assert list(inv.coeffs) == [1, -1, 1, -1, 1]

    def test_leibniz(self):
        R = SeriesRing(8)
        rng = random.Random(6)
        for _ in range(30):
            x, y = R.random_element(rng), R.random_element(rng)
            assert (x * y).delta() == x.delta() * y.at_prec(7) + y.delta() * x.at_prec(7)

    def test_no_carry(self):
        R = SeriesRing(6)
        rng = random.Random(7)
        assert R.carry_term(R.random_element(rng), R.random_element(rng)).is_zero()

    def test_constant_detection(self):
        R = SeriesRing(6)
        assert R.from_rational(3).is_constant()
        assert not R.t.is_constant()
