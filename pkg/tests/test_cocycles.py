import random

import pytest

from delta_forge import (
    ClassifiedCocycle,
    DeltaMapHandle,
    GmHomParams,
    SquareMatrix,
    classified_eval,
    classified_handle,
    coboundary,
    coboundary_handle,
    cocycle_check,
    coherence_check,
    h_block_components,
    log_derivative,
    log_derivative_handle,
    random_constant_gl,
    random_gl,
    random_sl,
    recover,
)
from delta_forge.errors import BackendError, InputError, PrecisionExhausted
from delta_forge.matrices import solve_linear
from delta_forge.rings import SeriesRing
from delta_forge.selftest import make_ring


@pytest.fixture
def ring():
    return make_ring(5, 6)


def e12(ring, n=2):
    rows = [[1 if (i, j) == (0, 1) else 0 for j in range(n)] for i in range(n)]
    return SquareMatrix.from_rows(ring, rows)


class TestCoboundary:
    def test_zero_and_identity_v(self, ring):
        rng = random.Random(1)
        g = random_gl(ring, 3, rng)
        assert coboundary(SquareMatrix.zero(ring, 3), g) == SquareMatrix.zero(ring, 3)
        assert coboundary(SquareMatrix.identity(ring, 3), g) == SquareMatrix.zero(ring, 3)

    def test_diagonal_conjugation(self, ring):
        # diag(2,1) e12 diag(2,1)^{-1} = 2 e12, minus e12 leaves e12
        v = e12(ring)
        g = SquareMatrix.from_rows(ring, [[2, 0], [0, 1]])
        assert coboundary(v, g) == v

    def test_trace_free(self, ring):
        rng = random.Random(2)
        for _ in range(20):
            v = SquareMatrix(ring, [[ring.random_element(rng) for _ in range(3)]
                                    for _ in range(3)])
            g = random_gl(ring, 3, rng)
            assert coboundary(v, g).trace().is_zero()


class TestClassifiedEval:
    def test_identity_input(self, ring):
        rng = random.Random(3)
        c = ClassifiedCocycle(
            GmHomParams((ring.random_element(rng),)),
            SquareMatrix(ring, [[ring.random_element(rng) for _ in range(2)]
                                for _ in range(2)]),
        )
        assert classified_eval(c, SquareMatrix.identity(ring, 2)) \
            == SquareMatrix.zero(ring, 2)

    def test_sl_reduces_to_coboundary(self, ring):
        rng = random.Random(4)
        c = ClassifiedCocycle(
            GmHomParams((ring.one, ring.from_int(3))),
            SquareMatrix(ring, [[ring.random_element(rng) for _ in range(3)]
                                for _ in range(3)]),
        )
        for _ in range(10):
            g = random_sl(ring, 3, rng)
            got = classified_eval(c, g)
            assert got == coboundary(c.v, g).reduce_prec(got.min_prec())

    def test_cocycle_law_holds(self, ring):
        rng = random.Random(5)
        c = ClassifiedCocycle(
            GmHomParams((ring.from_int(2),)),
            SquareMatrix(ring, [[ring.random_element(rng) for _ in range(2)]
                                for _ in range(2)]),
        )
        rep = cocycle_check(classified_handle(c), ring, 2, samples=50, seed=6)
        assert rep.passed

    def test_scalar_delta_det_fails(self, ring):
        def bad(g):
            w = g.det().delta()
            return SquareMatrix.diagonal(ring, [w] * 2)

        rep = cocycle_check(DeltaMapHandle(bad, 1), ring, 2, samples=200, seed=7)
        assert not rep.passed
        assert rep.counterexample is not None


class TestHandlePrecision:
    def test_truncates_by_order(self, ring):
        c = ClassifiedCocycle(
            GmHomParams((ring.one,)), SquareMatrix.zero(ring, 2)
        )
        h = classified_handle(c)
        g = SquareMatrix.identity(ring, 2)
        assert h(g).min_prec() == ring.prec - h.order

    def test_exhaustion(self, ring):
        h = DeltaMapHandle(lambda g: g, ring.prec, "GL_n")
        with pytest.raises(PrecisionExhausted):
            h(SquareMatrix.identity(ring, 2))


class TestLogDerivative:
    def test_arithmetic_rejected(self, ring):
        with pytest.raises(BackendError):
            log_derivative(SquareMatrix.identity(ring, 2))

    def test_constant_matrix(self):
        R = SeriesRing(8)
        rng = random.Random(8)
        u = random_constant_gl(R, 3, rng)
        assert log_derivative(u) == SquareMatrix.zero(R, 3)

    def test_scalar_series(self):
        R = SeriesRing(8)
        g = SquareMatrix(R, [[R.one + R.t]])
        got = log_derivative(g)
        assert list(got[0, 0].coeffs) == [1, -1, 1, -1, 1, -1, 1]

    def test_cocycle_law(self):
        R = SeriesRing(8)
        rng = random.Random(9)
        for _ in range(10):
            g1, g2 = random_gl(R, 2, rng), random_gl(R, 2, rng)
            lhs = log_derivative(g1 * g2)
            rhs = log_derivative(g1) + g1 * log_derivative(g2) * g1.invert()
            assert lhs == rhs.reduce_prec(lhs.min_prec())


class TestRecover:
    def test_pure_coboundary(self, ring):
        rng = random.Random(10)
        v0 = SquareMatrix(ring, [[ring.random_element(rng) for _ in range(3)]
                                 for _ in range(3)])
        v0 = v0 - SquareMatrix.diagonal(ring, [v0[0, 0]] * 3)
        v, omega_eval = recover(coboundary_handle(v0), ring, 3, seed=11)
        assert v == v0
        for k in (2, 3):
            assert omega_eval(ring.from_int(k)).is_zero()

    def test_zero_map(self, ring):
        h = DeltaMapHandle(lambda g: SquareMatrix.zero(ring, 2), 0)
        v, omega_eval = recover(h, ring, 2, seed=12)
        assert v == SquareMatrix.zero(ring, 2)
        assert omega_eval(ring.from_int(3)).is_zero()

    def test_classified_roundtrip(self, ring):
        rng = random.Random(13)
        c = ClassifiedCocycle(
            GmHomParams((ring.from_int(7),)),
            SquareMatrix(ring, [[ring.random_element(rng) for _ in range(2)]
                                for _ in range(2)]),
        )
        h = classified_handle(c)
        v, omega_eval = recover(h, ring, 2, seed=14)
        assert v == c.v - SquareMatrix.diagonal(ring, [c.v[0, 0]] * 2)
        for _ in range(20):
            g = random_gl(ring, 2, rng)
            w = omega_eval(g.det())
            rebuilt = SquareMatrix.diagonal(ring, [w] * 2) + coboundary(v, g)
            assert rebuilt == h(g)

    def test_n1_rejected(self, ring):
        with pytest.raises(InputError):
            recover(coboundary_handle(SquareMatrix.zero(ring, 1)), ring, 1)


class TestBlocks:
    def test_zero_map(self, ring):
        h = DeltaMapHandle(lambda g: SquareMatrix.zero(ring, 3), 0)
        blocks = h_block_components(h, ring, 3)
        a = ring.from_int(2)
        b = [ring.from_int(1), ring.from_int(4)]
        assert blocks.alpha(a, b).is_zero()
        assert all(x.is_zero() for x in blocks.beta(a, b))
        assert all(x.is_zero() for x in blocks.gamma(a, b))
        assert blocks.epsilon(a, b) == SquareMatrix.zero(ring, 2)

    def test_gamma_independent_of_b(self, ring):
        rng = random.Random(15)
        c = ClassifiedCocycle(
            GmHomParams((ring.one,)),
            SquareMatrix(ring, [[ring.random_element(rng) for _ in range(3)]
                                for _ in range(3)]),
        )
        blocks = h_block_components(classified_handle(c), ring, 3)
        a = ring.random_unit(rng)
        b1 = [ring.random_element(rng) for _ in range(2)]
        b2 = [ring.random_element(rng) for _ in range(2)]
        g1 = blocks.gamma(a, b1)
        g2 = blocks.gamma(a, b2)
        assert all(x == y for x, y in zip(g1, g2))


class TestCoherence:
    def test_log_derivative_torus(self):
        R = SeriesRing(8)
        rep = coherence_check(log_derivative_handle(), R, 2, "torus",
                              samples=20, seed=16)
        assert rep.passed

    def test_scaled_log_derivative_all_subgroups(self):
        R = SeriesRing(8)
        nu = R.from_rational(3)
        h = DeltaMapHandle(lambda g: log_derivative(g).scale(nu), 1)
        for sub in ("torus", "sl_n", "borel"):
            assert coherence_check(h, R, 2, sub, samples=15, seed=17).passed

    def test_nonscalar_coboundary_fails_conjugated_torus(self):
        R = SeriesRing(8)
        rng = random.Random(18)
        cb = coboundary_handle(e12(R, 2))
        failed = False
        for k in range(10):
            u = random_constant_gl(R, 2, rng)
            rep = coherence_check(cb, R, 2, "conjugated-torus",
                                  samples=10, seed=f"19:{k}", u=u)
            if not rep.passed:
                failed = True
                break
        assert failed

    def test_conjugated_torus_needs_constant_u(self):
        R = SeriesRing(8)
        u = SquareMatrix.from_rows(R, [[R.one + R.t, R.zero], [R.zero, R.one]])
        with pytest.raises(InputError):
            coherence_check(log_derivative_handle(), R, 2, "conjugated-torus",
                            samples=5, seed=20, u=u)


class TestSolveLinear:
    def test_simple_system(self, ring):
        rows = [[ring.from_int(2), ring.from_int(1)],
                [ring.from_int(1), ring.from_int(1)]]
        rhs = [ring.from_int(5), ring.from_int(3)]
        x = solve_linear(ring, rows, rhs)
        assert x[0] == 2 and x[1] == 1

    def test_singular_pivot(self, ring):
        from delta_forge.errors import SingularPivotError

        rows = [[ring.from_int(5)]]
        with pytest.raises(SingularPivotError):
            solve_linear(ring, rows, [ring.from_int(5)])

    def test_inconsistent(self, ring):
        from delta_forge.errors import InconsistentSystemError

        rows = [[ring.one], [ring.one]]
        with pytest.raises(InconsistentSystemError):
            solve_linear(ring, rows, [ring.one, ring.from_int(2)])
