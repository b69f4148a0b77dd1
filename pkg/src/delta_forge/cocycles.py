"""Classical delta-cocycles on GL_n and their verification.

Builds coboundaries g v g^{-1} - v, the classified cocycles
omega(det g) 1_n + g v g^{-1} - v, and the logarithmic derivative
(delta g) g^{-1} on the series backend.  Black-box maps are wrapped as
DeltaMapHandle with a declared order; the handle truncates outputs to
input precision minus the order, which keeps every downstream equality
honest.  ``recover`` inverts the classification constructively by linear
solving on SL_n samples, where the determinant part contributes nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DeltaForgeError, BackendError, InputError, PrecisionExhausted
from .homs import GmHomParams, gm_hom
from .matrices import (
    SquareMatrix,
    random_constant_gl,
    random_gl,
    random_sl,
    solve_linear,
)
from .rings import KOLCHIN

TORUS = "torus"
SL = "sl_n"
BOREL = "borel"
CONJUGATED_TORUS = "conjugated-torus"


@dataclass(frozen=True)
class ClassifiedCocycle:
    """Parameters (omega, v) of a classified cocycle."""

    omega: GmHomParams
    v: SquareMatrix

    @property
    def order(self) -> int:
        return self.omega.order


@dataclass(frozen=True)
class DeltaMapHandle:
    """Black-box matrix map of a declared order.

    Calling the handle evaluates the wrapped map and truncates every
    entry to (input precision - order); precision below one digit raises.
    """

    evaluator: object
    order: int
    domain: str = "GL_n"

    def __call__(self, g: SquareMatrix) -> SquareMatrix:
        out_prec = g.min_prec() - self.order
        if out_prec < 1:
            raise PrecisionExhausted(
                f"order-{self.order} map needs input precision > {self.order}"
            )
        return self.evaluator(g).reduce_prec(out_prec)


@dataclass
class CocycleReport:
    passed: bool
    samples: int
    precision: int
    counterexample: dict | None = field(default=None)

    def to_dict(self):
        out = {
            "pass": self.passed,
            "samples": self.samples,
            "precision": self.precision,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def coboundary(v: SquareMatrix, g: SquareMatrix) -> SquareMatrix:
    """g v g^{-1} - v; vanishes iff v is scalar plus central noise."""
    return g * v * g.invert() - v


def classified_eval(c: ClassifiedCocycle, g: SquareMatrix) -> SquareMatrix:
    """omega(det g) 1_n + g v g^{-1} - v."""
    w = gm_hom(c.omega, g.det())
    n = g.n
    scalar = SquareMatrix.diagonal(g.ring, [w] * n)
    return scalar + coboundary(c.v, g)


def classified_handle(c: ClassifiedCocycle) -> DeltaMapHandle:
    return DeltaMapHandle(lambda g: classified_eval(c, g), c.order, "GL_n")


def coboundary_handle(v: SquareMatrix) -> DeltaMapHandle:
    return DeltaMapHandle(lambda g: coboundary(v, g), 0, "GL_n")


def log_derivative(g: SquareMatrix) -> SquareMatrix:
    """Kolchin logarithmic derivative (delta g) g^{-1}."""
    if g.ring.kind != KOLCHIN:
        raise BackendError("log_derivative lives on the series backend")
    return g.map(lambda e: e.delta()) * g.invert()


def log_derivative_handle() -> DeltaMapHandle:
    return DeltaMapHandle(log_derivative, 1, "GL_n")


def _matrix_json(m: SquareMatrix):
    return m.to_json()


def cocycle_check(f: DeltaMapHandle, ring, n: int, samples: int = 1000,
                  seed: int = 0) -> CocycleReport:
    """Check f(g1 g2) = f(g1) + g1 f(g2) g1^{-1} on seeded GL_n pairs."""
    precision = None
    for idx in range(samples):
        rng = random.Random(f"{seed}:{idx}")
        g1 = random_gl(ring, n, rng)
        g2 = random_gl(ring, n, rng)
        lhs = f(g1 * g2)
        rhs = f(g1) + g1 * f(g2) * g1.invert()
        precision = min(lhs.min_prec(), rhs.min_prec())
        if not lhs == rhs:
            return CocycleReport(
                passed=False,
                samples=idx + 1,
                precision=precision,
                counterexample={
                    "g1": _matrix_json(g1),
                    "g2": _matrix_json(g2),
                    "lhs": _matrix_json(lhs),
                    "rhs": _matrix_json(rhs),
                },
            )
    if precision is None:
        precision = 0
    return CocycleReport(passed=True, samples=samples, precision=precision)


def recover(f: DeltaMapHandle, ring, n: int, seed: int = 0,
            extra_samples: int = 2):
    """Recover (v, omega) from a claimed classified cocycle.

    Samples f on elementary SL_n matrices 1 + e_kl (plus a few random
    SL_n points), where omega(det) = omega(1) = 0, and solves the linear
    system g v - v g = f(g) g for the n^2 entries of v.  The kernel of
    the coboundary map is the scalar line; the normalization v[0][0] = 0
    picks the canonical representative.  Returns (v, omega_eval) with
    omega_eval(a) reading a diagonal entry of f(diag(a,1,...,1)) minus
    the recovered coboundary.
    """
    if n < 2:
        raise InputError("recover needs n >= 2")
    points = []
    ident = SquareMatrix.identity(ring, n)
    for k in range(n):
        for l in range(n):
            if k != l:
                rows = [list(r) for r in ident.rows]
                rows[k][l] = ring.one
                points.append(SquareMatrix(ring, rows))
    rng = random.Random(f"{seed}:recover")
    for _ in range(extra_samples):
        points.append(random_sl(ring, n, rng))

    rows, rhs = [], []
    zero = ring.zero
    for g in points:
        fg = f(g)
        target = fg * g
        for i in range(n):
            for l in range(n):
                coeffs = [zero] * (n * n)
                for k in range(n):
                    coeffs[k * n + l] = coeffs[k * n + l] + g[i, k]
                    coeffs[i * n + k] = coeffs[i * n + k] - g[k, l]
                rows.append(coeffs)
                rhs.append(target[i, l])
    # normalization: the solution is unique only modulo scalars
    norm = [zero] * (n * n)
    norm[0] = ring.one
    rows.append(norm)
    rhs.append(zero)

    sol = solve_linear(ring, rows, rhs)
    v = SquareMatrix(ring, [[sol[i * n + j] for j in range(n)] for i in range(n)])

    def omega_eval(a):
        d = SquareMatrix.diagonal(
            ring, [a] + [ring.one.at_prec(a.prec)] * (n - 1)
        )
        return (f(d) - coboundary(v, d).reduce_prec(f(d).min_prec()))[0, 0]

    return v, omega_eval


@dataclass(frozen=True)
class HBlockComponents:
    """Block reading of a handle on the subgroup [[a, b], [0, 1_{n-1}]]."""

    handle: DeltaMapHandle
    ring: object
    n: int

    def point(self, a, b):
        n, ring = self.n, self.ring
        one, zero = ring.one, ring.zero
        rows = [[a] + list(b)]
        for i in range(1, n):
            rows.append([zero] * i + [one] + [zero] * (n - 1 - i))
        return SquareMatrix(ring, rows)

    def _eval(self, a, b):
        return self.handle(self.point(a, b))

    def alpha(self, a, b):
        return self._eval(a, b)[0, 0]

    def beta(self, a, b):
        fv = self._eval(a, b)
        return [fv[0, j] for j in range(1, self.n)]

    def gamma(self, a, b):
        fv = self._eval(a, b)
        return [fv[j, 0] for j in range(1, self.n)]

    def epsilon(self, a, b):
        return self._eval(a, b).block(1, self.n, 1, self.n)


def h_block_components(f: DeltaMapHandle, ring, n: int) -> HBlockComponents:
    if n < 2:
        raise InputError("block components need n >= 2")
    return HBlockComponents(f, ring, n)


def _random_torus_point(ring, n, rng):
    return SquareMatrix.diagonal(ring, [ring.random_unit(rng) for _ in range(n)])


def _random_borel_point(ring, n, rng):
    rows = []
    for i in range(n):
        row = [ring.zero] * i
        row.append(ring.random_unit(rng))
        row.extend(ring.random_element(rng) for _ in range(n - 1 - i))
        rows.append(row)
    return SquareMatrix(ring, rows)


def _is_diagonal(m):
    return all(
        m[i, j].is_zero() for i in range(m.n) for j in range(m.n) if i != j
    )


def _is_upper(m):
    return all(m[i, j].is_zero() for i in range(m.n) for j in range(i))


def coherence_check(f: DeltaMapHandle, ring, n: int, subgroup: str,
                    samples: int = 100, seed: int = 0,
                    u: SquareMatrix | None = None) -> CocycleReport:
    """Check f maps the named constant-defined subgroup into its Lie
    algebra: diagonal (torus), trace zero (sl_n), upper triangular
    (borel), or u^{-1} (diagonal) u for a conjugated torus."""
    if subgroup == CONJUGATED_TORUS:
        if u is None:
            raise InputError("conjugated-torus needs the conjugating matrix u")
        for r in u.rows:
            for e in r:
                if not e.is_constant():
                    raise InputError("conjugating matrix must have constant entries")
        uinv = u.invert()
    precision = None
    for idx in range(samples):
        rng = random.Random(f"{seed}:{idx}")
        if subgroup == TORUS:
            g = _random_torus_point(ring, n, rng)
            val = f(g)
            ok = _is_diagonal(val)
        elif subgroup == SL:
            g = random_sl(ring, n, rng)
            val = f(g)
            ok = val.trace().is_zero()
        elif subgroup == BOREL:
            g = _random_borel_point(ring, n, rng)
            val = f(g)
            ok = _is_upper(val)
        elif subgroup == CONJUGATED_TORUS:
            d = _random_torus_point(ring, n, rng)
            g = uinv * d * u
            val = f(g)
            ok = _is_diagonal(u * val * uinv)
        else:
            raise InputError(f"unknown subgroup {subgroup!r}")
        precision = val.min_prec()
        if not ok:
            return CocycleReport(
                passed=False,
                samples=idx + 1,
                precision=precision,
                counterexample={
                    "subgroup": subgroup,
                    "g": _matrix_json(g),
                    "value": _matrix_json(val),
                },
            )
    return CocycleReport(passed=True, samples=samples, precision=precision or 0)
