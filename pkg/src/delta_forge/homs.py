"""Delta-homomorphism families on the additive and multiplicative groups.

Covers the additive families sum lambda_i phi^i(a) (resp. lambda_i
delta^i(a) on the series backend), the log-like series map ``psi`` from
units to the additive group, the induced multiplicative-to-additive
families, the twisted cocycles mu(1 - a^s), and a seeded black-box
homomorphism checker.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import BackendError, DeltaForgeError, InputError, NonUnitError
from .rings import ARITHMETIC
from .serialize import elem_to_json

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative-to-additive"
TWISTED = "twisted"


def _trim(lam):
    lam = list(lam)
    while lam and lam[-1].is_zero():
        lam.pop()
    return tuple(lam)


@dataclass(frozen=True)
class GaHomParams:
    """Coefficients lambda_0..lambda_r of an additive-group family."""

    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", _trim(self.lam))

    @property
    def order(self) -> int:
        return max(len(self.lam) - 1, 0)


@dataclass(frozen=True)
class GmHomParams:
    """Coefficients lambda_0..lambda_r applied to psi (resp. the
    logarithmic derivative) of a unit."""

    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", _trim(self.lam))

    @property
    def order(self) -> int:
        # one delta inside psi / dlog, plus one per extra composition
        return len(self.lam)


@dataclass(frozen=True)
class TwistedCocycleParams:
    mu: object
    s: int

    def __post_init__(self):
        if self.s == 0:
            raise InputError("twist exponent s must be nonzero")


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def psi(a):
    """Series delta-homomorphism from units to the additive group:

        sum_{n>=1} (-1)^(n-1) (p^(n-1)/n) (delta a / a^p)^n

    Summation stops once the guaranteed term valuation
    n - 1 - v_p(n) + n*val(delta a / a^p) reaches the working precision;
    the result carries one digit less than the input.
    """
    ring = a.ring
    if ring.kind != ARITHMETIC:
        raise BackendError("psi is only defined on the arithmetic backend")
    if not a.is_unit():
        raise NonUnitError(a)
    p = ring.p
    u = a.delta() * (a**p).invert()
    target = u.prec
    vu = u.valuation()
    acc = ring.from_int(0, prec=target)
    un = ring.from_int(1, prec=target)
    cap = p * (ring.prec + 2)
    for n in range(1, cap + 1):
        un = un * u
        e = _vp(n, p)
        bound = n - 1 - e + n * vu
        if bound >= target:
            continue
        unit_part = ring.from_int(n // p**e, prec=target).invert()
        coef = ring.from_int(p ** (n - 1 - e), prec=target) * unit_part
        if n % 2 == 0:
            coef = -coef
        term = coef * un
        if term.valuation() < min(bound, target):
            raise DeltaForgeError(
                f"psi term {n} has valuation below its bound {bound}"
            )
        acc = acc + term
    return acc


def ga_hom(params: GaHomParams, a):
    """Additive family: sum lambda_i phi^i(a), or sum lambda_i delta^i(a)
    on the series backend."""
    ring = a.ring
    acc = None
    x = a
    for i, lam in enumerate(params.lam):
        if i > 0:
            x = x.frobenius() if ring.kind == ARITHMETIC else x.delta()
        term = lam * x
        acc = term if acc is None else acc + term
    if acc is None:
        return ring.zero
    return acc


def gm_hom(params: GmHomParams, a):
    """Multiplicative-to-additive family built on psi (arithmetic) or on
    the logarithmic derivative delta(a)/a (series backend)."""
    ring = a.ring
    if not a.is_unit():
        raise NonUnitError(a)
    if not params.lam:
        return ring.zero
    base = psi(a) if ring.kind == ARITHMETIC else a.delta() * a.invert()
    return ga_hom(GaHomParams(params.lam), base)


def twisted_cocycle(params: TwistedCocycleParams, a):
    """mu * (1 - a^s); satisfies f(a1 a2) = f(a1) + a1^s f(a2)."""
    if not a.is_unit():
        raise NonUnitError(a)
    one = a.ring.one
    return params.mu * (one - a**params.s)


@dataclass
class HomReport:
    passed: bool
    samples: int
    law: str
    counterexample: dict | None = field(default=None)

    def to_dict(self):
        out = {"pass": self.passed, "samples": self.samples, "law": self.law}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def check_hom(f, law: str, ring, samples: int = 1000, seed: int = 0,
              s: int | None = None) -> HomReport:
    """Sampled check of a homomorphism law for a black-box evaluator.

    Per-sample RNG streams are derived from (seed, index), so the run is
    deterministic and order-independent.  Equality is tested at the
    minimum precision of the two sides.  The first counterexample stops
    the search.
    """
    if law == TWISTED and s is None:
        raise InputError("twisted law requires the exponent s")
    if law not in (ADDITIVE, MULTIPLICATIVE, TWISTED):
        raise InputError(f"unknown law {law!r}")
    for idx in range(samples):
        rng = random.Random(f"{seed}:{idx}")
        if law == ADDITIVE:
            a1 = ring.random_element(rng)
            a2 = ring.random_element(rng)
            combined = a1 + a2
        else:
            a1 = ring.random_unit(rng)
            a2 = ring.random_unit(rng)
            combined = a1 * a2
        try:
            lhs = f(combined)
            f1, f2 = f(a1), f(a2)
        except DeltaForgeError as exc:
            exc.sample = (elem_to_json(a1), elem_to_json(a2))
            raise
        if law == TWISTED:
            rhs = f1 + a1**s * f2
        else:
            rhs = f1 + f2
        if lhs != rhs:
            return HomReport(
                passed=False,
                samples=idx + 1,
                law=law,
                counterexample={
                    "a1": elem_to_json(a1),
                    "a2": elem_to_json(a2),
                    "lhs": elem_to_json(lhs),
                    "rhs": elem_to_json(rhs),
                },
            )
    return HomReport(passed=True, samples=samples, law=law)
