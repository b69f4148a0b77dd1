"""Exact ring backends behind a common delta-ring interface.

Two backends:

* ``WittRing`` -- the truncated unramified extension W(F_{p^m})/p^N,
  realized as (Z/p^N)[t]/(Mtilde(t)) for a fixed monic lift Mtilde of an
  irreducible degree-m polynomial over F_p.  Carries the Frobenius lift
  ``phi`` and the p-derivation ``delta x = (phi(x) - x^p)/p``.
* ``SeriesRing`` -- Q[[t]]/t^M with exact rational coefficients and the
  derivation d/dt.

Every element tracks its own effective precision (p-adic digits for the
arithmetic backend, series order for the series backend); mixed-precision
arithmetic truncates to the minimum, and ``delta`` consumes one digit.
Elements are immutable values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import BackendError, InputError, NonUnitError, PrecisionExhausted

ARITHMETIC = "arithmetic"
KOLCHIN = "kolchin"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# F_p[t] helpers (dense low-to-high coefficient lists), used only for
# modulus validation and inversion mod p.

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_divmod(out, mod, p)[1]


def _fp_divmod(a, b, p):
    a = list(a)
    db, dm = len(_fp_trim(list(b))) - 1, len(_fp_trim(list(a))) - 1
    binv = pow(b[db], -1, p)
    q = [0] * max(dm - db + 1, 0)
    for k in range(dm - db, -1, -1):
        c = (a[k + db] * binv) % p
        q[k] = c
        if c:
            for i in range(db + 1):
                a[k + i] = (a[k + i] - c * b[i]) % p
    return q, _fp_trim(a[:db])


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def _fp_powmod(base, e, mod, p):
    result = [1]
    base = _fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _fp_is_irreducible(coeffs, p):
    """Rabin test for a monic polynomial over F_p given low-to-high."""
    m = len(coeffs) - 1
    if m < 1:
        return False
    x = [0, 1]
    # t^(p^m) == t mod f
    if _fp_trim(list(_fp_powmod(x, p**m, coeffs, p))) != [0, 1]:
        return False
    d = 2
    mm = m
    prime_divs = set()
    while d * d <= mm:
        if mm % d == 0:
            prime_divs.add(d)
            while mm % d == 0:
                mm //= d
        d += 1
    if mm > 1:
        prime_divs.add(mm)
    for q in prime_divs:
        h = _fp_powmod(x, p ** (m // q), coeffs, p)
        h = _fp_trim([(h[i] if i < len(h) else 0) - (1 if i == 1 else 0)
                      for i in range(max(len(h), 2))])
        h = [c % p for c in h]
        g = _fp_gcd(h, coeffs, p)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Z[t] helpers with reduction by a fixed monic modulus (no p-power
# reduction): used where exact divisibility by p must be visible.

def _zpoly_mul_reduce(a, b, mlift):
    m = len(mlift) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    for d in range(len(out) - 1, m - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for i in range(m):
                out[d - m + i] -= c * mlift[i]
    return out[:m] + [0] * (m - len(out))


def _z2_pow(a0, a1, e, c0, c1):
    # exact integer power for m=2 with t^2 = -c1 t - c0
    r0, r1 = 1, 0
    while e:
        if e & 1:
            hi = r1 * a1
            r0, r1 = r0 * a0 - hi * c0, r0 * a1 + r1 * a0 - hi * c1
        hi = a1 * a1
        a0, a1 = a0 * a0 - hi * c0, 2 * a0 * a1 - hi * c1
        e >>= 1
    return r0, r1


def _zpoly_pow_reduce(a, e, mlift):
    m = len(mlift) - 1
    result = [1] + [0] * (m - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _zpoly_mul_reduce(result, base, mlift)
        base = _zpoly_mul_reduce(base, base, mlift)
        e >>= 1
    return result


@dataclass(frozen=True)
class RingParams:
    """Parameters of a truncated Witt ring W(F_{p^m}) mod p^prec."""

    p: int
    prec: int
    m: int = 1
    modulus: tuple = ()  # F_p coefficients low-to-high, length m+1, monic

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise InputError(f"p must be an odd prime, got {self.p}")
        if self.prec < 2:
            raise InputError(f"prec must be >= 2, got {self.prec}")
        if self.m < 1:
            raise InputError(f"m must be >= 1, got {self.m}")
        if self.m == 1:
            if self.modulus and tuple(self.modulus) != (0, 1):
                raise InputError("m=1 takes no modulus")
            object.__setattr__(self, "modulus", (0, 1))
            return
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise InputError(
                f"modulus must be monic of degree m={self.m}, got {self.modulus}"
            )
        if not _fp_is_irreducible(list(mod), self.p):
            raise InputError(f"modulus {self.modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.m


class WittElement:
    """Element of a WittRing: polynomial coefficients mod p^prec.

    Canonical representatives live in [0, p^prec).  Instances are
    immutable; all arithmetic returns fresh elements at the minimum
    precision of the operands.
    """

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec):
        self.ring = ring
        self.coeffs = coeffs
        self.prec = prec

    # -- basic structure ----------------------------------------------------

    def __repr__(self):
        return f"WittElement({list(self.coeffs)}, p={self.ring.p}, prec={self.prec})"

    def at_prec(self, prec):
        if prec > self.prec:
            raise PrecisionExhausted(
                f"cannot raise precision {self.prec} to {prec}"
            )
        if prec < 1:
            raise PrecisionExhausted("precision dropped below 1")
        if prec == self.prec:
            return self
        pk = self.ring.p**prec
        return WittElement(self.ring, tuple(c % pk for c in self.coeffs), prec)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_unit(self):
        p = self.ring.p
        return any(c % p for c in self.coeffs)

    def valuation(self):
        """min p-adic valuation over coefficients; prec when zero."""
        p, best = self.ring.p, self.prec
        for c in self.coeffs:
            if c:
                v = 0
                while c % p == 0:
                    c //= p
                    v += 1
                best = min(best, v)
        return best

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other, prec=self.prec)
        if not isinstance(other, WittElement) or (
            other.ring is not self.ring and other.ring.params != self.ring.params
        ):
            return NotImplemented
        prec = min(self.prec, other.prec)
        pk = self.ring.p**prec
        return all(
            a % pk == b % pk for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, WittElement):
            if other.ring is self.ring or other.ring.params == self.ring.params:
                return other
            return None
        if isinstance(other, int):
            return self.ring.from_int(other, prec=self.prec)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        pk = self.ring.p**prec
        return WittElement(
            self.ring, tuple((a + b) % pk for a, b in zip(self.coeffs, o.coeffs)), prec
        )

    __radd__ = __add__

    def __neg__(self):
        pk = self.ring.p**self.prec
        return WittElement(self.ring, tuple(-c % pk for c in self.coeffs), self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        pk = self.ring.p**prec
        return WittElement(
            self.ring, tuple((a - b) % pk for a, b in zip(self.coeffs, o.coeffs)), prec
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = self.ring
        prec = min(self.prec, o.prec)
        pk = ring.p**prec
        if ring.m == 1:
            return WittElement(ring, ((self.coeffs[0] * o.coeffs[0]) % pk,), prec)
        if ring.m == 2:
            # inline t^2 = -c1 t - c0 reduction
            a0, a1 = self.coeffs
            b0, b1 = o.coeffs
            hi = a1 * b1
            c0, c1 = ring.mlift[0], ring.mlift[1]
            return WittElement(
                ring,
                ((a0 * b0 - hi * c0) % pk, (a0 * b1 + a1 * b0 - hi * c1) % pk),
                prec,
            )
        raw = _zpoly_mul_reduce(self.coeffs, o.coeffs, ring.mlift)
        return WittElement(ring, tuple(c % pk for c in raw), prec)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.invert() ** (-e)
        ring = self.ring
        if ring.m == 1:
            pk = ring.p**self.prec
            return WittElement(ring, (pow(self.coeffs[0], e, pk),), self.prec)
        if ring.m == 2 and e <= ring.p:
            pk = ring.p**self.prec
            r0, r1 = _z2_pow(*self.coeffs, e, ring.mlift[0], ring.mlift[1])
            return WittElement(ring, (r0 % pk, r1 % pk), self.prec)
        result = ring.one.at_prec(self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def invert(self):
        ring, p = self.ring, self.ring.p
        if not self.is_unit():
            raise NonUnitError(self)
        pk = p**self.prec
        if ring.m == 1:
            return WittElement(ring, (pow(self.coeffs[0], -1, pk),), self.prec)
        # invert mod p by extended Euclid in F_p[t], then Hensel-lift
        inv_p = ring._fp_invert([c % p for c in self.coeffs])
        b = WittElement(ring, tuple(inv_p + [0] * (ring.m - len(inv_p))), self.prec)
        known = 1
        while known < self.prec:
            b = b * (2 - self * b)
            known *= 2
        return b

    # -- delta structure ----------------------------------------------------

    def frobenius(self):
        ring = self.ring
        if ring.m == 1:
            return self
        # Horner evaluation of the coefficient polynomial at phi(t)
        phit = ring.phi_t.at_prec(self.prec)
        acc = ring.from_int(self.coeffs[-1], prec=self.prec)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * phit + ring.from_int(c, prec=self.prec)
        return acc

    def _div_p_exact(self):
        p = self.ring.p
        if any(c % p for c in self.coeffs):
            raise InputError(f"element not divisible by p: {self!r}")
        if self.prec < 2:
            raise PrecisionExhausted("division by p needs prec >= 2")
        pk = p ** (self.prec - 1)
        return WittElement(
            self.ring, tuple((c // p) % pk for c in self.coeffs), self.prec - 1
        )

    def delta(self):
        """Fermat-quotient operator (phi(x) - x^p)/p; consumes one digit."""
        if self.prec < 2:
            raise PrecisionExhausted("delta needs prec >= 2")
        ring = self.ring
        if ring.m == 1:
            p, pk = ring.p, ring.p**self.prec
            x = self.coeffs[0]
            d = (x - pow(x, p, pk)) % pk
            return WittElement(ring, (d // p,), self.prec - 1)
        return (self.frobenius() - self**ring.p)._div_p_exact()

    def is_constant(self):
        if self.prec < 2:
            raise PrecisionExhausted("is_constant needs prec >= 2")
        return self.delta().is_zero()


class WittRing:
    """Truncated Witt ring W(F_{p^m}) mod p^prec with Frobenius lift."""

    kind = ARITHMETIC

    def __init__(self, params: RingParams):
        self.params = params
        self.p = params.p
        self.prec = params.prec
        self.m = params.m
        self.q = params.q
        self.pN = params.p**params.prec
        # monic integer lift of the modulus with coefficients in [0, p)
        self.mlift = [c % params.p for c in params.modulus]
        self.zero = WittElement(self, (0,) * self.m, self.prec)
        self.one = WittElement(self, (1,) + (0,) * (self.m - 1), self.prec)
        self.phi_t = self._lift_frobenius_root() if self.m > 1 else None

    def __repr__(self):
        return f"WittRing(p={self.p}, prec={self.prec}, m={self.m})"

    def _lift_frobenius_root(self):
        """Hensel-lift the root of the modulus congruent to t^p mod p.

        Newton iteration r <- r - M(r)/M'(r); M'(r) is a unit because the
        modulus is separable mod p.
        """
        t = self.element([0, 1])
        r = t**self.p
        dcoeffs = [i * c for i, c in enumerate(self.mlift)][1:]

        def ev(coeffs, x):
            acc = self.from_int(coeffs[-1])
            for c in reversed(coeffs[:-1]):
                acc = acc * x + self.from_int(c)
            return acc

        for _ in range(self.prec.bit_length() + 1):
            fr = ev(self.mlift, r)
            if fr.is_zero():
                break
            r = r - fr * ev(dcoeffs, r).invert()
        if not ev(self.mlift, r).is_zero():
            raise InputError("Frobenius lift failed; modulus not separable?")
        return r

    # -- constructors -------------------------------------------------------

    def from_int(self, n: int, prec=None) -> WittElement:
        prec = self.prec if prec is None else prec
        if prec < 1 or prec > self.prec:
            raise PrecisionExhausted(f"precision {prec} outside [1, {self.prec}]")
        return WittElement(self, (n % self.p**prec,) + (0,) * (self.m - 1), prec)

    def element(self, coeffs, prec=None) -> WittElement:
        prec = self.prec if prec is None else prec
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise InputError(f"coefficient list longer than m={self.m}")
        coeffs += [0] * (self.m - len(coeffs))
        pk = self.p**prec
        return WittElement(self, tuple(c % pk for c in coeffs), prec)

    def teichmueller(self, a) -> WittElement:
        """Multiplicative lift of a residue-field element.

        Iterates x -> x^q; each step gains one digit, so prec-1 steps
        stabilize mod p^prec.
        """
        if isinstance(a, WittElement):
            coeffs = [c % self.p for c in a.coeffs]
        elif isinstance(a, int):
            coeffs = [a % self.p]
        else:
            coeffs = [c % self.p for c in a]
        x = self.element(coeffs)
        for _ in range(self.prec - 1):
            x = x**self.q
        return x

    def carry_term(self, x: WittElement, y: WittElement) -> WittElement:
        """C_p(x,y) = (x^p + y^p - (x+y)^p)/p by exact integer arithmetic."""
        prec = min(x.prec, y.prec)
        if prec < 2:
            raise PrecisionExhausted("carry term needs prec >= 2")
        xl, yl = list(x.coeffs), list(y.coeffs)
        sl = [a + b for a, b in zip(xl, yl)]
        if self.m == 1:
            num = xl[0] ** self.p + yl[0] ** self.p - sl[0] ** self.p
            coeffs = [num // self.p]
        elif self.m == 2:
            c0, c1 = self.mlift[0], self.mlift[1]
            xp = _z2_pow(xl[0], xl[1], self.p, c0, c1)
            yp = _z2_pow(yl[0], yl[1], self.p, c0, c1)
            sp = _z2_pow(sl[0], sl[1], self.p, c0, c1)
            coeffs = [(a + b - c) // self.p for a, b, c in zip(xp, yp, sp)]
        else:
            xp = _zpoly_pow_reduce(xl, self.p, self.mlift)
            yp = _zpoly_pow_reduce(yl, self.p, self.mlift)
            sp = _zpoly_pow_reduce(sl, self.p, self.mlift)
            coeffs = [(a + b - c) // self.p for a, b, c in zip(xp, yp, sp)]
        pk = self.p ** (prec - 1)
        return WittElement(self, tuple(c % pk for c in coeffs), prec - 1)

    # -- residue field / sampling -------------------------------------------

    def residue_elements(self):
        """All q residue-field elements as coefficient tuples mod p."""
        out = [()]
        for _ in range(self.m):
            out = [pre + (c,) for pre in out for c in range(self.p)]
        return [tuple(t) for t in out]

    def random_element(self, rng: random.Random, prec=None) -> WittElement:
        prec = self.prec if prec is None else prec
        pk = self.p**prec
        return WittElement(
            self, tuple(rng.randrange(pk) for _ in range(self.m)), prec
        )

    def random_unit(self, rng: random.Random, prec=None) -> WittElement:
        while True:
            x = self.random_element(rng, prec)
            if x.is_unit():
                return x

    def _fp_invert(self, coeffs):
        # extended Euclid in F_p[t] against the modulus
        p = self.p
        r0, r1 = list(self.mlift), _fp_trim(list(coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _fp_divmod(r0, r1, p)
            r0, r1 = r1, r
            qs1 = [0] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, qi in enumerate(q):
                for j, sj in enumerate(s1):
                    qs1[i + j] = (qs1[i + j] + qi * sj) % p
            news = [(s0[i] if i < len(s0) else 0) - (qs1[i] if i < len(qs1) else 0)
                    for i in range(max(len(s0), len(qs1)))]
            s0, s1 = s1, [c % p for c in news]
        # r0 is the gcd, a nonzero constant
        c = pow(r0[0], -1, p)
        return [(c * si) % p for si in s0]


# ---------------------------------------------------------------------------


def _int_coeffs(coeffs, k):
    """(integer coefficient list, common denominator) for a coefficient
    prefix; exact since every entry divides the lcm."""
    d = 1
    for c in coeffs[:k]:
        cd = c.denominator
        if cd != 1:
            d = d * cd // gcd(d, cd)
    if d == 1:
        return [c.numerator for c in coeffs[:k]], 1
    return [c.numerator * (d // c.denominator) for c in coeffs[:k]], d


class SeriesElement:
    """Truncated power series over Q with exact rational coefficients."""

    __slots__ = ("ring", "coeffs", "trunc")

    def __init__(self, ring, coeffs, trunc):
        self.ring = ring
        self.coeffs = coeffs
        self.trunc = trunc

    @property
    def prec(self):
        # uniform name so generic code can treat both backends alike
        return self.trunc

    def __repr__(self):
        return f"SeriesElement({[str(c) for c in self.coeffs]}, trunc={self.trunc})"

    def at_prec(self, trunc):
        if trunc > self.trunc:
            raise PrecisionExhausted(
                f"cannot raise truncation {self.trunc} to {trunc}"
            )
        if trunc < 1:
            raise PrecisionExhausted("truncation dropped below 1")
        if trunc == self.trunc:
            return self
        return SeriesElement(self.ring, self.coeffs[:trunc], trunc)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_unit(self):
        return self.coeffs[0] != 0

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.trunc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.from_rational(other, trunc=self.trunc)
        if not isinstance(other, SeriesElement):
            return NotImplemented
        k = min(self.trunc, other.trunc)
        return self.coeffs[:k] == other.coeffs[:k]

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.from_rational(other, trunc=self.trunc)
        if isinstance(other, SeriesElement):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.trunc, o.trunc)
        return SeriesElement(
            self.ring, tuple(a + b for a, b in zip(self.coeffs[:k], o.coeffs[:k])), k
        )

    __radd__ = __add__

    def __neg__(self):
        return SeriesElement(self.ring, tuple(-c for c in self.coeffs), self.trunc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.trunc, o.trunc)
        return SeriesElement(
            self.ring, tuple(a - b for a, b in zip(self.coeffs[:k], o.coeffs[:k])), k
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.trunc, o.trunc)
        # clear denominators and convolve in plain ints; stdlib Fraction
        # arithmetic dominates otherwise
        a, da = _int_coeffs(self.coeffs, k)
        b, db = _int_coeffs(o.coeffs, k)
        out = [0] * k
        for i in range(k):
            ai = a[i]
            if ai:
                for j in range(k - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        d = da * db
        return SeriesElement(
            self.ring, tuple(Fraction(c, d) for c in out), k
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.invert() ** (-e)
        result = self.ring.one.at_prec(self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def invert(self):
        if not self.is_unit():
            raise NonUnitError(self)
        k = self.trunc
        a, da = _int_coeffs(self.coeffs, k)
        # B[n] = b[n] * a0^(n+1) stays integral along the recursion
        a0 = a[0]
        bint = [1]
        for n in range(1, k):
            acc = 0
            pw = 1
            for i in range(1, n + 1):
                if a[i]:
                    acc += a[i] * bint[n - i] * pw
                pw *= a0
            bint.append(-acc)
        pw = a0
        out = []
        for n in range(k):
            out.append(Fraction(bint[n] * da, pw))
            pw *= a0
        return SeriesElement(self.ring, tuple(out), k)

    def delta(self):
        """Formal derivative d/dt; loses one order of information."""
        if self.trunc < 2:
            raise PrecisionExhausted("delta needs trunc >= 2")
        return SeriesElement(
            self.ring,
            tuple((i + 1) * self.coeffs[i + 1] for i in range(self.trunc - 1)),
            self.trunc - 1,
        )

    def is_constant(self):
        if self.trunc < 2:
            raise PrecisionExhausted("is_constant needs trunc >= 2")
        return self.delta().is_zero()

    def frobenius(self):
        raise BackendError("frobenius is not defined on the series backend")


class SeriesRing:
    """Q[[t]]/t^trunc with derivation d/dt."""

    kind = KOLCHIN

    def __init__(self, trunc: int):
        if trunc < 2:
            raise InputError(f"trunc must be >= 2, got {trunc}")
        self.trunc = trunc
        self.zero = self.from_rational(0)
        self.one = self.from_rational(1)

    def __repr__(self):
        return f"SeriesRing(trunc={self.trunc})"

    def from_rational(self, c, trunc=None) -> SeriesElement:
        trunc = self.trunc if trunc is None else trunc
        if trunc < 1 or trunc > self.trunc:
            raise PrecisionExhausted(f"truncation {trunc} outside [1, {self.trunc}]")
        return SeriesElement(
            self, (Fraction(c),) + (Fraction(0),) * (trunc - 1), trunc
        )

    from_int = from_rational

    def element(self, coeffs, trunc=None) -> SeriesElement:
        trunc = self.trunc if trunc is None else trunc
        coeffs = [Fraction(c) for c in coeffs][:trunc]
        coeffs += [Fraction(0)] * (trunc - len(coeffs))
        return SeriesElement(self, tuple(coeffs), trunc)

    @property
    def t(self) -> SeriesElement:
        return self.element([0, 1])

    def teichmueller(self, a):
        raise BackendError("teichmueller is not defined on the series backend")

    def carry_term(self, x, y):
        # derivations are additive: no carry
        k = min(x.trunc, y.trunc)
        if k < 2:
            raise PrecisionExhausted("carry term needs trunc >= 2")
        return self.from_rational(0, trunc=k - 1)

    def random_element(self, rng: random.Random, trunc=None) -> SeriesElement:
        trunc = self.trunc if trunc is None else trunc
        return self.element([rng.randint(-3, 3) for _ in range(trunc)], trunc)

    def random_unit(self, rng: random.Random, trunc=None) -> SeriesElement:
        while True:
            x = self.random_element(rng, trunc)
            if x.is_unit():
                return x


# ---------------------------------------------------------------------------
# Operation-style aliases for the common contract.

def from_integer(n: int, ring, prec=None):
    return ring.from_int(n, prec)


def frobenius(x):
    return x.frobenius()


def delta(x):
    return x.delta()


def teichmueller(a, ring):
    return ring.teichmueller(a)


def is_constant(x) -> bool:
    return x.is_constant()


def invert(x):
    return x.invert()
