"""Group law on the Pell hyperbola x^2 - D*y^2 = 1 and its line parametrization.

Two views of the same cyclic structure are implemented:

* points (x, y) on the curve under the division-free Brahmagupta product
  (x, y)*(w, z) = (xw + D yz, yw + xz);
* compressed parameters m = (1 + x)/y (slope of the line through (-1, 0)),
  living in Z_n plus one extra identity element at infinity, multiplied by
  m1 * m2 = (D + m1 m2)/(m1 + m2).

Over a composite modulus the parameter product is only partial: a denominator
sharing a factor with the modulus aborts the operation and leaks that factor
(ImpossibleOperation).  Parameter powers can also be evaluated through Redei
polynomial pairs, which divide only once at the very end.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Union

from .arith import FactoredModulus, is_probable_prime, mod_inv
from .errors import ImpossibleOperation, ModulusTooLarge, NotInvertible


class _AtInfinity:
    """Identity of the parameter product; image of the point (1, 0)."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return isinstance(other, _AtInfinity)

    def __hash__(self):
        return hash("pell-parameter-at-infinity")


INFINITY = _AtInfinity()

# A parameter is either a residue or the identity at infinity.
Param = Union[int, _AtInfinity]


class HyperbolaPoint(NamedTuple):
    x: int
    y: int


class RedeiPair(NamedTuple):
    """Coefficients (a, b) of (z + sqrt(D))^k = a + b*sqrt(D) mod the modulus."""

    a: int
    b: int


@dataclass(frozen=True)
class PellParams:
    """Ambient setting: modulus n and the Pell coefficient D of x^2 - D y^2 = 1.

    D must be a unit mod n; for the cryptographic constructions it is chosen
    a quadratic non-residue modulo each prime factor.
    """

    modulus: int
    d: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if not 1 <= self.d < self.modulus:
            raise ValueError("coefficient must lie in [1, modulus)")
        if gcd(self.d, self.modulus) != 1:
            raise ValueError("coefficient must be a unit mod the modulus")

    def on_curve(self, x, y):
        return (x * x - self.d * y * y) % self.modulus == 1 % self.modulus

    def point(self, x, y):
        """Validated curve point; raises ValueError off the curve."""
        x, y = x % self.modulus, y % self.modulus
        if not self.on_curve(x, y):
            raise ValueError(f"({x}, {y}) is not on the curve")
        return HyperbolaPoint(x, y)

    def identity(self):
        return HyperbolaPoint(1 % self.modulus, 0)


@dataclass
class OpCount:
    """Mutable group-operation counter for the exponentiation ladders."""

    sq: int = 0
    mul: int = 0

    @property
    def total(self):
        return self.sq + self.mul


def point_mul(p, q, pp):
    """Brahmagupta product (xw + D yz, yw + xz); division-free."""
    n, d = pp.modulus, pp.d
    x, y = p
    w, z = q
    return HyperbolaPoint((x * w + d * y * z) % n, (y * w + x * z) % n)


def point_pow(p, k, pp, counter=None):
    """k-fold Brahmagupta product of an on-curve point, square-and-multiply.

    Squaring uses the curve identity x^2 = 1 + D y^2, so it costs two
    multiplications: (x, y)^2 = (2x^2 - 1, 2xy).  Inputs off the curve
    therefore give undefined results; use PellParams.point to validate.
    """
    if k < 0:
        raise ValueError("exponent must be >= 0")
    n, d = pp.modulus, pp.d
    if k == 0:
        return pp.identity()
    bx, by = p.x % n, p.y % n
    byd = by * d % n
    rx, ry = bx, by
    for bit in bin(k)[3:]:
        rx, ry = (2 * rx * rx - 1) % n, 2 * rx * ry % n
        if counter is not None:
            counter.sq += 1
        if bit == "1":
            rx, ry = (rx * bx + ry * byd) % n, (ry * bx + rx * by) % n
            if counter is not None:
                counter.mul += 1
    return HyperbolaPoint(rx, ry)


def param_mul(a, b, pp):
    """Parameter product (D + ab)/(a + b); INFINITY is the identity.

    a + b = 0 mod n yields INFINITY (b is the inverse of a).  A denominator
    that is a zero divisor raises ImpossibleOperation carrying the factor of
    the modulus it reveals.
    """
    if isinstance(a, _AtInfinity):
        return b
    if isinstance(b, _AtInfinity):
        return a
    n = pp.modulus
    s = (a + b) % n
    if s == 0:
        return INFINITY
    try:
        return (pp.d + a * b) * mod_inv(s, n) % n
    except NotInvertible as err:
        raise ImpossibleOperation(err.gcd) from None


def param_pow(m, k, pp, counter=None):
    """k-fold parameter product by square-and-multiply; k = 0 gives INFINITY.

    Every step divides, so over a composite modulus this can raise
    ImpossibleOperation mid-chain even when the final power exists; the
    Redei evaluation (redei_pow) avoids that.
    """
    if k < 0:
        raise ValueError("exponent must be >= 0")
    if k == 0 or isinstance(m, _AtInfinity):
        return INFINITY if k == 0 else m
    r = m % pp.modulus
    base = r
    for bit in bin(k)[3:]:
        r = param_mul(r, r, pp)
        if counter is not None:
            counter.sq += 1
        if bit == "1":
            r = param_mul(r, base, pp)
            if counter is not None:
                counter.mul += 1
    return r


def point_to_param(p, pp):
    """Compress a point to its parameter (1 + x)/y.

    (1, 0) maps to INFINITY and (-1, 0) to 0.  A non-invertible y (or an
    x with x^2 = 1, x != +-1, possible only against a composite modulus)
    raises ImpossibleOperation with the revealed factor.
    """
    n = pp.modulus
    x, y = p.x % n, p.y % n
    if y == 0:
        if x == 1 % n:
            return INFINITY
        if x == n - 1:
            return 0
        # x^2 = 1 with x != +-1: gcd(x + 1, n) is a proper factor.
        raise ImpossibleOperation(gcd(x + 1, n))
    try:
        return (1 + x) * mod_inv(y, n) % n
    except NotInvertible as err:
        raise ImpossibleOperation(err.gcd) from None


def param_to_point(m, pp):
    """Decompress a parameter to ((m^2 + D)/(m^2 - D), 2m/(m^2 - D)).

    INFINITY maps to (1, 0).  Raises ImpossibleOperation when m^2 - D is
    not invertible.
    """
    n, d = pp.modulus, pp.d
    if isinstance(m, _AtInfinity):
        return pp.identity()
    m %= n
    den = (m * m - d) % n
    try:
        inv = mod_inv(den, n)
    except NotInvertible as err:
        raise ImpossibleOperation(err.gcd) from None
    return HyperbolaPoint((m * m + d) * inv % n, 2 * m * inv % n)


def redei_eval(d, z, k, modulus, counter=None):
    """Redei polynomial pair (A_k, B_k) for z, reduced mod the modulus.

    Defined by (z + sqrt(D))^k = A_k + B_k sqrt(D), i.e. the entries of the
    k-th power of the matrix [[z, D], [1, z]].  Computed by binary powering
    of the (A, B) pair, so O(log k) ring operations and no division at all;
    the rational value A_k/B_k equals the k-fold parameter product of z.
    """
    if k < 1:
        raise ValueError("exponent must be >= 1")
    n = modulus
    z %= n
    d %= n
    a, b = z, 1 % n
    for bit in bin(k)[3:]:
        a, b = (a * a + d * b * b) % n, 2 * a * b % n
        if counter is not None:
            counter.sq += 1
        if bit == "1":
            a, b = (a * z + d * b) % n, (a + b * z) % n
            if counter is not None:
                counter.mul += 1
    return RedeiPair(a, b)


def redei_pow(m, k, pp, counter=None):
    """k-fold parameter product evaluated through the Redei pair.

    Single division at the end: B_k = 0 means the power is INFINITY, a
    zero-divisor B_k raises ImpossibleOperation with the revealed factor.
    Agrees with param_pow wherever the latter is defined.
    """
    if k < 0:
        raise ValueError("exponent must be >= 0")
    if k == 0 or isinstance(m, _AtInfinity):
        return INFINITY if k == 0 else m
    a, b = redei_eval(pp.d, m, k, pp.modulus, counter)
    if b == 0:
        return INFINITY
    try:
        return a * mod_inv(b, pp.modulus) % pp.modulus
    except NotInvertible as err:
        raise ImpossibleOperation(err.gcd) from None


def psi(fm):
    """Totient analog prod p^(e-1) * (p + 1) over the factored modulus.

    Annihilates the parameter group: m ** psi = INFINITY for every unit m
    when the coefficient is a non-residue mod each prime.
    """
    if not isinstance(fm, FactoredModulus):
        fm = FactoredModulus(fm)
    out = 1
    for p, e in fm.factors:
        out *= p ** (e - 1) * (p + 1)
    return out


@lru_cache(maxsize=4)
def _square_table(n):
    table = {}
    for x in range(n):
        table.setdefault(x * x % n, []).append(x)
    return table


def enumerate_hyperbola(p, r, d):
    """All solutions of x^2 - D y^2 = 1 mod p^r by exhaustive scan.

    Testing oracle for the group-order results; refuses p^r > 10^6.
    """
    if r < 1:
        raise ValueError("exponent must be >= 1")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    n = p**r
    if n > 10**6:
        raise ModulusTooLarge(f"{p}^{r} exceeds 10^6")
    table = _square_table(n)
    points = []
    d %= n
    for y in range(n):
        rhs = (1 + d * y * y) % n
        for x in table.get(rhs, ()):
            points.append(HyperbolaPoint(x, y))
    return points
