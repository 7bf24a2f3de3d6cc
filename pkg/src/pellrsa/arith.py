"""Big-integer modular arithmetic, primality testing and CRT utilities."""

import math
import random

from .errors import NonCoprimeModuli, NotInvertible, RandomnessExhausted


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [p for p, f in enumerate(flags) if f]


SMALL_PRIMES = _sieve(1000)

# First-12-prime Miller-Rabin bases are a proven deterministic set below 2^64.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def egcd(a, b):
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def mod_inv(a, n):
    """Inverse of a modulo n, in [0, n).

    Raises NotInvertible (carrying the gcd) when gcd(a, n) > 1 -- against a
    composite modulus that gcd is often a harvested factor.  The happy path
    rides the C-level extended gcd inside pow.

        >>> mod_inv(16, 35)
        11
    """
    if n < 2:
        raise ValueError("modulus must be >= 2")
    try:
        return pow(a, -1, n)
    except ValueError:
        raise NotInvertible(math.gcd(a % n, n), n) from None


def jacobi(a, n):
    """Jacobi symbol (a/n) for odd n >= 3; 0 iff gcd(a, n) > 1."""
    if n < 3 or n % 2 == 0:
        raise ValueError("jacobi symbol needs an odd modulus >= 3")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mod_pow(a, k, n):
    """a**k mod n by binary square-and-multiply.

    Plain right-to-left loop, O(log k) multiplications.  Kept as an explicit
    loop (rather than the C-level pow builtin) so timed code paths exercise
    one multiplication per step of the same interpreter-level shape as the
    other exponentiation ladders in this package.
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    if n == 1:
        return 0
    if k < 0:
        raise ValueError("exponent must be >= 0")
    r = 1
    a %= n
    while k:
        if k & 1:
            r = r * a % n
        a = a * a % n
        k >>= 1
    return r


def crt_combine(residues, moduli):
    """Unique x mod prod(moduli) with x = residues[i] mod moduli[i].

    Moduli must be pairwise coprime; raises NonCoprimeModuli otherwise.
    """
    if len(residues) != len(moduli) or not moduli:
        raise ValueError("need equally many residues and moduli, at least one")
    x, m = residues[0] % moduli[0], moduli[0]
    for r_i, m_i in zip(residues[1:], moduli[1:]):
        if m_i == 1:
            continue
        if math.gcd(m, m_i) != 1:
            raise NonCoprimeModuli(f"moduli share factor {math.gcd(m, m_i)}")
        t = (r_i - x) * mod_inv(m % m_i, m_i) % m_i
        x += m * t
        m *= m_i
    return x % m


def is_probable_prime(n, rng=None, rounds=40):
    """Miller-Rabin probable-prime test.

    Uses the proven deterministic base set below 2**64, else `rounds`
    random bases (error probability < 4**-rounds).
    """
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < 1 << 64:
        return not any(witness(a) for a in _DETERMINISTIC_BASES)
    if rng is None:
        rng = random.Random()
    return not any(witness(rng.randrange(2, n - 1)) for _ in range(rounds))


def gen_prime(bits, rng):
    """Random probable prime of exactly `bits` bits (top bit set).

    Raises RandomnessExhausted after a bounded number of attempts.
    """
    if bits < 8:
        raise ValueError("bits must be >= 8")
    for _ in range(64 * bits):
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if any(candidate % p == 0 for p in SMALL_PRIMES if p < candidate):
            continue
        if is_probable_prime(candidate, rng):
            return candidate
    raise RandomnessExhausted(f"no {bits}-bit prime found")


class FactoredModulus:
    """A modulus known by its prime-power factorization.

    `factors` is a sorted tuple of (prime, exponent) pairs; `value` is the
    product of the prime powers.  Primes must be distinct probable primes,
    exponents >= 1.
    """

    __slots__ = ("factors", "value")

    def __init__(self, factors):
        pairs = tuple(sorted((int(p), int(e)) for p, e in factors))
        if not pairs:
            raise ValueError("at least one prime factor required")
        primes = [p for p, _ in pairs]
        if len(set(primes)) != len(primes):
            raise ValueError("prime factors must be distinct")
        value = 1
        for p, e in pairs:
            if e < 1:
                raise ValueError("exponents must be >= 1")
            if not is_probable_prime(p):
                raise ValueError(f"{p} is not prime")
            value *= p**e
        self.factors = pairs
        self.value = value

    def __eq__(self, other):
        return isinstance(other, FactoredModulus) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        body = " * ".join(f"{p}^{e}" for p, e in self.factors)
        return f"FactoredModulus({body})"
