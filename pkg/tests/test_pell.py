import math
import random

import pytest

from pellrsa.arith import FactoredModulus, crt_combine, is_probable_prime
from pellrsa.errors import ImpossibleOperation, ModulusTooLarge
from pellrsa.pell import (
    INFINITY,
    HyperbolaPoint,
    OpCount,
    PellParams,
    enumerate_hyperbola,
    param_mul,
    param_pow,
    param_to_point,
    point_mul,
    point_pow,
    point_to_param,
    psi,
    redei_eval,
    redei_pow,
)

PP35 = PellParams(35, 18)  # D=18 is a non-residue mod 5, a residue mod 7
PP5 = PellParams(5, 2)


# ---- independent oracles ----

def naive_point_pow(p, k, pp):
    """k-fold product by literal repeated Brahmagupta multiplication."""
    acc = pp.identity()
    for _ in range(k):
        acc = point_mul(acc, p, pp)
    return acc


def naive_param_pow(m, k, pp):
    """Iterated parameter product; total over prime moduli."""
    acc = INFINITY
    for _ in range(k):
        acc = param_mul(acc, m, pp)
    return acc


def naive_matrix_power(z, d, k, n):
    """2x2 matrix power by repeated schoolbook multiplication."""
    mat = [[1, 0], [0, 1]]
    base = [[z % n, d % n], [1, z % n]]
    for _ in range(k):
        mat = [
            [
                sum(mat[i][t] * base[t][j] for t in range(2)) % n
                for j in range(2)
            ]
            for i in range(2)
        ]
    return mat


def qnr_mod(p, rng):
    squares = {x * x % p for x in range(1, p)}
    while True:
        d = rng.randrange(2, p)
        if d not in squares:
            return d


# ---- point product ----

def test_point_identity_and_inverse():
    pt = PP5.point(2, 2)
    assert point_mul(pt, PP5.identity(), PP5) == pt
    assert point_mul(pt, HyperbolaPoint(2, 3), PP5) == PP5.identity()  # (2,-2) = (2,3)


def test_point_mul_frozen_example():
    # (2,2)x(2,2) mod 5, D=2: (2*2 + 2*2*2, 2*2 + 2*2) = (12, 8) = (2, 3)
    assert point_mul(PP5.point(2, 2), PP5.point(2, 2), PP5) == HyperbolaPoint(2, 3)


def test_point_mul_closure_and_commutativity():
    rng = random.Random(31)
    for p in (13, 31, 101):
        d = qnr_mod(p, rng)
        pp = PellParams(p, d)
        pts = enumerate_hyperbola(p, 1, d)
        for _ in range(60):
            a, b, c = rng.choice(pts), rng.choice(pts), rng.choice(pts)
            ab = point_mul(a, b, pp)
            assert pp.on_curve(ab.x, ab.y)
            assert ab == point_mul(b, a, pp)
            assert point_mul(ab, c, pp) == point_mul(a, point_mul(b, c, pp), pp)


def test_point_validation():
    with pytest.raises(ValueError):
        PP5.point(1, 1)


# ---- parameter product ----

def test_param_identity_and_inverse():
    assert param_mul(INFINITY, 12, PP35) == 12
    assert param_mul(12, INFINITY, PP35) == 12
    assert param_mul(12, 35 - 12, PP35) is INFINITY
    # 0 is its own inverse (the order-2 element)
    assert param_mul(0, 0, PP35) is INFINITY


def test_param_mul_frozen_example():
    # (18 + 1)/(1 + 1) = 19 * inverse(2) = 19 * 18 = 342 = 27 mod 35
    assert pow(2 * 18 % 35, 1, 35) == 36 % 35  # inverse(2) is 18
    assert param_mul(1, 1, PP35) == 27


def test_param_mul_leaks_factor():
    # denominators 27 + 1 = 28 share the factor 7 with 35
    with pytest.raises(ImpossibleOperation) as info:
        param_mul(27, 1, PP35)
    assert info.value.factor == 7
    assert 35 % info.value.factor == 0


def test_param_mul_group_laws_over_prime():
    rng = random.Random(37)
    for p in (13, 101, 499):
        pp = PellParams(p, qnr_mod(p, rng))
        elems = [INFINITY] + list(range(p))
        for _ in range(80):
            a, b, c = rng.choice(elems), rng.choice(elems), rng.choice(elems)
            assert param_mul(a, b, pp) == param_mul(b, a, pp)
            assert param_mul(param_mul(a, b, pp), c, pp) == param_mul(
                a, param_mul(b, c, pp), pp
            )


# ---- parametrization maps ----

def test_compress_special_points():
    assert point_to_param(HyperbolaPoint(1, 0), PP35) is INFINITY
    assert point_to_param(HyperbolaPoint(34, 0), PP35) == 0


def test_compress_frozen_example():
    # (1 + 3) * inverse(4) = 4 * 9 = 36 = 1 mod 35
    assert point_to_param(PP35.point(3, 4), PP35) == 1


def test_compress_leaks_factor_for_exotic_square_roots():
    # 6^2 = 1 mod 35 although 6 != +-1: (6, 0) is on the curve, unmappable
    assert PP35.on_curve(6, 0)
    with pytest.raises(ImpossibleOperation) as info:
        point_to_param(HyperbolaPoint(6, 0), PP35)
    assert info.value.factor in (5, 7)


def test_decompress_special_values():
    assert param_to_point(INFINITY, PP35) == HyperbolaPoint(1, 0)
    assert param_to_point(0, PP35) == HyperbolaPoint(34, 0)


def test_decompress_lands_on_curve_and_roundtrips():
    rng = random.Random(41)
    for p in (13, 31, 101):
        pp = PellParams(p, qnr_mod(p, rng))
        for pt in enumerate_hyperbola(p, 1, pp.d):
            m = point_to_param(pt, pp)
            back = param_to_point(m, pp)
            assert pp.on_curve(back.x, back.y)
            assert back == pt


def test_morphism_exhaustive_over_primes():
    rng = random.Random(43)
    for p in (5, 7, 13, 31, 101):
        for d in (qnr_mod(p, rng), rng.choice(sorted({x * x % p for x in range(1, p)}))):
            if math.gcd(d, p) != 1:
                continue
            pp = PellParams(p, d)
            pts = enumerate_hyperbola(p, 1, d)
            for a in pts:
                for b in pts:
                    lhs = point_to_param(point_mul(a, b, pp), pp)
                    rhs = param_mul(point_to_param(a, pp), point_to_param(b, pp), pp)
                    assert lhs == rhs


# ---- powers ----

def test_param_pow_trivial():
    assert param_pow(9, 1, PP35) == 9
    assert param_pow(9, 0, PP35) is INFINITY
    assert param_pow(INFINITY, 17, PP35) is INFINITY


def test_param_pow_frozen_example():
    # the one-step chain 1, 1*1, (1*1)*1, ... dies at step 3 mod 35 (the
    # parameter product is partial over composites), so the oracle walks the
    # division-free curve side and compresses at the end
    pt = param_to_point(1, PP35)
    oracle = point_to_param(naive_point_pow(pt, 5, PP35), PP35)
    assert oracle == 34
    assert param_pow(1, 5, PP35) == 34
    assert redei_pow(1, 5, PP35) == 34


def test_param_pow_annihilated_by_psi():
    rng = random.Random(47)
    fm = FactoredModulus([(5, 1), (7, 1)])
    # D = 17 is a non-residue mod both 5 and 7
    pp = PellParams(35, 17)
    order = psi(fm)
    for _ in range(20):
        m = rng.randrange(1, 35)
        if math.gcd(m, 35) != 1:
            continue
        assert redei_pow(m, order, pp) is INFINITY


def test_point_pow_trivial_and_frozen():
    assert point_pow(PP5.point(2, 2), 0, PP5) == PP5.identity()
    # order of the mod-5 curve with a non-residue D is 6, so P^7 = P
    pt = PP5.point(2, 2)
    assert naive_point_pow(pt, 7, PP5) == pt
    assert point_pow(pt, 7, PP5) == pt


def test_point_pow_matches_naive():
    rng = random.Random(53)
    for p in (13, 101):
        pp = PellParams(p, qnr_mod(p, rng))
        pts = enumerate_hyperbola(p, 1, pp.d)
        for _ in range(40):
            pt, k = rng.choice(pts), rng.randrange(0, 40)
            assert point_pow(pt, k, pp) == naive_point_pow(pt, k, pp)


def test_pow_morphism():
    rng = random.Random(59)
    pp = PellParams(101, qnr_mod(101, rng))
    pts = [pt for pt in enumerate_hyperbola(101, 1, pp.d) if pt.y != 0]
    for _ in range(50):
        pt, k = rng.choice(pts), rng.randrange(0, 200)
        lhs = point_to_param(point_pow(pt, k, pp), pp)
        assert lhs == param_pow(point_to_param(pt, pp), k, pp)


# ---- Redei pairs ----

def test_redei_first_values():
    assert redei_eval(18, 9, 1, 35) == (9, 1)
    # one hand matrix multiplication: (z^2 + D, 2z)
    z, d, n = 9, 18, 35
    assert redei_eval(d, z, 2, n) == ((z * z + d) % n, 2 * z % n)


def test_redei_matches_naive_matrix_power():
    rng = random.Random(61)
    for _ in range(60):
        n = rng.randrange(3, 10_000)
        z, d = rng.randrange(0, n), rng.randrange(1, n)
        k = rng.randrange(1, 30)
        mat = naive_matrix_power(z, d, k, n)
        a, b = redei_eval(d, z, k, n)
        assert (a, b) == (mat[0][0], mat[1][0])
        assert mat[0][1] == d * b % n and mat[1][1] == a


def test_redei_linear_recurrence():
    # characteristic polynomial t^2 - 2z t + (z^2 - D)
    rng = random.Random(67)
    for n in (97, 391):
        z, d = rng.randrange(2, n), rng.randrange(1, n)
        pairs = [redei_eval(d, z, k, n) for k in range(1, 52)]
        for i in range(2, 51):
            a2, a1, a0 = pairs[i], pairs[i - 1], pairs[i - 2]
            assert a2.a == (2 * z * a1.a - (z * z - d) * a0.a) % n
            assert a2.b == (2 * z * a1.b - (z * z - d) * a0.b) % n


def test_redei_quotient_equals_param_pow():
    rng = random.Random(71)
    for p in (31, 499, 1009):
        pp = PellParams(p, qnr_mod(p, rng))
        for _ in range(40):
            z, k = rng.randrange(1, p), rng.randrange(1, 1001)
            via_redei = redei_pow(z, k, pp)
            via_product = param_pow(z, k, pp)
            assert via_redei == via_product


def test_three_pow_routes_agree_up_to_200():
    rng = random.Random(73)
    pp = PellParams(499, qnr_mod(499, rng))
    for _ in range(25):
        z = rng.randrange(1, 499)
        for k in range(1, 201):
            expected = naive_param_pow(z, k, pp)
            assert param_pow(z, k, pp) == expected
            assert redei_pow(z, k, pp) == expected


def test_fast_paths_use_logarithmically_many_group_ops():
    rng = random.Random(79)
    pp = PellParams(10007, qnr_mod(10007, rng))
    pt = param_to_point(123, pp)
    for k in (2, 3, 10, 100, 999, 4096, 10**9 + 7):
        bound = 2 * math.ceil(math.log2(k)) + 2
        c_param, c_redei, c_point = OpCount(), OpCount(), OpCount()
        param_pow(123, k, pp, counter=c_param)
        redei_eval(pp.d, 123, k, pp.modulus, counter=c_redei)
        point_pow(pt, k, pp, counter=c_point)
        for counter in (c_param, c_redei, c_point):
            assert counter.total <= bound, (k, counter)


# ---- orders, psi, enumeration ----

@pytest.mark.parametrize(
    "factors,expected",
    [([(5, 1), (7, 1)], 48), ([(5, 3)], 150), ([(5, 3), (7, 2)], 8400)],
)
def test_psi_frozen_examples(factors, expected):
    assert psi(FactoredModulus(factors)) == expected


@pytest.mark.parametrize("p,r,d,count", [(5, 1, 2, 6), (5, 2, 2, 30), (7, 1, 3, 8)])
def test_enumeration_frozen_counts(p, r, d, count):
    pts = enumerate_hyperbola(p, r, d)
    assert len(pts) == count
    n = p**r
    assert all((x * x - d * y * y) % n == 1 for x, y in pts)


def test_enumeration_rejects_large_modulus():
    with pytest.raises(ModulusTooLarge):
        enumerate_hyperbola(101, 3, 2)


def test_orders_match_residuosity_small_sweep():
    for p in (5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        for d in range(1, p):
            expected = p - 1 if d in squares else p + 1
            assert len(enumerate_hyperbola(p, 1, d)) == expected


def test_prime_power_order_via_crt_consistency():
    # group order mod p^r times compressed behaviour: spot-check 5^2 and 7^2
    assert len(enumerate_hyperbola(5, 2, 2)) == 5 * 6
    assert len(enumerate_hyperbola(7, 2, 3)) == 7 * 8
    assert len(enumerate_hyperbola(3, 3, 2)) == 9 * 4


def test_params_validation():
    with pytest.raises(ValueError):
        PellParams(35, 0)
    with pytest.raises(ValueError):
        PellParams(35, 5)  # shares a factor
    with pytest.raises(ValueError):
        PellParams(1, 1)
