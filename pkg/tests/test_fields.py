"""Tower construction, arithmetic, Frobenius, trace, character."""

import random

import pytest

from artinschreier.fields import FieldTower, build_tower, tau_power

from conftest import grid_towers


# ---------------------------------------------------------------- moduli


def test_moduli_deterministic():
    t = build_tower(3, 1, 2)
    # lex-least monic irreducible quadratic over F_3 is t^2 + 1
    assert t.ext_modulus == (1, 0, 1)
    assert t.base_modulus == (0, 1)  # degree-1 placeholder for s = 1


def test_build_tower_cached_identity():
    assert build_tower(3, 1, 2) is build_tower(3, 1, 2)
    assert build_tower(3, 1, 2) is not build_tower(3, 1, 3)


def test_cardinalities():
    t = build_tower(5, 2, 3)
    assert t.q == 25
    assert t.ext_card == 15625


@pytest.mark.parametrize("p", [2, 4, 9, 25])
def test_invalid_characteristic(p):
    with pytest.raises(ValueError):
        FieldTower(p, 1, 2)


@pytest.mark.parametrize("s,n", [(0, 2), (1, 0), (-1, 3)])
def test_invalid_degrees(s, n):
    with pytest.raises(ValueError):
        FieldTower(3, s, n)


# ------------------------------------------------------------- base field


def test_base_arithmetic_prime_field():
    t = build_tower(3, 1, 2)
    assert t.badd(2, 2) == 1
    assert t.bmul(2, 2) == 1
    assert t.bsub(0, 1) == 2
    assert t.binv(2) == 2
    assert t.bpow(2, 4) == 1


def test_base_arithmetic_table_vs_digits():
    # q = 9 exercises the table-backed path; check against digit arithmetic.
    t = build_tower(3, 2, 2)
    for a in range(t.q):
        da = t.base_digits(a)
        for b in range(t.q):
            db = t.base_digits(b)
            want = t.base_from_digits([(x + y) % 3 for x, y in zip(da, db)])
            assert t.badd(a, b) == want
            want = t.base_from_digits([(x - y) % 3 for x, y in zip(da, db)])
            assert t.bsub(a, b) == want


def test_base_mul_group_structure():
    t = build_tower(3, 2, 2)
    for a in range(1, t.q):
        assert t.bmul(a, t.binv(a)) == 1
        assert t.bpow(a, t.q - 1) == 1
    assert t.bmul(0, 5) == 0


def test_base_from_int():
    t = build_tower(7, 1, 2)
    assert t.base_from_int(-1) == 6
    assert t.base_from_int(10) == 3


# ------------------------------------------------------------- extension


def test_extension_enumeration_roundtrip():
    t = build_tower(3, 1, 3)
    elems = list(t.elements())
    assert len(elems) == 27
    assert len(set(elems)) == 27
    for k, x in enumerate(elems):
        assert t.ext_to_int(x) == k
        assert t.ext_from_int(k) == x


def test_extension_field_axioms_sampled():
    t = build_tower(3, 2, 2)
    rng = random.Random(7)
    for _ in range(40):
        x, y, z = (t.random_element(rng) for _ in range(3))
        assert t.xmul(x, t.xadd(y, z)) == t.xadd(t.xmul(x, y), t.xmul(x, z))
        assert t.xmul(x, y) == t.xmul(y, x)
        assert t.xadd(x, t.xneg(x)) == t.zero
        if x != t.zero:
            assert t.xmul(x, t.xinv(x)) == t.one


def test_embed_and_scale():
    t = build_tower(3, 1, 2)
    assert t.embed(2) == (2, 0)
    x = (1, 2)
    assert t.xscale(2, x) == (2, 1)
    assert t.xmul(t.embed(2), x) == t.xscale(2, x)


# -------------------------------------------------------------- frobenius


def test_frobenius_example():
    # In F_9 = F_3(t) with t^2 = -1, Frobenius sends t to t^3 = -t = 2t.
    t = build_tower(3, 1, 2)
    assert t.frobenius((0, 1), 1) == (0, 2)


def test_frobenius_is_power_map():
    t = build_tower(3, 2, 2)
    rng = random.Random(11)
    for _ in range(20):
        x = t.random_element(rng)
        assert t.frobenius(x, 1) == t.xpow(x, t.q)
        assert t.frobenius(x, 2) == t.xpow(x, t.q ** 2)


def test_frobenius_order_and_fixed_field():
    t = build_tower(3, 1, 3)
    for x in t.elements():
        assert t.frobenius(x, t.n) == x
    for a in range(t.q):
        assert t.frobenius(t.embed(a), 1) == t.embed(a)


def test_frobenius_additive_multiplicative():
    t = build_tower(5, 1, 2)
    rng = random.Random(3)
    for _ in range(25):
        x, y = t.random_element(rng), t.random_element(rng)
        assert t.frobenius(t.xadd(x, y)) == t.xadd(t.frobenius(x), t.frobenius(y))
        assert t.frobenius(t.xmul(x, y)) == t.xmul(t.frobenius(x), t.frobenius(y))


# ------------------------------------------------------------------ trace


def test_trace_examples():
    t = build_tower(3, 1, 2)
    assert t.trace((0, 1)) == 0  # Tr(t) = t + t^3 = t - t = 0
    assert t.trace((1, 0)) == 2  # Tr(1) = n mod p


def test_base_trace_to_prime_example():
    # Tr_{F_9/F_3}(2) = 2 + 2^3 = 2 + 2 = 1
    t = build_tower(3, 2, 1)
    assert t.base_trace_to_prime(t.base_from_int(2)) == 1


def test_trace_linear_and_fibers():
    t = build_tower(3, 1, 3)
    hist = {}
    for x in t.elements():
        hist[t.trace(x)] = hist.get(t.trace(x), 0) + 1
    # surjective onto F_q with fibers of size q^{n-1}
    assert hist == {a: t.q ** (t.n - 1) for a in range(t.q)}
    rng = random.Random(5)
    for _ in range(20):
        x, y = t.random_element(rng), t.random_element(rng)
        assert t.trace(t.xadd(x, y)) == t.badd(t.trace(x), t.trace(y))


def test_abs_trace_matches_power_sum():
    t = build_tower(3, 2, 2)
    for x in t.elements():
        # absolute trace: sum of p-power conjugates down to F_p
        acc = x
        val = x
        for _ in range(t.s * t.n - 1):
            val = t.xpow(val, t.p)
            acc = t.xadd(acc, val)
        assert all(c == 0 for c in acc[1:])
        assert t.abs_trace(x) == t.base_digits(acc[0])[0] % t.p


# -------------------------------------------------------------- character


def test_quadratic_character_examples():
    t3 = build_tower(3, 1, 2)
    assert t3.quadratic_character(t3.base_from_int(2)) == -1
    t9 = build_tower(3, 2, 1)
    assert t9.quadratic_character(t9.base_from_int(2)) == 1
    assert t3.quadratic_character(0) == 0


def test_quadratic_character_structure():
    t = build_tower(3, 2, 1)
    q = t.q
    squares = {a for a in range(q) if t.quadratic_character(a) == 1}
    assert len(squares) == (q - 1) // 2
    assert squares == {t.bmul(a, a) for a in range(1, q)}
    for a in range(1, q):
        for b in range(1, q):
            assert (t.quadratic_character(t.bmul(a, b))
                    == t.quadratic_character(a) * t.quadratic_character(b))


def test_tau_power_examples():
    assert tau_power(5, 7) == 0
    assert tau_power(3, 1) == 1
    assert tau_power(3, 2) == 2
    assert tau_power(7, 3) == 3
    assert tau_power(13, 9) == 0


# ------------------------------------------------------------- coverage


def test_grid_towers_bound():
    for p, s, n in grid_towers():
        assert (p ** s) ** n <= 10 ** 6
        assert n >= 2
    assert (3, 1, 12) in grid_towers()
    assert (7, 1, 7) in grid_towers()
