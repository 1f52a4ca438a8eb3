import random
from math import gcd

import pytest

from redei8.bqf import (
    BQForm,
    ClassGroupTable,
    compose,
    genus_character,
    identity_form,
    rank_at,
    reduced_forms,
    two_part_invariants,
    two_power_ranks,
)
from redei8.redei import four_rank, v0_elements, validate_field
from redei8.report import iter_fields


def forms_by_hand(delta):
    """Reduced forms straight from the definition, scanning a, b, c directly."""
    out = set()
    n = -delta
    for a in range(1, n + 1):
        if 3 * a * a > n:
            break
        for b in range(-a, a + 1):
            if (b * b - delta) % (4 * a):
                continue
            c = (b * b - delta) // (4 * a)
            f = BQForm(a, b, c)
            if f.is_reduced() and f.is_primitive():
                out.add(f)
    return out


def test_reduced_forms_examples():
    assert reduced_forms(-15) == [BQForm(1, 1, 4), BQForm(2, 1, 2)]
    assert reduced_forms(-3) == [BQForm(1, 1, 1)]
    assert set(reduced_forms(-39)) == {BQForm(1, 1, 10), BQForm(2, 1, 5), BQForm(2, -1, 5), BQForm(3, 3, 4)}


def test_reduced_forms_reject_bad_discriminant():
    with pytest.raises(ValueError):
        reduced_forms(-16)
    with pytest.raises(ValueError):
        reduced_forms(5)


def test_reduced_forms_match_definition():
    for m in range(3, 3000, 4):
        assert set(reduced_forms(-m)) == forms_by_hand(-m), m


def test_reduction_preserves_discriminant():
    rng = random.Random(1)
    for _ in range(500):
        a, b = rng.randint(1, 200), rng.randrange(-401, 401, 2)
        delta = -rng.randrange(3, 4000, 4)
        if (b * b - delta) % (4 * a):
            continue
        f = BQForm(a, b, (b * b - delta) // (4 * a)).reduced()
        assert f.is_reduced() and f.discriminant == delta


def test_compose_identity_and_inverse():
    for delta in (-15, -39, -4895, -17427):
        e = identity_form(delta)
        for f in reduced_forms(delta):
            assert compose(e, f, delta) == f
            assert compose(f, f.inverse(), delta) == e


def test_compose_example_order_four():
    t = ClassGroupTable(-39)
    assert t.order(t.index[BQForm(2, 1, 5)]) == 4


@pytest.mark.parametrize("delta", [-39, -4895, -17427, -22127, -3315])
def test_group_axioms(delta):
    t = ClassGroupTable(delta)
    ct = t.compose_table
    h = t.h
    assert h <= 200
    for i in range(h):
        assert ct[t.identity][i] == i
        assert ct[i][t.inverse(i)] == t.identity
        for j in range(h):
            assert ct[i][j] == ct[j][i]
            for k in range(h):
                assert ct[ct[i][j]][k] == ct[i][ct[j][k]]


def test_composed_form_represents_product():
    # a1 * a2 is represented by the product when gcd(a1, a2) = 1
    delta = -4895
    fs = reduced_forms(delta)
    for f in fs:
        for g in fs:
            if gcd(f.a, g.a) != 1:
                continue
            prod_form = compose(f, g, delta)
            target = f.a * g.a
            assert any(prod_form.represents(x, y) == target
                       for x in range(-40, 41) for y in range(0, 41)), (f, g)


@pytest.mark.parametrize(
    "delta, ranks, inv",
    [(-15, (1, 0), [2]), (-39, (1, 1, 0), [4]), (-4895, (2, 2, 1, 1, 0), [4, 16]), (-3, (0,), [])],
)
def test_two_power_ranks_examples(delta, ranks, inv):
    r = two_power_ranks(ClassGroupTable(delta))
    assert r == ranks
    assert two_part_invariants(r) == inv


def test_two_power_ranks_against_element_orders():
    # the 2-Sylow from element orders: #{x : x^(2^k) = 1} = prod min(2^k, n_i)
    for m in range(3, 3000, 4):
        t = ClassGroupTable(-m)
        inv = two_part_invariants(two_power_ranks(t))
        for k in range(1, 6):
            killed = sum(1 for i in range(t.h) if t.power(i, 2**k) == t.identity)
            expected = 1
            for n_i in inv:
                expected *= min(2**k, n_i)
            assert killed == expected, (m, k)


def test_gauss_r2_small_range():
    for f in iter_fields(5000):
        r = two_power_ranks(ClassGroupTable(f.delta))
        assert rank_at(r, 1) == f.t - 1


def test_genus_character_examples():
    delta = -39
    e = identity_form(delta)
    assert genus_character(e, 13, delta) == 1
    assert genus_character(e, 3, delta) == 1
    assert genus_character(BQForm(2, 1, 5), 13, delta) == -1


def test_genus_character_is_homomorphism_killing_squares():
    for f in iter_fields(3000):
        if f.t < 2:
            continue
        t = ClassGroupTable(f.delta)
        for p in f.primes:
            chi = [genus_character(g, p, f.delta) for g in t.forms]
            for i in range(t.h):
                assert chi[t.square_map[i]] == 1
                for j in range(t.h):
                    assert chi[t.mul(i, j)] == chi[i] * chi[j]


def test_v0_characters_vanish_on_ambiguous_classes():
    for f in iter_fields(6000):
        data = four_rank(f)
        if data.r4 == 0:
            continue
        t = ClassGroupTable(f.delta)
        ambiguous = [i for i in range(t.h) if t.square_map[i] == t.identity]
        for _, d in v0_elements(f, data):
            for i in ambiguous:
                assert genus_character(t.forms[i], d, f.delta) == 1
