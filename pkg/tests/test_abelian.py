import itertools
import math
import random

import pytest

from conftest import all_elements, brute_span
from fusion_obstruct.abelian import (
    ConsistencyError,
    HomocyclicModule,
    ModuleAut,
    ModuleError,
    embeds_in,
    fixed_subgroup,
    howell_form,
    jordan_count,
    mat_inverse,
    quotient_fixed_order,
    quotient_module,
)
from fusion_obstruct.obstruction import elements_of

SMALL = [(2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (2, 3, 2), (5, 1, 2)]


def random_gens(rng, m, k):
    return [tuple(rng.randrange(m.modulus) for _ in range(m.r)) for _ in range(k)]


@pytest.mark.parametrize("p,e,r", SMALL)
def test_span_matches_brute_force(p, e, r):
    rng = random.Random(p * 100 + e * 10 + r)
    m = HomocyclicModule(p, e, r)
    for _ in range(40):
        gens = random_gens(rng, m, rng.randint(0, 3))
        s = m.span(gens)
        expected = brute_span(m, gens)
        assert set(elements_of(s)) == expected
        assert s.order == len(expected)


@pytest.mark.parametrize("p,e,r", SMALL)
def test_howell_form_is_canonical(p, e, r):
    rng = random.Random(7 + p + e + r)
    m = HomocyclicModule(p, e, r)
    for _ in range(40):
        gens = random_gens(rng, m, rng.randint(1, 3))
        s = m.span(gens)
        # a different generating set of the same subgroup
        elems = sorted(elements_of(s))
        other = rng.sample(elems, min(len(elems), 4)) + list(s.rows)
        rng.shuffle(other)
        assert m.span(other).rows == s.rows
        assert howell_form(other, p, e, r) == howell_form(list(s.rows), p, e, r)


@pytest.mark.parametrize("p,e,r", SMALL)
def test_intersection_and_sum(p, e, r):
    rng = random.Random(11 * p + e + r)
    m = HomocyclicModule(p, e, r)
    for _ in range(30):
        a = m.span(random_gens(rng, m, rng.randint(0, 2)))
        b = m.span(random_gens(rng, m, rng.randint(0, 2)))
        ea, eb = set(elements_of(a)), set(elements_of(b))
        assert set(elements_of(a & b)) == ea & eb
        assert set(elements_of(a + b)) == brute_span(m, list(a.rows) + list(b.rows))
        assert (a & b) <= a and a <= a + b


def _element_order(m):
    def order(v):
        k = 1
        w = v
        while any(w):
            w = m.add(w, v)
            k += 1
        return k
    return order


@pytest.mark.parametrize("p,e,r", [(2, 2, 2), (3, 2, 2), (2, 3, 1), (2, 1, 3)])
def test_invariants_by_element_orders(p, e, r):
    rng = random.Random(5)
    m = HomocyclicModule(p, e, r)
    for _ in range(25):
        s = m.span(random_gens(rng, m, rng.randint(0, 3)))
        inv = s.invariants
        assert math.prod(inv) == s.order
        order = _element_order(m)
        elems = elements_of(s)
        # number of elements killed by p^k determines the invariants
        for k in range(e + 1):
            killed = sum(1 for v in elems if all((p**k * x) % m.modulus == 0 for x in v))
            assert killed == math.prod(min(d, p**k) for d in inv)
        assert max((order(v) for v in elems), default=1) == (max(inv) if inv else 1)


def _brute_embeds(invariants, m):
    """Search for an injective homomorphism from the direct sum of cyclic groups."""
    elems = all_elements(m)
    choices = []
    for n in invariants:
        choices.append([v for v in elems if all((n * x) % m.modulus == 0 for x in v)])
    for images in itertools.product(*choices):
        injective = True
        for coeffs in itertools.product(*(range(n) for n in invariants)):
            if not any(coeffs):
                continue
            v = m.zero()
            for c, x in zip(coeffs, images):
                v = m.add(v, m.scale(c, x))
            if not any(v):
                injective = False
                break
        if injective:
            return True
    return False


@pytest.mark.parametrize("inv", [(2,), (4,), (8,), (2, 2), (4, 2), (4, 4), (2, 2, 2), (8, 2)])
def test_embeds_in_matches_brute_force(inv):
    m = HomocyclicModule(2, 2, 2)
    assert embeds_in(inv, m) == _brute_embeds(inv, m)


def test_embeds_in_prime_three():
    m = HomocyclicModule(3, 1, 2)
    for inv in [(3,), (3, 3), (9,), (3, 3, 3)]:
        assert embeds_in(inv, m) == _brute_embeds(inv, m)


def test_rejects_singular_matrix():
    m = HomocyclicModule(2, 2, 2)
    with pytest.raises(ValueError):
        ModuleAut(m, ((2, 0), (0, 1)))


def test_inverse_and_order():
    m = HomocyclicModule(3, 2, 2)
    a = ModuleAut(m, ((1, 1), (0, 1)))
    inv = ModuleAut(m, mat_inverse(a.matrix, 3, 2))
    assert (a * inv).is_identity()
    assert a.order() == 9


def test_fixed_and_image_by_brute_force():
    rng = random.Random(3)
    for p, e, r in SMALL:
        m = HomocyclicModule(p, e, r)
        for _ in range(10):
            while True:
                mat = tuple(tuple(rng.randrange(m.modulus) for _ in range(r)) for _ in range(r))
                try:
                    a = ModuleAut(m, mat)
                    break
                except ValueError:
                    pass
            elems = all_elements(m)
            assert set(elements_of(a.fixed)) == {v for v in elems if a.apply(v) == v}
            assert set(elements_of(a.image)) == {a.commutator(v) for v in elems}


def test_quotient_fixed_order_rejects_uncentralized():
    m = HomocyclicModule(2, 1, 2)
    a = ModuleAut(m, ((1, 1), (0, 1)))
    with pytest.raises(ModuleError):
        quotient_fixed_order(a, m.span([(0, 1)]))
    assert quotient_fixed_order(a, m.span([(1, 0)])) == 2


def test_jordan_count_on_known_form():
    m = HomocyclicModule(2, 1, 5)
    # blocks of sizes 2, 2, 1
    j = [[int(i == k) for k in range(5)] for i in range(5)]
    j[0][1] = j[2][3] = 1
    assert jordan_count(ModuleAut(m, tuple(map(tuple, j)))) == 2
    with pytest.raises(ModuleError):
        jordan_count(ModuleAut.identity(HomocyclicModule(2, 2, 2)))


def test_consistency_error_is_assertion():
    assert issubclass(ConsistencyError, AssertionError)


def test_quotient_module_induced_action():
    m = HomocyclicModule(2, 1, 3)
    a = ModuleAut(m, ((1, 1, 0), (0, 1, 1), (0, 0, 1)))
    lower = a.fixed
    q = quotient_module(lower, m.whole())
    assert q.module.r == 2
    ind = q.induced(a)
    for v in all_elements(m):
        assert q.coords(a.apply(v)) == ind.apply(q.coords(v))
    assert quotient_fixed_order(a, lower) == ind.fixed.order


def test_fixed_subgroup_of_several():
    m = HomocyclicModule(2, 1, 3)
    a = ModuleAut(m, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    b = ModuleAut(m, ((1, 0, 1), (0, 1, 0), (0, 0, 1)))
    assert fixed_subgroup(m, [a, b]) == a.fixed & b.fixed


def test_bitpacked_agrees_with_general_path():
    rng = random.Random(9)
    m = HomocyclicModule(2, 1, 6)
    assert m.bitpacked
    for _ in range(30):
        gens = random_gens(rng, m, 3)
        assert set(elements_of(m.span(gens))) == brute_span(m, gens)
