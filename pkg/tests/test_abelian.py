"""Finite abelian groups, subgroup lattices, quotients, Sylow parts.

Subgroup counts for small groups are classical and serve as frozen
anchors; the quotient machinery is checked by pushing elements through
the projection and reassembling.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grlat.abelian import (
    FinAbGroup,
    Subgroup,
    cyclic_subgroup,
    elementary_primes,
    enumerate_subgroups,
    is_elementary,
    make_group,
    noncyclic_sylow_primes,
    prime_factors,
    quotient_data,
    sylow,
    sylow_complement,
)
from grlat.errors import InvalidFactorError


def test_make_group_canonicalizes():
    assert make_group([2, 4]).factors == (2, 4)
    assert make_group([4, 2]).factors == (2, 4)
    assert make_group([6, 4]).factors == (2, 12)
    assert make_group([1, 3]).factors == (3,)
    with pytest.raises(InvalidFactorError):
        make_group([0])
    with pytest.raises(InvalidFactorError):
        make_group([-3])


def test_prime_factors():
    assert prime_factors(360) == {2: 3, 3: 2, 5: 1}
    assert prime_factors(1) == {}


def test_element_arithmetic_mod_factors():
    g = make_group([3, 9])
    a = g.element((2, 7))
    b = g.element((2, 5))
    assert (a + b).coords == (1, 3)
    assert (-a).coords == (1, 2)
    assert a.order() == 9
    assert g.element((0, 3)).order() == 3


# subgroup counts: cyclic n has one subgroup per divisor; (Z/p)^2 has p+3
SUBGROUP_COUNTS = [
    ([12], 6),
    ([30], 8),
    ([3, 3], 6),
    ([2, 2], 5),
    ([2, 4], 8),
    ([5, 5], 8),
    ([2, 2, 2], 16),
    ([3, 9], 10),
]


@pytest.mark.parametrize("factors,count", SUBGROUP_COUNTS)
def test_subgroup_counts(factors, count):
    g = make_group(factors)
    assert len(enumerate_subgroups(g)) == count


def test_subgroup_lattice_closure_small():
    g = make_group([2, 4])
    subs = enumerate_subgroups(g)
    for a in subs:
        for b in subs:
            assert a.join(b).order % a.meet(b).order == 0
            assert a.meet(b).is_subset_of(a)
            assert a.is_subset_of(a.join(b))
    # orders multiply: |A||B| = |A v B| |A ^ B| for abelian join/meet
    for a in subs:
        for b in subs:
            assert a.order * b.order == a.join(b).order * a.meet(b).order


@given(st.sampled_from([(6,), (2, 4), (3, 3), (12,), (2, 2, 2)]), st.data())
@settings(max_examples=60, deadline=None)
def test_cyclic_subgroup_order_matches_element(factors, data):
    g = make_group(list(factors))
    coords = tuple(data.draw(st.integers(0, d - 1)) for d in factors)
    e = g.element(coords)
    assert cyclic_subgroup(e).order == e.order()


def test_structure_invariants():
    g = make_group([2, 12])
    h = Subgroup.from_generators(g, [g.element((1, 0)), g.element((0, 6))])
    assert h.structure() == (2, 2)
    assert h.as_group().factors == (2, 2)
    assert is_elementary(h.structure())
    # "elementary" here: at most one noncyclic Sylow part
    assert is_elementary((4,))
    assert is_elementary((15,))
    assert is_elementary((3, 6))
    assert not is_elementary((6, 6))
    assert not h.is_cyclic


def test_sylow_decomposition():
    g = make_group([6, 12])
    s2 = sylow(g, 2)
    s3 = sylow(g, 3)
    assert s2.order == 8 and s3.order == 9
    assert s2.meet(s3).is_trivial
    assert s2.join(s3) == Subgroup.full(g)
    comp = sylow_complement(g, 2)
    assert comp.order == 9
    assert comp == s3


def test_quotient_data_roundtrip():
    g = make_group([3, 9])
    h = Subgroup.from_generators(g, [g.element((0, 3))])
    qd = quotient_data(g, h)
    assert qd.group.order == g.order // h.order
    for coords in [(0, 0), (1, 2), (2, 8), (0, 4)]:
        e = g.element(coords)
        image = qd.proj(e)
        back = qd.lift(image)
        # lift is a section: proj(lift(x)) = x
        assert qd.proj(back) == image
        # e and its lift differ by an element of h
        assert h.contains(e - back)


def test_quotient_push_subgroup():
    g = make_group([3, 9])
    h = Subgroup.from_generators(g, [g.element((0, 3))])
    qd = quotient_data(g, h)
    full_image = qd.push(Subgroup.full(g))
    assert full_image.order == qd.group.order
    assert qd.push(h).is_trivial


def test_helper_prime_classifiers():
    assert noncyclic_sylow_primes((3, 6)) == frozenset({3})
    assert noncyclic_sylow_primes((2, 6)) == frozenset({2})
    assert noncyclic_sylow_primes((30,)) == frozenset()
    assert noncyclic_sylow_primes((6, 6)) == frozenset({2, 3})
    assert elementary_primes((2, 6)) == frozenset({2})
    assert elementary_primes((3, 3)) == frozenset({3})
    assert elementary_primes((30,)) == frozenset({2, 3, 5})
    assert elementary_primes((6, 6)) == frozenset()


def test_element_enumeration_complete():
    g = make_group([2, 6])
    elems = list(g.elements())
    assert len(elems) == 12
    assert len(set(elems)) == 12
