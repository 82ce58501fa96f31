import random

import pytest
from hypothesis import given, strategies as st

import oracles
from divsyl.group import (GroupError, Homomorphism, NotNormalError, PermGroup, centralizer,
                          direct_product, group_from_generators, intersection, membership,
                          normal_closure, normalizer, quotient_group, wreath_product)
from divsyl.perm import Permutation, PermutationError, compose, parse_cycles


def P(text, n):
    return Permutation.parse(text, n)


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


# -- permutations ---------------------------------------------------------------

def test_compose_examples():
    assert compose(P("(1 2)", 3), Permutation.identity(3)) == P("(1 2)", 3)
    # 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
    assert compose(P("(1 2)", 3), P("(2 3)", 3)) == P("(1 3 2)", 3)
    p = P("(1 2 3 4 5)", 5)
    assert compose(p, ~p).is_identity()


def test_right_action_matches_conjugation():
    a, x = P("(1 2 3)", 4), P("(3 4)", 4)
    assert a ^ x == ~x * a * x
    assert (a ^ x) == P("(1 2 4)", 4)


def test_cycle_string_and_parse():
    assert str(P("(3 1 2)(5 4)", 5)) == "(1 2 3)(4 5)"
    assert str(Permutation.identity(4)) == "()"
    assert parse_cycles("()") == []
    for bad in ["(1 2)(2 3)", "(1 1)", "(1 x)", "1 2"]:
        with pytest.raises(PermutationError):
            parse_cycles(bad)
    with pytest.raises(PermutationError):
        P("(1 6)", 5)
    with pytest.raises(PermutationError):
        Permutation((0, 0, 1))


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(perms(n), perms(n))))
def test_permutation_algebra(pq):
    p, q = pq
    n = len(p)
    assert Permutation.parse(str(p), n) == p
    assert (p * q)(0) == q(p(0))
    assert ~(p * q) == ~q * ~p
    assert (p * ~p).is_identity()
    assert p.order() == oracles.order_of(tuple(p))
    assert p ** p.order() == Permutation.identity(n)


# -- groups against the closure oracle -------------------------------------------

def test_group_from_generators_examples():
    assert group_from_generators(5, [P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)]).order == 60
    assert group_from_generators(3, []).order == 1
    assert group_from_generators(4, [P("(1 2)", 4), P("(1 2 3 4)", 4)]).order == 24


def test_membership_examples():
    A5 = PermGroup(5, [P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)])
    elems = oracles.elements(A5.generators, 5)
    assert tuple(P("(1 2)", 5)) not in elems
    assert not membership(A5, P("(1 2)", 5))
    assert membership(A5, Permutation.identity(5))
    assert all(membership(A5, g) for g in A5.generators)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(perms(n), max_size=3)), st.data())
def test_order_and_membership_match_closure(gens, data):
    n = len(gens[0]) if gens else 1
    G = PermGroup(n, gens)
    elems = oracles.elements(gens, n)
    assert G.order == len(elems)
    assert (G.order == 1) == all(g.is_identity() for g in gens)
    g = data.draw(perms(n))
    assert (g in G) == (tuple(g) in elems)
    for a in gens:
        for b in gens:
            assert a * b in G
    # order is the product of the fundamental orbit lengths
    size = 1
    for _, orbit in G.stabilizer_chain():
        size *= len(orbit)
    assert size == G.order


@pytest.mark.parametrize("n", [4, 5, 6])
def test_elements_enumerate_group(n):
    G = PermGroup(n, [P(f"({' '.join(map(str, range(1, n + 1)))})", n), P("(1 2)", n)])
    assert {tuple(g) for g in G.elements()} == oracles.symmetric(n)


def test_deterministic_chain():
    gens = [P("(1 2 3 4 5 6)", 6), P("(1 2)", 6)]
    a, b = PermGroup(6, gens), PermGroup(6, gens)
    assert a.base == b.base
    assert a.stabilizer_chain() == b.stabilizer_chain()
    assert [a.transversal(i) for i in range(len(a.base))] == \
        [b.transversal(i) for i in range(len(b.base))]


# -- subgroup operations ---------------------------------------------------------------

S4 = PermGroup(4, [P("(1 2 3 4)", 4), P("(1 2)", 4)])
A5 = PermGroup(5, [P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)])


def test_normalizer_examples():
    D8 = PermGroup(4, [P("(1 2 3 4)", 4), P("(1 3)", 4)])
    N = normalizer(S4, D8)
    assert N.order == 8 == oracles.normalizer_order(oracles.elements(D8.generators, 4),
                                                    oracles.symmetric(4))
    C3 = PermGroup(5, [P("(1 2 3)", 5)])
    N = normalizer(A5, C3)
    a5 = oracles.elements(A5.generators, 5)
    assert N.order == 6 == oracles.normalizer_order(oracles.elements(C3.generators, 5), a5)
    V4 = PermGroup(4, [P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)])
    assert normalizer(S4, V4).order == 24


def test_centralizer_and_intersection():
    c = centralizer(S4, PermGroup(4, [P("(1 2)(3 4)", 4)]))
    s4 = oracles.symmetric(4)
    x = tuple(P("(1 2)(3 4)", 4))
    assert c.order == sum(1 for g in s4 if oracles.mul(g, x) == oracles.mul(x, g))
    A4 = PermGroup(4, [P("(1 2 3)", 4), P("(2 3 4)", 4)])
    D8 = PermGroup(4, [P("(1 2 3 4)", 4), P("(1 3)", 4)])
    i = intersection(S4, A4, D8)
    assert i.order == len(oracles.elements(A4.generators, 4) & oracles.elements(D8.generators, 4))


def test_normal_closure_examples():
    assert normal_closure(S4, [P("(1 2)(3 4)", 4)]).order == 4
    assert normal_closure(S4, [Permutation.identity(4)]).order == 1
    assert normal_closure(A5, [P("(1 2)(3 4)", 5)]).order == 60
    with pytest.raises(GroupError):
        normal_closure(A5, [P("(1 2)", 5)])


def test_quotient_examples():
    V4 = PermGroup(4, [P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)])
    Q, hom = quotient_group(S4, V4)
    assert Q.order == 6 and not Q.is_abelian()
    assert quotient_group(S4, S4)[0].order == 1
    assert quotient_group(S4, PermGroup(4, []))[0].order == 24
    with pytest.raises(NotNormalError):
        quotient_group(S4, PermGroup(4, [P("(1 2)", 4)]))


def test_quotient_kernel_is_exactly_n():
    V4 = PermGroup(4, [P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)])
    Q, hom = quotient_group(S4, V4)
    ident = Permutation.identity(Q.degree)
    ker = {tuple(g) for g in S4.elements() if hom(g) == ident}
    assert ker == oracles.elements(V4.generators, 4)


def test_homomorphism_properties():
    sign = Homomorphism(S4, PermGroup(2, [P("(1 2)", 2)]),
                        [P("(1 2)", 2), P("(1 2)", 2)])
    assert sign.is_well_defined()
    rng = random.Random(0)
    for _ in range(100):
        a, b = S4.random_element(rng), S4.random_element(rng)
        assert sign(a * b) == sign(a) * sign(b)
        assert (sign(a) == P("(1 2)", 2)) == (oracles.sign(tuple(a)) == -1)
    assert sign.kernel().order * sign.image().order == S4.order
    bad = Homomorphism(S4, PermGroup(2, [P("(1 2)", 2)]),
                       [P("(1 2)", 2), Permutation.identity(2)])
    assert not bad.is_well_defined()


# -- products ----------------------------------------------------------------------------

def test_direct_product_examples():
    d = direct_product(A5, A5)
    assert d.group.order == 3600 and d.group.degree == 10
    assert direct_product(A5, PermGroup(1, [])).group.order == 60
    c = direct_product(PermGroup(2, [P("(1 2)", 2)]), PermGroup(3, [P("(1 2 3)", 3)]))
    assert c.group.order == 6 and c.group.is_abelian()
    g = next(iter(d.group.generators))
    assert d.injection(0, d.projection(0, g)) * d.injection(1, d.projection(1, g)) == g


def test_wreath_product_examples():
    C2 = PermGroup(2, [P("(1 2)", 2)])
    W = wreath_product(A5, C2)
    assert W.group.order == 7200 and W.group.degree == 10
    w = wreath_product(C2, C2).group
    # dihedral of order 8: a 4-cycle r and a reflection s with s r s = r^-1
    elems = list(w.elements())
    r = next(x for x in elems if x.order() == 4)
    s = next(x for x in elems if x.order() == 2 and x not in PermGroup(4, [r]))
    assert w.order == 8 and s * r * s == ~r
    trivial = PermGroup(1, [])
    assert wreath_product(A5, trivial).group.order == 60


def test_wreath_coordinates():
    C2 = PermGroup(2, [P("(1 2)", 2)])
    W = wreath_product(A5, C2)
    rng = random.Random(3)
    base = W.base_group()
    for _ in range(30):
        g, h = W.group.random_element(rng), W.group.random_element(rng)
        # conjugating by the top swap exchanges coordinates
        s = W.top_embed(P("(1 2)", 2))
        x = W.element([W.pi(0, g), W.pi(1, g)], tuple(W.rho(g)))
        assert x == g
        assert W.rho(g * h) == W.rho(g) * W.rho(h)
        if W.rho(g).is_identity() and W.rho(h).is_identity():
            assert W.pi(0, g * h) == W.pi(0, g) * W.pi(0, h)
        b = base.random_element(rng)
        assert W.pi(0, b ^ s) == W.pi(1, b)
