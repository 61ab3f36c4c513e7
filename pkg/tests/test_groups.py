import itertools

import pytest

from cdiag import groups
from cdiag.groups import (CayleyTable, ClosureLimitExceeded, FieldAdditive,
                          FieldUnits, GeneralLinear, GeneratorSet, GroupError,
                          Product, Symmetric, Trivial, Wreath, are_isomorphic,
                          close_elements, closure, cyclic_table, match_named,
                          materialize, product_table, table_from_elements)


# ---------------------------------------------------------------------------
# Oracles


def tree_aut_closure_order(n, m):
    """Independent oracle: order of the automorphism group of the height-2
    tree with m middle vertices bearing n leaves each, by closing vertex
    permutations that preserve adjacency."""
    size = m + m * n
    idt = tuple(range(size))
    gens = []
    for a in range(m - 1):
        p = list(idt)
        b = a + 1
        p[a], p[b] = b, a
        for j in range(n):
            p[m + a * n + j] = m + b * n + j
            p[m + b * n + j] = m + a * n + j
        gens.append(tuple(p))
    for a in range(m):
        for j in range(n - 1):
            p = list(idt)
            u, v = m + a * n + j, m + a * n + j + 1
            p[u], p[v] = v, u
            gens.append(tuple(p))
    els = {idt}
    bdy = [idt]
    while bdy:
        new = []
        for g in gens:
            for x in bdy:
                y = tuple(x[g[i]] for i in range(size))
                if y not in els:
                    els.add(y)
                    new.append(y)
        bdy = new
    return len(els)


def count_invertible_2x2(q):
    """Independent oracle: invertible 2x2 matrices over F_q by determinant."""
    cnt = 0
    for a, b, c, d in itertools.product(range(q), repeat=4):
        if (a * d - b * c) % q:
            cnt += 1
    return cnt


# ---------------------------------------------------------------------------
# Orders


def test_symmetric_degenerate_orders():
    assert Symmetric(0).order() == 1
    assert Symmetric(1).order() == 1


def test_wreath_order_cross_checked_by_tree_closure():
    assert Wreath(Symmetric(3), 4).order() == 31104
    assert tree_aut_closure_order(3, 4) == 31104
    assert tree_aut_closure_order(2, 2) == 8


def test_product_of_wreaths_order():
    expr = Product([Wreath(Symmetric(2), 2), Wreath(Symmetric(4), 2)])
    assert expr.order() == 9216


def test_gl_order_brute_force():
    assert GeneralLinear(2, 2).order() == 6 == count_invertible_2x2(2)
    assert GeneralLinear(2, 3).order() == 48 == count_invertible_2x2(3)
    assert GeneralLinear(2, 5).order() == 480 == count_invertible_2x2(5)


def test_field_group_orders():
    assert FieldUnits(7).order() == 6
    assert FieldAdditive(7).order() == 7
    with pytest.raises(GroupError):
        FieldUnits(6)
    with pytest.raises(GroupError):
        GeneralLinear(2, 4)


def test_expr_text_forms():
    assert Wreath(Symmetric(3), 4).text() == "S3 wr S4"
    assert GeneralLinear(2, 3).text() == "GL(2,3)"
    assert FieldUnits(5).text() == "U(5)"
    assert FieldAdditive(5).text() == "A(5)"
    expr = Product([Wreath(Symmetric(2), 2), Wreath(Symmetric(4), 2)])
    assert expr.text() == "(S2 wr S2) x (S4 wr S2)"
    assert Trivial().text() == "1"


# ---------------------------------------------------------------------------
# Cayley tables


def test_table_axioms_checked():
    with pytest.raises(GroupError):
        CayleyTable([[0, 0], [0, 0]])                     # 1 has no inverse
    with pytest.raises(GroupError):
        CayleyTable([[0, 1], [1, 2]])                     # not closed
    with pytest.raises(GroupError, match="associativity"):
        # closed, unital, identity in every row, but (1*1)*2 != 1*(1*2)
        CayleyTable([[0, 1, 2], [1, 0, 0], [2, 0, 0]])


def test_element_orders_and_abelian():
    t = cyclic_table(6)
    assert t.element_order(1) == 6
    assert t.is_abelian()
    s3 = materialize(Symmetric(3))
    assert not s3.is_abelian()
    assert s3.element_order_histogram() == {1: 1, 2: 3, 3: 2}


# ---------------------------------------------------------------------------
# Closure


def test_closure_empty_generators():
    gs = GeneratorSet(compose=lambda a, b: (a + b) % 5, identity=0, generators=[])
    t = closure(gs)
    assert t.n == 1


def test_closure_single_generator_cyclic():
    gs = GeneratorSet(compose=lambda a, b: (a + b) % 3, identity=0, generators=[1])
    t = closure(gs)
    assert t.n == 3
    assert are_isomorphic(t, cyclic_table(3))


def test_closure_product_of_two_aut_groups():
    # Aut(x) x Aut(y), both of order 2, generated by the coordinate swaps
    def comp(a, b):
        return ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)

    gs = GeneratorSet(compose=comp, identity=(0, 0), generators=[(1, 0), (0, 1)])
    t = closure(gs)
    assert t.n == 4
    assert t.is_abelian()


def test_closure_limit():
    gs = GeneratorSet(compose=lambda a, b: (a + b) % 100, identity=0, generators=[1])
    with pytest.raises(ClosureLimitExceeded) as err:
        close_elements([1], gs.compose, 0, limit=10)
    assert err.value.reached == 11


# ---------------------------------------------------------------------------
# Materialization


def test_materialize_trivial():
    assert materialize(Trivial()).n == 1


def test_materialize_wreath_s1_s2_is_s2():
    t = materialize(Wreath(Symmetric(1), 2))
    assert t.n == 2
    assert are_isomorphic(t, materialize(Symmetric(2)))


def test_materialize_wreath_s2_s2_is_tree_group():
    t = materialize(Wreath(Symmetric(2), 2))
    assert t.n == 8 and not t.is_abelian()
    # leaf-permutation closure of the 4-leaf, 2-middle tree
    leaves = [0, 1, 2, 3]
    idt = (0, 1, 2, 3)
    gens = [(1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)]
    els = [idt]
    seen = {idt}
    bdy = [idt]
    while bdy:
        new = []
        for g in gens:
            for x in bdy:
                y = tuple(x[g[i]] for i in leaves)
                if y not in seen:
                    seen.add(y)
                    els.append(y)
                    new.append(y)
        bdy = new
    tree = table_from_elements(els, lambda a, b: tuple(a[b[i]] for i in leaves))
    assert tree.n == 8
    assert are_isomorphic(t, tree)


def test_materialize_respects_table_limit():
    with pytest.raises(ClosureLimitExceeded):
        materialize(Symmetric(5), table_limit=100)


def test_materialize_order_matches_symbolic_order():
    pool = [
        Trivial(), Symmetric(3), Symmetric(4), GeneralLinear(2, 2),
        GeneralLinear(2, 3), FieldUnits(5), FieldAdditive(3),
        Product([Symmetric(3), FieldAdditive(2)]),
        Wreath(Symmetric(2), 2), Wreath(Symmetric(2), 3),
        Wreath(Trivial(), 3), Product([Wreath(Symmetric(2), 2), Symmetric(3)]),
    ]
    for expr in pool:
        assert materialize(expr).n == expr.order(), expr.text()


# ---------------------------------------------------------------------------
# Isomorphism testing


def test_iso_rejects_s3_vs_c6():
    assert are_isomorphic(materialize(Symmetric(3)), cyclic_table(6)) is False


def test_iso_reflexive_and_symmetric_on_pool():
    pool = [cyclic_table(4), product_table([cyclic_table(2), cyclic_table(2)]),
            materialize(Symmetric(3)), cyclic_table(6),
            product_table([cyclic_table(2), cyclic_table(3)]),
            materialize(Wreath(Symmetric(2), 2)), cyclic_table(8)]
    for t in pool:
        assert are_isomorphic(t, t) is True
    for a in pool:
        for b in pool:
            assert are_isomorphic(a, b) == are_isomorphic(b, a)


def test_iso_c6_vs_c2xc3():
    assert are_isomorphic(cyclic_table(6),
                          product_table([cyclic_table(2), cyclic_table(3)])) is True


def test_iso_c4_vs_klein():
    assert are_isomorphic(cyclic_table(4),
                          product_table([cyclic_table(2), cyclic_table(2)])) is False


def test_iso_dihedral_vs_quaternion_order8():
    d4 = materialize(Wreath(Symmetric(2), 2))
    # quaternion group as a concrete table over 1,i,j,k,-1,-i,-j,-k
    def qmul(a, b):
        sa, xa = a // 4, a % 4
        sb, xb = b // 4, b % 4
        mul = [[(0, 0), (0, 1), (0, 2), (0, 3)],
               [(0, 1), (1, 0), (0, 3), (1, 2)],
               [(0, 2), (1, 3), (1, 0), (0, 1)],
               [(0, 3), (0, 2), (1, 1), (1, 0)]]
        s, x = mul[xa][xb]
        return ((s + sa + sb) % 2) * 4 + x
    q8 = table_from_elements(list(range(8)), qmul)
    assert are_isomorphic(d4, q8) is False


def test_iso_undecided_above_limit():
    t = cyclic_table(13)
    assert are_isomorphic(t, t, iso_limit=12) is None


def test_iso_diag_stabilizer_q2_is_elementary_abelian():
    # the 2x2 rank-1 stabilizer over F_2 as pairs of matrices
    from cdiag import modp
    q = 2
    els = [(((w, b), (0, d)), ((w, 0), (y, z)))
           for w in (1,) for b in range(2) for d in (1,)
           for y in range(2) for z in (1,)]

    def mul(e1, e2):
        (c1, d1), (c2, d2) = e1, e2
        return (modp.mul(c1, c2, q), modp.mul(d1, d2, q))

    t = table_from_elements(els, mul)
    want = materialize(Product([FieldUnits(2), FieldUnits(2), FieldUnits(2),
                                FieldAdditive(2), FieldAdditive(2)]))
    assert t.n == want.n == 4
    assert are_isomorphic(t, want) is True


# ---------------------------------------------------------------------------
# Named library


def test_match_named_basics():
    assert match_named(cyclic_table(1)) == "1"
    assert match_named(materialize(Symmetric(3))) in ("S3",)
    assert match_named(cyclic_table(4)) == "C4"
    assert match_named(product_table([cyclic_table(2), cyclic_table(2)])) == "C2 x C2"
    assert match_named(materialize(Symmetric(5))) == "S5"


def test_match_named_products():
    t = product_table([materialize(Symmetric(3)), cyclic_table(2)])
    label = match_named(t)
    assert label is not None
    # D6 of order 12 has several names; the matched label must reproduce it
    rebuilt = dict(groups.named_candidates(12))[label]
    assert are_isomorphic(t, rebuilt) is True


def test_match_named_returns_none_for_unlisted():
    q8 = None
    def qmul(a, b):
        sa, xa = a // 4, a % 4
        sb, xb = b // 4, b % 4
        mul = [[(0, 0), (0, 1), (0, 2), (0, 3)],
               [(0, 1), (1, 0), (0, 3), (1, 2)],
               [(0, 2), (1, 3), (1, 0), (0, 1)],
               [(0, 3), (0, 2), (1, 1), (1, 0)]]
        s, x = mul[xa][xb]
        return ((s + sa + sb) % 2) * 4 + x
    q8 = table_from_elements(list(range(8)), qmul)
    assert match_named(q8) is None
