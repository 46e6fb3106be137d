import numpy as np
import pytest

from morita.categories import categories_isomorphic, check_weak_equivalence, Functor
from morita.errors import (
    NotASubgroupoid,
    NotBelow,
    NotPrincipallyInductive,
)
from morita.groupoids import (
    C_of_groupoid,
    L_of_groupoid,
    L_of_ordered_functor,
    OrderedFunctor,
    OrderedGroupoid,
    corestriction,
    check_ordered_functor,
    inductive_groupoid_of,
    is_enlargement,
    is_local_isomorphism,
    is_principally_inductive,
    local_isomorphism_report,
    make_inverse_semigroupoid,
    meet_objects,
    ordered_groupoid_of,
    pseudoproduct,
    restriction,
    sub_ordered_groupoid,
    validate_ordered_groupoid,
)
from morita.categories import C_of, L_of
from morita.semigroups import chain_semilattice, cyclic_group


def antichain_groupoid():
    """Three objects e > a, e > b with a, b incomparable: no meet of a and b."""
    obj_leq = np.eye(3, dtype=bool)
    obj_leq[1, 0] = obj_leq[2, 0] = True  # a <= e, b <= e
    return OrderedGroupoid(
        ("e", "a", "b"), obj_leq, ("ide", "ida", "idb"),
        np.arange(3), np.arange(3),
        np.diag(np.arange(3)) - (1 - np.eye(3, dtype=np.int64)),
        np.arange(3), np.arange(3), obj_leq.copy(),
    )


def test_inductive_groupoid_invariants(small_corpus):
    for S in small_corpus:
        G = inductive_groupoid_of(S)
        assert validate_ordered_groupoid(G) == []
        assert is_principally_inductive(G)


def test_inductive_groupoid_shapes(b12, chain2):
    G = inductive_groupoid_of(cyclic_group(3))
    assert G.n_objects == 1
    assert np.array_equal(G.leq, np.eye(3, dtype=bool))
    Gc = inductive_groupoid_of(chain2)
    # only identity arrows, ordered as the chain
    assert (Gc.comp >= 0).sum() == 2
    assert Gc.leq[1, 0] and not Gc.leq[0, 1]
    GB = inductive_groupoid_of(b12)
    composable = int((GB.comp >= 0).sum())
    expected = sum(
        1 for s in range(len(b12)) for t in range(len(b12))
        if b12.mul(b12.inv(s), s) == b12.mul(t, b12.inv(t))
    )
    assert composable == expected


def test_restriction(b12):
    G = inductive_groupoid_of(b12)
    zero_obj = G.objects.index("0")
    arrow = b12.index("(1,2)")
    # restriction of (1,2) to the zero object is the zero arrow
    assert G.arrows[restriction(G, zero_obj, arrow)] == "0"
    # e = dom(g) restricts to g itself
    assert restriction(G, int(G.dom[arrow]), arrow) == arrow
    assert corestriction(G, arrow, int(G.cod[arrow])) == arrow
    with pytest.raises(NotBelow):
        restriction(G, G.objects.index("(1,1)"), arrow)
    # restriction of an identity to a smaller object is that identity
    Gc = inductive_groupoid_of(chain_semilattice(2))
    assert restriction(Gc, 1, int(Gc.identity[0])) == int(Gc.identity[1])


def test_pseudoproduct_matches_semigroup(small_corpus):
    for S in small_corpus:
        G = inductive_groupoid_of(S)
        for s in range(len(S)):
            for t in range(len(S)):
                assert pseudoproduct(G, s, t) == S.mul(s, t)


def test_pseudoproduct_meet_cases(chain3):
    G = inductive_groupoid_of(chain3)
    # identities compose to the meet in a semilattice
    for e in range(3):
        for f in range(3):
            assert pseudoproduct(G, e, f) == max(e, f)
    A = antichain_groupoid()
    assert validate_ordered_groupoid(A) == []
    assert meet_objects(A, 1, 2) is None
    assert pseudoproduct(A, 1, 2) is None
    assert not is_principally_inductive(A)
    with pytest.raises(NotPrincipallyInductive):
        C_of_groupoid(A)


def test_L_C_of_groupoid_agree(b12, chain2):
    for S in (b12, chain2, cyclic_group(3)):
        G = inductive_groupoid_of(S)
        assert categories_isomorphic(L_of_groupoid(G), L_of(S)) is not None
        assert categories_isomorphic(C_of_groupoid(G), C_of(S)) is not None


def test_is_enlargement(b12):
    G = inductive_groupoid_of(b12)
    all_arrows = list(range(G.n_arrows))
    assert is_enlargement(G, all_arrows)
    # the rank-one part {(1,1),(1,2),(2,1),(2,2)} is full but not an order ideal
    rank1 = [b12.index(n) for n in ("(1,1)", "(1,2)", "(2,1)", "(2,2)")]
    assert not is_enlargement(G, rank1)
    with pytest.raises(NotASubgroupoid):
        is_enlargement(G, [b12.index("(1,2)")])


def test_local_isomorphism(b12):
    G = inductive_groupoid_of(b12)
    ident = OrderedFunctor(G, G, np.arange(G.n_objects), np.arange(G.n_arrows))
    assert check_ordered_functor(ident)
    assert is_local_isomorphism(ident)
    # constant functor onto the top of the 2-chain: LI2 fails
    Gc = inductive_groupoid_of(chain_semilattice(2))
    const = OrderedFunctor(Gc, Gc, np.zeros(2, dtype=np.int64),
                           np.zeros(2, dtype=np.int64))
    rep = local_isomorphism_report(const)
    assert not rep["li2"] and not rep["local_isomorphism"]
    assert not check_weak_equivalence(L_of_ordered_functor(const))


def test_local_iso_matches_C_weak_equivalence(b12):
    # is_local_isomorphism(theta) == check_weak_equivalence(C(theta)) for
    # principally inductive groupoids
    G = inductive_groupoid_of(b12)
    CG = C_of_groupoid(G)
    cidx = CG.extra["index"]

    def C_of_functor(F):
        src = C_of_groupoid(F.source)
        dst = C_of_groupoid(F.target)
        didx = dst.extra["index"]
        om = F.obj_map.copy()
        mm = np.array(
            [didx[(int(F.obj_map[e]), int(F.arr_map[x]), int(F.obj_map[f]))]
             for (e, x, f) in src.extra["payload"]],
            dtype=np.int64,
        )
        return Functor(src, dst, om, mm)

    ident = OrderedFunctor(G, G, np.arange(G.n_objects), np.arange(G.n_arrows))
    assert is_local_isomorphism(ident) == check_weak_equivalence(C_of_functor(ident))
    Gc = inductive_groupoid_of(chain_semilattice(2))
    const = OrderedFunctor(Gc, Gc, np.zeros(2, dtype=np.int64),
                           np.zeros(2, dtype=np.int64))
    assert local_isomorphism_report(const)["local_isomorphism"] \
        == check_weak_equivalence(C_of_functor(const))


def test_ordered_groupoid_of_semigroup(b12, chain3):
    # an inverse semigroup, viewed as an everywhere-defined semigroupoid,
    # yields its inductive groupoid
    for S in (b12, chain3):
        R = make_inverse_semigroupoid(S.names, S.table)
        assert np.array_equal(R.star, S.star)
        G = ordered_groupoid_of(R)
        H = inductive_groupoid_of(S)
        assert np.array_equal(G.comp, H.comp)
        assert np.array_equal(G.leq, H.leq)
        assert G.objects == H.objects


def test_sub_ordered_groupoid_enlargement_inclusion(b12):
    G = inductive_groupoid_of(b12)
    H, incl = sub_ordered_groupoid(G, range(G.n_arrows))
    assert validate_ordered_groupoid(H) == []
    assert check_ordered_functor(incl)
    assert is_local_isomorphism(incl)
