import numpy as np
import pytest

from morita.errors import (
    IdempotentsDontCommute,
    NotAssociative,
    NotASubsemigroup,
    NotRegular,
    SizeLimit,
)
from morita.formats import parse_semigroup
from morita.semigroups import (
    FiniteSemigroup,
    as_inverse,
    assoc_witness,
    brandt,
    chain_semilattice,
    cyclic_group,
    group_with_zero,
    idempotents,
    inverses_of,
    is_locally_E_unitary,
    is_semigroup_enlargement,
    is_subsemigroup,
    local_unit_flags,
    natural_leq,
    restrict_inverse,
    subsemigroup_closure,
    symmetric_inverse_monoid,
)


def brute_force_assoc(table):
    n = len(table)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    return (i, j, k)
    return None


def brute_force_inverses(table, s):
    n = len(table)
    return [t for t in range(n)
            if table[table[s][t]][s] == s and table[table[t][s]][t] == t]


def test_parse_trivial():
    S = parse_semigroup("1\ne\ne\n")
    assert len(S) == 1 and S.names == ("e",)


def test_parse_two_chain():
    S = parse_semigroup("# a chain\n2\ne z\ne z\nz z\n")
    assert idempotents(S) == [0, 1]


def test_row_swap_breaks_associativity():
    # swap the first and last rows of the 3-chain table; check the witness
    # against an independent brute-force scan of all 27 triples
    rows = [[2, 2, 2], [1, 1, 2], [0, 1, 2]]
    expected = brute_force_assoc(rows)
    assert expected is not None
    text = "3\na b c\nc c c\nb b c\na b c\n"
    with pytest.raises(NotAssociative) as ei:
        parse_semigroup(text)
    assert ei.value.witness == expected


def test_idempotents(b12):
    assert [cyclic_group(2).names[e] for e in idempotents(cyclic_group(2))] == ["g0"]
    assert idempotents(chain_semilattice(2)) == [0, 1]
    assert {b12.names[e] for e in idempotents(b12)} == {"(1,1)", "(2,2)", "0"}


def test_as_inverse_group():
    C2 = cyclic_group(2)
    assert C2.inv(1) == 1


def test_as_inverse_brandt_matches_search(b12):
    # oracle: solve sts = s and tst = t over the raw table
    rebuilt = as_inverse(FiniteSemigroup(b12.names, b12.table))
    for s in range(len(b12)):
        expected = brute_force_inverses(b12.table.tolist(), s)
        assert len(expected) == 1
        assert rebuilt.inv(s) == expected[0] == b12.inv(s)
    assert b12.names[b12.inv(b12.index("(1,2)"))] == "(2,1)"


def test_left_zero_rejected():
    # xy = x: idempotents everywhere, nothing commutes
    table = np.array([[0, 0], [1, 1]])
    with pytest.raises(IdempotentsDontCommute) as ei:
        as_inverse(FiniteSemigroup(("a", "b"), table))
    assert ei.value.witness == (0, 1)


def test_null_semigroup_not_regular():
    # all products equal z; the element a has no inverse
    table = np.array([[1, 1], [1, 1]])
    with pytest.raises(NotRegular):
        as_inverse(FiniteSemigroup(("a", "z"), table))


def test_inverses_of_rectangular_band():
    # (i,j)(k,l) = (i,l) on 2x2; compare against the brute-force solver
    elems = [(i, j) for i in range(2) for j in range(2)]
    pos = {e: k for k, e in enumerate(elems)}
    table = [[pos[(elems[a][0], elems[b][1])] for b in range(4)] for a in range(4)]
    S = FiniteSemigroup(tuple(map(str, elems)), np.array(table))
    for s in range(4):
        assert inverses_of(S, s) == brute_force_inverses(table, s)
        assert len(inverses_of(S, s)) == 4


def test_inverses_of_cyclic3():
    C3 = cyclic_group(3)
    assert inverses_of(C3, 1) == [2]


def test_natural_leq(b12, chain2):
    # z <= e in the chain; groups have the trivial order; 0 <= (1,2) in B(1,2)
    assert natural_leq(chain2, 1, 0) and not natural_leq(chain2, 0, 1)
    C3 = cyclic_group(3)
    for s in range(3):
        for t in range(3):
            assert natural_leq(C3, s, t) == (s == t)
    assert natural_leq(b12, b12.index("0"), b12.index("(1,2)"))


def test_natural_order_axioms(small_corpus):
    for S in small_corpus:
        n = len(S)
        leq = [[natural_leq(S, a, b) for b in range(n)] for a in range(n)]
        for a in range(n):
            assert leq[a][a]
            for b in range(n):
                if leq[a][b] and leq[b][a]:
                    assert a == b
                for c in range(n):
                    if leq[a][b] and leq[b][c]:
                        assert leq[a][c]
        # compatibility: s<=t, u<=v implies su <= tv
        for s in range(n):
            for t in range(n):
                if not leq[s][t]:
                    continue
                for u in range(n):
                    for v in range(n):
                        if leq[u][v]:
                            assert leq[S.mul(s, u)][S.mul(t, v)]


def test_idempotents_closed_and_commutative(small_corpus):
    for S in small_corpus:
        E = idempotents(S)
        for e in E:
            for f in E:
                assert S.mul(e, f) in E
                assert S.mul(e, f) == S.mul(f, e)


def test_star_axioms(small_corpus):
    for S in small_corpus:
        for s in range(len(S)):
            st = S.inv(s)
            assert S.mul(S.mul(s, st), s) == s
            assert S.mul(S.mul(st, s), st) == st
            assert S.inv(st) == s
            for t in range(len(S)):
                assert S.inv(S.mul(s, t)) == S.mul(S.inv(t), S.inv(s))


def test_local_unit_flags(small_corpus):
    for S in small_corpus:
        flags = local_unit_flags(S)
        assert flags.right_local_units and flags.left_local_units
        assert flags.local_units and flags.sandwich
    # {a, z} with all products z: a is not in SE(S)
    null = FiniteSemigroup(("a", "z"), np.array([[1, 1], [1, 1]]))
    flags = local_unit_flags(null)
    assert not flags.right_local_units and not flags.sandwich


def test_enlargement_identity_case():
    # with S = T the condition reduces to T = T^3
    C2 = cyclic_group(2)
    assert is_semigroup_enlargement(C2, range(2))
    null3 = FiniteSemigroup(("a", "b", "z"), np.full((3, 3), 2))
    assert not is_semigroup_enlargement(null3, range(3))


def test_enlargement_brandt(b12, chain2):
    sub = [b12.index("(1,1)"), b12.index("0")]
    assert is_semigroup_enlargement(b12, sub)
    rest, _ = restrict_inverse(b12, sub)
    # the local submonoid is the 2-chain
    assert sorted(rest.table.ravel().tolist()) == sorted(chain2.table.ravel().tolist())
    # {z} inside the chain: zSz = {z} but TzT != T
    assert not is_semigroup_enlargement(chain2, [1])
    with pytest.raises(NotASubsemigroup):
        is_semigroup_enlargement(b12, [b12.index("(1,2)")])


def test_locally_e_unitary(b12, sim2):
    assert is_locally_E_unitary(chain_semilattice(3))
    assert is_locally_E_unitary(cyclic_group(4))
    assert is_locally_E_unitary(b12)
    # the symmetric inverse monoid has nil <= swap inside the full submonoid
    assert not is_locally_E_unitary(sim2)


def test_builders():
    assert len(chain_semilattice(1)) == 1
    assert len(symmetric_inverse_monoid(2)) == 7
    assert len(symmetric_inverse_monoid(3)) == 34
    B = brandt(cyclic_group(1), 2)
    assert len(B) == 2 * 2 * 1 + 1 and len(idempotents(B)) == 3
    assert len(brandt(cyclic_group(2), 2)) == 9
    assert len(group_with_zero(cyclic_group(3))) == 4
    with pytest.raises(SizeLimit):
        symmetric_inverse_monoid(5)
    with pytest.raises(SizeLimit):
        cyclic_group(0)


def test_builders_are_inverse(small_corpus, b13, bc22):
    # re-derive the star array by exhaustive search and compare
    for S in list(small_corpus) + [b13, bc22]:
        assert assoc_witness(S) is None
        rebuilt = as_inverse(FiniteSemigroup(S.names, S.table))
        assert np.array_equal(rebuilt.star, S.star)


def test_subsemigroup_closure(sim2):
    full = subsemigroup_closure(sim2, range(len(sim2)))
    assert full == list(range(len(sim2)))
    one = subsemigroup_closure(sim2, [sim2.names.index("nil")], star_closed=True)
    assert len(one) == 1
    assert is_subsemigroup(sim2, one)
