"""Ordered groupoids, inductive groupoids, and inverse semigroupoids.

An ordered groupoid stores the arrow order as an explicit relation and
computes restrictions by scan-plus-uniqueness rather than by a formula,
so it also works for groupoids that do not come from semigroups.  The
inductive groupoid of an inverse semigroup has the elements as arrows,
the restricted product as composition, and the natural partial order.
"""

from dataclasses import dataclass, field

import numpy as np

from .categories import (
    FiniteCategory,
    Functor,
    build_category,
    check_weak_equivalence,
)
from .errors import (
    NotAnOrderedFunctor,
    NotASubgroupoid,
    NotBelow,
    NotInverseSemigroupoid,
    NotPrincipallyInductive,
    NotUnique,
)
from .semigroups import InverseSemigroup, idempotents, natural_leq


@dataclass(eq=False)
class OrderedGroupoid:
    objects: tuple
    obj_leq: np.ndarray       # objects x objects, bool
    arrows: tuple             # labels
    dom: np.ndarray
    cod: np.ndarray
    comp: np.ndarray          # comp[g, f] = g.f, -1 undefined
    inv: np.ndarray
    identity: np.ndarray      # object -> identity arrow
    leq: np.ndarray           # arrows x arrows, bool
    extra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.objects = tuple(self.objects)
        self.arrows = tuple(self.arrows)
        for name in ("dom", "cod", "comp", "inv", "identity"):
            a = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            a.setflags(write=False)
            setattr(self, name, a)
        for name in ("obj_leq", "leq"):
            a = np.ascontiguousarray(getattr(self, name), dtype=bool)
            a.setflags(write=False)
            setattr(self, name, a)

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_arrows(self):
        return len(self.arrows)

    def __repr__(self):
        return f"OrderedGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"


def _is_partial_order(rel) -> bool:
    n = rel.shape[0]
    if not np.all(np.diag(rel)):
        return False
    if np.any(rel & rel.T & ~np.eye(n, dtype=bool)):
        return False
    closure = rel.astype(bool)
    return not np.any((closure @ closure) & ~closure)


def validate_ordered_groupoid(G: OrderedGroupoid) -> list:
    """All ordered-groupoid axioms; returns a list of violations."""
    bad = []
    na = G.n_arrows
    dom, cod, comp, inv, leq = G.dom, G.cod, G.comp, G.inv, G.leq
    defined = comp >= 0
    if not np.array_equal(defined, dom[:, None] == cod[None, :]):
        bad.append("composition not defined exactly on matching pairs")
    for o in range(G.n_objects):
        i = int(G.identity[o])
        if dom[i] != o or cod[i] != o:
            bad.append(f"identity of {o} has wrong endpoints")
    g, f = np.nonzero(defined)
    if g.size:
        if not (np.all(dom[comp[g, f]] == dom[f]) and np.all(cod[comp[g, f]] == cod[g])):
            bad.append("composite endpoints wrong")
    ids = G.identity
    ar = np.arange(na)
    if na and not np.all(comp[ids[cod], ar] == ar):
        bad.append("left identity fails")
    if na and not np.all(comp[ar, ids[dom]] == ar):
        bad.append("right identity fails")
    if na and not np.all(comp[ar, inv] == ids[cod]):
        bad.append("g . g^-1 != id")
    if na and not np.all(comp[inv, ar] == ids[dom]):
        bad.append("g^-1 . g != id")
    for h in range(na):
        hg = comp[h]
        mask = defined & (hg >= 0)[:, None]
        if not mask.any():
            continue
        idx = np.where(defined, comp, 0)
        x = comp[h, idx]
        y = comp[np.where(hg >= 0, hg, 0)]
        if not np.array_equal(x[mask], y[mask]):
            bad.append("associativity fails")
            break
    if not _is_partial_order(G.leq):
        bad.append("arrow order is not a partial order")
    if not _is_partial_order(G.obj_leq):
        bad.append("object order is not a partial order")
    # identities carry the object order
    for a in range(G.n_objects):
        for b in range(G.n_objects):
            if G.obj_leq[a, b] != leq[int(ids[a]), int(ids[b])]:
                bad.append("object order disagrees with identity-arrow order")
                break
    x, y = np.nonzero(leq)
    if x.size:
        if not np.all(leq[inv[x], inv[y]]):
            bad.append("order not stable under inverse")
        if not np.all(G.obj_leq[dom[x], dom[y]]):
            bad.append("dom not monotone")
        if not np.all(G.obj_leq[cod[x], cod[y]]):
            bad.append("cod not monotone")
    for (a, b) in zip(x, y):
        for (u, v) in zip(x, y):
            if comp[a, u] >= 0 and comp[b, v] >= 0:
                if not leq[comp[a, u], comp[b, v]]:
                    bad.append("composition not monotone")
                    break
        else:
            continue
        break
    # discrete fibration: unique restriction for every e <= dom(g)
    for g_ in range(na):
        dg = int(dom[g_])
        for e in range(G.n_objects):
            if not G.obj_leq[e, dg]:
                continue
            below = [h for h in range(na) if leq[h, g_] and dom[h] == e]
            if len(below) != 1:
                bad.append(f"restriction of arrow {g_} to object {e} not unique")
    return bad


def inductive_groupoid_of(S: InverseSemigroup) -> OrderedGroupoid:
    """Arrows are the elements, composition is the restricted product."""
    tab, star = S.table, S.star
    E = idempotents(S)
    obj_of = {e: i for i, e in enumerate(E)}
    n = len(S)
    dom = np.array([obj_of[int(tab[star[s], s])] for s in range(n)])
    cod = np.array([obj_of[int(tab[s, star[s]])] for s in range(n)])
    comp = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        for t in range(n):
            if tab[star[s], s] == tab[t, star[t]]:
                comp[s, t] = tab[s, t]
    leq = np.zeros((n, n), dtype=bool)
    for s in range(n):
        for t in range(n):
            leq[s, t] = natural_leq(S, s, t)
    obj_leq = np.zeros((len(E), len(E)), dtype=bool)
    for i, e in enumerate(E):
        for j, f in enumerate(E):
            obj_leq[i, j] = tab[e, f] == e
    ident = np.array(E, dtype=np.int64)
    return OrderedGroupoid(
        tuple(S.names[e] for e in E), obj_leq, S.names, dom, cod, comp,
        S.star.copy(), ident, leq, {"kind": "inductive", "sgrp": S},
    )


def restriction(G: OrderedGroupoid, e: int, g: int) -> int:
    """The unique h <= g with dom(h) = e, for e <= dom(g)."""
    if not G.obj_leq[e, int(G.dom[g])]:
        raise NotBelow(witness=(e, g))
    below = [h for h in range(G.n_arrows) if G.leq[h, g] and G.dom[h] == e]
    if len(below) != 1:
        raise NotUnique(witness=(e, g, tuple(below)))
    return below[0]


def corestriction(G: OrderedGroupoid, g: int, e: int) -> int:
    """The unique h <= g with cod(h) = e, for e <= cod(g)."""
    if not G.obj_leq[e, int(G.cod[g])]:
        raise NotBelow(witness=(g, e))
    below = [h for h in range(G.n_arrows) if G.leq[h, g] and G.cod[h] == e]
    if len(below) != 1:
        raise NotUnique(witness=(g, e, tuple(below)))
    return below[0]


def meet_objects(G: OrderedGroupoid, a: int, b: int):
    lower = [c for c in range(G.n_objects) if G.obj_leq[c, a] and G.obj_leq[c, b]]
    for m in lower:
        if all(G.obj_leq[c, m] for c in lower):
            return m
    return None


def pseudoproduct(G: OrderedGroupoid, g: int, h: int):
    """g o h = (g|e)(e|h) over e = dom(g) meet cod(h); None when no meet."""
    e = meet_objects(G, int(G.dom[g]), int(G.cod[h]))
    if e is None:
        return None
    gr = restriction(G, e, g)
    hc = corestriction(G, h, e)
    out = int(G.comp[gr, hc])
    assert out >= 0
    return out


def is_principally_inductive(G: OrderedGroupoid) -> bool:
    """Every principal downset of objects is a meet semilattice."""
    for e in range(G.n_objects):
        down = [f for f in range(G.n_objects) if G.obj_leq[f, e]]
        for a in down:
            for b in down:
                if meet_objects(G, a, b) is None:
                    return False
    return True


def L_of_groupoid(G: OrderedGroupoid) -> FiniteCategory:
    """Pairs (e, g) with cod(g) <= e; composition via the pseudoproduct."""
    mors = []
    for e in range(G.n_objects):
        for g in range(G.n_arrows):
            if G.obj_leq[int(G.cod[g]), e]:
                mors.append((int(G.dom[g]), e,
                             f"({G.objects[e]},{G.arrows[g]})", (e, g)))

    def compose(pg, pf):
        (e, g), (_f, h) = pg, pf
        out = pseudoproduct(G, g, h)
        assert out is not None
        return (e, out)

    return build_category(G.objects, mors, compose,
                          lambda o: (o, int(G.identity[o])),
                          {"kind": "L_groupoid", "gpd": G})


def C_of_groupoid(G: OrderedGroupoid) -> FiniteCategory:
    """Triples (e, x, f) with dom(x) <= f and cod(x) <= e."""
    if not is_principally_inductive(G):
        raise NotPrincipallyInductive()
    mors = []
    for e in range(G.n_objects):
        for f in range(G.n_objects):
            for x in range(G.n_arrows):
                if G.obj_leq[int(G.cod[x]), e] and G.obj_leq[int(G.dom[x]), f]:
                    mors.append((f, e,
                                 f"({G.objects[e]},{G.arrows[x]},{G.objects[f]})",
                                 (e, x, f)))

    def compose(pg, pf):
        (e, x, f), (_f2, y, i) = pg, pf
        out = pseudoproduct(G, x, y)
        assert out is not None
        return (e, out, i)

    return build_category(G.objects, mors, compose,
                          lambda o: (o, int(G.identity[o]), o),
                          {"kind": "C_groupoid", "gpd": G})


def _subgroupoid_objects(G, arrows):
    objs = set()
    for a in arrows:
        objs.add(int(G.dom[a]))
        objs.add(int(G.cod[a]))
    return objs


def is_subgroupoid(G: OrderedGroupoid, arrows) -> bool:
    A = set(int(a) for a in arrows)
    if not A:
        return False
    for a in A:
        if int(G.inv[a]) not in A:
            return False
    for a in A:
        for b in A:
            c = int(G.comp[a, b])
            if c >= 0 and c not in A:
                return False
    for o in _subgroupoid_objects(G, A):
        if int(G.identity[o]) not in A:
            return False
    return True


def is_enlargement(G: OrderedGroupoid, sub_arrows) -> bool:
    """Full order-ideal subgroupoid meeting every isomorphism class of objects."""
    A = sorted(set(int(a) for a in sub_arrows))
    if not is_subgroupoid(G, A):
        raise NotASubgroupoid(witness=tuple(A))
    aset = set(A)
    objs = _subgroupoid_objects(G, A)
    # full
    for m in range(G.n_arrows):
        if int(G.dom[m]) in objs and int(G.cod[m]) in objs and m not in aset:
            return False
    # order ideal
    for m in range(G.n_arrows):
        for a in A:
            if G.leq[m, a] and m not in aset:
                return False
    # every object isomorphic to one in the subgroupoid
    for o in range(G.n_objects):
        if o in objs:
            continue
        if not any(int(G.dom[m]) == o and int(G.cod[m]) in objs
                   for m in range(G.n_arrows)):
            return False
    return True


def sub_ordered_groupoid(G: OrderedGroupoid, arrows):
    """The ordered subgroupoid on the given arrows plus its inclusion functor."""
    A = sorted(set(int(a) for a in arrows))
    if not is_subgroupoid(G, A):
        raise NotASubgroupoid(witness=tuple(A))
    objs = sorted(_subgroupoid_objects(G, A))
    opos = {o: i for i, o in enumerate(objs)}
    apos = {a: i for i, a in enumerate(A)}
    k = len(A)
    comp = np.full((k, k), -1, dtype=np.int64)
    for i, a in enumerate(A):
        for j, b in enumerate(A):
            c = int(G.comp[a, b])
            if c >= 0:
                comp[i, j] = apos[c]
    H = OrderedGroupoid(
        tuple(G.objects[o] for o in objs),
        G.obj_leq[np.ix_(objs, objs)].copy(),
        tuple(G.arrows[a] for a in A),
        np.array([opos[int(G.dom[a])] for a in A]),
        np.array([opos[int(G.cod[a])] for a in A]),
        comp,
        np.array([apos[int(G.inv[a])] for a in A]),
        np.array([apos[int(G.identity[o])] for o in objs]),
        G.leq[np.ix_(A, A)].copy(),
        {"kind": "sub", "parent": G, "arrow_of": tuple(A)},
    )
    incl = OrderedFunctor(H, G,
                          np.array(objs, dtype=np.int64),
                          np.array(A, dtype=np.int64))
    return H, incl


@dataclass(eq=False)
class OrderedFunctor:
    source: OrderedGroupoid
    target: OrderedGroupoid
    obj_map: np.ndarray
    arr_map: np.ndarray

    def __post_init__(self):
        self.obj_map = np.ascontiguousarray(self.obj_map, dtype=np.int64)
        self.arr_map = np.ascontiguousarray(self.arr_map, dtype=np.int64)


def check_ordered_functor(F: OrderedFunctor) -> bool:
    G, H = F.source, F.target
    om, am = F.obj_map, F.arr_map
    if om.shape != (G.n_objects,) or am.shape != (G.n_arrows,):
        return False
    if not np.all(H.dom[am] == om[G.dom]) or not np.all(H.cod[am] == om[G.cod]):
        return False
    if not np.all(am[G.identity] == H.identity[om]):
        return False
    if not np.all(am[G.inv] == H.inv[am]):
        return False
    g, f = np.nonzero(G.comp >= 0)
    if g.size and not np.all(am[G.comp[g, f]] == H.comp[am[g], am[f]]):
        return False
    x, y = np.nonzero(G.leq)
    if x.size and not np.all(H.leq[am[x], am[y]]):
        return False
    return True


def _groupoid_as_category(G: OrderedGroupoid) -> FiniteCategory:
    return FiniteCategory(G.objects, G.arrows, G.dom, G.cod, G.comp,
                          G.identity, {"kind": "groupoid", "gpd": G})


def L_of_ordered_functor(F: OrderedFunctor) -> Functor:
    """The induced functor L(G) -> L(H) on the pair categories."""
    LG = L_of_groupoid(F.source)
    LH = L_of_groupoid(F.target)
    idx = LH.extra["index"]
    om = F.obj_map.copy()
    mm = np.array(
        [idx[(int(F.obj_map[e]), int(F.arr_map[g]))] for (e, g) in LG.extra["payload"]],
        dtype=np.int64,
    )
    return Functor(LG, LH, om, mm)


def local_isomorphism_report(F: OrderedFunctor) -> dict:
    """(LI1) groupoid weak equivalence and (LI2) poset discrete fibration."""
    if not check_ordered_functor(F):
        raise NotAnOrderedFunctor()
    G, H = F.source, F.target
    li1 = check_weak_equivalence(
        Functor(_groupoid_as_category(G), _groupoid_as_category(H),
                F.obj_map, F.arr_map)
    )
    li2 = True
    for a in range(G.n_objects):
        fa = int(F.obj_map[a])
        for y in range(H.n_objects):
            if not H.obj_leq[y, fa]:
                continue
            lifts = [b for b in range(G.n_objects)
                     if G.obj_leq[b, a] and int(F.obj_map[b]) == y]
            if len(lifts) != 1:
                li2 = False
                break
        if not li2:
            break
    return {"li1": li1, "li2": li2, "local_isomorphism": li1 and li2}


def is_local_isomorphism(F: OrderedFunctor) -> bool:
    """(LI1) and (LI2); cross-checked against L(F) being a weak equivalence."""
    rep = local_isomorphism_report(F)
    lf_weak = check_weak_equivalence(L_of_ordered_functor(F))
    assert rep["local_isomorphism"] == lf_weak, \
        "local isomorphism and L(theta) weak equivalence disagree"
    return rep["local_isomorphism"]


# -- inverse semigroupoids ------------------------------------------------------

@dataclass(eq=False)
class InverseSemigroupoid:
    names: tuple
    table: np.ndarray  # -1 where undefined
    star: np.ndarray
    extra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.names = tuple(self.names)
        t = np.ascontiguousarray(self.table, dtype=np.int64)
        t.setflags(write=False)
        self.table = t
        s = np.ascontiguousarray(self.star, dtype=np.int64)
        s.setflags(write=False)
        self.star = s

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"InverseSemigroupoid(n={len(self)})"


def semigroupoid_violations(names, table) -> list:
    """Typed associativity, regularity, commuting idempotents, unique inverses."""
    bad = []
    n = len(names)
    tab = table
    for a in range(n):
        for b in range(n):
            ab = int(tab[a, b])
            for c in range(n):
                bc = int(tab[b, c])
                if ab >= 0 and bc >= 0:
                    if tab[ab, c] < 0 or tab[a, bc] < 0 or tab[ab, c] != tab[a, bc]:
                        bad.append(f"associativity fails at ({a},{b},{c})")
                elif ab >= 0 and tab[ab, c] >= 0 and bc < 0:
                    bad.append(f"definedness incoherent at ({a},{b},{c})")
    for a in range(n):
        if not any(tab[int(tab[a, b]), a] == a and tab[int(tab[b, a]), b] == b
                   for b in range(n) if tab[a, b] >= 0 and tab[b, a] >= 0):
            bad.append(f"element {a} has no inverse")
    idem = [e for e in range(n) if tab[e, e] == e]
    for e in idem:
        for f in idem:
            ef, fe = int(tab[e, f]), int(tab[f, e])
            if (ef >= 0) != (fe >= 0) or (ef >= 0 and ef != fe):
                bad.append(f"idempotents {e},{f} do not commute")
    if not bad:
        for a in range(n):
            invs = [b for b in range(n)
                    if tab[a, b] >= 0 and tab[b, a] >= 0
                    and tab[int(tab[a, b]), a] == a and tab[int(tab[b, a]), b] == b]
            if len(invs) != 1:
                bad.append(f"element {a} has {len(invs)} inverses")
    return bad


def make_inverse_semigroupoid(names, table, extra=None) -> InverseSemigroupoid:
    bad = semigroupoid_violations(names, table)
    if bad:
        raise NotInverseSemigroupoid("; ".join(bad[:3]))
    n = len(names)
    star = np.empty(n, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if (table[a, b] >= 0 and table[b, a] >= 0
                    and table[int(table[a, b]), a] == a
                    and table[int(table[b, a]), b] == b):
                star[a] = b
                break
    return InverseSemigroupoid(tuple(names), np.asarray(table), star, dict(extra or {}))


def ordered_groupoid_of(R: InverseSemigroupoid) -> OrderedGroupoid:
    """Restricted product plus the natural partial order s <= t iff s = t(s*s)."""
    bad = semigroupoid_violations(R.names, R.table)
    if bad:
        raise NotInverseSemigroupoid("; ".join(bad[:3]))
    tab, star = R.table, R.star
    n = len(R)
    idem = [e for e in range(n) if tab[e, e] == e]
    obj_of = {e: i for i, e in enumerate(idem)}
    rr = np.array([int(tab[star[a], a]) for a in range(n)])
    ss = np.array([int(tab[a, star[a]]) for a in range(n)])
    dom = np.array([obj_of[int(r)] for r in rr])
    cod = np.array([obj_of[int(s)] for s in ss])
    comp = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if rr[a] == ss[b]:
                c = int(tab[a, b])
                assert c >= 0
                comp[a, b] = c
    leq = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            prod = int(tab[b, rr[a]]) if tab[b, rr[a]] >= 0 else -1
            leq[a, b] = prod == a
    obj_leq = np.zeros((len(idem), len(idem)), dtype=bool)
    for i, e in enumerate(idem):
        for j, f in enumerate(idem):
            obj_leq[i, j] = tab[f, e] == e
    G = OrderedGroupoid(
        tuple(R.names[e] for e in idem), obj_leq, R.names, dom, cod, comp,
        star.copy(), np.array(idem, dtype=np.int64), leq,
        {"kind": "of_semigroupoid", "sgpd": R},
    )
    bad = validate_ordered_groupoid(G)
    if bad:
        raise NotInverseSemigroupoid("ordered groupoid invariants fail: " + bad[0])
    return G
