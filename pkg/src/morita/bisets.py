"""Equivalence bisets and the top-level Morita machinery.

An equivalence biset for inverse semigroups S and T is an (S,T)-biset X
with two surjective pairings X x X -> S and X x X -> T subject to the
seven compatibility axioms (M1)-(M7).  This module can

  * verify a candidate biset axiom by axiom, with witnesses,
  * extract a biset from a regular joint enlargement,
  * build the bipartite category [L(S), L(T)] and the intermediate
    inverse semigroupoid from a biset, and convert back,
  * decide Morita equivalence through the Cauchy completions, and
  * search exhaustively for a biset of bounded size (the independent
    oracle for the decision procedure).
"""

from dataclasses import dataclass, field

import numpy as np

from .categories import (
    C_of,
    FiniteCategory,
    Functor,
    L_of,
    SkeletonData,
    build_category,
    categories_equivalent,
    skeleton_with_maps,
)
from .errors import (
    AssociativityFailure,
    BudgetExceeded,
    InvalidBiset,
    NotAnEnlargement,
    PreconditionFailed,
    UndefinedPseudoproduct,
)
from .groupoids import (
    InverseSemigroupoid,
    OrderedFunctor,
    OrderedGroupoid,
    check_ordered_functor,
    inductive_groupoid_of,
    is_enlargement,
    make_inverse_semigroupoid,
    ordered_groupoid_of,
    pseudoproduct,
    semigroupoid_violations,
)
from .semigroups import (
    InverseSemigroup,
    idempotents,
    inverses_of,
    is_semigroup_enlargement,
    restrict_inverse,
)


@dataclass(eq=False)
class EquivalenceBiset:
    S: InverseSemigroup
    T: InverseSemigroup
    points: tuple
    left_act: np.ndarray   # [s, x] -> x
    right_act: np.ndarray  # [x, t] -> x
    inner_S: np.ndarray    # [x, y] -> element of S
    inner_T: np.ndarray    # [x, y] -> element of T
    extra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.points = tuple(self.points)
        nx = len(self.points)
        shapes = {
            "left_act": (len(self.S), nx),
            "right_act": (nx, len(self.T)),
            "inner_S": (nx, nx),
            "inner_T": (nx, nx),
        }
        for name, shape in shapes.items():
            a = np.ascontiguousarray(getattr(self, name), dtype=np.int64).reshape(shape)
            a.setflags(write=False)
            setattr(self, name, a)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return (f"EquivalenceBiset(|X|={len(self)}, "
                f"|S|={len(self.S)}, |T|={len(self.T)})")


@dataclass
class BisetReport:
    entries: list  # (check name, ok, witness or "")

    @property
    def passed(self) -> bool:
        return all(ok for (_n, ok, _w) in self.entries)

    def failures(self):
        return [(n, w) for (n, ok, w) in self.entries if not ok]


def verify_biset(B: EquivalenceBiset) -> BisetReport:
    """Exhaustive check of the action laws, (M1)-(M7), and pairing surjectivity.

    Failures become report entries with the first witness in index order;
    nothing raises.
    """
    S, T = B.S, B.T
    L, R, P, Q = B.left_act, B.right_act, B.inner_S, B.inner_T
    tS, tT = S.table, T.table
    sS, sT = S.star, T.star
    nx = len(B)
    ns, nt = len(S), len(T)
    xs = np.arange(nx)
    entries = []

    def add(name, witness_fn):
        w = witness_fn()
        entries.append((name, w is None, "" if w is None else str(w)))

    def scan(outer, inner_cond):
        # inner_cond(i) is a boolean array; returns (i, *index) of first failure
        for i in outer:
            bad = np.argwhere(~inner_cond(i))
            if bad.size:
                return (i, *map(int, bad[0]))
        return None

    if nx == 0:
        for name in ("left_action_law", "right_action_law", "biset_compatibility",
                     "M1", "M2", "M3", "M4", "M5", "M6", "M7"):
            entries.append((name, True, ""))
    else:
        add("left_action_law", lambda: scan(
            ((s1, s2) for s1 in range(ns) for s2 in range(ns)),
            lambda p: L[tS[p[0], p[1]], :] == L[p[0], L[p[1], :]]))
        add("right_action_law", lambda: scan(
            ((t1, t2) for t1 in range(nt) for t2 in range(nt)),
            lambda p: R[:, tT[p[0], p[1]]] == R[R[:, p[0]], p[1]]))
        add("biset_compatibility", lambda: scan(
            ((s, t) for s in range(ns) for t in range(nt)),
            lambda p: R[L[p[0], :], p[1]] == L[p[0], R[:, p[1]]]))
        add("M1", lambda: scan(range(ns), lambda s: P[L[s, :], :] == tS[s, P]))
        add("M2", lambda: scan([0], lambda _: P.T == sS[P]))
        add("M3", lambda: scan([0], lambda _: L[P[xs, xs], xs] == xs))
        add("M4", lambda: scan(range(nt), lambda t: Q[:, R[:, t]] == tT[Q, t]))
        add("M5", lambda: scan([0], lambda _: Q == sT[Q.T]))
        add("M6", lambda: scan([0], lambda _: R[xs, Q[xs, xs]] == xs))
        add("M7", lambda: scan(range(nx), lambda z: L[P, z] == R[:, Q[:, z]]))
    surj_S = set(int(v) for v in P.ravel()) == set(range(ns))
    entries.append(("inner_S_surjective", surj_S,
                    "" if surj_S else "some element of S is not an inner product"))
    surj_T = set(int(v) for v in Q.ravel()) == set(range(nt))
    entries.append(("inner_T_surjective", surj_T,
                    "" if surj_T else "some element of T is not an inner product"))
    return BisetReport(entries)


# -- biset from a regular joint enlargement ------------------------------------

def biset_from_regular_enlargement(R, S_subset, T_subset) -> EquivalenceBiset:
    """Extract the equivalence biset of a regular joint enlargement.

    X is the set of pairs (x, x') with x in SRT and x' an inverse of x
    lying in TRS; the actions are s(x,x') = (sx, x's*) and (x,x')t =
    (xt, t*x'), and the pairings multiply across the pair.  All inverse
    pairs are kept as distinct points.
    """
    S_subset = sorted(set(int(a) for a in S_subset))
    T_subset = sorted(set(int(a) for a in T_subset))
    try:
        S, s_old = restrict_inverse(R, S_subset)
        T, t_old = restrict_inverse(R, T_subset)
    except Exception as exc:
        raise PreconditionFailed(f"subsets must be inverse subsemigroups: {exc}")
    for a in range(len(R)):
        if not inverses_of(R, a):
            raise PreconditionFailed("R is not regular", witness=a)
    if not is_semigroup_enlargement(R, S_subset):
        raise PreconditionFailed("R is not an enlargement of S")
    if not is_semigroup_enlargement(R, T_subset):
        raise PreconditionFailed("R is not an enlargement of T")

    tab = R.table
    full = np.arange(len(R))
    SR = np.unique(tab[np.ix_(S_subset, full)])
    SRT = set(int(v) for v in np.unique(tab[np.ix_(SR, T_subset)]))
    TR = np.unique(tab[np.ix_(T_subset, full)])
    TRS = set(int(v) for v in np.unique(tab[np.ix_(TR, S_subset)]))

    points = []
    for x in sorted(SRT):
        for xp in inverses_of(R, x):
            if xp in TRS:
                points.append((x, xp))
    pos = {p: i for i, p in enumerate(points)}
    s_new = {a: i for i, a in enumerate(s_old)}
    t_new = {a: i for i, a in enumerate(t_old)}

    nx = len(points)
    left = np.empty((len(S), nx), dtype=np.int64)
    right = np.empty((nx, len(T)), dtype=np.int64)
    innS = np.empty((nx, nx), dtype=np.int64)
    innT = np.empty((nx, nx), dtype=np.int64)
    for i, (x, xp) in enumerate(points):
        for si, a in enumerate(s_old):
            astar = s_old[int(S.star[si])]
            key = (int(tab[a, x]), int(tab[xp, astar]))
            if key not in pos:
                raise InvalidBiset(f"left action leaves X at {key}")
            left[si, i] = pos[key]
        for ti, b in enumerate(t_old):
            bstar = t_old[int(T.star[ti])]
            key = (int(tab[x, b]), int(tab[bstar, xp]))
            if key not in pos:
                raise InvalidBiset(f"right action leaves X at {key}")
            right[i, ti] = pos[key]
    for i, (x, xp) in enumerate(points):
        for j, (y, yp) in enumerate(points):
            v = int(tab[x, yp])
            if v not in s_new:
                raise InvalidBiset(f"inner product <{i},{j}> lands outside S")
            innS[i, j] = s_new[v]
            w = int(tab[xp, y])
            if w not in t_new:
                raise InvalidBiset(f"inner product [{i},{j}] lands outside T")
            innT[i, j] = t_new[w]
    names = tuple(f"({R.names[x]},{R.names[xp]})" for (x, xp) in points)
    B = EquivalenceBiset(S, T, names, left, right, innS, innT,
                         {"kind": "from_enlargement", "pairs": tuple(points),
                          "ambient": R, "s_old": tuple(s_old), "t_old": tuple(t_old)})
    report = verify_biset(B)
    if not report.passed:
        raise InvalidBiset(f"extracted biset fails: {report.failures()[:2]}")
    return B


# -- the inverse semigroupoid R(S, T; X) ---------------------------------------

def build_R_semigroupoid(B: EquivalenceBiset) -> InverseSemigroupoid:
    """The four-part semigroupoid S' + T' + X-bridges, with the eight products.

    Raises InvalidBiset when B fails verification, and AssociativityFailure
    if the assembled table is not associative (which would be a bug, not a
    property of the input).
    """
    report = verify_biset(B)
    if not report.passed:
        raise InvalidBiset(f"biset fails verification: {report.failures()[:2]}")
    S, T = B.S, B.T
    nx = len(B)
    elems = ([("S", s) for s in range(len(S))] + [("T", t) for t in range(len(T))]
             + [("X", x) for x in range(nx)] + [("Y", x) for x in range(nx)])
    pos = {e: i for i, e in enumerate(elems)}
    names = []
    for kind, v in elems:
        if kind == "S":
            names.append(f"s_{S.names[v]}")
        elif kind == "T":
            names.append(f"t_{T.names[v]}")
        elif kind == "X":
            names.append(f"x_{B.points[v]}")
        else:
            names.append(f"y_{B.points[v]}")

    def product(a, b):
        (ka, va), (kb, vb) = a, b
        if ka == "S" and kb == "S":
            return ("S", int(S.table[va, vb]))
        if ka == "T" and kb == "T":
            return ("T", int(T.table[va, vb]))
        if ka == "S" and kb == "X":
            return ("X", int(B.left_act[va, vb]))
        if ka == "X" and kb == "T":
            return ("X", int(B.right_act[va, vb]))
        if ka == "T" and kb == "Y":
            return ("Y", int(B.right_act[vb, int(T.star[va])]))
        if ka == "Y" and kb == "S":
            return ("Y", int(B.left_act[int(S.star[vb]), va]))
        if ka == "Y" and kb == "X":
            return ("T", int(B.inner_T[va, vb]))
        if ka == "X" and kb == "Y":
            return ("S", int(B.inner_S[va, vb]))
        return None

    n = len(elems)
    table = np.full((n, n), -1, dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            p = product(a, b)
            if p is not None:
                table[i, j] = pos[p]
    bad = semigroupoid_violations(names, table)
    assoc_bad = [m for m in bad if "associativity" in m or "definedness" in m]
    if assoc_bad:
        raise AssociativityFailure(assoc_bad[0])
    if bad:
        raise InvalidBiset("semigroupoid checks fail: " + bad[0])
    Rg = make_inverse_semigroupoid(
        names, table,
        {"kind": "R_semigroupoid", "biset": B, "elems": tuple(elems),
         "pos": pos,
         "s_part": tuple(pos[("S", s)] for s in range(len(S))),
         "t_part": tuple(pos[("T", t)] for t in range(len(T)))},
    )
    # enlargement identities: S' = S'RS', R = RS'R, T' = T'RT', R = RT'R
    def pset(A, Bset):
        out = set()
        for a in A:
            for b in Bset:
                v = int(table[a, b])
                if v >= 0:
                    out.add(v)
        return out

    sp = set(Rg.extra["s_part"])
    tp = set(Rg.extra["t_part"])
    everything = set(range(n))
    if pset(pset(sp, everything), sp) != sp:
        raise InvalidBiset("S' = S'RS' fails")
    if pset(pset(everything, sp), everything) != everything:
        raise InvalidBiset("R = RS'R fails")
    if pset(pset(tp, everything), tp) != tp:
        raise InvalidBiset("T' = T'RT' fails")
    if pset(pset(everything, tp), everything) != everything:
        raise InvalidBiset("R = RT'R fails")
    return Rg


def build_bipartite_U(B: EquivalenceBiset):
    """The bipartite category [L(S), L(T)] of a biset, with both embeddings.

    Morphisms are pairs (c, r) with c an idempotent of the semigroupoid
    R(S,T;X) and cr = r; this realizes the four morphism classes (the two
    pair categories and the bridge morphisms (x,d), (x,e)) with the
    composition induced by the eight product rules.  Returns
    (U, S_part_objects, T_part_objects, P: L(S) -> U, Q: L(T) -> U).
    """
    Rg = build_R_semigroupoid(B)
    tab = Rg.table
    star = Rg.star
    n = len(Rg)
    idem = [e for e in range(n) if tab[e, e] == e]
    obj_of = {e: i for i, e in enumerate(idem)}
    rr = [int(tab[star[r], r]) for r in range(n)]
    mors = []
    for c in idem:
        for r in range(n):
            if tab[c, r] == r:
                mors.append((obj_of[rr[r]], obj_of[c],
                             f"({Rg.names[c]}|{Rg.names[r]})", (c, r)))

    def compose(pg, pf):
        (c1, r1), (_c2, r2) = pg, pf
        v = int(tab[r1, r2])
        assert v >= 0
        return (c1, v)

    U = build_category(tuple(Rg.names[e] for e in idem), mors, compose,
                       lambda o: (idem[o], idem[o]),
                       {"kind": "bipartite_U", "sgpd": Rg})
    elems = Rg.extra["elems"]
    s_objs = [obj_of[e] for e in idem if elems[e][0] == "S"]
    t_objs = [obj_of[e] for e in idem if elems[e][0] == "T"]

    uidx = U.extra["index"]
    pos = Rg.extra["pos"]
    LS, LT = L_of(B.S), L_of(B.T)

    def embed(Lc, tag):
        om = np.array([obj_of[pos[(tag, e)]] for e in Lc.extra["obj_elt"]],
                      dtype=np.int64)
        mm = np.array([uidx[(pos[(tag, e)], pos[(tag, s)])]
                       for (e, s) in Lc.extra["payload"]], dtype=np.int64)
        return Functor(Lc, U, om, mm)

    return U, s_objs, t_objs, embed(LS, "S"), embed(LT, "T")


def biset_from_ordered_enlargement(G: OrderedGroupoid, S: InverseSemigroup,
                                   T: InverseSemigroup, emb_S, emb_T
                                   ) -> EquivalenceBiset:
    """Recover a biset from a bipartite ordered-groupoid enlargement.

    emb_S / emb_T map semigroup elements to arrows of G and must embed the
    inductive groupoids as enlargements.  X is the set of arrows with
    domain in the T part and codomain in the S part; actions and pairings
    are pseudoproducts.
    """
    emb_S = np.ascontiguousarray(emb_S, dtype=np.int64)
    emb_T = np.ascontiguousarray(emb_T, dtype=np.int64)
    for (sgrp, emb) in ((S, emb_S), (T, emb_T)):
        ig = inductive_groupoid_of(sgrp)
        om = np.full(ig.n_objects, -1, dtype=np.int64)
        for i, e in enumerate(idempotents(sgrp)):
            om[i] = G.dom[int(emb[e])]
        F = OrderedFunctor(ig, G, om, emb)
        if len(set(int(v) for v in emb)) != len(sgrp) or not check_ordered_functor(F):
            raise NotAnEnlargement("embedding is not an ordered-groupoid embedding")
    if not is_enlargement(G, [int(v) for v in emb_S]):
        raise NotAnEnlargement("G is not an enlargement of the image of G(S)")
    if not is_enlargement(G, [int(v) for v in emb_T]):
        raise NotAnEnlargement("G is not an enlargement of the image of G(T)")

    s_of_arrow = {int(a): s for s, a in enumerate(emb_S)}
    t_of_arrow = {int(a): t for t, a in enumerate(emb_T)}
    s_objs = {int(G.dom[int(a)]) for a in emb_S} | {int(G.cod[int(a)]) for a in emb_S}
    t_objs = {int(G.dom[int(a)]) for a in emb_T} | {int(G.cod[int(a)]) for a in emb_T}
    X = [x for x in range(G.n_arrows)
         if int(G.dom[x]) in t_objs and int(G.cod[x]) in s_objs]
    pos = {x: i for i, x in enumerate(X)}

    def pp(a, b):
        v = pseudoproduct(G, a, b)
        if v is None:
            raise UndefinedPseudoproduct(witness=(a, b))
        return v

    nx = len(X)
    left = np.empty((len(S), nx), dtype=np.int64)
    right = np.empty((nx, len(T)), dtype=np.int64)
    innS = np.empty((nx, nx), dtype=np.int64)
    innT = np.empty((nx, nx), dtype=np.int64)
    for i, x in enumerate(X):
        for s in range(len(S)):
            left[s, i] = pos[pp(int(emb_S[s]), x)]
        for t in range(len(T)):
            right[i, t] = pos[pp(x, int(emb_T[t]))]
    for i, x in enumerate(X):
        for j, y in enumerate(X):
            v = pp(x, int(G.inv[y]))
            if v not in s_of_arrow:
                raise InvalidBiset("pairing <x,y> lands outside the S part")
            innS[i, j] = s_of_arrow[v]
            w = pp(int(G.inv[x]), y)
            if w not in t_of_arrow:
                raise InvalidBiset("pairing [x,y] lands outside the T part")
            innT[i, j] = t_of_arrow[w]
    B = EquivalenceBiset(S, T, tuple(G.arrows[x] for x in X),
                         left, right, innS, innT,
                         {"kind": "from_ordered_enlargement", "arrows": tuple(X)})
    report = verify_biset(B)
    if not report.passed:
        raise InvalidBiset(f"recovered biset fails: {report.failures()[:2]}")
    return B


# -- the decision procedure ------------------------------------------------------

@dataclass(eq=False)
class MoritaDecision:
    S: InverseSemigroup
    T: InverseSemigroup
    equivalent: bool
    cauchy_S: FiniteCategory
    cauchy_T: FiniteCategory
    skeleton_S: SkeletonData
    skeleton_T: SkeletonData
    forward: Functor = None   # C(S) -> C(T) when equivalent
    backward: Functor = None


def morita_equivalent(S: InverseSemigroup, T: InverseSemigroup) -> MoritaDecision:
    """Decide Morita equivalence through the Cauchy completions."""
    CS, CT = C_of(S), C_of(T)
    pair = categories_equivalent(CS, CT)
    return MoritaDecision(
        S, T, pair is not None, CS, CT,
        skeleton_with_maps(CS), skeleton_with_maps(CT),
        None if pair is None else pair[0],
        None if pair is None else pair[1],
    )


# -- exhaustive biset search (independent oracle) --------------------------------

class _BisetSearch:
    """DFS with watched-constraint propagation over the four biset tables.

    Cells: left action L[s,x], right action R[x,t], pairings P[x,y] -> S
    and Q[x,y] -> T.  Point relabelling symmetry is broken by requiring
    the diagonal signatures (P[x,x], Q[x,x]) to be non-decreasing in x.
    The budget counts cell assignments.
    """

    def __init__(self, S, T, nx, budget, counter):
        self.S, self.T, self.nx = S, T, nx
        self.tS, self.sS = S.table, S.star
        self.tT, self.sT = T.table, T.star
        ns, nt = len(S), len(T)
        self.ns, self.nt = ns, nt
        self.off_R = ns * nx
        self.off_P = self.off_R + nx * nt
        self.off_Q = self.off_P + nx * nx
        self.ncells = self.off_Q + nx * nx
        self.val = [-1] * self.ncells
        self.trail = []
        self.queue = []
        self.budget = budget
        self.counter = counter
        self._build_instances()
        self._build_order()

    # cell ids
    def L(self, s, x):
        return s * self.nx + x

    def R(self, x, t):
        return self.off_R + x * self.nt + t

    def P(self, x, y):
        return self.off_P + x * self.nx + y

    def Q(self, x, y):
        return self.off_Q + x * self.nx + y

    def _build_instances(self):
        nx, ns, nt = self.nx, self.ns, self.nt
        watch = [[] for _ in range(self.ncells)]
        insts = []

        def add(inst, cells):
            k = len(insts)
            insts.append(inst)
            for c in set(cells):
                watch[c].append(k)

        for s1 in range(ns):
            for s2 in range(ns):
                for x in range(nx):
                    add(("ll", s1, s2, x),
                        [self.L(s2, x), self.L(int(self.tS[s1, s2]), x)]
                        + [self.L(s1, v) for v in range(nx)])
        for x in range(nx):
            for t1 in range(nt):
                for t2 in range(nt):
                    add(("rl", x, t1, t2),
                        [self.R(x, t1), self.R(x, int(self.tT[t1, t2]))]
                        + [self.R(v, t2) for v in range(nx)])
        for s in range(ns):
            for x in range(nx):
                for t in range(nt):
                    add(("cp", s, x, t),
                        [self.L(s, x), self.R(x, t)]
                        + [self.R(v, t) for v in range(nx)]
                        + [self.L(s, w) for w in range(nx)])
        for s in range(ns):
            for x in range(nx):
                for y in range(nx):
                    add(("m1", s, x, y),
                        [self.L(s, x), self.P(x, y)]
                        + [self.P(v, y) for v in range(nx)])
        for x in range(nx):
            for y in range(x, nx):
                add(("m2", x, y), [self.P(x, y), self.P(y, x)])
                add(("m5", x, y), [self.Q(x, y), self.Q(y, x)])
        for x in range(nx):
            add(("m3", x), [self.P(x, x)])
            add(("m6", x), [self.Q(x, x)])
        for x in range(nx):
            for y in range(nx):
                for t in range(nt):
                    add(("m4", x, y, t),
                        [self.R(y, t), self.Q(x, y)]
                        + [self.Q(x, v) for v in range(nx)])
        for x in range(nx):
            for y in range(nx):
                for z in range(nx):
                    add(("m7", x, y, z),
                        [self.P(x, y), self.Q(y, z)]
                        + [self.L(v, z) for v in range(self.ns)]
                        + [self.R(x, w) for w in range(self.nt)])
        self.insts = insts
        self.watch = watch

    def _build_order(self):
        order = []
        for x in range(self.nx):
            order.append(self.P(x, x))
            order.append(self.Q(x, x))
            for s in range(self.ns):
                order.append(self.L(s, x))
            for t in range(self.nt):
                order.append(self.R(x, t))
            for y in range(x):
                order.extend([self.P(x, y), self.P(y, x),
                              self.Q(x, y), self.Q(y, x)])
        self.order = order
        dom = []
        for c in order:
            if c < self.off_R:
                dom.append(self.nx)
            elif c < self.off_P:
                dom.append(self.nx)
            elif c < self.off_Q:
                dom.append(self.ns)
            else:
                dom.append(self.nt)
        self.domain_of = dict(zip(order, dom))

    def assign(self, cell, v):
        cur = self.val[cell]
        if cur != -1:
            return cur == v
        self.counter[0] += 1
        if self.counter[0] > self.budget:
            raise BudgetExceeded(f"biset search exceeded {self.budget} cells")
        self.val[cell] = v
        self.trail.append(cell)
        self.queue.append(cell)
        return True

    def equate(self, c1, c2):
        v1, v2 = self.val[c1], self.val[c2]
        if v1 == -1 and v2 == -1:
            return True
        if v1 == -1:
            return self.assign(c1, v2)
        if v2 == -1:
            return self.assign(c2, v1)
        return v1 == v2

    def eval_inst(self, k):
        inst = self.insts[k]
        kind = inst[0]
        val = self.val
        if kind == "ll":
            _, s1, s2, x = inst
            va = val[self.L(s2, x)]
            if va == -1:
                return True
            return self.equate(self.L(s1, va), self.L(int(self.tS[s1, s2]), x))
        if kind == "rl":
            _, x, t1, t2 = inst
            va = val[self.R(x, t1)]
            if va == -1:
                return True
            return self.equate(self.R(va, t2), self.R(x, int(self.tT[t1, t2])))
        if kind == "cp":
            _, s, x, t = inst
            va = val[self.L(s, x)]
            vb = val[self.R(x, t)]
            if va == -1 or vb == -1:
                return True
            return self.equate(self.R(va, t), self.L(s, vb))
        if kind == "m1":
            _, s, x, y = inst
            va = val[self.L(s, x)]
            vp = val[self.P(x, y)]
            if va == -1 or vp == -1:
                return True
            lhs = self.P(va, y)
            want = int(self.tS[s, vp])
            return self.assign(lhs, want) if val[lhs] == -1 else val[lhs] == want
        if kind == "m2":
            _, x, y = inst
            vxy, vyx = val[self.P(x, y)], val[self.P(y, x)]
            if vxy != -1:
                want = int(self.sS[vxy])
                c = self.P(y, x)
                return self.assign(c, want) if val[c] == -1 else val[c] == want
            if vyx != -1:
                return self.assign(self.P(x, y), int(self.sS[vyx]))
            return True
        if kind == "m3":
            _, x = inst
            ve = val[self.P(x, x)]
            if ve == -1:
                return True
            c = self.L(ve, x)
            return self.assign(c, x) if val[c] == -1 else val[c] == x
        if kind == "m4":
            _, x, y, t = inst
            vb = val[self.R(y, t)]
            vq = val[self.Q(x, y)]
            if vb == -1 or vq == -1:
                return True
            lhs = self.Q(x, vb)
            want = int(self.tT[vq, t])
            return self.assign(lhs, want) if val[lhs] == -1 else val[lhs] == want
        if kind == "m5":
            _, x, y = inst
            vxy, vyx = val[self.Q(x, y)], val[self.Q(y, x)]
            if vxy != -1:
                want = int(self.sT[vxy])
                c = self.Q(y, x)
                return self.assign(c, want) if val[c] == -1 else val[c] == want
            if vyx != -1:
                return self.assign(self.Q(x, y), int(self.sT[vyx]))
            return True
        if kind == "m6":
            _, x = inst
            vf = val[self.Q(x, x)]
            if vf == -1:
                return True
            c = self.R(x, vf)
            return self.assign(c, x) if val[c] == -1 else val[c] == x
        # m7
        _, x, y, z = inst
        va = val[self.P(x, y)]
        vb = val[self.Q(y, z)]
        if va == -1 or vb == -1:
            return True
        return self.equate(self.L(va, z), self.R(x, vb))

    def propagate(self):
        while self.queue:
            c = self.queue.pop()
            for k in self.watch[c]:
                if not self.eval_inst(k):
                    self.queue.clear()
                    return False
        return True

    def prune(self):
        val, nx = self.val, self.nx
        # diagonal signature symmetry break
        for x in range(1, nx):
            a = (val[self.P(x - 1, x - 1)], val[self.Q(x - 1, x - 1)])
            b = (val[self.P(x, x)], val[self.Q(x, x)])
            if -1 not in a and -1 not in b and a > b:
                return False
        # surjectivity is still reachable
        pvals = [val[self.P(x, y)] for x in range(nx) for y in range(nx)]
        missing = self.ns - len(set(v for v in pvals if v != -1))
        if missing > sum(1 for v in pvals if v == -1):
            return False
        qvals = [val[self.Q(x, y)] for x in range(nx) for y in range(nx)]
        missing = self.nt - len(set(v for v in qvals if v != -1))
        if missing > sum(1 for v in qvals if v == -1):
            return False
        return True

    def solve(self):
        return self._dfs(0)

    def _dfs(self, pos):
        order, val = self.order, self.val
        while pos < len(order) and val[order[pos]] != -1:
            pos += 1
        if pos == len(order):
            return self._extract()
        cell = order[pos]
        for v in range(self.domain_of[cell]):
            mark = len(self.trail)
            ok = self.assign(cell, v) and self.propagate() and self.prune()
            if ok:
                res = self._dfs(pos + 1)
                if res is not None:
                    return res
            for c in self.trail[mark:]:
                val[c] = -1
            del self.trail[mark:]
            self.queue.clear()
        return None

    def _extract(self):
        nx, ns, nt = self.nx, self.ns, self.nt
        left = np.array([[self.val[self.L(s, x)] for x in range(nx)]
                         for s in range(ns)], dtype=np.int64)
        right = np.array([[self.val[self.R(x, t)] for t in range(nt)]
                          for x in range(nx)], dtype=np.int64)
        innS = np.array([[self.val[self.P(x, y)] for y in range(nx)]
                         for x in range(nx)], dtype=np.int64)
        innT = np.array([[self.val[self.Q(x, y)] for y in range(nx)]
                         for x in range(nx)], dtype=np.int64)
        B = EquivalenceBiset(self.S, self.T,
                             tuple(f"x{i}" for i in range(nx)),
                             left, right, innS, innT, {"kind": "searched"})
        if verify_biset(B).passed:
            return B
        return None


def exhaustive_biset_search(S: InverseSemigroup, T: InverseSemigroup,
                            max_points: int, budget: int = 10_000_000):
    """Search for an equivalence biset with at most max_points points.

    Independent of the category-equivalence decision route: a plain
    constraint search over the four tables with canonical-form pruning.
    Returns the first biset found (smallest carrier first) or None after
    exhausting every size; raises BudgetExceeded when the assignment
    budget runs out.
    """
    counter = [0]
    for nx in range(1, max_points + 1):
        if nx * nx < len(S) or nx * nx < len(T):
            continue  # pairings could not be surjective
        search = _BisetSearch(S, T, nx, budget, counter)
        found = search.solve()
        if found is not None:
            return found
    return None


# -- the end-to-end pipeline (used by the CLI and the acceptance suite) -----------

def enlargement_pipeline(R, S_subset, T_subset) -> dict:
    """enlarge -> biset -> bipartite U -> semigroupoid -> ordered groupoid.

    Runs every verification along the chain and reports each as a bool.
    """
    from .categories import check_morita_context, is_bipartite, is_left_cancellative

    out = {}
    B = biset_from_regular_enlargement(R, S_subset, T_subset)
    out["biset_axioms"] = verify_biset(B).passed
    U, s_objs, t_objs, Pf, Qf = build_bipartite_U(B)
    out["bipartite"] = is_bipartite(U, s_objs, t_objs)
    out["U_left_cancellative"] = is_left_cancellative(U)
    out["morita_context"] = check_morita_context(Pf.source, Qf.source, U, Pf, Qf)
    Rg = build_R_semigroupoid(B)
    out["semigroupoid_inverse"] = not semigroupoid_violations(Rg.names, Rg.table)
    G = ordered_groupoid_of(Rg)
    s_part = list(Rg.extra["s_part"])
    t_part = list(Rg.extra["t_part"])
    out["enlargement_of_S"] = is_enlargement(G, s_part)
    out["enlargement_of_T"] = is_enlargement(G, t_part)
    # bipartite object condition on G
    s_objs_g = {int(G.dom[a]) for a in s_part}
    t_objs_g = {int(G.dom[a]) for a in t_part}
    cond = all(
        any(int(G.dom[x]) == e and int(G.cod[x]) in t_objs_g
            for x in range(G.n_arrows))
        for e in s_objs_g
    ) and all(
        any(int(G.dom[x]) == e and int(G.cod[x]) in s_objs_g
            for x in range(G.n_arrows))
        for e in t_objs_g
    )
    out["bipartite_objects"] = cond
    emb_S = np.array(s_part, dtype=np.int64)
    emb_T = np.array(t_part, dtype=np.int64)
    B2 = biset_from_ordered_enlargement(G, B.S, B.T, emb_S, emb_T)
    out["roundtrip_biset"] = verify_biset(B2).passed
    out["morita_equivalent"] = morita_equivalent(B.S, B.T).equivalent
    return out
