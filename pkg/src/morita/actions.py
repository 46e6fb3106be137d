"""Right actions, etale actions, presheaves, and the functor web between them.

The comparison functors implemented here:

  Q   : closed right S-sets -> presheaves on the Cauchy completion,
        Q(X)(e) = Xe
  Q_!  : its left adjoint, a colimit over the category of elements
  U   : etale actions -> right S-sets (forget the anchor)
  R   : its right adjoint, R(X) = disjoint union of the Xe over E(S)
  I*  : presheaves on the Cauchy completion -> etale actions
  I_! : its left adjoint, computed fiberwise as a colimit

All colimits are computed as disjoint unions followed by union-find
closure of the zig-zag relation; class representatives are the least
(component, index) pair, so every construction is deterministic.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._util import UnionFind
from .categories import C_of, FiniteCategory, Functor, L_of
from .errors import NoRightLocalUnits, NotClosed, WrongSite
from .semigroups import (
    FiniteSemigroup,
    InverseSemigroup,
    idempotents,
    local_unit_flags,
)


@dataclass(eq=False)
class RightAction:
    carrier: tuple
    sgrp: FiniteSemigroup
    act: np.ndarray  # act[x, s]
    extra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.carrier = tuple(self.carrier)
        a = np.ascontiguousarray(self.act, dtype=np.int64).reshape(
            len(self.carrier), len(self.sgrp)
        )
        a.setflags(write=False)
        self.act = a

    def __len__(self):
        return len(self.carrier)

    def apply(self, x: int, s: int) -> int:
        return int(self.act[x, s])

    def __repr__(self):
        return f"RightAction(points={len(self)}, sgrp_n={len(self.sgrp)})"


@dataclass(eq=False)
class EtaleAction:
    base: RightAction
    anchor: np.ndarray  # point -> idempotent element of the semigroup

    def __post_init__(self):
        a = np.ascontiguousarray(self.anchor, dtype=np.int64)
        a.setflags(write=False)
        self.anchor = a

    @property
    def sgrp(self):
        return self.base.sgrp

    def __len__(self):
        return len(self.base)

    def __repr__(self):
        return f"EtaleAction(points={len(self.base)}, sgrp_n={len(self.sgrp)})"


@dataclass(eq=False)
class Presheaf:
    site: FiniteCategory
    fibers: tuple               # per object: tuple of element labels
    maps: tuple                 # per morphism f: P(cod f) -> P(dom f), as arrays

    def __post_init__(self):
        self.fibers = tuple(tuple(f) for f in self.fibers)
        self.maps = tuple(np.ascontiguousarray(m, dtype=np.int64) for m in self.maps)

    def fiber_size(self, o: int) -> int:
        return len(self.fibers[o])

    def __repr__(self):
        sizes = tuple(len(f) for f in self.fibers)
        return f"Presheaf(fibers={sizes})"


def action_law_witness(X: RightAction):
    return _kernels.action_witness(X.act, X.sgrp.table)


def check_action(X: RightAction) -> bool:
    return action_law_witness(X) is None


def check_presheaf(P: Presheaf) -> bool:
    C = P.site
    if len(P.fibers) != C.n_objects or len(P.maps) != C.n_mor:
        return False
    for m in range(C.n_mor):
        arr = P.maps[m]
        if len(arr) != P.fiber_size(int(C.cod[m])):
            return False
        if len(arr) and (arr.min() < 0
                         or arr.max() >= P.fiber_size(int(C.dom[m]))):
            return False
    for o in range(C.n_objects):
        m = P.maps[int(C.identity[o])]
        if not np.array_equal(m, np.arange(len(m))):
            return False
    for g in range(C.n_mor):
        for f in range(C.n_mor):
            h = int(C.comp[g, f])
            if h >= 0:
                lhs = P.maps[h]
                rhs = P.maps[f][P.maps[g]]
                if len(lhs) != len(rhs) or not np.array_equal(lhs, rhs):
                    return False
    return True


# -- basic action constructions ----------------------------------------------

def principal_action(S: FiniteSemigroup, e: int) -> RightAction:
    """The right ideal eS = {s : es = s} with right multiplication."""
    tab = S.table
    pts = [s for s in range(len(S)) if tab[e, s] == s]
    pos = {s: i for i, s in enumerate(pts)}
    act = np.empty((len(pts), len(S)), dtype=np.int64)
    for i, x in enumerate(pts):
        for s in range(len(S)):
            act[i, s] = pos[int(tab[x, s])]
    return RightAction(
        tuple(S.names[s] for s in pts), S, act,
        {"kind": "principal", "e": e, "elt_of_point": tuple(pts), "point_of_elt": pos},
    )


def regular_action(S: FiniteSemigroup) -> RightAction:
    return RightAction(S.names, S, S.table.copy(), {"kind": "regular"})


def empty_action(S: FiniteSemigroup) -> RightAction:
    return RightAction((), S, np.empty((0, len(S)), dtype=np.int64), {"kind": "empty"})


def coproduct_action(parts) -> RightAction:
    parts = list(parts)
    S = parts[0].sgrp
    names, rows = [], []
    for k, X in enumerate(parts):
        if X.sgrp is not S:
            raise ValueError("coproduct needs a common semigroup")
        off = len(names)
        names.extend(f"c{k}_{lbl}" for lbl in X.carrier)
        rows.append(X.act + off)
    act = np.vstack(rows) if rows else np.empty((0, len(S)), dtype=np.int64)
    return RightAction(tuple(names), S, act, {"kind": "coproduct"})


def quotient_action(X: RightAction, pairs) -> RightAction:
    """Quotient by the equivariant closure of the given point identifications."""
    uf = UnionFind(range(len(X)))
    stack = [tuple(p) for p in pairs]
    while stack:
        a, b = stack.pop()
        ra, rb = uf.find(a), uf.find(b)
        if ra == rb:
            continue
        uf.union(ra, rb)
        for s in range(len(X.sgrp)):
            stack.append((int(X.act[a, s]), int(X.act[b, s])))
    classes = uf.classes()
    rep_of = {}
    for i, cls in enumerate(classes):
        for x in cls:
            rep_of[x] = i
    act = np.empty((len(classes), len(X.sgrp)), dtype=np.int64)
    for i, cls in enumerate(classes):
        x = cls[0]
        for s in range(len(X.sgrp)):
            act[i, s] = rep_of[int(X.act[x, s])]
    names = tuple(X.carrier[cls[0]] for cls in classes)
    return RightAction(names, X.sgrp, act, {"kind": "quotient", "classes": classes})


def product_action(X: RightAction, Y: RightAction) -> RightAction:
    """Binary product of unitary actions: pairs bounded by a common idempotent.

    The carrier is {(x, y) : some idempotent e fixes both x and y}; this is
    the right-action transcription of the bounded-pair product carrier.
    """
    S = X.sgrp
    if Y.sgrp is not S:
        raise ValueError("product needs a common semigroup")
    E = idempotents(S)
    pts = [
        (x, y)
        for x in range(len(X))
        for y in range(len(Y))
        if any(X.act[x, e] == x and Y.act[y, e] == y for e in E)
    ]
    pos = {p: i for i, p in enumerate(pts)}
    act = np.empty((len(pts), len(S)), dtype=np.int64)
    for i, (x, y) in enumerate(pts):
        for s in range(len(S)):
            act[i, s] = pos[(int(X.act[x, s]), int(Y.act[y, s]))]
    names = tuple(f"({X.carrier[x]},{Y.carrier[y]})" for (x, y) in pts)
    return RightAction(names, S, act, {"kind": "product", "pairs": tuple(pts)})


def equalizer_action(f, g, X: RightAction) -> RightAction:
    """Equalizer of two equivariant maps out of X, created in sets."""
    pts = [x for x in range(len(X)) if f[x] == g[x]]
    pos = {x: i for i, x in enumerate(pts)}
    act = np.array([[pos[int(X.act[x, s])] for s in range(len(X.sgrp))] for x in pts],
                   dtype=np.int64).reshape(len(pts), len(X.sgrp))
    return RightAction(tuple(X.carrier[x] for x in pts), X.sgrp, act,
                       {"kind": "equalizer"})


def coequalizer_action(f, g, X: RightAction, Y: RightAction) -> RightAction:
    """Coequalizer of f, g : X -> Y, created in sets."""
    return quotient_action(Y, [(int(f[x]), int(g[x])) for x in range(len(X))])


# -- unitary / closed ----------------------------------------------------------

def is_unitary(X: RightAction) -> bool:
    """Every point is in the image of the action."""
    hit = set(int(v) for v in X.act.ravel())
    return hit == set(range(len(X)))


@dataclass(eq=False)
class TensorResult:
    classes: list            # each class: sorted list of (x, s) pairs
    mu: list                 # per class, the common value xs
    surjective: bool
    injective: bool


def tensor_with_S(X: RightAction) -> TensorResult:
    """X (x) S with mu(x (x) s) = xs, computed by union-find to fixpoint."""
    S = X.sgrp
    if not local_unit_flags(S).right_local_units:
        raise NoRightLocalUnits()
    n, ns = len(X), len(S)
    uf = UnionFind((x, s) for x in range(n) for s in range(ns))
    for x in range(n):
        for s in range(ns):
            xs = int(X.act[x, s])
            for t in range(ns):
                uf.union((xs, t), (x, int(S.table[s, t])))
    classes = uf.classes()
    mu = []
    for cls in classes:
        vals = {int(X.act[x, s]) for (x, s) in cls}
        assert len(vals) == 1, "mu not constant on a tensor class"
        mu.append(vals.pop())
    surjective = set(mu) == set(range(n))
    injective = len(set(mu)) == len(mu)
    return TensorResult(classes, mu, surjective, injective)


def is_closed(X: RightAction) -> bool:
    """mu : X (x) S -> X is a bijection."""
    t = tensor_with_S(X)
    return t.surjective and t.injective


# -- etale actions -------------------------------------------------------------

def munn_action(S: InverseSemigroup) -> EtaleAction:
    """E(S) with e.s = s*es and the identity anchor."""
    E = idempotents(S)
    pos = {e: i for i, e in enumerate(E)}
    tab, star = S.table, S.star
    act = np.empty((len(E), len(S)), dtype=np.int64)
    for i, e in enumerate(E):
        for s in range(len(S)):
            act[i, s] = pos[int(tab[tab[star[s], e], s])]
    base = RightAction(tuple(S.names[e] for e in E), S, act,
                       {"kind": "munn", "elt_of_point": tuple(E)})
    return EtaleAction(base, np.array(E, dtype=np.int64))


def principal_etale(S: InverseSemigroup, e: int) -> EtaleAction:
    """eS -> E(S), s |-> s*s."""
    base = principal_action(S, e)
    elts = base.extra["elt_of_point"]
    anchor = np.array([int(S.table[S.star[s], s]) for s in elts], dtype=np.int64)
    return EtaleAction(base, anchor)


def check_etale(X: EtaleAction) -> bool:
    """Action law, x.p(x) = x, and p(xs) = s*p(x)s."""
    S = X.sgrp
    if not isinstance(S, InverseSemigroup):
        return False
    if not check_action(X.base):
        return False
    act, anchor, tab, star = X.base.act, X.anchor, S.table, S.star
    for x in range(len(X)):
        e = int(anchor[x])
        if tab[e, e] != e or act[x, e] != x:
            return False
        for s in range(len(S)):
            if anchor[int(act[x, s])] != tab[tab[star[s], e], s]:
                return False
    return True


def etale_morphism_check(f, X: EtaleAction, Y: EtaleAction) -> bool:
    """f commutes with the actions and preserves anchors."""
    f = np.ascontiguousarray(f, dtype=np.int64)
    if f.shape != (len(X),):
        return False
    if len(X) and (f.min() < 0 or f.max() >= len(Y)):
        return False
    for x in range(len(X)):
        if Y.anchor[int(f[x])] != X.anchor[x]:
            return False
        for s in range(len(X.sgrp)):
            if f[int(X.base.act[x, s])] != Y.base.act[int(f[x]), s]:
                return False
    return True


def R_of(X: RightAction) -> EtaleAction:
    """Right adjoint of the forgetful U: carrier {(e,x) : xe = x}."""
    S = X.sgrp
    E = idempotents(S)
    pts = [(e, x) for e in E for x in range(len(X)) if X.act[x, e] == x]
    pos = {p: i for i, p in enumerate(pts)}
    tab, star = S.table, S.star
    act = np.empty((len(pts), len(S)), dtype=np.int64)
    for i, (e, x) in enumerate(pts):
        for s in range(len(S)):
            act[i, s] = pos[(int(tab[tab[star[s], e], s]), int(X.act[x, s]))]
    names = tuple(f"({S.names[e]},{X.carrier[x]})" for (e, x) in pts)
    base = RightAction(names, S, act, {"kind": "R", "pairs": tuple(pts)})
    return EtaleAction(base, np.array([e for (e, _x) in pts], dtype=np.int64))


def U_of(X: EtaleAction) -> RightAction:
    return X.base


def counit_UR(X: RightAction):
    """(e, x) -> x from UR(X) to X; surjective iff X is unitary."""
    RX = R_of(X)
    return RX, np.array([x for (_e, x) in RX.base.extra["pairs"]], dtype=np.int64)


def unit_UR(X: EtaleAction):
    """x -> (p(x), x) from X to RU(X); always an etale morphism."""
    RU = R_of(X.base)
    pos = {p: i for i, p in enumerate(RU.base.extra["pairs"])}
    return RU, np.array([pos[(int(X.anchor[x]), x)] for x in range(len(X))],
                        dtype=np.int64)


# -- presheaves on L(S) <-> etale actions --------------------------------------

def _expect_site(P: Presheaf, kind: str):
    if P.site.extra.get("kind") != kind or "sgrp" not in P.site.extra:
        raise WrongSite(f"presheaf site is not an {kind}-category")
    return P.site.extra["sgrp"]


def presheaf_of_etale(X: EtaleAction, site: FiniteCategory = None) -> Presheaf:
    """Fiber map e -> p^{-1}(e); transitions act by the element of L(S)."""
    S = X.sgrp
    L = site if site is not None else L_of(S)
    if L.extra.get("kind") != "L" or L.extra.get("sgrp") is not S:
        raise WrongSite("site must be L(S) for the semigroup of the action")
    obj_elt = L.extra["obj_elt"]
    fibers = []
    pos = []
    for e in obj_elt:
        pts = [x for x in range(len(X)) if X.anchor[x] == e]
        fibers.append(tuple(X.base.carrier[x] for x in pts))
        pos.append({x: i for i, x in enumerate(pts)})
    fiber_pts = [sorted(p, key=p.get) for p in pos]
    obj_of_elt = {e: i for i, e in enumerate(obj_elt)}
    maps = []
    for (e, s) in L.extra["payload"]:
        co = obj_of_elt[e]
        do = obj_of_elt[int(S.table[S.star[s], s])]
        arr = np.array(
            [pos[do][int(X.base.act[x, s])] for x in fiber_pts[co]], dtype=np.int64
        )
        maps.append(arr)
    P = Presheaf(L, tuple(fibers), tuple(maps))
    P.pts = tuple(tuple(f) for f in fiber_pts)  # point indices per fiber
    return P


def etale_of_presheaf(P: Presheaf) -> EtaleAction:
    """Total space of the fiber map, with the anchor remembering the fiber."""
    S = _expect_site(P, "L")
    L = P.site
    obj_elt = L.extra["obj_elt"]
    obj_of_elt = {e: i for i, e in enumerate(obj_elt)}
    lidx = L.extra["index"]
    pts = [(o, i) for o in range(L.n_objects) for i in range(P.fiber_size(o))]
    pos = {p: i for i, p in enumerate(pts)}
    tab, star = S.table, S.star
    act = np.empty((len(pts), len(S)), dtype=np.int64)
    for k, (o, i) in enumerate(pts):
        e = obj_elt[o]
        for s in range(len(S)):
            es = int(tab[e, s])
            d = int(tab[tab[star[s], e], s])  # s*es
            m = lidx[(e, es)]
            act[k, s] = pos[(obj_of_elt[d], int(P.maps[m][i]))]
    names = tuple(f"{L.objects[o]}#{P.fibers[o][i]}" for (o, i) in pts)
    base = RightAction(names, S, act, {"kind": "etale_of_presheaf", "pairs": tuple(pts)})
    return EtaleAction(base, np.array([obj_elt[o] for (o, _i) in pts], dtype=np.int64))


def category_of_elements(P: Presheaf):
    """The category of elements with its discrete fibration to the site."""
    from .categories import build_category

    C = P.site
    objs = [(o, i) for o in range(C.n_objects) for i in range(P.fiber_size(o))]
    opos = {p: i for i, p in enumerate(objs)}
    mors = []
    for f in range(C.n_mor):
        a, b = int(C.dom[f]), int(C.cod[f])
        for i in range(P.fiber_size(b)):
            x = int(P.maps[f][i])
            mors.append((opos[(a, x)], opos[(b, i)],
                         f"{C.mor_labels[f]}@{i}", (f, i)))

    def compose(pg, pf):
        (g, i2), (f, _i1) = pg, pf
        return (int(C.comp[g, f]), i2)

    def ident(oi):
        o, i = objs[oi]
        return (int(C.identity[o]), i)

    labels = tuple(f"({C.objects[o]},{P.fibers[o][i]})" for (o, i) in objs)
    cat = build_category(labels, mors, compose, ident,
                         {"kind": "elements", "objs": tuple(objs)})
    K = Functor(cat, C,
                np.array([o for (o, _i) in objs], dtype=np.int64),
                np.array([f for (f, _i) in cat.extra["payload"]], dtype=np.int64))
    # verify K is a discrete fibration: unique lift of each f into K(y)
    for f in range(C.n_mor):
        b = int(C.cod[f])
        for i in range(P.fiber_size(b)):
            lifts = [
                m
                for m, (ff, ii) in enumerate(cat.extra["payload"])
                if ff == f and ii == i
            ]
            assert len(lifts) == 1, "element category lost the fibration property"
    return cat, K


# -- Q and its left adjoint ----------------------------------------------------

def Q_of(X: RightAction, site: FiniteCategory = None) -> Presheaf:
    """Q(X)(e) = Xe with transitions x . (e,s,f) = xs; needs X closed."""
    if not is_closed(X):
        raise NotClosed()
    S = X.sgrp
    C = site if site is not None else C_of(S)
    if C.extra.get("kind") != "C" or C.extra.get("sgrp") is not S:
        raise WrongSite("site must be C(S) for the semigroup of the action")
    obj_elt = C.extra["obj_elt"]
    pts, pos, fibers = [], [], []
    for e in obj_elt:
        p = [x for x in range(len(X)) if X.act[x, e] == x]
        pts.append(p)
        pos.append({x: i for i, x in enumerate(p)})
        fibers.append(tuple(X.carrier[x] for x in p))
    obj_of_elt = {e: i for i, e in enumerate(obj_elt)}
    maps = []
    for (e, s, f) in C.extra["payload"]:
        co, do = obj_of_elt[e], obj_of_elt[f]
        maps.append(np.array([pos[do][int(X.act[x, s])] for x in pts[co]],
                             dtype=np.int64))
    P = Presheaf(C, tuple(fibers), tuple(maps))
    P.pts = tuple(tuple(p) for p in pts)
    return P


@dataclass(eq=False)
class ColimitActionResult:
    action: RightAction
    unit: dict  # (object index of site, fiber element index) -> carrier point


def q_shriek_with_unit(P: Presheaf) -> ColimitActionResult:
    """Colimit of eS over the category of elements of P, by zig-zag closure."""
    S = _expect_site(P, "C")
    C = P.site
    obj_elt = C.extra["obj_elt"]
    elements, K = category_of_elements(P)
    eobjs = elements.extra["objs"]  # (site object, fiber index)
    tab = S.table

    def ideal(e):
        return [s for s in range(len(S)) if tab[e, s] == s]

    nodes = []
    for k, (o, _i) in enumerate(eobjs):
        for u in ideal(obj_elt[o]):
            nodes.append((k, u))
    uf = UnionFind(nodes)
    for m, (f, i) in enumerate(elements.extra["payload"]):
        src = int(elements.dom[m])
        dst = int(elements.cod[m])
        a = C.extra["payload"][f][1]  # the semigroup element of the site morphism
        for u in ideal(obj_elt[eobjs[src][0]]):
            uf.union((dst, int(tab[a, u])), (src, u))
    classes = uf.classes()
    rep_of = {}
    for ci, cls in enumerate(classes):
        for node in cls:
            rep_of[node] = ci
    act = np.empty((len(classes), len(S)), dtype=np.int64)
    for ci, cls in enumerate(classes):
        k, u = cls[0]
        for s in range(len(S)):
            act[ci, s] = rep_of[(k, int(tab[u, s]))]
    names = tuple(f"q{ci}" for ci in range(len(classes)))
    X = RightAction(names, S, act, {"kind": "q_shriek"})
    assert check_action(X)
    unit = {}
    for k, (o, i) in enumerate(eobjs):
        unit[(o, i)] = rep_of[(k, obj_elt[o])]
    return ColimitActionResult(X, unit)


def Q_shriek(P: Presheaf) -> RightAction:
    res = q_shriek_with_unit(P)
    assert is_closed(res.action), "colimit of closed actions must be closed"
    return res.action


def unit_iso_check(P: Presheaf) -> bool:
    """The unit P -> Q(Q_!(P)) is a natural bijection."""
    S = _expect_site(P, "C")
    C = P.site
    obj_elt = C.extra["obj_elt"]
    res = q_shriek_with_unit(P)
    X = res.action
    for o, e in enumerate(obj_elt):
        fixed = [w for w in range(len(X)) if X.act[w, e] == w]
        image = [res.unit[(o, i)] for i in range(P.fiber_size(o))]
        if len(set(image)) != len(image) or set(image) != set(fixed):
            return False
    for m, (e, s, f) in enumerate(C.extra["payload"]):
        co = obj_elt.index(e)
        do = obj_elt.index(f)
        for i in range(P.fiber_size(co)):
            lhs = res.unit[(do, int(P.maps[m][i]))]
            rhs = int(X.act[res.unit[(co, i)], s])
            if lhs != rhs:
                return False
    return True


# -- morphism enumeration (for fullness/faithfulness) ---------------------------

def action_homs(X: RightAction, Y: RightAction) -> list:
    """All equivariant maps X -> Y, as tuples, by propagating backtracking."""
    if X.sgrp is not Y.sgrp:
        raise ValueError("homs need a common semigroup")
    n, ns = len(X), len(X.sgrp)
    out = []
    f = [-1] * n

    def propagate(assigned):
        stack = list(assigned)
        changes = []
        while stack:
            x = stack.pop()
            for s in range(ns):
                xs = int(X.act[x, s])
                want = int(Y.act[f[x], s])
                if f[xs] == -1:
                    f[xs] = want
                    changes.append(xs)
                    stack.append(xs)
                elif f[xs] != want:
                    return changes, False
        return changes, True

    def rec():
        try:
            x0 = f.index(-1)
        except ValueError:
            out.append(tuple(f))
            return
        for y in range(len(Y)):
            f[x0] = y
            changes, ok = propagate([x0])
            if ok:
                rec()
            for c in changes:
                f[c] = -1
            f[x0] = -1

    if n == 0:
        return [()]
    rec()
    return sorted(out)


def presheaf_nats(P1: Presheaf, P2: Presheaf) -> list:
    """All natural transformations P1 -> P2 over a common site."""
    C = P1.site
    if P2.site is not C:
        raise WrongSite("natural transformations need a common site")
    vars_ = [(o, i) for o in range(C.n_objects) for i in range(P1.fiber_size(o))]
    pos = {v: k for k, v in enumerate(vars_)}
    # each morphism m: a -> b forces alpha_a(P1(m)(i)) = P2(m)(alpha_b(i))
    insts = []
    for m in range(C.n_mor):
        a, b = int(C.dom[m]), int(C.cod[m])
        for i in range(P1.fiber_size(b)):
            insts.append((pos[(a, int(P1.maps[m][i]))], pos[(b, i)], m))
    watch = {}
    for t in insts:
        watch.setdefault(t[0], []).append(t)
        watch.setdefault(t[1], []).append(t)
    out = []
    alpha = [-1] * len(vars_)

    def rec(k):
        if k == len(vars_):
            for (dst, src, m) in insts:
                if alpha[dst] != int(P2.maps[m][alpha[src]]):
                    return
            out.append(tuple(alpha))
            return
        o = vars_[k][0]
        for y in range(P2.fiber_size(o)):
            alpha[k] = y
            ok = True
            for (dst, src, m) in watch.get(k, ()):
                if alpha[src] != -1 and alpha[dst] != -1:
                    if alpha[dst] != int(P2.maps[m][alpha[src]]):
                        ok = False
                        break
            if ok:
                rec(k + 1)
            alpha[k] = -1

    rec(0)
    return sorted(out)


def fullness_faithfulness_check(X: RightAction, Y: RightAction) -> bool:
    """hom(X, Y) and Nat(Q(X), Q(Y)) match bijectively under restriction."""
    S = X.sgrp
    C = C_of(S)
    PX = Q_of(X, C)
    PY = Q_of(Y, C)
    homs = action_homs(X, Y)
    nats = presheaf_nats(PX, PY)
    if len(homs) != len(nats):
        return False
    obj_elt = C.extra["obj_elt"]
    vars_ = [(o, i) for o in range(C.n_objects) for i in range(PX.fiber_size(o))]
    restricted = set()
    for h in homs:
        alpha = []
        for (o, i) in vars_:
            x = PX.pts[o][i]
            y = int(h[x])
            assert Y.act[y, obj_elt[o]] == y
            alpha.append(PY.pts[o].index(y))
        restricted.add(tuple(alpha))
    return len(restricted) == len(homs) and restricted == set(nats)


def action_isomorphic(X: RightAction, Y: RightAction):
    """An equivariant bijection X -> Y, or None; orbit-signature pruning."""
    if X.sgrp is not Y.sgrp or len(X) != len(Y):
        return None

    def sigs(Z):
        indeg = [0] * len(Z)
        for x in range(len(Z)):
            for s in range(len(Z.sgrp)):
                indeg[int(Z.act[x, s])] += 1
        return [
            (indeg[x], sum(1 for s in range(len(Z.sgrp)) if Z.act[x, s] == x))
            for x in range(len(Z))
        ]

    sx, sy = sigs(X), sigs(Y)
    if sorted(sx) != sorted(sy):
        return None
    n, ns = len(X), len(X.sgrp)
    f = [-1] * n
    used = [False] * n

    def rec(x0):
        while x0 < n and f[x0] != -1:
            x0 += 1
        if x0 == n:
            return list(f)
        for y in range(n):
            if used[y] or sy[y] != sx[x0]:
                continue
            stack = [(x0, y)]
            trail = []
            ok = True
            while stack and ok:
                a, b = stack.pop()
                if f[a] == b:
                    continue
                if f[a] != -1 or used[b]:
                    ok = False
                    break
                f[a] = b
                used[b] = True
                trail.append((a, b))
                for s in range(ns):
                    stack.append((int(X.act[a, s]), int(Y.act[b, s])))
            if ok:
                res = rec(x0 + 1)
                if res is not None:
                    return res
            for (a, b) in trail:
                f[a] = -1
                used[b] = False
        return None

    if n == 0:
        return []
    return rec(0)


def is_indecomposable(X: RightAction) -> bool:
    """No splitting as a coproduct of two proper subactions."""
    if len(X) == 0:
        return False
    uf = UnionFind(range(len(X)))
    for x in range(len(X)):
        for s in range(len(X.sgrp)):
            uf.union(x, int(X.act[x, s]))
    return len(uf.classes()) == 1


def indecomposable_projective_check(X: RightAction):
    """The idempotent e with X isomorphic to eS, if one exists."""
    if not is_closed(X):
        raise NotClosed()
    for e in idempotents(X.sgrp):
        if action_isomorphic(X, principal_action(X.sgrp, e)) is not None:
            return e
    return None


# -- I* and I_! -----------------------------------------------------------------

def I_star(P: Presheaf) -> EtaleAction:
    """Etale action on the disjoint union of the fibers of P over C(S)."""
    S = _expect_site(P, "C")
    C = P.site
    obj_elt = C.extra["obj_elt"]
    obj_of_elt = {e: i for i, e in enumerate(obj_elt)}
    cidx = C.extra["index"]
    pts = [(o, i) for o in range(C.n_objects) for i in range(P.fiber_size(o))]
    pos = {p: i for i, p in enumerate(pts)}
    tab, star = S.table, S.star
    act = np.empty((len(pts), len(S)), dtype=np.int64)
    for k, (o, i) in enumerate(pts):
        e = obj_elt[o]
        for s in range(len(S)):
            es = int(tab[e, s])
            d = int(tab[tab[star[s], e], s])
            m = cidx[(e, es, d)]
            act[k, s] = pos[(obj_of_elt[d], int(P.maps[m][i]))]
    names = tuple(f"{C.objects[o]}#{P.fibers[o][i]}" for (o, i) in pts)
    base = RightAction(names, S, act, {"kind": "I_star", "pairs": tuple(pts)})
    return EtaleAction(base, np.array([obj_elt[o] for (o, _i) in pts], dtype=np.int64))


@dataclass(eq=False)
class IShriekResult:
    presheaf: Presheaf
    beta: tuple  # per site object: dict fiber-index -> point of X (the Xe bijection)


def i_shriek_with_maps(X: EtaleAction, site: FiniteCategory = None) -> IShriekResult:
    """I_!(p)(e) as the colimit of x -> C(S)(e, p(x)) over the element category.

    The category has the points of X as objects and, as morphisms x -> y,
    the elements s with p(y)s = s, s*s = p(x) and ys = x.
    """
    S = X.sgrp
    C = site if site is not None else C_of(S)
    if C.extra.get("kind") != "C" or C.extra.get("sgrp") is not S:
        raise WrongSite("site must be C(S) for the semigroup of the action")
    obj_elt = C.extra["obj_elt"]
    obj_of_elt = {e: i for i, e in enumerate(obj_elt)}
    cidx = C.extra["index"]
    tab, star = S.table, S.star
    anchor = X.anchor
    # morphisms of the indexing category
    xmors = []
    for y in range(len(X)):
        py = int(anchor[y])
        for s in range(len(S)):
            if tab[py, s] == s:
                px = int(tab[star[s], s])
                x = int(X.base.act[y, s])
                if anchor[x] == px:
                    xmors.append((x, y, s))
    fibers, maps_classes, betas = [], [], []
    for e in obj_elt:
        eo = obj_of_elt[e]
        nodes = []
        for x in range(len(X)):
            px = int(anchor[x])
            for m in C.hom(eo, obj_of_elt[px]):
                nodes.append((x, m))
        uf = UnionFind(nodes)
        for (x, y, s) in xmors:
            smor = cidx[(int(anchor[y]), s, int(anchor[x]))]
            for m in C.hom(eo, obj_of_elt[int(anchor[x])]):
                uf.union((x, m), (y, int(C.comp[smor, m])))
        classes = uf.classes()
        rep_of = {}
        for ci, cls in enumerate(classes):
            for node in cls:
                rep_of[node] = ci
        beta = {}
        for ci, cls in enumerate(classes):
            vals = set()
            for (x, m) in cls:
                s_elt = C.extra["payload"][m][1]
                vals.add(int(X.base.act[x, s_elt]))
            assert len(vals) == 1, "colimit class maps to several points of Xe"
            beta[ci] = vals.pop()
        fibers.append(classes)
        maps_classes.append(rep_of)
        betas.append(beta)
    # transitions: precompose with the site morphism
    maps = []
    for m, (e, a, f) in enumerate(C.extra["payload"]):
        co, do = obj_of_elt[e], obj_of_elt[f]
        arr = np.empty(len(fibers[co]), dtype=np.int64)
        for ci, cls in enumerate(fibers[co]):
            results = set()
            for (x, mm) in cls:
                results.add(maps_classes[do][(x, int(C.comp[mm, m]))])
            assert len(results) == 1, "transition not constant on a colimit class"
            arr[ci] = results.pop()
        maps.append(arr)
    fiber_labels = tuple(
        tuple(f"i{ci}" for ci in range(len(fibers[o]))) for o in range(C.n_objects)
    )
    P = Presheaf(C, fiber_labels, tuple(maps))
    return IShriekResult(P, tuple(betas))


def I_shriek(X: EtaleAction, site: FiniteCategory = None) -> Presheaf:
    return i_shriek_with_maps(X, site).presheaf
