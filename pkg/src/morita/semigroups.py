"""Finite semigroups as dense multiplication tables.

Elements are the indices 0..n-1; names are display-only.  An inverse
semigroup additionally stores the array of unique inverses (``star``).
All structures are immutable after construction and every operation here
is pure.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    IdempotentsDontCommute,
    NonUniqueInverse,
    NotASubsemigroup,
    NotRegular,
    SizeLimit,
)


@dataclass(eq=False)
class FiniteSemigroup:
    names: tuple
    table: np.ndarray

    def __post_init__(self):
        self.names = tuple(self.names)
        tab = np.ascontiguousarray(self.table, dtype=np.int64)
        tab.setflags(write=False)
        self.table = tab
        n = len(self.names)
        if tab.shape != (n, n):
            raise ValueError(f"table shape {tab.shape} does not match n={n}")
        if n and (tab.min() < 0 or tab.max() >= n):
            raise ValueError("table entries out of range")

    def __len__(self):
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __repr__(self):
        return f"{type(self).__name__}(n={len(self)})"


@dataclass(eq=False, repr=False)
class InverseSemigroup(FiniteSemigroup):
    star: np.ndarray = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        st = np.ascontiguousarray(self.star, dtype=np.int64)
        st.setflags(write=False)
        self.star = st
        if st.shape != (len(self),):
            raise ValueError("star must map every element")

    def inv(self, s: int) -> int:
        return int(self.star[s])


def assoc_witness(S: FiniteSemigroup):
    """First triple breaking associativity, or None."""
    return _kernels.assoc_witness(S.table)


def idempotents(S: FiniteSemigroup) -> list:
    n = len(S)
    d = S.table[np.arange(n), np.arange(n)]
    return [int(e) for e in np.flatnonzero(d == np.arange(n))]


def inverses_of(S: FiniteSemigroup, s: int) -> list:
    """All t with sts = s and tst = t, sorted."""
    tab = S.table
    return [
        t
        for t in range(len(S))
        if tab[tab[s, t], s] == s and tab[tab[t, s], t] == t
    ]


def as_inverse(S: FiniteSemigroup) -> InverseSemigroup:
    """Check S is inverse (regular with commuting idempotents) and attach star.

    Witnesses are reported for the first failure in index order.
    """
    if isinstance(S, InverseSemigroup):
        return S
    tab = S.table
    n = len(S)
    for s in range(n):
        if not inverses_of(S, s):
            raise NotRegular(f"element {S.names[s]} has no inverse", witness=s)
    E = idempotents(S)
    for i, e in enumerate(E):
        for f in E[i + 1:]:
            if tab[e, f] != tab[f, e]:
                raise IdempotentsDontCommute(
                    f"{S.names[e]} and {S.names[f]} do not commute", witness=(e, f)
                )
    star = np.empty(n, dtype=np.int64)
    for s in range(n):
        vs = inverses_of(S, s)
        if len(vs) != 1:
            # unreachable when the two checks above pass; defensive
            raise NonUniqueInverse(f"element {S.names[s]}", witness=(s, tuple(vs)))
        star[s] = vs[0]
    return InverseSemigroup(S.names, S.table, star)


def natural_leq(S: InverseSemigroup, s: int, t: int) -> bool:
    """Natural partial order: s <= t iff s = t(s*s)."""
    tab = S.table
    return tab[t, tab[S.star[s], s]] == s


@dataclass(frozen=True)
class LocalUnitFlags:
    right_local_units: bool
    left_local_units: bool
    local_units: bool
    sandwich: bool


def _product_set(table, A, B):
    if len(A) == 0 or len(B) == 0:
        return np.empty(0, dtype=np.int64)
    return np.unique(table[np.ix_(A, B)])


def local_unit_flags(S: FiniteSemigroup) -> LocalUnitFlags:
    """SE(S)=S, E(S)S=S, both, and the sandwich condition SE(S)S=S."""
    n = len(S)
    E = idempotents(S)
    full = np.arange(n)
    SE = _product_set(S.table, full, E)
    ES = _product_set(S.table, E, full)
    right = SE.size == n
    left = ES.size == n
    SES = _product_set(S.table, SE, full)
    return LocalUnitFlags(right, left, right and left, SES.size == n)


def is_subsemigroup(S: FiniteSemigroup, subset) -> bool:
    A = sorted(set(int(a) for a in subset))
    if not A:
        return False
    prods = set(int(v) for v in S.table[np.ix_(A, A)].ravel())
    return prods <= set(A)


def is_semigroup_enlargement(T: FiniteSemigroup, subset) -> bool:
    """True iff S = STS and T = TST (as product sets) for the subsemigroup S."""
    A = sorted(set(int(a) for a in subset))
    if not is_subsemigroup(T, A):
        raise NotASubsemigroup(witness=tuple(A))
    tab = T.table
    full = np.arange(len(T))
    ST = _product_set(tab, A, full)
    STS = _product_set(tab, ST, A)
    TS = _product_set(tab, full, A)
    TST = _product_set(tab, TS, full)
    return set(STS.tolist()) == set(A) and TST.size == len(T)


def is_locally_E_unitary(S: InverseSemigroup) -> bool:
    """Every local submonoid eSe is E-unitary.

    Checks: for all e in E(S), s with ese = s, and idempotent d in eSe
    with d <= s, s must itself be idempotent.
    """
    tab = S.table
    E = idempotents(S)
    for e in E:
        for s in range(len(S)):
            if tab[tab[e, s], e] != s:
                continue
            if tab[s, s] == s:
                continue
            for d in E:
                if tab[tab[e, d], e] != d:
                    continue
                if tab[s, d] == d:  # d <= s for idempotent d
                    return False
    return True


def restrict(S: FiniteSemigroup, subset):
    """Subsemigroup on `subset` re-indexed densely.

    Returns (semigroup, old_of_new) where old_of_new[i] is the ambient index.
    """
    A = sorted(set(int(a) for a in subset))
    if not is_subsemigroup(S, A):
        raise NotASubsemigroup(witness=tuple(A))
    new_of_old = {a: i for i, a in enumerate(A)}
    k = len(A)
    tab = np.empty((k, k), dtype=np.int64)
    for i, a in enumerate(A):
        for j, b in enumerate(A):
            tab[i, j] = new_of_old[int(S.table[a, b])]
    names = tuple(S.names[a] for a in A)
    return FiniteSemigroup(names, tab), A


def restrict_inverse(S: FiniteSemigroup, subset):
    """Like restrict() but checks the result is inverse on its own."""
    sub, old = restrict(S, subset)
    return as_inverse(sub), old


def subsemigroup_closure(S: FiniteSemigroup, seeds, star_closed: bool = False):
    """Smallest multiplication-closed subset containing seeds (sorted)."""
    cur = set(int(a) for a in seeds)
    if star_closed:
        if not isinstance(S, InverseSemigroup):
            raise ValueError("star closure needs an InverseSemigroup")
        cur |= {int(S.star[a]) for a in cur}
    while True:
        A = sorted(cur)
        prods = set(int(v) for v in S.table[np.ix_(A, A)].ravel())
        if star_closed:
            prods |= {int(S.star[a]) for a in prods}
        new = cur | prods
        if new == cur:
            return sorted(cur)
        cur = new


# -- builders ----------------------------------------------------------------

_SIZE_CAP = 10_000


def cyclic_group(n: int) -> InverseSemigroup:
    if n < 1:
        raise SizeLimit("n must be >= 1")
    names = tuple(f"g{i}" for i in range(n))
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    star = (-idx) % n
    return InverseSemigroup(names, table, star)


def chain_semilattice(n: int) -> InverseSemigroup:
    """Chain e0 > e1 > ... > e(n-1) with meet as product."""
    if n < 1:
        raise SizeLimit("n must be >= 1")
    names = tuple(f"e{i}" for i in range(n))
    idx = np.arange(n)
    table = np.maximum(idx[:, None], idx[None, :])
    return InverseSemigroup(names, table, idx.copy())


def brandt(G: InverseSemigroup, k: int) -> InverseSemigroup:
    """Brandt semigroup over the group G: (i,g,j)(j,h,l) = (i,gh,l), else 0."""
    if k < 1:
        raise SizeLimit("k must be >= 1")
    if len(idempotents(G)) != 1:
        raise ValueError("brandt() needs a group")
    m = len(G)
    n = k * k * m + 1
    if n > _SIZE_CAP:
        raise SizeLimit(f"brandt size {n} exceeds cap {_SIZE_CAP}")
    trivial = m == 1
    elems = [(i, g, j) for i in range(1, k + 1) for g in range(m) for j in range(1, k + 1)]
    names = []
    for (i, g, j) in elems:
        names.append(f"({i},{j})" if trivial else f"({i},{G.names[g]},{j})")
    names.append("0")
    zero = n - 1
    pos = {e: t for t, e in enumerate(elems)}
    table = np.full((n, n), zero, dtype=np.int64)
    for t1, (i, g, j) in enumerate(elems):
        for t2, (p, h, q) in enumerate(elems):
            if j == p:
                table[t1, t2] = pos[(i, G.mul(g, h), q)]
    star = np.empty(n, dtype=np.int64)
    for t, (i, g, j) in enumerate(elems):
        star[t] = pos[(j, G.inv(g), i)]
    star[zero] = zero
    return InverseSemigroup(tuple(names), table, star)


def group_with_zero(G: InverseSemigroup) -> InverseSemigroup:
    if len(idempotents(G)) != 1:
        raise ValueError("group_with_zero() needs a group")
    m = len(G)
    n = m + 1
    table = np.full((n, n), m, dtype=np.int64)
    table[:m, :m] = G.table
    star = np.concatenate([G.star, [m]])
    return InverseSemigroup(tuple(G.names) + ("0",), table, star)


def _partial_injections(n: int):
    from itertools import combinations, permutations

    elems = []
    for k in range(n + 1):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                f = [-1] * n
                for d, i in zip(dom, img):
                    f[d] = i
                elems.append((dom, img, tuple(f)))
    elems.sort(key=lambda e: (e[0], e[1]))
    return [f for (_, _, f) in elems]


def symmetric_inverse_monoid(n: int) -> InverseSemigroup:
    """All partial injections on n points; product is 'apply left, then right'."""
    if n < 1:
        raise SizeLimit("n must be >= 1")
    if n > 4:
        raise SizeLimit("symmetric_inverse_monoid is capped at n=4")
    elems = _partial_injections(n)
    pos = {f: i for i, f in enumerate(elems)}

    def compose(f, g):
        return tuple(-1 if f[x] == -1 else g[f[x]] for x in range(n))

    m = len(elems)
    table = np.empty((m, m), dtype=np.int64)
    for a, f in enumerate(elems):
        for b, g in enumerate(elems):
            table[a, b] = pos[compose(f, g)]
    star = np.empty(m, dtype=np.int64)
    for a, f in enumerate(elems):
        back = [-1] * n
        for x in range(n):
            if f[x] != -1:
                back[f[x]] = x
        star[a] = pos[tuple(back)]
    names = []
    for f in elems:
        parts = [f"{x}to{f[x]}" for x in range(n) if f[x] != -1]
        names.append("_".join(parts) if parts else "nil")
    return InverseSemigroup(tuple(names), table, star)
