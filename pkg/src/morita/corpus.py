"""The builtin corpus, curated expectations, and seeded sample generators.

Everything randomized takes an explicit random.Random so corpus sweeps,
the CLI, and the acceptance suite are reproducible bit for bit.
"""

import random

import numpy as np

from .actions import (
    coproduct_action,
    empty_action,
    munn_action,
    principal_action,
    principal_etale,
    quotient_action,
    regular_action,
)
from .categories import FiniteCategory
from .actions import Presheaf
from .semigroups import (
    FiniteSemigroup,
    InverseSemigroup,
    brandt,
    chain_semilattice,
    cyclic_group,
    group_with_zero,
    idempotents,
    restrict_inverse,
    subsemigroup_closure,
    symmetric_inverse_monoid,
)


def builtin_corpus() -> list:
    """(name, semigroup) pairs; all inverse."""
    out = []
    for k in range(1, 7):
        out.append((f"cyclic{k}", cyclic_group(k)))
    for k in range(1, 5):
        out.append((f"chain{k}", chain_semilattice(k)))
    for k in (1, 2, 3):
        out.append((f"brandt_1_{k}", brandt(cyclic_group(1), k)))
    out.append(("brandt_c2_2", brandt(cyclic_group(2), 2)))
    out.append(("c2_zero", group_with_zero(cyclic_group(2))))
    for k in (1, 2):
        out.append((f"syminv{k}", symmetric_inverse_monoid(k)))
    return out


def corpus_by_name() -> dict:
    return dict(builtin_corpus())


def expected_morita_pairs() -> list:
    """(name_a, name_b, expected, provenance) for the curated pairs."""
    pairs = [
        ("brandt_1_2", "brandt_1_3", True, "matrix-type over the same group"),
        ("brandt_1_2", "chain2", True, "enlargement of the local submonoid e11Te11"),
        ("brandt_1_3", "chain2", True, "enlargement of the local submonoid"),
        ("brandt_c2_2", "c2_zero", True, "enlargement of the local submonoid eTe"),
        ("brandt_1_1", "chain2", True, "isomorphic semigroups"),
        ("cyclic2", "cyclic3", False, "one-object skeletons with different hom sizes"),
        ("chain2", "chain3", False, "skeletons of different object counts"),
        ("cyclic2", "chain2", False, "skeleton shapes differ"),
        ("cyclic2", "cyclic4", False, "hom sizes differ"),
        ("chain2", "brandt_c2_2", False, "skeleton hom sizes differ"),
    ]
    pairs.extend((name, name, True, "reflexivity") for name, _s in builtin_corpus())
    return pairs


# -- mutation testing ------------------------------------------------------------

def mutation_cases() -> list:
    """Corpus members used for table mutation (size >= 3 keeps mutations honest)."""
    return [(n, s) for (n, s) in builtin_corpus() if len(s) >= 3]


def seeded_mutants(seed: int, count: int) -> list:
    """(case name, mutant FiniteSemigroup, (i, j, new)) with a single cell changed."""
    rng = random.Random(seed)
    cases = mutation_cases()
    out = []
    for k in range(count):
        name, S = cases[rng.randrange(len(cases))]
        n = len(S)
        i, j = rng.randrange(n), rng.randrange(n)
        old = int(S.table[i, j])
        new = rng.randrange(n - 1)
        if new >= old:
            new += 1
        table = S.table.copy()
        table[i, j] = new
        out.append((f"{name}[{i},{j}]->{new}#{k}",
                    FiniteSemigroup(S.names, table), (i, j, new)))
    return out


def axiom_violations(S: FiniteSemigroup, star=None) -> list:
    """Names of the axiom checks a (possibly corrupted) table fails."""
    from .semigroups import (
        as_inverse,
        assoc_witness,
        idempotents as idem_of,
        natural_leq,
    )
    from .errors import MoritaError

    bad = []
    if assoc_witness(S) is not None:
        bad.append("associativity")
        return bad
    try:
        inv = as_inverse(FiniteSemigroup(S.names, S.table))
    except MoritaError as exc:
        bad.append(f"inverse_structure:{type(exc).__name__}")
        return bad
    if star is not None and not np.array_equal(inv.star, star):
        bad.append("inverse_uniqueness")
    n = len(S)
    for s in range(n):
        for t in range(n):
            if natural_leq(inv, s, t) and natural_leq(inv, t, s) and s != t:
                bad.append("natural_order_antisymmetry")
                return bad
    return bad


# -- random inverse subsemigroups -------------------------------------------------

def random_inverse_subsemigroups(seed: int, count: int, ambient=None) -> list:
    """Inverse subsemigroups of the symmetric inverse monoid on 3 points."""
    if ambient is None:
        ambient = symmetric_inverse_monoid(3)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, 3)
        seeds = rng.sample(range(len(ambient)), k)
        closure = subsemigroup_closure(ambient, seeds, star_closed=True)
        sub, _old = restrict_inverse(ambient, closure)
        out.append(sub)
    return out


# -- sample actions and presheaves -------------------------------------------------

def sample_closed_actions(S: InverseSemigroup, seed: int, count: int) -> list:
    """Seeded family: principal ideals, small coproducts, quotients, S, Munn."""
    rng = random.Random(seed)
    E = idempotents(S)
    base = [principal_action(S, e) for e in E]
    pool = list(base) + [regular_action(S), munn_action(S).base, empty_action(S)]
    out = []
    while len(out) < count:
        kind = rng.randrange(4)
        if kind == 0:
            out.append(base[rng.randrange(len(base))])
        elif kind == 1:
            parts = [base[rng.randrange(len(base))]
                     for _ in range(rng.randint(1, 3))]
            out.append(coproduct_action(parts))
        elif kind == 2:
            X = coproduct_action([base[rng.randrange(len(base))]
                                  for _ in range(rng.randint(1, 2))])
            if len(X) >= 2:
                pairs = [(rng.randrange(len(X)), rng.randrange(len(X)))
                         for _ in range(rng.randint(1, 2))]
                out.append(quotient_action(X, pairs))
            else:
                out.append(X)
        else:
            out.append(pool[rng.randrange(len(pool))])
    return out[:count]


def sample_etale_actions(S: InverseSemigroup) -> list:
    """Munn action, every principal etale eS, and their unions via R."""
    from .actions import R_of

    out = [munn_action(S)]
    out.extend(principal_etale(S, e) for e in idempotents(S))
    out.append(R_of(regular_action(S)))
    return out


def sample_presheaves(S: InverseSemigroup, site: FiniteCategory,
                      seed: int, count: int) -> list:
    """Seeded presheaves on C(S): representables and quotients of coproducts."""
    from .actions import Q_of

    rng = random.Random(seed)
    E = site.extra["obj_elt"]
    reps = [Q_of(principal_action(S, e), site) for e in E]
    out = []
    while len(out) < count:
        k = rng.randint(1, 3)
        chosen = [reps[rng.randrange(len(reps))] for _ in range(k)]
        P = coproduct_presheaf(site, chosen)
        for _ in range(rng.randint(0, 2)):
            o = rng.randrange(site.n_objects)
            if P.fiber_size(o) >= 2:
                i, j = rng.randrange(P.fiber_size(o)), rng.randrange(P.fiber_size(o))
                P = quotient_presheaf(P, [(o, i, j)])
        out.append(P)
    return out[:count]


def coproduct_presheaf(site: FiniteCategory, parts) -> Presheaf:
    fibers, maps = [], []
    for o in range(site.n_objects):
        fib = []
        for k, P in enumerate(parts):
            fib.extend(f"c{k}_{lbl}" for lbl in P.fibers[o])
        fibers.append(tuple(fib))
    for m in range(site.n_mor):
        co, do = int(site.cod[m]), int(site.dom[m])
        arr = []
        off_d = 0
        for P in parts:
            arr.extend(int(v) + off_d for v in P.maps[m])
            off_d += P.fiber_size(do)
        maps.append(np.array(arr, dtype=np.int64))
    return Presheaf(site, tuple(fibers), tuple(maps))


def quotient_presheaf(P: Presheaf, idents) -> Presheaf:
    """Quotient by identifications (object, i, j), closed under transitions."""
    from ._util import UnionFind

    site = P.site
    uf = UnionFind((o, i) for o in range(site.n_objects)
                   for i in range(P.fiber_size(o)))
    stack = [(o, i, j) for (o, i, j) in idents]
    while stack:
        o, i, j = stack.pop()
        if uf.find((o, i)) == uf.find((o, j)):
            continue
        uf.union((o, i), (o, j))
        for m in range(site.n_mor):
            if int(site.cod[m]) == o:
                stack.append((int(site.dom[m]), int(P.maps[m][i]), int(P.maps[m][j])))
    classes = uf.classes()
    new_of = {}
    per_obj = [[] for _ in range(site.n_objects)]
    for cls in classes:
        o = cls[0][0]
        assert all(c[0] == o for c in cls), "identified elements across fibers"
        new_of.update({node: (o, len(per_obj[o])) for node in cls})
        per_obj[o].append(cls)
    fibers = tuple(
        tuple(P.fibers[o][cls[0][1]] for cls in per_obj[o])
        for o in range(site.n_objects)
    )
    maps = []
    for m in range(site.n_mor):
        co, do = int(site.cod[m]), int(site.dom[m])
        arr = np.empty(len(per_obj[co]), dtype=np.int64)
        for ci, cls in enumerate(per_obj[co]):
            vals = {new_of[(do, int(P.maps[m][i]))][1] for (_o, i) in cls}
            assert len(vals) == 1, "quotient transition not well-defined"
            arr[ci] = vals.pop()
        maps.append(arr)
    return Presheaf(site, fibers, tuple(maps))
