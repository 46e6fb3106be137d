"""Command-line surface.

Commands load structures from the text formats, run the analyses and
decision procedures, and emit deterministic reports: line-oriented
key=value text, or JSON behind --format json.  Exit codes: 0 pass,
1 semantic failure, 2 input error, 3 budget exhausted.  Timing goes to
stderr so reports stay byte-identical across runs.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bisets, corpus, formats
from .actions import (
    Q_of,
    action_homs,
    principal_action,
    unit_iso_check,
    fullness_faithfulness_check,
)
from .categories import C_of, L_of
from .errors import BudgetExceeded, MoritaError, NotAssociative, ParseError
from .semigroups import (
    as_inverse,
    idempotents,
    is_locally_E_unitary,
    local_unit_flags,
    natural_leq,
)


@dataclass
class Report:
    command: str
    verdict: str = "pass"
    details: list = field(default_factory=list)  # (check, status, witness/value)
    timing_ms: float = 0.0

    def add(self, check: str, status: str, value: str = ""):
        self.details.append((check, status, str(value)))

    def fail(self, check: str, witness: str = ""):
        self.add(check, "fail", witness)
        self.verdict = "fail"

    def to_text(self) -> str:
        lines = [f"command={self.command}"]
        for (check, status, value) in self.details:
            line = f"check={check} status={status}"
            if value:
                line += f" value={value}"
            lines.append(line)
        lines.append(f"verdict={self.verdict}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "details": [
                {"check": c, "status": s, "value": v} for (c, s, v) in self.details
            ],
            "verdict": self.verdict,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(report: Report, args) -> int:
    out = report.to_json() if args.format == "json" else report.to_text()
    sys.stdout.write(out)
    sys.stderr.write(f"elapsed_ms={report.timing_ms:.1f}\n")
    return 0 if report.verdict in ("pass", "true", "false") else 1


def _load_inverse(path):
    return as_inverse(formats.load_semigroup(path))


# -- commands ---------------------------------------------------------------------

def cmd_validate(args) -> Report:
    rep = Report("validate")
    rep.add("input", "info", args.path)
    try:
        S = formats.load_semigroup(args.path)
    except NotAssociative as exc:
        rep.fail("associativity", str(exc.witness))
        return rep
    rep.add("associativity", "ok")
    try:
        as_inverse(S)
    except MoritaError as exc:
        rep.fail(f"inverse_structure:{type(exc).__name__}", str(exc.witness))
        return rep
    rep.add("inverse_structure", "ok")
    return rep


def cmd_analyze(args) -> Report:
    rep = Report("analyze")
    rep.add("input", "info", args.path)
    S = _load_inverse(args.path)
    E = idempotents(S)
    rep.add("elements", "info", str(len(S)))
    rep.add("idempotents", "info", str(len(E)))
    rep.add("idempotent_names", "info", ",".join(S.names[e] for e in E))
    flags = local_unit_flags(S)
    rep.add("right_local_units", "info", str(flags.right_local_units).lower())
    rep.add("left_local_units", "info", str(flags.left_local_units).lower())
    rep.add("sandwich", "info", str(flags.sandwich).lower())
    rep.add("locally_e_unitary", "info", str(is_locally_E_unitary(S)).lower())
    hasse = _hasse_edges(S)
    rep.add("natural_order_hasse_edges", "info", str(len(hasse)))
    for (a, b) in hasse:
        rep.add("hasse", "info", f"{S.names[a]}<{S.names[b]}")
    L, C = L_of(S), C_of(S)
    rep.add("L_morphisms", "info", str(L.n_mor))
    rep.add("C_morphisms", "info", str(C.n_mor))
    if args.emit_l:
        Path(args.emit_l).write_text(formats.dump_category(L), encoding="utf-8")
        rep.add("emit_l", "info", args.emit_l)
    if args.emit_c:
        Path(args.emit_c).write_text(formats.dump_category(C), encoding="utf-8")
        rep.add("emit_c", "info", args.emit_c)
    return rep


def _hasse_edges(S) -> list:
    n = len(S)
    leq = [[natural_leq(S, a, b) for b in range(n)] for a in range(n)]
    edges = []
    for a in range(n):
        for b in range(n):
            if a == b or not leq[a][b]:
                continue
            if any(leq[a][c] and leq[c][b] and c not in (a, b) for c in range(n)):
                continue
            edges.append((a, b))
    return edges


def cmd_morita(args) -> Report:
    rep = Report("morita")
    rep.add("input_s", "info", args.path_s)
    rep.add("input_t", "info", args.path_t)
    S = _load_inverse(args.path_s)
    T = _load_inverse(args.path_t)
    d = bisets.morita_equivalent(S, T)
    rep.add("skeleton_s_objects", "info", str(d.skeleton_S.cat.n_objects))
    rep.add("skeleton_s_morphisms", "info", str(d.skeleton_S.cat.n_mor))
    rep.add("skeleton_t_objects", "info", str(d.skeleton_T.cat.n_objects))
    rep.add("skeleton_t_morphisms", "info", str(d.skeleton_T.cat.n_mor))
    rep.verdict = "true" if d.equivalent else "false"
    if d.equivalent:
        from .categories import check_weak_equivalence

        if not (check_weak_equivalence(d.forward)
                and check_weak_equivalence(d.backward)):
            rep.fail("witness_functors")
        else:
            rep.add("witness_forward", "ok")
            rep.add("witness_backward", "ok")
    if args.oracle:
        found = bisets.exhaustive_biset_search(S, T, args.max_points, args.budget)
        agree = (found is not None) == d.equivalent
        rep.add("oracle_biset_search", "ok" if agree else "fail",
                f"found={found is not None}")
        if not agree:
            rep.verdict = "fail"
    return rep


def cmd_biset_check(args) -> Report:
    rep = Report("biset-check")
    rep.add("input", "info", args.path)
    B = formats.load_biset(args.path)
    report = bisets.verify_biset(B)
    for (name, ok, witness) in report.entries:
        rep.add(name, "ok" if ok else "fail", witness)
    if not report.passed:
        rep.verdict = "fail"
    return rep


def _subset_by_names(S, selector: str) -> list:
    if selector.strip() == "all":
        return list(range(len(S)))
    out = []
    for nm in selector.split():
        if nm not in S.names:
            raise ParseError(f"unknown element {nm!r}")
        out.append(S.names.index(nm))
    return out


def cmd_enlarge(args) -> Report:
    rep = Report("enlarge")
    rep.add("input", "info", args.path)
    R = formats.load_semigroup(args.path)
    s_sub = _subset_by_names(R, args.left)
    t_sub = _subset_by_names(R, args.right)
    B = bisets.biset_from_regular_enlargement(R, s_sub, t_sub)
    rep.add("points", "info", str(len(B)))
    report = bisets.verify_biset(B)
    for (name, ok, witness) in report.entries:
        rep.add(name, "ok" if ok else "fail", witness)
    if not report.passed:
        rep.verdict = "fail"
    if args.emit_biset:
        base = Path(args.emit_biset)
        s_path = base.with_suffix(".S.smg")
        t_path = base.with_suffix(".T.smg")
        s_path.write_text(formats.dump_semigroup(B.S), encoding="utf-8")
        t_path.write_text(formats.dump_semigroup(B.T), encoding="utf-8")
        base.write_text(formats.dump_biset(B, s_path.name, t_path.name),
                        encoding="utf-8")
        rep.add("emit_biset", "info", str(base))
    return rep


def cmd_biset_enlarge(args) -> Report:
    """Biset -> semigroupoid -> ordered groupoid, with every enlargement check."""
    rep = Report("biset-enlarge")
    rep.add("input", "info", args.path)
    B = formats.load_biset(args.path)
    if not bisets.verify_biset(B).passed:
        rep.fail("biset_axioms")
        return rep
    rep.add("biset_axioms", "ok")
    from .categories import check_morita_context, is_bipartite, is_left_cancellative
    from .groupoids import is_enlargement, ordered_groupoid_of, semigroupoid_violations

    U, s_objs, t_objs, P, Q = bisets.build_bipartite_U(B)
    rep.add("bipartite", "ok" if is_bipartite(U, s_objs, t_objs) else "fail")
    rep.add("left_cancellative", "ok" if is_left_cancellative(U) else "fail")
    rep.add("morita_context",
            "ok" if check_morita_context(P.source, Q.source, U, P, Q) else "fail")
    Rg = bisets.build_R_semigroupoid(B)
    rep.add("inverse_semigroupoid",
            "ok" if not semigroupoid_violations(Rg.names, Rg.table) else "fail")
    G = ordered_groupoid_of(Rg)
    rep.add("ordered_groupoid", "ok")
    s_part = list(Rg.extra["s_part"])
    t_part = list(Rg.extra["t_part"])
    rep.add("enlargement_of_S", "ok" if is_enlargement(G, s_part) else "fail")
    rep.add("enlargement_of_T", "ok" if is_enlargement(G, t_part) else "fail")
    B2 = bisets.biset_from_ordered_enlargement(
        G, B.S, B.T, np.array(s_part), np.array(t_part))
    rep.add("roundtrip_biset", "ok" if bisets.verify_biset(B2).passed else "fail")
    if args.emit_ogpd:
        Path(args.emit_ogpd).write_text(formats.dump_ordered_groupoid(G),
                                        encoding="utf-8")
        rep.add("emit_ogpd", "info", args.emit_ogpd)
    if any(s == "fail" for (_c, s, _v) in rep.details):
        rep.verdict = "fail"
    return rep


def cmd_psh_equiv(args) -> Report:
    rep = Report("psh-equiv")
    rep.add("input", "info", args.path)
    rep.add("samples", "info", str(args.samples))
    rep.add("seed", "info", str(args.seed))
    S = _load_inverse(args.path)
    C = C_of(S)
    E = C.extra["obj_elt"]
    tab = S.table
    for e in E:
        P = Q_of(principal_action(S, e), C)
        rep.add(f"unit_iso_representable_{S.names[e]}",
                "ok" if unit_iso_check(P) else "fail")
    presheaves = corpus.sample_presheaves(S, C, args.seed, args.samples)
    actions = corpus.sample_closed_actions(S, args.seed, args.samples)

    def unit_job(i):
        return i, unit_iso_check(presheaves[i])

    def ff_job(i):
        X = actions[i]
        Y = actions[(i + 1) % len(actions)]
        return i, fullness_faithfulness_check(X, Y)

    if args.parallel > 1:
        with ThreadPoolExecutor(max_workers=args.parallel) as pool:
            unit_results = sorted(pool.map(unit_job, range(len(presheaves))))
            ff_results = sorted(pool.map(ff_job, range(len(actions))))
    else:
        unit_results = [unit_job(i) for i in range(len(presheaves))]
        ff_results = [ff_job(i) for i in range(len(actions))]
    for i, ok in unit_results:
        rep.add(f"unit_iso_sample_{i}", "ok" if ok else "fail")
    for i, ok in ff_results:
        rep.add(f"full_faithful_sample_{i}", "ok" if ok else "fail")
    for d in E:
        for e in E:
            homs = action_homs(principal_action(S, d), principal_action(S, e))
            eSd = [s for s in range(len(S)) if tab[tab[e, s], d] == s]
            rep.add(f"hom_count_{S.names[d]}_{S.names[e]}",
                    "ok" if len(homs) == len(eSd) else "fail",
                    f"{len(homs)}={len(eSd)}")
    if any(s == "fail" for (_c, s, _v) in rep.details):
        rep.verdict = "fail"
    return rep


def cmd_corpus(args) -> Report:
    rep = Report("corpus")
    outdir = Path(args.outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        members = corpus.builtin_corpus()
        for name, S in members:
            (outdir / f"{name}.smg").write_text(formats.dump_semigroup(S),
                                                encoding="utf-8")
            rep.add("wrote", "info", f"{name}.smg")
        lines = ["# pair expectations: name_a name_b expected provenance"]
        for (a, b, expected, why) in corpus.expected_morita_pairs():
            lines.append(f"{a}\t{b}\t{str(expected).lower()}\t{why}")
        (outdir / "manifest.tsv").write_text("\n".join(lines) + "\n",
                                             encoding="utf-8")
        rep.add("wrote", "info", "manifest.tsv")
    except OSError as exc:
        raise ParseError(f"cannot write corpus: {exc}")
    return rep


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="morita",
        description="Finite inverse semigroups and their Morita equivalence.",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10_000_000,
                   help="cell budget for exhaustive searches")
    p.add_argument("--max-points", type=int, default=4,
                   help="carrier bound for the biset search oracle")
    p.add_argument("--parallel", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("validate", help="associativity and inverse checks")
    c.add_argument("path")
    c.set_defaults(fn=cmd_validate)

    c = sub.add_parser("analyze", help="idempotents, order, local units, |L|, |C|")
    c.add_argument("path")
    c.add_argument("--emit-l", default=None, help="write L(S) as .cat")
    c.add_argument("--emit-c", default=None, help="write C(S) as .cat")
    c.set_defaults(fn=cmd_analyze)

    c = sub.add_parser("morita", help="decide Morita equivalence of two semigroups")
    c.add_argument("path_s")
    c.add_argument("path_t")
    c.add_argument("--oracle", action="store_true",
                   help="cross-check with the exhaustive biset search")
    c.set_defaults(fn=cmd_morita)

    c = sub.add_parser("biset-check", help="verify the (M1)-(M7) axioms of a .biset")
    c.add_argument("path")
    c.set_defaults(fn=cmd_biset_check)

    c = sub.add_parser("enlarge",
                       help="extract a biset from a regular joint enlargement")
    c.add_argument("path", help=".smg of the ambient regular semigroup")
    c.add_argument("--left", required=True,
                   help="space-separated element names of S (or 'all')")
    c.add_argument("--right", required=True,
                   help="space-separated element names of T (or 'all')")
    c.add_argument("--emit-biset", default=None)
    c.set_defaults(fn=cmd_enlarge)

    c = sub.add_parser("biset-enlarge",
                       help="build the joint enlargement groupoid of a biset")
    c.add_argument("path", help=".biset file")
    c.add_argument("--emit-ogpd", default=None)
    c.set_defaults(fn=cmd_biset_enlarge)

    c = sub.add_parser("psh-equiv",
                       help="closed actions vs presheaves on the Cauchy completion")
    c.add_argument("path")
    c.add_argument("--samples", type=int, default=20)
    c.set_defaults(fn=cmd_psh_equiv)

    c = sub.add_parser("corpus", help="write the builtin corpus and manifest")
    c.add_argument("outdir")
    c.set_defaults(fn=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        report = args.fn(args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except (ParseError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except MoritaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    report.timing_ms = (time.perf_counter() - t0) * 1000.0
    return _emit(report, args)


if __name__ == "__main__":
    sys.exit(main())
