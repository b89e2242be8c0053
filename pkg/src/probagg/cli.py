"""Command-line front end: ``probagg <command> [options]``.

JSON goes to stdout (or ``--output``), human-readable tables to stderr;
``--pretty`` prints only the tables, to stdout. Exit codes: 0 ok, 1 findings
or violations, 2 input or domain errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .agenda import and_stability_gaps
from .dynamics import (
    AmbiguousUpdateError,
    DynamicsError,
    InadmissibleEventError,
    Trace,
    bayes_update_bounds,
    commutativity,
    run_sequence,
)
from .generators import profile_pair
from .jsonio import (
    SchemaError,
    agenda_from_json,
    decimal_str,
    dumps,
    exact_str,
    judgment_from_json,
    judgment_to_json,
    load_json,
    profile_from_json,
    session_from_json,
    weights_from_json,
)
from .judgment import JudgmentError, unique_joint
from .logic import LogicError
from .pooling import (
    PoolingError,
    Profile,
    Weights,
    check_consensus_compatibility,
    check_independence,
    is_dictatorial,
    linear_pool,
    linear_rule,
)
from .reproduce import reproduce
from .suites import negative_suite, on_domain_suite

log = logging.getLogger("probagg")

EXIT_OK, EXIT_FINDINGS, EXIT_INPUT = 0, 1, 2


class _Out:
    def __init__(self, args):
        self.args = args
        self.places = args.round
        self._json: list[str] = []
        self._tables: list[str] = []

    def json(self, obj):
        self._json.append(dumps(obj))

    def table(self, text: str):
        self._tables.append(text)

    def flush(self):
        tables = "\n".join(self._tables)
        if self.args.pretty:
            self._write(tables + ("\n" if tables else ""))
            return
        self._write("".join(line + "\n" for line in self._json))
        if tables:
            sys.stderr.write(tables + "\n")

    def _write(self, text: str):
        if self.args.output:
            Path(self.args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)


def render_table(title: str, columns: list[str], rows: list[tuple[str, list]], places: int) -> str:
    cells = [[label] + [decimal_str(v, places) for v in vals] for label, vals in rows]
    header = [""] + columns
    widths = [max(len(r[i]) for r in cells + [header]) for i in range(len(header))]
    line = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    rule = "-" * len(line(header))
    return "\n".join([title, rule, line(header), rule] + [line(r) for r in cells] + [rule])


def _eps(args):
    if args.mode == "rational":
        return 0
    eps = float(Fraction(args.eps))
    if eps <= 0:
        raise SchemaError("--eps must be positive", "", "eps")
    return eps


def _weights(args, profile: Profile, eps) -> Weights:
    if args.weights:
        return weights_from_json(args.weights, Path.cwd(), eps, args.weights)
    return Weights.equal(profile.n) if not eps else Weights(tuple(1.0 / profile.n for _ in range(profile.n)))


def _profile(path: str, eps) -> Profile:
    return profile_from_json(path, Path.cwd(), eps, path)


# -- commands ----------------------------------------------------------------


def cmd_check_agenda(args, out: _Out) -> int:
    x = agenda_from_json(args.file, Path.cwd(), args.file)
    witness = x.nested_witness
    report = {
        "atoms": list(x.lang.atoms),
        "formulas": [f.text for f in x.formulas],
        "negation_closed": x.is_negation_closed(),
        "and_stable": x.is_and_stable("base"),
        "and_stable_all_members": x.is_and_stable("full"),
        "and_gaps": [[f.text, g.text] for f, g in and_stability_gaps(x, "base")],
        "nested": witness is not None,
        "non_nested": witness is None,
        "nested_chain": [f.text for f in witness.chain] if witness else None,
        "non_contingent_in_chain": [f.text for f in witness.non_contingent] if witness else None,
        "contingent_count": x.contingent_count,
        "theorem1_preconditions": x.theorem1_preconditions().to_dict(),
    }
    out.json(report)
    out.table("\n".join(f"{k}: {v}" for k, v in report.items()))
    return EXIT_OK


def cmd_check_rationality(args, out: _Out) -> int:
    eps = _eps(args)
    obj = load_json(args.file)
    if isinstance(obj, dict) and "judgments" in obj:
        judgments = list(_profile(args.file, eps))
    else:
        j = judgment_from_json(obj, None, Path(args.file).parent, eps, args.file)
        j.name = j.name or "J"
        judgments = [j]
    results = []
    for j in judgments:
        res = j.rationality
        item = {"name": j.name, "rational": res.rational}
        if res.rational:
            item["certificate"] = [exact_str(w) for w in res.certificate.weights]
            item["unique_joint"] = unique_joint(j)
        else:
            item["conflict"] = [f.text for f in res.witness]
        results.append(item)
    out.json({"judgments": results})
    out.table("\n".join(
        f"{r['name']}: {'rational' if r['rational'] else 'NOT rational, conflict among ' + ', '.join(r['conflict'])}"
        for r in results))
    return EXIT_OK if all(r["rational"] for r in results) else EXIT_FINDINGS


def cmd_aggregate(args, out: _Out) -> int:
    eps = _eps(args)
    p = _profile(args.file, eps)
    w = _weights(args, p, eps)
    pooled = linear_pool(p, w)
    d = is_dictatorial(w)
    out.json({
        "weights": [exact_str(x) for x in w],
        "dictator": None if d is None else d + 1,
        "collective": judgment_to_json(pooled, out.places),
        "collective_rational": pooled.rational,
    })
    cols = list(p.agenda.base)
    rows = [(j.name, [j[f] for f in cols]) for j in p] + [("F", [pooled[f] for f in cols])]
    out.table(render_table("linear pool", [f.text for f in cols], rows, out.places))
    return EXIT_OK


def cmd_update(args, out: _Out) -> int:
    eps = _eps(args)
    p = _profile(args.file, eps)
    w = _weights(args, p, eps)
    phi = p.agenda.parse(args.learn)
    cols = list(p.agenda.base)
    try:
        res = commutativity(p, w, phi)
    except AmbiguousUpdateError as exc:
        if not args.interval or exc.interval is None:
            raise
        bounds = {}
        for j in list(p) + [linear_pool(p, w)]:
            iv = bayes_update_bounds(j, phi)
            bounds[j.name] = {f.text: [decimal_str(b.lo, out.places), decimal_str(b.hi, out.places)]
                              for f, b in iv.items()}
        out.json({"learned": phi.text, "interval": True, "bounds": bounds})
        return EXIT_OK
    out.json({
        "learned": phi.text,
        "individuals": [judgment_to_json(j, out.places) for j in res.updated],
        "update_then_aggregate": judgment_to_json(res.update_then_aggregate, out.places),
        "aggregate_then_update": judgment_to_json(res.aggregate_then_update, out.places),
        "gap": exact_str(res.gap),
    })
    rows = [(j.name, [j[f] for f in cols]) for j in res.updated]
    rows += [("F(update first)", [res.update_then_aggregate[f] for f in cols]),
             ("F(pool first)", [res.aggregate_then_update[f] for f in cols])]
    out.table(render_table(f"after learning {phi.text}", [f.text for f in cols], rows, out.places))
    return EXIT_OK if res.gap <= eps else EXIT_FINDINGS


def cmd_verify_axioms(args, out: _Out) -> int:
    eps = _eps(args)
    p = _profile(args.file, eps)
    w = _weights(args, p, eps)
    rule = linear_rule(w)
    cons = check_consensus_compatibility(rule, p, seed=args.seed)
    rng = random.Random(args.seed)
    pairs = [profile_pair(p.agenda, p.n, rng)[:2] for _ in range(args.cases)]
    indep = check_independence(rule, pairs, seed=args.seed)
    report = {
        "rule": "linear",
        "weights": [exact_str(x) for x in w],
        "theorem1_preconditions": p.agenda.theorem1_preconditions().to_dict(),
        "consensus_compatibility": cons.to_dict(),
        "independence": indep.to_dict(),
    }
    out.json(report)
    out.table(f"consensus compatibility: {cons.applicable}/{cons.candidates} candidates applicable, "
              f"{len(cons.violations)} violations\n"
              f"independence: {indep.comparisons} comparisons over {indep.pairs} pairs, "
              f"{len(indep.violations)} violations")
    return EXIT_OK if cons.ok and indep.ok else EXIT_FINDINGS


def _trace_records(trace: Trace, places: int) -> list[dict]:
    recs = []
    for s in trace.steps:
        recs.append({
            "step": s.step,
            "learned": s.learned.text,
            "gap": exact_str(s.gap),
            "phi_preserved": s.preservation.preserved,
            "collective": {f.text: decimal_str(v, places) for f, v in s.update_then_aggregate.items()},
            "collective_exact": {f.text: exact_str(v) for f, v in s.update_then_aggregate.items()},
            "learnable": [f.text for f in s.learnable],
        })
    return recs


def _trace_tables(trace: Trace, places: int) -> list[str]:
    cols = list(trace.initial.profile.agenda.base)
    names = [f.text for f in cols]
    out = []
    for s in trace.steps:
        rows = [(j.name, [j[f] for f in cols]) for j in s.after.profile]
        rows.append(("F", [s.update_then_aggregate[f] for f in cols]))
        out.append(render_table(f"step {s.step}: learn {s.learned.text} (gap {exact_str(s.gap)})",
                                names, rows, places))
    return out


def cmd_session(args, out: _Out) -> int:
    eps = _eps(args)
    state, events = session_from_json(args.file, Path.cwd(), eps, args.file)
    if not state.profile.all_rational:
        names = [state.profile[i].name for i in state.profile.irrational_indices]
        log.warning("profile contains judgments with no extending measure: %s", ", ".join(names))
    try:
        trace = run_sequence(state, events)
    except InadmissibleEventError as exc:
        for rec in _trace_records(exc.trace, out.places):
            out.json(rec)
        raise
    for rec in _trace_records(trace, out.places):
        out.json(rec)
    for t in _trace_tables(trace, out.places):
        out.table(t)
    ok = all(s.gap <= eps and s.preservation.preserved for s in trace.steps)
    return EXIT_OK if ok else EXIT_FINDINGS


def cmd_reproduce_paper(args, out: _Out) -> int:
    res = reproduce()
    out.json(res.to_dict(out.places))
    titles = {
        "table1": "example profile",
        "table2": "linear pool, equal weights",
        "table3": "after learning a",
        "table4": "after learning a, then !c",
    }
    for name, rows in res.tables.items():
        out.table(render_table(titles[name], res.columns, rows, out.places))
    notes = [f"gap {k}: {exact_str(v)}" for k, v in res.gaps.items()]
    for name, r in res.rationality.items():
        if not r["rational"]:
            notes.append(f"note: {name} has no extending measure (conflict among {', '.join(r['conflict'])});"
                         " its rows are computed from linearly determined values")
    for c in res.mismatches:
        notes.append(f"MISMATCH {c.table} {c.row} {c.column}: computed {exact_str(c.value)}, printed {c.printed}")
    notes.append("all cells match" if res.ok else "reproduction FAILED")
    out.table("\n".join(notes))
    return EXIT_OK if res.ok else EXIT_FINDINGS


def cmd_property_suite(args, out: _Out) -> int:
    neg_cases = args.negative_cases if args.negative_cases is not None else max(1, args.cases // 2)
    pos = on_domain_suite(args.cases, args.seed, args.jobs)
    neg = negative_suite(neg_cases, args.seed, args.jobs)
    ok = pos.passed == pos.cases and neg.rate >= 0.95
    out.json({
        "ok": ok,
        "on_domain": pos.to_dict(),
        "off_domain": neg.to_dict(),
    })
    out.table(f"on domain:  {pos.passed}/{pos.cases} zero gap, "
              f"{pos.extra['phi_preserved']}/{pos.cases} common ground preserved ({pos.seconds:.1f}s)\n"
              f"off domain: {neg.passed}/{neg.cases} positive gap ({neg.rate:.1%}, {neg.seconds:.1f}s)")
    return EXIT_OK if ok else EXIT_FINDINGS


COMMANDS = {
    "check-agenda": (cmd_check_agenda, "structural checks on an agenda file"),
    "check-rationality": (cmd_check_rationality, "certify judgments in a judgment or profile file"),
    "aggregate": (cmd_aggregate, "linear pool of a profile"),
    "update": (cmd_update, "condition a profile on a formula, both orders"),
    "verify-axioms": (cmd_verify_axioms, "consensus compatibility and independence checks"),
    "session": (cmd_session, "run a sequential learning session"),
    "reproduce-paper": (cmd_reproduce_paper, "recompute the bundled example tables"),
    "property-suite": (cmd_property_suite, "randomised commutativity suites"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("rational", "float"), default="rational")
    common.add_argument("--eps", default="1e-9", help="feasibility tolerance in float mode")
    common.add_argument("--round", type=int, default=4, help="decimal places for display")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--cases", type=int, default=1000)
    common.add_argument("--interval", action="store_true",
                        help="report interval-valued updates instead of failing")
    common.add_argument("--pretty", action="store_true", help="print tables instead of JSON")
    common.add_argument("--output", help="write machine output to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="probagg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_, parents=[common])
        if name in ("check-agenda", "check-rationality", "aggregate", "update", "verify-axioms", "session"):
            sp.add_argument("file")
        if name in ("aggregate", "update", "verify-axioms"):
            sp.add_argument("--weights", help="weights JSON file (default: equal weights)")
        if name == "update":
            sp.add_argument("--learn", required=True, help="formula learned to be true")
        if name == "property-suite":
            sp.add_argument("--negative-cases", type=int)
            sp.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.round < 0:
        parser.error("--round must be >= 0")
    out = _Out(args)
    fn = COMMANDS[args.command][0]
    try:
        code = fn(args, out)
    except (SchemaError, LogicError, JudgmentError, PoolingError, DynamicsError) as exc:
        out.flush()
        kind = type(exc).__name__
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
        return EXIT_INPUT
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
