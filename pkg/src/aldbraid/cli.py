"""
Command-line workbench tying the library together.

Subcommands:

    decide-ald T1 T2     decide ALD-equivalence (exit 0 equal, 1 not, 2 unknown)
    decide-ld  T1 T2     decide/compare LD-equivalence of *-terms
    order-ald  T1 T2     compare one-variable terms in the ALD order
    normalize  T         print the special form and its rewriting trace
    eval       T GAMMA   evaluate a term at a word (recursive/closed/diagram)
    verify-relations     audit the defining and derived relations
    freeness-scan        enumerate terms, partition into ALD-classes, and
                         check the evaluations separate exactly the classes

Flags: --json for machine-readable reports, --seed, --max-size, --budget
SIZE,STEPS.  Term and word grammars are those of the library.  The CLI adds
no logic of its own: every verdict is reproducible from library calls.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .diagrams import (
    diagram_equal,
    diagram_eval_term,
    diagram_reduce,
    word_eq_oracle,
    word_to_diagram,
)
from .invariants import (
    LdClassIndex,
    ald_class_key,
    decide_ald,
    derive_special,
    inv_I,
    inv_J,
    order_ald,
    specialize,
)
from .ldoracle import LdOracle, decide_ld_1var, decide_ld_bounded
from .pbwords import (
    audit_derived_identities,
    parse_pb,
    pb_eval_closed,
    pb_eval_term,
    relation_instances,
    render_pb,
)
from .terms import (
    ParseError,
    decompose_special,
    enumerate_terms,
    is_one_variable,
    is_special,
    is_star_term,
    parse_term,
    render_term,
    seq_sq,
    circ_less,
)

EX_EQUAL = 0
EX_DIFFERENT = 1
EX_UNKNOWN = 2
EX_USAGE = 64

DEFAULT_GAMMAS = ("", "s1", "a1", "s1 a2")


@dataclass
class ExperimentConfig:
    max_term_size: int = 5
    gamma_samples: tuple = tuple(parse_pb(g) for g in DEFAULT_GAMMAS)
    size_cap: int | None = None
    step_cap: int = 100_000
    seed: int = 0
    z_sample_count: int = 20
    relation_index_cap: int = 5

    def __post_init__(self):
        if self.max_term_size < 1:
            raise ValueError("max_term_size must be >= 1")
        if self.step_cap <= 0:
            raise ValueError("budgets must be positive")

    def oracle(self) -> LdOracle:
        return LdOracle(self.size_cap, self.step_cap)


# ---------------------------------------------------------------------------
# Experiments


def ald_partition(terms, index: LdClassIndex | None = None):
    """Group terms by their ALD-class key; returns (classes, key_of)."""
    index = index or LdClassIndex()
    classes: dict = {}
    key_of = {}
    for t in terms:
        key = ald_class_key(t, index)
        key_of[t] = key
        classes.setdefault(key, []).append(t)
    return classes, key_of


def _diagram_key(d):
    return (d.dom, d.cod, d.permutation(), sum(1 if x > 0 else -1 for x in d.braid))


def _all_distinct(diagrams):
    """Indices of colliding diagram pairs, using cheap invariants as buckets."""
    buckets: dict = {}
    collisions = []
    for idx, d in enumerate(diagrams):
        buckets.setdefault(_diagram_key(d), []).append(idx)
    for bucket in buckets.values():
        for a_pos, a in enumerate(bucket):
            for b in bucket[a_pos + 1 :]:
                if diagram_equal(diagrams[a], diagrams[b]):
                    collisions.append((a, b))
    return collisions


def freeness_scan(config: ExperimentConfig) -> dict:
    """Partition terms into ALD-classes and test that evaluation into the
    diagram model is constant on classes and injective across them, plus the
    critical special-form pairs that must evaluate apart."""
    terms = [t for t in enumerate_terms(1, "*o", config.max_term_size)]
    classes, key_of = ald_partition(terms)
    keys = list(classes)
    report = {
        "max_term_size": config.max_term_size,
        "gammas": [render_pb(g) for g in config.gamma_samples],
        "term_count": len(terms),
        "class_count": len(classes),
        "constant_failures": [],
        "separation_collisions": [],
        "critical_pairs_checked": 0,
        "critical_failures": [],
    }
    for gamma in config.gamma_samples:
        gamma_d = diagram_reduce(word_to_diagram(gamma))
        cache: dict = {}
        evals = {t: diagram_reduce(diagram_eval_term(t, gamma_d, cache)) for t in terms}
        for key in keys:
            rep, *rest = classes[key]
            for other in rest:
                if not diagram_equal(evals[rep], evals[other]):
                    report["constant_failures"].append(
                        {
                            "gamma": render_pb(gamma),
                            "term": render_term(other),
                            "representative": render_term(rep),
                        }
                    )
        reps = [classes[key][0] for key in keys]
        for a, b in _all_distinct([evals[r] for r in reps]):
            report["separation_collisions"].append(
                {
                    "gamma": render_pb(gamma),
                    "left": render_term(reps[a]),
                    "right": render_term(reps[b]),
                }
            )
        # critical pairs: special forms u[s] vs v[t] with u < v, or u = v and
        # s strictly below t entrywise, must evaluate apart
        specials = [t for t in terms if is_special(t)]
        decomposed = {t: decompose_special(t) for t in specials}
        for s in specials:
            u, sv = decomposed[s]
            for t in specials:
                v, tv = decomposed[t]
                if circ_less(u, v) or (u == v and seq_sq(sv, tv)):
                    report["critical_pairs_checked"] += 1
                    if diagram_equal(evals[s], evals[t]):
                        report["critical_failures"].append(
                            {
                                "gamma": render_pb(gamma),
                                "left": render_term(s),
                                "right": render_term(t),
                            }
                        )
    report["ok"] = not (
        report["constant_failures"]
        or report["separation_collisions"]
        or report["critical_failures"]
    )
    return report


def relation_audit(config: ExperimentConfig) -> dict:
    """Check the defining relations in the diagram model and the derived
    word identities with sampled substitutions."""
    rng = random.Random(config.seed)
    letters = [("s", 1), ("s", -1), ("s", 2), ("s", -2), ("a", 1), ("a", -1), ("a", 2), ("a", -2)]
    zs = [(), (("s", 1),)] + [
        tuple(rng.choice(letters) for _ in range(rng.randint(1, 4)))
        for _ in range(max(0, config.z_sample_count - 2))
    ]
    defining = []
    for rel in relation_instances(config.relation_index_cap):
        defining.append(
            {
                "family": rel.family,
                "i": rel.i,
                "j": rel.j,
                "lhs": render_pb(rel.lhs),
                "rhs": render_pb(rel.rhs),
                "holds": word_eq_oracle(rel.lhs, rel.rhs),
            }
        )
    derived = audit_derived_identities(word_eq_oracle, zs)
    return {
        "defining": defining,
        "derived": derived,
        "ok": all(r["holds"] for r in defining) and all(r["holds"] for r in derived),
    }


# ---------------------------------------------------------------------------
# Subcommands


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _budget(args) -> tuple[int | None, int]:
    if args.budget is None:
        return None, 100_000
    try:
        size_cap, step_cap = (int(part) for part in args.budget.split(","))
    except ValueError:
        raise ValueError(f"budget must be SIZE,STEPS, got {args.budget!r}") from None
    return size_cap, step_cap


def cmd_decide_ald(args) -> int:
    t1, t2 = parse_term(args.left), parse_term(args.right)
    size_cap, step_cap = _budget(args)
    verdict = decide_ald(t1, t2, LdOracle(size_cap, step_cap))
    payload = {
        "verdict": verdict.kind,
        "i_left": render_term(inv_I(t1)),
        "i_right": render_term(inv_I(t2)),
        "j_left": [render_term(e) for e in inv_J(t1)],
        "j_right": [render_term(e) for e in inv_J(t2)],
    }
    if verdict.reason:
        payload["reason"] = verdict.reason
    _emit(
        args,
        payload,
        [
            verdict.kind,
            f"I: {payload['i_left']} vs {payload['i_right']}",
            f"J: {payload['j_left']} vs {payload['j_right']}",
        ],
    )
    return {"equal": EX_EQUAL, "not-equal": EX_DIFFERENT, "unknown": EX_UNKNOWN}[verdict.kind]


def cmd_decide_ld(args) -> int:
    t1, t2 = parse_term(args.left), parse_term(args.right)
    size_cap, step_cap = _budget(args)
    if is_one_variable(t1) and is_one_variable(t2) and is_star_term(t1) and is_star_term(t2):
        sign = decide_ld_1var(t1, t2)
        kind = {0: "equal", -1: "less", 1: "greater"}[sign]
    else:
        verdict = decide_ld_bounded(t1, t2, size_cap, step_cap)
        kind = verdict.value
    _emit(args, {"verdict": kind}, [kind])
    if kind == "equal":
        return EX_EQUAL
    if kind == "unknown":
        return EX_UNKNOWN
    return EX_DIFFERENT


def cmd_order_ald(args) -> int:
    t1, t2 = parse_term(args.left), parse_term(args.right)
    sign = order_ald(t1, t2)
    kind = {0: "equal", -1: "less", 1: "greater"}[sign]
    _emit(args, {"order": kind}, [kind])
    return EX_EQUAL


def cmd_normalize(args) -> int:
    t = parse_term(args.term)
    special = specialize(t)
    trace = derive_special(t)
    payload = {
        "input": render_term(t),
        "special": render_term(special),
        "trace": [
            {"law": s.law, "pos": "".join(s.pos), "direction": s.direction} for s in trace
        ],
    }
    lines = [f"special: {payload['special']}"] + [
        f"  {s['law']} {s['direction']} @ {s['pos'] or 'root'}" for s in payload["trace"]
    ]
    _emit(args, payload, lines)
    return EX_EQUAL


def cmd_eval(args) -> int:
    t = parse_term(args.term)
    gamma = parse_pb(args.gamma)
    if args.mode == "closed-form":
        v, ts = decompose_special(specialize(t))
        word = pb_eval_closed(v, ts, gamma)
        _emit(args, {"word": render_pb(word)}, [render_pb(word)])
    elif args.mode == "diagram":
        d = diagram_reduce(diagram_eval_term(t, word_to_diagram(gamma)))
        _emit(args, d.to_json(), [json.dumps(d.to_json())])
    else:
        word = pb_eval_term(t, gamma)
        _emit(args, {"word": render_pb(word)}, [render_pb(word)])
    return EX_EQUAL


def cmd_verify_relations(args) -> int:
    config = ExperimentConfig(
        seed=args.seed,
        z_sample_count=args.samples,
        relation_index_cap=args.max_index,
    )
    report = relation_audit(config)
    lines = []
    for row in report["defining"]:
        lines.append(
            f"{'pass' if row['holds'] else 'FAIL'}  {row['family']}(i={row['i']}, j={row['j']}): "
            f"{row['lhs']} = {row['rhs']}"
        )
    for row in report["derived"]:
        z = f" [z = {row['z']}]" if row["z"] is not None else ""
        lines.append(f"{'pass' if row['holds'] else 'FAIL'}  {row['identity']}{z}")
    lines.append("ok" if report["ok"] else "FAILED")
    _emit(args, report, lines)
    return EX_EQUAL if report["ok"] else EX_DIFFERENT


def cmd_freeness_scan(args) -> int:
    size_cap, step_cap = _budget(args)
    gammas = tuple(parse_pb(g) for g in (args.gamma or DEFAULT_GAMMAS))
    config = ExperimentConfig(
        max_term_size=args.max_size,
        gamma_samples=gammas,
        size_cap=size_cap,
        step_cap=step_cap,
        seed=args.seed,
    )
    report = freeness_scan(config)
    lines = [
        f"terms: {report['term_count']}  classes: {report['class_count']}",
        f"constant on classes: {'yes' if not report['constant_failures'] else 'NO'}",
        f"separates classes: {'yes' if not report['separation_collisions'] else 'NO'}",
        f"critical pairs apart: {report['critical_pairs_checked']} checked, "
        f"{'all pass' if not report['critical_failures'] else 'FAILURES'}",
        "ok" if report["ok"] else "FAILED",
    ]
    _emit(args, report, lines)
    return EX_EQUAL if report["ok"] else EX_DIFFERENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aldbraid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("decide-ald", help="decide ALD-equivalence of two terms")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", help="SIZE,STEPS caps for the bounded LD oracle")
    common(p)
    p.set_defaults(run=cmd_decide_ald)

    p = sub.add_parser("decide-ld", help="decide LD-equivalence of two *-terms")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", help="SIZE,STEPS caps for the bounded closure")
    common(p)
    p.set_defaults(run=cmd_decide_ld)

    p = sub.add_parser("order-ald", help="compare one-variable terms in the ALD order")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(run=cmd_order_ald)

    p = sub.add_parser("normalize", help="special form plus its rewriting trace")
    p.add_argument("term")
    common(p)
    p.set_defaults(run=cmd_normalize)

    p = sub.add_parser("eval", help="evaluate a one-variable term at a word")
    p.add_argument("term")
    p.add_argument("gamma")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument(
        "--recursive", dest="mode", action="store_const", const="recursive", default="recursive"
    )
    mode.add_argument("--closed-form", dest="mode", action="store_const", const="closed-form")
    mode.add_argument("--diagram", dest="mode", action="store_const", const="diagram")
    common(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("verify-relations", help="audit defining and derived relations")
    p.add_argument("--max-index", type=int, default=5)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(run=cmd_verify_relations)

    p = sub.add_parser("freeness-scan", help="class-by-class separation experiment")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--gamma", action="append", help="evaluation word (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", help="SIZE,STEPS caps for the bounded LD oracle")
    common(p)
    p.set_defaults(run=cmd_freeness_scan)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (ParseError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
