"""Command-line front end.

    endotorsion info psl2:5
    endotorsion kgroup psl3:4 -p 3
    endotorsion rho alt:4 -p 3 --format text
    endotorsion weakhom enumerate psl2:11 -p 2
    endotorsion weakhom construct psl2:5 -p 2 --character chi.json
    endotorsion weakhom verify psl2:5 -p 2 --table theta.json
    endotorsion fusion sym:4 -p 2
    endotorsion psl3-report 4
    endotorsion verify-suite --m11 m11.txt

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .classical import psl2_klein_report, verify_psl3_sylow3
from .fusion import controls_fusion, frattini_condition
from .kgroup import describe, k_group, k_group_cyclic, sylow_shape
from .linear import psl_as_permutation, sl_as_permutation
from .permcore import (
    DEFAULT_ENUMERATION_BOUND,
    GroupHandle,
    GroupTooLargeError,
    alternating_group,
    group_from_generators,
    parse_generator_file,
    symmetric_group,
)
from .rho import build_tower, subgroup_key
from .subgroups import normalizer, sylow_subgroup
from .suite import run_suite
from .weakhom import (
    DEFAULT_SAMPLES,
    EXHAUSTIVE_BOUND,
    CharacterTable,
    enumerate_A_group,
    theta_from_chi,
    verify_weakhom,
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND
    exhaustive_pair_bound: int = EXHAUSTIVE_BOUND
    sample_count: int = DEFAULT_SAMPLES
    rng_seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        for name in ("enumeration_bound", "exhaustive_pair_bound", "sample_count"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name} must be positive")
        if self.output_format not in ("json", "text"):
            raise UsageError(f"unknown output format {self.output_format!r}")


def parse_group(text: str, bound: int = DEFAULT_ENUMERATION_BOUND) -> GroupHandle:
    """``psl2:q``, ``psl3:q``, ``sl2:q``, ``sl3:q``, ``sym:n``, ``alt:n`` or
    ``file:path``."""
    kind, sep, arg = text.partition(":")
    if not sep or not arg:
        raise UsageError(f"bad group {text!r}; expected kind:arg")
    if kind == "file":
        try:
            content = Path(arg).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from exc
        try:
            gens = parse_generator_file(content)
        except ValueError as exc:
            raise UsageError(f"{arg}: {exc}") from exc
        return group_from_generators(gens, enumeration_bound=bound, name=f"file:{Path(arg).name}")
    try:
        n = int(arg)
    except ValueError:
        raise UsageError(f"bad group {text!r}; {arg!r} is not an integer") from None
    try:
        if kind in ("psl2", "psl3"):
            return psl_as_permutation(int(kind[-1]), n, bound)[0]
        if kind in ("sl2", "sl3"):
            return sl_as_permutation(int(kind[-1]), n, bound)[0]
        if kind in ("sym", "alt") and n > 2:
            # every subcommand lists elements, so refuse before Schreier-Sims
            order = math.factorial(n) // (2 if kind == "alt" else 1)
            if order > bound:
                raise UsageError(f"{text} has order above the enumeration bound {bound}")
        if kind == "sym":
            G = symmetric_group(n)
        elif kind == "alt":
            G = alternating_group(n)
        else:
            raise UsageError(f"unknown group kind {kind!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return GroupHandle(G.generators, enumeration_bound=bound, name=G.name)


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _prime(G: GroupHandle, p: int) -> int:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise UsageError(f"{p} is not prime")
    if G.order % p:
        raise UsageError(f"{p} does not divide |G| = {G.order}")
    return p


def _emit(report: dict, text: str | None, config: RunConfig, out) -> None:
    report = dict(report, seed=config.rng_seed)
    if config.output_format == "json" or text is None:
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text + f"\nseed             {config.rng_seed}\n")


def cmd_info(args, config: RunConfig, out) -> int:
    G = parse_group(args.group, config.enumeration_bound)
    report: dict[str, Any] = {
        "schema": 1,
        "kind": "group_info",
        "group": G.name,
        "degree": G.degree,
        "order": G.order,
        "generators": len(G.generators),
    }
    primes = [args.p] if args.p else _order_primes(G.order)
    rows = []
    for p in primes:
        _prime(G, p)
        S = sylow_subgroup(G, p)
        rows.append(
            {
                "prime": p,
                "sylow_order": S.order,
                "sylow_shape": sylow_shape(S),
                "sylow_generators": subgroup_key(S),
                "normalizer_order": normalizer(G, S).order,
            }
        )
    report["sylow"] = rows
    lines = [f"{G.name}: degree {G.degree}, order {G.order}"]
    for r in rows:
        lines.append(
            f"  p={r['prime']}: Sylow order {r['sylow_order']} ({r['sylow_shape']}), "
            f"N_G(S) order {r['normalizer_order']}"
        )
    _emit(report, "\n".join(lines), config, out)
    return 0


def _order_primes(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def cmd_rho(args, config: RunConfig, out) -> int:
    G = parse_group(args.group, config.enumeration_bound)
    tower = build_tower(G, _prime(G, args.p))
    report = tower.to_dict()
    lines = [
        f"{G.name}, p={args.p}: {report['subgroup_count']} nontrivial subgroups of S, "
        f"stable after {report['stable_at']} level(s)"
    ]
    for row in report["subgroups"]:
        lines.append(
            f"  |Q|={row['order']:<4} |N_G(Q)|={row['normalizer_order']:<6} "
            f"rho orders {row['rho_orders']}  Q = <{', '.join(row['subgroup'])}>"
        )
    _emit(report, "\n".join(lines), config, out)
    return 0


def cmd_kgroup(args, config: RunConfig, out) -> int:
    G = parse_group(args.group, config.enumeration_bound)
    p = _prime(G, args.p)
    report = k_group_cyclic(G, p) if args.cyclic else k_group(G, p)
    _emit(report.to_dict(), describe(report), config, out)
    return 0


def cmd_fusion(args, config: RunConfig, out) -> int:
    G = parse_group(args.group, config.enumeration_bound)
    p = _prime(G, args.p)
    fusion = controls_fusion(G, p)
    frattini = frattini_condition(G, p)
    report = {
        "schema": 1,
        "kind": "fusion_hypotheses",
        "group": G.name,
        "prime": p,
        "checks": [fusion.to_dict(), frattini.to_dict()],
    }
    text = "\n".join(
        f"{c.name}: {'holds' if c.holds else 'fails'}" + (f"  witness {c.witness}" if c.witness else "")
        for c in (fusion, frattini)
    )
    _emit(report, text, config, out)
    return 0


def _verify_kwargs(config: RunConfig, mode: str) -> dict:
    return {
        "mode": mode,
        "sample_count": config.sample_count,
        "seed": config.rng_seed,
        "exhaustive_bound": config.exhaustive_pair_bound,
    }


def cmd_weakhom(args, config: RunConfig, out) -> int:
    G = parse_group(args.group, config.enumeration_bound)
    p = _prime(G, args.p)
    S = sylow_subgroup(G, p)
    if args.action == "enumerate":
        kw = _verify_kwargs(config, args.mode)
        A = enumerate_A_group(G, p, S, verify=kw["mode"], sample_count=kw["sample_count"],
                              seed=kw["seed"], exhaustive_bound=kw["exhaustive_bound"])
        report = A.to_dict()
        report["closed_under_addition"] = A.is_closed()
        if args.tables:
            report["tables"] = [w.to_dict() for w in A.weak_homs]
        ok = report["closed_under_addition"] and all(v.passed for v in A.verifications)
        text = (
            f"{G.name}, p={p}: {A.order} weak homomorphisms, group {A.invariants}; "
            f"verified: {all(v.passed for v in A.verifications)}; closed: {report['closed_under_addition']}"
        )
        _emit(report, text, config, out)
        return 0 if ok else 1
    if args.action == "verify":
        if not args.table:
            raise UsageError("weakhom verify needs --table")
        table = _load_table(args.table, G.degree)
        result = verify_weakhom(G, S, table, **_verify_kwargs(config, args.mode))
        report = dict(result.to_dict(), schema=1, kind="weak_homomorphism_check", group=G.name, prime=p)
        text = f"{'passed' if result.passed else 'failed'} ({result.mode}, {result.checked_pairs} pairs)"
        if not result.passed:
            text += f": axiom {result.axiom}, witness {result.witness}"
        _emit(report, text, config, out)
        return 0 if result.passed else 1
    # construct
    if not args.character:
        raise UsageError("weakhom construct needs --character")
    chi = _load_table(args.character, G.degree)
    theta = theta_from_chi(G, S, chi)
    result = verify_weakhom(G, S, theta, **_verify_kwargs(config, args.mode))
    report = {
        "schema": 1,
        "kind": "weak_homomorphism",
        "group": G.name,
        "prime": p,
        "table": theta.to_dict(),
        "verification": result.to_dict(),
    }
    _emit(report, f"constructed a table on {len(theta)} elements; verification passed: {result.passed}",
          config, out)
    return 0 if result.passed else 1


def _load_table(path: str, degree: int) -> CharacterTable:
    try:
        return CharacterTable.from_dict(_read_json(path), degree)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_psl3_report(args, config: RunConfig, out) -> int:
    try:
        report = verify_psl3_sylow3(
            args.q,
            permutation_checks=False if args.matrix_only else None,
            seed=config.rng_seed,
            enumeration_bound=config.enumeration_bound,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [f"PSL(3,{args.q}), field modulus {report.field_modulus}, zeta = {report.zeta}"]
    for c in report.checks:
        lines.append(f"  [{'ok' if c.holds else 'FAIL'}] {c.name}" + (f"  {c.detail}" if c.detail else ""))
    _emit(report.to_dict(), "\n".join(lines), config, out)
    return 0 if report.passed else 1


def cmd_psl2_report(args, config: RunConfig, out) -> int:
    try:
        report = psl2_klein_report(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = "\n".join(f"  [{'ok' if c.holds else 'FAIL'}] {c.name}" for c in report.checks)
    _emit(report.to_dict(), f"PSL(2,{args.q}), p=2\n" + text, config, out)
    return 0 if report.passed else 1


def cmd_verify_suite(args, config: RunConfig, out) -> int:
    entries = run_suite(args.m11, include_optional=not args.skip_optional)
    ok = all(e.passed for e in entries if e.gating)
    report = {
        "schema": 1,
        "kind": "verification_suite",
        "passed": ok,
        "entries": [e.to_dict() for e in entries],
    }
    if config.output_format == "json":
        # timings vary between runs, so they are left out of the JSON report
        for e in report["entries"]:
            e.pop("seconds")
    text = "\n".join(e.line() for e in entries) + f"\n{'ALL GATING CHECKS PASSED' if ok else 'FAILURES'}"
    _emit(report, text, config, out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    def add_common(p: argparse.ArgumentParser, defaults: bool) -> None:
        # the subcommand copies use SUPPRESS so they only override when given
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        p.add_argument("--format", choices=("json", "text"), default=d("json"), dest="output_format")
        p.add_argument("--seed", type=int, default=d(0), dest="rng_seed")
        p.add_argument("--enumeration-bound", type=int, default=d(DEFAULT_ENUMERATION_BOUND))
        p.add_argument("--exhaustive-pair-bound", type=int, default=d(EXHAUSTIVE_BOUND))
        p.add_argument("--samples", type=int, default=d(DEFAULT_SAMPLES), dest="sample_count")

    parser = argparse.ArgumentParser(prog="endotorsion", description=__doc__.split("\n")[0])
    add_common(parser, True)
    common = argparse.ArgumentParser(add_help=False)
    add_common(common, False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    def with_group(name: str, help: str, prime: bool = True):
        sp = add_parser(name, help)
        sp.add_argument("group", help="psl2:q, psl3:q, sl2:q, sl3:q, sym:n, alt:n or file:path")
        if prime:
            sp.add_argument("-p", type=int, required=True, help="the prime")
        return sp

    info = with_group("info", "order, Sylow subgroups and their normalizers", prime=False)
    info.add_argument("-p", type=int, default=None)
    info.set_defaults(func=cmd_info)
    with_group("rho", "the rho tower of every nontrivial subgroup of S").set_defaults(func=cmd_rho)
    kg = with_group("kgroup", "the group K(G) of torsion endotrivial classes")
    kg.add_argument("--cyclic", action="store_true", help="use the order-p subgroup formula (cyclic S)")
    kg.set_defaults(func=cmd_kgroup)
    with_group("fusion", "control of fusion and the Frattini condition").set_defaults(func=cmd_fusion)

    wh = add_parser("weakhom", "weak homomorphisms")
    wh.add_argument("action", choices=("enumerate", "verify", "construct"))
    wh.add_argument("group")
    wh.add_argument("-p", type=int, required=True)
    wh.add_argument("--table", help="JSON table to verify")
    wh.add_argument("--character", help="JSON character of N_G(S) to extend")
    wh.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    wh.add_argument("--tables", action="store_true", help="include every table in the enumerate report")
    wh.set_defaults(func=cmd_weakhom)

    p3 = add_parser("psl3-report", "Sylow 3-subgroup checks for PSL(3,q), q = 4, 7 mod 9")
    p3.add_argument("q", type=int)
    p3.add_argument("--matrix-only", action="store_true")
    p3.set_defaults(func=cmd_psl3_report)
    p2 = add_parser("psl2-report", "Klein four Sylow checks for PSL(2,q), q = 3, 5 mod 8")
    p2.add_argument("q", type=int)
    p2.set_defaults(func=cmd_psl2_report)

    vs = add_parser("verify-suite", "run the full verification suite")
    vs.add_argument("--m11", help="generator file for M11 (optional entry)")
    vs.add_argument("--skip-optional", action="store_true")
    vs.set_defaults(func=cmd_verify_suite)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = RunConfig(
            args.enumeration_bound, args.exhaustive_pair_bound, args.sample_count, args.rng_seed,
            args.output_format,
        )
        return args.func(args, config, out)
    except (UsageError, GroupTooLargeError, ValueError) as exc:
        name = getattr(exc, "name", type(exc).__name__)
        print(f"error [{name}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
