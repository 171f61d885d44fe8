"""Command-line interface.

JSON lines go to stdout, a human summary to stderr.  Exit codes: 0 all checks
passed, 1 violation or negative witness, 2 unknown (budget) with no violation,
3 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import paperlab
from .cache import ScanCache, cache_key
from .errors import DomainError
from .partition import Partition, enumerate_partitions, majorizes
from .positivity import (
    DEFAULT_BRANCH_BUDGET,
    DEFAULT_DS_DEPTH,
    Status,
    Verdict,
    Witness,
    ds_nonneg_on_simplex,
    nonneg_on_ray,
    sample_search,
)
from .symfun import SymFamily, normalized_diff, two_block, two_block_diff

EXIT_OK, EXIT_VIOLATION, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_CACHE = ".symineq-cache.json"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _family(text: str) -> SymFamily:
    try:
        return SymFamily.parse(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _config(args) -> dict:
    return {"samples": args.samples, "seed": args.seed, "ds_depth": args.ds_depth,
            "branch_budget": args.branch_budget}


def _open_cache(args) -> ScanCache:
    return ScanCache(None if args.no_cache else (args.cache or DEFAULT_CACHE))


def _worst(statuses) -> int:
    statuses = set(statuses)
    if Status.NEGATIVE in statuses or "fail" in statuses:
        return EXIT_VIOLATION
    if Status.UNKNOWN in statuses or "unknown" in statuses:
        return EXIT_UNKNOWN
    return EXIT_OK


# subcommands -----------------------------------------------------------------

def cmd_partitions(args) -> int:
    parts = enumerate_partitions(args.d)
    for lam in parts:
        sys.stdout.write(lam.to_json() + "\n")
    _say(f"|Par({args.d})| = {len(parts)}")
    return EXIT_OK


def cmd_majorize(args) -> int:
    mu, lam = _partition(args.mu), _partition(args.lam)
    if mu.weight != lam.weight:
        raise UsageError(f"weights differ: {mu.weight} vs {lam.weight}")
    fwd, back = majorizes(mu, lam), majorizes(lam, mu)
    _emit({"mu": list(mu), "lambda": list(lam), "mu_majorizes_lambda": fwd, "lambda_majorizes_mu": back,
           "comparable": fwd or back})
    _say(f"{mu} {'>=' if fwd else 'not >='} {lam}; {lam} {'>=' if back else 'not >='} {mu}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    family, lam = _family(args.family), _partition(args.lam)
    if not 0 <= args.u <= args.n:
        raise UsageError(f"u must lie in 0..{args.n}")
    poly = two_block(family, args.n, lam, args.u)
    _emit({"family": family.value, "n": args.n, "lambda": list(lam), "u": args.u, "poly": poly.to_dict()})
    _say(f"{family.value}_{{{args.n},{lam}}}(t_{args.u}, 1_{args.n - args.u}) = {poly!r}")
    return EXIT_OK


def _cached_verdict(cache: ScanCache, key: str, compute) -> dict:
    hit = cache.get(key)
    if hit is not None:
        return hit
    return cache.put(key, compute().to_dict())


def cmd_check_pair(args) -> int:
    family, mu, lam = _family(args.family), _partition(args.mu), _partition(args.lam)
    if mu.weight != lam.weight:
        raise UsageError(f"weights differ: {mu.weight} vs {lam.weight}")
    try:
        N, D = normalized_diff(family, args.n, mu, lam)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    cache = _open_cache(args)
    base = {"family": family.value, "n": args.n, "mu": list(mu), "lambda": list(lam)}
    _emit({"config": _config(args), **base})
    statuses = []
    for u in range(args.n + 1):
        key = cache_key(kind="two-block", u=u, **base)
        v = _cached_verdict(cache, key, lambda u=u: nonneg_on_ray(two_block_diff(family, args.n, mu, lam, u)))
        _emit({"check": "two-block", "u": u, "verdict": v})
        statuses.append(Status(v["status"]))

    def sampled() -> Verdict:
        hit = sample_search(N, args.samples, args.seed)
        if hit is None:
            return Verdict(Status.UNKNOWN, "sampling", budget={"samples": args.samples})
        return Verdict(Status.NEGATIVE, "sampling", Witness(*hit), {"samples": args.samples})

    v = _cached_verdict(cache, cache_key(kind="sample", seed=args.seed, samples=args.samples, **base), sampled)
    _emit({"check": "sample", "verdict": v})
    sample_neg = v["status"] == Status.NEGATIVE.value
    ds_status = None
    if args.ds_depth > 0 and not sample_neg and not N.is_zero():
        v = _cached_verdict(cache, cache_key(kind="ds", ds_depth=args.ds_depth, branch_budget=args.branch_budget, **base),
                            lambda: ds_nonneg_on_simplex(N, args.ds_depth, args.branch_budget))
        _emit({"check": "ds", "verdict": v})
        ds_status = Status(v["status"])
    cache.save()
    if sample_neg or Status.NEGATIVE in statuses or ds_status is Status.NEGATIVE:
        overall = Status.NEGATIVE
    elif ds_status is Status.PROVED or N.is_zero():
        overall = Status.PROVED
    else:
        overall = Status.UNKNOWN
    _emit({"summary": overall.value, "denominator": f"{D.numerator}/{D.denominator}", **base})
    _say(f"{family.value}_{{{args.n},{mu}}} - {family.value}_{{{args.n},{lam}}}: {overall.value}")
    return _worst([overall])


def _repro_report(args) -> paperlab.LemmaReport:
    lemma = args.lemma
    if lemma == "w":
        return paperlab.verify_W()
    if lemma == "j2":
        return paperlab.verify_J2()
    if lemma == "boundary":
        return paperlab.verify_boundary_gap()
    if lemma == "relax":
        return paperlab.verify_relaxation_chain(args.n_max, args.m_max)
    if lemma == "family":
        return paperlab.verify_family(args.d, args.n, args.samples, args.seed,
                                      args.ds_depth if args.family_ds else None, args.branch_budget)
    if lemma == "hs":
        return paperlab.verify_hs_counterexample(args.samples, args.seed, args.ds_depth, args.branch_budget)
    if lemma == "known":
        return paperlab.known_results_scan(args.d_max, args.n_max, args.samples, args.seed)
    if lemma == "conjecture":
        return paperlab.conjecture_rhs_harness(args.d, args.n, args.samples, args.seed,
                                               args.ds_depth, args.branch_budget)
    raise UsageError(f"unknown lemma {lemma!r}")


def cmd_repro(args) -> int:
    try:
        report = _repro_report(args)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    _emit({"config": _config(args), "lemma": args.lemma})
    _emit(report.to_dict(timings=args.timings))
    for c in report.checks:
        _say(f"  [{c.status:>7}] {c.name} ({c.ms:.0f} ms)")
    _say(f"{report.lemma_id}: {report.overall}")
    return _worst([report.overall])


def _pair_task(task):
    n, mu, lam, samples, seed, ds_depth, branch_budget = task
    return paperlab.conjecture_pair(n, Partition(mu), Partition(lam), samples, seed, ds_depth, branch_budget)


def run_scan(d: int, n: int, samples: int, seed: int, ds_depth: int, branch_budget: int,
             cache: ScanCache, threads: int | None = None) -> list[dict]:
    """Conjecture scan over Par(d)^2 at ``n`` variables, with caching and a process pool."""
    parts = enumerate_partitions(d)
    pairs = [(mu, lam) for mu in parts for lam in parts]
    keys = [cache_key(**{"kind": "conjecture-pair", "family": "H", "n": n, "mu": list(mu), "lambda": list(lam),
                         "seed": seed, "samples": samples, "ds_depth": ds_depth, "branch_budget": branch_budget})
            for mu, lam in pairs]
    rows: list = [cache.get(k) for k in keys]
    todo = [i for i, r in enumerate(rows) if r is None]
    tasks = [(n, list(pairs[i][0]), list(pairs[i][1]), samples, seed, ds_depth, branch_budget) for i in todo]
    if tasks:
        workers = threads or os.cpu_count() or 1
        if workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                fresh = list(pool.map(_pair_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
        else:
            fresh = [_pair_task(t) for t in tasks]
        for i, row in zip(todo, fresh):
            rows[i] = cache.put(keys[i], row)
        cache.save()
    return rows


def cmd_scan(args) -> int:
    if args.d < 2 or args.n < 2:
        raise UsageError("scan needs d >= 2 and n >= 2")
    cache = _open_cache(args)
    rows = run_scan(args.d, args.n, args.samples, args.seed, args.ds_depth, args.branch_budget,
                    cache, args.threads)
    _emit({"config": _config(args), "d": args.d, "n": args.n})
    for row in rows:
        _emit(row)
    refuting = [r for r in rows if r["refutes"]]
    open_pairs = [r for r in rows if r["rhs"] and r["lhs"] == "not-falsified"]
    _emit({"summary": {"pairs": len(rows), "rhs_true": sum(r["rhs"] for r in rows),
                       "lhs_proved": sum(r["lhs"] == "true" for r in rows),
                       "unresolved": len(open_pairs), "refutations": len(refuting)}})
    _say(f"scan d={args.d} n={args.n}: {len(rows)} pairs, {len(refuting)} refutations, "
         f"{len(open_pairs)} unresolved (cache hits {cache.hits})")
    if refuting:
        return EXIT_VIOLATION
    return EXIT_UNKNOWN if open_pairs else EXIT_OK


# parser ------------------------------------------------------------------------

def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=_nonneg, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ds-depth", type=_nonneg, default=DEFAULT_DS_DEPTH)
    p.add_argument("--branch-budget", type=_positive, default=DEFAULT_BRANCH_BUDGET)
    p.add_argument("--cache", default=None, help=f"cache file (default {DEFAULT_CACHE})")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--threads", type=_positive, default=None, help="worker processes (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("partitions", help="list Par(d) as JSON arrays")
    p.add_argument("d", type=_positive)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("majorize", help="compare two partitions under majorization")
    p.add_argument("mu")
    p.add_argument("lam", metavar="lambda")
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser("reduce", help="two-block reduction f(t_u, 1_v)")
    p.add_argument("family")
    p.add_argument("n", type=_positive)
    p.add_argument("lam", metavar="lambda")
    p.add_argument("u", type=_nonneg)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-pair", help="certify or falsify F_mu >= F_lambda")
    p.add_argument("family")
    p.add_argument("n", type=_positive)
    p.add_argument("mu")
    p.add_argument("lam", metavar="lambda")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_check_pair)

    p = sub.add_parser("repro", help="run one of the built-in verification reports")
    p.add_argument("lemma", choices=["w", "j2", "boundary", "relax", "family", "hs", "known", "conjecture"])
    p.add_argument("--d", type=_positive, default=8)
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--d-max", type=_positive, default=5)
    p.add_argument("--n-max", type=_positive, default=None)
    p.add_argument("--m-max", type=_positive, default=6)
    p.add_argument("--family-ds", action="store_true", help="also run difference substitution in 'family'")
    p.add_argument("--timings", action="store_true", help="include per-check timings in the JSON")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("scan", help="conjecture scan over all pairs of Par(d) at n variables")
    p.add_argument("d", type=_positive)
    p.add_argument("n", type=_positive)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) == "repro" and args.n_max is None:
            args.n_max = 6 if args.lemma == "relax" else 4
        return args.func(args)
    except UsageError as exc:
        _say(f"usage error: {exc}")
        return EXIT_USAGE
    except DomainError as exc:
        _say(f"usage error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
