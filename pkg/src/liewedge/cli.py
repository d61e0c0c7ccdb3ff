"""Command line entry point: root-system info and the verification harness."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .chevalley import algebra
from .parabolic import build_parabolic
from .rootsys import RootSystemError, build_root_system, extremities
from .verify import (
    CaseDescriptor,
    ConfigError,
    PreconditionError,
    SuiteConfig,
    exit_code,
    nonempty_subsets,
    run_suite,
    summarize,
    wedge_lemma_instances,
)

EXIT_CONFIG = 2


def parse_indices(text: str) -> tuple:
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise ConfigError(f"expected comma-separated simple-root indices, got {text!r}") from None


def subsets_from(args, rank: int) -> list:
    """X from --keep / --remove, or every nonempty subset."""
    full = set(range(1, rank + 1))
    if args.keep is not None:
        X = parse_indices(args.keep)
    elif args.remove is not None:
        X = tuple(sorted(full - set(parse_indices(args.remove))))
    else:
        return nonempty_subsets(rank)
    if not set(X) <= full:
        raise ConfigError(f"indices must lie in 1..{rank}")
    return [X]


def k_values(text: str, top: int) -> list:
    if text == "all":
        return list(range(1, top + 1))
    k = int(text)
    if not 1 <= k <= top:
        raise ConfigError(f"k must lie in 1..{top}, got {k}")
    return [k]


def maximal_subsets(args, rank: int) -> list:
    if args.beta == "all":
        betas = range(1, rank + 1)
    else:
        betas = [int(args.beta)]
    out = []
    for b in betas:
        if not 1 <= b <= rank:
            raise ConfigError(f"beta must lie in 1..{rank}")
        out.append((b, tuple(i for i in range(1, rank + 1) if i != b)))
    return out


def cases_for(args) -> list:
    cmd = args.check
    if cmd == "appendix":
        out = []
        for T in args.types:
            if T in "ABCD":
                out.append(CaseDescriptor("prs", T, 0, options=(("max_rank", args.max_rank),)))
            elif T in "EFG":
                out.append(CaseDescriptor("rs4-tables", T, 0))
            else:
                raise ConfigError(f"unknown type {T!r}")
        return out
    rs = build_root_system(args.type, args.rank)
    if cmd == "theorem":
        return [
            CaseDescriptor("theorem-tint", args.type, args.rank, X, k)
            for X in subsets_from(args, args.rank)
            for k in k_values(args.k, rs.n_positive)
        ]
    if cmd == "ortho":
        gradings = ["n3", "n5", "n10"] if args.grading == "all" else [args.grading]
        out = []
        for X in subsets_from(args, args.rank):
            for k in k_values(args.k, rs.n_positive):
                for g in gradings:
                    if g == "n10" and len(X) != args.rank - 1:
                        if args.grading == "n10":
                            raise ConfigError("grading n10 needs |X| = rank - 1")
                        continue
                    out.append(CaseDescriptor("coc2" if g == "n3" else "loc2", args.type, args.rank, X, k,
                                              (("grading", g),)))
        return out
    if cmd in ("invariants", "pau2", "c2oc2"):
        L = algebra(args.type, args.rank)
        out = []
        for b, X in maximal_subsets(args, args.rank):
            d = build_parabolic(L, X).d
            for k in k_values(args.k, d):
                if cmd == "c2oc2":
                    out.append(CaseDescriptor("c2oc2", args.type, args.rank, X, k))
                else:
                    out.append(CaseDescriptor("cau1" if cmd == "invariants" else "pau2",
                                              args.type, args.rank, X, k, (("beta", b),)))
            if cmd == "invariants":
                out.append(CaseDescriptor("cau2", args.type, args.rank, X, 0, (("beta", b), ("check", "omega"))))
        return out
    if cmd == "lint":
        return [
            CaseDescriptor("lint", args.type, args.rank, options=(("instance", i.name),))
            for i in wedge_lemma_instances(algebra(args.type, args.rank))
        ]
    raise ConfigError(f"unknown check {cmd!r}")


def emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    config = SuiteConfig(deep=getattr(args, "deep", False), workers=args.workers)
    if args.max_ambient is not None:
        config.max_ambient = config.deep_max_ambient = args.max_ambient
    if args.check == "suite":
        doc = run_suite(config)
    else:
        doc = run_suite(config, cases_for(args), command=f"verify {args.check}")
    emit(doc, args.output)
    counts = summarize(doc)
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    return exit_code(doc)


def cmd_rootsys(args) -> int:
    rs = build_root_system(args.type, args.rank)
    info = {
        "label": rs.label,
        "rank": rs.rank,
        "dim": rs.dim,
        "n_positive": rs.n_positive,
        "highest_root": list(rs.highest_root),
        "cartan": [list(r) for r in rs.cartan],
        "extremities": sorted(extremities(rs)),
    }
    if args.json:
        print(json.dumps(info, indent=2))
    else:
        for key, val in info.items():
            print(f"{key:13s} {val}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liewedge", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rootsys", help="root-system data")
    rsub = r.add_subparsers(dest="action", required=True)
    info = rsub.add_parser("info", help="rank, dimension, Cartan matrix, highest root")
    info.add_argument("--type", required=True)
    info.add_argument("--rank", type=int, required=True)
    info.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="run machine checks and print a JSON report")
    vsub = v.add_subparsers(dest="check", required=True)

    def common(sp):
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--max-ambient", type=int, default=None, help="largest C(dim g, k) to attempt")
        sp.add_argument("--output", "-o", default=None, help="report path (default stdout)")

    def algebra_args(sp, subsets=True):
        sp.add_argument("--type", required=True)
        sp.add_argument("--rank", type=int, required=True)
        sp.add_argument("--k", default="all", help="degree or 'all'")
        if subsets:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--remove", help="simple roots left out of X, e.g. 1,3")
            g.add_argument("--keep", help="simple roots forming X, e.g. 2")

    t = vsub.add_parser("theorem", help="Lambda^k g generated by V_{k,p}")
    algebra_args(t)
    common(t)
    o = vsub.add_parser("ortho", help="orthogonality of graded pieces")
    algebra_args(o)
    o.add_argument("--grading", choices=["n3", "n5", "n10", "all"], default="all")
    common(o)
    for name, text in (("invariants", "invariant subspaces for a maximal parabolic"),
                       ("pau2", "submodules generated under the unipotent radical"),
                       ("c2oc2", "orthogonal complements of radical powers")):
        sp = vsub.add_parser(name, help=text)
        algebra_args(sp, subsets=False)
        sp.add_argument("--beta", default="all", help="removed simple root or 'all'")
        common(sp)
    li = vsub.add_parser("lint", help="wedge lemma on standard instances")
    li.add_argument("--type", required=True)
    li.add_argument("--rank", type=int, required=True)
    common(li)
    a = vsub.add_parser("appendix", help="root-system closed forms and tables")
    a.add_argument("--types", default="ABCDEFG")
    a.add_argument("--max-rank", type=int, default=12)
    common(a)
    s = vsub.add_parser("suite", help="the default verification grid")
    s.add_argument("--deep", action="store_true", help="add B3 and C3")
    common(s)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "rootsys":
            return cmd_rootsys(args)
        return cmd_verify(args)
    except (ConfigError, RootSystemError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
