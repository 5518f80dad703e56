"""Command-line front end.

Subcommands: `entropy` (eigenvalue route), `peters` (sumset growth route),
`rank` (delta-rank search or constructive upper bounds), `verify` (law
suite). Exit codes: 0 success, 1 computation error, 2 spec/usage error,
3 verify found failures.

The environment variable DUALENT_THREADS caps worker parallelism for the
modules that support it (0 or unset picks a default automatically).
"""

from __future__ import annotations

import argparse
import itertools
import sys
from fractions import Fraction
from typing import Optional

from . import laws
from .crystal import crystal_entropy, fg_abelian_entropy
from .groups import AbelianAutomorphism
from .folner import (
    RankCertificate,
    RankSearchExhausted,
    WeightedFunction,
    defect,
    convolution_tower,
    exact_delta,
    interval_folner,
    min_rank_bruteforce,
    parallelepiped_folner,
    Parallelepiped,
)
from .growth import DEFAULT_CAP, FiniteSubset, SumsetCapError, growth_rate_estimate, growth_series
from .reports import emit_report
from .specdoc import SpecDocument, SpecFormatError, parse_spec

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_SPEC = 2
EXIT_VERIFY_FAILED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualent",
        description="Dual entropy of group automorphisms: spectral and "
        "sumset-growth routes, delta-rank searches, and law verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument(
            "--format", choices=("text", "json", "csv"), default="text",
            help="output format (default text)",
        )
        p.add_argument("--out", metavar="PATH", help="write the report to a file")

    p_entropy = sub.add_parser(
        "entropy", help="spectral-route entropy of the document's automorphism"
    )
    p_entropy.add_argument("spec", help="path to a JSON experiment document")
    p_entropy.add_argument("--tol", type=float, help="root tolerance (default 1e-12)")
    common(p_entropy)

    p_peters = sub.add_parser(
        "peters", help="sumset-growth series and rate estimate"
    )
    p_peters.add_argument("spec", help="path to a JSON experiment document")
    p_peters.add_argument("--n", type=int, help="series depth (default 12)")
    p_peters.add_argument(
        "--cap", type=int, help=f"sumset size cap (default {DEFAULT_CAP})"
    )
    common(p_peters)

    p_rank = sub.add_parser(
        "rank", help="minimal support size with translation defect below delta"
    )
    p_rank.add_argument("spec", help="path to a JSON experiment document")
    p_rank.add_argument("--delta", type=float, help="defect tolerance")
    p_rank.add_argument("--radius", type=int, help="search ball radius (default 8)")
    p_rank.add_argument(
        "--method",
        choices=("lp", "interval", "parallelepiped", "tower"),
        default="lp",
        help="lp = exact minimum; the rest construct upper-bound witnesses",
    )
    p_rank.add_argument("--cap", type=int, help="support cap for --method tower")
    common(p_rank)

    p_verify = sub.add_parser("verify", help="run the law verification suite")
    p_verify.add_argument(
        "--suite",
        choices=(
            "all", "power", "conjugacy", "product", "quotient-rank",
            "subgroup-rank", "peters-vs-spectral", "sqrt-overlap",
        ),
        default="all",
    )
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    common(p_verify)
    return parser


def _require(condition: bool, path: str, message: str):
    if not condition:
        raise SpecFormatError(path, message)


def _param(flag, spec_value, fallback):
    if flag is not None:
        return flag
    if spec_value is not None:
        return spec_value
    return fallback


def _run_entropy(doc: SpecDocument, args) -> object:
    _require(doc.automorphism is not None, "auto", "entropy requires an automorphism block")
    tol = _param(args.tol, doc.params.tol, 1e-12)
    if doc.kind == "crystal":
        return crystal_entropy(doc.group, doc.automorphism, tol)
    return fg_abelian_entropy(doc.automorphism, tol)


def _run_peters(doc: SpecDocument, args) -> object:
    _require(doc.kind != "crystal", "group.kind", "peters runs on abelian documents")
    _require(doc.automorphism is not None, "auto", "peters requires an automorphism block")
    group = doc.group
    if doc.base is not None:
        base = FiniteSubset.of(group, doc.base)
    else:
        corners = [
            tuple(c) + (0,) * len(group.torsion)
            for c in itertools.product((0, 1), repeat=group.rank)
        ]
        base = FiniteSubset.of(group, corners)
    n_max = _param(args.n, doc.params.n, 12)
    cap = _param(args.cap, doc.params.cap, DEFAULT_CAP)
    series = growth_series(doc.automorphism, base, n_max, cap=cap)
    if args.format == "csv":
        return series
    return growth_rate_estimate(series)


def _box_points(rank: int, halfwidth: int) -> list[tuple[int, ...]]:
    return [
        tuple(c)
        for c in itertools.product(range(-halfwidth, halfwidth + 1), repeat=rank)
    ]


def _upper_bound_certificate(witness, delta_frac, omega, radius) -> RankCertificate:
    d = defect(witness, omega)
    return RankCertificate(
        rank=len(witness.support),
        witness=witness,
        defect=float(d),
        delta=float(delta_frac),
        omega=tuple(omega),
        search_radius=radius,
        exhaustive_within_radius=False,
        exact=witness.exact,
        defect_exact=d if witness.exact else None,
    )


def _rank_interval(doc: SpecDocument, omega, delta_frac) -> RankCertificate:
    group = doc.group
    _require(
        group.rank == 1 and not group.torsion,
        "group", "--method interval needs the rank-1 torsion-free group",
    )
    for halfwidth in range(0, 200001):
        witness = interval_folner(halfwidth)
        if defect(witness, omega) < delta_frac:
            return _upper_bound_certificate(witness, delta_frac, omega, halfwidth)
    raise RankSearchExhausted("no interval of halfwidth <= 200000 reaches the tolerance")


def _rank_parallelepiped(doc: SpecDocument, omega, delta_frac) -> RankCertificate:
    group = doc.group
    _require(
        group.rank >= 1 and not group.torsion,
        "group", "--method parallelepiped needs a torsion-free lattice group",
    )
    basis = tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(group.rank))
        for i in range(group.rank)
    )
    chi = Parallelepiped(basis, Fraction(1))
    limit = 2000 if group.rank == 1 else 60
    for c in range(1, limit + 1):
        witness = parallelepiped_folner(chi, c)
        if defect(witness, omega) < delta_frac:
            return _upper_bound_certificate(witness, delta_frac, omega, c)
    raise RankSearchExhausted(
        f"no axis box of halfwidth <= {limit} reaches the tolerance"
    )


def _rank_tower(doc: SpecDocument, omega, delta_frac, cap) -> RankCertificate:
    group = doc.group
    auto = doc.automorphism
    if auto is None:
        auto = AbelianAutomorphism.identity(group)
    seed_support = {group.zero()}
    for s in omega:
        seed_support.add(s)
        seed_support.add(-s)
    f = WeightedFunction.uniform(group, sorted(seed_support, key=lambda e: e.key()))
    for depth in range(1, 61):
        witness = convolution_tower(f, auto, depth, cap=cap)
        if defect(witness, omega) < delta_frac:
            return _upper_bound_certificate(witness, delta_frac, omega, depth)
    raise RankSearchExhausted("convolution tower did not reach the tolerance by depth 60")


def _run_rank(doc: SpecDocument, args) -> object:
    _require(doc.kind != "crystal", "group.kind", "rank runs on abelian documents")
    _require(doc.omega is not None, "omega", "rank requires a shift set")
    delta = _param(args.delta, doc.params.delta, None)
    _require(delta is not None, "params.delta", "rank requires --delta or params.delta")
    delta_frac = exact_delta(delta)
    radius = _param(args.radius, doc.params.radius, 8)
    omega = list(doc.omega)
    if args.method == "lp":
        return min_rank_bruteforce(doc.group, omega, delta, radius)
    if args.method == "interval":
        return _rank_interval(doc, omega, delta_frac)
    if args.method == "parallelepiped":
        return _rank_parallelepiped(doc, omega, delta_frac)
    cap = _param(args.cap, doc.params.cap, DEFAULT_CAP)
    return _rank_tower(doc, omega, delta_frac, cap)


def _run_verify(args) -> tuple[object, int]:
    trials = args.trials
    seed = args.seed
    if args.suite == "all":
        reports = laws.run_all_laws(trials, seed)
    else:
        runner = {
            "power": lambda: laws.check_power_law(trials, seed),
            "conjugacy": lambda: laws.check_conjugacy(trials, seed),
            "product": lambda: laws.check_product_bounds(trials, seed),
            "quotient-rank": laws.check_quotient_rank,
            "subgroup-rank": laws.check_subgroup_rank,
            "peters-vs-spectral": laws.check_peters_vs_spectral,
            "sqrt-overlap": lambda: laws.check_sqrt_overlap(trials, seed),
        }[args.suite]
        reports = [runner()]
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED
    return reports, code


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    code = EXIT_OK
    try:
        if args.command == "verify":
            result, code = _run_verify(args)
        else:
            try:
                doc = parse_spec(args.spec)
            except OSError as exc:
                print(f"spec error: {exc}", file=sys.stderr)
                return EXIT_SPEC
            if args.command == "entropy":
                result = _run_entropy(doc, args)
            elif args.command == "peters":
                result = _run_peters(doc, args)
            else:
                result = _run_rank(doc, args)
    except SpecFormatError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except (SumsetCapError, RankSearchExhausted) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except (ValueError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION

    payload = emit_report(result, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
