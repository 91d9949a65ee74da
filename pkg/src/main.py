import argparse
import json
import os
import sys
from typing import List, Optional

from src.arc_diagram import ArcDiagram, DiagramFormatError
from src.campaign import display_labels, e8_campaign, strict_entries, suite_quivers, verify_affine_a, verify_theorem
from src.exchange_graph import positive_c_vectors, sign_coherence_fuzz
from src.fixtures import audit_fixture, load_fixtures, load_residual_list
from src.logger import RunLog
from src.permutations import format_permutation, in_pq, parse_permutation, sample_pq
from src.quiver import Quiver, QuiverFormatError, dynkin_quivers
from src.realization import DescentEngine
from src.render import render
from src.report import RealizationReport, display_root
from src.root_system import NotFiniteTypeError, Root, RootSystem, height, parse_root, root_sort_key
from src.run_config import RunConfig

# Exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_UNREALIZED = 2

# ADE types swept by the fuzz command
FUZZ_KINDS = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8"]

_REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_config(config_path: str) -> dict:
    """
    Loads a JSON configuration file from the given path.
    """
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found: {config_path}")
    try:
        with open(config_path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise json.JSONDecodeError(f"Invalid JSON in {config_path}: {e.msg}", e.doc, e.pos)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Schur root realizer - quiver mutation, root systems and non-decreasing curves',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=
            """
            Example usage:
            python main.py roots quivers/e7.txt
            python main.py cvectors quivers/a3.txt --seq 1,2,3
            python main.py find quivers/e7.txt --root "1 2 3 3 2 1 / 1" --format svg
            python main.py verify quivers/d5.txt --any-pi --jobs 4
            python main.py verify --family affine-a --k 1 --l 1 --g-max 3
            python main.py fixtures audit --search
            """
    )
    parser.add_argument(
        '-c', '--config',
        type=str,
        default=os.path.join(_REPO_ROOT, 'config/default/config.json'),
        help='Path to configuration file (default: config/default/config.json)'
    )
    sub = parser.add_subparsers(dest='command', required=True)

    roots = sub.add_parser('roots', help='List the positive roots of a finite-type quiver')
    roots.add_argument('quiver', help='Quiver file')

    cvectors = sub.add_parser('cvectors', help='c-vectors after a mutation sequence, or all of them')
    cvectors.add_argument('quiver', help='Quiver file')
    cvectors.add_argument('--seq', type=str, default='', help='Comma-separated mutation word in composition order: 1,2,3 means mu_1 mu_2 mu_3, so 3 is applied first')
    cvectors.add_argument('--enumerate', action='store_true', help='Enumerate positive c-vectors over the exchange graph')
    cvectors.add_argument('--depth', type=int, default=None, help='Mutation depth bound for --enumerate')

    find = sub.add_parser('find', help='Find a non-decreasing curve for one root')
    find.add_argument('quiver', help='Quiver file')
    find.add_argument('--root', type=str, required=True, help='Root coefficients, or "row / bottom" for D and E types')
    find.add_argument('--pi', type=str, default=None, help='Fix the permutation (one-line image list)')
    find.add_argument('--mode', choices=['nd', 'strict'], default=None, help='Non-decreasing or strictly increasing (type A)')
    find.add_argument('--budget', type=int, default=None, help='Crossing budget of the search fallback')
    find.add_argument('--format', choices=['ascii', 'svg'], default='ascii', help='Rendering of the curve found')

    verify = sub.add_parser('verify', help='Realize every root of a quiver, a type or an affine A family')
    target = verify.add_mutually_exclusive_group(required=True)
    target.add_argument('quiver', nargs='?', default=None, help='Quiver file')
    target.add_argument('--suite', type=str, default=None, help='Dynkin type; runs every orientation up to automorphism')
    target.add_argument('--family', choices=['affine-a'], default=None, help='Root family instead of a quiver')
    verify.add_argument('--k', type=int, default=1, help='Interior vertices on the first affine path')
    verify.add_argument('--l', type=int, default=1, help='Interior vertices on the second affine path')
    verify.add_argument('--g-max', type=int, default=3, help='Highest affine level')
    verify.add_argument('--mode', choices=['nd', 'strict'], default=None)
    pi_group = verify.add_mutually_exclusive_group()
    pi_group.add_argument('--any-pi', dest='any_pi', action='store_const', const=True, default=None,
                          help='Also realize every root under each permutation separately')
    pi_group.add_argument('--union-pi', dest='any_pi', action='store_const', const=False,
                          help='Only the union over permutations')
    verify.add_argument('--pi', type=str, default=None, help='Permutation for the E8 residual search')
    verify.add_argument('--budget', type=int, default=None)
    verify.add_argument('--jobs', type=int, default=None)
    verify.add_argument('--seed', type=int, default=None)
    verify.add_argument('--out', type=str, default=None, help='Report directory')

    rend = sub.add_parser('render', help='Render a diagram file')
    rend.add_argument('diagram', help='Diagram file')
    rend.add_argument('--n', type=int, default=None, help='Number of marked points')
    rend.add_argument('--quiver', type=str, default=None, help='Quiver file giving the number of marked points')
    rend.add_argument('--format', choices=['ascii', 'svg'], default='ascii')

    fixtures = sub.add_parser('fixtures', help='Table fixture tools')
    fixtures_sub = fixtures.add_subparsers(dest='fixtures_command', required=True)
    audit = fixtures_sub.add_parser('audit', help='Re-verify every table fixture')
    audit.add_argument('--search', action='store_true', help='Also search for a witness at each row\'s crossing count')
    audit.add_argument('--dir', type=str, default=None, help='Fixture directory (default from config)')

    fuzz = sub.add_parser('fuzz', help='Random mutation sign coherence check over ADE quivers')
    fuzz.add_argument('--kinds', type=str, default=','.join(FUZZ_KINDS), help='Comma-separated Dynkin types')
    fuzz.add_argument('--seed', type=int, default=None)
    return parser


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _cmd_roots(args, config: RunConfig) -> int:
    q = Quiver.load(args.quiver)
    if not q.is_finite_type():
        raise NotFiniteTypeError(f"Positive roots are only listed for finite type, got type: {q.dynkin_type()}")
    rs = RootSystem.from_quiver(q)
    for idx, root in enumerate(rs.positive_roots(), start=1):
        print(f"{idx:>4}  height {height(root):>2}  {' '.join(str(c) for c in root)}  [{_picture(q, root)}]")
    return EXIT_OK


def _cmd_cvectors(args, config: RunConfig) -> int:
    q = Quiver.load(args.quiver)
    if args.enumerate:
        vectors = sorted(positive_c_vectors(q, args.depth), key=root_sort_key)
        for v in vectors:
            print(" ".join(str(c) for c in v))
        if args.depth is None:
            roots = set(RootSystem.from_quiver(q).positive_roots())
            print(f"positive c-vectors: {len(vectors)}, equal to the positive roots: {set(vectors) == roots}")
        return EXIT_OK
    sequence = [int(t) for t in args.seq.replace(",", " ").split()]
    state = q.framed().mutate_sequence(reversed(sequence))
    for k, v in zip(q.mutable_vertices, state.c_vectors()):
        print(f"c_{k}: {' '.join(str(c) for c in v)}")
    return EXIT_OK


def _cmd_find(args, config: RunConfig) -> int:
    q = Quiver.load(args.quiver)
    rs = RootSystem.from_quiver(q)
    alpha = _parse_quiver_root(q, args.root)
    if not rs.is_positive_root(alpha):
        raise ValueError(f"Not a positive root of {q.dynkin_type()}: {args.root!r}")

    if config.mode == "strict":
        if not q.dynkin_type().startswith("A"):
            raise ValueError(f"Strict mode needs a type A quiver, got type: {q.dynkin_type()}")
        _, entries = strict_entries(q, rs)
        entry = next(e for e in entries if e.root == alpha)
    else:
        fixtures = _load_fixtures(config) if q.is_finite_type() else []
        engine = DescentEngine(
            q, rs,
            fixed_permutation=args.pi is not None,
            commutation_cap=config.commutation_cap,
            fixtures=fixtures,
            search_budget=config.budget,
            search_slack=config.budget_slack,
            max_nodes=config.max_nodes,
        )
        if args.pi is not None:
            pi = parse_permutation(args.pi)
            if not in_pq(q, pi):
                raise ValueError(f"Permutation {args.pi!r} is not in P_Q")
            entry = engine.realize(alpha, pi)
        else:
            perms, _ = sample_pq(q, config.pq_cap, config.pq_sample, config.seed)
            entry = engine.descent_construct(alpha, perms)

    if not entry.realized:
        print(f"root {' '.join(map(str, alpha))}: not realized")
        for line in entry.trace:
            print(f"  {line}")
        return EXIT_UNREALIZED
    print(f"root: {' '.join(map(str, alpha))} [{_picture(q, alpha)}]")
    print(f"pi: {format_permutation(entry.permutation)}")
    print(f"method: {entry.method}")
    print(f"word: {entry.word}")
    print(entry.diagram.to_text(), end="")
    print(render(entry.diagram, args.format), end="")
    return EXIT_OK


def _cmd_verify(args, config: RunConfig) -> int:
    out_dir = config.resolved_out_dir
    run_log = RunLog(config.resolved_run_log_path) if config.run_log_path else None
    reports: List[RealizationReport] = []
    stretch = False

    if args.family == "affine-a":
        reports.append(verify_affine_a(args.k, args.l, args.g_max, config, run_log))
        stems = [f"affine_a_k{args.k}_l{args.l}_g{args.g_max}"]
    else:
        if args.suite is not None:
            named = suite_quivers(args.suite)
        else:
            named = [(os.path.splitext(os.path.basename(args.quiver))[0], Quiver.load(args.quiver))]
        e8_runs = [name for name, q in named if q.dynkin_type() == "E8" and config.mode == "nd"]
        if args.pi and not e8_runs:
            raise ValueError("--pi only applies to E8 campaigns, no quiver of this run is of type E8")
        stems = []
        fixtures = _load_fixtures(config)
        listed = load_residual_list(config.resolved_fixtures_dir) if e8_runs else None
        for name, q in named:
            if name in e8_runs:
                stretch = True
                pi = parse_permutation(args.pi) if args.pi else None
                reports.append(e8_campaign(q, config, pi, name, run_log, listed))
            else:
                reports.append(verify_theorem(q, config, name, fixtures, run_log))
            stems.append(f"{name}_{config.mode}")

    passed = True
    for report, stem in zip(reports, stems):
        paths = report.write(out_dir, stem)
        print(f"{report.name}: {report.realized}/{report.total} realized, {len(report.failures)} check failures")
        for path in paths:
            print(f"  wrote {path}")
        passed = passed and report.passed
    if stretch or passed:
        return EXIT_OK
    return EXIT_UNREALIZED


def _cmd_render(args, config: RunConfig) -> int:
    n = args.n
    if args.quiver is not None:
        n = Quiver.load(args.quiver).n
    d = ArcDiagram.load(args.diagram, n)
    print(render(d, args.format), end="")
    return EXIT_OK


def _cmd_fixtures(args, config: RunConfig) -> int:
    directory = args.dir if args.dir is not None else config.resolved_fixtures_dir
    fixtures = load_fixtures(directory)
    if not fixtures:
        raise FileNotFoundError(f"No fixtures found under {directory}")
    failed = 0
    for fx in fixtures:
        audit = audit_fixture(fx, search=args.search, max_nodes=config.max_nodes)
        print(audit.summary_line())
        failed += 0 if audit.ok else 1
    print(f"{len(fixtures) - failed}/{len(fixtures)} fixtures pass")
    return EXIT_OK if failed == 0 else EXIT_UNREALIZED


def _cmd_fuzz(args, config: RunConfig) -> int:
    quivers = [q for kind in args.kinds.split(",") if kind.strip() for q in dynkin_quivers(kind.strip())]
    report = sign_coherence_fuzz(quivers, config.fuzz_sequences, config.fuzz_depth, config.seed)
    print(report)
    for line in report.sign_violations + report.non_roots:
        print(f"  {line}")
    return EXIT_OK if report.ok else EXIT_UNREALIZED


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def _picture(q: Quiver, root: Root) -> str:
    return display_root(root, q.dynkin_type(), display_labels(q))


def _parse_quiver_root(q: Quiver, text: str) -> Root:
    """
    Root in the quiver's labels; the "row / bottom" picture is read in standard labels.
    """
    if "/" not in text:
        return parse_root(text, q.n)
    kind = q.dynkin_type()
    standard = parse_root(text, q.n, kind)
    alpha = [0] * q.n
    for old, new in q.paper_labeling().items():
        alpha[old - 1] = standard[new - 1]
    return tuple(alpha)


def _load_fixtures(config: RunConfig):
    directory = config.resolved_fixtures_dir
    return load_fixtures(directory) if os.path.isdir(directory) else []


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the Schur root realizer CLI. Returns the exit code.
    """
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == 'verify' and args.family is not None and args.pi is not None:
        parser.error("--pi cannot be combined with --family")
    try:
        config = RunConfig.from_config(load_config(args.config))
        config = config.with_overrides(
            budget=getattr(args, 'budget', None),
            jobs=getattr(args, 'jobs', None),
            seed=getattr(args, 'seed', None),
            out_dir=getattr(args, 'out', None),
            mode=getattr(args, 'mode', None),
            any_pi=getattr(args, 'any_pi', None),
        )
        match args.command:
            case 'roots':
                return _cmd_roots(args, config)
            case 'cvectors':
                return _cmd_cvectors(args, config)
            case 'find':
                return _cmd_find(args, config)
            case 'verify':
                return _cmd_verify(args, config)
            case 'render':
                return _cmd_render(args, config)
            case 'fixtures':
                return _cmd_fixtures(args, config)
            case 'fuzz':
                return _cmd_fuzz(args, config)
    except (QuiverFormatError, DiagramFormatError, NotFiniteTypeError, FileNotFoundError,
            json.JSONDecodeError, KeyError, ValueError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
