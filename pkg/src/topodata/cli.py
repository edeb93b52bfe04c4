"""Command line interface.

Exit codes: 0 all checks passed, 1 a check failed, 2 malformed input or
an operation error.  Every subcommand is a thin wrapper over one library
call; no logic lives only here.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .constraints import validate
from .errors import TopologyError
from .maps import find_homeomorphism
from .oracle import (
    ENUMERATION_GUARD,
    SizeGuard,
    enumerate_topology,
    oracle_axiom_check,
    oracle_is_continuous,
)
from .script import parse_script, run_script


def cmd_validate(args) -> int:
    dataset = io.load_dataset(args.manifest)
    report = validate(dataset)
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def cmd_run(args) -> int:
    path = Path(args.script)
    script = parse_script(path.read_text(encoding="utf-8"), source=str(path))
    result = run_script(script, base_dir=path.parent)
    for line in result.output:
        print(line)
    return 0 if result.ok else 1


def _split_ids(raw: str) -> list[str]:
    return [part for part in raw.split(",") if part]


def cmd_dim(args) -> int:
    space = io.load_space(args.space)
    if args.element is None:
        print(space.space_dimension())
    else:
        print(space.dimension(args.element))
    return 0


def cmd_closure(args) -> int:
    space = io.load_space(args.space)
    print(",".join(sorted(space.closure(_split_ids(args.ids)))))
    return 0


def cmd_star(args) -> int:
    space = io.load_space(args.space)
    print(",".join(sorted(space.star(_split_ids(args.ids)))))
    return 0


def cmd_homeo(args) -> int:
    x = io.load_space(args.left)
    y = io.load_space(args.right)
    found = find_homeomorphism(x, y, max_elements=args.max_elements)
    if found is None:
        print("no homeomorphism")
        return 1
    for a, b in found.pairs():
        print(f"{a} -> {b}")
    return 0


def cmd_oracle_topology(args) -> int:
    space = io.load_space(args.space)
    family = enumerate_topology(space, SizeGuard(args.max_elements))
    for open_set in family:
        print("{" + ",".join(sorted(open_set)) + "}")
    return 0


def cmd_oracle_axioms(args) -> int:
    space = io.load_space(args.space)
    report = oracle_axiom_check(space, SizeGuard(args.max_elements))
    print(f"{space.name}: {report.open_set_count} open sets")
    for violation in report.violations:
        print(f"violation: {violation}")
    return 0 if report.ok else 1


def cmd_oracle_continuous(args) -> int:
    domain = io.load_space(args.domain)
    codomain = io.load_space(args.codomain)
    spaces = {domain.name: domain, codomain.name: codomain}
    space_map = io.load_map(args.map, spaces)
    ok = oracle_is_continuous(space_map, SizeGuard(args.max_elements))
    print("continuous" if ok else "not continuous")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topo",
        description="Finite topological spaces: query algebra, continuity checks, oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate the constraints of a dataset manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="run a query script")
    p.add_argument("script")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("dim", help="dimension of a space or one of its elements")
    p.add_argument("space")
    p.add_argument("element", nargs="?")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("closure", help="closure of a comma-separated element set")
    p.add_argument("space")
    p.add_argument("ids")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("star", help="star of a comma-separated element set")
    p.add_argument("space")
    p.add_argument("ids")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("homeo", help="search for a homeomorphism between two spaces")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--max-elements", type=int, default=10)
    p.set_defaults(func=cmd_homeo)

    oracle = sub.add_parser("oracle", help="brute-force reference computations")
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True)

    p = oracle_sub.add_parser("topology", help="enumerate all open sets")
    p.add_argument("space")
    p.add_argument("--max-elements", type=int, default=ENUMERATION_GUARD.max_elements)
    p.set_defaults(func=cmd_oracle_topology)

    p = oracle_sub.add_parser("axioms", help="check the topology axioms exhaustively")
    p.add_argument("space")
    p.add_argument("--max-elements", type=int, default=ENUMERATION_GUARD.max_elements)
    p.set_defaults(func=cmd_oracle_axioms)

    p = oracle_sub.add_parser("continuous", help="open-preimage continuity check")
    p.add_argument("map")
    p.add_argument("domain")
    p.add_argument("codomain")
    p.add_argument("--max-elements", type=int, default=ENUMERATION_GUARD.max_elements)
    p.set_defaults(func=cmd_oracle_continuous)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TopologyError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
