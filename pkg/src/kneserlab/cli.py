"""Command-line harness.

Exit status: 0 success or property holds, 1 property fails (a recorded
result, with a counterexample), 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from . import families
from .budget import Budget
from .defect import cd3_certificate, colorability_defect
from .errors import BudgetExhausted, Infeasible, KneserLabError, NoWitness
from .io import coloring_to_json, dumps, read_coloring, read_graph, read_system, to_dimacs, write_graph
from .solve import (
    chromatic_number,
    circular_chromatic,
    enumerate_colorings,
    find_homomorphism,
    format_rational,
    has_wide_coloring,
    is_wide,
    min_colors_local,
)
from .types import Coloring, Graph, SetSystem
from .witness import (
    PROPERTIES,
    find_colorful_bipartite,
    find_zigzag,
    parse_bipartition,
    spencer_su_partition,
    sweep_verify,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# positional parameter names for "name:a,b" family strings
FAMILY_PARAMS = {
    "kneser": ("n", "k"),
    "schrijver": ("n", "k"),
    "u": ("m", "r"),
    "w": ("s", "width"),
    "rational": ("p", "q"),
    "complete": ("n",),
    "cycle": ("n",),
    "empty": ("n",),
}
FAMILIES = tuple(FAMILY_PARAMS) + ("mycielski", "borsuk", "general", "file")


class UsageError(KneserLabError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    family: dict[str, Any] = field(default_factory=dict)
    options: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        return hashlib.sha256(dumps(self.to_dict()).encode()).hexdigest()[:16]


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--family {args.family} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))
    return [getattr(args, n) for n in names]


def _build_simple(name: str, values: dict) -> Graph:
    if name == "kneser":
        return families.build_kneser(values["n"], values["k"])
    if name == "schrijver":
        return families.build_schrijver(values["n"], values["k"])
    if name == "u":
        return families.build_u(values["m"], values["r"])
    if name == "w":
        return families.build_w(values["s"], values["width"])
    if name == "rational":
        return families.build_rational_complete(values["p"], values["q"])
    if name == "complete":
        return families.build_complete(values["n"])
    if name == "cycle":
        return families.build_cycle(values["n"])
    return families.build_empty(values["n"])


def parse_family_string(text: str) -> Graph:
    """Build a graph from ``"name:a,b"``, e.g. ``"rational:7,3"`` or ``"cycle:5"``."""
    name, _, rest = text.partition(":")
    if name not in FAMILY_PARAMS:
        raise UsageError(f"unknown family {name!r} in {text!r}")
    try:
        values = [int(x) for x in rest.split(",") if x]
    except ValueError:
        raise UsageError(f"family parameters in {text!r} must be integers") from None
    if len(values) != len(FAMILY_PARAMS[name]):
        raise UsageError(f"family {name} takes parameters {','.join(FAMILY_PARAMS[name])}")
    return _build_simple(name, dict(zip(FAMILY_PARAMS[name], values)))


def family_config(args) -> dict:
    if args.family is None:
        return {}
    keys = {
        "mycielski": ("r", "base"),
        "borsuk": ("d", "alpha", "points", "seed"),
        "general": ("system",),
        "file": ("graph",),
    }.get(args.family, FAMILY_PARAMS.get(args.family, ()))
    return {"name": args.family, **{k: getattr(args, k) for k in keys}}


def build_graph(args) -> Graph:
    name = args.family
    if name is None:
        raise UsageError("--family is required")
    if name not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    if name in FAMILY_PARAMS:
        values = dict(zip(FAMILY_PARAMS[name], _require(args, *FAMILY_PARAMS[name])))
        return _build_simple(name, values)
    if name == "mycielski":
        r, base = _require(args, "r", "base")
        return families.build_mycielski(parse_family_string(base), r)
    if name == "borsuk":
        d, alpha, points = _require(args, "d", "alpha", "points")
        if d == 2:
            pts = families.circle_points(points)
        else:
            pts = families.sphere_points(d, points, args.seed)
        return families.build_borsuk_sample(d, alpha, pts)
    if name == "general":
        (path,) = _require(args, "system")
        return families.build_general_kneser(read_system(path))
    (path,) = _require(args, "graph")
    return read_graph(path)


def system_for(args) -> SetSystem:
    """The set system behind the requested graph (``--system`` or a Kneser/Schrijver family)."""
    if args.system is not None:
        return read_system(args.system)
    if args.family == "kneser":
        return families.k_subsets(*_require(args, "n", "k"))
    if args.family == "schrijver":
        return families.schrijver_system(*_require(args, "n", "k"))
    raise UsageError("this command needs --system or a kneser/schrijver family")


def coloring_for(args, graph: Graph, budget: Budget) -> Coloring:
    choice = args.coloring or "first"
    if choice == "canonical":
        if args.family != "rational":
            raise UsageError("--coloring canonical is only defined for the rational family")
        return families.rational_canonical_coloring(*_require(args, "p", "q"))
    if choice == "first":
        t = args.t if args.t is not None else chromatic_number(graph, budget)
        first = next(iter(enumerate_colorings(graph, t, budget=budget)), None)
        if first is None:
            raise Infeasible(f"no proper {t}-coloring exists")
        return first
    return read_coloring(choice)


def bipartition_for(args):
    if not args.bipartition:
        raise UsageError("--bipartition A/B is required")
    return parse_bipartition(args.bipartition[0])


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fam = common.add_argument_group("graph family")
    fam.add_argument("--family", help="one of: " + ", ".join(FAMILIES))
    for name in ("n", "k", "p", "q", "m", "r", "s", "width", "d", "points"):
        fam.add_argument(f"--{name}", type=int)
    fam.add_argument("--alpha", type=float)
    fam.add_argument("--base", help="base graph for mycielski, as name:params (e.g. cycle:5)")
    fam.add_argument("--graph", help="DIMACS or JSON graph file (family 'file')")
    fam.add_argument("--system", help="set system JSON file")
    run = common.add_argument_group("run")
    run.add_argument("--t", type=int, help="palette size")
    run.add_argument("--bipartition", action="append", help="color bipartition A/B, e.g. 1,3/2,4")
    run.add_argument("--coloring", help="coloring JSON path, 'first' (default) or 'canonical'")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--budget-ms", type=int)
    run.add_argument("--budget-nodes", type=int)
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--out")
    run.add_argument("--format", choices=("dimacs", "json"), default="dimacs")
    run.add_argument("--results-dir", help="also store report and config under DIR/<config hash>/")

    parser = argparse.ArgumentParser(prog="kneserlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gen", parents=[common], help="build a graph and export it")
    sub.add_parser("chi", parents=[common], help="exact chromatic number")
    sub.add_parser("chic", parents=[common], help="exact circular chromatic number")
    sub.add_parser("cd", parents=[common], help="colorability defect of --system with palette --m")
    sub.add_parser("cd3-cert", parents=[common], help="at-most-three-point defect certificate")
    sub.add_parser("colorful", parents=[common], help="colorful complete bipartite witness")
    sub.add_parser("zigzag", parents=[common], help="zig-zag witness with --r colors")
    sub.add_parser("spencer-su", parents=[common], help="ground-set partition for a color bipartition")
    sw = sub.add_parser("sweep", parents=[common], help="check a property on all canonical colorings")
    sw.add_argument("--property", choices=PROPERTIES, default="colorful")
    h = sub.add_parser("hom", parents=[common], help="homomorphism from the family graph to --target")
    h.add_argument("--target", required=True, help="target as name:params or a graph file")
    sub.add_parser("local", parents=[common], help="least closed-neighbourhood colors with palette --t")
    wd = sub.add_parser("wide", parents=[common], help="s-wide check of --coloring or search over --t colorings")
    wd.add_argument("--wide", type=int, required=True, help="walk parameter s (walk length 2s-1)")
    return parser


def _emit(args, config: RunConfig, payload: dict, stdout_text: str | None = None) -> None:
    payload = {**payload, "config": config.to_dict()}
    text = dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    if args.results_dir:
        d = Path(args.results_dir) / config.digest()
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.json").write_text(text)
        (d / "config.json").write_text(dumps(config.to_dict()))
    print(stdout_text if stdout_text is not None else text, end="" if stdout_text is None else "\n")


def run(args) -> int:
    budget = Budget.from_env(max_nodes=args.budget_nodes, max_ms=args.budget_ms)
    options = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("command", "family", "results_dir") and v is not None and k not in family_config(args)
    }
    config = RunConfig(args.command, family_config(args), options)
    cmd = args.command

    if cmd == "gen":
        graph = build_graph(args)
        if args.out:
            write_graph(graph, args.out, args.format)
            print(f"wrote {graph.vertex_count} vertices, {graph.edge_count} edges to {args.out}")
        else:
            print(to_dimacs(graph), end="")
        return EXIT_OK

    if cmd == "cd":
        (m,) = _require(args, "m")
        result = colorability_defect(system_for(args), m, budget)
        payload = {"property": "cd", "m": m, "size": result.size, "deleted": list(result.deleted),
                   "coloring": {str(k): v for k, v in result.coloring.items()}}
        _emit(args, config, payload, str(result.size))
        return EXIT_OK

    if cmd == "cd3-cert":
        cert = cd3_certificate(system_for(args))
        _emit(args, config, {"property": "cd3-cert", **cert.to_dict()})
        return EXIT_OK if cert.valid else EXIT_FAIL

    graph = build_graph(args)

    if cmd == "chi":
        chi = chromatic_number(graph, budget)
        _emit(args, config, {"property": "chi", "chi": chi}, str(chi))
        return EXIT_OK

    if cmd == "chic":
        value = format_rational(circular_chromatic(graph, budget))
        _emit(args, config, {"property": "chic", "chi_c": value}, value)
        return EXIT_OK

    if cmd == "hom":
        target = read_graph(args.target) if Path(args.target).exists() else parse_family_string(args.target)
        images = find_homomorphism(graph, target, budget)
        payload = {"property": "hom", "target": target.provenance, "map": None if images is None else list(images)}
        _emit(args, config, payload)
        return EXIT_OK if images is not None else EXIT_FAIL

    if cmd == "local":
        (t,) = _require(args, "t")
        value = min_colors_local(graph, t, budget)
        _emit(args, config, {"property": "local", "t": t, "value": value}, str(value))
        return EXIT_OK

    if cmd == "wide":
        if args.coloring:
            coloring = coloring_for(args, graph, budget)
            ok = is_wide(graph, coloring, args.wide)
            payload = {"property": "wide", "s": args.wide, "coloring": coloring_to_json(coloring), "wide": ok}
        else:
            (t,) = _require(args, "t")
            ok = has_wide_coloring(graph, args.wide, t, budget)
            payload = {"property": "wide", "s": args.wide, "t": t, "wide": ok}
        _emit(args, config, payload)
        return EXIT_OK if ok else EXIT_FAIL

    if cmd == "sweep":
        t = args.t if args.t is not None else chromatic_number(graph, budget)
        kwargs: dict[str, Any] = {"budget": budget, "jobs": args.jobs}
        if args.bipartition:
            kwargs["bipartitions"] = [parse_bipartition(b) for b in args.bipartition]
        if args.property == "zigzag":
            (kwargs["r"],) = _require(args, "r")
        if args.property == "spencer-su":
            kwargs["system"] = system_for(args)
        report = sweep_verify(graph, t, args.property, **kwargs)
        _emit(args, config, report.to_dict())
        return {"pass": EXIT_OK, "fail": EXIT_FAIL, "budget": EXIT_BUDGET}[report.outcome]

    coloring = coloring_for(args, graph, budget)
    if cmd == "colorful":
        a, b = bipartition_for(args)
        w = find_colorful_bipartite(graph, coloring, a, b, budget)
        payload = {"property": "colorful", "bipartition": [list(a), list(b)],
                   "coloring": coloring_to_json(coloring), "witness": None if w is None else w.to_dict()}
        _emit(args, config, payload)
        return EXIT_OK if w is not None else EXIT_FAIL

    if cmd == "zigzag":
        (r,) = _require(args, "r")
        w = find_zigzag(graph, coloring, r, budget)
        payload = {"property": "zigzag", "r": r, "coloring": coloring_to_json(coloring),
                   "witness": None if w is None else w.to_dict()}
        _emit(args, config, payload)
        return EXIT_OK if w is not None else EXIT_FAIL

    if cmd == "spencer-su":
        system = system_for(args)
        a, b = bipartition_for(args)
        part = spencer_su_partition(system, coloring, a, b, graph=graph, budget=budget)
        _emit(args, config, {"property": "spencer-su", "coloring": coloring_to_json(coloring), **part.to_dict()})
        return EXIT_OK

    raise UsageError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except BudgetExhausted as exc:
        bounds = "" if exc.lower is None else f" (bounds {exc.lower}..{exc.upper})"
        print(f"budget exhausted: {exc}{bounds}", file=sys.stderr)
        return EXIT_BUDGET
    except NoWitness as exc:
        print(f"no witness: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except KneserLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
