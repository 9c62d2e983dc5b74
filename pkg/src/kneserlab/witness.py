"""Searches for colorful complete bipartite subgraphs and their sweeps.

Witness searches trust nothing but the graph and coloring they are handed;
every witness type has a ``check`` method that revalidates it from scratch.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from .budget import Budget, ensure
from .errors import BudgetExhausted, InvalidParameter, NoWitness, OverlappingColorSets, VerificationFailed
from .families import build_general_kneser
from .solve import chromatic_number, enumerate_colorings, require_proper
from .types import Coloring, Graph, SetSystem, as_elements, bits


@dataclass(frozen=True)
class BipartiteWitness:
    side_l: tuple[int, ...]
    side_m: tuple[int, ...]
    colors_l: tuple[int, ...]
    colors_m: tuple[int, ...]

    def check(self, graph: Graph, coloring: Coloring) -> bool:
        c = coloring.colors
        if len(self.side_l) != len(self.colors_l) or len(self.side_m) != len(self.colors_m):
            return False
        if tuple(c[v] for v in self.side_l) != self.colors_l:
            return False
        if tuple(c[v] for v in self.side_m) != self.colors_m:
            return False
        if len(set(self.colors_l) | set(self.colors_m)) != len(self.colors_l) + len(self.colors_m):
            return False
        return all(graph.has_edge(u, v) for u in self.side_l for v in self.side_m)

    def to_dict(self) -> dict:
        return {k: list(v) for k, v in asdict(self).items()}


@dataclass(frozen=True)
class ZigzagWitness:
    """Colors ``i_1 < ... < i_r`` with one vertex each; odd positions form side L."""

    colors: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def side_l(self) -> tuple[int, ...]:
        return self.vertices[0::2]

    @property
    def side_m(self) -> tuple[int, ...]:
        return self.vertices[1::2]

    def check(self, graph: Graph, coloring: Coloring) -> bool:
        if len(self.colors) != len(self.vertices):
            return False
        if any(a >= b for a, b in zip(self.colors, self.colors[1:])):
            return False
        if any(coloring.colors[v] != c for v, c in zip(self.vertices, self.colors)):
            return False
        return all(graph.has_edge(u, v) for u in self.side_l for v in self.side_m)

    def to_dict(self) -> dict:
        return {
            "colors": list(self.colors),
            "vertices": list(self.vertices),
            "side_l": list(self.side_l),
            "side_m": list(self.side_m),
        }


@dataclass(frozen=True)
class GroundPartition:
    e1: tuple[int, ...]
    e2: tuple[int, ...]
    colors1: tuple[int, ...]
    colors2: tuple[int, ...]

    def to_dict(self) -> dict:
        return {k: list(v) for k, v in asdict(self).items()}


def _validate_color_sets(coloring: Coloring, a: Iterable[int], b: Iterable[int]) -> tuple[list[int], list[int]]:
    a, b = sorted(set(a)), sorted(set(b))
    if set(a) & set(b):
        raise OverlappingColorSets(f"color sets share {sorted(set(a) & set(b))}")
    for x in a + b:
        if not 1 <= x <= coloring.palette:
            raise InvalidParameter(f"color {x} outside palette [1, {coloring.palette}]")
    return a, b


def find_colorful_bipartite(
    graph: Graph,
    coloring: Coloring,
    a: Iterable[int],
    b: Iterable[int],
    budget: Budget | None = None,
) -> BipartiteWitness | None:
    """First complete bipartite subgraph whose sides carry exactly the colors ``a`` and ``b``.

    Side-L vertices are chosen color by color (increasing) while the common
    neighbourhood is maintained as a bit vector; once side L is complete, any
    vertex of each ``b``-color inside that neighbourhood finishes side M.
    """
    require_proper(graph, coloring)
    a, b = _validate_color_sets(coloring, a, b)
    budget = ensure(budget)
    classes = coloring.classes()
    adj = graph.adjacency
    chosen: list[int] = []

    def rec(i: int, common: int) -> BipartiteWitness | None:
        budget.tick()
        if any(not classes[x - 1] & common for x in b):
            return None
        if i == len(a):
            side_m = tuple((classes[x - 1] & common & -(classes[x - 1] & common)).bit_length() - 1 for x in b)
            return BipartiteWitness(tuple(chosen), side_m, tuple(a), tuple(b))
        for v in bits(classes[a[i] - 1]):
            chosen.append(v)
            found = rec(i + 1, common & adj[v])
            if found is not None:
                return found
            chosen.pop()
        return None

    return rec(0, (1 << graph.vertex_count) - 1)


def find_zigzag(graph: Graph, coloring: Coloring, r: int, budget: Budget | None = None) -> ZigzagWitness | None:
    """First colorful ``K_(ceil(r/2), floor(r/2))`` whose increasing colors alternate sides."""
    if r < 1:
        raise InvalidParameter("r must be positive")
    require_proper(graph, coloring)
    budget = ensure(budget)
    t = coloring.palette
    classes = coloring.classes()
    adj = graph.adjacency
    full = (1 << graph.vertex_count) - 1
    colors: list[int] = []
    verts: list[int] = []

    # cand_l: vertices adjacent to every chosen side-M vertex; cand_m: same for side L
    def rec(j: int, last: int, cand_l: int, cand_m: int) -> bool:
        budget.tick()
        if j == r:
            return True
        side = j % 2
        pool = cand_l if side == 0 else cand_m
        for col in range(last + 1, t - (r - j - 1) + 1):
            for v in bits(classes[col - 1] & pool):
                colors.append(col)
                verts.append(v)
                if side == 0:
                    ok = rec(j + 1, col, cand_l, cand_m & adj[v])
                else:
                    ok = rec(j + 1, col, cand_l & adj[v], cand_m)
                if ok:
                    return True
                colors.pop()
                verts.pop()
        return False

    if rec(0, 0, full, full):
        return ZigzagWitness(tuple(colors), tuple(verts))
    return None


def spencer_su_partition(
    system: SetSystem,
    coloring: Coloring,
    b1: Iterable[int],
    b2: Iterable[int],
    graph: Graph | None = None,
    budget: Budget | None = None,
) -> GroundPartition:
    """Split the ground set so members inside each side use exactly the colors ``b1`` / ``b2``.

    Side ``E1`` (``E2``) starts as the union of the L-side (M-side) members of a
    colorful bipartite witness; ground elements left over go to ``E1``. The
    result is checked against every member before it is returned.
    """
    graph = graph if graph is not None else build_general_kneser(system)
    b1, b2 = sorted(set(b1)), sorted(set(b2))
    if set(b1) | set(b2) != set(range(1, coloring.palette + 1)):
        raise InvalidParameter("color blocks must cover the palette")
    witness = find_colorful_bipartite(graph, coloring, b1, b2, budget)
    if witness is None:
        raise NoWitness(f"no colorful bipartite subgraph for {b1} / {b2}")
    e1 = 0
    e2 = 0
    for v in witness.side_l:
        e1 |= system.sets[v]
    for v in witness.side_m:
        e2 |= system.sets[v]
    if e1 & e2:
        raise VerificationFailed("witness sides are not disjoint")
    e1 |= ((1 << system.ground) - 1) & ~e2
    colors1, colors2 = contained_colors(system, coloring, e1), contained_colors(system, coloring, e2)
    if colors1 != tuple(b1) or colors2 != tuple(b2):
        raise VerificationFailed(f"partition realises {colors1} / {colors2}, wanted {b1} / {b2}")
    return GroundPartition(as_elements(e1), as_elements(e2), colors1, colors2)


def contained_colors(system: SetSystem, coloring: Coloring, side: int) -> tuple[int, ...]:
    """Sorted colors of the members lying inside the bit vector ``side``."""
    return tuple(sorted({coloring.colors[i] for i, s in enumerate(system.sets) if not s & ~side}))


def unordered_bipartitions(t: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Bipartitions ``(A, B)`` of ``[t]`` with color 1 in ``A``, ``B`` possibly empty."""
    rest = list(range(2, t + 1))
    out = []
    for size in range(len(rest) + 1):
        for extra in combinations(rest, size):
            a = (1,) + extra
            out.append((a, tuple(x for x in rest if x not in extra)))
    return out


def parse_bipartition(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Parse ``"1,3/2,4"``; either side may be empty (``"1,2,3/"``)."""
    if text.count("/") != 1:
        raise InvalidParameter(f"bipartition {text!r} needs exactly one '/'")
    left, right = text.split("/")
    try:
        a = tuple(int(x) for x in left.split(",") if x.strip())
        b = tuple(int(x) for x in right.split(",") if x.strip())
    except ValueError:
        raise InvalidParameter(f"bipartition {text!r} must be comma-separated integers") from None
    return a, b


# -- sweeps -----------------------------------------------------------------

KNOWN_TIGHT = "known-tight"
EXPLORATORY = "exploratory"


def classify_instance(provenance: dict, t: int) -> str:
    """Whether ``(family, t)`` is one of the known topologically tight cases."""
    family = provenance.get("family")
    params = provenance.get("parameters", {})
    if family in ("kneser", "schrijver"):
        ok = t == params["n"] - 2 * params["k"] + 2 and params["n"] >= 2 * params["k"]
    elif family == "u":
        ok = t >= 2 and (params["m"], params["r"]) == (t + 1, (t + 3) // 2)
    elif family == "w":
        ok = t == params["t"]
    elif family == "rational":
        ceil = -(-params["p"] // params["q"])
        ok = t == ceil and ceil % 2 == 1
    elif family == "complete":
        ok = t == params["n"]
    elif family == "cycle":
        ok = params["n"] % 2 == 1 and t == 3
    elif family == "mycielski":
        ok = classify_instance(provenance.get("base", {}), t - 1) == KNOWN_TIGHT
    else:
        ok = False
    return KNOWN_TIGHT if ok else EXPLORATORY


@dataclass
class Report:
    instance: dict[str, Any]
    property: str
    t: int
    colorings_checked: int = 0
    outcome: str = "pass"
    witnesses_sampled: list = field(default_factory=list)
    counterexample: dict | None = None
    elapsed_ms: int = 0
    config: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["config"] is None:
            del d["config"]
        return d


def _recheck(witness, graph, coloring):
    if not witness.check(graph, coloring):
        raise VerificationFailed(f"search returned an invalid witness {witness}")


def _check_one(graph, coloring, prop, bipartitions, r, system):
    """Return ``(failure_payload | None, witnesses)`` for one coloring."""
    witnesses = []
    if prop == "colorful":
        for a, b in bipartitions:
            w = find_colorful_bipartite(graph, coloring, a, b)
            if w is None:
                return {"bipartition": [list(a), list(b)]}, witnesses
            _recheck(w, graph, coloring)
            witnesses.append(w.to_dict())
    elif prop == "zigzag":
        w = find_zigzag(graph, coloring, r)
        if w is None:
            return {"r": r}, witnesses
        _recheck(w, graph, coloring)
        witnesses.append(w.to_dict())
    elif prop == "spencer-su":
        for a, b in bipartitions:
            try:
                part = spencer_su_partition(system, coloring, a, b, graph=graph)
            except NoWitness:
                return {"bipartition": [list(a), list(b)], "reason": "no-witness"}, witnesses
            witnesses.append(part.to_dict())
    return None, witnesses


def _check_chunk(args):
    graph, items, prop, bipartitions, r, system = args
    return [(cid, coloring, *_check_one(graph, coloring, prop, bipartitions, r, system)) for cid, coloring in items]


PROPERTIES = ("colorful", "zigzag", "spencer-su")


def sweep_verify(
    graph: Graph,
    t: int,
    prop: str,
    *,
    bipartitions: Sequence[tuple[Sequence[int], Sequence[int]]] | None = None,
    r: int | None = None,
    system: SetSystem | None = None,
    colorings: Iterable[Coloring] | None = None,
    chi: int | None = None,
    budget: Budget | None = None,
    jobs: int = 1,
    sample_witnesses: int = 3,
) -> Report:
    """Check a property on every canonical proper ``[t]``-coloring of ``graph``.

    ``prop`` is ``"colorful"`` (all unordered bipartitions unless
    ``bipartitions`` is given), ``"zigzag"`` (needs ``r``) or ``"spencer-su"``
    (needs the set system behind ``graph``). ``colorings`` replaces the
    canonical enumeration. The first failing coloring, by enumeration index,
    becomes the counterexample.
    """
    if prop not in PROPERTIES:
        raise InvalidParameter(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    if prop == "zigzag" and r is None:
        raise InvalidParameter("zigzag sweep needs r")
    if prop == "spencer-su" and system is None:
        raise InvalidParameter("spencer-su sweep needs the set system")
    start = time.monotonic()
    budget = ensure(budget)
    if bipartitions is None:
        bipartitions = unordered_bipartitions(t)
    bipartitions = [(tuple(a), tuple(b)) for a, b in bipartitions]
    if chi is None:
        chi = chromatic_number(graph, budget)
    instance = {
        "provenance": graph.provenance,
        "vertex_count": graph.vertex_count,
        "edges": [list(e) for e in graph.edges()],
        "chi": chi,
        "classification": classify_instance(graph.provenance, t),
    }
    report = Report(instance=instance, property=prop, t=t)
    if prop == "colorful" or prop == "spencer-su":
        report.instance["bipartitions"] = [[list(a), list(b)] for a, b in bipartitions]
    if prop == "zigzag":
        report.instance["r"] = r
    stream = colorings if colorings is not None else enumerate_colorings(graph, t, budget=budget)

    def record(cid, coloring, failure, witnesses):
        report.colorings_checked += 1
        if failure is not None:
            report.outcome = "fail"
            report.counterexample = {"coloring_id": cid, "colors": list(coloring.colors), **failure}
            return True
        for w in witnesses:
            if len(report.witnesses_sampled) < sample_witnesses:
                report.witnesses_sampled.append({"coloring_id": cid, **w})
        return False

    try:
        if jobs <= 1:
            for cid, coloring in enumerate(stream):
                budget.tick()
                if record(cid, coloring, *_check_one(graph, coloring, prop, bipartitions, r, system)):
                    break
        else:
            _parallel(graph, stream, prop, bipartitions, r, system, jobs, budget, record)
    except BudgetExhausted:
        report.outcome = "budget"
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    return report


def _parallel(graph, stream, prop, bipartitions, r, system, jobs, budget, record, chunk=64):
    items = []
    for cid, coloring in enumerate(stream):
        budget.tick()
        items.append((cid, coloring))
    chunks = [items[i : i + chunk] for i in range(0, len(items), chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_check_chunk, (graph, c, prop, bipartitions, r, system)) for c in chunks]
        # chunks are consumed in id order, so the first failure seen has the least id
        for i, fut in enumerate(futures):
            for cid, coloring, failure, witnesses in fut.result():
                if record(cid, coloring, failure, witnesses):
                    for rest in futures[i + 1 :]:
                        rest.cancel()
                    return
