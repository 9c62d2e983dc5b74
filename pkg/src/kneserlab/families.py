"""Deterministic constructors for Kneser-type graph families.

Every constructor fixes a canonical vertex order (lexicographic for subsets
and tuples, numeric for indices) so that exported files and witness indices
are reproducible.
"""

from __future__ import annotations

import math
import random
from itertools import combinations, product
from typing import Any

import numpy as np

from .errors import DimensionMismatch, InvalidParameter
from .types import Coloring, Graph, SetSystem, SpherePointSet, as_elements, mask_of

DISTANCE_SLACK = 1e-12


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameter(message)


def _disjointness_adjacency(masks: list[int]) -> tuple[int, ...]:
    adj = [0] * len(masks)
    for i, a in enumerate(masks):
        for j in range(i + 1, len(masks)):
            if not a & masks[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return tuple(adj)


def k_subsets(n: int, k: int) -> SetSystem:
    """All k-subsets of [n] in lexicographic order."""
    return SetSystem.from_lists(n, combinations(range(1, n + 1), k))


def schrijver_system(n: int, k: int) -> SetSystem:
    """k-subsets of [n] with no two cyclically consecutive elements."""

    def stable(s):
        if any(b - a == 1 for a, b in zip(s, s[1:])):
            return False
        return not (n > 1 and s[0] == 1 and s[-1] == n)

    return SetSystem.from_lists(n, (s for s in combinations(range(1, n + 1), k) if stable(s)))


def build_general_kneser(system: SetSystem, provenance: dict[str, Any] | None = None) -> Graph:
    """One vertex per member, adjacent iff the members are disjoint.

    Labels are the members as sorted tuples; when the system contains repeated
    members, labels become ``(position, member)`` to stay distinct.
    """
    members = system.members()
    if len(set(members)) == len(members):
        labels = tuple(members)
    else:
        labels = tuple(enumerate(members))
    prov = provenance or {
        "family": "general",
        "parameters": {"ground": system.ground, "sets": [list(m) for m in members]},
    }
    return Graph(labels, _disjointness_adjacency(list(system.sets)), prov)


def build_kneser(n: int, k: int) -> Graph:
    _check(1 <= k <= n, f"kneser needs 1 <= k <= n, got n={n}, k={k}")
    return build_general_kneser(k_subsets(n, k), {"family": "kneser", "parameters": {"n": n, "k": k}})


def build_schrijver(n: int, k: int) -> Graph:
    _check(k >= 1 and n >= 2 * k, f"schrijver needs n >= 2k >= 2, got n={n}, k={k}")
    return build_general_kneser(schrijver_system(n, k), {"family": "schrijver", "parameters": {"n": n, "k": k}})


def build_mycielski(graph: Graph, r: int) -> Graph:
    """Generalized Mycielskian with ``r`` levels.

    Vertex ``(p, label)`` is the copy of a base vertex on level ``p``; the
    apex is labelled ``"z"`` and is joined to the top level ``r - 1``.
    """
    _check(r >= 1, f"mycielski needs r >= 1, got {r}")
    n = graph.vertex_count
    total = n * r + 1
    adj = [0] * total
    for u, v in graph.edges():
        for p in range(r):
            for q in range(r):
                if (p == q == 0) or abs(p - q) == 1:
                    a, b = p * n + u, q * n + v
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
    z = total - 1
    for v in range(n):
        top = (r - 1) * n + v
        adj[top] |= 1 << z
        adj[z] |= 1 << top
    labels = tuple((p, graph.labels[v]) for p in range(r) for v in range(n)) + ("z",)
    prov = {"family": "mycielski", "parameters": {"r": r}, "base": graph.provenance}
    return Graph(labels, tuple(adj), prov)


def build_u(m: int, r: int) -> Graph:
    """Local-coloring universal graph on pairs ``(i, A)``.

    ``(i, A)`` and ``(j, B)`` are adjacent iff ``i in B`` and ``j in A``.
    """
    _check(1 <= r <= m, f"U(m, r) needs 1 <= r <= m, got m={m}, r={r}")
    verts = []
    for i in range(1, m + 1):
        rest = [x for x in range(1, m + 1) if x != i]
        for a in combinations(rest, r - 1):
            verts.append((i, a))
    sets = [mask_of(x - 1 for x in a) for _, a in verts]
    adj = [0] * len(verts)
    for x, (i, _) in enumerate(verts):
        for y in range(x + 1, len(verts)):
            j = verts[y][0]
            if sets[y] >> (i - 1) & 1 and sets[x] >> (j - 1) & 1:
                adj[x] |= 1 << y
                adj[y] |= 1 << x
    return Graph(tuple(verts), tuple(adj), {"family": "u", "parameters": {"m": m, "r": r}})


def _w_adjacent(x: tuple[int, ...], y: tuple[int, ...], s: int) -> bool:
    # coordinate pairs must be edges of the path 0-1-...-s with a loop at s
    return all(abs(a - b) == 1 or a == b == s for a, b in zip(x, y))


def build_w(s: int, t: int) -> Graph:
    """Wide-coloring universal graph on strings over ``{0, ..., s}``.

    Vertices have exactly one zero coordinate and at least one coordinate
    equal to 1; labels are the strings as integer tuples.
    """
    _check(s >= 1, f"W(s, t) needs s >= 1, got {s}")
    _check(t >= 2, f"W(s, t) needs t >= 2, got {t}")
    verts = [x for x in product(range(s + 1), repeat=t) if x.count(0) == 1 and 1 in x]
    adj = [0] * len(verts)
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            if _w_adjacent(verts[a], verts[b], s):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return Graph(tuple(verts), tuple(adj), {"family": "w", "parameters": {"s": s, "t": t}})


def build_rational_complete(p: int, q: int) -> Graph:
    """Circular complete graph: ``i ~ j`` iff ``q <= |i - j| <= p - q``."""
    _check(q >= 1 and p >= 2 * q, f"K_(p/q) needs p >= 2q >= 2, got p={p}, q={q}")
    edges = [(i, j) for i in range(p) for j in range(i + 1, p) if q <= j - i <= p - q]
    return Graph.from_edges(p, edges, provenance={"family": "rational", "parameters": {"p": p, "q": q}})


def rational_canonical_coloring(p: int, q: int) -> Coloring:
    """Block coloring ``i -> floor(i / q) + 1`` with ``ceil(p / q)`` colors."""
    _check(q >= 1 and p >= 2 * q, f"K_(p/q) needs p >= 2q >= 2, got p={p}, q={q}")
    return Coloring(-(-p // q), tuple(i // q + 1 for i in range(p)))


def build_complete(n: int) -> Graph:
    _check(n >= 1, "complete graph needs n >= 1")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph.from_edges(n, edges, provenance={"family": "complete", "parameters": {"n": n}})


def build_cycle(n: int) -> Graph:
    _check(n >= 3, "cycle needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph.from_edges(n, edges, provenance={"family": "cycle", "parameters": {"n": n}})


def build_empty(n: int) -> Graph:
    _check(n >= 1, "empty graph needs n >= 1")
    return Graph.from_edges(n, [], provenance={"family": "empty", "parameters": {"n": n}})


def circle_points(count: int) -> SpherePointSet:
    """``count`` equally spaced points on the unit circle, starting at (1, 0)."""
    _check(count >= 1, "need at least one point")
    pts = tuple((math.cos(2 * math.pi * i / count), math.sin(2 * math.pi * i / count)) for i in range(count))
    return SpherePointSet(2, pts)


def sphere_points(dimension: int, count: int, seed: int) -> SpherePointSet:
    """Seeded uniform sample of points on ``S^(dimension-1)``."""
    _check(dimension >= 2, "dimension must be at least 2")
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, dimension))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return SpherePointSet(dimension, tuple(tuple(float(x) for x in row) for row in raw), seed)


def build_borsuk_sample(d: int, alpha: float, points: SpherePointSet) -> Graph:
    """Finite Borsuk-type graph: points joined when at distance >= alpha."""
    if points.dimension != d:
        raise DimensionMismatch(f"points live in R^{points.dimension}, expected R^{d}")
    _check(d >= 2, "dimension must be at least 2")
    _check(0 < alpha <= 2, f"alpha must lie in (0, 2], got {alpha}")
    pts = np.asarray(points.points, dtype=float).reshape(len(points.points), d)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    n = len(pts)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if dist[i, j] >= alpha - DISTANCE_SLACK]
    prov = {"family": "borsuk", "parameters": {"d": d, "alpha": alpha, "points": n}, "seed": points.seed}
    return Graph.from_edges(n, edges, labels=points.points, provenance=prov)


def random_set_system(seed: int, max_ground: int = 8, max_members: int = 10) -> SetSystem:
    """Seeded random family of distinct nonempty subsets.

    The ground size is drawn from ``[1, max_ground]`` and the number of
    members from ``[1, max_members]`` (capped by the number of nonempty subsets).
    """
    rng = random.Random(seed)
    ground = rng.randint(1, max_ground)
    want = min(rng.randint(1, max_members), (1 << ground) - 1)
    seen: dict[int, None] = {}
    while len(seen) < want:
        size = rng.randint(1, ground)
        seen[mask_of(rng.sample(range(ground), size))] = None
    return SetSystem(ground, tuple(seen))


def random_graph(seed: int, max_vertices: int = 6, max_edges: int = 9, min_vertices: int = 1) -> Graph:
    """Seeded random simple graph with bounded order and size."""
    _check(1 <= min_vertices <= max_vertices, "need 1 <= min_vertices <= max_vertices")
    rng = random.Random(seed)
    n = rng.randint(min_vertices, max_vertices)
    pairs = list(combinations(range(n), 2))
    m = rng.randint(0, min(max_edges, len(pairs)))
    edges = sorted(rng.sample(pairs, m))
    return Graph.from_edges(n, edges, provenance={"family": "random", "parameters": {"seed": seed}})


def describe_system(system: SetSystem) -> str:
    return "{" + ", ".join("{" + ",".join(map(str, as_elements(s))) + "}" for s in system.sets) + "}"
