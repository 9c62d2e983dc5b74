"""Exact coloring machinery.

All searches are exhaustive backtracking over bit vectors. Each accepts an
optional :class:`~kneserlab.budget.Budget`; running out raises
:class:`~kneserlab.errors.BudgetExhausted` rather than returning a guess.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .budget import Budget, ensure
from .errors import BudgetExhausted, ImproperColoring, Infeasible, InvalidParameter, SizeMismatch
from .families import build_rational_complete
from .types import Coloring, Graph, bits

HomMap = tuple[int, ...]


def is_proper(graph: Graph, coloring: Coloring) -> bool:
    if len(coloring.colors) != graph.vertex_count:
        raise SizeMismatch(f"coloring has {len(coloring.colors)} entries for {graph.vertex_count} vertices")
    c = coloring.colors
    return all(c[u] != c[v] for u, v in graph.edges())


def require_proper(graph: Graph, coloring: Coloring) -> None:
    if not is_proper(graph, coloring):
        raise ImproperColoring("coloring has a monochromatic edge")


# -- chromatic number -------------------------------------------------------


def max_clique(graph: Graph, budget: Budget | None = None) -> list[int]:
    """A maximum clique by bitset branch and bound (greedy-coloring bound)."""
    budget = ensure(budget)
    adj = graph.adjacency
    best: list[int] = []

    def color_bound(cand: int) -> int:
        # number of greedy color classes covering cand bounds the clique size
        k = 0
        while cand:
            k += 1
            avail = cand
            while avail:
                v = (avail & -avail).bit_length() - 1
                cand &= ~(1 << v)
                avail &= ~adj[v] & ~(1 << v)
        return k

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best
        budget.tick()
        if not cand:
            if len(clique) > len(best):
                best = list(clique)
            return
        if len(clique) + color_bound(cand) <= len(best):
            return
        while cand:
            if len(clique) + cand.bit_count() <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            clique.append(v)
            expand(clique, cand & adj[v])
            clique.pop()

    expand([], (1 << graph.vertex_count) - 1)
    return best


def greedy_coloring(graph: Graph) -> list[int]:
    """DSATUR greedy coloring, colors ``0..k-1``."""
    n = graph.vertex_count
    adj = graph.adjacency
    colors = [-1] * n
    seen = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (seen[u].bit_count(), graph.degree(u), -u),
        )
        c = (~seen[v] & (seen[v] + 1)).bit_length() - 1
        colors[v] = c
        for w in bits(adj[v]):
            seen[w] |= 1 << c
    return colors


def _k_coloring(graph: Graph, k: int, clique: Sequence[int], budget: Budget) -> list[int] | None:
    """Find a proper coloring with colors ``0..k-1`` or prove none exists.

    The clique is precolored ``0, 1, ...``; afterwards the vertex with fewest
    remaining colors is branched on, and unused colors are interchangeable so
    only one fresh color is ever tried.
    """
    n = graph.vertex_count
    adj = graph.adjacency
    if len(clique) > k:
        return None
    full = (1 << k) - 1
    avail = [full] * n
    colors = [-1] * n

    def assign(avail: list[int], v: int, c: int) -> list[int] | None:
        avail = list(avail)
        avail[v] = 1 << c
        bit = 1 << c
        for w in bits(adj[v]):
            if colors[w] < 0 and avail[w] & bit:
                avail[w] &= ~bit
                if not avail[w]:
                    return None
        return avail

    for c, v in enumerate(clique):
        nxt = assign(avail, v, c)
        if nxt is None:
            return None
        avail = nxt
        colors[v] = c
    used = len(clique)

    def search(avail: list[int], remaining: int, used: int) -> bool:
        budget.tick()
        if not remaining:
            return True
        best_v, best_key = -1, None
        for v in range(n):
            if colors[v] < 0:
                key = (avail[v].bit_count(), -graph.degree(v))
                if best_key is None or key < best_key:
                    best_v, best_key = v, key
                    if key[0] == 1:
                        break
        v = best_v
        choices = avail[v] & ((1 << min(k, used + 1)) - 1)
        for c in bits(choices):
            nxt = assign(avail, v, c)
            if nxt is None:
                continue
            colors[v] = c
            if search(nxt, remaining - 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    if search(avail, n - len(clique), used):
        return colors
    return None


def optimal_coloring(graph: Graph, budget: Budget | None = None) -> Coloring:
    """A proper coloring with exactly ``chromatic_number(graph)`` colors."""
    budget = ensure(budget)
    n = graph.vertex_count
    if n == 0:
        raise InvalidParameter("graph has no vertices")
    greedy = greedy_coloring(graph)
    hi = max(greedy) + 1
    best = greedy
    lo = 1
    try:
        clique = max_clique(graph, budget)
        lo = max(1, len(clique))
        for k in range(lo, hi):
            found = _k_coloring(graph, k, clique, budget)
            if found is not None:
                best = found
                break
            lo = k + 1
    except BudgetExhausted as exc:
        raise BudgetExhausted(str(exc), lower=lo, upper=hi, nodes=budget.nodes) from None
    return Coloring.of(c + 1 for c in best)


def chromatic_number(graph: Graph, budget: Budget | None = None) -> int:
    """Exact chromatic number.

    Raises :class:`BudgetExhausted` with ``lower``/``upper`` set to the best
    bounds proven so far.
    """
    return optimal_coloring(graph, budget).palette


def is_k_colorable(graph: Graph, k: int, budget: Budget | None = None) -> bool:
    if graph.vertex_count == 0:
        return True
    budget = ensure(budget)
    return _k_coloring(graph, k, max_clique(graph, budget), budget) is not None


# -- canonical enumeration --------------------------------------------------


def enumerate_colorings(
    graph: Graph,
    t: int,
    prefix: Sequence[int] = (),
    budget: Budget | None = None,
) -> Iterator[Coloring]:
    """Yield one proper ``[t]``-coloring per orbit under color permutations.

    The representative of an orbit is the coloring whose colors first appear
    in increasing order along the vertex order; representatives are yielded in
    lexicographic order of their color tuples. ``prefix`` restricts the stream
    to colorings extending the given colors of the first vertices (see
    :func:`coloring_prefixes`).
    """
    budget = ensure(budget)
    n = graph.vertex_count
    adj = graph.adjacency
    colors = [0] * n
    lower = [adj[v] & ((1 << v) - 1) for v in range(n)]

    def ok(v: int, c: int) -> bool:
        return all(colors[w] != c for w in bits(lower[v]))

    used = 0
    for v, c in enumerate(prefix):
        if not (1 <= c <= min(t, used + 1)) or not ok(v, c):
            return
        colors[v] = c
        used = max(used, c)

    def rec(v: int, used: int) -> Iterator[Coloring]:
        budget.tick()
        if v == n:
            yield Coloring(t, tuple(colors))
            return
        for c in range(1, min(t, used + 1) + 1):
            if ok(v, c):
                colors[v] = c
                yield from rec(v + 1, max(used, c))
        colors[v] = 0

    if n == 0:
        yield Coloring(t, ())
        return
    yield from rec(len(prefix), used)


def coloring_prefixes(graph: Graph, t: int, depth: int) -> list[tuple[int, ...]]:
    """Split the canonical search tree at ``depth`` for independent workers.

    The streams ``enumerate_colorings(graph, t, prefix)`` over the returned
    prefixes partition the full stream.
    """
    depth = min(depth, graph.vertex_count)
    head = graph.induced(list(range(depth)))
    return [c.colors for c in enumerate_colorings(head, t)]


def random_proper_coloring(graph: Graph, m: int, rng: random.Random, budget: Budget | None = None) -> Coloring:
    """Random proper ``[m]``-coloring via randomized backtracking.

    Vertex order and color trial order are shuffled from ``rng``; the result is
    not uniformly distributed.
    """
    budget = ensure(budget)
    n = graph.vertex_count
    adj = graph.adjacency
    order = list(range(n))
    rng.shuffle(order)
    colors = [0] * n

    def rec(i: int) -> bool:
        budget.tick()
        if i == n:
            return True
        v = order[i]
        palette = list(range(1, m + 1))
        rng.shuffle(palette)
        for c in palette:
            if all(colors[w] != c for w in bits(adj[v])):
                colors[v] = c
                if rec(i + 1):
                    return True
        colors[v] = 0
        return False

    if not rec(0):
        raise Infeasible(f"no proper {m}-coloring exists")
    return Coloring(m, tuple(colors))


# -- homomorphisms -----------------------------------------------------------


def find_homomorphism(
    source: Graph,
    target: Graph,
    budget: Budget | None = None,
    _anchor: bool = False,
) -> HomMap | None:
    """Lexicographically first homomorphism ``source -> target``, or ``None``.

    Source vertices are mapped in canonical order; unmapped neighbours keep a
    candidate bit vector that is intersected with each new image's
    neighbourhood, and a branch dies as soon as any candidate set empties.
    ``_anchor`` pins vertex 0 to target vertex 0, which is only sound when the
    target is vertex-transitive.
    """
    budget = ensure(budget)
    n = source.vertex_count
    sadj = source.adjacency
    tadj = target.adjacency
    full = (1 << target.vertex_count) - 1
    if n == 0:
        return ()
    if not full:
        return None
    images = [-1] * n
    domains = [full] * n
    if _anchor:
        domains[0] = 1

    def rec(v: int, domains: list[int]) -> bool:
        budget.tick()
        if v == n:
            return True
        for x in bits(domains[v]):
            nxt = domains
            fail = False
            for w in bits(sadj[v] >> (v + 1) << (v + 1)):
                d = nxt[w] & tadj[x]
                if not d:
                    fail = True
                    break
                if nxt is domains:
                    nxt = list(domains)
                nxt[w] = d
            if fail:
                continue
            images[v] = x
            if rec(v + 1, nxt):
                return True
        images[v] = -1
        return False

    return tuple(images) if rec(0, domains) else None


def is_homomorphism(source: Graph, target: Graph, images: Sequence[int]) -> bool:
    if len(images) != source.vertex_count:
        return False
    return all(target.has_edge(images[u], images[v]) for u, v in source.edges())


# -- circular chromatic number ----------------------------------------------


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    p, _, q = text.partition("/")
    try:
        return Fraction(int(p), int(q or 1))
    except (ValueError, ZeroDivisionError):
        raise InvalidParameter(f"not a rational p/q: {text!r}") from None


def circular_chromatic(graph: Graph, budget: Budget | None = None) -> Fraction:
    """Exact circular chromatic number as a reduced fraction.

    Candidates are ``p/q`` with ``q <= |V|`` and ``chi - 1 < p/q <= chi``.
    Because ``K_(p/q) -> K_(r/s)`` whenever ``p/q <= r/s``, homomorphism
    existence is monotone along the sorted candidates and a binary search
    finds the least feasible one.
    """
    budget = ensure(budget)
    if graph.edge_count == 0:
        raise InvalidParameter("circular chromatic number needs at least one edge")
    chi = chromatic_number(graph, budget)
    if chi == 2:
        return Fraction(2)
    n = graph.vertex_count
    cands = sorted(
        {Fraction(p, q) for q in range(1, n + 1) for p in range((chi - 1) * q + 1, chi * q + 1) if p >= 2 * q}
    )
    lo, hi = 0, len(cands) - 1  # cands[hi] == chi is always feasible
    try:
        while lo < hi:
            mid = (lo + hi) // 2
            value = cands[mid]
            target = build_rational_complete(value.numerator, value.denominator)
            if find_homomorphism(graph, target, budget, _anchor=True) is not None:
                hi = mid
            else:
                lo = mid + 1
    except BudgetExhausted as exc:
        raise BudgetExhausted(str(exc), lower=cands[lo], upper=cands[hi], nodes=budget.nodes) from None
    return cands[lo]


# -- local and wide colorings -------------------------------------------------


def max_closed_neighborhood_colors(graph: Graph, coloring: Coloring) -> int:
    """Largest number of colors seen in any closed neighbourhood."""
    require_proper(graph, coloring)
    c = coloring.colors
    best = 1
    for v in range(graph.vertex_count):
        best = max(best, len({c[w] for w in bits(graph.adjacency[v])}) + 1)
    return best


def _adjacency_matrix(graph: Graph) -> np.ndarray:
    n = graph.vertex_count
    a = np.zeros((n, n), dtype=np.int64)
    for u, v in graph.edges():
        a[u, v] = a[v, u] = 1
    return a


def is_wide(graph: Graph, coloring: Coloring, s: int) -> bool:
    """True iff no walk of length exactly ``2s - 1`` joins two same-colored vertices.

    Closed walks count: a vertex joined to itself by such a walk violates
    the condition.
    """
    if s < 1:
        raise InvalidParameter("s must be positive")
    require_proper(graph, coloring)
    a = _adjacency_matrix(graph)
    reach = a.copy()
    for _ in range(2 * s - 2):
        reach = np.minimum(reach @ a, 1)
    colors = np.asarray(coloring.colors)
    for c in set(coloring.colors):
        idx = np.flatnonzero(colors == c)
        if reach[np.ix_(idx, idx)].any():
            return False
    return True


def min_colors_local(graph: Graph, m: int, budget: Budget | None = None) -> int:
    """Least closed-neighbourhood color count over proper ``[m]``-colorings."""
    best = None
    for coloring in enumerate_colorings(graph, m, budget=budget):
        value = max_closed_neighborhood_colors(graph, coloring)
        if best is None or value < best:
            best = value
            if best == 1 or (graph.edge_count and best == 2):
                break
    if best is None:
        raise Infeasible(f"no proper {m}-coloring exists")
    return best


def has_local_coloring(graph: Graph, m: int, r: int, budget: Budget | None = None) -> bool:
    """Whether some proper ``[m]``-coloring shows at most ``r`` colors per closed neighbourhood."""
    try:
        return min_colors_local(graph, m, budget) <= r
    except Infeasible:
        return False


def has_wide_coloring(graph: Graph, s: int, t: int, budget: Budget | None = None) -> bool:
    """Whether some proper ``[t]``-coloring is ``s``-wide."""
    return any(is_wide(graph, c, s) for c in enumerate_colorings(graph, t, budget=budget))

