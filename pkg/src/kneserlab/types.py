"""Core value types: graphs, set systems, colorings and sphere samples.

Vertex neighbourhoods and set-system members are stored as Python ints used
as bit vectors; bit ``v`` of ``Graph.adjacency[u]`` is set iff ``uv`` is an
edge, and bit ``e - 1`` of a member is set iff ground element ``e`` belongs
to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .errors import DimensionMismatch, EmptySetMember, InvalidParameter, SizeMismatch


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Graph:
    """Finite simple graph with canonically ordered, labelled vertices.

    Equality compares labels and adjacency only; ``provenance`` is metadata
    recording how the graph was built.
    """

    labels: tuple[Hashable, ...]
    adjacency: tuple[int, ...]
    provenance: dict[str, Any] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = len(self.adjacency)
        if len(self.labels) != n:
            raise SizeMismatch(f"{len(self.labels)} labels for {n} vertices")
        if len(set(self.labels)) != n:
            raise InvalidParameter("vertex labels must be pairwise distinct")
        full = (1 << n) - 1
        for u, nb in enumerate(self.adjacency):
            if nb & ~full or nb < 0:
                raise InvalidParameter(f"vertex {u} has neighbours outside the vertex set")
            if nb >> u & 1:
                raise InvalidParameter(f"loop at vertex {u}")
            for v in bits(nb):
                if not self.adjacency[v] >> u & 1:
                    raise InvalidParameter(f"adjacency not symmetric at ({u}, {v})")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[Hashable] | None = None,
        provenance: dict[str, Any] | None = None,
    ) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise InvalidParameter(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(
            tuple(range(n)) if labels is None else tuple(labels),
            tuple(adj),
            dict(provenance or {}),
        )

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    n = vertex_count

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in bits(nb >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(nb.bit_count() for nb in self.adjacency) // 2

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            adj.append(mask_of(index[w] for w in bits(self.adjacency[v]) if w in index))
        return Graph(tuple(self.labels[v] for v in vertices), tuple(adj), dict(self.provenance))

    def with_provenance(self, **provenance: Any) -> "Graph":
        return Graph(self.labels, self.adjacency, provenance)


@dataclass(frozen=True)
class SetSystem:
    """A family of nonempty subsets of the ground set ``{1, ..., ground}``."""

    ground: int
    sets: tuple[int, ...]

    def __post_init__(self):
        if self.ground < 0:
            raise InvalidParameter("ground size must be nonnegative")
        full = (1 << self.ground) - 1
        for i, s in enumerate(self.sets):
            if s == 0:
                raise EmptySetMember(f"member {i} is empty")
            if s & ~full or s < 0:
                raise InvalidParameter(f"member {i} has elements outside [{self.ground}]")

    @classmethod
    def from_lists(cls, ground: int, sets: Iterable[Iterable[int]]) -> "SetSystem":
        masks = []
        for members in sets:
            members = list(members)
            if not members:
                raise EmptySetMember("empty member")
            for e in members:
                if not 1 <= e <= ground:
                    raise InvalidParameter(f"element {e} outside [1, {ground}]")
            masks.append(mask_of(e - 1 for e in members))
        return cls(ground, tuple(masks))

    def __len__(self) -> int:
        return len(self.sets)

    def members(self) -> list[tuple[int, ...]]:
        """Members as sorted tuples of 1-based elements."""
        return [as_elements(s) for s in self.sets]

    def support(self) -> int:
        """Bit vector of the union of all members."""
        u = 0
        for s in self.sets:
            u |= s
        return u

    def deduplicated(self) -> "SetSystem":
        return SetSystem(self.ground, tuple(dict.fromkeys(self.sets)))


def as_elements(mask: int) -> tuple[int, ...]:
    """1-based elements of a member bit vector."""
    return tuple(b + 1 for b in bits(mask))


@dataclass(frozen=True)
class Coloring:
    """Assignment of colors ``1..palette`` to vertices; not necessarily proper."""

    palette: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.palette < 1:
            raise InvalidParameter("palette must be positive")
        for v, c in enumerate(self.colors):
            if not 1 <= c <= self.palette:
                raise InvalidParameter(f"vertex {v} has color {c} outside [1, {self.palette}]")

    @classmethod
    def of(cls, colors: Iterable[int], palette: int | None = None) -> "Coloring":
        colors = tuple(colors)
        if palette is None:
            palette = max(colors, default=1)
        return cls(palette, colors)

    def __len__(self) -> int:
        return len(self.colors)

    def classes(self) -> list[int]:
        """Bit vector of each color class; index 0 is color 1."""
        out = [0] * self.palette
        for v, c in enumerate(self.colors):
            out[c - 1] |= 1 << v
        return out

    def used(self) -> set[int]:
        return set(self.colors)

    def is_onto(self) -> bool:
        return len(self.used()) == self.palette


@dataclass(frozen=True)
class SpherePointSet:
    """Points on the unit sphere ``S^(dimension-1)`` in ``R^dimension``."""

    dimension: int
    points: tuple[tuple[float, ...], ...]
    seed: int | None = None

    def __post_init__(self):
        for i, p in enumerate(self.points):
            if len(p) != self.dimension:
                raise DimensionMismatch(f"point {i} has {len(p)} coordinates, expected {self.dimension}")
            if abs(math.sqrt(sum(x * x for x in p)) - 1.0) > 1e-9:
                raise InvalidParameter(f"point {i} is not on the unit sphere")
