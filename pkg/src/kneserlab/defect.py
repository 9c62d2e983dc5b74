"""Hypergraph colorability and the colorability defect of set systems."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .budget import Budget, ensure
from .errors import PreconditionViolated
from .types import SetSystem, as_elements, bits, mask_of


def _color_hypergraph(ground: int, alive: int, edges: list[int], m: int, budget: Budget) -> list[int] | None:
    """Color the elements in ``alive`` with ``0..m-1`` leaving no edge monochromatic.

    Elements are branched in increasing order with first-use symmetry breaking.
    An edge whose colored part is monochromatic with exactly one element left
    forbids that color on the last element (forcing it when ``m == 2``).
    """
    if any(e.bit_count() == 1 for e in edges):
        return None
    if m == 1:
        return None if edges else [0] * ground
    order = list(bits(alive))
    colors = [-1] * ground
    incident = [[] for _ in range(ground)]
    for e in edges:
        for x in bits(e):
            incident[x].append(e)

    def forbidden(x: int) -> int:
        # colors that would complete a monochromatic edge at x
        out = 0
        for e in incident[x]:
            first = -1
            mono = True
            missing = 0
            for y in bits(e):
                if y == x:
                    continue
                cy = colors[y]
                if cy < 0:
                    missing += 1
                    break
                if first < 0:
                    first = cy
                elif cy != first:
                    mono = False
                    break
            if mono and not missing and first >= 0:
                out |= 1 << first
        return out

    def rec(i: int, used: int) -> bool:
        budget.tick()
        if i == len(order):
            return True
        x = order[i]
        bad = forbidden(x)
        for c in range(min(m, used + 1)):
            if bad >> c & 1:
                continue
            colors[x] = c
            if rec(i + 1, max(used, c + 1)):
                return True
        colors[x] = -1
        return False

    if not rec(0, 0):
        return None
    return [c if c >= 0 else 0 for c in colors]


def is_m_colorable_hypergraph(system: SetSystem, m: int, budget: Budget | None = None) -> tuple[int, ...] | None:
    """An ``m``-coloring of ``[ground]`` (colors ``1..m``) with no monochromatic member.

    Returns ``None`` when no such coloring exists.
    """
    found = _color_hypergraph(system.ground, (1 << system.ground) - 1, list(system.sets), m, ensure(budget))
    if found is None:
        return None
    return tuple(c + 1 for c in found)


class DefectResult(NamedTuple):
    size: int
    deleted: tuple[int, ...]
    coloring: dict[int, int]


def colorability_defect(system: SetSystem, m: int, budget: Budget | None = None) -> DefectResult:
    """Least number of points to delete so the surviving members are ``m``-colorable.

    Deleted sets are drawn from the union of the members and scanned by size,
    then lexicographically; the first hit is returned together with a coloring
    (element -> color in ``1..m``) of the surviving points of the union.
    """
    budget = ensure(budget)
    support = system.support()
    points = list(bits(support))
    members = list(dict.fromkeys(system.sets))
    for size in range(len(points) + 1):
        for chosen in combinations(points, size):
            y = mask_of(chosen)
            alive = [s for s in members if not s & y]
            found = _color_hypergraph(system.ground, support & ~y, alive, m, budget)
            if found is not None:
                coloring = {x + 1: found[x] + 1 for x in bits(support & ~y)}
                return DefectResult(size, tuple(x + 1 for x in chosen), coloring)
    raise AssertionError("deleting every point always succeeds")


def pairwise_condition(system: SetSystem) -> bool:
    """At most one member is disjoint from both members of every distinct pair."""
    members = list(dict.fromkeys(system.sets))
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            ab = a | b
            if sum(1 for c in members if not c & ab) > 1:
                return False
    return True


@dataclass(frozen=True)
class DefectCertificate:
    """Deleted points plus a red/blue coloring of the remaining union points."""

    deleted: tuple[int, ...]
    red: tuple[int, ...]
    blue: tuple[int, ...]
    valid: bool

    @property
    def size(self) -> int:
        return len(self.deleted)

    def to_dict(self) -> dict:
        return {"deleted": list(self.deleted), "red": list(self.red), "blue": list(self.blue), "valid": self.valid}


def certificate_is_valid(system: SetSystem, deleted, red, blue) -> bool:
    """Recheck a red/blue certificate from scratch."""
    y, r, b = mask_of(x - 1 for x in deleted), mask_of(x - 1 for x in red), mask_of(x - 1 for x in blue)
    if y & r or y & b or r & b:
        return False
    for s in system.sets:
        if s & y:
            continue
        if s & ~(r | b):
            return False
        if not s & b or not s & r:
            return False
    return True


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def cd3_certificate(system: SetSystem) -> DefectCertificate:
    """Deletion of at most three points leaving a properly 2-colorable family.

    Requires :func:`pairwise_condition`. Takes the distinct pair ``A, B`` with
    the smallest union (ties broken lexicographically), deletes one point of
    each of ``A - B`` and ``B - A`` (a point of ``A`` itself when ``A`` is
    contained in ``B``), plus one point of the only member missing ``A | B``
    if there is one. The rest of ``A | B`` is red, everything else blue.
    """
    members = sorted(dict.fromkeys(system.sets), key=as_elements)
    if not pairwise_condition(system):
        raise PreconditionViolated("some pair of members has two common disjoint members")
    if len(members) < 2:
        y = 1 << _lowest(members[0]) if members else 0
        return _certificate(system, y, 0, ((1 << system.ground) - 1) & ~y)

    best = None
    for i, a in enumerate(members):
        for j in range(i + 1, len(members)):
            key = ((a | members[j]).bit_count(), i, j)
            if best is None or key < best:
                best = key
    _, i, j = best
    a, b = members[i], members[j]
    union = a | b
    y = 0
    a_only, b_only = a & ~b, b & ~a
    y |= 1 << _lowest(a_only if a_only else a)
    y |= 1 << _lowest(b_only if b_only else b)
    outside = [d for d in members if not d & union]
    if outside:
        y |= 1 << _lowest(outside[0])
    return _certificate(system, y, union & ~y, ((1 << system.ground) - 1) & ~union & ~y)


def _certificate(system: SetSystem, y: int, red: int, blue: int) -> DefectCertificate:
    deleted, r, b = (tuple(x + 1 for x in bits(mask)) for mask in (y, red, blue))
    return DefectCertificate(deleted, r, b, certificate_is_valid(system, deleted, r, b))
