"""Exhaustive search for rainbow cycles.

:func:`find_rainbow_cycle` grows a path from an anchor vertex and keeps a
matching from path edges to distinct colors. A partial path whose edges admit
no distinct colors cannot be completed, so it is cut immediately; popping the
last edge leaves a valid matching for the rest. ``NotFound`` is only returned
after the search space is exhausted.

:func:`naive_cycle_cover` is the slow, independent cross-check: every vertex
subset, every cyclic order, every coloring drawn from the edges' color sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._matching import IncrementalMatcher
from .certify import RainbowCycleCert
from .errors import UsageError
from .extremal import ExceptionEvidence, detect_bipartite_exception
from .family import GraphFamily, iter_bits


class _NotFoundType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotFound"

    def __bool__(self) -> bool:
        return False


NotFound = _NotFoundType()


def _check_length(family: GraphFamily, length: int) -> None:
    if not isinstance(length, int) or not 3 <= length <= family.n:
        raise UsageError(f"cycle length must lie in [3, {family.n}], got {length}")


def _search_from(family: GraphFamily, anchor: int, length: int, allowed: int) -> RainbowCycleCert | None:
    matcher = IncrementalMatcher(family.n)
    path = [anchor]
    union = family.union_row
    colors_of = family.color_mask
    anchor_row = union(anchor)

    def extend(used: int) -> bool:
        end = path[-1]
        depth = len(path)
        if depth == length:
            if not matcher.push(colors_of(end, anchor)):
                return False
            return True
        cand = union(end) & allowed & ~used
        if depth == length - 1:
            # last vertex closes back to the anchor; path[1] < path[-1] fixes direction
            cand &= anchor_row
            if length > 2:
                cand &= ~((1 << (path[1] + 1)) - 1)
        for w in iter_bits(cand):
            if not matcher.push(colors_of(end, w)):
                continue
            path.append(w)
            if extend(used | 1 << w):
                return True
            path.pop()
            matcher.pop()
        return False

    if extend(1 << anchor):
        return RainbowCycleCert(tuple(path), tuple(matcher.color_of))
    return None


def find_rainbow_cycle(family: GraphFamily, length: int, through: int | None = None):
    """A rainbow cycle of ``length`` (through ``through`` if given), else ``NotFound``."""
    _check_length(family, length)
    n = family.n
    full = (1 << n) - 1
    if through is not None:
        family._check_vertex(through)
        cert = _search_from(family, through, length, full)
        return cert if cert is not None else NotFound
    if length == n:
        cert = _search_from(family, 0, length, full)
        return cert if cert is not None else NotFound
    # anchor at the smallest vertex of the cycle
    for s in range(n - length + 1):
        allowed = full & ~((1 << (s + 1)) - 1) | (1 << s)
        cert = _search_from(family, s, length, allowed)
        if cert is not None:
            return cert
    return NotFound


def naive_cycle_cover(family: GraphFamily, length: int) -> frozenset[int]:
    """Vertices lying on at least one rainbow cycle of ``length``, by brute force."""
    _check_length(family, length)
    n = family.n
    covered: set[int] = set()
    for subset in itertools.combinations(range(n), length):
        if covered.issuperset(subset):
            continue
        first, rest = subset[0], subset[1:]
        for order in itertools.permutations(rest):
            if order[0] > order[-1]:
                continue
            cycle = (first,) + order
            sets = []
            for k in range(length):
                u, v = cycle[k], cycle[(k + 1) % length]
                sets.append([c for c in range(n) if family.has_edge(c, u, v)])
            if any(len(set(combo)) == length for combo in itertools.product(*sets)):
                covered.update(subset)
                break
    return frozenset(covered)


@dataclass
class PancyclicityReport:
    """Outcome grid for lengths ``a..b``; keys are ``(vertex, length)`` or
    ``(None, length)`` when ``per_vertex`` is off. Missing cycles map to ``NotFound``."""

    n: int
    lengths: tuple[int, int]
    per_vertex: bool
    cells: dict = field(default_factory=dict)
    exception: ExceptionEvidence | None = None

    def missing(self) -> list[tuple]:
        return [key for key, value in self.cells.items() if value is NotFound]

    @property
    def complete(self) -> bool:
        """Every cell holds a certificate."""
        return not self.missing()

    @property
    def rainbow_pancyclic(self) -> bool:
        a, b = self.lengths
        if (a, b) != (3, self.n):
            return False
        if self.per_vertex:
            return all(any(self.cells[(v, ell)] is not NotFound for v in range(self.n)) for ell in range(a, b + 1))
        return self.complete

    @property
    def vertex_pancyclic(self) -> bool:
        return self.per_vertex and self.complete

    @property
    def exception_explains_gaps(self) -> bool:
        """Only odd lengths are missing and the family is the bipartite exception."""
        return bool(self.exception and self.exception.verdict) and all(ell % 2 for _, ell in self.missing())

    def to_json(self) -> dict:
        rows = []
        for (v, ell), value in sorted(self.cells.items(), key=lambda kv: (kv[0][0] if kv[0][0] is not None else -1, kv[0][1])):
            rows.append({"vertex": v, "length": ell, "cert": None if value is NotFound else value.to_json()})
        return {
            "n": self.n,
            "lengths": list(self.lengths),
            "per_vertex": self.per_vertex,
            "complete": self.complete,
            "exception": self.exception.to_json() if self.exception else None,
            "cells": rows,
        }


def pancyclicity_report(family: GraphFamily, lengths: tuple[int, int], per_vertex: bool = True) -> PancyclicityReport:
    a, b = lengths
    if not (3 <= a <= b <= family.n):
        raise UsageError(f"length range must satisfy 3 <= a <= b <= {family.n}, got [{a}, {b}]")
    report = PancyclicityReport(family.n, (a, b), per_vertex)
    for ell in range(a, b + 1):
        if per_vertex:
            for v in range(family.n):
                report.cells[(v, ell)] = find_rainbow_cycle(family, ell, v)
        else:
            report.cells[(None, ell)] = find_rainbow_cycle(family, ell)
    report.exception = detect_bipartite_exception(family)
    return report
