"""Graph families on a shared vertex set.

A family holds ``n`` graphs (the *colors*) on the vertices ``0..n-1``. Each
graph is stored as one adjacency bitmask per vertex, so neighbourhoods are
plain Python ints and intersections are ``&``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import FamilyFormatError, UsageError

INFINITY = math.inf


def iter_bits(mask: int):
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class SigmaWitness:
    """The pair ``u, v`` (non-adjacent in color ``i``) and the colors ``p, q``
    minimising ``d_p(u) + d_q(v)``."""

    u: int
    v: int
    i: int
    p: int
    q: int
    value: int

    def to_json(self) -> dict:
        return {"u": self.u, "v": self.v, "i": self.i, "p": self.p, "q": self.q, "value": self.value}

    def describe(self) -> str:
        return (
            f"x{self.u + 1}x{self.v + 1} missing from G{self.i + 1}; "
            f"d_{self.p + 1}(x{self.u + 1}) + d_{self.q + 1}(x{self.v + 1}) = {self.value}"
        )


class GraphFamily:
    """``n`` simple graphs on the common vertex set ``{0, ..., n-1}``.

    Instances are immutable; mutators such as :meth:`with_edge` return a new
    family.
    """

    __slots__ = ("n", "_rows", "_edge_colors", "_union", "_full")

    def __init__(self, n: int, rows: Sequence[Sequence[int]]):
        if n < 1:
            raise UsageError(f"family needs at least one vertex, got n={n}")
        if len(rows) != n:
            raise UsageError(f"expected {n} graphs, got {len(rows)}")
        full = (1 << n) - 1
        frozen = []
        for c, row in enumerate(rows):
            if len(row) != n:
                raise UsageError(f"graph {c} has {len(row)} rows, expected {n}")
            for v, mask in enumerate(row):
                if mask & ~full or mask >> v & 1:
                    raise UsageError(f"graph {c}: bad adjacency row for vertex {v}")
                for w in iter_bits(mask):
                    if not row[w] >> v & 1:
                        raise UsageError(f"graph {c}: adjacency not symmetric at ({v}, {w})")
            frozen.append(tuple(row))
        self.n = n
        self._rows = tuple(frozen)
        self._full = full
        # color bitmask per unordered pair, and union adjacency over all colors
        edge_colors = [[0] * n for _ in range(n)]
        union = [0] * n
        for c, row in enumerate(self._rows):
            bit = 1 << c
            for v, mask in enumerate(row):
                union[v] |= mask
                for w in iter_bits(mask):
                    edge_colors[v][w] |= bit
        self._edge_colors = tuple(tuple(r) for r in edge_colors)
        self._union = tuple(union)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edge_lists(cls, n: int, edge_lists: Sequence[Iterable[tuple[int, int]]]) -> "GraphFamily":
        if len(edge_lists) != n:
            raise UsageError(f"expected {n} edge lists, got {len(edge_lists)}")
        rows = []
        for c, edges in enumerate(edge_lists):
            row = [0] * n
            for u, v in edges:
                if not (0 <= u < n and 0 <= v < n) or u == v:
                    raise UsageError(f"graph {c}: invalid edge ({u}, {v})")
                row[u] |= 1 << v
                row[v] |= 1 << u
            rows.append(row)
        return cls(n, rows)

    @classmethod
    def uniform(cls, n: int, edges: Iterable[tuple[int, int]]) -> "GraphFamily":
        """n identical copies of one graph."""
        edges = list(edges)
        return cls.from_edge_lists(n, [edges] * n)

    @classmethod
    def complete(cls, n: int) -> "GraphFamily":
        return cls.uniform(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    @classmethod
    def empty(cls, n: int) -> "GraphFamily":
        return cls.uniform(n, [])

    def with_edge(self, color: int, u: int, v: int) -> "GraphFamily":
        self._check_color(color)
        self._check_pair(u, v)
        rows = [list(r) for r in self._rows]
        rows[color][u] |= 1 << v
        rows[color][v] |= 1 << u
        return GraphFamily(self.n, rows)

    def without_edge(self, color: int, u: int, v: int) -> "GraphFamily":
        self._check_color(color)
        self._check_pair(u, v)
        rows = [list(r) for r in self._rows]
        rows[color][u] &= ~(1 << v)
        rows[color][v] &= ~(1 << u)
        return GraphFamily(self.n, rows)

    def relabeled(self, vertex_perm: Sequence[int] | None = None, color_perm: Sequence[int] | None = None) -> "GraphFamily":
        """Apply ``v -> vertex_perm[v]`` to every graph and move graph ``c`` to ``color_perm[c]``."""
        n = self.n
        vp = list(range(n)) if vertex_perm is None else list(vertex_perm)
        cp = list(range(n)) if color_perm is None else list(color_perm)
        if sorted(vp) != list(range(n)) or sorted(cp) != list(range(n)):
            raise UsageError("permutations must be permutations of range(n)")
        lists: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for c in range(n):
            lists[cp[c]] = [(vp[u], vp[v]) for u, v in self.edges(c)]
        return GraphFamily.from_edge_lists(n, lists)

    # -- checks -----------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise UsageError(f"vertex id {v!r} out of range [0, {self.n})")

    def _check_color(self, c: int) -> None:
        if not isinstance(c, int) or not 0 <= c < self.n:
            raise UsageError(f"color id {c!r} out of range [0, {self.n})")

    def _check_pair(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise UsageError(f"expected two distinct vertices, got {u} twice")

    # -- queries ----------------------------------------------------------

    @property
    def all_colors(self) -> int:
        """Bitmask with every color set."""
        return self._full

    def row(self, color: int, v: int) -> int:
        """Neighbourhood of ``v`` in graph ``color`` as a bitmask."""
        return self._rows[color][v]

    def union_row(self, v: int) -> int:
        """Vertices adjacent to ``v`` in at least one graph."""
        return self._union[v]

    def has_edge(self, color: int, u: int, v: int) -> bool:
        return bool(self._rows[color][u] >> v & 1)

    def color_mask(self, u: int, v: int) -> int:
        """Bitmask of colors whose graph contains ``uv`` (no validation)."""
        return self._edge_colors[u][v]

    def edges(self, color: int) -> list[tuple[int, int]]:
        row = self._rows[color]
        return [(u, w) for u in range(self.n) for w in iter_bits(row[u] >> (u + 1) << (u + 1))]

    def edge_count(self, color: int) -> int:
        return sum(popcount(m) for m in self._rows[color]) // 2

    def graphs_identical(self) -> bool:
        return all(r == self._rows[0] for r in self._rows)

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphFamily) and self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        counts = [self.edge_count(c) for c in range(self.n)]
        return f"GraphFamily(n={self.n}, edges={counts})"

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "graphs": [{"edges": [list(e) for e in self.edges(c)]} for c in range(self.n)]}

    @classmethod
    def from_json(cls, data: object) -> "GraphFamily":
        if not isinstance(data, dict):
            raise FamilyFormatError("family: expected a JSON object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise FamilyFormatError(f"n: expected a positive integer, got {n!r}")
        graphs = data.get("graphs")
        if not isinstance(graphs, list):
            raise FamilyFormatError("graphs: expected a list")
        if len(graphs) != n:
            raise FamilyFormatError(f"graphs: expected exactly {n} entries, got {len(graphs)}")
        edge_lists = []
        for c, g in enumerate(graphs):
            where = f"graphs[{c}]"
            if not isinstance(g, dict) or not isinstance(g.get("edges"), list):
                raise FamilyFormatError(f"{where}.edges: expected a list")
            seen = set()
            edges = []
            for k, e in enumerate(g["edges"]):
                at = f"{where}.edges[{k}]"
                if (
                    not isinstance(e, list)
                    or len(e) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
                ):
                    raise FamilyFormatError(f"{at}: expected [u, v] with integer ids, got {e!r}")
                u, v = e
                if not (0 <= u < n and 0 <= v < n):
                    raise FamilyFormatError(f"{at}: vertex id out of range [0, {n})")
                if u >= v:
                    raise FamilyFormatError(f"{at}: expected u < v, got [{u}, {v}]")
                if (u, v) in seen:
                    raise FamilyFormatError(f"{at}: duplicate edge [{u}, {v}]")
                seen.add((u, v))
                edges.append((u, v))
            edge_lists.append(edges)
        return cls.from_edge_lists(n, edge_lists)

    @classmethod
    def load(cls, path: str | Path) -> "GraphFamily":
        text = Path(path).read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FamilyFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_json(data)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n")


def degree(family: GraphFamily, color: int, v: int) -> int:
    """``|N_{G_color}(v)|``."""
    family._check_color(color)
    family._check_vertex(v)
    return popcount(family.row(color, v))


def color_set(family: GraphFamily, u: int, v: int) -> frozenset[int]:
    """The colors ``i`` with ``uv`` in ``G_i``."""
    family._check_pair(u, v)
    return frozenset(iter_bits(family.color_mask(u, v)))


def is_strong_edge(family: GraphFamily, u: int, v: int) -> bool:
    family._check_pair(u, v)
    return family.color_mask(u, v) == family.all_colors


def sigma(family: GraphFamily) -> tuple[float, SigmaWitness | None]:
    """Ore-type minimum degree sum over pairs missing from some graph.

    Returns ``(INFINITY, None)`` when every pair is an edge of every graph.
    Because ``p`` and ``q`` range independently over all colors, the minimum
    for a fixed pair is the smallest degree of ``u`` plus the smallest degree
    of ``v``. Ties resolve to the lexicographically smallest ``(u, v, i, p, q)``.
    """
    n = family.n
    min_deg = []
    min_col = []
    for v in range(n):
        degs = [popcount(family.row(c, v)) for c in range(n)]
        d = min(degs)
        min_deg.append(d)
        min_col.append(degs.index(d))
    full = family.all_colors
    best: tuple[int, int, int] | None = None
    for u in range(n):
        for v in range(u + 1, n):
            if family.color_mask(u, v) == full:
                continue
            value = min_deg[u] + min_deg[v]
            if best is None or value < best[0]:
                best = (value, u, v)
    if best is None:
        return INFINITY, None
    value, u, v = best
    missing = full & ~family.color_mask(u, v)
    i = (missing & -missing).bit_length() - 1
    return value, SigmaWitness(u, v, i, min_col[u], min_col[v], value)


def sigma_value(family: GraphFamily) -> float:
    return sigma(family)[0]


def ore_sigma_single(family: GraphFamily, color: int) -> float:
    """Classical Ore quantity of one graph: min ``d(u)+d(v)`` over its non-edges."""
    n = family.n
    degs = [popcount(family.row(color, v)) for v in range(n)]
    best = INFINITY
    for u in range(n):
        non = ~family.row(color, u) & family.all_colors & ~(1 << u)
        for v in iter_bits(non >> (u + 1) << (u + 1)):
            best = min(best, degs[u] + degs[v])
    return best
