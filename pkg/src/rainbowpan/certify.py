"""Rainbow path and cycle certificates and their verification.

A certificate is a vertex sequence plus one color per edge. ``colors[k]``
belongs to the edge ``vertices[k] -> vertices[k+1]`` (wrapping around for
cycles). Verification never raises on a bad certificate: every defect is
returned as a :class:`Violation`.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import UsageError
from .family import GraphFamily


@dataclass(frozen=True)
class Violation:
    kind: str
    positions: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return self.message


def _as_int_tuple(values, name: str) -> tuple[int, ...]:
    if not isinstance(values, (list, tuple)):
        raise UsageError(f"{name}: expected a list of integers")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
        raise UsageError(f"{name}: expected a list of integers")
    return tuple(values)


@dataclass(frozen=True)
class _Cert:
    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "colors", tuple(self.colors))

    def __len__(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "colors": list(self.colors)}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise UsageError("certificate: expected a JSON object")
        return cls(_as_int_tuple(data.get("vertices"), "vertices"), _as_int_tuple(data.get("colors"), "colors"))

    @classmethod
    def load(cls, path: str | Path):
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: line {exc.lineno}: {exc.msg}") from None
        return cls.from_json(data)


@dataclass(frozen=True)
class RainbowCycleCert(_Cert):
    """Rainbow cycle ``vertices[0] vertices[1] ... vertices[-1] vertices[0]``."""

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def rotated(self, shift: int) -> "RainbowCycleCert":
        """Same cycle started at ``vertices[shift]``."""
        k = shift % len(self.vertices)
        return RainbowCycleCert(self.vertices[k:] + self.vertices[:k], self.colors[k:] + self.colors[:k])

    def reversed(self) -> "RainbowCycleCert":
        """Same cycle traversed the other way, still starting at ``vertices[0]``."""
        ell = len(self.vertices)
        vs = tuple(self.vertices[-k % ell] for k in range(ell))
        cs = tuple(self.colors[(-k - 1) % ell] for k in range(ell))
        return RainbowCycleCert(vs, cs)

    def starting_at(self, v: int) -> "RainbowCycleCert":
        return self.rotated(self.vertices.index(v))

    def describe(self) -> str:
        """1-based rendering, e.g. ``x1 -G2- x3 -G1- x2 -G3- x1``."""
        parts = []
        for (u, _), c in zip(self.edges(), self.colors):
            parts.append(f"x{u + 1} -G{c + 1}-")
        parts.append(f"x{self.vertices[0] + 1}")
        return " ".join(parts)


@dataclass(frozen=True)
class RainbowPathCert(_Cert):
    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[k + 1]) for k in range(len(vs) - 1)]

    def describe(self) -> str:
        parts = [f"x{u + 1} -G{c + 1}-" for (u, _), c in zip(self.edges(), self.colors)]
        parts.append(f"x{self.vertices[-1] + 1}")
        return " ".join(parts)


def _duplicates(seq: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    where = defaultdict(list)
    for k, x in enumerate(seq):
        where[x].append(k)
    return [(x, tuple(ks)) for x, ks in where.items() if len(ks) > 1]


def _check(family: GraphFamily, vertices, colors, edges, min_vertices: int, expected_colors: int) -> list[Violation]:
    n = family.n
    out: list[Violation] = []
    if len(vertices) < min_vertices:
        out.append(Violation("too-short", (), f"needs at least {min_vertices} vertices, got {len(vertices)}"))
    if len(colors) != expected_colors:
        out.append(
            Violation("length mismatch", (), f"length mismatch: {len(colors)} colors for {expected_colors} edges")
        )
    for k, v in enumerate(vertices):
        if not 0 <= v < n:
            out.append(Violation("vertex out of range", (k,), f"vertex out of range at position {k}: {v}"))
    for k, c in enumerate(colors):
        if not 0 <= c < n:
            out.append(Violation("color out of range", (k,), f"color out of range at position {k}: {c}"))
    for v, ks in _duplicates(vertices):
        pos = ",".join(map(str, ks))
        out.append(Violation("duplicate vertex", ks, f"duplicate vertex at positions {pos}"))
    for c, ks in _duplicates(colors):
        pos = ",".join(map(str, ks))
        out.append(Violation("duplicate color", ks, f"duplicate color at positions {pos}"))
    for k, ((u, v), c) in enumerate(zip(edges, colors)):
        if not (0 <= u < n and 0 <= v < n and 0 <= c < n):
            continue
        if u == v or not family.has_edge(c, u, v):
            out.append(
                Violation("missing edge", (k,), f"edge not in assigned graph at position {k}: ({u}, {v}) in G_{c}")
            )
    return out


def verify_cycle_cert(family: GraphFamily, cert: RainbowCycleCert) -> list[Violation]:
    """All violations of the rainbow-cycle invariants; empty list means valid."""
    vs = tuple(cert.vertices)
    edges = [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))] if vs else []
    return _check(family, vs, tuple(cert.colors), edges, 3, len(vs))


def verify_path_cert(family: GraphFamily, cert: RainbowPathCert) -> list[Violation]:
    vs = tuple(cert.vertices)
    edges = [(vs[k], vs[k + 1]) for k in range(len(vs) - 1)]
    return _check(family, vs, tuple(cert.colors), edges, 2, max(len(vs) - 1, 0))


def is_valid_cycle(family: GraphFamily, cert: RainbowCycleCert) -> bool:
    return not verify_cycle_cert(family, cert)
