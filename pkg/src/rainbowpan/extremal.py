"""The two extremal families and the detector for the bipartite exception."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .family import GraphFamily, iter_bits


@dataclass(frozen=True)
class ExceptionEvidence:
    """Outcome of the structural check for ``G_1 = ... = G_n = K_{n/2,n/2}``.

    ``bipartition`` is only set when ``verdict`` is true; ``detail`` names the
    first discrepancy otherwise.
    """

    verdict: bool
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "bipartition": [list(s) for s in self.bipartition] if self.bipartition else None,
            "detail": self.detail,
        }


def make_balanced_bipartite_family(n: int) -> GraphFamily:
    if not isinstance(n, int) or n < 4 or n % 2:
        raise UsageError(f"balanced bipartite family needs an even n >= 4, got {n}")
    h = n // 2
    return GraphFamily.uniform(n, [(u, v) for u in range(h) for v in range(h, n)])


def split_parameters(n: int) -> tuple[int, int]:
    """``(t, m)`` for the joined split family: ``t = (n + 2) / 3``, ``m = (2n - 5) / 3``."""
    if not isinstance(n, int) or n < 7 or n % 3 != 1:
        raise UsageError(f"joined split family needs n = 1 (mod 3) and n >= 7, got {n}")
    return (n + 2) // 3, (2 * n - 5) // 3


def make_joined_split_family(n: int) -> GraphFamily:
    """n copies of an independent t-set joined to (apex + disjoint m-clique).

    Layout: apex = 0, independent set = 1..t, clique = t+1..n-1.
    """
    t, m = split_parameters(n)
    indep = range(1, t + 1)
    clique = range(t + 1, n)
    edges = [(0, a) for a in indep]
    edges += [(a, b) for a in indep for b in clique]
    edges += [(a, b) for a in clique for b in clique if a < b]
    return GraphFamily.uniform(n, edges)


def detect_bipartite_exception(family: GraphFamily) -> ExceptionEvidence:
    n = family.n
    if n % 2:
        return ExceptionEvidence(False, detail=f"n={n} is odd")
    for c in range(1, n):
        for v in range(n):
            if family.row(c, v) != family.row(0, v):
                return ExceptionEvidence(False, detail=f"graphs not identical: G_{c} differs from G_0 at vertex {v}")
    full = family.all_colors
    side_b = family.row(0, 0)
    side_a = full & ~side_b
    for v in iter_bits(side_a):
        if family.row(0, v) != side_b:
            return ExceptionEvidence(False, detail=f"non-bipartite-complete: vertex {v} is not joined exactly to the far side")
    for v in iter_bits(side_b):
        if family.row(0, v) != side_a:
            return ExceptionEvidence(False, detail=f"non-bipartite-complete: vertex {v} is not joined exactly to the far side")
    a, b = tuple(iter_bits(side_a)), tuple(iter_bits(side_b))
    if len(a) != len(b):
        return ExceptionEvidence(False, detail=f"complete bipartite but unbalanced ({len(a)}, {len(b)})")
    return ExceptionEvidence(True, (a, b), "all graphs equal K_{n/2,n/2}")


def evidence_holds(family: GraphFamily, evidence: ExceptionEvidence) -> bool:
    """Edge-by-edge check that every graph is complete bipartite on the recorded sides."""
    if not evidence.verdict or evidence.bipartition is None:
        return False
    a, b = evidence.bipartition
    n = family.n
    if len(a) != n // 2 or len(b) != n // 2 or sorted(a + b) != list(range(n)):
        return False
    side = {v: 0 for v in a} | {v: 1 for v in b}
    for c in range(n):
        for u in range(n):
            for v in range(u + 1, n):
                if family.has_edge(c, u, v) != (side[u] != side[v]):
                    return False
    return True
