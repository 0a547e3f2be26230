"""Shared fixtures, random families and slow reference implementations.

The reference helpers here deliberately avoid the package's bitmask code:
they work from plain Python sets of frozenset edges.
"""

import itertools
import random

import pytest
from hypothesis import strategies as st

from rainbowpan import GraphFamily, make_balanced_bipartite_family, make_joined_split_family


def random_family(rng: random.Random, n: int, density: float = 0.5) -> GraphFamily:
    lists = []
    for _ in range(n):
        lists.append([(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < density])
    return GraphFamily.from_edge_lists(n, lists)


def edge_sets(family: GraphFamily) -> list[set]:
    return [{frozenset(e) for e in family.to_json()["graphs"][c]["edges"]} for c in range(family.n)]


def brute_degree(edges: set, v: int) -> int:
    return sum(1 for e in edges if v in e)


def brute_sigma(family: GraphFamily) -> float:
    """Literal minimum over (u, v, i, p, q) with uv missing from G_i."""
    n = family.n
    sets = edge_sets(family)
    best = float("inf")
    for u, v in itertools.permutations(range(n), 2):
        for i in range(n):
            if frozenset((u, v)) in sets[i]:
                continue
            for p in range(n):
                for q in range(n):
                    best = min(best, brute_degree(sets[p], u) + brute_degree(sets[q], v))
    return best


def brute_cycle_exists(family: GraphFamily, length: int, through: int | None = None) -> bool:
    """Every vertex tuple and every color choice per edge; no pruning."""
    n = family.n
    sets = edge_sets(family)
    for cyc in itertools.permutations(range(n), length):
        if through is not None and through not in cyc:
            continue
        if cyc[0] != min(cyc):
            continue
        pairs = [frozenset((cyc[k], cyc[(k + 1) % length])) for k in range(length)]
        choices = [[c for c in range(n) if pairs[k] in sets[c]] for k in range(length)]
        if any(len(set(combo)) == length for combo in itertools.product(*choices)):
            return True
    return False


@st.composite
def families(draw, n_min=3, n_max=6):
    n = draw(st.integers(n_min, n_max))
    pairs = list(itertools.combinations(range(n), 2))
    lists = [[p for p in pairs if draw(st.booleans())] for _ in range(n)]
    return GraphFamily.from_edge_lists(n, lists)


@pytest.fixture
def k33():
    return make_balanced_bipartite_family(6)


@pytest.fixture
def k44():
    return make_balanced_bipartite_family(8)


@pytest.fixture
def split7():
    return make_joined_split_family(7)


# -- random inputs for the rotation operations ------------------------------------


def random_cycle(rng: random.Random, family: GraphFamily, ell: int):
    from rainbowpan import find_rainbow_cycle

    cert = find_rainbow_cycle(family, ell, rng.randrange(family.n))
    return cert.rotated(rng.randrange(ell)) if cert else None


def reroute_case(rng: random.Random, n_range=(5, 9)):
    """(family, cycle, a_pos, b_pos, c1, c2) satisfying every precondition of the reroute."""
    while True:
        n = rng.randint(*n_range)
        fam = random_family(rng, n, rng.choice([0.5, 0.7, 0.9]))
        ell = rng.randint(5, n)
        cyc = random_cycle(rng, fam, ell)
        if cyc is None:
            continue
        a = rng.randrange(ell)
        retained = {cyc.colors[(a + o) % ell] for o in range(3, ell)}
        pool = [c for c in range(n) if c not in retained]
        c1, c2 = rng.sample(pool, 2)
        return fam, cyc, a, (a + 3) % ell, c1, c2


def reference_reroute_offsets(family, cyc, a, c1, c2) -> list[int]:
    """Offsets j (from a) where x_a x_j is in G_c1 and x_b x_{j+1} is in G_c2."""
    ell = cyc.length
    x = [cyc.vertices[(a + o) % ell] for o in range(ell)]
    sets = edge_sets(family)
    return [
        j for j in range(4, ell - 1)
        if frozenset((x[0], x[j])) in sets[c1] and frozenset((x[3], x[j + 1])) in sets[c2]
    ]


def relabel_case(rng: random.Random, n_range=(3, 9)):
    """(family, cycle, edge_pos, target) with every cycle edge strong."""
    from rainbowpan import RainbowCycleCert

    n = rng.randint(*n_range)
    fam = random_family(rng, n, rng.choice([0.3, 0.6, 0.9]))
    ell = rng.randint(3, n)
    order = rng.sample(range(n), ell)
    rows = [[fam.row(c, v) for v in range(n)] for c in range(n)]
    for k in range(ell):
        u, v = order[k], order[(k + 1) % ell]
        for c in range(n):
            rows[c][u] |= 1 << v
            rows[c][v] |= 1 << u
    fam = GraphFamily(n, rows)
    cyc = RainbowCycleCert(order, rng.sample(range(n), ell))
    return fam, cyc, rng.randrange(ell), rng.randrange(n)


# -- acceptance summary ---------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
