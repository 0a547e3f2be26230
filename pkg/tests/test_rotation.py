import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_family, reference_reroute_offsets, relabel_case, reroute_case
from rainbowpan import (
    ExceptionEvidence,
    GraphFamily,
    NotApplicable,
    NotFound,
    PreconditionError,
    RainbowCycleCert,
    UsageError,
    chord_pair_reroute,
    constructive_vertex_pancyclic,
    find_c4_through,
    find_c5_through,
    find_rainbow_cycle,
    make_balanced_bipartite_family,
    reduce_by_one,
    reduce_by_two,
    strong_edge_relabel,
    triangle_via_common_neighborhood,
)
from rainbowpan.certify import is_valid_cycle
from rainbowpan.extremal import evidence_holds
from rainbowpan.harness import GeneratorConfig, generate_family_with_sigma_at_least
from rainbowpan.oracle import naive_cycle_cover
from rainbowpan import rotation


def identity_ham(n):
    return RainbowCycleCert(tuple(range(n)), tuple(range(n)))


def edge_colors(cert):
    return {frozenset(e): c for e, c in zip(cert.edges(), cert.colors)}


def sigma_family(n, seed, mode="repair-to-threshold"):
    return generate_family_with_sigma_at_least(GeneratorConfig(n, n, seed, 20_000, mode))


# -- chord-pair reroute ------------------------------------------------------------


def test_reroute_k10_smallest_j():
    fam = GraphFamily.complete(10)
    ham = identity_ham(10)
    # dropping vertices 1 and 2 frees colors 0, 1, 2
    out = chord_pair_reroute(fam, ham, 0, 3, 0, 2)
    assert is_valid_cycle(fam, out) and out.length == 8
    offsets = reference_reroute_offsets(fam, ham, 0, 0, 2)
    assert out.vertices[:2] == (0, offsets[0])
    assert out.vertices == (0, 4, 3, 5, 6, 7, 8, 9)


def test_reroute_equal_colors_is_usage_error():
    with pytest.raises(UsageError, match="c1 and c2 must differ"):
        chord_pair_reroute(GraphFamily.complete(10), identity_ham(10), 0, 3, 1, 1)


@pytest.mark.parametrize(
    "args, fragment",
    [((0, 4, 0, 2), "a_pos \\+ 3"), ((0, 3, 0, 5), "retained"), ((0, 3, 0, 10), "out of range")],
)
def test_reroute_precondition_messages(args, fragment):
    with pytest.raises(UsageError, match=fragment):
        chord_pair_reroute(GraphFamily.complete(10), identity_ham(10), *args)


def test_reroute_rejects_short_and_invalid_cycles():
    with pytest.raises(UsageError):
        chord_pair_reroute(GraphFamily.complete(4), identity_ham(4), 0, 3, 0, 1)
    with pytest.raises(UsageError):
        chord_pair_reroute(GraphFamily.empty(6), identity_ham(6), 0, 3, 0, 1)


def test_reroute_k33_never_applies(k33):
    # every rainbow C_6 of K_{3,3} and every admissible anchor and color pair
    seen = 0
    for cyc in _all_rainbow_hamiltonians(k33, limit=40):
        for a in range(6):
            retained = {cyc.colors[(a + o) % 6] for o in range(3, 6)}
            pool = [c for c in range(6) if c not in retained]
            for c1 in pool:
                for c2 in pool:
                    if c1 != c2:
                        out = chord_pair_reroute(k33, cyc, a, (a + 3) % 6, c1, c2)
                        assert isinstance(out, NotApplicable) and out.index_sets is not None
                        seen += 1
    assert seen > 0


def _all_rainbow_hamiltonians(fam, limit):
    import itertools

    found = []
    for perm in itertools.permutations(range(1, fam.n)):
        order = (0,) + perm
        if any(not fam.color_mask(order[k], order[(k + 1) % fam.n]) for k in range(fam.n)):
            continue
        for shift in range(fam.n):
            cert = RainbowCycleCert(order, tuple((k + shift) % fam.n for k in range(fam.n)))
            if is_valid_cycle(fam, cert):
                found.append(cert)
        if len(found) >= limit:
            break
    return found


@given(st.integers(0, 2**32))
@settings(max_examples=200, deadline=None)
def test_reroute_soundness(seed):
    fam, cyc, a, b, c1, c2 = reroute_case(random.Random(seed))
    out = chord_pair_reroute(fam, cyc, a, b, c1, c2)
    offsets = reference_reroute_offsets(fam, cyc, a, c1, c2)
    if not out:
        assert offsets == []
        sets = out.index_sets
        assert not (sets.counting_hypothesis and not sets.left & sets.right)
        return
    ell = cyc.length
    assert is_valid_cycle(fam, out) and out.length == ell - 2
    assert out.vertices[:2] == (cyc.vertices[a], cyc.vertices[(a + offsets[0]) % ell])
    # retained edges keep their colors; the two chords carry c1 and c2
    before, after = edge_colors(cyc), edge_colors(out)
    new = {e: c for e, c in after.items() if e not in before or before[e] != c}
    assert sorted(new.values()) == sorted((c1, c2))
    kept = [e for e in after if e not in new]
    assert all(after[e] == before[e] for e in kept) and len(kept) == ell - 4


def test_pigeonhole_fires_on_forged_sets():
    fam = GraphFamily.complete(8)
    sets = rotation._index_sets(fam, identity_ham(8), 0, 3, 0, 1)
    assert sets.counting_hypothesis and sets.left & sets.right
    forged = rotation.ChordIndexSets(
        sets.cycle, 0, 3, 0, 1, frozenset({4, 5, 6, 7}), frozenset({3}), frozenset({3, 4, 5, 6}), sets.admissible
    )
    with pytest.raises(rotation.PigeonholeViolation):
        rotation._check_pigeonhole(forged)


# -- strong-edge relabel -----------------------------------------------------------


def test_relabel_identity():
    fam = GraphFamily.complete(5)
    cyc = identity_ham(5)
    assert strong_edge_relabel(fam, cyc, 2, 2) is cyc


def test_relabel_k5_example():
    fam = GraphFamily.complete(5)
    out = strong_edge_relabel(fam, identity_ham(5), 0, 3)
    assert out.vertices == (0, 1, 2, 3, 4)
    assert out.colors[0] == 3 and is_valid_cycle(fam, out)
    # target sat on edge 3; the shorter way round is backwards through edge 4
    assert out.colors == (3, 1, 2, 4, 0)


def test_relabel_requires_strong_edges():
    fam = GraphFamily.complete(5).without_edge(2, 0, 1)
    with pytest.raises(PreconditionError, match="edge 0"):
        strong_edge_relabel(fam, identity_ham(5), 0, 3)


@given(st.integers(0, 2**32))
@settings(max_examples=300, deadline=None)
def test_relabel_soundness(seed):
    fam, cyc, pos, target = relabel_case(random.Random(seed))
    out = strong_edge_relabel(fam, cyc, pos, target)
    assert is_valid_cycle(fam, out)
    assert out.vertices == cyc.vertices and out.colors[pos] == target
    ell = cyc.length
    for k in range(ell):
        if k == pos:
            continue
        allowed = {cyc.colors[k], cyc.colors[(k - 1) % ell], cyc.colors[(k + 1) % ell]}
        assert out.colors[k] in allowed
    assert set(out.colors) <= set(cyc.colors) | {target}


# -- reductions ---------------------------------------------------------------


def test_reduce_by_one_k44_exception(k44):
    ham = find_rainbow_cycle(k44, 8)
    for v in range(8):
        ev = reduce_by_one(k44, ham, v)
        assert isinstance(ev, ExceptionEvidence) and ev.verdict
        assert ev.bipartition == ((0, 1, 2, 3), (4, 5, 6, 7))
        assert evidence_holds(k44, ev)


def test_reduce_by_one_k5():
    fam = GraphFamily.complete(5)
    out = reduce_by_one(fam, identity_ham(5), 0)
    assert out.length == 4 and 0 in out.vertices and is_valid_cycle(fam, out)


def test_reduce_by_one_random_n7():
    fam = sigma_family(7, 11)
    ham = find_rainbow_cycle(fam, 7)
    for v in range(7):
        out = reduce_by_one(fam, ham, v)
        assert out.length == 6 and v in out.vertices and is_valid_cycle(fam, out)


def test_reduce_by_one_preconditions(split7):
    with pytest.raises(UsageError):
        reduce_by_one(GraphFamily.complete(5), RainbowCycleCert((0, 1, 2), (0, 1, 2)), 0)
    low = GraphFamily.empty(5).with_edge(0, 0, 1)
    with pytest.raises(UsageError):
        reduce_by_one(low, identity_ham(5), 0)


def test_reduce_by_one_sigma_below_n():
    fam = GraphFamily.uniform(5, [(k, (k + 1) % 5) for k in range(5)])
    with pytest.raises(PreconditionError):
        reduce_by_one(fam, identity_ham(5), 0)


def test_reduce_by_two_k10():
    fam = GraphFamily.complete(10)
    out = reduce_by_two(fam, find_rainbow_cycle(fam, 10, 0), 0)
    assert out.length == 8 and 0 in out.vertices and is_valid_cycle(fam, out)


def test_reduce_by_two_k44(k44):
    out = reduce_by_two(k44, find_rainbow_cycle(k44, 8, 0), 0)
    assert out.length == 6 and 0 in out.vertices and is_valid_cycle(k44, out)


def test_reduce_by_two_length_seven():
    fam = GraphFamily.complete(9)
    with pytest.raises(UsageError, match=">= 8"):
        reduce_by_two(fam, find_rainbow_cycle(fam, 7, 0), 0)


def test_reduce_by_two_vertex_not_on_cycle():
    fam = GraphFamily.complete(9)
    cyc = find_rainbow_cycle(fam, 8, 0)
    off = next(v for v in range(9) if v not in cyc.vertices)
    with pytest.raises(UsageError):
        reduce_by_two(fam, cyc, off)


# -- short cycles ---------------------------------------------------------------


def test_c5_c4_complete():
    fam = GraphFamily.complete(8)
    c5 = find_c5_through(fam, 0)
    c4 = find_c4_through(fam, 0)
    assert c5.length == 5 and c4.length == 4
    assert all(0 in c.vertices and is_valid_cycle(fam, c) for c in (c5, c4))


def test_c5_c4_bipartite(k44):
    assert isinstance(find_c5_through(k44, 0), NotApplicable)
    assert find_rainbow_cycle(k44, 5, 0) is NotFound
    c4 = find_c4_through(k44, 0)
    assert c4.length == 4 and 0 in c4.vertices and is_valid_cycle(k44, c4)


def test_c4_split_apex(split7):
    c4 = find_c4_through(split7, 0)
    assert c4.length == 4 and 0 in c4.vertices and is_valid_cycle(split7, c4)


def test_c5_from_supplied_c7():
    fam = GraphFamily.complete(9)
    c7 = find_rainbow_cycle(fam, 7, 3)
    out = find_c5_through(fam, 3, c7)
    assert out.length == 5 and 3 in out.vertices and is_valid_cycle(fam, out)
    with pytest.raises(UsageError):
        find_c5_through(fam, 3, find_rainbow_cycle(fam, 6, 3))


# -- triangle ---------------------------------------------------------------


def test_triangle_k3():
    fam = GraphFamily.complete(3)
    t = triangle_via_common_neighborhood(fam, 0, 1)
    assert t.vertices[:2] == (0, 1) and is_valid_cycle(fam, t)


def test_triangle_split_apex(split7):
    for y in range(1, 7):
        assert triangle_via_common_neighborhood(split7, 0, y) is NotFound


def test_triangle_k33(k33):
    for x in range(6):
        for y in range(6):
            if x != y:
                assert triangle_via_common_neighborhood(k33, x, y) is NotFound


def test_triangle_same_vertex():
    with pytest.raises(UsageError):
        triangle_via_common_neighborhood(GraphFamily.complete(3), 1, 1)


def test_triangle_prefers_color_missing_xy():
    # xy lives in G_0 only; the chord z-x must use a color that misses xy
    n = 4
    lists = [[(0, 1), (0, 2), (1, 2)], [(0, 2), (1, 2)], [(0, 2), (1, 2)], []]
    fam = GraphFamily.from_edge_lists(n, lists)
    t = triangle_via_common_neighborhood(fam, 0, 1)
    assert t.colors[0] == 0 and not fam.has_edge(t.colors[2], 0, 1)


# -- driver ---------------------------------------------------------------------


def test_driver_k8():
    fam = GraphFamily.complete(8)
    res = constructive_vertex_pancyclic(fam, 0)
    assert res.outcome == "full" and sorted(res.certs) == list(range(3, 9))
    assert all(is_valid_cycle(fam, c) and 0 in c.vertices and c.length == ell for ell, c in res.certs.items())


@pytest.mark.parametrize("n", [6, 8])
def test_driver_bipartite(n):
    fam = make_balanced_bipartite_family(n)
    res = constructive_vertex_pancyclic(fam, 0)
    assert res.outcome == "exception" and res.exception.verdict
    assert sorted(res.certs) == list(range(4, n + 1, 2))
    assert evidence_holds(fam, res.exception)


def test_driver_sigma_below_n():
    with pytest.raises(PreconditionError):
        constructive_vertex_pancyclic(GraphFamily.empty(5), 0)


def test_driver_oracle_only_matches():
    fam = sigma_family(9, 4)
    a = constructive_vertex_pancyclic(fam, 2)
    b = constructive_vertex_pancyclic(fam, 2, oracle_only=True)
    assert sorted(a.certs) == sorted(b.certs)


@pytest.mark.parametrize("seed", range(12))
def test_driver_random_agrees_with_naive(seed):
    n = 5 + seed % 4
    mode = "perturb-extremal" if seed % 3 == 1 and n % 2 == 0 else "repair-to-threshold"
    fam = sigma_family(n, seed, mode)
    covers = {ell: naive_cycle_cover(fam, ell) for ell in range(3, n + 1)}
    for v in range(n):
        res = constructive_vertex_pancyclic(fam, v)
        assert res.outcome in ("full", "exception")
        for ell in range(3, n + 1):
            assert (ell in res.certs) == (v in covers[ell])
        if res.exception and res.exception.verdict:
            assert evidence_holds(fam, res.exception)


def test_driver_large_n_uses_constructive_branches():
    fam = sigma_family(10, 2, "perturb-extremal")
    res = constructive_vertex_pancyclic(fam, 0)
    assert res.outcome == "full"
    assert any(src not in ("oracle", "oracle:hamiltonian") for src in res.sources.values())


# -- internal branches: whatever they emit must be a valid shorter cycle ---------------


def _random_sigma_cycle(rng, ell_min):
    n = rng.randint(max(ell_min, 6), 10)
    fam = random_family(rng, n, rng.choice([0.35, 0.5, 0.7]))
    ell = rng.randint(ell_min, n)
    return fam, find_rainbow_cycle(fam, ell, rng.randrange(n))


@pytest.mark.parametrize(
    "branch, drop",
    [
        (rotation._skip_one, 1),
        (rotation._span_two_reroutes, 1),
        (rotation._strong_relabel_shortcut, 1),
        (rotation._pivot_paths, 1),
        (rotation._direct_chords, 2),
        (rotation._chord_pairs, 2),
        (rotation._detours, 2),
    ],
)
def test_branches_are_sound(branch, drop):
    rng = random.Random(branch.__name__)
    hits = 0
    for _ in range(150):
        fam, cyc = _random_sigma_cycle(rng, 5 if drop == 1 else 6)
        if not cyc:
            continue
        if branch is rotation._strong_relabel_shortcut:
            fam = _strengthen(fam, cyc)
        v = cyc.vertices[rng.randrange(cyc.length)]
        out = branch(fam, cyc.starting_at(v), v)
        if out:
            hits += 1
            assert is_valid_cycle(fam, out) and out.length == cyc.length - drop and out.vertices[0] == v
    assert hits > 0


def _strengthen(fam, cyc):
    rows = [[fam.row(c, v) for v in range(fam.n)] for c in range(fam.n)]
    for u, w in cyc.edges():
        for c in range(fam.n):
            rows[c][u] |= 1 << w
            rows[c][w] |= 1 << u
    return GraphFamily(fam.n, rows)


def test_detour_through_outside_vertices():
    # cycle 0..7 in a family with no chords at all; 8 and 9 sit outside
    n = 10
    cyc_edges = [(k, (k + 1) % 8) for k in range(8)]
    extra = [(0, 8), (3, 8), (4, 9), (7, 9)]
    fam = GraphFamily.uniform(n, [tuple(sorted(e)) for e in cyc_edges + extra])
    cyc = RainbowCycleCert(tuple(range(8)), tuple(range(8)))
    assert rotation._direct_chords(fam, cyc, 0) is None
    assert rotation._chord_pairs(fam, cyc, 0) is None
    out = rotation._detours(fam, cyc, 0)
    assert out.length == 6 and is_valid_cycle(fam, out)
    assert set(out.vertices) == {0, 8, 3, 4, 9, 7}


def test_detour_over_four_edge_arc():
    n = 9
    cyc_edges = [(k, (k + 1) % 8) for k in range(8)]
    fam = GraphFamily.uniform(n, [tuple(sorted(e)) for e in cyc_edges + [(2, 8), (6, 8)]])
    cyc = RainbowCycleCert(tuple(range(8)), tuple(range(8)))
    out = rotation._detours(fam, cyc, 0)
    assert out.length == 6 and is_valid_cycle(fam, out) and 8 in out.vertices


def test_pivot_path_rotation():
    # C_6 with a single chord x_1 x_5 and x_4 x_0 closing the rotated path
    n = 6
    edges = [(k, (k + 1) % 6) for k in range(6)] + [(1, 5), (0, 3)]
    fam = GraphFamily.uniform(n, [tuple(sorted(e)) for e in edges])
    cyc = RainbowCycleCert(tuple(range(6)), tuple(range(6)))
    out = rotation._pivot_paths(fam, cyc, 0)
    assert out.length == 5 and is_valid_cycle(fam, out)


def test_exception_parity_pattern(k44):
    # along any rainbow Hamiltonian cycle of the exception, x_i is adjacent
    # in every color exactly to the vertices at positions of the other parity
    for cyc in _all_rainbow_hamiltonians(k44, limit=20):
        pos = {v: k for k, v in enumerate(cyc.vertices)}
        for v in range(8):
            for c in range(8):
                nbrs = {w for w in range(8) if k44.has_edge(c, v, w)}
                assert nbrs == {w for w in range(8) if (pos[w] - pos[v]) % 2}
