"""Constructive cycle shortening for families with ``sigma >= n``.

The procedures here turn the counting arguments behind the vertex-pancyclicity
theorem into searches: each branch either produces the shorter rainbow cycle
the argument promises, or reports that its hypothesis failed. When every
branch fails, :func:`constructive_vertex_pancyclic` falls back to the oracle.

Cycles are handled *anchored*: rotated so the vertex of interest sits at
offset 0, with ``colors[k]`` on the edge from offset ``k`` to ``k + 1``.
Every cycle this module returns has been re-verified against the family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from ._matching import assign_colors
from .certify import RainbowCycleCert, verify_cycle_cert
from .errors import PreconditionError, UsageError
from .extremal import ExceptionEvidence, detect_bipartite_exception, evidence_holds
from .family import GraphFamily, iter_bits, sigma
from .oracle import NotFound, find_rainbow_cycle


@dataclass(frozen=True)
class ChordIndexSets:
    """Pigeonhole index sets for one chord-pair reroute.

    Positions are absolute indices into ``cycle``. ``left`` holds ``j`` with
    ``x_a x_j`` in ``G_c1``; ``right`` holds ``j`` with ``x_b x_{j+1}`` in
    ``G_c2``. Both live inside ``universe``, so
    ``|left| + |right| > |universe|`` forces a common position.
    """

    cycle: RainbowCycleCert
    a_pos: int
    b_pos: int
    c1: int
    c2: int
    left: frozenset[int]
    right: frozenset[int]
    universe: frozenset[int]
    # positions where a reroute is geometrically possible
    admissible: frozenset[int] = frozenset()

    @property
    def common(self) -> frozenset[int]:
        return self.left & self.right & self.admissible

    @property
    def counting_hypothesis(self) -> bool:
        return len(self.left) + len(self.right) > len(self.universe)


@dataclass(frozen=True)
class NotApplicable:
    """No branch produced a cycle. Falsy, so ``if result:`` reads naturally."""

    reason: str
    trace: tuple[str, ...] = ()
    index_sets: ChordIndexSets | None = None

    def __bool__(self) -> bool:
        return False


class PigeonholeViolation(AssertionError):
    """The counting hypothesis held but the index sets were disjoint."""


# -- small helpers --------------------------------------------------------


def _mask(colors) -> int:
    m = 0
    for c in colors:
        m |= 1 << c
    return m


def _emit(family: GraphFamily, vertices, colors) -> RainbowCycleCert:
    cert = RainbowCycleCert(tuple(vertices), tuple(colors))
    problems = verify_cycle_cert(family, cert)
    if problems:
        raise AssertionError(f"internal: constructed cycle is not rainbow: {problems[0]}")
    return cert


def _complete(family: GraphFamily, vertices, colors, anchor: int) -> RainbowCycleCert | None:
    """Fill ``None`` colors with distinct unused colors; rotate to ``anchor``."""
    ell = len(vertices)
    fixed = _mask(c for c in colors if c is not None)
    pool = family.all_colors & ~fixed
    open_slots = [k for k, c in enumerate(colors) if c is None]
    masks = [family.color_mask(vertices[k], vertices[(k + 1) % ell]) & pool for k in open_slots]
    chosen = assign_colors(masks, family.n)
    if chosen is None:
        return None
    out = list(colors)
    for k, c in zip(open_slots, chosen):
        out[k] = c
    return _emit(family, vertices, out).starting_at(anchor)


def _require_valid(family: GraphFamily, cycle: RainbowCycleCert, what: str = "cycle") -> None:
    problems = verify_cycle_cert(family, cycle)
    if problems:
        raise UsageError(f"{what} is not a valid rainbow cycle: {problems[0]}")


def _require_sigma(family: GraphFamily) -> None:
    value, _ = sigma(family)
    if value < family.n:
        raise PreconditionError(f"sigma = {value} < n = {family.n}")


def _require_through(cycle: RainbowCycleCert, v: int) -> None:
    if v not in cycle.vertices:
        raise UsageError(f"vertex {v} is not on the supplied cycle")


def _replace_arcs(cyc: RainbowCycleCert, arcs: dict[int, tuple[int, tuple[int, ...]]]):
    """Replace arc ``offset a -> a + k`` by a path through ``via`` for each ``a: (k, via)``.

    ``cyc`` must be anchored; arcs may end at offset ``len`` (the anchor) but
    never pass over it. New edges get ``None`` colors.
    """
    vs, cs, ell = cyc.vertices, cyc.colors, len(cyc.vertices)
    out_v: list[int] = []
    out_c: list[int | None] = []
    o = 0
    while o < ell:
        out_v.append(vs[o])
        if o in arcs:
            k, via = arcs[o]
            for w in via:
                out_c.append(None)
                out_v.append(w)
            out_c.append(None)
            o += k
        else:
            out_c.append(cs[o])
            o += 1
    if o != ell:
        raise AssertionError("internal: arc passes over the anchor")
    return out_v, out_c


# -- chord-pair reroute ---------------------------------------------------


def _index_sets(family: GraphFamily, cyc: RainbowCycleCert, a_pos: int, span: int, c1: int, c2: int) -> ChordIndexSets:
    vs, ell = cyc.vertices, len(cyc.vertices)

    def x(o):
        return vs[(a_pos + o) % ell]

    xa, xb = x(0), x(span)
    left = {(a_pos + o) % ell for o in range(span + 1, ell) if family.has_edge(c1, xa, x(o))}
    right = {(a_pos + o) % ell for o in range(span, ell - 1) if family.has_edge(c2, xb, x(o + 1))}
    universe = {(a_pos + o) % ell for o in range(span, ell)}
    admissible = {(a_pos + o) % ell for o in range(span + 1, ell - 1)}
    return ChordIndexSets(
        cyc, a_pos, (a_pos + span) % ell, c1, c2, frozenset(left), frozenset(right), frozenset(universe), frozenset(admissible)
    )


def _check_pigeonhole(sets: ChordIndexSets) -> None:
    if sets.counting_hypothesis and not (sets.left & sets.right):
        raise PigeonholeViolation(
            f"|left| + |right| = {len(sets.left) + len(sets.right)} exceeds |universe| = {len(sets.universe)} "
            "but the sets are disjoint"
        )


def _reroute(family: GraphFamily, cyc: RainbowCycleCert, a_pos: int, span: int, c1: int, c2: int):
    """``x_a x_j <-C x_b x_{j+1} ->C x_a`` with ``b = a + span``; smallest ``j`` wins."""
    sets = _index_sets(family, cyc, a_pos, span, c1, c2)
    _check_pigeonhole(sets)
    vs, cs, ell = cyc.vertices, cyc.colors, len(cyc.vertices)
    offsets = sorted((p - a_pos) % ell for p in sets.common)
    if not offsets:
        return NotApplicable("chord index sets do not meet", (f"reroute@{a_pos}/{span}",), sets)
    j = offsets[0]

    def x(o):
        return vs[(a_pos + o) % ell]

    def col(o):
        return cs[(a_pos + o) % ell]

    out_v = [x(0)]
    out_c = [c1]
    for o in range(j, span, -1):
        out_v.append(x(o))
        out_c.append(col(o - 1))
    out_v.append(x(span))
    out_c.append(c2)
    for o in range(j + 1, ell):
        out_v.append(x(o))
        out_c.append(col(o))
    return _emit(family, out_v, out_c)


def chord_pair_reroute(family: GraphFamily, cycle: RainbowCycleCert, a_pos: int, b_pos: int, c1: int, c2: int):
    """Shorten ``cycle`` by two by swapping the arc ``a..b`` (three edges) for two chords.

    Returns the rerouted cycle (starting at the vertex at ``a_pos``) or
    :class:`NotApplicable` carrying the computed :class:`ChordIndexSets`.
    """
    _require_valid(family, cycle)
    ell = len(cycle.vertices)
    if ell < 5:
        raise UsageError(f"chord-pair reroute needs a cycle of length >= 5, got {ell}")
    if not (0 <= a_pos < ell and 0 <= b_pos < ell):
        raise UsageError("anchor positions out of range")
    if b_pos != (a_pos + 3) % ell:
        raise UsageError(f"b_pos must be a_pos + 3 along the cycle, got a_pos={a_pos}, b_pos={b_pos}")
    for c in (c1, c2):
        if not isinstance(c, int) or not 0 <= c < family.n:
            raise UsageError(f"color id {c!r} out of range")
    if c1 == c2:
        raise UsageError("c1 and c2 must differ: the two chords need distinct colors")
    retained = _mask(cycle.colors[(a_pos + o) % ell] for o in range(3, ell))
    for c in (c1, c2):
        if retained >> c & 1:
            raise UsageError(f"color {c} is used by a cycle edge retained after the reroute")
    return _reroute(family, cycle, a_pos, 3, c1, c2)


# -- strong-edge relabel --------------------------------------------------


def strong_edge_relabel(family: GraphFamily, cycle: RainbowCycleCert, edge_pos: int, target_color: int) -> RainbowCycleCert:
    """Move ``target_color`` onto edge ``edge_pos`` by shifting colors along the cycle.

    If the target already sits on edge ``q``, the colors of the edges between
    ``edge_pos`` and ``q`` each move one step towards ``q`` (whichever
    direction is shorter, forward on ties). Needs every cycle edge strong.
    """
    _require_valid(family, cycle)
    ell = len(cycle.vertices)
    if not 0 <= edge_pos < ell:
        raise UsageError(f"edge position {edge_pos} out of range [0, {ell})")
    if not isinstance(target_color, int) or not 0 <= target_color < family.n:
        raise UsageError(f"color id {target_color!r} out of range")
    for k, (u, w) in enumerate(cycle.edges()):
        if family.color_mask(u, w) != family.all_colors:
            raise PreconditionError(f"cycle edge {k} ({u}, {w}) is not a strong edge")
    colors = list(cycle.colors)
    if colors[edge_pos] == target_color:
        return cycle
    if target_color not in colors:
        colors[edge_pos] = target_color
        return _emit(family, cycle.vertices, colors)
    q = colors.index(target_color)
    p = edge_pos
    fwd = (q - p) % ell
    back = (p - q) % ell
    old = list(colors)
    colors[p] = target_color
    if fwd <= back:
        for k in range(1, fwd + 1):
            colors[(p + k) % ell] = old[(p + k - 1) % ell]
    else:
        for k in range(1, back + 1):
            colors[(p - k) % ell] = old[(p - k + 1) % ell]
    return _emit(family, cycle.vertices, colors)


# -- one step shorter -----------------------------------------------------


def _skip_one(family, cyc, anchor):
    """Chord ``x_{k-1} x_{k+1}`` in a freed or unused color."""
    ell = len(cyc.vertices)
    for k in range(1, ell):
        if not family.color_mask(cyc.vertices[k - 1], cyc.vertices[(k + 1) % ell]):
            continue
        out = _complete(family, *_replace_arcs(cyc, {k - 1: (2, ())}), anchor)
        if out:
            return out
    return None


def _span_two_reroutes(family, cyc, anchor):
    ell, cs = len(cyc.vertices), cyc.colors
    free = family.all_colors & ~_mask(cs)
    for k in range(1, ell):
        a = k - 1
        pool = [cs[a], cs[k]] + list(iter_bits(free))
        # chords x_{k-1}x_j in the color of x_k x_{k+1}, x_{k+1}x_{j+1} in the color of x_{k-1} x_k first
        pairs = [(cs[k], cs[a]), (cs[a], cs[k])]
        pairs += [(p, q) for p, q in permutations(pool, 2) if (p, q) not in pairs]
        for c1, c2 in pairs:
            out = _reroute(family, cyc, a, 2, c1, c2)
            if out:
                return out.starting_at(anchor)
    return None


def _strong_relabel_shortcut(family, cyc, anchor):
    ell = len(cyc.vertices)
    if any(family.color_mask(u, w) != family.all_colors for u, w in cyc.edges()):
        return None
    for k in range(1, ell):
        chord = family.color_mask(cyc.vertices[k - 1], cyc.vertices[(k + 1) % ell])
        if not chord:
            continue
        c = (chord & -chord).bit_length() - 1
        relabeled = strong_edge_relabel(family, cyc, k - 1, c)
        vs, cs = _replace_arcs(relabeled, {k - 1: (2, ())})
        # the chord takes over the color that was just moved onto x_{k-1} x_k
        cs = [c if x is None else x for x in cs]
        return _emit(family, vs, cs).starting_at(anchor)
    return None


def _pivot_paths(family, cyc, anchor):
    """Rotate through a chord over the anchor, then close the path (Ore rotation)."""
    ell = len(cyc.vertices)
    for oriented in (cyc, cyc.reversed()):
        vs = oriented.vertices
        if not family.color_mask(vs[1], vs[ell - 1]):
            continue
        # x_0 x_{l-1} x_1 x_2 ... x_{l-3}; drops x_{l-2}
        path = [vs[0], vs[ell - 1]] + list(vs[1 : ell - 2])
        m = len(path)
        candidates = [path]
        for i in range(1, m - 1):
            # P_1 .. P_i P_m P_{m-1} .. P_{i+1}
            candidates.append(path[: i] + path[i:][::-1])
        for order in candidates:
            out = _complete(family, order, [None] * m, anchor)
            if out:
                return out
    return None


def _shorten_by_one(family, cyc, anchor, trace):
    for name, branch in (
        ("skip-one", _skip_one),
        ("chord-pair-span-2", _span_two_reroutes),
        ("strong-relabel", _strong_relabel_shortcut),
        ("pivot-path", _pivot_paths),
    ):
        trace.append(name)
        out = branch(family, cyc, anchor)
        if out:
            return out, name
    return None, None


def _reduce_by_one(family: GraphFamily, ham: RainbowCycleCert, v: int):
    trace: list[str] = []
    cyc = ham.starting_at(v)
    out, name = _shorten_by_one(family, cyc, v, trace)
    if out:
        return out, name
    evidence = detect_bipartite_exception(family)
    if evidence.verdict:
        return evidence, "exception"
    found = find_rainbow_cycle(family, family.n - 1, v)
    if found is not NotFound:
        return found, "oracle"
    return NotApplicable("no rainbow C_{n-1} through the vertex and the family is not the exception", tuple(trace)), None


def reduce_by_one(family: GraphFamily, ham: RainbowCycleCert, v: int):
    """A rainbow ``C_{n-1}`` through ``v``, or the bipartite :class:`ExceptionEvidence`.

    Constructive branches run first; the oracle is the last resort.
    """
    _require_valid(family, ham, "Hamiltonian cycle")
    if len(ham.vertices) != family.n:
        raise UsageError(f"expected a Hamiltonian cycle of length {family.n}, got {len(ham.vertices)}")
    family._check_vertex(v)
    _require_sigma(family)
    return _reduce_by_one(family, ham, v)[0]


# -- two steps shorter ----------------------------------------------------


def _arc_starts(ell: int, k: int):
    """Arc starts ``a`` whose interior (``a+1 .. a+k-1``) avoids the anchor."""
    return [a for a in range(ell) if a + k <= ell]


def _direct_chords(family, cyc, anchor, k=3):
    ell = len(cyc.vertices)
    for a in _arc_starts(ell, k):
        if not family.color_mask(cyc.vertices[a], cyc.vertices[(a + k) % ell]):
            continue
        out = _complete(family, *_replace_arcs(cyc, {a: (k, ())}), anchor)
        if out:
            return out
    return None


def _chord_pairs(family, cyc, anchor, last: NotApplicable | None = None):
    ell, cs = len(cyc.vertices), cyc.colors
    if ell < 6:
        return None
    free = list(iter_bits(family.all_colors & ~_mask(cs)))
    for a in _arc_starts(ell, 3):
        pool = [cs[a], cs[a + 1], cs[(a + 2) % ell]] + free
        first = (cs[a], cs[(a + 2) % ell])
        pairs = [first] + [p for p in permutations(pool, 2) if p != first]
        for c1, c2 in pairs:
            out = _reroute(family, cyc, a, 3, c1, c2)
            if out:
                return out.starting_at(anchor)
    return None


def _one_vertex_options(family, cyc, a, outside):
    """Ways to replace the 3-edge arc at ``a`` by a 2-edge path: ``(vertex, inside?)``."""
    ell, vs = len(cyc.vertices), cyc.vertices
    x0, x1, x2, x3 = (vs[(a + i) % ell] for i in range(4))
    opts = []
    if family.color_mask(x1, x3):
        opts.append(x1)
    if family.color_mask(x0, x2):
        opts.append(x2)
    row = family.union_row(x0) & family.union_row(x3)
    opts += [y for y in outside if row >> y & 1]
    return opts


def _detours(family, cyc, anchor):
    """Two independent one-vertex detours, or one detour over a four-edge arc."""
    ell, vs = len(cyc.vertices), cyc.vertices
    outside = [y for y in range(family.n) if y not in set(vs)]
    if ell >= 7:
        left = _one_vertex_options(family, cyc, 0, outside)
        right = _one_vertex_options(family, cyc, 4, outside)
        for z in left:
            for w in right:
                if z == w:
                    continue
                out = _complete(family, *_replace_arcs(cyc, {0: (3, (z,)), 4: (3, (w,))}), anchor)
                if out:
                    return out
    for a in _arc_starts(ell, 4):
        row = family.union_row(vs[a]) & family.union_row(vs[(a + 4) % ell])
        for y in outside:
            if row >> y & 1:
                out = _complete(family, *_replace_arcs(cyc, {a: (4, (y,))}), anchor)
                if out:
                    return out
    return None


def _shorten_by_two(family, cyc, anchor, trace):
    for name, branch in (
        ("direct-chord", _direct_chords),
        ("chord-pair", _chord_pairs),
        ("detour", _detours),
    ):
        trace.append(name)
        out = branch(family, cyc, anchor)
        if out:
            return out, name
    return None, None


def _reduce_by_two(family, cyc, v):
    trace: list[str] = []
    out, name = _shorten_by_two(family, cyc.starting_at(v), v, trace)
    if out:
        return out, name
    return NotApplicable("every shortening branch failed", tuple(trace)), None


def reduce_by_two(family: GraphFamily, cyc: RainbowCycleCert, v: int):
    """A rainbow cycle two shorter than ``cyc`` through ``v``, or :class:`NotApplicable`."""
    _require_valid(family, cyc)
    if len(cyc.vertices) < 8:
        raise UsageError(f"reduce_by_two needs a cycle of length >= 8, got {len(cyc.vertices)}")
    family._check_vertex(v)
    _require_through(cyc, v)
    _require_sigma(family)
    return _reduce_by_two(family, cyc, v)[0]


# -- short cycles ---------------------------------------------------------


def _find_c5(family, v, c7):
    if detect_bipartite_exception(family).verdict:
        return NotApplicable("bipartite exception: no odd rainbow cycles"), None
    if c7 is None:
        if family.n < 7:
            return NotApplicable("no rainbow C_7 available"), None
        c7 = find_rainbow_cycle(family, 7, v)
        if c7 is NotFound:
            return NotApplicable("no rainbow C_7 through the vertex"), None
    trace: list[str] = []
    out, name = _shorten_by_two(family, c7.starting_at(v), v, trace)
    if out:
        return out, name
    return NotApplicable("every C_5 branch failed", tuple(trace)), None


def find_c5_through(family: GraphFamily, v: int, c7: RainbowCycleCert | None = None):
    """A rainbow ``C_5`` through ``v`` shortened from a ``C_7``.

    When ``c7`` is omitted one is taken from the oracle.
    """
    family._check_vertex(v)
    _require_sigma(family)
    if c7 is not None:
        _require_valid(family, c7)
        if len(c7.vertices) != 7:
            raise UsageError(f"expected a cycle of length 7, got {len(c7.vertices)}")
        _require_through(c7, v)
    return _find_c5(family, v, c7)[0]


def _c4_from_c5(family, cyc, anchor, trace):
    trace.append("skip-one")
    out = _skip_one(family, cyc, anchor)
    if out:
        return out, "skip-one"
    trace.append("outside-vertex")
    vs = cyc.vertices
    outside = [y for y in range(family.n) if y not in set(vs)]
    for a in _arc_starts(5, 3):
        row = family.union_row(vs[a]) & family.union_row(vs[(a + 3) % 5])
        for y in outside:
            if row >> y & 1:
                out = _complete(family, *_replace_arcs(cyc, {a: (3, (y,))}), anchor)
                if out:
                    return out, "outside-vertex"
    return None, None


def _find_c4(family, v, cycle):
    trace: list[str] = []
    if cycle is None:
        c5 = _find_c5(family, v, None)[0] if family.n >= 5 else NotApplicable("n < 5")
        if not c5 and family.n >= 5:
            c5 = find_rainbow_cycle(family, 5, v)
        if c5:
            cycle = c5
        elif family.n >= 6:
            c6 = find_rainbow_cycle(family, 6, v)
            if c6 is not NotFound:
                cycle = c6
    if cycle is None or cycle is NotFound:
        return NotApplicable("no C_5 or C_6 through the vertex to shorten"), None
    cyc = cycle.starting_at(v)
    if len(cyc.vertices) == 5:
        out, name = _c4_from_c5(family, cyc, v, trace)
    else:
        out, name = _shorten_by_two(family, cyc, v, trace)
    if out:
        return out, name
    return NotApplicable("every C_4 branch failed", tuple(trace)), None


def find_c4_through(family: GraphFamily, v: int, cycle: RainbowCycleCert | None = None):
    """A rainbow ``C_4`` through ``v``, shortened from a ``C_5`` (or a ``C_6``).

    Without ``cycle``, a ``C_5`` is built via :func:`find_c5_through` or taken
    from the oracle; in the bipartite exception a ``C_6`` is used instead.
    """
    family._check_vertex(v)
    _require_sigma(family)
    if cycle is not None:
        _require_valid(family, cycle)
        if len(cycle.vertices) not in (5, 6):
            raise UsageError(f"expected a cycle of length 5 or 6, got {len(cycle.vertices)}")
        _require_through(cycle, v)
    return _find_c4(family, v, cycle)[0]


def triangle_via_common_neighborhood(family: GraphFamily, x: int, y: int):
    """Triangle ``x y z`` with ``xy`` in ``G_b``, ``yz`` in ``G_c``, ``zx`` in ``G_a``.

    Colors ``a`` missing ``xy`` are tried before the others; within each,
    the smallest ``b``, ``a``, ``c`` and ``z`` win.
    """
    family._check_pair(x, y)
    n = family.n
    present = family.color_mask(x, y)
    missing = family.all_colors & ~present
    a_order = list(iter_bits(missing)) + list(iter_bits(present))
    for b in iter_bits(present):
        for a in a_order:
            if a == b:
                continue
            nx = family.row(a, x) & ~(1 << y)
            if not nx:
                continue
            for c in range(n):
                if c in (a, b):
                    continue
                common = nx & family.row(c, y)
                if common:
                    z = (common & -common).bit_length() - 1
                    return _emit(family, (x, y, z), (b, c, a))
    return NotFound


# -- driver ---------------------------------------------------------------


@dataclass
class VertexPancyclicity:
    """Cycles of every length through one vertex, with where each came from."""

    vertex: int
    n: int
    certs: dict[int, RainbowCycleCert] = field(default_factory=dict)
    sources: dict[int, str] = field(default_factory=dict)
    exception: ExceptionEvidence | None = None

    def missing(self, lo: int = 4) -> list[int]:
        return [ell for ell in range(lo, self.n + 1) if ell not in self.certs]

    @property
    def outcome(self) -> str:
        """``full`` (all of 4..n), ``exception`` (evidence plus every even length) or ``third``."""
        gaps = self.missing(4)
        if not gaps:
            return "full"
        if self.exception is not None and self.exception.verdict and all(ell % 2 for ell in gaps):
            return "exception"
        return "third"

    @property
    def has_triangle(self) -> bool:
        return 3 in self.certs

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "outcome": self.outcome,
            "exception": self.exception.to_json() if self.exception else None,
            "cycles": {
                str(ell): {"source": self.sources[ell], **self.certs[ell].to_json()} for ell in sorted(self.certs)
            },
        }


def _triangle(family, v):
    for y in range(family.n):
        if y != v and family.union_row(v) >> y & 1:
            t = triangle_via_common_neighborhood(family, v, y)
            if t is not NotFound:
                return t, "common-neighborhood"
    t = find_rainbow_cycle(family, 3, v)
    return (t, "oracle") if t is not NotFound else (None, None)


def constructive_vertex_pancyclic(family: GraphFamily, v: int, oracle_only: bool = False) -> VertexPancyclicity:
    """Rainbow cycles of every length ``3..n`` through ``v``.

    The outcome is ``full`` or, for the bipartite exception, the verified
    evidence plus every even length. Lengths ``4..n`` are guaranteed under the
    hypothesis; a triangle is attempted but may legitimately be absent.
    Families with ``n <= 7`` go straight to the oracle.
    """
    family._check_vertex(v)
    _require_sigma(family)
    n = family.n
    result = VertexPancyclicity(v, n)

    def record(ell, cert, source):
        result.certs[ell] = cert
        result.sources[ell] = source

    def exception_now() -> bool:
        if result.exception is None:
            ev = detect_bipartite_exception(family)
            if ev.verdict and not evidence_holds(family, ev):
                raise AssertionError("internal: exception evidence failed the edge-by-edge check")
            result.exception = ev
        return result.exception.verdict

    def oracle(ell, source="oracle"):
        found = find_rainbow_cycle(family, ell, v)
        if found is NotFound:
            exception_now()
            return None
        record(ell, found, source)
        return found

    if oracle_only or n <= 7:
        for ell in range(n, 3, -1):
            if ell % 2 and n >= 4 and exception_now():
                continue
            oracle(ell)
    else:
        ham = oracle(n, "oracle:hamiltonian")
        if ham is not None:
            step, how = _reduce_by_one(family, ham, v)
            if isinstance(step, ExceptionEvidence):
                result.exception = step
            elif step:
                record(n - 1, step, how)
            else:
                exception_now()
        else:
            exception_now()
        in_exception = bool(result.exception and result.exception.verdict)
        for start in (n, n - 1):
            if in_exception and start % 2:
                continue
            cur = result.certs.get(start) or oracle(start)
            ell = start
            while cur is not None and ell >= 8:
                out, how = _reduce_by_two(family, cur, v)
                if out:
                    record(ell - 2, out, how)
                    cur = out
                else:
                    cur = oracle(ell - 2)
                ell -= 2
        if not in_exception:
            c5, how = _find_c5(family, v, result.certs.get(7))
            if c5:
                record(5, c5, how)
            else:
                oracle(5)
        c4, how = _find_c4(family, v, result.certs.get(5) or result.certs.get(6))
        if c4:
            record(4, c4, how)
        else:
            oracle(4)
    if not (result.exception and result.exception.verdict):
        tri, how = _triangle(family, v)
        if tri is not None:
            record(3, tri, how)
    return result
