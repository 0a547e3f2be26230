"""Random families under sigma constraints and the end-to-end theorem suites.

Reports are plain dicts, one per family, serialised as JSON lines. Everything
except the ``timing`` field is a deterministic function of the configuration.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator, TextIO

from .certify import is_valid_cycle
from .errors import GenerationError, PreconditionError, UsageError
from .extremal import (
    detect_bipartite_exception,
    evidence_holds,
    make_balanced_bipartite_family,
    make_joined_split_family,
)
from .family import INFINITY, GraphFamily, iter_bits, ore_sigma_single, sigma
from .oracle import NotFound, find_rainbow_cycle
from .rotation import constructive_vertex_pancyclic, triangle_via_common_neighborhood

MODES = ("independent-random", "repair-to-threshold", "perturb-extremal")
# suite-level only: alternate generators by family index
MIXED = "mixed"
SUITES = ("theorem5", "theorem7", "corollary8", "theorem9", "conjecture10-search")
TIME_BUDGET_ENV = "RAINBOWPAN_TIME_BUDGET"
DEFAULT_TIME_BUDGET = 30.0


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    sigma_threshold: float = 0
    seed: int = 0
    mutation_budget: int = 20_000
    mode: str = "repair-to-threshold"


def vertex_pancyclic_threshold(n: int) -> int:
    """``ceil(4n/3 - 1)`` in integer arithmetic."""
    return -(-(4 * n - 3) // 3)


def _random_rows(n: int, p: float, rng: random.Random) -> list[list[int]]:
    rows = [[0] * n for _ in range(n)]
    for c in range(n):
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    rows[c][u] |= 1 << v
                    rows[c][v] |= 1 << u
    return rows


def _add(rows, c, u, v):
    rows[c][u] |= 1 << v
    rows[c][v] |= 1 << u


def _random_non_neighbor(rows, c, u, n, rng) -> int | None:
    choices = [w for w in range(n) if w != u and not rows[c][u] >> w & 1]
    return rng.choice(choices) if choices else None


def _repair(rows, n, threshold, budget, rng) -> GraphFamily:
    family = GraphFamily(n, rows)
    for _ in range(budget + 1):
        value, w = sigma(family)
        if value >= threshold:
            return family
        if rng.random() < 0.5:
            _add(rows, w.i, w.u, w.v)
        else:
            vertex, color = (w.u, w.p) if rng.random() < 0.5 else (w.v, w.q)
            other = _random_non_neighbor(rows, color, vertex, n, rng)
            if other is None:
                _add(rows, w.i, w.u, w.v)
            else:
                _add(rows, color, vertex, other)
        family = GraphFamily(n, rows)
    raise GenerationError(f"sigma stayed below {threshold} after {budget} repair steps")


def generate_family_with_sigma_at_least(config: GeneratorConfig) -> GraphFamily:
    """A family with ``sigma >= config.sigma_threshold``, checked before returning."""
    n, threshold = config.n, config.sigma_threshold
    if not isinstance(n, int) or n < 3:
        raise UsageError(f"n must be an integer >= 3, got {n!r}")
    if threshold < 0:
        raise UsageError(f"sigma threshold must be non-negative, got {threshold}")
    if config.mode not in MODES:
        raise UsageError(f"unknown generator mode {config.mode!r}; expected one of {', '.join(MODES)}")
    rng = random.Random(config.seed)
    if threshold == INFINITY:
        family = GraphFamily.complete(n)
    elif config.mode == "independent-random":
        family = None
        for _ in range(max(config.mutation_budget, 1)):
            candidate = GraphFamily(n, _random_rows(n, rng.uniform(0.3, 0.95), rng))
            if sigma(candidate)[0] >= threshold:
                family = candidate
                break
        if family is None:
            raise GenerationError(f"no random family reached sigma >= {threshold} in {config.mutation_budget} draws")
    elif config.mode == "repair-to-threshold":
        family = _repair(_random_rows(n, rng.uniform(0.25, 0.75), rng), n, threshold, config.mutation_budget, rng)
    else:
        if n % 2 == 0 and n >= 4:
            base = make_balanced_bipartite_family(n)
        elif n % 3 == 1 and n >= 7:
            base = make_joined_split_family(n)
        else:
            raise GenerationError(f"no extremal family to perturb for n={n}")
        rows = [[base.row(c, v) for v in range(n)] for c in range(n)]
        for _ in range(rng.randint(1, n)):
            c, u = rng.randrange(n), rng.randrange(n)
            other = _random_non_neighbor(rows, c, u, n, rng)
            if other is not None:
                _add(rows, c, u, other)
        family = _repair(rows, n, threshold, config.mutation_budget, rng)
    if sigma(family)[0] < threshold:
        raise GenerationError(f"generated family has sigma {sigma(family)[0]} < {threshold}")
    return family


def generate_per_graph_ore_family(n: int, seed: int) -> GraphFamily:
    """Every graph independently satisfies the classical Ore condition ``sigma(G_i) >= n``."""
    rng = random.Random(seed)
    rows = _random_rows(n, rng.uniform(0.25, 0.6), rng)
    for c in range(n):
        while True:
            family = GraphFamily(n, rows)
            if ore_sigma_single(family, c) >= n:
                break
            degs = [bin(r).count("1") for r in rows[c]]
            best = None
            for u in range(n):
                for v in range(u + 1, n):
                    if not rows[c][u] >> v & 1 and (best is None or degs[u] + degs[v] < best[0]):
                        best = (degs[u] + degs[v], u, v)
            _add(rows, c, best[1], best[2])
    return GraphFamily(n, rows)


# -- reports ------------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    index: int
    n: int
    digest: str
    sigma: float
    witness: dict | None
    threshold: float
    hypothesis_holds: bool
    cells: dict = field(default_factory=dict)
    exception: dict | None = None
    conclusion_holds: bool = False
    counterexample: bool = False
    verdict: str = "fail"
    notes: list = field(default_factory=list)
    seed: int | None = None
    timing: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        for key in ("sigma", "threshold"):
            if out[key] == INFINITY:
                out[key] = "inf"
        return out


def _cell(cert, source: str | None = None) -> dict:
    if cert is None or cert is NotFound:
        return {"status": "notfound"}
    return {"status": "cert", "source": source, **cert.to_json()}


def _skipped() -> dict:
    return {"status": "skipped"}


def _new_report(suite, index, family, threshold, seed) -> VerificationReport:
    value, witness = sigma(family)
    return VerificationReport(
        suite=suite,
        index=index,
        n=family.n,
        digest=family.digest(),
        sigma=value,
        witness=witness.to_json() if witness else None,
        threshold=threshold,
        hypothesis_holds=value >= threshold,
        seed=seed,
    )


def _oracle_cycles(family, v, lengths):
    return {ell: find_rainbow_cycle(family, ell, v) for ell in lengths}


def _vertex_cycles(family: GraphFamily, v: int, hypothesis: bool) -> tuple[dict, dict | None]:
    """Cells for lengths 3..n through ``v``; constructive when the hypothesis allows."""
    n = family.n
    if hypothesis and sigma(family)[0] >= n:
        res = constructive_vertex_pancyclic(family, v)
        cells = {str(ell): _cell(res.certs.get(ell), res.sources.get(ell)) for ell in range(3, n + 1)}
        return cells, res.exception.to_json() if res.exception else None
    cells = {str(ell): _cell(c, "oracle") for ell, c in _oracle_cycles(family, v, range(3, n + 1)).items()}
    return cells, None


def _certs_ok(family: GraphFamily, cells: dict) -> bool:
    from .certify import RainbowCycleCert

    for row in cells.values():
        for cell in row.values():
            if cell["status"] == "cert":
                if not is_valid_cycle(family, RainbowCycleCert(cell["vertices"], cell["colors"])):
                    return False
    return True


def _evaluate(suite: str, family: GraphFamily, threshold, index: int, seed, deadline: float) -> VerificationReport:
    report = _new_report(suite, index, family, threshold, seed)
    n = family.n
    t0 = time.perf_counter()
    overrun = False

    def out_of_time() -> bool:
        return time.perf_counter() > deadline

    if suite in ("theorem5", "conjecture10-search"):
        if suite == "conjecture10-search":
            report.hypothesis_holds = all(ore_sigma_single(family, c) >= n for c in range(n))
            report.notes.append("hypothesis: every graph satisfies the classical Ore condition")
        ham = find_rainbow_cycle(family, n)
        report.cells = {"*": {str(n): _cell(ham, "oracle")}}
        report.conclusion_holds = ham is not NotFound
    elif suite == "corollary8":
        row = {}
        evidence = detect_bipartite_exception(family)
        for ell in range(3, n + 1):
            if out_of_time():
                row[str(ell)] = _skipped()
                overrun = True
                continue
            cert, source = None, None
            if ell == 3:
                for x in range(n):
                    for y in iter_bits(family.union_row(x) >> (x + 1) << (x + 1)):
                        t = triangle_via_common_neighborhood(family, x, y)
                        if t is not NotFound:
                            cert, source = t, "common-neighborhood"
                            break
                    if cert is not None:
                        break
            if cert is None:
                found = find_rainbow_cycle(family, ell)
                cert, source = (found, "oracle") if found is not NotFound else (None, None)
            row[str(ell)] = _cell(cert, source)
        report.cells = {"*": row}
        report.exception = evidence.to_json()
        missing = [int(ell) for ell, c in row.items() if c["status"] != "cert"]
        report.conclusion_holds = not missing or (
            evidence.verdict and evidence_holds(family, evidence) and all(ell % 2 for ell in missing)
        )
    elif suite in ("theorem7", "theorem9"):
        lo = 4 if suite == "theorem7" else 3
        cells = {}
        exception = None
        for v in range(n):
            if out_of_time():
                cells[str(v)] = {str(ell): _skipped() for ell in range(lo, n + 1)}
                overrun = True
                continue
            try:
                vc, exc = _vertex_cycles(family, v, report.hypothesis_holds)
            except PreconditionError:
                vc, exc = _vertex_cycles(family, v, False)
            cells[str(v)] = {k: c for k, c in vc.items() if int(k) >= lo}
            exception = exc or exception
        report.cells = cells
        report.exception = exception
        missing = [(v, int(ell)) for v, row in cells.items() for ell, c in row.items() if c["status"] != "cert"]
        if suite == "theorem7":
            exc_ok = bool(exception and exception["verdict"]) and evidence_holds(
                family, detect_bipartite_exception(family)
            )
            report.conclusion_holds = not missing or (exc_ok and all(ell % 2 for _, ell in missing))
        else:
            report.conclusion_holds = not missing
            report.notes.append("vertex-pancyclic" if not missing else "not vertex-pancyclic")
    else:
        raise UsageError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")

    certs_ok = _certs_ok(family, report.cells)
    if not certs_ok:
        report.notes.append("a certificate failed re-verification")
    if overrun:
        report.notes.append("time budget exceeded; remaining cells skipped")
    report.counterexample = report.hypothesis_holds and not report.conclusion_holds and not overrun
    passed = certs_ok and not overrun and (report.conclusion_holds or not report.hypothesis_holds)
    report.verdict = "pass" if passed else "fail"
    report.timing = {"seconds": round(time.perf_counter() - t0, 6)}
    return report


@dataclass
class SuiteConfig:
    name: str
    n_min: int = 4
    n_max: int = 8
    samples: int = 100
    seed: int = 0
    mode: str = "repair-to-threshold"
    mutation_budget: int = 20_000
    time_budget: float | None = None

    def mode_for(self, index: int, n: int) -> str:
        if self.mode != MIXED:
            return self.mode
        choice = ("repair-to-threshold", "perturb-extremal", "independent-random")[index % 3]
        if choice == "perturb-extremal" and not (n % 2 == 0 or (n % 3 == 1 and n >= 7)):
            return "repair-to-threshold"
        return choice

    def budget(self) -> float:
        if self.time_budget is not None:
            return self.time_budget
        return float(os.environ.get(TIME_BUDGET_ENV, DEFAULT_TIME_BUDGET))


def suite_threshold(suite: str, n: int) -> float:
    if suite == "theorem9":
        return vertex_pancyclic_threshold(n)
    if suite == "conjecture10-search":
        return 0
    return n


def family_seed(master: int, index: int) -> int:
    """Per-family 64-bit seed; depends only on ``(master, index)``."""
    return random.Random(f"{master}/{index}").getrandbits(64)


def run_suite(suite: str, config: SuiteConfig, families: Iterable[GraphFamily] | None = None) -> Iterator[dict]:
    """Yield one report dict per family, then generation failures as they occur.

    With ``families`` given, those are evaluated instead of generated ones, and
    the hypothesis is checked rather than guaranteed.
    """
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    if config.mode not in MODES + (MIXED,):
        raise UsageError(f"unknown generator mode {config.mode!r}")
    budget = config.budget()
    if families is not None:
        for index, family in enumerate(families):
            threshold = suite_threshold(suite, family.n)
            deadline = time.perf_counter() + budget
            yield _evaluate(suite, family, threshold, index, None, deadline).to_json()
        return
    if not 3 <= config.n_min <= config.n_max:
        raise UsageError(f"need 3 <= n_min <= n_max, got [{config.n_min}, {config.n_max}]")
    span = config.n_max - config.n_min + 1
    for index in range(config.samples):
        n = config.n_min + index % span
        seed = family_seed(config.seed, index)
        threshold = suite_threshold(suite, n)
        try:
            if suite == "conjecture10-search":
                family = generate_per_graph_ore_family(n, seed)
            else:
                family = generate_family_with_sigma_at_least(
                    GeneratorConfig(n, threshold, seed, config.mutation_budget, config.mode_for(index, n))
                )
        except GenerationError as exc:
            yield {"suite": suite, "index": index, "n": n, "seed": seed, "generation_failure": str(exc)}
            continue
        deadline = time.perf_counter() + budget
        yield _evaluate(suite, family, threshold, index, seed, deadline).to_json()


def write_reports(reports: Iterable[dict], out: TextIO) -> dict:
    """Stream reports as JSON lines followed by a summary line; returns the summary."""
    summary = {"summary": True, "reports": 0, "passed": 0, "failed": 0, "generation_failures": 0, "counterexamples": 0}
    for report in reports:
        out.write(json.dumps(report, sort_keys=True) + "\n")
        if "generation_failure" in report:
            summary["generation_failures"] += 1
            continue
        summary["reports"] += 1
        if report["verdict"] == "pass":
            summary["passed"] += 1
        else:
            summary["failed"] += 1
        if report["counterexample"]:
            summary["counterexamples"] += 1
    out.write(json.dumps(summary, sort_keys=True) + "\n")
    return summary
