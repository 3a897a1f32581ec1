"""Instance populations and verification sweeps over them.

Every sweep is deterministic: populations are generated from an explicit
seed, each instance is checked independently, and records come back in
population order whatever the worker count.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from . import reduction
from .biclique import is_biclique, max_balanced_biclique
from .graph import BipartiteGraph, Graph, co_bipartite_complement, is_connected
from .measures import uvat_exact, uvat_value

MODES = ("identity", "bounds", "sandwich", "lower")


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def random_connected_graph(n: int, rng: random.Random, p: float | None = None) -> Graph:
    """Random spanning tree on a shuffled vertex order plus G(n, p) extra edges."""
    if p is None:
        p = rng.random()
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    g = Graph(n, frozenset(edges))
    assert is_connected(g)
    return g


def all_reducible_bipartite(n: int) -> Iterator[BipartiteGraph]:
    """Every ``n + n`` bipartite graph except the edgeless and complete ones."""
    pairs = [(i, j) for i in range(n) for j in range(n)]
    for mask in range(1, (1 << len(pairs)) - 1):
        yield BipartiteGraph(n, n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def random_bipartite(n: int, rng: random.Random) -> BipartiteGraph:
    """Random reducible instance: half uniform G(n, n, p), half planted bicliques."""
    while True:
        if rng.random() < 0.5:
            p = rng.uniform(0.1, 0.9)
            edges = frozenset((i, j) for i in range(n) for j in range(n) if rng.random() < p)
            b = BipartiteGraph(n, n, edges)
        else:
            k0 = rng.randint(1, n - 1)
            b = reduction.plant_biclique_instance(n, k0, rng.uniform(0.0, 0.6), rng.getrandbits(32))
        if b.edges and not b.is_complete:
            return b


def random_bipartite_population(ns: list[int], trials: int, seed: int) -> list[BipartiteGraph]:
    """``trials`` instances spread round-robin over the side sizes ``ns``."""
    rng = random.Random(seed)
    return [random_bipartite(ns[i % len(ns)], rng) for i in range(trials)]


def check_identity(b: BipartiteGraph) -> dict:
    out = reduction.verify_lemma_identity(b)
    return {"ok": out.holds, **out.to_dict()}


def check_bounds(b: BipartiteGraph) -> dict:
    out = reduction.verify_lemma_bounds(b)
    return {"ok": out.holds, **out.to_dict()}


def check_sandwich(b: BipartiteGraph) -> dict:
    """Exact solver (alpha = 1): n/(q+1) <= k <= 2n/(q+1), witness sound and >= ceil(k/2)."""
    rep = reduction.approx_bcbs_via_uvat(b, uvat_exact, 1, exact=True)
    k = rep.k_exact
    bracket = rep.lower_bound <= k <= rep.upper_bound
    witness_ok = is_biclique(b, rep.extracted) and rep.extracted.balanced
    size_ok = rep.extracted.size >= math.ceil(k / 2)
    return {
        "ok": bracket and witness_ok and size_ok,
        "bracket": bracket,
        "witness_ok": witness_ok,
        "size_ok": size_ok,
        **rep.to_dict(),
    }


def check_lower(b: BipartiteGraph, draws: int = 10, seed: int = 0) -> dict:
    """For random valid attack sets X of the complement, n/(q_X+1) <= k."""
    n = b.n1
    k, _ = max_balanced_biclique(b)
    gbar, sides = co_bipartite_complement(b)
    rng = random.Random(f"{seed}:{b.to_text()}")
    checked = 0
    bad = []
    for _ in range(draws):
        x = reduction.random_valid_attack_set(gbar, sides, rng)
        if x is None:
            continue
        q = uvat_value(gbar, x)
        assert q is not None
        checked += 1
        if not n / (q + 1) <= k:
            bad.append(sorted(x))
    return {"ok": not bad and checked > 0, "k": k, "checked": checked, "violations": bad}


CHECKS: dict[str, Callable[[BipartiteGraph], dict]] = {
    "identity": check_identity,
    "bounds": check_bounds,
    "sandwich": check_sandwich,
    "lower": check_lower,
}


def _run_one(args: tuple[str, BipartiteGraph]) -> dict:
    mode, b = args
    try:
        record = CHECKS[mode](b)
    except Exception as exc:  # a crash on an instance is a failure, not an abort
        record = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
    record["instance"] = b.to_text()
    return record


@dataclass
class SweepSummary:
    mode: str
    total: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return self.total - self.passed

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": [f["instance"] for f in self.failures],
        }


def run_sweep(mode: str, population: list[BipartiteGraph], workers: int = 1) -> SweepSummary:
    if mode not in CHECKS:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    jobs = [(mode, b) for b in population]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        records = [_run_one(j) for j in jobs]
    summary = SweepSummary(mode)
    for rec in records:
        summary.total += 1
        if rec["ok"]:
            summary.passed += 1
        else:
            summary.failures.append(rec)
    summary.records = records
    return summary
