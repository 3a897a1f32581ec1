"""Co-bipartite reduction between UVAT and maximum balanced biclique.

For a balanced bipartite graph ``b`` on ``n + n`` vertices let ``gbar`` be its
co-bipartite complement. Removing an attack set ``X`` from ``gbar`` leaves the
two cliques ``V1 - X`` and ``V2 - X``; when they fall apart there is no
complement edge between them, i.e. they form a biclique of ``b``. This gives

    UVAT(gbar) = min over bicliques (A, B), |A| <= |B| of (2n - |A| - |B|) / |A|
    n/k - 1 <= UVAT(gbar) <= 2 (n/k - 1)

with ``k`` the maximum balanced biclique size, and turns any UVAT value ``q``
into the MAX-BCBS estimate ``n / (q + 1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .biclique import (
    BicliqueWitness,
    PreconditionError,
    balanced_truncation,
    max_balanced_biclique,
    min_bk_ratio,
)
from .graph import BipartiteGraph, Graph, co_bipartite_complement, from_mask, to_mask
from .measures import AttackResult, UVATSolver, ratio_to_dict, uvat_exact, uvat_value


class ExtractionError(ValueError):
    """The attack set does not split the complement into two cliques."""


class SolverContractError(RuntimeError):
    """A UVAT solver returned a witness that is not a valid attack set."""


def _require_reducible(b: BipartiteGraph) -> None:
    if not b.balanced:
        raise PreconditionError(f"balanced bipartite graph required, got sides {b.n1}, {b.n2}")
    if not b.edges:
        raise PreconditionError("bipartite graph has no edges")
    if b.is_complete:
        raise PreconditionError(
            "complete bipartite input: its complement is two disjoint cliques and the "
            "optimal biclique corresponds to an empty attack set"
        )


def extract_biclique_from_separator(
    gbar: Graph, sides: tuple[int, ...], x: Iterable[int]
) -> BicliqueWitness:
    """Read the biclique ``(A_X, B_X)`` off the two cliques left by ``x``.

    ``A_X`` is the smaller side residual (V1 on ties). Ids in the witness are
    side-local, numbered in increasing global order within each side.
    """
    x_mask = to_mask(x)
    if x_mask == 0 or x_mask & ~gbar.full_mask or x_mask == gbar.full_mask:
        raise ExtractionError("attack set must be a nonempty proper vertex subset")
    members = ([v for v in range(gbar.n) if sides[v] == s] for s in (0, 1))
    side_lists = [list(m) for m in members]
    residuals = [[v for v in lst if not x_mask >> v & 1] for lst in side_lists]
    if not residuals[0] or not residuals[1]:
        raise ExtractionError("a side residual is empty; no biclique to extract")
    r1 = to_mask(residuals[1])
    if any(gbar.adj[v] & r1 for v in residuals[0]):
        raise ExtractionError("side residuals are still joined; attack set is not a separator")
    local = [{v: i for i, v in enumerate(lst)} for lst in side_lists]
    p = frozenset(local[0][v] for v in residuals[0])
    q = frozenset(local[1][v] for v in residuals[1])
    if len(p) <= len(q):
        return BicliqueWitness(0, p, q)
    return BicliqueWitness(1, q, p)


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    lhs: Fraction
    rhs: Fraction
    uvat_witness: frozenset[int]
    bk_witness: BicliqueWitness

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "lhs": ratio_to_dict(self.lhs),
            "rhs": ratio_to_dict(self.rhs),
            "uvat_witness": sorted(self.uvat_witness),
            "bk_witness": self.bk_witness.to_dict(),
        }


def verify_lemma_identity(b: BipartiteGraph, *, allow_large: bool = False) -> IdentityCheck:
    """Compare UVAT of the complement with the minimum biclique ratio."""
    _require_reducible(b)
    gbar, _ = co_bipartite_complement(b)
    lhs = uvat_exact(gbar, allow_large=allow_large)
    rhs, w = min_bk_ratio(b, allow_large=allow_large)
    return IdentityCheck(lhs.value == rhs, lhs.value, rhs, lhs.witness, w)


@dataclass(frozen=True)
class BoundsCheck:
    holds: bool
    k: int
    uvat: Fraction
    lower: Fraction
    upper: Fraction

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "k": self.k,
            "uvat": ratio_to_dict(self.uvat),
            "lower": ratio_to_dict(self.lower),
            "upper": ratio_to_dict(self.upper),
        }


def verify_lemma_bounds(b: BipartiteGraph, *, allow_large: bool = False) -> BoundsCheck:
    """Check ``n/k - 1 <= UVAT(gbar) <= 2 (n/k - 1)`` exactly."""
    _require_reducible(b)
    n = b.n1
    k, _ = max_balanced_biclique(b, allow_large=allow_large)
    if not 1 <= k < n:
        raise PreconditionError(f"bounds need 1 <= k < n, got k={k}, n={n}")
    gbar, _ = co_bipartite_complement(b)
    value = uvat_exact(gbar, allow_large=allow_large).value
    lower = Fraction(n, k) - 1
    upper = 2 * lower
    return BoundsCheck(lower <= value <= upper, k, value, lower, upper)


@dataclass(frozen=True)
class ReductionReport:
    """Outcome of estimating MAX-BCBS from a UVAT solver run.

    ``upper_bound`` and ``r`` are only present when ``alpha`` is known;
    ``k_exact`` and ``bk_ratio`` only when exact solvers were requested.
    """

    n: int
    uvat: Fraction
    attack_set: frozenset[int]
    lower_bound: Fraction
    extracted: BicliqueWitness
    alpha: Fraction | None = None
    upper_bound: Fraction | None = None
    r: Fraction | None = None
    k_exact: int | None = None
    bk_ratio: Fraction | None = None

    def to_dict(self) -> dict:
        opt = lambda v: None if v is None else ratio_to_dict(v)  # noqa: E731
        return {
            "n": self.n,
            "uvat": ratio_to_dict(self.uvat),
            "attack_set": sorted(self.attack_set),
            "lower_bound": ratio_to_dict(self.lower_bound),
            "upper_bound": opt(self.upper_bound),
            "alpha": opt(self.alpha),
            "r": opt(self.r),
            "k_exact": self.k_exact,
            "bk_ratio": opt(self.bk_ratio),
            "extracted": self.extracted.to_dict(),
        }


def approx_bcbs_via_uvat(
    b: BipartiteGraph,
    solver: UVATSolver = uvat_exact,
    alpha: Fraction | int | None = 1,
    *,
    exact: bool = False,
) -> ReductionReport:
    """Estimate the maximum balanced biclique of ``b`` through a UVAT solver.

    Runs ``solver`` on the co-bipartite complement to get a value ``q`` and an
    attack set ``X``. ``n/(q+1)`` is always a lower bound on ``k``; when the
    solver is an ``alpha``-approximation, ``2 alpha n/(q+1)`` bounds it from
    above. The biclique left behind by ``X`` is returned balanced to the size
    of its smaller side.
    """
    _require_reducible(b)
    if alpha is not None:
        alpha = Fraction(alpha)
        if alpha < 1:
            raise PreconditionError(f"approximation factor must be >= 1, got {alpha}")
    n = b.n1
    gbar, sides = co_bipartite_complement(b)
    result: AttackResult = solver(gbar)
    witness = result.witness
    if not witness or len(witness) >= gbar.n or any(not 0 <= v < gbar.n for v in witness):
        raise SolverContractError(f"solver witness {sorted(witness)} is not a nonempty proper subset")
    q = uvat_value(gbar, witness)
    if q is None:
        raise SolverContractError(f"solver witness {sorted(witness)} leaves a zero residual")
    if result.value != q:
        raise SolverContractError(f"solver reported {result.value} but its witness scores {q}")

    lower = Fraction(n) / (q + 1)
    upper = r = None
    if alpha is not None:
        upper = 2 * alpha * lower
        r = (q + 1) / (1 + q / (2 * alpha))
    extracted = balanced_truncation(extract_biclique_from_separator(gbar, sides, witness))
    k_exact = ratio = None
    if exact:
        k_exact, _ = max_balanced_biclique(b)
        ratio, _ = min_bk_ratio(b)
    return ReductionReport(
        n=n,
        uvat=q,
        attack_set=witness,
        lower_bound=lower,
        extracted=extracted,
        alpha=alpha,
        upper_bound=upper,
        r=r,
        k_exact=k_exact,
        bk_ratio=ratio,
    )


def plant_biclique_instance(n: int, k0: int, p: float, seed: int) -> BipartiteGraph:
    """Random ``n + n`` bipartite graph with a planted ``k0 x k0`` biclique.

    Uses ``random.Random(seed)`` (Mersenne Twister): the planted sides are
    drawn with ``sample``, then every other cross pair, in sorted order, is
    kept with probability ``p``. A draw equal to ``K_{n,n}`` is redrawn.
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if not 1 <= k0 < n:
        raise PreconditionError(f"planted size must satisfy 1 <= k0 < n, got k0={k0}, n={n}")
    if not 0 <= p < 1:
        raise PreconditionError(f"edge probability must lie in [0, 1), got {p}")
    rng = random.Random(seed)
    while True:
        left = sorted(rng.sample(range(n), k0))
        right = sorted(rng.sample(range(n), k0))
        edges = {(i, j) for i in left for j in right}
        for i in range(n):
            for j in range(n):
                if (i, j) not in edges and rng.random() < p:
                    edges.add((i, j))
        if len(edges) < n * n:
            return BipartiteGraph(n, n, frozenset(edges))


def random_valid_attack_set(
    gbar: Graph, sides: tuple[int, ...], rng: random.Random, max_tries: int = 1000
) -> frozenset[int] | None:
    """Random attack set of a co-bipartite complement with a positive residual.

    Keeps a random nonempty subset of V1 and a random nonempty subset of the
    V2 vertices with no complement edge into it; everything else is attacked.
    Returns ``None`` if ``max_tries`` draws all fail.
    """
    v1 = [v for v in range(gbar.n) if sides[v] == 0]
    v2 = [v for v in range(gbar.n) if sides[v] == 1]
    for _ in range(max_tries):
        keep1 = [v for v in v1 if rng.random() < 0.5]
        if not keep1:
            continue
        keep1_mask = to_mask(keep1)
        free = [v for v in v2 if not gbar.adj[v] & keep1_mask]
        keep2 = [v for v in free if rng.random() < 0.5]
        if not keep2 or len(keep1) + len(keep2) == gbar.n:
            continue
        kept = keep1_mask | to_mask(keep2)
        return from_mask(gbar.full_mask & ~kept)
    return None
