"""Exact solvers for complete bipartite subgraphs (bicliques)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import BipartiteGraph, from_mask, to_mask
from .measures import SizeGuardError

SIDE_GUARD = 16


class PreconditionError(ValueError):
    """Instance outside the domain an operation is defined on."""


@dataclass(frozen=True)
class BicliqueWitness:
    """Biclique ``(A, B)`` with ``A`` on side ``side_of_a`` (0 = V1, 1 = V2).

    Ids are side-local. Canonical orientation keeps ``|A| <= |B|``.
    """

    side_of_a: int
    a: frozenset[int]
    b: frozenset[int]

    def __post_init__(self) -> None:
        if self.side_of_a not in (0, 1):
            raise ValueError(f"side_of_a must be 0 or 1, got {self.side_of_a}")
        if not self.a:
            raise ValueError("biclique witness needs a nonempty A")
        if len(self.a) > len(self.b):
            raise ValueError(f"|A|={len(self.a)} exceeds |B|={len(self.b)}")

    @property
    def size(self) -> int:
        return len(self.a)

    @property
    def balanced(self) -> bool:
        return len(self.a) == len(self.b)

    def v1_v2(self) -> tuple[frozenset[int], frozenset[int]]:
        return (self.a, self.b) if self.side_of_a == 0 else (self.b, self.a)

    def to_dict(self) -> dict:
        return {"side_of_A": self.side_of_a, "A": sorted(self.a), "B": sorted(self.b)}


def _oriented(side: int, a_mask: int, b_mask: int) -> BicliqueWitness:
    """Put the smaller set first; equal sizes put V1 first."""
    if a_mask.bit_count() > b_mask.bit_count() or (
        a_mask.bit_count() == b_mask.bit_count() and side == 1
    ):
        side, a_mask, b_mask = 1 - side, b_mask, a_mask
    return BicliqueWitness(side, from_mask(a_mask), from_mask(b_mask))


def _lowest(mask: int, k: int) -> int:
    out = 0
    for _ in range(k):
        low = mask & -mask
        out |= low
        mask ^= low
    return out


def is_biclique(b: BipartiteGraph, w: BicliqueWitness) -> bool:
    """True iff every cross pair between ``w.a`` and ``w.b`` is an edge of ``b``."""
    adj = b.side_adj(w.side_of_a)
    other = b.side_size(1 - w.side_of_a)
    if any(v >= b.side_size(w.side_of_a) for v in w.a) or any(v >= other for v in w.b):
        return False
    b_mask = to_mask(w.b)
    return all(adj[v] & b_mask == b_mask for v in w.a)


def balanced_truncation(w: BicliqueWitness) -> BicliqueWitness:
    """Keep the ``|A|`` lowest ids of ``B``; still a biclique."""
    return BicliqueWitness(w.side_of_a, w.a, from_mask(_lowest(to_mask(w.b), len(w.a))))


def _check(b: BipartiteGraph, allow_large: bool) -> None:
    if not b.balanced:
        raise PreconditionError(f"balanced bipartite graph required, got sides {b.n1}, {b.n2}")
    if b.n1 > SIDE_GUARD and not allow_large:
        raise SizeGuardError(f"side size {b.n1} exceeds guard {SIDE_GUARD}; pass allow_large=True")


def bcbs_decision(b: BipartiteGraph, k: int, *, allow_large: bool = False) -> BicliqueWitness | None:
    """Return a ``k x k`` biclique of ``b`` if one exists, else ``None``."""
    _check(b, allow_large)
    n = b.n1
    if not 1 <= k <= n:
        raise PreconditionError(f"k must lie in 1..{n}, got {k}")
    adj = b.adj1
    full = (1 << n) - 1

    def grow(start: int, chosen: int, common: int) -> int | None:
        if chosen.bit_count() == k:
            return chosen
        need = k - chosen.bit_count()
        for v in range(start, n - need + 1):
            nxt = common & adj[v]
            if nxt.bit_count() >= k:
                found = grow(v + 1, chosen | 1 << v, nxt)
                if found is not None:
                    return found
        return None

    a_mask = grow(0, 0, full)
    if a_mask is None:
        return None
    common = full
    for v in range(n):
        if a_mask >> v & 1:
            common &= adj[v]
    return BicliqueWitness(0, from_mask(a_mask), from_mask(_lowest(common, k)))


def max_balanced_biclique(
    b: BipartiteGraph, *, allow_large: bool = False
) -> tuple[int, BicliqueWitness | None]:
    """Largest ``k`` admitting a ``k x k`` biclique, with a witness.

    Branch and bound over subsets ``A`` of V1: the best balanced biclique on
    ``A`` pairs it with ``|A|`` vertices of its common neighbourhood, so a
    branch is cut once neither ``A`` can grow past the incumbent nor its
    common neighbourhood is large enough. Edgeless graphs give ``(0, None)``.
    """
    _check(b, allow_large)
    n = b.n1
    adj = b.adj1
    best_k = 0
    best: tuple[int, int] | None = None

    def grow(start: int, chosen: int, common: int) -> None:
        nonlocal best_k, best
        size = chosen.bit_count()
        k = min(size, common.bit_count())
        if k > best_k:
            best_k, best = k, (chosen, common)
        for v in range(start, n):
            if size + (n - v) <= best_k:
                return
            nxt = common & adj[v]
            if nxt.bit_count() > best_k:
                grow(v + 1, chosen | 1 << v, nxt)

    grow(0, 0, (1 << n) - 1)
    if best is None:
        return 0, None
    chosen, common = best
    a = _lowest(chosen, best_k)
    return best_k, BicliqueWitness(0, from_mask(a), from_mask(_lowest(common, best_k)))


def bk_ratio(n: int, w: BicliqueWitness) -> Fraction:
    """``(2n - |A| - |B|) / |A|`` for a biclique of an ``n + n`` graph."""
    return Fraction(2 * n - len(w.a) - len(w.b), len(w.a))


def attack_set_of(n: int, w: BicliqueWitness) -> frozenset[int]:
    """Vertices of the co-bipartite complement outside ``A`` and ``B``.

    Uses the complement labeling V1 -> ``0..n-1``, V2 -> ``n..2n-1``.
    """
    v1, v2 = w.v1_v2()
    kept = set(v1) | {n + j for j in v2}
    return frozenset(v for v in range(2 * n) if v not in kept)


def min_bk_ratio(b: BipartiteGraph, *, allow_large: bool = False) -> tuple[Fraction, BicliqueWitness]:
    """Minimize ``(2n - |A| - |B|) / |A|`` over bicliques with ``|A| <= |B|``.

    ``A`` may sit on either side. The pair ``(V1, V2)`` itself is excluded
    (``|A| + |B| <= 2n - 1``). For a fixed ``A`` the ratio falls as ``B``
    grows, so only full common neighbourhoods need to be scored. Ties go to
    the pair whose complementary attack set is smallest, then
    lexicographically smallest.
    """
    _check(b, allow_large)
    if not b.edges:
        raise PreconditionError("bipartite graph has no edges")
    n = b.n1
    best: tuple[Fraction, int, list[int], BicliqueWitness] | None = None
    for side in (0, 1):
        adj = b.side_adj(side)
        full = (1 << n) - 1
        for chosen in range(1, 1 << n):
            common = full
            v, rest = 0, chosen
            while rest:
                if rest & 1:
                    common &= adj[v]
                rest >>= 1
                v += 1
            if not common:
                continue
            total = chosen.bit_count() + common.bit_count()
            if total == 2 * n:
                continue
            w = _oriented(side, chosen, common)
            attack = sorted(attack_set_of(n, w))
            key = (bk_ratio(n, w), len(attack), attack, w)
            if best is None or key[:3] < best[:3]:
                best = key
    assert best is not None
    return best[0], best[3]
