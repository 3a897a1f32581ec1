"""Vertex attack tolerance (VAT) and its unsmoothened variant (UVAT).

For an attack set ``S`` let ``residual(S) = |V - S - Cmax(V - S)|``, the number
of surviving vertices cut off from the largest surviving component. Then

    VAT(G)  = min_S |S| / (residual(S) + 1)
    UVAT(G) = min_S |S| / residual(S)          (only S with residual >= 1)

over nonempty proper subsets ``S``. All values are exact ``Fraction`` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from .graph import (
    Graph,
    component_masks,
    from_mask,
    is_clique,
    is_connected,
    largest_component_mask_size,
    to_mask,
)

VAT = "VAT"
UVAT = "UVAT"

DEFAULT_SIZE_GUARD = 24

UVATSolver = Callable[[Graph], "AttackResult"]


class MeasureError(ValueError):
    """Base class for inputs a measure cannot be evaluated on."""


class UndefinedMeasureError(MeasureError):
    """No attack set yields a positive residual, so UVAT has no value."""


class CliqueInputError(UndefinedMeasureError):
    """UVAT requested on a complete graph."""

    code = "clique_input"


class TrivialGraphError(MeasureError):
    """Graph with fewer than two vertices."""


class SizeGuardError(MeasureError):
    """Exact enumeration refused because the instance is too large."""


def ratio_to_dict(r: Fraction) -> dict[str, int]:
    return {"num": r.numerator, "den": r.denominator}


@dataclass(frozen=True)
class AttackResult:
    measure: str
    value: Fraction
    witness: frozenset[int]
    residual: int
    largest_component: int

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "value": ratio_to_dict(self.value),
            "witness": sorted(self.witness),
            "residual": self.residual,
            "largest_component": self.largest_component,
        }


def _check_attack_set(g: Graph, s: Iterable[int]) -> int:
    mask = to_mask(s)
    if mask & ~g.full_mask:
        raise ValueError("attack set contains vertices outside the graph")
    if mask == 0 or mask == g.full_mask:
        raise ValueError("attack set must be nonempty and proper")
    return mask


def _residual(g: Graph, mask: int) -> tuple[int, int]:
    cmax = largest_component_mask_size(g, mask)
    return g.n - mask.bit_count() - cmax, cmax


def residual_size(g: Graph, s: Iterable[int]) -> int:
    """Number of surviving vertices outside the largest surviving component."""
    return _residual(g, _check_attack_set(g, s))[0]


def vat_value(g: Graph, s: Iterable[int]) -> Fraction:
    mask = _check_attack_set(g, s)
    res, _ = _residual(g, mask)
    return Fraction(mask.bit_count(), res + 1)


def uvat_value(g: Graph, s: Iterable[int]) -> Fraction | None:
    """UVAT score of ``s``, or ``None`` when ``s`` leaves a zero residual."""
    mask = _check_attack_set(g, s)
    res, _ = _residual(g, mask)
    if res == 0:
        return None
    return Fraction(mask.bit_count(), res)


def _guard(g: Graph, allow_large: bool) -> None:
    if g.n < 2:
        raise TrivialGraphError(f"graph has {g.n} vertices; need at least 2")
    if g.n > DEFAULT_SIZE_GUARD and not allow_large:
        raise SizeGuardError(
            f"exact search over 2^{g.n} subsets refused (n > {DEFAULT_SIZE_GUARD}); "
            "pass allow_large=True to override"
        )


def size_lower_bound(measure: str, n: int, s: int) -> Fraction | None:
    """Smallest value any attack set of size ``s`` can score.

    The largest surviving component has at least one vertex, so the residual
    is at most ``n - s - 1``. Returns ``None`` when no size-``s`` set can have
    a defined UVAT value.
    """
    if measure == VAT:
        return Fraction(s, n - s)
    if n - s - 1 <= 0:
        return None
    return Fraction(s, n - s - 1)


def _search(g: Graph, measure: str, prune: bool) -> AttackResult | None:
    n = g.n
    bits = [1 << v for v in range(n)]
    best: tuple[Fraction, int, int, int] | None = None  # value, mask, residual, cmax
    for size in range(1, n):
        bound = size_lower_bound(measure, n, size)
        if bound is None:
            break
        # bounds grow with size and ties go to the smaller set, so stop here
        if prune and best is not None and bound >= best[0]:
            break
        for combo in combinations(bits, size):
            mask = sum(combo)
            res, cmax = _residual(g, mask)
            if measure == UVAT:
                if res == 0:
                    continue
                value = Fraction(size, res)
            else:
                value = Fraction(size, res + 1)
            # combinations() yields lexicographic order, so strict < keeps the tie-break
            if best is None or value < best[0]:
                best = (value, mask, res, cmax)
    if best is None:
        return None
    value, mask, res, cmax = best
    return AttackResult(measure, value, from_mask(mask), res, cmax)


def vat_exact(g: Graph, *, allow_large: bool = False, prune: bool = True) -> AttackResult:
    """Exact VAT by size-ordered enumeration with size-class bounds.

    Among minimizers the smallest set wins, then the lexicographically
    smallest sorted vertex list.
    """
    _guard(g, allow_large)
    result = _search(g, VAT, prune)
    assert result is not None
    return result


def uvat_exact(g: Graph, *, allow_large: bool = False, prune: bool = True) -> AttackResult:
    """Exact UVAT; same search and tie-breaking as :func:`vat_exact`.

    Raises CliqueInputError on complete graphs. A non-clique on two vertices
    has no admissible attack set either and raises UndefinedMeasureError.
    """
    _guard(g, allow_large)
    if is_clique(g):
        raise CliqueInputError(f"UVAT is undefined on the complete graph K_{g.n}")
    result = _search(g, UVAT, prune)
    if result is None:
        raise UndefinedMeasureError("no nonempty proper attack set leaves a positive residual")
    return result


def _result_for(g: Graph, measure: str, mask: int) -> AttackResult:
    res, cmax = _residual(g, mask)
    size = mask.bit_count()
    value = Fraction(size, res) if measure == UVAT else Fraction(size, res + 1)
    return AttackResult(measure, value, from_mask(mask), res, cmax)


def greedy_uvat(g: Graph) -> AttackResult:
    """Highest-degree-first attack heuristic for UVAT.

    Repeatedly deletes a maximum-degree vertex (degree within the surviving
    graph, smallest id on ties) of the current largest component and keeps
    the best prefix with a positive residual. No approximation guarantee.
    """
    if g.n < 3:
        raise TrivialGraphError(f"greedy UVAT needs at least 3 vertices, got {g.n}")
    if not is_connected(g):
        raise MeasureError("greedy UVAT needs a connected graph")
    if is_clique(g):
        raise CliqueInputError(f"UVAT is undefined on the complete graph K_{g.n}")

    adj = g.adj
    removed = 0
    best: tuple[Fraction, int, int] | None = None  # value, size, mask
    while True:
        comps = component_masks(g, removed)
        target = max(comps, key=lambda c: (c.bit_count(), -(c & -c)))
        if target.bit_count() < 2:
            break
        alive = g.full_mask & ~removed
        pick = max(
            (v for v in range(g.n) if target >> v & 1),
            key=lambda v: ((adj[v] & alive).bit_count(), -v),
        )
        removed |= 1 << pick
        if removed == g.full_mask:
            break
        res, _ = _residual(g, removed)
        if res >= 1:
            key = (Fraction(removed.bit_count(), res), removed.bit_count(), removed)
            if best is None or key[:2] < best[:2]:
                best = key
    if best is None:
        # fall back to isolating a non-adjacent pair
        u, v = next((u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v))
        mask = g.full_mask & ~((1 << u) | (1 << v))
        return _result_for(g, UVAT, mask)
    return _result_for(g, UVAT, best[2])


def is_valid_separator(g: Graph, result: AttackResult) -> bool:
    """Whether the witness disconnects something: Cmax < |V| - |witness|."""
    mask = to_mask(result.witness)
    if mask == 0 or mask == g.full_mask:
        return False
    return largest_component_mask_size(g, mask) < g.n - mask.bit_count()
