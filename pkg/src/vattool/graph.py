"""Graph and bipartite-graph representations.

Vertices are dense integers ``0..n-1``. Internally vertex sets are handled as
int bitmasks (bit ``v`` set iff ``v`` is a member); the public API speaks
``frozenset[int]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, TextIO

__all__ = [
    "BipartiteGraph",
    "Graph",
    "GraphFormatError",
    "co_bipartite_complement",
    "components_after_removal",
    "from_mask",
    "is_clique",
    "is_connected",
    "largest_component_size",
    "parse_bipartite",
    "parse_edge_list",
    "to_mask",
]


class GraphFormatError(ValueError):
    """Malformed graph text or an edge set violating the graph invariants."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _normalize_edge(u: int, v: int, n: int) -> tuple[int, int]:
    if u == v:
        raise GraphFormatError(f"self-loop on vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``. Instances are
    immutable; adjacency bitmasks are computed lazily and cached.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphFormatError(f"negative vertex count {self.n}")
        norm = frozenset(_normalize_edge(u, v, self.n) for u, v in self.edges)
        object.__setattr__(self, "edges", norm)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def to_text(self) -> str:
        lines = [f"p {self.n}"]
        lines.extend(f"{u} {v}" for u, v in sorted(self.edges))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with sides ``V1 = 0..n1-1`` and ``V2 = 0..n2-1``.

    Each cross edge ``(i, j)`` joins ``i`` in V1 to ``j`` in V2; the two sides
    use independent local ids.
    """

    n1: int
    n2: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n1 < 0 or self.n2 < 0:
            raise GraphFormatError(f"negative side size ({self.n1}, {self.n2})")
        norm = set()
        for i, j in self.edges:
            if not (0 <= i < self.n1 and 0 <= j < self.n2):
                raise GraphFormatError(f"cross edge ({i}, {j}) out of side range")
            norm.add((i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n1: int, n2: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
        return cls(n1, n2, frozenset(tuple(e) for e in edges))

    @property
    def balanced(self) -> bool:
        return self.n1 == self.n2

    @property
    def is_complete(self) -> bool:
        return len(self.edges) == self.n1 * self.n2

    @cached_property
    def adj1(self) -> tuple[int, ...]:
        """For each V1 vertex, the bitmask of its V2 neighbours."""
        masks = [0] * self.n1
        for i, j in self.edges:
            masks[i] |= 1 << j
        return tuple(masks)

    @cached_property
    def adj2(self) -> tuple[int, ...]:
        """For each V2 vertex, the bitmask of its V1 neighbours."""
        masks = [0] * self.n2
        for i, j in self.edges:
            masks[j] |= 1 << i
        return tuple(masks)

    def side_adj(self, side: int) -> tuple[int, ...]:
        return self.adj1 if side == 0 else self.adj2

    def side_size(self, side: int) -> int:
        return self.n1 if side == 0 else self.n2

    def to_text(self) -> str:
        lines = [f"b {self.n1} {self.n2}"]
        lines.extend(f"{i} {j}" for i, j in sorted(self.edges))
        return "\n".join(lines) + "\n"


def _lines(text: str | TextIO) -> Iterable[tuple[int, list[str]]]:
    if not isinstance(text, str):
        text = text.read()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _int_token(tok: str, lineno: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise GraphFormatError(f"malformed token {tok!r}", lineno) from None
    if value < 0:
        raise GraphFormatError(f"negative vertex id {value}", lineno)
    return value


def parse_edge_list(text: str | TextIO) -> Graph:
    """Parse ``u v`` lines with an optional ``p <n>`` header.

    Without a header the vertex count is ``1 + max id``. Duplicate edges
    collapse; self-loops and ids beyond a declared ``n`` are errors.
    """
    declared: int | None = None
    edges: set[tuple[int, int]] = set()
    max_id = -1
    for lineno, toks in _lines(text):
        if toks[0] == "p":
            if declared is not None or edges:
                raise GraphFormatError("header 'p' must come first and only once", lineno)
            if len(toks) != 2:
                raise GraphFormatError("expected 'p <n>'", lineno)
            declared = _int_token(toks[1], lineno)
            continue
        if len(toks) != 2:
            raise GraphFormatError(f"expected 'u v', got {len(toks)} tokens", lineno)
        u, v = (_int_token(t, lineno) for t in toks)
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}", lineno)
        if declared is not None and max(u, v) >= declared:
            raise GraphFormatError(f"vertex id {max(u, v)} >= declared n={declared}", lineno)
        max_id = max(max_id, u, v)
        edges.add((min(u, v), max(u, v)))
    n = declared if declared is not None else max_id + 1
    return Graph(n, frozenset(edges))


def parse_bipartite(text: str | TextIO) -> BipartiteGraph:
    """Parse a ``b <n1> <n2>`` header followed by ``i j`` cross-edge lines."""
    header: tuple[int, int] | None = None
    edges: set[tuple[int, int]] = set()
    for lineno, toks in _lines(text):
        if header is None:
            if toks[0] != "b" or len(toks) != 3:
                raise GraphFormatError("missing header 'b <n1> <n2>'", lineno)
            header = (_int_token(toks[1], lineno), _int_token(toks[2], lineno))
            continue
        if len(toks) != 2:
            raise GraphFormatError(f"expected 'i j', got {len(toks)} tokens", lineno)
        i, j = (_int_token(t, lineno) for t in toks)
        if i >= header[0] or j >= header[1]:
            raise GraphFormatError(f"index ({i}, {j}) out of side range {header}", lineno)
        edges.add((i, j))
    if header is None:
        raise GraphFormatError("missing header 'b <n1> <n2>'")
    return BipartiteGraph(header[0], header[1], frozenset(edges))


def component_masks(g: Graph, removed: int) -> list[int]:
    adj = g.adj
    remaining = g.full_mask & ~removed
    comps = []
    while remaining:
        low = remaining & -remaining
        comp = frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            nbrs = adj[bit.bit_length() - 1] & remaining & ~comp
            comp |= nbrs
            frontier |= nbrs
        comps.append(comp)
        remaining &= ~comp
    return comps


def largest_component_mask_size(g: Graph, removed: int) -> int:
    best = 0
    for comp in component_masks(g, removed):
        size = comp.bit_count()
        if size > best:
            best = size
    return best


def components_after_removal(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``g - removed``, ordered by smallest member."""
    return [from_mask(c) for c in component_masks(g, to_mask(removed))]


def largest_component_size(g: Graph, removed: Iterable[int] = ()) -> int:
    """Size of the largest component of ``g - removed``; 0 if nothing is left."""
    return largest_component_mask_size(g, to_mask(removed))


def is_clique(g: Graph) -> bool:
    return len(g.edges) == g.n * (g.n - 1) // 2


def is_connected(g: Graph) -> bool:
    return len(component_masks(g, 0)) <= 1


def co_bipartite_complement(b: BipartiteGraph) -> tuple[Graph, tuple[int, ...]]:
    """Build the co-bipartite complement of a balanced bipartite graph.

    V1 maps to ``0..n-1`` and V2 to ``n..2n-1``. Both sides become cliques and
    a cross pair is an edge exactly when it is *not* an edge of ``b``.
    Returns the graph and the side label (0 or 1) of every vertex.
    """
    if not b.balanced:
        raise ValueError(f"co-bipartite complement needs a balanced graph, got sides {b.n1}, {b.n2}")
    n = b.n1
    edges = set()
    for side in (0, 1):
        off = side * n
        edges.update((off + u, off + v) for u in range(n) for v in range(u + 1, n))
    edges.update((i, n + j) for i in range(n) for j in range(n) if (i, j) not in b.edges)
    sides = tuple([0] * n + [1] * n)
    return Graph(2 * n, frozenset(edges)), sides
