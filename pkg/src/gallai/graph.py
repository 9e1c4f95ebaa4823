"""Simple undirected graphs with the deterministic primitives the decomposer needs.

Vertices are integer ids in a fixed universe [0, n). Derived graphs (edge
removals, component views) keep the same universe so ids stay stable; a vertex
with no remaining edges is simply isolated, never reindexed.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]

_EMPTY: frozenset[int] = frozenset()


class GraphError(Exception):
    """Base class for graph construction and query errors."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class IdOutOfRange(GraphError):
    pass


class NotTwoDegenerate(GraphError):
    """Peeling got stuck; `stuck` holds the offending induced subgraph's vertices."""

    def __init__(self, stuck: Sequence[int]):
        self.stuck = tuple(sorted(stuck))
        super().__init__(f"no vertex of degree <= 2 in induced subgraph {self.stuck}")


class NoPath(GraphError):
    pass


def norm_edge(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable undirected simple graph on the vertex universe [0, n)."""

    __slots__ = ("n", "_adj", "m")

    def __init__(self, n: int, adj: tuple[frozenset[int], ...], m: int):
        self.n = n
        self._adj = adj
        self.m = m

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        """Build a graph, rejecting self-loops, duplicates and out-of-range ids."""
        if n < 0:
            raise IdOutOfRange(f"negative vertex count {n}")
        sets: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise IdOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
            if v in sets[u]:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            sets[u].add(v)
            sets[v].add(u)
            m += 1
        return cls(n, tuple(frozenset(s) if s else _EMPTY for s in sets), m)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> Iterator[Edge]:
        """All edges in (min, max) form, sorted."""
        for u in range(self.n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def non_isolated(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self._adj[v])

    def non_isolated_count(self) -> int:
        return sum(1 for v in range(self.n) if self._adj[v])

    def without_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Copy of this graph with the given edges masked out."""
        removal: dict[int, set[int]] = {}
        count = 0
        for u, v in edges:
            if v not in self._adj[u]:
                raise GraphError(f"cannot remove absent edge ({u}, {v})")
            removal.setdefault(u, set()).add(v)
            removal.setdefault(v, set()).add(u)
            count += 1
        if not count:
            return self
        adj = list(self._adj)
        for w, gone in removal.items():
            left = adj[w] - gone
            adj[w] = left if left else _EMPTY
        return Graph(self.n, tuple(adj), self.m - count)

    def without_vertex(self, v: int) -> "Graph":
        """Mask every edge incident on v (v stays in the universe, isolated)."""
        return self.without_edges((v, w) for w in self._adj[v])

    def restricted_to(self, vertices: Iterable[int]) -> "Graph":
        """View keeping only edges with both endpoints in `vertices`."""
        keep = set(vertices)
        adj: list[frozenset[int]] = [_EMPTY] * self.n
        m = 0
        for v in keep:
            inside = self._adj[v] & keep
            adj[v] = frozenset(inside) if inside else _EMPTY
            m += len(inside)
        return Graph(self.n, tuple(adj), m // 2)

    def with_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Copy with extra edges added (used for small reattachment views)."""
        adj = list(self._adj)
        added = 0
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            if v in adj[u]:
                raise DuplicateEdge(f"edge ({u}, {v}) already present")
            adj[u] = adj[u] | {v}
            adj[v] = adj[v] | {u}
            added += 1
        return Graph(self.n, tuple(adj), self.m + added)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Path:
    """A simple path given by its vertex sequence (one vertex = zero edges)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 1:
            raise ValueError("path needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"repeated vertex in path {self.vertices}")

    def edges(self) -> Iterator[Edge]:
        for a, b in zip(self.vertices, self.vertices[1:]):
            yield norm_edge(a, b)

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.vertices[0], self.vertices[-1])

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Cycle:
    """A simple cycle given by its vertex ring (closing edge implied)."""

    ring: tuple[int, ...]

    def __post_init__(self):
        if len(self.ring) < 3:
            raise ValueError("cycle needs at least three vertices")
        if len(set(self.ring)) != len(self.ring):
            raise ValueError(f"repeated vertex in cycle {self.ring}")

    def edges(self) -> Iterator[Edge]:
        ring = self.ring
        for i, a in enumerate(ring):
            yield norm_edge(a, ring[(i + 1) % len(ring)])

    def __len__(self) -> int:
        return len(self.ring)


@dataclass(frozen=True)
class EliminationOrder:
    """Vertex removal order witnessing 2-degeneracy."""

    order: tuple[int, ...]


@dataclass(frozen=True)
class Component:
    """One connected piece of a graph view.

    `graph` is a same-universe view holding only this component's edges.
    Singleton components (no edges) appear when the caller's vertex set
    includes vertices that lost all their edges.
    """

    vertices: tuple[int, ...]
    graph: Graph
    m: int

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    @property
    def is_triangle(self) -> bool:
        return self.n == 3 and self.m == 3

    @property
    def is_isolated_vertex(self) -> bool:
        return self.n == 1


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[Component]:
    """Connected components of g, ordered by smallest contained vertex id.

    `within` restricts attention to the given vertices (default: every
    non-isolated vertex of g). Vertices of `within` that have no edges inside
    the set become singleton components.
    """
    restricted = within is not None
    if restricted:
        allowed = set(within)
        universe = sorted(allowed)
    else:
        allowed = set()
        universe = [v for v in range(g.n) if g.neighbors(v)]

    seen: set[int] = set()
    out: list[Component] = []
    for start in universe:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop()
            nbrs = g.neighbors(v) & allowed if restricted else g.neighbors(v)
            for w in nbrs:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        if restricted:
            view = g.restricted_to(comp)
        else:
            # Unrestricted components keep all their vertices' edges, so the
            # view can share the original adjacency sets.
            inside = set(comp)
            view = Graph(
                g.n,
                tuple(g.neighbors(v) if v in inside else _EMPTY for v in range(g.n)),
                sum(g.degree(v) for v in comp) // 2,
            )
        out.append(Component(vertices=tuple(comp), graph=view, m=view.m))
    return out


def triangle_components(g: Graph) -> list[tuple[int, int, int]]:
    """Vertex triples of the components of g that are exactly triangles,
    ordered by smallest member id."""
    return [c.vertices for c in connected_components(g) if c.is_triangle]


def degeneracy_order(g: Graph) -> EliminationOrder:
    """Deterministic 2-degeneracy peel: lowest id among minimum-degree vertices
    with remaining degree <= 2, repeated. Raises NotTwoDegenerate when stuck.
    """
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    heap: list[tuple[int, int]] = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    order: list[int] = []
    remaining = g.n
    while remaining:
        while True:
            d, v = heapq.heappop(heap)
            if alive[v] and d == deg[v]:
                break
        if d > 2:
            raise NotTwoDegenerate([u for u in range(g.n) if alive[u]])
        alive[v] = False
        order.append(v)
        remaining -= 1
        for w in g.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return EliminationOrder(tuple(order))


def is_two_degenerate(g: Graph) -> bool:
    try:
        degeneracy_order(g)
    except NotTwoDegenerate:
        return False
    return True


def shortest_path(
    g: Graph,
    source: int,
    target: int,
    forbidden_vertices: Iterable[int] = (),
    forbidden_edges: Iterable[Edge] = (),
) -> Path:
    """Deterministic BFS shortest path.

    Neighbors expand in ascending id and a vertex's parent is fixed at first
    discovery, so equal-length paths always resolve the same way. Raises
    NoPath if target is unreachable under the constraints.
    """
    banned_v = set(forbidden_vertices)
    if source in banned_v or target in banned_v:
        raise NoPath(f"endpoint forbidden ({source} -> {target})")
    banned_e = {norm_edge(*e) for e in forbidden_edges}
    if source == target:
        return Path((source,))
    parent: dict[int, int] = {source: -1}
    frontier = [source]
    while frontier:
        nxt: list[int] = []
        for v in frontier:
            for w in sorted(g.neighbors(v)):
                if w in parent or w in banned_v:
                    continue
                if banned_e and norm_edge(v, w) in banned_e:
                    continue
                parent[w] = v
                if w == target:
                    seq = [w]
                    while seq[-1] != source:
                        seq.append(parent[seq[-1]])
                    seq.reverse()
                    return Path(tuple(seq))
                nxt.append(w)
        frontier = nxt
    raise NoPath(f"no path {source} -> {target} avoiding {sorted(banned_v)}")


def is_cut_vertex(g: Graph, v: int) -> tuple[bool, tuple[Component, ...]]:
    """Whether removing v disconnects the non-isolated part of g.

    Returns (flag, components of g - v) with the component partition computed
    over g's non-isolated vertices minus v; vertices that lose their last edge
    show up as singleton components.
    """
    rest = [u for u in range(g.n) if g.neighbors(u) and u != v]
    if not rest:
        return (False, ())
    comps = connected_components(g.without_vertex(v), within=rest)
    return (len(comps) > 1, tuple(comps))


# --- edge-list text format ---------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the plain edge-list format.

    Lines: optional leading `p <n> <m>` header, then one `<u> <v>` pair per
    line; `#` starts a comment; blank lines are ignored. Without a header the
    vertex count is 1 + the largest id seen (0 for an empty file).
    """
    n_header: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n_header is not None or edges:
                raise GraphError(f"line {lineno}: stray header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: header needs `p <n> <m>`")
            try:
                n_header = int(parts[1])
                int(parts[2])
            except ValueError:
                raise GraphError(f"line {lineno}: bad header numbers") from None
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected `<u> <v>`, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id")
        edges.append((u, v))
    if n_header is None:
        n_header = 1 + max((max(u, v) for u, v in edges), default=-1)
    try:
        return Graph.from_edges(n_header, edges)
    except GraphError as exc:
        raise GraphError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    """Serialize with header and edges sorted by (min, max)."""
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
