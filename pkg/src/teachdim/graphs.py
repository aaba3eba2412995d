"""Undirected graphs on index vertices, with bit-vector adjacency.

Vertices are the integers 0..n-1 and every vertex set is a Python int
bitmask internally; the public functions accept and return frozensets.
All structures are immutable after construction and safe to share
between threads or worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceededError, GraphFormatError

#: Hard cap on vertex count.  Induced concept classes grow exponentially,
#: so anything beyond desk scale is rejected at construction time.
MAX_VERTICES = 24

#: Default cap on the number of connected vertex sets an enumeration may
#: visit before raising BudgetExceededError.
DEFAULT_ENUM_BUDGET = 1 << 22

#: Exhaustive spanning-tree enumeration is only meant as a small-scale
#: cross-check; it refuses graphs larger than this.
MAX_SPANNING_TREE_VERTICES = 8


def bits(mask: int):
    """Iterate over the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: ``adj[v]`` is the neighbor bitmask of v."""

    n: int
    adj: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if self.n > MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} exceeds cap {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = self.full_mask
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} mentions vertices >= {self.n}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at edge {{{u},{v}}}")
        if self.names is not None and len(self.names) != self.n:
            raise ValueError("names length does not match vertex count")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v
        )

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return set_of(self.adj[v])

    def closed_mask(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def vertex_name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def vertex_names(self, mask_or_set) -> str:
        vs = mask_or_set if isinstance(mask_or_set, int) else mask_of(mask_or_set)
        return "{" + ",".join(self.vertex_name(v) for v in bits(vs)) + "}"

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")

    def _check_mask(self, mask: int):
        if mask & ~self.full_mask or mask < 0:
            raise ValueError("vertex set out of range")


def graph_from_edges(n: int, edges, names=None) -> Graph:
    """Build a Graph from an iterable of (u, v) pairs; duplicates rejected."""
    adj = [0] * n
    seen = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {{{u},{v}}} out of range for n={n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge {{{u},{v}}}")
        seen.add(key)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), tuple(names) if names is not None else None)


# ---------------------------------------------------------------------------
# Neighborhoods and basic structure
# ---------------------------------------------------------------------------

def closed_neighborhood_mask(g: Graph, xmask: int) -> int:
    m = 0
    for v in bits(xmask):
        m |= g.closed_mask(v)
    return m


def open_neighborhood_mask(g: Graph, xmask: int) -> int:
    return closed_neighborhood_mask(g, xmask) & ~xmask


def closed_neighborhood(g: Graph, x) -> frozenset[int]:
    """N(X) = union over x in X of (neighbors of x plus x itself)."""
    xmask = _as_mask(g, x)
    return set_of(closed_neighborhood_mask(g, xmask))


def open_neighborhood(g: Graph, x) -> frozenset[int]:
    """N(X) minus X: the vertices outside X adjacent to some member."""
    xmask = _as_mask(g, x)
    return set_of(open_neighborhood_mask(g, xmask))


def _as_mask(g: Graph, x) -> int:
    if isinstance(x, int):
        mask = x
    else:
        mask = 0
        for v in x:
            g._check_vertex(v)
            mask |= 1 << v
    g._check_mask(mask)
    return mask


def spanned_subgraph(g: Graph, x) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph spanned by X, reindexed to 0..|X|-1.

    Returns the subgraph together with the retained-index map: entry i of
    the map is the original index of new vertex i.
    """
    xmask = _as_mask(g, x)
    kept = tuple(bits(xmask))
    pos = {v: i for i, v in enumerate(kept)}
    adj = [0] * len(kept)
    for v in kept:
        for u in bits(g.adj[v] & xmask):
            adj[pos[v]] |= 1 << pos[u]
    names = tuple(g.vertex_name(v) for v in kept) if g.names is not None else None
    return Graph(len(kept), tuple(adj), names), kept


def _component_mask(g: Graph, start: int, within: int) -> int:
    comp = 1 << start
    frontier = comp
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= g.adj[v]
        frontier = grow & within & ~comp
        comp |= frontier
    return comp


def components(g: Graph) -> tuple[frozenset[int], ...]:
    """Maximal connected vertex sets, ordered by smallest contained index."""
    remaining = g.full_mask
    out = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _component_mask(g, start, remaining)
        out.append(set_of(comp))
        remaining &= ~comp
    return tuple(out)


def is_connected(g: Graph, x) -> bool:
    """True iff the nonempty set X spans a connected subgraph of g."""
    xmask = _as_mask(g, x)
    if xmask == 0:
        raise ValueError("is_connected is undefined for the empty set")
    start = (xmask & -xmask).bit_length() - 1
    return _component_mask(g, start, xmask) == xmask


# ---------------------------------------------------------------------------
# Connected-set enumeration
# ---------------------------------------------------------------------------

def connected_set_masks(g: Graph, *, within: int | None = None,
                        budget: int = DEFAULT_ENUM_BUDGET):
    """Yield every nonempty connected vertex set of g exactly once, as a mask.

    Classic pivot include/exclude growth: sets are partitioned by their
    minimum vertex, so no visited-set is needed.  Raises
    BudgetExceededError after yielding ``budget`` sets.
    """
    allowed_all = g.full_mask if within is None else within
    count = 0
    for v in bits(allowed_all):
        higher = allowed_all & ~((1 << (v + 1)) - 1)
        count += 1
        if count > budget:
            raise BudgetExceededError("connected-set enumeration", budget)
        yield 1 << v
        # stack entries: (set so far, extension candidates, banned vertices);
        # a set is yielded exactly once, at the include step that creates it
        stack = [(1 << v, g.adj[v] & higher, 0)]
        while stack:
            mask, cand, banned = stack.pop()
            if not cand:
                continue
            u = (cand & -cand).bit_length() - 1
            ubit = 1 << u
            # branch 1: never include u
            stack.append((mask, cand ^ ubit, banned | ubit))
            # branch 2: include u, extend candidates by u's fresh neighbors
            newmask = mask | ubit
            count += 1
            if count > budget:
                raise BudgetExceededError("connected-set enumeration", budget)
            yield newmask
            new_cand = ((cand ^ ubit) | (g.adj[u] & higher & ~banned)) & ~newmask
            stack.append((newmask, new_cand, banned))


def max_leaf_number(g: Graph, *, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """The graph parameter ell(G): per component, the largest open
    neighborhood of a nonempty connected set; maximized over components.

    A single-vertex component contributes 0.
    """
    if g.n == 0:
        raise ValueError("max_leaf_number requires a nonempty graph")
    best = 0
    for mask in connected_set_masks(g, budget=budget):
        size = open_neighborhood_mask(g, mask).bit_count()
        if size > best:
            best = size
    return best


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tree:
    """A tree spanning a designated vertex subset of an ambient graph."""

    n: int
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        vmask = mask_of(self.vertices)
        if vmask >> self.n:
            raise ValueError("tree vertices out of ambient range")
        if not self.vertices:
            raise ValueError("a tree must have at least one vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("edge count must equal vertex count - 1")
        deg = {v: 0 for v in self.vertices}
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            if u >= v:
                raise ValueError("tree edges must be stored as (min, max) pairs")
            if u not in deg or v not in deg:
                raise ValueError("tree edge endpoint outside vertex set")
            deg[u] += 1
            deg[v] += 1
            adj[u].add(v)
            adj[v].add(u)
        # connectivity over the designated vertices
        start = next(iter(self.vertices))
        seen = {start}
        todo = [start]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if seen != self.vertices:
            raise ValueError("tree is not connected over its vertex set")

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.edges if v in (u, w))

    def leaves(self) -> frozenset[int]:
        """Degree-1 vertices; for a single-vertex tree, that vertex itself."""
        if len(self.vertices) == 1:
            return self.vertices
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return frozenset(v for v, d in deg.items() if d == 1)

    def interior(self) -> frozenset[int]:
        return self.vertices - self.leaves()

    def leaf_count(self) -> int:
        return len(self.leaves())

    def as_graph(self) -> Graph:
        return graph_from_edges(self.n, sorted(self.edges))

    def is_subgraph_of(self, g: Graph) -> bool:
        if self.n != g.n:
            return False
        return all(g.adj[u] >> v & 1 for u, v in self.edges)


def _bfs_tree_edges(g: Graph, root: int, within: int,
                    allowed_edges: set[tuple[int, int]] | None = None):
    """Deterministic BFS tree inside ``within``; neighbors visited ascending."""
    seen = 1 << root
    order = [root]
    edges = []
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        for u in bits(g.adj[v] & within & ~seen):
            if allowed_edges is not None and (min(u, v), max(u, v)) not in allowed_edges:
                continue
            seen |= 1 << u
            order.append(u)
            edges.append((min(u, v), max(u, v)))
    return seen, edges


def neighborhood_spanning_tree(g: Graph, x) -> Tree:
    """Spanning tree of the subgraph spanned by N(X) in which every vertex
    of the open neighborhood of X is a leaf.

    Built by taking a BFS spanning tree of the subgraph spanned by X
    (rooted at the smallest index) and then hanging each outside neighbor
    off its smallest-index contact in X.
    """
    xmask = _as_mask(g, x)
    if xmask == 0:
        raise ValueError("X must be nonempty")
    if not is_connected(g, xmask):
        raise ValueError("X must be connected")
    root = (xmask & -xmask).bit_length() - 1
    seen, edges = _bfs_tree_edges(g, root, xmask)
    assert seen == xmask
    closed = closed_neighborhood_mask(g, xmask)
    for y in bits(closed & ~xmask):
        contact = (g.adj[y] & xmask)
        v = (contact & -contact).bit_length() - 1
        edges.append((min(v, y), max(v, y)))
    return Tree(g.n, set_of(closed), frozenset(edges))


def extend_to_spanning_tree(g: Graph, t: Tree) -> Tree:
    """Grow t into a spanning tree of its component without losing leaves.

    Edges are added greedily (smallest tree vertex, then smallest new
    vertex).  When t already has the maximum possible number of leaves,
    the result is t plus paths hanging off t's leaves; the test suite
    asserts that property.
    """
    if not t.is_subgraph_of(g):
        raise ValueError("tree is not a subgraph of the graph")
    tmask = mask_of(t.vertices)
    start = (tmask & -tmask).bit_length() - 1
    comp = _component_mask(g, start, g.full_mask)
    if tmask & ~comp:
        raise ValueError("tree does not lie in one component of the graph")
    edges = set(t.edges)
    while tmask != comp:
        added = False
        for v in bits(tmask):
            out = g.adj[v] & comp & ~tmask
            if out:
                u = (out & -out).bit_length() - 1
                edges.add((min(u, v), max(u, v)))
                tmask |= 1 << u
                added = True
                break
        assert added
    return Tree(g.n, set_of(comp), frozenset(edges))


def spanning_trees(g: Graph):
    """Exhaustively enumerate spanning trees of a connected graph.

    Recursive edge inclusion/exclusion with cycle pruning; oracle-grade
    machinery only, refuses graphs with more than
    MAX_SPANNING_TREE_VERTICES vertices.  Yields tuples of edges.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if g.n > MAX_SPANNING_TREE_VERTICES:
        raise ValueError(
            f"spanning-tree enumeration capped at {MAX_SPANNING_TREE_VERTICES} vertices"
        )
    if not is_connected(g, g.full_mask):
        raise ValueError("graph must be connected")
    if g.n == 1:
        yield ()
        return
    edge_list = g.edges()
    need = g.n - 1

    def rec(idx, chosen, parent):
        if len(chosen) == need:
            yield tuple(chosen)
            return
        if len(edge_list) - idx < need - len(chosen):
            return
        u, v = edge_list[idx]
        ru = _find(parent, u)
        rv = _find(parent, v)
        if ru != rv:
            child = parent.copy()
            child[max(ru, rv)] = min(ru, rv)
            chosen.append((u, v))
            yield from rec(idx + 1, chosen, child)
            chosen.pop()
        yield from rec(idx + 1, chosen, parent)

    yield from rec(0, [], list(range(g.n)))


def _find(parent, v):
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def max_leaf_number_exhaustive(g: Graph) -> int:
    """Oracle twin of max_leaf_number: per component, max over all spanning
    trees of the number of degree-1 vertices."""
    if g.n == 0:
        raise ValueError("empty graph")
    best = 0
    for comp in components(g):
        sub, _ = spanned_subgraph(g, comp)
        for edges in spanning_trees(sub):
            deg = [0] * sub.n
            for u, v in edges:
                deg[u] += 1
                deg[v] += 1
            leaves = sum(1 for d in deg if d == 1)
            if leaves > best:
                best = leaves
    return best


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the text format: header "n m", then m lines "u v" with
    0 <= u < v < n.  Lines starting with '#' are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in lines if ln and not ln.startswith("#")]
    if not rows:
        raise GraphFormatError("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"bad header line: {rows[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header line: {rows[0]!r}") from exc
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header")
    if len(rows) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad edge line: {ln!r}") from exc
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edge {u} {v} violates 0 <= u < v < n={n}")
        edges.append((u, v))
    try:
        return graph_from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g))
