"""Shared test machinery: exhaustive graph/tree enumeration and the
vectorized all-graphs max-leaf sweep used by the acceptance suite."""

from __future__ import annotations

import heapq
import itertools

import numpy as np

from teachdim.graphs import graph_from_edges


def all_graphs(n: int):
    """Every labeled graph on n vertices, one per edge subset."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield graph_from_edges(
            n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        )


def connected_graphs(n: int):
    from teachdim.graphs import is_connected

    for g in all_graphs(n):
        if n == 1 or is_connected(g, g.full_mask):
            yield g


def prufer_trees(n: int):
    """All labeled trees on n vertices, as edge lists."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        deg = [1] * n
        for x in seq:
            deg[x] += 1
        heap = [i for i in range(n) if deg[i] == 1]
        heapq.heapify(heap)
        edges = []
        for x in seq:
            leaf = heapq.heappop(heap)
            edges.append((min(leaf, x), max(leaf, x)))
            deg[x] -= 1
            if deg[x] == 1:
                heapq.heappush(heap, x)
        u, v = heapq.heappop(heap), heapq.heappop(heap)
        edges.append((min(u, v), max(u, v)))
        yield edges


def labeled_trees(n: int):
    for edges in prufer_trees(n):
        yield graph_from_edges(n, edges)


# ---------------------------------------------------------------------------
# Vectorized sweep over every labeled graph on n vertices
# ---------------------------------------------------------------------------

def _edge_index(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    return pairs, {e: i for i, e in enumerate(pairs)}


def bulk_max_leaf_by_neighborhoods(n: int, chunk_bits: int = 18) -> np.ndarray:
    """ell(G) for every graph G on n vertices (encoded as an edge bitmask),
    computed from the open neighborhoods of connected sets.

    Connectivity of each vertex subset is propagated across all graphs at
    once: X is connected iff for some non-cut member v, X minus v is
    connected and v touches it.
    """
    pairs, eidx = _edge_index(n)
    num_graphs = 1 << len(pairs)
    out = np.zeros(num_graphs, dtype=np.uint8)
    pc = np.array([m.bit_count() for m in range(1 << n)], dtype=np.uint8)
    chunk = min(num_graphs, 1 << chunk_bits)
    subsets_by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for m in range(1, 1 << n):
        subsets_by_size[m.bit_count()].append(m)
    for start in range(0, num_graphs, chunk):
        gids = np.arange(start, start + chunk, dtype=np.uint32)
        adjrow = [np.zeros(chunk, dtype=np.uint8) for _ in range(n)]
        for (u, v), i in eidx.items():
            bit = ((gids >> np.uint32(i)) & np.uint32(1)).astype(np.uint8)
            adjrow[u] |= bit << np.uint8(v)
            adjrow[v] |= bit << np.uint8(u)
        ell = np.zeros(chunk, dtype=np.uint8)
        conn: dict[int, np.ndarray] = {}
        for size in range(1, n + 1):
            for x in subsets_by_size[size]:
                if size == 1:
                    cx = np.ones(chunk, dtype=bool)
                else:
                    cx = np.zeros(chunk, dtype=bool)
                    rest = x
                    while rest:
                        vbit = rest & -rest
                        rest ^= vbit
                        v = vbit.bit_length() - 1
                        prev = x ^ vbit
                        cx |= conn[prev] & (
                            (adjrow[v] & np.uint8(prev)) != 0)
                conn[x] = cx
                nb = np.zeros(chunk, dtype=np.uint8)
                m = x
                while m:
                    vbit = m & -m
                    m ^= vbit
                    nb |= adjrow[vbit.bit_length() - 1]
                open_nb = nb & np.uint8(((1 << n) - 1) ^ x)
                ell = np.maximum(ell, np.where(cx, pc[open_nb], 0))
            if size >= 2:
                for x in subsets_by_size[size - 1]:
                    del conn[x]
        out[start:start + chunk] = ell
    return out


def bulk_max_leaf_by_spanning_trees(n: int) -> np.ndarray:
    """Max leaves over all spanning trees, for every graph on n vertices at
    once: seed every labeled tree's edge mask with its degree-1 count, then
    propagate maxima to edge supersets.  Disconnected graphs stay at 0."""
    pairs, eidx = _edge_index(n)
    num_graphs = 1 << len(pairs)
    best = np.zeros(num_graphs, dtype=np.uint8)
    if n == 1:
        return best
    masks = []
    counts = []
    for edges in prufer_trees(n):
        deg = [0] * n
        m = 0
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
            m |= 1 << eidx[(u, v)]
        masks.append(m)
        counts.append(sum(1 for d in deg if d == 1))
    np.maximum.at(best, np.array(masks, dtype=np.int64),
                  np.array(counts, dtype=np.uint8))
    for b in range(len(pairs)):
        view = best.reshape(-1, 2, 1 << b)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return best


def bulk_connected_mask(n: int) -> np.ndarray:
    """Boolean array over all graphs on n vertices: is the graph connected?"""
    if n == 1:
        return np.ones(1, dtype=bool)
    return bulk_max_leaf_by_spanning_trees(n) > 0
