"""Exact dimension computations: VCD, teaching dimensions, recursive
peeling, and Sauer-Shelah certificates.

Minimum teaching sets are minimum hitting sets of the pairwise
difference masks.  For domains up to 14 instances the search runs
bit-parallel over the whole 2^d candidate space: ``_hit(d, diff)`` is a
big integer whose bit D says whether candidate set D intersects diff,
and a teaching set exists at size k iff the AND of the relevant hit
masks meets the popcount-k stratum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .concepts import ConceptClass
from .errors import BudgetExceededError
from .graphs import bits

#: Teaching-set searches refuse to look past this size.
TD_SIZE_CAP = 12

#: Domain size up to which the bit-parallel hitting-set search is used.
_BITPARALLEL_MAX_DOMAIN = 14

#: Domain size up to which the numpy peeling engine builds its tables.
_NUMPY_MAX_DOMAIN = 10


# ---------------------------------------------------------------------------
# VC-dimension
# ---------------------------------------------------------------------------

def vcd(cc: ConceptClass) -> tuple[int, frozenset[int]]:
    """Exact VC-dimension with the lexicographically smallest maximum
    shattered set as witness.

    Ascends by set size; the log2 |C| bound prunes the search, and no
    size can be skipped because shattering is closed under subsets.
    """
    m = len(cc)
    if m == 0:
        raise ValueError("VC-dimension of an empty class is undefined")
    limit = min(cc.domain_size, m.bit_length() - 1)
    concepts = cc.concepts
    use_np = m > 256
    arr = cc.concepts_array if use_np else None
    best_k = 0
    best_witness: frozenset[int] = frozenset()
    for k in range(1, limit + 1):
        found = None
        target = 1 << k
        for combo in itertools.combinations(range(cc.domain_size), k):
            smask = 0
            for i in combo:
                smask |= 1 << i
            if use_np:
                ok = np.unique(arr & np.uint32(smask)).size == target
            else:
                traces = set()
                for c in concepts:
                    traces.add(c & smask)
                    if len(traces) == target:
                        break
                ok = len(traces) == target
            if ok:
                found = combo
                break
        if found is None:
            break
        best_k = k
        best_witness = frozenset(found)
    return best_k, best_witness


# ---------------------------------------------------------------------------
# Bit-parallel hitting-set machinery
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _all_mask(d: int) -> int:
    return (1 << (1 << d)) - 1


@lru_cache(maxsize=1 << 16)
def _hit(d: int, diff: int) -> int:
    """Big-int over the 2^d candidate sets D: bit D set iff D & diff != 0."""
    full = (1 << d) - 1
    miss = 1  # indicator of all D disjoint from diff, i.e. D subseteq ~diff
    for b in bits(full & ~diff):
        miss |= miss << (1 << b)
    return _all_mask(d) ^ miss


@lru_cache(maxsize=None)
def _popcount_strata(d: int) -> tuple[int, ...]:
    strata = [0] * (d + 1)
    for D in range(1 << d):
        strata[D.bit_count()] |= 1 << D
    return tuple(strata)


def _feasible_mask(cc: ConceptClass, i: int, active: int) -> int:
    d = cc.domain_size
    ci = cc.concepts[i]
    feasible = _all_mask(d)
    seen = set()
    for j in bits(active):
        if j == i:
            continue
        diff = ci ^ cc.concepts[j]
        if diff in seen:
            continue
        seen.add(diff)
        feasible &= _hit(d, diff)
        if not feasible:
            break
    return feasible


def _td_from_feasible(d: int, feasible: int, size_cap: int):
    for k, stratum in enumerate(_popcount_strata(d)):
        if k > size_cap:
            break
        hitk = feasible & stratum
        if hitk:
            D = (hitk & -hitk).bit_length() - 1
            return k, frozenset(bits(D))
    raise BudgetExceededError("teaching-set search (size cap)", size_cap)


def _td_of_active(cc: ConceptClass, i: int, active: int,
                  size_cap: int = TD_SIZE_CAP) -> tuple[int, frozenset[int]]:
    """TD of concept i against the subclass given by the active index mask."""
    d = cc.domain_size
    if active & ~(1 << i) == 0:
        return 0, frozenset()
    if d <= _BITPARALLEL_MAX_DOMAIN:
        return _td_from_feasible(d, _feasible_mask(cc, i, active), size_cap)
    # wide-domain fallback: plain combination search over distinguishing bits
    ci = cc.concepts[i]
    diffs = sorted({ci ^ cc.concepts[j] for j in bits(active) if j != i})
    candidates = 0
    for diff in diffs:
        candidates |= diff
    cand_bits = list(bits(candidates))
    for k in range(min(size_cap, len(cand_bits)) + 1):
        for combo in itertools.combinations(cand_bits, k):
            dmask = 0
            for b in combo:
                dmask |= 1 << b
            if all(diff & dmask for diff in diffs):
                return k, frozenset(combo)
    raise BudgetExceededError("teaching-set search (size cap)", size_cap)


def td_of(cc: ConceptClass, i: int, *,
          size_cap: int = TD_SIZE_CAP) -> tuple[int, frozenset[int]]:
    """Minimum teaching set distinguishing concept i from the whole class.

    Returns (size, witness); the witness is the smallest-valued feasible
    instance mask at that size.  A singleton class needs no examples.
    """
    if not 0 <= i < len(cc):
        raise ValueError(f"concept index {i} out of range")
    return _td_of_active(cc, i, cc.all_indices_mask, size_cap)


def td_min(cc: ConceptClass) -> int:
    if len(cc) == 0:
        raise ValueError("empty class")
    return min(td_of(cc, i)[0] for i in range(len(cc)))


def td_max(cc: ConceptClass) -> int:
    if len(cc) == 0:
        raise ValueError("empty class")
    return max(td_of(cc, i)[0] for i in range(len(cc)))


# ---------------------------------------------------------------------------
# Recursive peeling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RtdCertificate:
    """Record of the peeling recursion: levels partition the class, each
    level lists the concepts that were easiest to teach at that point
    together with their teaching-set size; rtd is the maximum."""

    size: int
    levels: tuple[tuple[frozenset[int], int], ...]
    rtd: int

    def __post_init__(self):
        seen: set[int] = set()
        for level, value in self.levels:
            if seen & level:
                raise ValueError("certificate levels overlap")
            seen |= level
            if value < 0:
                raise ValueError("negative level value")
        if seen != set(range(self.size)):
            raise ValueError("certificate levels do not partition the class")
        if self.rtd != max(value for _, value in self.levels):
            raise ValueError("rtd does not match level values")

    def level_of(self, i: int) -> int:
        for k, (level, _) in enumerate(self.levels):
            if i in level:
                return k
        raise KeyError(i)


def rtd(cc: ConceptClass, *, size_cap: int = TD_SIZE_CAP) -> RtdCertificate:
    """The peeling recursion, literally: compute every remaining concept's
    teaching dimension against the remaining class, remove all minimizers
    as one level, recurse; the dimension is the largest level value."""
    if len(cc) == 0:
        raise ValueError("empty class")
    active = cc.all_indices_mask
    levels = []
    while active:
        tds = {i: _td_of_active(cc, i, active, size_cap)[0] for i in bits(active)}
        low = min(tds.values())
        argmin = frozenset(i for i, v in tds.items() if v == low)
        levels.append((argmin, low))
        for i in argmin:
            active &= ~(1 << i)
    value = max(v for _, v in levels)
    return RtdCertificate(len(cc), tuple(levels), value)


def rtd_subclass_lower_bound(cc: ConceptClass, subclass) -> int:
    """TD_min of the subclass viewed as a class over the same domain;
    every such value lower-bounds the full class's peeling dimension."""
    idxs = sorted(set(subclass))
    if not idxs:
        raise ValueError("subclass must be nonempty")
    sub = ConceptClass.from_masks(cc.domain_size, (cc.concepts[i] for i in idxs))
    return td_min(sub)


# ---------------------------------------------------------------------------
# Vectorized value-only peeling (bulk sweeps)
# ---------------------------------------------------------------------------

_np_tables: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _numpy_tables(d: int) -> tuple[np.ndarray, np.ndarray]:
    """(hit, strata): hit[diff] is the 2^d-bit candidate mask as uint64
    words; strata[k] the popcount-k stratum in the same layout."""
    cached = _np_tables.get(d)
    if cached is not None:
        return cached
    nd = 1 << d
    words = max(1, nd // 64)
    Ds = np.arange(nd, dtype=np.uint32)
    hit_bits = (Ds[None, :] & Ds[:, None]) != 0  # hit_bits[diff, D]
    weights = (np.uint64(1) << np.arange(64, dtype=np.uint64))
    if nd < 64:
        w = weights[:nd]
        hit = (hit_bits * w[None, :]).sum(axis=1, dtype=np.uint64)[:, None]
    else:
        hb = hit_bits.reshape(nd, words, 64)
        hit = (hb * weights[None, None, :]).sum(axis=2, dtype=np.uint64)
    hit[0, :] = ~np.uint64(0)  # diff 0 only pairs a concept with itself
    pc = np.array([D.bit_count() for D in range(nd)])
    strata = np.zeros((d + 1, words), dtype=np.uint64)
    for D in range(nd):
        k = pc[D]
        if nd < 64:
            strata[k, 0] |= np.uint64(1) << np.uint64(D)
        else:
            strata[k, D // 64] |= np.uint64(1) << np.uint64(D % 64)
    _np_tables[d] = (hit, strata)
    return hit, strata


def rtd_value(cc: ConceptClass, *, size_cap: int = TD_SIZE_CAP) -> int:
    """Value of the peeling recursion without certificate bookkeeping.

    Same recursion as rtd(), vectorized across concepts per level; used
    by the exhaustive sweeps.  Falls back to rtd() on wide domains.
    """
    m = len(cc)
    if m == 0:
        raise ValueError("empty class")
    if m == 1:
        return 0
    d = cc.domain_size
    if d > _NUMPY_MAX_DOMAIN:
        return rtd(cc, size_cap=size_cap).rtd
    hit, strata = _numpy_tables(d)
    words = hit.shape[1]
    concepts = cc.concepts_array
    active = np.arange(m)
    best = 0
    row_budget = max(1, (1 << 22) // max(1, m * words))
    while active.size:
        cs = concepts[active]
        ma = active.size
        feas = np.empty((ma, words), dtype=np.uint64)
        for r0 in range(0, ma, row_budget):
            r1 = min(ma, r0 + row_budget)
            diffs = cs[r0:r1, None] ^ cs[None, :]
            feas[r0:r1] = np.bitwise_and.reduce(hit[diffs], axis=1)
        tds = np.full(ma, -1, dtype=np.int32)
        remaining = ma
        for k in range(d + 1):
            if not remaining:
                break
            hitk = ((feas & strata[k][None, :]) != 0).any(axis=1)
            sel = (tds < 0) & hitk
            tds[sel] = k
            remaining -= int(sel.sum())
        if remaining or int(tds.max()) > size_cap:
            raise BudgetExceededError("teaching-set search (size cap)", size_cap)
        low = int(tds.min())
        if low > best:
            best = low
        active = active[tds != low]
    return best


# ---------------------------------------------------------------------------
# Sauer-Shelah
# ---------------------------------------------------------------------------

def sauer_bound(domain_size: int, d: int) -> int:
    """Sum of binomial(domain_size, i) for i = 0..d."""
    if domain_size < 0 or d < 0:
        raise ValueError("arguments must be nonnegative")
    return sum(comb(domain_size, i) for i in range(d + 1))


def sauer_rtd_implication(cc: ConceptClass) -> int | None:
    """Largest d+1 such that |C| exceeds the Sauer bound at d, which
    forces the peeling dimension above d.  None when no d qualifies."""
    m = len(cc)
    best = None
    for d in range(cc.domain_size + 1):
        if m > sauer_bound(cc.domain_size, d):
            best = d + 1
        else:
            break
    return best
