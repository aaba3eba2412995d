"""Concept classes over a finite index domain.

A concept is an int bitmask over instances 0..domain_size-1 (bit set
means label +).  A ConceptClass stores its concepts deduplicated and in
increasing bitmask order; all index-valued results refer to that
canonical order, which keeps every downstream output reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import ClassFormatError
from .graphs import bits, mask_of, set_of

MAX_POWERSET_DOMAIN = 16
MAX_SHATTER_SET = 20


@dataclass(frozen=True)
class Sample:
    """A set of labeled instances: pos/neg are disjoint bitmasks."""

    pos: int = 0
    neg: int = 0

    def __post_init__(self):
        if self.pos < 0 or self.neg < 0:
            raise ValueError("sample masks must be nonnegative")
        if self.pos & self.neg:
            raise ValueError("contradictory sample: instance labeled both + and -")

    @classmethod
    def from_pairs(cls, pairs) -> "Sample":
        """Build from (instance, label) pairs; label is a bool or '+'/'-'."""
        pos = neg = 0
        for x, label in pairs:
            if label in (True, "+"):
                b = True
            elif label in (False, "-"):
                b = False
            else:
                raise ValueError(f"bad label {label!r}")
            bit = 1 << x
            if (pos | neg) & bit:
                if bool(pos & bit) != b:
                    raise ValueError(f"contradictory labels for instance {x}")
                continue
            if b:
                pos |= bit
            else:
                neg |= bit
        return cls(pos, neg)

    def pairs(self) -> tuple[tuple[int, bool], ...]:
        out = [(x, True) for x in bits(self.pos)] + [(x, False) for x in bits(self.neg)]
        return tuple(sorted(out))

    @property
    def instances(self) -> int:
        return self.pos | self.neg

    def __len__(self) -> int:
        return self.instances.bit_count()

    def union(self, other: "Sample") -> "Sample":
        return Sample(self.pos | other.pos, self.neg | other.neg)


def sample_of(concept: int, instances) -> Sample:
    """The sample a teacher presents: ``instances`` labeled by ``concept``."""
    imask = instances if isinstance(instances, int) else mask_of(instances)
    return Sample(concept & imask, imask & ~concept)


@dataclass(frozen=True)
class ConceptClass:
    """Deduplicated concepts in increasing bitmask order."""

    domain_size: int
    concepts: tuple[int, ...]

    def __post_init__(self):
        if self.domain_size < 0:
            raise ValueError("domain size must be nonnegative")
        full = (1 << self.domain_size) - 1
        prev = -1
        for c in self.concepts:
            if c & ~full or c < 0:
                raise ValueError("concept wider than the domain")
            if c <= prev:
                raise ValueError("concepts must be strictly increasing (deduplicated)")
            prev = c

    @classmethod
    def from_masks(cls, domain_size: int, masks) -> "ConceptClass":
        return cls(domain_size, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, domain_size: int, sets) -> "ConceptClass":
        return cls.from_masks(domain_size, (mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.concepts)

    def concept_set(self, i: int) -> frozenset[int]:
        return set_of(self.concepts[i])

    def concept_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(set_of(c) for c in self.concepts)

    def index_of(self, concept) -> int:
        mask = concept if isinstance(concept, int) else mask_of(concept)
        lo, hi = 0, len(self.concepts)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.concepts[mid] < mask:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(self.concepts) or self.concepts[lo] != mask:
            raise KeyError(f"concept {mask:#x} not in class")
        return lo

    @cached_property
    def concepts_array(self) -> np.ndarray:
        return np.asarray(self.concepts, dtype=np.uint32)

    @cached_property
    def instance_columns(self) -> tuple[int, ...]:
        """columns[i] = bitmask over concept indices whose concept contains i."""
        cols = [0] * self.domain_size
        for j, c in enumerate(self.concepts):
            for i in bits(c):
                cols[i] |= 1 << j
        return tuple(cols)

    @property
    def all_indices_mask(self) -> int:
        return (1 << len(self.concepts)) - 1


def powerset_class(domain_size: int) -> ConceptClass:
    """All subsets of the domain, as a class."""
    if domain_size > MAX_POWERSET_DOMAIN:
        raise ValueError(f"powerset domain capped at {MAX_POWERSET_DOMAIN}")
    if domain_size < 0:
        raise ValueError("domain size must be nonnegative")
    return ConceptClass(domain_size, tuple(range(1 << domain_size)))


def is_consistent(concept: int, s: Sample) -> bool:
    """True iff the concept reproduces every label of the sample."""
    return (concept & s.pos) == s.pos and (concept & s.neg) == 0


def version_space_mask(cc: ConceptClass, s: Sample) -> int:
    """Consistent concepts as a bitmask over concept indices."""
    if (s.pos | s.neg) >> cc.domain_size:
        raise ValueError("sample mentions instances outside the domain")
    vs = cc.all_indices_mask
    cols = cc.instance_columns
    for i in bits(s.pos):
        vs &= cols[i]
        if not vs:
            return 0
    for i in bits(s.neg):
        vs &= ~cols[i]
        if not vs:
            return 0
    return vs


def version_space(cc: ConceptClass, s: Sample) -> tuple[int, ...]:
    """Indices of all concepts consistent with the sample, ascending."""
    return tuple(bits(version_space_mask(cc, s)))


def is_shattered(cc: ConceptClass, instances) -> bool:
    """True iff every labeling of the instance set is realized by the class."""
    smask = instances if isinstance(instances, int) else mask_of(instances)
    if smask >> cc.domain_size:
        raise ValueError("instance set outside the domain")
    k = smask.bit_count()
    if k > MAX_SHATTER_SET:
        raise ValueError(f"shattering test capped at {MAX_SHATTER_SET} instances")
    target = 1 << k
    if len(cc.concepts) < target:
        return False
    traces = set()
    for c in cc.concepts:
        traces.add(c & smask)
        if len(traces) == target:
            return True
    return False


def disjoint_union(classes) -> ConceptClass:
    """Union of classes over concatenated (disjoint) domains.

    Each concept keeps label - outside its origin block.  If several
    blocks contain the all-negative concept, one copy survives: a class
    is a set of concepts.
    """
    classes = list(classes)
    offsets = []
    total = 0
    for cc in classes:
        offsets.append(total)
        total += cc.domain_size
    masks = set()
    for cc, off in zip(classes, offsets):
        for c in cc.concepts:
            masks.add(c << off)
    return ConceptClass.from_masks(total, masks)


def restrict(cc: ConceptClass, instances) -> ConceptClass:
    """Project every concept onto the instance set and deduplicate.

    The surviving instances are reindexed in increasing original order.
    """
    smask = instances if isinstance(instances, int) else mask_of(instances)
    if smask >> cc.domain_size:
        raise ValueError("instance set outside the domain")
    kept = tuple(bits(smask))
    masks = set()
    for c in cc.concepts:
        m = 0
        for new_i, old_i in enumerate(kept):
            if c >> old_i & 1:
                m |= 1 << new_i
        masks.add(m)
    return ConceptClass.from_masks(len(kept), masks)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def parse_class(text: str) -> ConceptClass:
    """Header "m d", then m rows of d characters from {0,1}; row character i
    is the concept's label on instance i."""
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise ClassFormatError("empty class file")
    head = rows[0].split()
    if len(head) != 2:
        raise ClassFormatError(f"bad header line: {rows[0]!r}")
    try:
        m, d = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ClassFormatError(f"bad header line: {rows[0]!r}") from exc
    if len(rows) - 1 != m:
        raise ClassFormatError(f"expected {m} concept rows, found {len(rows) - 1}")
    masks = []
    for ln in rows[1:]:
        if len(ln) != d or set(ln) - {"0", "1"}:
            raise ClassFormatError(f"bad concept row: {ln!r}")
        masks.append(sum(1 << i for i, ch in enumerate(ln) if ch == "1"))
    if len(set(masks)) != len(masks):
        raise ClassFormatError("duplicate concepts in class file")
    return ConceptClass.from_masks(d, masks)


def format_concept(concept: int, domain_size: int) -> str:
    return "".join("1" if concept >> i & 1 else "0" for i in range(domain_size))


def format_class(cc: ConceptClass) -> str:
    lines = [f"{len(cc.concepts)} {cc.domain_size}"]
    lines.extend(format_concept(c, cc.domain_size) for c in cc.concepts)
    return "\n".join(lines) + "\n"


def read_class(path) -> ConceptClass:
    return parse_class(Path(path).read_text())


def write_class(cc: ConceptClass, path) -> None:
    Path(path).write_text(format_class(cc))
