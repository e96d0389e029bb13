"""
Triangular lattice path engine and the path-indexed partition types O, sigma, Q, tau, xi
"""
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum, IntEnum
from math import comb, isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from cachetools import LRUCache, cached
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .exceptions import InvalidArgumentError, PartitionParseError
from .figurate import cube, octahedral, polygonal, tetrahedral, triangular

logger = logging.getLogger(__name__)


class Step(IntEnum):
    INC_FIRST = 0
    INC_SECOND = 1


@dataclass(frozen=True, order=True)
class LatticeIndex:
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.j <= self.i:
            raise InvalidArgumentError(f"lattice vertex needs 1 <= j <= i, got ({self.i}, {self.j})")


@dataclass(frozen=True)
class LatticePath:
    """Monotone path inside the region j <= i"""

    start: LatticeIndex
    steps: Tuple[Step, ...] = ()

    def __post_init__(self):
        for _ in self.vertices():
            pass

    def vertices(self) -> Iterator[LatticeIndex]:
        p, q = self.start.i, self.start.j
        yield self.start
        for step in self.steps:
            if step is Step.INC_FIRST:
                p += 1
            else:
                q += 1
            yield LatticeIndex(p, q)

    @property
    def end(self) -> LatticeIndex:
        p = self.start.i + sum(1 for step in self.steps if step is Step.INC_FIRST)
        q = self.start.j + sum(1 for step in self.steps if step is Step.INC_SECOND)
        return LatticeIndex(p, q)

    def __len__(self) -> int:
        return len(self.steps)


def _check_region(i: int, j: int):
    if j < 1 or j > i:
        raise InvalidArgumentError(f"lattice counts need 1 <= j <= i, got (i={i}, j={j})")


# Path counts


def _count_rows(i_max: int, j_max: int) -> Iterator[List[int]]:
    """Rows r = 1..i_max of N(r, q) for q <= min(r, j_max), built bottom-up"""
    prev: List[int] = []
    for r in range(1, i_max + 1):
        row = [r]
        for q in range(2, min(r, j_max) + 1):
            row.append(1 + row[-1] + (prev[q - 1] if r - 1 >= q else 0))
        prev = row
        yield row


@cached(cache=LRUCache(maxsize=65536))
def _count(i: int, j: int) -> int:
    for row in _count_rows(i, j):
        pass
    return row[j - 1]


def path_count(i: int, j: int) -> int:
    """Number of monotone paths ending at (i, j), the trivial path included"""
    _check_region(i, j)
    return _count(i, j)


def delta(j: int, t: int) -> int:
    """t-th forward difference of m -> path_count(j + m, j) at m = 0"""
    if j < 1 or t < 0:
        raise InvalidArgumentError(f"delta needs j >= 1 and t >= 0, got (j={j}, t={t})")
    return sum((-1) ** (t + m) * comb(t, m) * path_count(j + m, j) for m in range(t + 1))


def path_count_closed(i: int, j: int) -> int:
    """Newton-series closed form of path_count over the first j+1 differences"""
    _check_region(i, j)
    if j == 1:
        return i
    s = i - j + 1
    return sum(comb(s - 1, h) * delta(j, h) for h in range(j + 1))


def printed_closed_form(i: int, j: int) -> int:
    """Closed form with the binomial weights written as triangular/tetrahedral numbers"""
    _check_region(i, j)
    if j == 1:
        return i
    s = i - j + 1
    total = delta(j, 0) + (s - 1) * delta(j, 1)
    if j == 2:
        return total + triangular(s - 2) * delta(j, 2)
    for h in range(2, j):
        total += triangular(s - h) * delta(j, h)
    return total + tetrahedral(s - j) * delta(j, j)


def enumerate_paths(i: int, j: int) -> List[LatticePath]:
    """All paths ending at (i, j), ordered by start then step sequence"""
    _check_region(i, j)
    found: List[Tuple[Tuple[int, int], Tuple[Step, ...]]] = []

    def walk_back(p: int, q: int, suffix: Tuple[Step, ...]):
        found.append(((p, q), suffix))
        if p - 1 >= q:
            walk_back(p - 1, q, (Step.INC_FIRST,) + suffix)
        if q - 1 >= 1:
            walk_back(p, q - 1, (Step.INC_SECOND,) + suffix)

    walk_back(i, j, ())
    found.sort()
    return [LatticePath(LatticeIndex(*start), steps) for start, steps in found]


class PathCountTable(Mapping):
    """Read-only (i, j) -> N(i, j) over 1 <= j <= min(i, j_max), i <= i_max"""

    def __init__(self, i_max: int, j_max: int):
        self.i_max = i_max
        self.j_max = j_max
        self._entries: Dict[Tuple[int, int], int] = {}
        for i, row in enumerate(_count_rows(i_max, j_max), start=1):
            for j, count in enumerate(row, start=1):
                self._entries[(i, j)] = count

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self._entries[key]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def rows(self) -> List[List[int]]:
        return [[i, j, count] for (i, j), count in self._entries.items()]


def weight_table(i_max: int, j_max: int) -> PathCountTable:
    if not 1 <= j_max <= i_max:
        raise InvalidArgumentError(f"table bounds need i_max >= j_max >= 1, got ({i_max}, {j_max})")
    return PathCountTable(i_max, j_max)


# Partitions


class MultisetPartition(BaseModel):
    """Partition as part -> multiplicity"""

    model_config = ConfigDict(frozen=True)

    parts: Dict[int, int]

    @field_validator("parts")
    @classmethod
    def _positive(cls, parts: Dict[int, int]) -> Dict[int, int]:
        for part, mult in parts.items():
            if part < 1 or mult < 1:
                raise ValueError(f"parts and multiplicities must be positive, got {part}^{mult}")
        return dict(sorted(parts.items()))

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "MultisetPartition":
        counts: Dict[int, int] = {}
        for part in parts:
            counts[part] = counts.get(part, 0) + 1
        return cls(parts=counts)

    @property
    def total(self) -> int:
        return sum(part * mult for part, mult in self.parts.items())

    @property
    def size(self) -> int:
        return sum(self.parts.values())

    @property
    def max_part(self) -> int:
        return max(self.parts) if self.parts else 0

    def multiplicity(self, part: int) -> int:
        return self.parts.get(part, 0)

    def as_list(self) -> List[int]:
        return [part for part in sorted(self.parts, reverse=True) for _ in range(self.parts[part])]

    @property
    def notation(self) -> str:
        return "(" + " ".join(f"{part}^{mult}" for part, mult in self.parts.items()) + ")"


def subst_derivative(lam: MultisetPartition, i: int, u: int, times: int = 1) -> MultisetPartition:
    """Replace `times` occurrences of part i by part u"""
    if u < 1:
        raise InvalidArgumentError(f"substituted part must be positive, got {u}")
    if times < 1:
        raise InvalidArgumentError(f"times must be >= 1, got {times}")
    if lam.multiplicity(i) < times:
        raise InvalidArgumentError(f"part {i} occurs {lam.multiplicity(i)} times, cannot substitute {times}")
    parts = dict(lam.parts)
    parts[i] -= times
    if parts[i] == 0:
        del parts[i]
    parts[u] = parts.get(u, 0) + times
    return MultisetPartition(parts=parts)


class PartitionType(str, Enum):
    O = "O"
    SIGMA = "sigma"
    Q = "Q"
    TAU = "tau"
    XI = "xi"


DIAGONAL_TYPES = frozenset({PartitionType.SIGMA, PartitionType.Q, PartitionType.TAU})
PAIR_TYPES = frozenset({PartitionType.O, PartitionType.TAU})
OFFSET_TYPES = frozenset({PartitionType.SIGMA, PartitionType.TAU, PartitionType.XI})


def octahedral_triple(r: int, s: int, k: int) -> int:
    return octahedral(r) + octahedral(s) + octahedral(k)


def pentagonal_triple(r: int, s: int, k: int) -> int:
    return polygonal(5, r) + polygonal(5, s) + polygonal(5, k)


def cube_triple(r: int, s: int, k: int) -> int:
    return cube(r) + cube(s) + 2 * cube(k)


def offset_sigma(k: int, i: int) -> int:
    if k < 1 or i < 1:
        raise InvalidArgumentError(f"offsets need k, i >= 1, got (k={k}, i={i})")
    return octahedral_triple(i, i, k) - pentagonal_triple(i, i, k)


def offset_tau(k: int, i: int) -> int:
    if k < 1 or i < 1:
        raise InvalidArgumentError(f"offsets need k, i >= 1, got (k={k}, i={i})")
    return cube_triple(i, i, k) - octahedral_triple(i, i, k)


def offset_xi(k: int, i: int, j: int) -> int:
    if k < 1 or j < 1:
        raise InvalidArgumentError(f"offsets need k, j >= 1, got (k={k}, j={j})")
    if j > i:
        raise InvalidArgumentError(f"xi offset needs j <= i, got (i={i}, j={j})")
    return octahedral_triple(i, j, k) - pentagonal_triple(i, j, k)


def base_value(type_tag: PartitionType, r: int, s: int, k: int) -> int:
    """Value attached to a path start, offset excluded"""
    if type_tag in (PartitionType.O, PartitionType.TAU):
        return octahedral_triple(r, s, k)
    if type_tag is PartitionType.Q:
        return cube_triple(r, s, k)
    return pentagonal_triple(r, s, k)


def expected_offset(type_tag: PartitionType, i: int, j: int, k: int) -> int:
    if type_tag is PartitionType.SIGMA:
        return offset_sigma(k, i)
    if type_tag is PartitionType.TAU:
        return offset_tau(k, i)
    if type_tag is PartitionType.XI:
        return offset_xi(k, i, j)
    return 0


def partition_target(type_tag: PartitionType, i: int, j: int, k: int) -> int:
    """The number n every partition of the cell totals"""
    if type_tag in (PartitionType.Q, PartitionType.TAU):
        return cube_triple(i, j, k)
    return octahedral_triple(i, j, k)


def tail_cap(type_tag: PartitionType, i: int, j: int) -> int:
    if type_tag in PAIR_TYPES:
        return 2 * (i + j - 2)
    if type_tag is PartitionType.Q:
        return 2 * (i - 1)
    return i + j - 2


def gap_parts(type_tag: PartitionType, p: int) -> Tuple[int, ...]:
    """Parts contributed by a step that raises a rank from p to p+1"""
    if type_tag in PAIR_TYPES:
        return (p * p, (p + 1) * (p + 1))
    if type_tag is PartitionType.Q:
        return (3 * p * p + 3 * p + 1,)
    return (3 * p + 1,)


class TypedPartition(BaseModel):
    """A path-generated partition: base value at (r, s, k), offset, then gap parts"""

    model_config = ConfigDict(frozen=True)

    type_tag: PartitionType
    base: Tuple[int, int, int]
    offset: int = 0
    tail: Tuple[int, ...] = ()
    total: int

    @model_validator(mode="after")
    def _check_total(self):
        if self.total != self.base_value + self.offset + sum(self.tail):
            raise ValueError("total must equal base value + offset + tail")
        if self.type_tag not in OFFSET_TYPES and self.offset != 0:
            raise ValueError(f"type {self.type_tag.value} carries no offset")
        return self

    @property
    def base_value(self) -> int:
        return base_value(self.type_tag, *self.base)

    @property
    def parts(self) -> Tuple[int, ...]:
        """Flat ordered part sequence, base and offset included"""
        head = (self.base_value, self.offset) if self.type_tag in OFFSET_TYPES else (self.base_value,)
        return head + self.tail


def _check_typed_cell(type_tag: PartitionType, i: int, j: int, k: int):
    _check_region(i, j)
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if type_tag in DIAGONAL_TYPES and i != j:
        raise InvalidArgumentError(f"type {type_tag.value} is defined on the diagonal only, got (i={i}, j={j})")


def enumerate_typed(type_tag: PartitionType, i: int, j: int, k: int) -> List[TypedPartition]:
    """One partition per path ending at (i, j)"""
    type_tag = PartitionType(type_tag)
    _check_typed_cell(type_tag, i, j, k)
    offset = expected_offset(type_tag, i, j, k)
    target = partition_target(type_tag, i, j, k)
    cap = tail_cap(type_tag, i, j)
    partitions = []
    for path in enumerate_paths(i, j):
        p, q = path.start.i, path.start.j
        tail: List[int] = []
        for step in path.steps:
            if step is Step.INC_FIRST:
                tail.extend(gap_parts(type_tag, p))
                p += 1
            else:
                tail.extend(gap_parts(type_tag, q))
                q += 1
        assert len(tail) <= cap
        partitions.append(
            TypedPartition(
                type_tag=type_tag,
                base=(path.start.i, path.start.j, k),
                offset=offset,
                tail=tuple(tail),
                total=target,
            )
        )
    logger.debug(f"Enumerated {len(partitions)} partitions of type {type_tag.value} at ({i}, {j}, {k})")
    return partitions


def typed_count(type_tag: PartitionType, i: int, j: int, k: int) -> int:
    """Number of partitions of a typed cell; one per path"""
    type_tag = PartitionType(type_tag)
    _check_typed_cell(type_tag, i, j, k)
    return path_count(i, j)


def _reconstruct(
    type_tag: PartitionType, start: Tuple[int, int], tail: Sequence[int], i: int, j: int
) -> Optional[Tuple[int, int]]:
    p, q = start
    width = 2 if type_tag in PAIR_TYPES else 1
    if len(tail) % width:
        return None
    for idx in range(0, len(tail), width):
        chunk = tuple(tail[idx : idx + width])
        if chunk == gap_parts(type_tag, p) and p + 1 <= i:
            p += 1
        elif chunk == gap_parts(type_tag, q) and q + 1 <= min(p, j):
            q += 1
        else:
            return None
    return p, q


def validate_typed_partition(p: TypedPartition, i: int, j: int, k: int) -> bool:
    """Grammar check by rebuilding the path from the base ranks"""
    if k < 1 or not 1 <= j <= i:
        return False
    if p.type_tag in DIAGONAL_TYPES and i != j:
        return False
    r, s, base_k = p.base
    if base_k != k or not (1 <= s <= r <= i and s <= j):
        return False
    if p.offset != expected_offset(p.type_tag, i, j, k):
        return False
    if p.total != partition_target(p.type_tag, i, j, k):
        return False
    if len(p.tail) > tail_cap(p.type_tag, i, j):
        return False
    return _reconstruct(p.type_tag, (r, s), p.tail, i, j) == (i, j)


# Text form


def _square_text(part: int) -> str:
    root = isqrt(part)
    return f"{root}^2" if root * root == part else str(part)


def format_partition(p: TypedPartition) -> str:
    """Additive notation, e.g. 26+2^2+3^2"""
    tokens = [str(p.base_value)]
    if p.type_tag in OFFSET_TYPES:
        tokens.append(str(p.offset))
    if p.type_tag is PartitionType.O:
        tokens.extend(_square_text(part) for part in p.tail)
    elif p.type_tag is PartitionType.TAU:
        pairs = [p.tail[idx : idx + 2] for idx in range(0, len(p.tail), 2)]
        tokens.extend("(" + "+".join(_square_text(part) for part in pair) + ")" for pair in pairs)
    else:
        tokens.extend(str(part) for part in p.tail)
    return "+".join(tokens)


def _parse_token(token: str) -> int:
    token = token.strip().strip("()").replace("²", "^2")
    if "^" in token:
        root, _, power = token.partition("^")
        if not root.strip().isdigit() or power.strip() != "2":
            raise PartitionParseError(f"cannot read part {token!r}")
        return int(root) ** 2
    if not token.isdigit():
        raise PartitionParseError(f"cannot read part {token!r}")
    return int(token)


def parse_partition(text: str, type_tag: PartitionType, i: int, j: int, k: int) -> TypedPartition:
    """Read additive notation back, locating the base ranks inside the (i, j) cell"""
    type_tag = PartitionType(type_tag)
    _check_typed_cell(type_tag, i, j, k)
    values = [_parse_token(token) for token in text.split("+") if token.strip()]
    if not values:
        raise PartitionParseError("empty partition text")
    has_offset = type_tag in OFFSET_TYPES
    if has_offset and len(values) < 2:
        raise PartitionParseError(f"type {type_tag.value} needs a base and an offset")
    head, offset = values[0], values[1] if has_offset else 0
    tail = tuple(values[2:] if has_offset else values[1:])
    candidates = [
        (r, s) for r in range(1, i + 1) for s in range(1, min(r, j) + 1) if base_value(type_tag, r, s, k) == head
    ]
    if not candidates:
        raise PartitionParseError(f"{head} is not a base value of type {type_tag.value} inside ({i}, {j}, {k})")
    built = [
        TypedPartition(type_tag=type_tag, base=(r, s, k), offset=offset, tail=tail, total=sum(values))
        for r, s in candidates
    ]
    for partition in built:
        if validate_typed_partition(partition, i, j, k):
            return partition
    return built[0]


# Printed offset polynomials


class OffsetComparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    indices: Tuple[int, ...]
    printed: int
    forced: int
    agrees: bool


def printed_sigma(k: int, x: int) -> int:
    return sum(triangular(2 * m - 1) for m in range(k)) + 12 * x + 18 * triangular(x - 3) - 10


def printed_tau(k: int, i: int) -> int:
    return tetrahedral(2 * k - 1) + 4 * (i - 1) + 8 * triangular(i - 2) + 4 * triangular(i - 3)


def printed_xi(k: int, i: int, j: int) -> int:
    return (
        polygonal(6, k - 1)
        + sum(polygonal(6, m - 1) for m in range(1, j + 1))
        + sum(polygonal(6, h) for h in range(j, i + 1))
    )


def printed_offset_table(kind: str, k_max: int, i_max: int) -> List[OffsetComparison]:
    """Printed offset polynomials next to the forced offsets"""
    rows = []
    for k in range(1, k_max + 1):
        for i in range(1, i_max + 1):
            if kind == "sigma":
                cells = [((k, i), printed_sigma(k, i - 1), offset_sigma(k, i))]
            elif kind == "tau":
                cells = [((k, i), printed_tau(k, i), offset_tau(k, i))]
            elif kind == "xi":
                cells = [((k, i, j), printed_xi(k, i, j), offset_xi(k, i, j)) for j in range(1, i + 1)]
            else:
                raise InvalidArgumentError(f"unknown offset kind {kind!r}")
            for indices, printed, forced in cells:
                agrees = printed == forced
                rows.append(OffsetComparison(kind=kind, indices=indices, printed=printed, forced=forced, agrees=agrees))
    return rows
