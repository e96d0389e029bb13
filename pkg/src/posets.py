"""
Finite posets, representations over the naturals and the derived poset of a suitable pair
"""
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_validator

from .exceptions import (
    IncompleteRepresentationError,
    InvalidArgumentError,
    NotAPosetError,
    UnknownElementError,
)
from .figurate import polygonal
from .lattice_partitions import MultisetPartition

logger = logging.getLogger(__name__)


class FinitePoset:
    """Partial order on labelled elements, kept as its strict transitive closure"""

    def __init__(self, elements: Sequence[str], order: nx.DiGraph):
        self._elements = tuple(elements)
        self._order = order
        self._hasse: Optional[nx.DiGraph] = None

    @property
    def elements(self) -> Tuple[str, ...]:
        return self._elements

    def __contains__(self, x) -> bool:
        return x in self._order

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {self._order.number_of_edges()} strict relations)"

    def _require(self, x: str):
        if x not in self._order:
            raise UnknownElementError(f"element {x!r} is not in the poset")

    def lt(self, x: str, y: str) -> bool:
        self._require(x)
        self._require(y)
        return self._order.has_edge(x, y)

    def leq(self, x: str, y: str) -> bool:
        return x == y and x in self._order or self.lt(x, y)

    def comparable(self, x: str, y: str) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def strict_relations(self) -> Set[Tuple[str, str]]:
        return set(self._order.edges)

    @property
    def hasse(self) -> nx.DiGraph:
        if self._hasse is None:
            self._hasse = nx.transitive_reduction(self._order)
            self._hasse.add_nodes_from(self._elements)
        return self._hasse

    def below(self, a: str) -> Set[str]:
        self._require(a)
        return set(self._order.predecessors(a))

    def above(self, a: str) -> Set[str]:
        self._require(a)
        return set(self._order.successors(a))

    def sorted_chain(self, subset: Iterable[str]) -> List[str]:
        return sorted(subset, key=lambda x: len(self.below(x)))


def build_poset(elements: Iterable[str], generator_relations: Iterable[Tuple[str, str]] = ()) -> FinitePoset:
    """Reflexive-transitive closure of x <= y generators"""
    elements = list(elements)
    if len(set(elements)) != len(elements):
        raise InvalidArgumentError("element labels must be distinct")
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    for x, y in generator_relations:
        for label in (x, y):
            if label not in graph:
                raise UnknownElementError(f"relation mentions unknown element {label!r}")
        if x != y:
            graph.add_edge(x, y)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise NotAPosetError(f"antisymmetry violated along {' < '.join(u for u, _ in cycle)} < {cycle[0][0]}")
    closure = nx.transitive_closure_dag(graph)
    return FinitePoset(elements, closure)


def hasse_edges(P: FinitePoset) -> Set[Tuple[str, str]]:
    """Covering pairs x < y with nothing strictly between"""
    return set(P.hasse.edges)


def down_set(P: FinitePoset, a: str) -> Set[str]:
    return P.below(a) | {a}


def up_set(P: FinitePoset, a: str) -> Set[str]:
    return P.above(a) | {a}


def is_chain(P: FinitePoset, subset: Iterable[str]) -> bool:
    items = list(subset)
    return all(P.comparable(x, y) for idx, x in enumerate(items) for y in items[idx + 1 :])


def minimal_elements(P: FinitePoset) -> List[str]:
    return [x for x in P.elements if not P.below(x)]


def maximal_elements(P: FinitePoset) -> List[str]:
    return [x for x in P.elements if not P.above(x)]


def disjoint_union(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    overlap = set(P.elements) & set(Q.elements)
    if overlap:
        raise InvalidArgumentError(f"labels shared by both posets: {sorted(overlap)}")
    return build_poset(P.elements + Q.elements, list(hasse_edges(P)) + list(hasse_edges(Q)))


def isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    return nx.is_isomorphic(P.hasse, Q.hasse)


def to_dot(P: FinitePoset, name: str = "P") -> str:
    """Hasse diagram in DOT, drawn bottom to top"""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    lines.extend(f'  "{x}";' for x in P.elements)
    position = {x: idx for idx, x in enumerate(P.elements)}
    for x, y in sorted(hasse_edges(P), key=lambda e: (position[e[0]], position[e[1]])):
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# Differentiation


class SuitablePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: str
    b: str
    chain: Tuple[str, ...]


def is_L_suitable(P: FinitePoset, a: str, b: str) -> Optional[SuitablePair]:
    """The pair when P = {a} + down(b) + C with C a chain above a and b"""
    P._require(a)
    P._require(b)
    if a == b or P.comparable(a, b):
        return None
    lower = down_set(P, b)
    if any(P.comparable(a, x) for x in lower):
        return None
    rest = [x for x in P.elements if x != a and x not in lower]
    if not rest or not is_chain(P, rest):
        return None
    chain = P.sorted_chain(rest)
    if not (P.lt(a, chain[0]) and P.lt(b, chain[0])):
        return None
    return SuitablePair(a=a, b=b, chain=tuple(chain))


def suitable_pairs(P: FinitePoset) -> List[SuitablePair]:
    return [pair for a in P.elements for b in P.elements if (pair := is_L_suitable(P, a, b)) is not None]


def derived_labels(pair: SuitablePair) -> Dict[str, List[str]]:
    """Labels of the derived poset: a- is new, the old a becomes c1-"""
    minus = [pair.a] + [f"{c}-" for c in pair.chain[1:]]
    plus = [f"{c}+" for c in pair.chain]
    return {"new": [f"{pair.a}-"], "minus": minus, "plus": plus}


def derive_poset(P: FinitePoset, pair: SuitablePair) -> FinitePoset:
    """Replace the chain C by chains C- and C+ under a new minimal a-"""
    check = is_L_suitable(P, pair.a, pair.b)
    if check is None or check != pair:
        raise InvalidArgumentError(f"({pair.a}, {pair.b}) is not a suitable pair of this poset")
    labels = derived_labels(pair)
    lower = [x for x in P.elements if x in down_set(P, pair.b)]
    fresh = labels["new"] + labels["minus"][1:] + labels["plus"]
    clash = set(fresh) & set(P.elements)
    if clash:
        raise InvalidArgumentError(f"derived labels collide with existing elements: {sorted(clash)}")
    minus, plus = labels["minus"], labels["plus"]
    relations = [(x, y) for x, y in hasse_edges(P) if x in lower and y in lower]
    relations.append((labels["new"][0], minus[0]))
    relations.extend(zip(minus, minus[1:]))
    relations.extend(zip(plus, plus[1:]))
    relations.extend(zip(minus, plus))
    relations.extend((x, plus[0]) for x in lower)
    derived = build_poset(labels["new"] + lower + minus + plus, relations)
    assert len(derived) == len(P) + len(pair.chain)
    logger.info(f"✅ Derived poset for ({pair.a}, {pair.b}): {len(P)} -> {len(derived)} elements")
    return derived


# Representations


class ElementRep(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    partition: MultisetPartition

    @field_validator("n")
    @classmethod
    def _positive(cls, n: int) -> int:
        if n < 1:
            raise ValueError(f"n_x must be positive, got {n}")
        return n


class RepresentationN(BaseModel):
    """x -> (n_x, lambda_x) with parts drawn from the ambient set"""

    model_config = ConfigDict(frozen=True)

    ambient: FrozenSet[int]
    assignment: Dict[str, ElementRep]

    @classmethod
    def of(cls, ambient: Iterable[int], assignment: Dict[str, Tuple[int, Sequence[int]]]) -> "RepresentationN":
        return cls(
            ambient=frozenset(ambient),
            assignment={
                x: ElementRep(n=n, partition=MultisetPartition.from_parts(parts))
                for x, (n, parts) in assignment.items()
            },
        )


def representation_sum_mismatches(rep: RepresentationN) -> List[str]:
    return [x for x, er in rep.assignment.items() if er.partition.total != er.n]


def validate_representation(P: FinitePoset, rep: RepresentationN) -> bool:
    """Monotone n, part count and largest part along the order; parts from the ambient set"""
    missing = [x for x in P.elements if x not in rep.assignment]
    if missing:
        raise IncompleteRepresentationError(f"no (n, partition) for {', '.join(missing)}")
    for x in P.elements:
        if not set(rep.assignment[x].partition.parts) <= rep.ambient:
            logger.debug(f"Parts of {x} leave the ambient set")
            return False
    for x, y in P.strict_relations():
        rx, ry = rep.assignment[x], rep.assignment[y]
        if rx.n > ry.n or rx.partition.size > ry.partition.size or rx.partition.max_part > ry.partition.max_part:
            logger.debug(f"Monotonicity fails on {x} < {y}")
            return False
    mismatched = representation_sum_mismatches(rep)
    if mismatched:
        logger.warning(f"⚠️ Part sums differ from n for {', '.join(mismatched)}")
    return True


def weight(rep: RepresentationN) -> int:
    return sum(er.n for er in rep.assignment.values())


# Families


def build_N_family(i: int) -> Tuple[FinitePoset, RepresentationN]:
    """Chain c1 < ... < c(i+1) with d above c(i)"""
    if i < 1:
        raise InvalidArgumentError(f"family index must be >= 1, got {i}")
    chain = [f"c{m}" for m in range(1, i + 2)]
    P = build_poset(chain + ["d"], list(zip(chain, chain[1:])) + [(f"c{i}", "d")])
    assignment = {f"c{m}": (m, [m]) for m in range(1, i + 1)}
    assignment[f"c{i + 1}"] = (i, [i])
    assignment["d"] = (i, [i])
    rep = RepresentationN.of(range(1, i + 1), assignment)
    assert validate_representation(P, rep)
    return P, rep


def build_P_ci(variant: int, chain_len: int, n0: int, partner: int = 2) -> Tuple[FinitePoset, RepresentationN]:
    """b1 < b < c1 < ... < cn with a(variant) < c(variant), represented by n0-gonal numbers"""
    if chain_len < 1 or not 1 <= variant <= chain_len:
        raise InvalidArgumentError(f"need 1 <= variant <= chain_len, got ({variant}, {chain_len})")
    if n0 < 5:
        raise InvalidArgumentError(f"n0 must be >= 5, got {n0}")
    if not 2 <= partner < variant + 2:
        raise InvalidArgumentError(f"partner rank must satisfy 2 <= partner < {variant + 2}, got {partner}")

    def p(rank: int) -> int:
        return polygonal(n0, rank)

    a = f"a{variant}"
    chain = [f"c{m}" for m in range(1, chain_len + 1)]
    spine = ["b1", "b"] + chain
    P = build_poset(["b1", "b", a] + chain, list(zip(spine, spine[1:])) + [(a, f"c{variant}")])
    assignment = {
        "b1": (n0 * p(1), [p(1)] * n0),
        "b": (n0 * p(2), [p(2)] * n0),
        a: (p(variant + 2) + p(partner), [p(variant + 2), p(partner)]),
    }
    for m in range(1, chain_len + 1):
        assignment[f"c{m}"] = (n0 * p(m + 2), [p(m + 2)] * n0)
    rep = RepresentationN.of((p(r) for r in range(1, chain_len + 3)), assignment)
    assert validate_representation(P, rep)
    return P, rep


def P_ci_suitable_pair(variant: int) -> Tuple[str, str]:
    """(a1, b) for the first variant, (a_i, c_(i-1)) after it"""
    if variant < 1:
        raise InvalidArgumentError(f"variant must be >= 1, got {variant}")
    return (f"a{variant}", "b") if variant == 1 else (f"a{variant}", f"c{variant - 1}")
