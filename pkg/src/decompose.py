"""
Witness-parametrized decomposition solvers over the lattice representations
"""
import logging
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Literal, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from .exceptions import InvalidArgumentError
from .figurate import cube, octahedral, polygonal, tetrahedral, triangular

logger = logging.getLogger(__name__)

RepId = Literal["Rt", "ROcta", "RCube", "RSquareAll"]
Mode = Literal["direct", "shifted", "value"]
MODES = ("direct", "shifted", "value")


class LatticeRep(BaseModel):
    """Vertex (i, j) of the grid of chains carries base + coef_i*i + coef_j*j"""

    model_config = ConfigDict(frozen=True)

    id: RepId
    t: Optional[int] = None
    base: int
    coef_i: int
    coef_j: int

    @model_validator(mode="after")
    def _check_coefficients(self):
        if self.id == "Rt":
            if self.t is None or self.t < 3:
                raise ValueError(f"Rt needs t >= 3, got {self.t}")
            expected = (3, self.t - 2, self.t - 1)
        else:
            if self.t is not None:
                raise ValueError(f"{self.id} takes no t")
            expected = {"ROcta": (3, 4, 5), "RCube": (4, 6, 7), "RSquareAll": (0, 2, 1)}[self.id]
        if (self.base, self.coef_i, self.coef_j) != expected:
            raise ValueError(f"{self.id} values are {expected}")
        return self

    @classmethod
    def rt(cls, t: int) -> "LatticeRep":
        if t < 3:
            raise InvalidArgumentError(f"polygonal order must be >= 3, got {t}")
        return cls(id="Rt", t=t, base=3, coef_i=t - 2, coef_j=t - 1)

    @property
    def label(self) -> str:
        return f"Rt({self.t})" if self.id == "Rt" else self.id


ROCTA = LatticeRep(id="ROcta", base=3, coef_i=4, coef_j=5)
RCUBE = LatticeRep(id="RCube", base=4, coef_i=6, coef_j=7)
RSQUARE_ALL = LatticeRep(id="RSquareAll", base=0, coef_i=2, coef_j=1)


class Witness(BaseModel):
    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    k0: int
    alpha: int
    beta: int
    gamma: int


class Decomposition(BaseModel):
    """Ranks and terms of one decomposition with every witness found for it"""

    model_config = ConfigDict(frozen=True)

    target: int
    rep: LatticeRep
    ranks: Tuple[int, ...]
    terms: Tuple[int, ...]
    witnesses: Tuple[Witness, ...]

    @model_validator(mode="after")
    def _check_sum(self):
        if sum(self.terms) != self.target:
            raise ValueError(f"terms {self.terms} do not sum to {self.target}")
        if not self.witnesses:
            raise ValueError("a decomposition needs at least one witness")
        return self

    @property
    def witness(self) -> Witness:
        """Canonical witness, the one with k0 = 0"""
        return self.witnesses[0]


@dataclass(frozen=True)
class _Family:
    """Linear witness system of a representation; rank = alpha + shift"""

    rep: LatticeRep
    shift: int
    alpha_min: int
    weights: Tuple[int, int, int]
    g: Callable[[int], int]
    k0_i: int
    k0_j: int
    j_const: int
    term: Callable[[int], int]

    @property
    def symmetric(self) -> bool:
        return self.weights == (1, 1, 1)

    @property
    def rank_min(self) -> int:
        return self.alpha_min + self.shift


def _rho_shift(alpha: int) -> int:
    return tetrahedral(alpha) - alpha


def _family(rep: LatticeRep) -> _Family:
    if rep.id == "Rt":
        t = rep.t
        return _Family(rep, 2, -1, (1, 1, 1), triangular, t - 1, t - 2, 3, lambda rank: polygonal(t, rank))
    if rep.id == "RSquareAll":
        return _Family(rep, 1, -1, (1, 1, 1), triangular, 1, 2, 3, lambda rank: rank * rank)
    if rep.id == "ROcta":
        return _Family(rep, 1, -1, (1, 1, 1), _rho_shift, 5, 4, 0, octahedral)
    return _Family(rep, 1, 0, (1, 1, 2), _rho_shift, 7, 6, 0, cube)


def vertex_value(rep: LatticeRep, i: int, j: int) -> int:
    return rep.base + rep.coef_i * i + rep.coef_j * j


def representable_pairs(rep: LatticeRep, n: int) -> List[Tuple[int, int]]:
    """All (i, j) >= (0, 0) with vertex_value(rep, i, j) == n, by j ascending"""
    pairs = []
    j = 0
    while rep.base + rep.coef_j * j <= n:
        rest = n - rep.base - rep.coef_j * j
        if rest % rep.coef_i == 0:
            pairs.append((rest // rep.coef_i, j))
        j += 1
    return pairs


def _alpha_sums(fam: _Family, alphas: Sequence[int]) -> Tuple[int, int]:
    x = sum(w * fam.g(a) for w, a in zip(fam.weights, alphas))
    y = sum(w * a for w, a in zip(fam.weights, alphas))
    return x, y


def _witnesses(fam: _Family, alphas: Tuple[int, int, int], n: int, all_witnesses: bool) -> List[Witness]:
    x, y = _alpha_sums(fam, alphas)
    i0, j0 = x, y + fam.j_const
    if j0 < 0:
        return []
    assert vertex_value(fam.rep, i0, j0) == n, f"witness {alphas} does not reconstruct {n}"
    a, b, c = alphas
    found = []
    k0 = 0
    while j0 - fam.k0_j * k0 >= 0:
        found.append(Witness(i=i0 + fam.k0_i * k0, j=j0 - fam.k0_j * k0, k0=k0, alpha=a, beta=b, gamma=c))
        if not all_witnesses:
            break
        k0 += 1
    return found


def _search(fam: _Family, n: int) -> Iterator[Tuple[int, int, int]]:
    """Alpha triples whose terms sum to n (symmetric: a >= b >= c; cube: a >= b, c doubled)"""
    values: List[int] = []
    alpha = fam.alpha_min
    while fam.term(alpha + fam.shift) <= n:
        values.append(fam.term(alpha + fam.shift))
        alpha += 1
    index = {v: idx for idx, v in enumerate(values)}
    base = fam.alpha_min
    for ia, va in enumerate(values):
        rem1 = n - va
        if fam.symmetric:
            if rem1 > 2 * va:
                continue
            ib = min(ia, bisect_right(values, rem1) - 1)
            while ib >= 0:
                vb = values[ib]
                rem2 = rem1 - vb
                if rem2 > vb:
                    break
                ic = index.get(rem2)
                if ic is not None and ic <= ib:
                    yield ia + base, ib + base, ic + base
                ib -= 1
        else:
            ib = min(ia, bisect_right(values, rem1) - 1)
            while ib >= 0:
                rem2 = rem1 - values[ib]
                if rem2 % 2 == 0:
                    ic = index.get(rem2 // 2)
                    if ic is not None:
                        yield ia + base, ib + base, ic + base
                ib -= 1


def _solve(rep: LatticeRep, n: int, all_witnesses: bool) -> List[Decomposition]:
    fam = _family(rep)
    decompositions = []
    for alphas in _search(fam, n):
        witnesses = _witnesses(fam, alphas, n, all_witnesses)
        if not witnesses:
            continue
        ranks = tuple(a + fam.shift for a in alphas)
        terms = tuple(w * fam.term(rank) for w, rank in zip(fam.weights, ranks))
        decompositions.append(
            Decomposition(target=n, rep=rep, ranks=ranks, terms=terms, witnesses=tuple(witnesses))
        )
    decompositions.sort(key=lambda d: d.ranks)
    logger.debug(f"{rep.label}: {len(decompositions)} decompositions of {n}")
    return decompositions


def rank_multisets(rep: LatticeRep, n: int) -> Set[Tuple[int, ...]]:
    """Ranks of every decomposition that has a lattice witness"""
    if n < 0:
        return set()
    fam = _family(rep)
    found = set()
    for alphas in _search(fam, n):
        _, y = _alpha_sums(fam, alphas)
        if y + fam.j_const >= 0:
            found.add(tuple(a + fam.shift for a in alphas))
    return found


def solve_three_polygonal(t: int, n: int, all_witnesses: bool = True) -> List[Decomposition]:
    """p^t_a + p^t_b + p^t_c = n with a >= b >= c >= 1"""
    if t < 3:
        raise InvalidArgumentError(f"polygonal order must be >= 3, got {t}")
    if n < 0:
        raise InvalidArgumentError(f"target must be nonnegative, got {n}")
    return _solve(LatticeRep.rt(t), n, all_witnesses)


def solve_three_squares_all(n: int, all_witnesses: bool = True) -> List[Decomposition]:
    """a^2 + b^2 + c^2 = n with a >= b >= c >= 0"""
    if n < 0:
        raise InvalidArgumentError(f"target must be nonnegative, got {n}")
    return _solve(RSQUARE_ALL, n, all_witnesses)


def solve_three_octahedral(n: int, positive_only: bool = False, all_witnesses: bool = True) -> List[Decomposition]:
    """O_a + O_b + O_c = n with a >= b >= c >= 0 (>= 1 when positive_only)"""
    if n < 0:
        raise InvalidArgumentError(f"target must be nonnegative, got {n}")
    found = _solve(ROCTA, n, all_witnesses)
    if positive_only:
        found = [d for d in found if min(d.ranks) >= 1]
    return found


def solve_four_cubes_two_equal(n: int, all_witnesses: bool = True) -> List[Decomposition]:
    """q_a + q_b + 2 q_c = n with a >= b >= 1, c >= 1"""
    if n < 4:
        raise InvalidArgumentError(f"four positive cubes sum to at least 4, got {n}")
    return _solve(RCUBE, n, all_witnesses)


def solve(rep: LatticeRep, n: int, positive_only: bool = False, all_witnesses: bool = True) -> List[Decomposition]:
    if rep.id == "Rt":
        return solve_three_polygonal(rep.t, n, all_witnesses)
    if rep.id == "RSquareAll":
        return solve_three_squares_all(n, all_witnesses)
    if rep.id == "ROcta":
        return solve_three_octahedral(n, positive_only, all_witnesses)
    return solve_four_cubes_two_equal(n, all_witnesses)


# Oracles


def _oracle_ranges(rep: LatticeRep) -> Tuple[int, Callable[[int], int]]:
    if rep.id == "Rt":
        return 1, lambda rank: polygonal(rep.t, rank)
    if rep.id == "RSquareAll":
        return 0, lambda rank: rank * rank
    if rep.id == "ROcta":
        return 0, octahedral
    return 1, cube


def brute_oracle_table(rep: LatticeRep, limit: int) -> Dict[int, List[Tuple[int, ...]]]:
    """Every rank triple with value sum <= limit, grouped by sum"""
    low, term = _oracle_ranges(rep)
    values = []
    rank = low
    while term(rank) <= limit:
        values.append((rank, term(rank)))
        rank += 1
    table: Dict[int, List[Tuple[int, ...]]] = {}
    if rep.id == "RCube":
        for ia, (a, va) in enumerate(values):
            for b, vb in values[: ia + 1]:
                for c, vc in values:
                    total = va + vb + 2 * vc
                    if total > limit:
                        break
                    table.setdefault(total, []).append((a, b, c))
    else:
        for ia, (a, va) in enumerate(values):
            for ib in range(ia + 1):
                b, vb = values[ib]
                if va + vb > limit:
                    break
                for c, vc in values[: ib + 1]:
                    total = va + vb + vc
                    if total > limit:
                        break
                    table.setdefault(total, []).append((a, b, c))
    for key in table:
        table[key].sort()
    return table


def brute_oracle(rep: LatticeRep, n: int) -> List[Tuple[int, ...]]:
    """Exhaustive rank triples of the family summing to n"""
    if n < 0:
        raise InvalidArgumentError(f"target must be nonnegative, got {n}")
    return brute_oracle_table(rep, n).get(n, [])


# Components of the representation graph


def _alphas_with_sums(fam: _Family, x: int, y: int) -> Iterator[Tuple[int, int, int]]:
    """Alpha triples with weighted g-sum x and weighted alpha-sum y"""
    lo = fam.alpha_min
    if fam.symmetric:
        a = -(-y // 3)
        while a <= y - 2 * lo:
            ga = fam.g(a)
            if a >= 1 and ga > x:
                break
            b = max(-(-(y - a) // 2), lo)
            while b <= min(a, y - a - lo):
                c = y - a - b
                if lo <= c <= b and ga + fam.g(b) + fam.g(c) == x:
                    yield a, b, c
                b += 1
            a += 1
    else:
        for c in range(lo, y // 2 + 1):
            rest = y - 2 * c
            for a in range(-(-rest // 2), rest - lo + 1):
                b = rest - a
                if lo <= b <= a and fam.g(a) + fam.g(b) + 2 * fam.g(c) == x:
                    yield a, b, c


def witnesses_at(rep: LatticeRep, i: int, j: int, mode: Mode = "direct") -> List[Witness]:
    """Witnesses landing exactly on vertex (i, j); direct keeps k0 = 0 only"""
    if mode not in ("direct", "shifted"):
        raise InvalidArgumentError(f"witness mode must be direct or shifted, got {mode!r}")
    if i < 0 or j < 0:
        raise InvalidArgumentError(f"vertex indices must be nonnegative, got ({i}, {j})")
    fam = _family(rep)
    found = []
    k0 = 0
    while i - fam.k0_i * k0 >= 0:
        x = i - fam.k0_i * k0
        y = j + fam.k0_j * k0 - fam.j_const
        for a, b, c in _alphas_with_sums(fam, x, y):
            found.append(Witness(i=i, j=j, k0=k0, alpha=a, beta=b, gamma=c))
        if mode == "direct":
            break
        k0 += 1
    return found


def in_component(rep: LatticeRep, i: int, j: int, mode: Mode = "direct") -> bool:
    """Whether vertex (i, j) lies on the non-trivial component"""
    if mode == "value":
        return bool(rank_multisets(rep, vertex_value(rep, i, j)))
    if mode not in MODES:
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    fam = _family(rep)
    k0 = 0
    while i - fam.k0_i * k0 >= 0:
        y = j + fam.k0_j * k0 - fam.j_const
        if next(_alphas_with_sums(fam, i - fam.k0_i * k0, y), None) is not None:
            return True
        if mode == "direct":
            return False
        k0 += 1
    return False


def cross_equivalence(
    i: int, j: int, t: Optional[int] = None, pairing: str = "polygonal", mode: Mode = "direct"
) -> Tuple[bool, bool]:
    """Membership at (i, j) under Rt(3) and Rt(t), or under ROcta and RCube"""
    if pairing == "polygonal":
        if t is None:
            raise InvalidArgumentError("polygonal pairing needs t")
        return in_component(LatticeRep.rt(3), i, j, mode), in_component(LatticeRep.rt(t), i, j, mode)
    if pairing == "octa_cube":
        return in_component(ROCTA, i, j, mode), in_component(RCUBE, i, j, mode)
    raise InvalidArgumentError(f"unknown pairing {pairing!r}")


def no_path_vertex(i: int, k: int) -> Tuple[int, int]:
    """Vertices drawn with no non-trivial path through them"""
    if i < 0 or k < 0:
        raise InvalidArgumentError("indices must be nonnegative")
    return 2 + 7 * i + 3 * k, 2 * (i + k) + 3


def lbp_value(rep: LatticeRep, i: int) -> Tuple[Tuple[int, int], int]:
    """i-th left boundary vertex and its value (two unit terms plus one family term)"""
    if rep.id == "Rt":
        if i < 0:
            raise InvalidArgumentError(f"boundary index must be >= 0, got {i}")
        vertex = (triangular(i - 1), i)
        value = 2 * polygonal(rep.t, 1) + polygonal(rep.t, i + 1)
    elif rep.id in ("ROcta", "RCube"):
        # i = -1 is the initial vertex v00
        if i < -1:
            raise InvalidArgumentError(f"boundary index must be >= -1, got {i}")
        vertex = (tetrahedral(i + 1) - (i + 1), i + 1)
        value = octahedral(i + 2) + 2 if rep.id == "ROcta" else cube(i + 2) + 3
    else:
        raise InvalidArgumentError(f"{rep.label} has no left boundary path")
    assert vertex_value(rep, *vertex) == value
    return vertex, value


def lbp_ranks(rep: LatticeRep, i: int) -> Tuple[int, int, int]:
    """Ranks of the canonical decomposition at the i-th boundary vertex"""
    lbp_value(rep, i)
    if rep.id == "Rt":
        return i + 1, 1, 1
    return i + 2, 1, 1


def decompositions_payload(rep: LatticeRep, n: int, decompositions: Sequence[Decomposition]) -> dict:
    return {
        "target": n,
        "rep": rep.label,
        "decompositions": [
            {
                "ranks": list(d.ranks),
                "terms": list(d.terms),
                "witnesses": [w.model_dump(mode="json") for w in d.witnesses],
            }
            for d in decompositions
        ],
    }
