"""
Figurate number families, rank inversion and elementary criteria
"""
import logging
from math import isqrt
from typing import Callable, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import divisors, integer_nthroot

from .exceptions import InvalidArgumentError, InvalidKindError

logger = logging.getLogger(__name__)

KindTag = Literal["polygonal", "octahedral", "tetrahedral", "cube"]


class FigurateKind(BaseModel):
    """A figurate family; polygonal kinds carry their order t"""

    model_config = ConfigDict(frozen=True)

    tag: KindTag
    t: Optional[int] = None

    @model_validator(mode="after")
    def _check_order(self):
        if self.tag == "polygonal":
            if self.t is None or self.t < 3:
                raise ValueError(f"polygonal order must be >= 3, got {self.t}")
        elif self.t is not None:
            raise ValueError(f"{self.tag} numbers take no order")
        return self

    @classmethod
    def polygonal(cls, t: int) -> "FigurateKind":
        if t < 3:
            raise InvalidKindError(f"polygonal order must be >= 3, got {t}")
        return cls(tag="polygonal", t=t)

    @property
    def label(self) -> str:
        return f"polygonal:{self.t}" if self.tag == "polygonal" else self.tag


OCTAHEDRAL = FigurateKind(tag="octahedral")
TETRAHEDRAL = FigurateKind(tag="tetrahedral")
CUBE = FigurateKind(tag="cube")


def parse_kind(text: str) -> FigurateKind:
    """Parse 'polygonal:5', 'octahedral', 'tetrahedral' or 'cube'"""
    name, _, order = text.strip().lower().partition(":")
    if name == "polygonal":
        if not order.isdigit():
            raise InvalidKindError(f"polygonal kind needs an order, e.g. polygonal:5 (got {text!r})")
        return FigurateKind.polygonal(int(order))
    if name in ("octahedral", "tetrahedral", "cube") and not order:
        return FigurateKind(tag=name)
    raise InvalidKindError(f"unknown figurate kind {text!r}")


def polygonal(t: int, k: int) -> int:
    """k-th t-gonal number, 0 for k <= 0"""
    if t < 3:
        raise InvalidKindError(f"polygonal order must be >= 3, got {t}")
    if k <= 0:
        return 0
    return ((t - 2) * k * k - (t - 4) * k) // 2


def triangular(k: int) -> int:
    return polygonal(3, k)


def octahedral(n: int) -> int:
    if n <= 0:
        return 0
    return n * (2 * n * n + 1) // 3


def tetrahedral(n: int) -> int:
    if n <= 0:
        return 0
    return n * (n + 1) * (n + 2) // 6


def cube(k: int) -> int:
    if k <= 0:
        return 0
    return k * k * k


def value(kind: FigurateKind, rank: int) -> int:
    """Evaluate any family at a rank"""
    if kind.tag == "polygonal":
        return polygonal(kind.t, rank)
    if kind.tag == "octahedral":
        return octahedral(rank)
    if kind.tag == "tetrahedral":
        return tetrahedral(rank)
    return cube(rank)


def gap(kind: FigurateKind, k: int) -> int:
    """value(k+1) - value(k)"""
    return value(kind, k + 1) - value(kind, k)


class FigurateValue(BaseModel):
    """A rank of a family together with its exact value"""

    model_config = ConfigDict(frozen=True)

    kind: FigurateKind
    rank: int
    value: int

    @model_validator(mode="after")
    def _check_value(self):
        if self.value != value(self.kind, self.rank):
            raise ValueError(f"{self.kind.label} rank {self.rank} is {value(self.kind, self.rank)}, not {self.value}")
        return self

    @classmethod
    def of(cls, kind: FigurateKind, rank: int) -> "FigurateValue":
        return cls(kind=kind, rank=rank, value=value(kind, rank))


def _settle(fn: Callable[[int], int], v: int, guess: int) -> Optional[int]:
    """Walk from a root estimate to the exact rank of v under an increasing fn"""
    k = max(guess, 1)
    while k > 1 and fn(k) > v:
        k -= 1
    while fn(k + 1) <= v:
        k += 1
    return k if fn(k) == v else None


def rank_of(kind: FigurateKind, v: int) -> Optional[int]:
    """Unique rank k >= 1 with value(kind, k) == v, or None"""
    if v < 0:
        raise InvalidArgumentError(f"figurate values are nonnegative, got {v}")
    if v == 0:
        return None
    if kind.tag == "polygonal":
        t = kind.t
        disc = (t - 4) ** 2 + 8 * (t - 2) * v
        root = isqrt(disc)
        if root * root != disc:
            return None
        num = root + (t - 4)
        den = 2 * (t - 2)
        return num // den if num % den == 0 else None
    if kind.tag == "cube":
        root, exact = integer_nthroot(v, 3)
        return int(root) if exact else None
    if kind.tag == "octahedral":
        return _settle(octahedral, v, int(integer_nthroot(3 * v // 2, 3)[0]))
    return _settle(tetrahedral, v, int(integer_nthroot(6 * v, 3)[0]))


def is_triangular(n: int) -> bool:
    """Triangular numbers here include 0"""
    if n < 0:
        return False
    root = isqrt(8 * n + 1)
    return root * root == 8 * n + 1


def is_sum_two_triangular(n: int) -> bool:
    """2(4n+1) is a sum of two odd squares"""
    if n < 0:
        raise InvalidArgumentError(f"n must be nonnegative, got {n}")
    target = 2 * (4 * n + 1)
    a = 1
    while a * a < target:
        rest = target - a * a
        b = isqrt(rest)
        if b * b == rest and b % 2 == 1:
            return True
        a += 2
    return False


def two_triangular_pairs(n: int) -> List[Tuple[int, int]]:
    """Ordered pairs of triangular numbers (0 included) summing to n, by search"""
    pairs = []
    k = 0
    while triangular(k) <= n:
        first = triangular(k)
        if is_triangular(n - first):
            pairs.append((first, n - first))
        k += 1
    return pairs


def count_two_triangular(n: int) -> int:
    """d1(4n+1) - d3(4n+1), the ordered count of two-triangular representations"""
    if n < 0:
        raise InvalidArgumentError(f"n must be nonnegative, got {n}")
    ds = divisors(4 * n + 1)
    return sum(1 for d in ds if d % 4 == 1) - sum(1 for d in ds if d % 4 == 3)


def euler_triangular_scale(m: int, n: int) -> int:
    """m^2 n + (m^2 - 1)/8 for odd m and triangular n"""
    if m < 1 or m % 2 == 0:
        raise InvalidArgumentError(f"scale factor must be an odd positive integer, got {m}")
    if not is_triangular(n):
        raise InvalidArgumentError(f"{n} is not triangular")
    result = m * m * n + (m * m - 1) // 8
    assert is_triangular(result), f"scaled value {result} is not triangular"
    return result


def euler_pair_scale(m: int, j: int, k: int) -> Tuple[int, int, int]:
    """Scale n = p3_j + p3_k by odd m; returns (J, K, m^2 n + (m^2-1)/4) with p3_J + p3_K equal to it"""
    if m < 1 or m % 2 == 0:
        raise InvalidArgumentError(f"scale factor must be an odd positive integer, got {m}")
    if j < 0 or k < 0:
        raise InvalidArgumentError("triangular ranks must be nonnegative")
    n = triangular(j) + triangular(k)
    big_j = (m * (2 * j + 1) - 1) // 2
    big_k = (m * (2 * k + 1) - 1) // 2
    scaled = m * m * n + (m * m - 1) // 4
    assert triangular(big_j) + triangular(big_k) == scaled
    return big_j, big_k, scaled


def is_forbidden_three_squares(n: int) -> bool:
    """n has the form 4^k(8m+7)"""
    if n <= 0:
        return False
    while n % 4 == 0:
        n //= 4
    return n % 8 == 7


_SQUARE_SHIFTS = {
    # t: (coefficient, constant, root multiplier, root shift)
    5: (24, 1, 6, -1),
    6: (8, 1, 4, -1),
    7: (40, 9, 10, -3),
}


def square_shift_identity(t: int, k: int) -> Tuple[int, int]:
    """Both sides of c*p^t_k + e = (a*k + b)^2 for t in 5, 6, 7"""
    if t not in _SQUARE_SHIFTS:
        raise InvalidArgumentError(f"square shift identity exists for t in 5, 6, 7 only, got {t}")
    if k < 1:
        raise InvalidArgumentError(f"rank must be >= 1, got {k}")
    coef, const, mult, shift = _SQUARE_SHIFTS[t]
    return coef * polygonal(t, k) + const, (mult * k + shift) ** 2
