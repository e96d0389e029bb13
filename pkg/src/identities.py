"""
Entry polynomials and exact verifiers for the three-square and cube identity families
"""
import logging
from itertools import product
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import integer_nthroot

from .exceptions import InvalidArgumentError
from .figurate import cube, polygonal, tetrahedral, triangular

logger = logging.getLogger(__name__)

Family = Literal["R", "S", "T", "MN", "COR5", "COR6"]

# Four-cube sums of this family sit in residue class -4 mod 9
COR6_RESIDUE = 5


class IdentityReport(BaseModel):
    """Both sides of one identity instance"""

    model_config = ConfigDict(frozen=True)

    family: Family
    indices: Tuple[int, ...]
    lhs: int
    rhs: int
    holds: bool

    @model_validator(mode="after")
    def _check_holds(self):
        if self.family == "COR6":
            expected = (self.lhs - self.rhs) % 9 == 0
        else:
            expected = self.lhs == self.rhs
        if expected != self.holds:
            raise ValueError("holds flag disagrees with the evaluated sides")
        return self


def _check_indices(j: int, i: int):
    if j < 1 or i < 1:
        raise InvalidArgumentError(f"matrix indices start at 1, got (j={j}, i={i})")


# Three-square family entries


def r_entry(j: int, i: int) -> int:
    _check_indices(j, i)
    return 97 + 57 * (j - 1) + 15 * triangular(j - 2) + 9 * triangular(i - 2) + 21 * (i - 1)


def s_entry(j: int, i: int) -> int:
    _check_indices(j, i)
    return 130 + 75 * (j - 1) + 20 * triangular(j - 2) + 16 * triangular(i - 2) + 36 * (i - 1)


def t_entry(j: int, i: int) -> int:
    _check_indices(j, i)
    return 165 + 93 * (j - 1) + 25 * triangular(j - 2) + 25 * triangular(i - 2) + 55 * (i - 1)


def _thm3_sides(j: int, i: int) -> Dict[str, Tuple[int, int]]:
    r, s, t = r_entry(j, i), s_entry(j, i), t_entry(j, i)
    return {
        "R": (
            24 * (r - 2 * polygonal(5, i + 1)) + 3,
            (6 * i + 5) ** 2 + (6 * j + 11) ** 2 + (12 * j + 29) ** 2,
        ),
        "S": (
            8 * (s - 3 * polygonal(6, i + 1)) + 3,
            (4 * i + 3) ** 2 + (4 * j + 7) ** 2 + (8 * j + 19) ** 2,
        ),
        "T": (
            40 * (t - 4 * polygonal(7, i + 1)) + 27,
            (10 * i + 7) ** 2 + (10 * j + 17) ** 2 + (20 * j + 47) ** 2,
        ),
    }


def verify_thm3(j: int, i: int) -> List[IdentityReport]:
    """Reports for the R, S and T three-square lines at (j, i)"""
    return [
        IdentityReport(family=family, indices=(j, i), lhs=lhs, rhs=rhs, holds=lhs == rhs)
        for family, (lhs, rhs) in _thm3_sides(j, i).items()
    ]


# Cube family entries


def m_entry(j: int, i: int) -> int:
    _check_indices(j, i)
    return (
        508
        + (j + 1) * 891
        + 690 * triangular(j)
        + (507 + 306 * j + 72 * triangular(j - 1)) * (i + 1)
        + (144 + 36 * j) * triangular(i)
        + 18 * tetrahedral(i - 1)
        + 198 * tetrahedral(j - 1)
    )


def n_entry(j: int, i: int) -> int:
    _check_indices(j, i)
    return (
        4068
        + 4193 * (j - 1)
        + 1167 * (j - 2) * (j - 1)
        + 89 * (j - 3) * (j - 2) * (j - 1)
        + (397 + 150 * (j - 1) + 12 * (j - 2) * (j - 1)) * (i - 1)
        + 6 * (5 + j) * (i - 2) * (i - 1)
        + (i - 3) * (i - 2) * (i - 1)
    )


def _z(j: int, i: int) -> int:
    return 2 * j + i + 8


def _thm4_sides(j: int, i: int) -> Tuple[int, int]:
    x, y = -(4 * j + 8), -(2 * j + 4)
    return x**3 + y**3 + 2 * _z(j, i) ** 3, m_entry(j, i) - n_entry(j, i)


def _cor5_sides(j: int, i: int) -> Tuple[int, int]:
    z = _z(j, i)
    return (j + 3) ** 3 + (2 * j + 7) ** 3 + 2 * z**3, m_entry(j, i) - cube(z)


def verify_thm4(j: int, i: int) -> IdentityReport:
    """x^3 + y^3 + 2z^3 = m - n with x = -(4j+8), y = -(2j+4), z = 2j+i+8"""
    lhs, rhs = _thm4_sides(j, i)
    return IdentityReport(family="MN", indices=(j, i), lhs=lhs, rhs=rhs, holds=lhs == rhs)


def verify_cor5(j: int, i: int) -> IdentityReport:
    lhs, rhs = _cor5_sides(j, i)
    return IdentityReport(family="COR5", indices=(j, i), lhs=lhs, rhs=rhs, holds=lhs == rhs)


_ENTRY_FUNCTIONS: Dict[str, Callable[[int, int], int]] = {
    "M": m_entry,
    "N": n_entry,
    "R": r_entry,
    "S": s_entry,
    "T": t_entry,
}


def matrix_window(which: str, rows: int, cols: int) -> List[List[int]]:
    """Top-left rows x cols block of an entry matrix (row j, column i, 1-based)"""
    entry = _ENTRY_FUNCTIONS.get(which.upper())
    if entry is None:
        raise InvalidArgumentError(f"unknown matrix {which!r}; choose from {', '.join(_ENTRY_FUNCTIONS)}")
    if rows < 0 or cols < 0:
        raise InvalidArgumentError("window size must be nonnegative")
    return [[entry(j, i) for i in range(1, cols + 1)] for j in range(1, rows + 1)]


# Four positive cubes: residue lines


def _one_mod_three(value: int) -> bool:
    return value >= 1 and value % 3 == 1


def _two_mod_three(value: int) -> bool:
    return value >= 1 and value % 3 == 2


# line -> (parameter names, (first value, step) per parameter)
COR6_LINES: Dict[int, Tuple[Tuple[str, ...], Tuple[Tuple[int, int], ...]]] = {
    1: (("j", "i"), ((2, 3), (2, 3))),
    2: (("j", "i"), ((2, 3), (2, 3))),
    3: (("j", "i"), ((2, 3), (2, 3))),
    4: (("j", "h", "l"), ((2, 3), (1, 3), (1, 1))),
    5: (("j", "i", "l"), ((2, 3), (2, 3), (1, 1))),
}


def _check_cor6(line: int, params: Sequence[int]):
    if line not in COR6_LINES:
        raise InvalidArgumentError(f"congruence line must be 1..5, got {line}")
    names, _ = COR6_LINES[line]
    if len(params) != len(names):
        raise InvalidArgumentError(f"line {line} takes parameters ({', '.join(names)})")
    for name, param in zip(names, params):
        if name == "j" or name == "i":
            ok = _two_mod_three(param)
        elif name == "h":
            ok = _one_mod_three(param)
        else:
            ok = param >= 1
        if not ok:
            raise InvalidArgumentError(f"line {line}: parameter {name}={param} violates its constraint")


def cor6_value(line: int, params: Sequence[int]) -> int:
    """Evaluate the expression of a congruence line"""
    _check_cor6(line, params)
    if line == 1:
        j, i = params
        return m_entry(j, i) - cube(_z(j, i))
    if line == 2:
        j, i = params
        return n_entry(j, i) - cube(4 * j + 8)
    if line == 3:
        j, i = params
        return m_entry(j, i) - 2 * cube(_z(j, i)) + cube(2 * j + 4)
    if line == 4:
        j, h, l = params
        return m_entry(j, h) - 3 * cube(_z(j, h)) + 2 * cube(2 * j + h + 6 + 45 * l)
    j, i, l = params
    return m_entry(j, i) - 3 * cube(_z(j, i)) + 2 * cube(2 * j + i + 2 + 9 * l)


def cor6_residues(line: int, params: Sequence[int]) -> IdentityReport:
    """Check a congruence line lands in residue 5 mod 9"""
    value = cor6_value(line, params)
    return IdentityReport(
        family="COR6",
        indices=(line, *params),
        lhs=value,
        rhs=COR6_RESIDUE,
        holds=value % 9 == COR6_RESIDUE,
    )


def cor6_explicit_cubes(line: int, params: Sequence[int]) -> Tuple[int, int, int, int]:
    """Four positive cube roots summing to the line's value, read off the m/n identities"""
    _check_cor6(line, params)
    j = params[0]
    if line == 1:
        z = _z(j, params[1])
        roots = (j + 3, 2 * j + 7, z, z)
    elif line in (2, 3):
        roots = (j + 3, 2 * j + 7, _z(j, params[1]), 2 * j + 4)
    elif line == 4:
        w = 2 * j + params[1] + 6 + 45 * params[2]
        roots = (j + 3, 2 * j + 7, w, w)
    else:
        w = 2 * j + params[1] + 2 + 9 * params[2]
        roots = (j + 3, 2 * j + 7, w, w)
    a, b, c, d = sorted(roots)
    assert a**3 + b**3 + c**3 + d**3 == cor6_value(line, params)
    return a, b, c, d


def cor6_parameters(line: int, count: int) -> List[Tuple[int, ...]]:
    """Smallest admissible parameter tuples, by sum then lexicographically"""
    if line not in COR6_LINES:
        raise InvalidArgumentError(f"congruence line must be 1..5, got {line}")
    if count <= 0:
        return []
    _, progressions = COR6_LINES[line]
    axes = [[start + step * n for n in range(count)] for start, step in progressions]
    ordered = sorted(product(*axes), key=lambda params: (sum(params), params))
    return ordered[:count]


def four_cube_witness(n: int, rank_bound: int) -> Optional[Tuple[int, int, int, int]]:
    """Lexicographically smallest a <= b <= c <= d <= rank_bound with a^3+b^3+c^3+d^3 = n"""
    if rank_bound < 1:
        raise InvalidArgumentError(f"rank bound must be >= 1, got {rank_bound}")
    if n < 4:
        return None
    roots = {d**3: d for d in range(1, rank_bound + 1)}
    a = 1
    while 4 * a**3 <= n and a <= rank_bound:
        b = a
        while a**3 + 3 * b**3 <= n and b <= rank_bound:
            c = b
            while a**3 + b**3 + 2 * c**3 <= n and c <= rank_bound:
                d = roots.get(n - a**3 - b**3 - c**3)
                if d is not None and d >= c:
                    return a, b, c, d
                c += 1
            b += 1
        a += 1
    return None


# Sweeps

SWEEP_FAMILIES = ("3", "4", "cor5")


def verify_sweep(family: str, imax: int, jmax: int) -> List[Tuple]:
    """Failing (family, j, i) tuples over 1 <= j <= jmax, 1 <= i <= imax"""
    if family not in SWEEP_FAMILIES:
        raise InvalidArgumentError(f"unknown sweep family {family!r}")
    failures = []
    for j in range(1, jmax + 1):
        for i in range(1, imax + 1):
            if family == "3":
                for line, (lhs, rhs) in _thm3_sides(j, i).items():
                    if lhs != rhs:
                        failures.append((line, j, i))
            else:
                lhs, rhs = _thm4_sides(j, i) if family == "4" else _cor5_sides(j, i)
                if lhs != rhs:
                    failures.append(("MN" if family == "4" else "COR5", j, i))
    if failures:
        logger.error(f"❌ Sweep {family} found {len(failures)} failures")
    else:
        logger.info(f"✅ Sweep {family} clean over {jmax}x{imax}")
    return failures


def cor6_sweep(count: int = 20, value_limit: int = 10**6, rank_cap: Optional[int] = None) -> List[Tuple]:
    """Failing (line, params) over the smallest parameter tuples of every line

    Values up to value_limit also need a four-cube witness with ranks at most rank_cap.
    """
    failures = []
    for line in COR6_LINES:
        for params in cor6_parameters(line, count):
            report = cor6_residues(line, params)
            if not report.holds:
                failures.append((line, *params))
                continue
            value = report.lhs
            if value <= value_limit:
                bound = _ceil_cube_root(value)
                if rank_cap is not None:
                    bound = min(bound, rank_cap)
                if four_cube_witness(value, bound) is None:
                    failures.append((line, *params))
    if failures:
        logger.error(f"❌ Congruence sweep found {len(failures)} failures")
    return failures


def _ceil_cube_root(n: int) -> int:
    root, exact = integer_nthroot(n, 3)
    return int(root) if exact else int(root) + 1
