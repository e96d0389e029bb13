"""
Tests for the entry polynomials, identity verifiers and four-cube congruence lines
"""
import pytest
from pydantic import ValidationError

from src.exceptions import InvalidArgumentError
from src.figurate import cube
from src.identities import (
    COR6_LINES,
    IdentityReport,
    cor6_explicit_cubes,
    cor6_parameters,
    cor6_residues,
    cor6_sweep,
    cor6_value,
    four_cube_witness,
    m_entry,
    matrix_window,
    n_entry,
    r_entry,
    verify_cor5,
    verify_sweep,
    verify_thm3,
    verify_thm4,
)

PRINTED_M = [
    [4786, 5977, 7384],
    [8047, 9688, 11581],
    [12538, 14701, 17152],
    [18457, 21214, 24295],
]

PRINTED_N = [
    [4068, 4465, 4934],
    [8261, 8808, 9439],
    [14788, 15509, 16326],
    [24183, 25102, 26129],
]


class TestEntries:
    @pytest.mark.parametrize("j, i, expected", [(1, 1, 97), (2, 1, 154), (1, 2, 118)])
    def test_r_entry(self, j, i, expected):
        assert r_entry(j, i) == expected

    def test_printed_matrices(self):
        assert matrix_window("M", 4, 3) == PRINTED_M
        assert matrix_window("N", 4, 3) == PRINTED_N

    def test_entry_indices_start_at_one(self):
        with pytest.raises(InvalidArgumentError):
            m_entry(0, 1)
        with pytest.raises(InvalidArgumentError):
            n_entry(1, 0)

    def test_unknown_matrix(self):
        with pytest.raises(InvalidArgumentError):
            matrix_window("Q", 2, 2)


class TestThreeSquareLines:
    def test_first_entry(self):
        reports = verify_thm3(1, 1)
        assert [r.family for r in reports] == ["R", "S", "T"]
        assert reports[0].lhs == reports[0].rhs == 2091
        assert all(r.holds for r in reports)

    def test_sweep_200(self):
        assert verify_sweep("3", 200, 200) == []


class TestCubeLines:
    def test_thm4_first_entry(self):
        report = verify_thm4(1, 1)
        assert report.holds
        assert report.lhs == report.rhs == 718

    @pytest.mark.parametrize("j, i", [(2, 3), (10, 10)])
    def test_thm4_holds(self, j, i):
        assert verify_thm4(j, i).holds

    def test_cor5_first_entry(self):
        report = verify_cor5(1, 1)
        assert report.holds
        assert report.lhs == report.rhs == 3455

    @pytest.mark.parametrize("j, i", [(1, 2), (5, 7)])
    def test_cor5_holds(self, j, i):
        assert verify_cor5(j, i).holds

    def test_sweeps_100(self):
        assert verify_sweep("4", 100, 100) == []
        assert verify_sweep("cor5", 100, 100) == []

    def test_unknown_sweep_family(self):
        with pytest.raises(InvalidArgumentError):
            verify_sweep("7", 1, 1)

    def test_report_rejects_wrong_flag(self):
        with pytest.raises(ValidationError):
            IdentityReport(family="MN", indices=(1, 1), lhs=1, rhs=2, holds=True)


class TestCongruenceLines:
    @pytest.mark.parametrize("line, params", [(1, (2, 2)), (2, (2, 5)), (3, (5, 2)), (4, (2, 1, 1)), (5, (2, 2, 1))])
    def test_residue_five(self, line, params):
        report = cor6_residues(line, params)
        assert report.holds
        assert report.lhs % 9 == 5

    def test_explicit_cubes(self):
        assert cor6_value(2, (2, 5)) == n_entry(2, 5) - cube(16) == 6881
        assert cor6_explicit_cubes(2, (2, 5)) == (5, 8, 11, 17)

    def test_explicit_cubes_every_line(self):
        for line in COR6_LINES:
            for params in cor6_parameters(line, 20):
                roots = cor6_explicit_cubes(line, params)
                assert min(roots) >= 1
                assert sum(r**3 for r in roots) == cor6_value(line, params)

    @pytest.mark.parametrize("line, params", [(1, (3, 2)), (2, (2, 4)), (4, (2, 2, 1)), (5, (2, 2, 0)), (6, (2, 2))])
    def test_constraint_violations(self, line, params):
        with pytest.raises(InvalidArgumentError):
            cor6_residues(line, params)

    def test_parameters_are_admissible_and_ordered(self):
        params = cor6_parameters(4, 20)
        assert len(params) == 20
        assert params[0] == (2, 1, 1)
        assert params == sorted(params, key=lambda p: (sum(p), p))

    def test_sweep(self):
        assert cor6_sweep() == []

    def test_sweep_rank_cap(self):
        assert cor6_sweep(rank_cap=1000) == []
        capped = cor6_sweep(rank_cap=2)
        assert (2, 2, 5) in capped


class TestFourCubeWitness:
    def test_examples(self):
        assert four_cube_witness(4, 5) == (1, 1, 1, 1)
        assert four_cube_witness(5, 5) is None

    def test_witness_is_valid(self):
        found = four_cube_witness(718, 20)
        assert found is not None
        assert sum(x**3 for x in found) == 718
        assert list(found) == sorted(found)
        assert found[-1] <= 20

    def test_bound_too_small(self):
        assert four_cube_witness(4 * 27, 2) is None
        assert four_cube_witness(4 * 27, 3) == (3, 3, 3, 3)

    def test_invalid_bound(self):
        with pytest.raises(InvalidArgumentError):
            four_cube_witness(10, 0)
