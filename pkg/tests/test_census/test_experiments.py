"""Tests for Monte Carlo censuses."""

import pytest

from src.census.experiments import (
    CensusReport,
    CensusSettings,
    _aggregate,
    generic_e_count,
    generic_h_count,
    run_census,
    trial_seed,
)
from src.errors import UnsupportedCensusError


@pytest.fixture
def fast_settings():
    """Settings small enough for unit tests."""
    return CensusSettings(grid=1024, starts=20, maxit=200)


class TestTrialSeeds:
    """Tests for per-trial seed derivation."""

    def test_deterministic(self):
        """Test the same (seed, index) gives the same trial seed."""
        assert trial_seed(42, 3) == trial_seed(42, 3)

    def test_distinct_streams(self):
        """Test neighbouring trials and seeds get different streams."""
        seeds = {trial_seed(seed, index) for seed in range(3) for index in range(5)}
        assert len(seeds) == 15

    def test_fits_in_64_bits(self):
        """Test trial seeds are unsigned 64-bit integers."""
        assert 0 <= trial_seed(2**63, 0) < 2**64


class TestGenericCounts:
    """Tests for reference count formulas."""

    @pytest.mark.parametrize("n,k,expected", [(2, 3, 3), (2, 4, 4), (3, 3, 7), (3, 4, 13)])
    def test_e_count(self, n, k, expected):
        """Test ((k-1)^n - 1)/(k-2)."""
        assert generic_e_count(n, k) == expected

    @pytest.mark.parametrize("k,expected", [(3, 4), (4, 6), (5, 8)])
    def test_h_count(self, k, expected):
        """Test n(k-1)^{n-1} at n = 2."""
        assert generic_h_count(2, k) == expected


class TestZCensus:
    """Tests for the symmetric Z census."""

    def test_cubic_binary(self, fast_settings):
        """Test n=2, k=3 tensors have one or three real lines and no degeneracy."""
        report = run_census("z", k=3, trials=8, seed=0, n=2, settings=fast_settings)
        assert report.passed, report.failed_invariants
        assert report.degenerate_fraction == 0.0
        assert set(report.count_distribution) <= {"1", "3"}
        assert sum(report.count_distribution.values()) == 8
        assert report.generic_count == 3
        assert report.statistics["odeco_lower_bound"] == 3

    def test_invariants_named(self, fast_settings):
        """Test the n = 2 census checks every z invariant."""
        report = run_census("z", k=4, trials=3, seed=1, n=2, settings=fast_settings)
        assert set(report.invariants) == {
            "no_degenerate",
            "verdicts_agree",
            "hessian_jacobian_identity",
            "real_le_complex",
            "real_le_generic",
            "odeco_bound_le_generic",
        }

    def test_real_bounds_checked_separately(self):
        """Test the per-trial E-line bound and the generic bound are distinct invariants."""
        row = {
            "trial": 0,
            "seed": 0,
            "real_lines": 4,
            "real_nonzero_lines": 4,
            "zero_lines": 0,
            "complex_lines": 4,
            "degenerate": 0,
            "disagreements": 0,
            "hessian_identity_gap": 0.0,
            "unconverged": 0,
        }
        report = _aggregate("z", [2, 2, 2], 3, 1, 0, [row])
        assert report.generic_count == 3
        assert report.invariants["real_le_complex"] is True
        assert report.invariants["real_le_generic"] is False
        assert "real_le_generic" in report.failed_invariants


    def test_multistart_above_two(self, fast_settings):
        """Test n = 3 uses multistart and records no complex count."""
        report = run_census("z", k=3, trials=2, seed=2, n=3, settings=fast_settings)
        assert report.generic_count is None
        assert all(row["complex_lines"] is None for row in report.rows)
        assert all(row["real_lines"] >= 1 for row in report.rows)

    def test_deterministic(self, fast_settings):
        """Test equal seeds reproduce the whole report."""
        first = run_census("z", k=3, trials=4, seed=9, n=2, settings=fast_settings)
        second = run_census("z", k=3, trials=4, seed=9, n=2, settings=fast_settings)
        assert first.to_dict() == second.to_dict()

    def test_threads_match_serial(self, fast_settings):
        """Test pooled trials aggregate to the serial report."""
        serial = run_census("z", k=3, trials=4, seed=3, n=2, settings=fast_settings)
        fast_settings.threads = 2
        pooled = run_census("z", k=3, trials=4, seed=3, n=2, settings=fast_settings)
        assert serial.to_dict() == pooled.to_dict()


class TestOtherCensuses:
    """Tests for the singular tuple and H-eigenvalue censuses."""

    def test_h_quartic(self, fast_settings):
        """Test every n=2, k=4 tensor has six eigenvalues."""
        report = run_census("h", k=4, trials=5, seed=0, settings=fast_settings)
        assert report.passed, report.failed_invariants
        assert report.count_distribution == {"6": 5}
        assert report.generic_count == 6

    def test_svt_small(self, fast_settings):
        """Test a 2×2×2 census finds nondegenerate tuples."""
        report = run_census("svt", k=3, trials=3, seed=0, dims=[2, 2, 2], settings=fast_settings)
        assert report.invariants["no_degenerate"]
        assert all(row["tuples"] > 0 for row in report.rows)
        assert report.dims == [2, 2, 2]

    def test_to_dict_fields(self, fast_settings):
        """Test the serialized report carries derived fields."""
        data = run_census("h", k=3, trials=2, seed=4, settings=fast_settings).to_dict()
        assert data["passed"] is True
        assert data["degenerate_fraction"] == 0.0
        assert len(data["rows"]) == 2


class TestCensusValidation:
    """Tests for unsupported census requests."""

    @pytest.mark.parametrize(
        "kwargs,field",
        [
            ({"kind": "q", "k": 3}, "kind"),
            ({"kind": "z", "k": 2}, "k"),
            ({"kind": "z", "k": 3, "n": 7}, "dims"),
            ({"kind": "z", "k": 3, "dims": [2, 3, 2]}, "dims"),
            ({"kind": "h", "k": 3, "n": 3}, "n"),
            ({"kind": "svt", "k": 3, "dims": [2, 2]}, "k"),
        ],
    )
    def test_rejected(self, kwargs, field):
        """Test unsupported combinations raise with the offending field."""
        with pytest.raises(UnsupportedCensusError) as exc:
            run_census(trials=1, seed=0, **kwargs)
        assert exc.value.field == field

    def test_trials_positive(self):
        """Test zero trials is rejected."""
        with pytest.raises(UnsupportedCensusError):
            run_census("h", k=3, trials=0, seed=0)

    def test_report_defaults(self):
        """Test an empty report has no failures."""
        report = CensusReport(kind="z", dims=[2, 2, 2], trials=0, seed=0)
        assert report.passed
        assert report.degenerate_fraction == 0.0
