import numpy as np
import pytest

from generators import random_spectrum
from src.purimetrics.core import Spectrum
from src.purimetrics.derivatives import (
    analytic_partials,
    finite_difference_partials,
    ordering_disagreement_witness,
    orderings_agree,
    purity_ordering,
    sign_agreement,
)
from src.purimetrics.errors import ZeroEigenvalue
from src.purimetrics.measures import get_measure

D = Spectrum.from_values([0.5, 0.25, 0.25])
MEASURE_PAIRS = [
    ("sskf", "edpw"),
    ("sskf", "barakat_last"),
    ("sskf", "von_neumann"),
    ("edpw", "barakat_last"),
    ("edpw", "von_neumann"),
    ("barakat_last", "von_neumann"),
]


class TestAnalyticPartials:
    def test_state_d_first_index(self):
        result = analytic_partials(D, 1)
        assert result.partials["standard"] == pytest.approx(0.75)
        assert result.partials["von_neumann"] == pytest.approx(1 / np.log2(3))
        assert result.partials["barakat_sq"] == pytest.approx(27 * 0.25 * 0.25)
        assert result.signs == {"standard": 1, "von_neumann": 1, "barakat_sq": 1}

    def test_equal_to_last_eigenvalue_gives_zero(self):
        result = analytic_partials(D, 2)
        assert result.partials == pytest.approx({"standard": 0.0, "von_neumann": 0.0, "barakat_sq": 0.0})
        assert result.signs == {"standard": 0, "von_neumann": 0, "barakat_sq": 0}
        assert result.agree()

    def test_zero_eigenvalue_rejected(self):
        spec = Spectrum.from_values([0.5, 0.5, 0.0])
        with pytest.raises(ZeroEigenvalue):
            analytic_partials(spec, 1)
        # the standard purity has no singularity
        assert analytic_partials(spec, 1, measures=("standard",)).partials["standard"] == pytest.approx(1.5)

    def test_index_range(self):
        with pytest.raises(ValueError):
            analytic_partials(D, 3)
        with pytest.raises(ValueError):
            analytic_partials(D, 0)

    def test_standard_sign_follows_gap(self, rng):
        for _ in range(200):
            spec = random_spectrum(rng, 4, floor=1e-3)
            for i in (1, 2, 3):
                gap = spec.values[i - 1] - spec.values[-1]
                sign = analytic_partials(spec, i).signs["standard"]
                assert sign == (1 if gap > 1e-12 else 0)


class TestFiniteDifferences:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_match_closed_forms(self, rng, n):
        for _ in range(1000 // 3 + 1):
            spec = random_spectrum(rng, n, floor=1e-3)
            for i in range(1, n):
                analytic = analytic_partials(spec, i).partials
                numeric = finite_difference_partials(spec, i, step=1e-6)
                for name, value in analytic.items():
                    assert np.isclose(numeric[name], value, rtol=1e-4, atol=1e-6)

    def test_state_d(self):
        numeric = finite_difference_partials(D, 1)
        assert numeric["standard"] == pytest.approx(0.75, rel=1e-4)

    def test_needs_room_for_step(self):
        with pytest.raises(ZeroEigenvalue):
            finite_difference_partials(Spectrum.from_values([0.5, 0.5, 0.0]), 1)


class TestSignAgreement:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_random_interior_spectra(self, rng, n):
        for _ in range(10_000):
            spec = random_spectrum(rng, n, floor=1e-6)
            for i in range(1, n):
                assert sign_agreement(spec, i)

    def test_state_d(self):
        assert sign_agreement(D, 1)
        assert sign_agreement(D, 2)

    def test_sskf_inherits_standard_sign(self, rng):
        # Pi_sskf = sqrt(Pi_s) is monotone in Pi_s, so a step along the
        # standard-purity gradient moves Pi_sskf the same way
        sskf = get_measure("sskf")
        standard = get_measure("standard")
        spec = random_spectrum(rng, 4, floor=1e-2)
        lam = spec.values.copy()
        lam[0] += 1e-4
        lam[-1] -= 1e-4
        moved = Spectrum.from_values(lam)
        assert np.sign(sskf.calculate(moved) - sskf.calculate(spec)) == np.sign(
            standard.calculate(moved) - standard.calculate(spec)
        )


class TestOrderings:
    def test_sskf_edpw_witness(self):
        first, second = ordering_disagreement_witness("sskf_edpw")
        sskf, edpw = get_measure("sskf"), get_measure("edpw")
        assert sskf.calculate(first) == pytest.approx(0.5)
        assert sskf.calculate(second) == pytest.approx(0.25)
        assert edpw.calculate(first) == pytest.approx(0.0)
        assert edpw.calculate(second) == pytest.approx(0.25)

    def test_sskf_barakat_witness(self):
        first, second = ordering_disagreement_witness("sskf_barakat")
        sskf, barakat = get_measure("sskf"), get_measure("barakat_last")
        assert sskf.calculate(first) > sskf.calculate(second)
        assert barakat.calculate(first) < barakat.calculate(second)

    def test_unknown_witness(self):
        with pytest.raises(ValueError):
            ordering_disagreement_witness("edpw_von_neumann")

    def test_identical_spectra_never_disagree(self):
        spectra = {"a": D, "b": Spectrum.from_values([0.5, 0.25, 0.25])}
        for first, second in MEASURE_PAIRS:
            assert orderings_agree(spectra, first, second)

    def test_sskf_table_ordering(self, table1):
        assert purity_ordering(table1, "sskf") == [["P"], ["E"], ["C", "F"], ["D"], ["M"]]

    def test_von_neumann_table_ordering(self, table1):
        assert purity_ordering(table1, "von_neumann") == [["P"], ["C"], ["E"], ["F"], ["D"], ["M"]]

    @pytest.mark.parametrize("first, second", MEASURE_PAIRS)
    def test_no_two_measures_agree_on_table(self, table1, first, second):
        assert not orderings_agree(table1, first, second)
