"""Dataset parsing, serialization round-trips, and analysis reports."""

import math
from dataclasses import replace

import numpy as np
import pytest

from rrdp import (
    Dataset,
    Hypothesis,
    InconsistentHeader,
    InvalidParameter,
    ParseError,
    analyze,
    direct_question,
    emit_dataset,
    estimator_variance,
    forced_response,
    kuk,
    load_fixture,
    parse_dataset,
    simulate_responses,
    two_step,
    unrelated_question,
    warner,
)
from rrdp.dataio import fixture_path

FRD_DIE = forced_response(1 / 12, 2 / 12)


class TestParsing:
    def test_counts_round(self):
        text = "design,p,p1,p2,pi_y,n,yes\nfrd,,0.0833333333333333,0.1666666666666667,,1602,435\n"
        ds = parse_dataset(text, format="counts")
        assert ds.n == 1602 and ds.yes_count == 435
        assert ds.design.p1 == pytest.approx(1 / 12, abs=1e-12)

    def test_counts_accepts_bytes_and_streams(self):
        text = emit_dataset(Dataset(warner(0.3), 100, 40))
        assert parse_dataset(text.encode()).yes_count == 40

    def test_records_tally(self):
        body = "response\n" + "\n".join(["1"] * 84 + ["0"] * 725)
        ds = parse_dataset(body, format="records", design=direct_question())
        assert ds.n == 809
        assert ds.yes_rate == pytest.approx(0.1038, abs=1e-4)

    def test_empty_input(self):
        with pytest.raises(ParseError, match="empty"):
            parse_dataset("", format="counts")
        with pytest.raises(ParseError, match="empty"):
            parse_dataset("\n\n", format="records", design=warner(0.3))

    def test_bad_header(self):
        with pytest.raises(InconsistentHeader):
            parse_dataset("design,p,n,yes\nwarner,0.3,10,5\n", format="counts")
        with pytest.raises(InconsistentHeader):
            parse_dataset("answer\n1\n", format="records", design=warner(0.3))

    def test_invalid_design_params_flagged_as_header_problem(self):
        text = "design,p,p1,p2,pi_y,n,yes\nwarner,0.5,,,,100,10\n"
        with pytest.raises(InconsistentHeader, match="1/2"):
            parse_dataset(text, format="counts")

    def test_bad_record_token_carries_line_number(self):
        body = "response\n1\n0\n1\nmaybe\n0\n"
        with pytest.raises(ParseError) as err:
            parse_dataset(body, format="records", design=warner(0.3))
        assert err.value.line == 5

    def test_single_data_row_enforced(self):
        text = (
            "design,p,p1,p2,pi_y,n,yes\nwarner,0.3,,,,100,10\nwarner,0.3,,,,100,11\n"
        )
        with pytest.raises(ParseError, match="single data row"):
            parse_dataset(text, format="counts")

    def test_records_need_design(self):
        with pytest.raises(InvalidParameter, match="design"):
            parse_dataset("response\n1\n", format="records")

    def test_count_bounds_checked(self):
        text = "design,p,p1,p2,pi_y,n,yes\nwarner,0.3,,,,100,101\n"
        with pytest.raises(ParseError, match="yes_count"):
            parse_dataset(text, format="counts")

    @pytest.mark.parametrize(
        "ds",
        [
            Dataset(warner(0.269), 809, 552),
            Dataset(unrelated_question(0.407, 0.6), 500, 200),
            Dataset(FRD_DIE, 1602, 435),
            Dataset(kuk(0.68, 0.25), 321, 99),
            Dataset(two_step(0.418), 1000, 287),
            Dataset(direct_question(), 809, 84),
        ],
    )
    @pytest.mark.parametrize("format", ["counts", "records"])
    def test_round_trip(self, ds, format):
        design = ds.design if format == "records" else None
        again = parse_dataset(emit_dataset(ds, format), format=format, design=design)
        assert again == replace(ds, label="")


class TestAnalyze:
    def test_direct_arm_estimate(self):
        report = analyze(Dataset(direct_question(), 809, 84))
        assert report.estimate == pytest.approx(0.1038, abs=1e-4)
        assert report.epsilon_realized is None
        assert report.warnings == ()

    def test_forced_response_arm(self):
        report = analyze(Dataset(FRD_DIE, 1602, 435))
        assert report.estimate == pytest.approx(0.1398, abs=1e-4)
        assert report.epsilon_realized == pytest.approx(2.30, abs=0.01)

    def test_interval_centered_on_raw_estimate(self):
        ds = Dataset(warner(0.269), 809, 552)
        report = analyze(ds)
        half = 1.959963984540054 * report.std_error
        assert report.ci_95[0] == pytest.approx(report.estimate - half, abs=1e-12)
        assert report.ci_95[1] == pytest.approx(report.estimate + half, abs=1e-12)
        assert report.std_error == pytest.approx(
            math.sqrt(estimator_variance(ds.design, report.estimate_clamped, ds.n)),
            abs=1e-15,
        )

    def test_below_floor_rate_warns_and_clamps(self):
        # observed rate under the forced-yes floor drives the raw estimate negative
        ds = Dataset(FRD_DIE, 1602, 100)
        report = analyze(ds)
        assert report.estimate < 0.0
        assert report.estimate_clamped == 0.0
        assert report.warnings and "floor" in report.warnings[0]

    def test_null_standard_error_and_test_attached(self):
        hyp = Hypothesis(0.5, 0.3, 0.05)
        report = analyze(Dataset(warner(0.269), 809, 552), hyp)
        assert report.test is not None and report.test.reject
        assert report.std_error_null == pytest.approx(
            math.sqrt(estimator_variance(warner(0.269), 0.5, 809)), abs=1e-15
        )

    def test_recovers_truth_within_four_standard_errors(self):
        # seeded end-to-end trials through the simulator and the analyzer
        designs = [
            warner(0.269),
            unrelated_question(0.407, 0.6),
            FRD_DIE,
            kuk(0.68, 0.25),
            two_step(0.418),
        ]
        true_pi = 0.22
        n = 600
        hits = 0
        trials = 500
        for t in range(trials):
            spec = designs[t % len(designs)]
            yes = simulate_responses(spec, true_pi, n, seed=1000 + t, method="binomial")
            report = analyze(Dataset(spec, n, yes))
            if abs(report.estimate - true_pi) <= 4.0 * report.std_error:
                hits += 1
        assert hits >= 0.99 * trials


class TestFixtures:
    def test_direct_arm_fixture(self):
        ds = load_fixture("amt_tax_dq_counts.csv")
        assert ds.design.direct
        assert (ds.n, ds.yes_count) == (809, 84)
        assert "direct" in ds.label

    def test_forced_arm_fixture_flagged_reconstructed(self):
        ds = load_fixture("amt_tax_frd_counts.csv")
        assert ds.n == 1602
        assert "reconstructed" in ds.label
        assert analyze(ds).estimate == pytest.approx(0.1398, abs=1e-4)

    def test_records_fixture_matches_counts_fixture(self):
        text = fixture_path("amt_tax_dq_records.csv").read_text()
        ds = parse_dataset(text, format="records", design=direct_question())
        counts = load_fixture("amt_tax_dq_counts.csv")
        assert (ds.n, ds.yes_count) == (counts.n, counts.yes_count)

    def test_unknown_fixture(self):
        with pytest.raises(InvalidParameter, match="unknown fixture"):
            fixture_path("nope.csv")
