import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etaparity import (
    BoundExceedsTruncationError,
    GF2Series,
    ScanPoint,
    ScanReport,
    check_run_structure,
    count_parity,
    density_scan,
    expand,
    geometric,
    growth_scan,
    mul,
    parse,
    pentagonal_series,
    pow2d,
    product_identity_mismatch,
    theta_count_relative_error,
    theta_odd_count,
)
from etaparity.parity import _toggle_model, resolve_threads
from strategies import eta_specs, gf2_series


class TestCountParity:
    def test_pentagonal_tallies(self):
        pc = count_parity(expand(parse("f1"), 12), 1, 0, 12)
        assert (pc.odd_count, pc.even_count) == (6, 7)

    def test_partition_tallies(self):
        pc = count_parity(expand(parse("f1^-1"), 9), 1, 0, 9)
        assert (pc.even_count, pc.odd_count) == (3, 7)

    def test_all_ones_progression(self):
        pc = count_parity(geometric(1, 0, 100), 2, 1, 100)
        assert (pc.even_count, pc.odd_count) == (0, 50)

    def test_degree_zero_participates(self):
        pc = count_parity(GF2Series.one(10), 5, 0, 10)
        assert pc.odd_count == 1 and pc.even_count == 2

    def test_residue_past_bound(self):
        pc = count_parity(GF2Series.one(10), 7, 5, 3)
        assert pc.total == 0

    def test_bound_exceeds_truncation(self):
        with pytest.raises(BoundExceedsTruncationError):
            count_parity(GF2Series.one(10), 1, 0, 11)

    def test_bad_residue(self):
        with pytest.raises(ValueError):
            count_parity(GF2Series.one(10), 3, 3, 5)

    @given(
        f=gf2_series(max_trunc=1 << 14),
        a=st.integers(1, 16),
        frac=st.floats(0.0, 1.0),
    )
    @settings(max_examples=50)
    def test_residues_partition_the_range(self, f, a, frac):
        x = int(frac * f.trunc)
        whole = count_parity(f, 1, 0, x)
        odd = even = 0
        for b in range(a):
            pc = count_parity(f, a, b, x)
            odd += pc.odd_count
            even += pc.even_count
        assert odd == whole.odd_count
        assert even == whole.even_count
        assert odd + even == x + 1

    def test_thread_count_invariance(self):
        f = pentagonal_series(1, 1 << 21)
        base = count_parity(f, 1, 0, (1 << 21) - 3, threads=1)
        for threads in (2, 4, 7):
            got = count_parity(f, 1, 0, (1 << 21) - 3, threads=threads)
            assert got == base

    def test_env_var_overrides_hint(self, monkeypatch):
        monkeypatch.setenv("ETAPARITY_THREADS", "3")
        assert resolve_threads(1) == 3
        monkeypatch.setenv("ETAPARITY_THREADS", "bogus")
        with pytest.raises(ValueError):
            resolve_threads(1)


class TestScanReports:
    def test_growth_scan_partition_counts(self):
        report = growth_scan(parse("f1^-1"), 1, 0, [10**4, 10**5])
        assert report.kind == "growth_sqrt"
        norms = [p.normalized for p in report.points]
        assert norms[0] < norms[1]
        # count column is exact and recomputable
        for p in report.points:
            assert p.normalized == pytest.approx(p.count / math.sqrt(p.x))

    def test_growth_scan_sparse_spec_tracks_sqrt(self):
        report = growth_scan(parse("f1"), 1, 0, [10**4, 10**6])
        for p in report.points:
            assert 0.95 < p.normalized / math.sqrt(p.x) <= 1.0

    def test_growth_scan_empty(self):
        report = growth_scan(parse("f1"), 1, 0, [])
        assert report.points == ()

    def test_density_scan_toggle_series(self):
        n = 10**6
        f = mul(pentagonal_series(1, n), geometric(1, 0, n))
        report = density_scan(f, [n])
        assert report.kind == "density"
        assert abs(report.points[0].normalized - 2 / 3) < 0.01 * (2 / 3)

    def test_density_scan_cube_is_thin(self):
        f = expand(parse("f1^3"), 10**6)
        report = density_scan(f, [10**6])
        assert report.points[0].normalized < 0.002

    def test_density_scan_zero_series(self):
        report = density_scan(GF2Series.zero(100), [10, 100])
        assert [p.normalized for p in report.points] == [0.0, 0.0]

    def test_density_scan_bound_check(self):
        with pytest.raises(BoundExceedsTruncationError):
            density_scan(GF2Series.zero(100), [101])

    def test_checkpoints_must_increase(self):
        with pytest.raises(ValueError):
            density_scan(GF2Series.zero(100), [10, 10])
        with pytest.raises(ValueError):
            growth_scan(parse("f1"), 1, 0, [5, 4])
        with pytest.raises(ValueError):
            density_scan(GF2Series.zero(100), [0, 5])

    def test_csv_golden(self):
        report = ScanReport(
            kind="density",
            points=(ScanPoint(10, 7, 0.7), ScanPoint(100, 66, 0.6612345678)),
        )
        assert report.to_csv() == (
            "kind,x,count,normalized\n"
            "density,10,7,0.7\n"
            "density,100,66,0.661235\n"
        )

    def test_json_fields_mirror_csv(self):
        report = ScanReport(kind="growth_sqrt", points=(ScanPoint(4, 3, 1.5),))
        obj = report.to_json_obj()
        assert obj == [
            {"kind": "growth_sqrt", "x": 4, "count": 3, "normalized": 1.5}
        ]
        json.dumps(obj)  # serializable

    def test_bad_kind_rejected(self):
        with pytest.raises(ValueError):
            ScanReport(kind="bogus", points=())


class TestProductIdentity:
    def test_partition_case(self):
        assert product_identity_mismatch(parse("f1^-1"), 5, 4, 3, 10**4) is None

    def test_pure_numerator_case(self):
        assert product_identity_mismatch(parse("f1"), 2, 1, 0, 10**3) is None

    def test_fault_injection_reports_degree(self):
        spec = parse("f1^-1")
        a, b, d, trunc = 3, 1, 1, 400
        comb = geometric(a, b, trunc)
        quotient = expand(spec, trunc)
        theta = pow2d(pentagonal_series(a, trunc), d)
        lhs = mul(comb + quotient, theta)
        rhs = (comb * theta) + (theta * quotient)
        words = rhs.words.copy()
        words[17 >> 6] ^= np.uint64(1 << (17 & 63))
        from etaparity import first_difference

        assert first_difference(lhs, GF2Series(trunc, words)) == 17

    @given(
        spec=eta_specs(max_subscript=5, max_exponent=6),
        a=st.integers(1, 8),
        data=st.data(),
        d=st.integers(0, 6),
    )
    @settings(max_examples=50)
    def test_randomized_grid(self, spec, a, data, d):
        b = data.draw(st.integers(0, a - 1))
        assert product_identity_mismatch(spec, a, b, d, 1 << 12) is None

    def test_residue_validated(self):
        with pytest.raises(ValueError):
            product_identity_mismatch(parse("f1"), 2, 2, 0, 100)


class TestThetaCounts:
    def test_small_window(self):
        assert theta_odd_count(1, 0, 26) == 9

    def test_degree_rescaling_is_exact(self):
        x = 10**8
        assert theta_odd_count(3, 2, x) == theta_odd_count(1, 0, x // 12)
        assert theta_odd_count(5, 3, x) == theta_odd_count(1, 0, x // 40)

    def test_matches_series_support(self):
        n = 1 << 14
        for a, d in [(1, 0), (2, 1), (3, 2)]:
            series = pow2d(pentagonal_series(a, n), d)
            assert theta_odd_count(a, d, n) == series.popcount()

    def test_relative_error_base_pair(self):
        assert theta_count_relative_error(1, 0, 10**8) < 1e-3
        assert theta_count_relative_error(1, 0, 10**6) < 1e-2

    def test_relative_error_drifts_with_scale(self):
        # the sqrt-prediction normalization is only calibrated at a*2^d == 1;
        # elsewhere the count exceeds the prediction by sqrt(a * 2^d)
        err = theta_count_relative_error(3, 2, 10**8)
        assert abs(err - (math.sqrt(12) - 1)) < 1e-3

    @pytest.mark.parametrize("a", [1, 2, 3, 5, 7])
    @pytest.mark.parametrize("d", [0, 1, 3])
    def test_odd_support_lives_on_multiples(self, a, d):
        n = 1 << 14
        series = pow2d(pentagonal_series(a, n), d)
        degs = series.odd_degrees()
        assert (degs % a == 0).all()


class TestRunStructure:
    def test_degree_zero(self):
        assert check_run_structure(0)

    def test_small_window_matches_known_runs(self):
        assert check_run_structure(21)
        f = mul(pentagonal_series(1, 21), geometric(1, 0, 21))
        want = [0] + list(range(2, 5)) + list(range(7, 12)) + list(range(15, 22))
        assert list(f.odd_degrees()) == want

    def test_model_density_tends_to_two_thirds(self):
        n = 10**5
        model = _toggle_model(n)
        assert abs(model.popcount() / n - 2 / 3) < 0.01

    def test_medium_window(self):
        assert check_run_structure(10**4)
