import dataclasses
import re
from fractions import Fraction

import pytest

from config.settings import settings as app_settings
from src.catalog import (
    REPORT_COLUMNS,
    audit,
    check_manifest,
    find_identity,
    list_identities,
    render_report,
    summarize,
    unmapped_labels,
    verify,
    verify_suite,
)
from src.errors import CatalogError, ManifestIncomplete
from src.expr import parse_identities
from tests.conftest import replace_first_rational

BROKEN = """
identity demo.off-by-q
  lhs = 1 + q
  rhs = 1

identity demo.singular
  lhs = inv(j(q; q))
  rhs = 1

identity demo.fine
  params a in 0..1
  lhs = q^a
  rhs = q^a
"""

# (identity, assignment, side, old, new, exponent, lhs - rhs at that exponent)
MUTATIONS = [
    ("level12.even.mock", {}, "rhs", Fraction(1, 2), Fraction(1, 3), 0, Fraction(1, 6)),
    ("mock.mu2.appell", {}, "rhs", Fraction(4), Fraction(5), 0, Fraction(-1, 2)),
    ("mock.mu2.appell-pair", {}, "rhs", Fraction(2), Fraction(3), 0, Fraction(-1, 2)),
    ("theta.rearrange.jbar0", {"a": 1}, "rhs", Fraction(2), Fraction(3), 0, Fraction(-1)),
    ("theta.rearrange.jbar14", {"a": 1}, "lhs", Fraction(2), Fraction(3), 0, Fraction(1)),
    ("appell.shift.x", {"u": 1, "a": 0}, "rhs", Fraction(1), Fraction(2), 0, Fraction(-1)),
    ("string.kac-peterson.13", {}, "rhs", Fraction(1), Fraction(2), 0, Fraction(-1)),
    ("level12.mock-conjecture", {"r": 0}, "rhs", Fraction(1, 2), Fraction(1, 3), 0, Fraction(1, 6)),
    ("mock.appell6.f", {}, "rhs", Fraction(1, 4), Fraction(1, 2), 0, Fraction(-1, 4)),
    ("mock.appell6.omega", {}, "rhs", Fraction(1, 2), Fraction(1), 1, Fraction(-1, 2)),
]


class TestCatalogContents:
    def test_size(self, catalog):
        assert len(catalog) >= 60
        assert sum(i.instance_count() for i in catalog) >= 300
        assert len({i.name for i in catalog}) == len(catalog)
        assert all(i.anchor for i in catalog)

    def test_filters(self, catalog_dir):
        assert len(list_identities(catalog_dir, "level12*")) >= 4
        assert list_identities(catalog_dir, "all") == list_identities(catalog_dir)
        assert all(i.source == "mock_theta" for i in list_identities(catalog_dir, "mock_theta"))

    def test_find(self, catalog_dir):
        assert find_identity(catalog_dir, "theta.flip").name == "theta.flip"
        with pytest.raises(CatalogError):
            find_identity(catalog_dir, "no.such.identity")

    def test_manifest_is_covered(self, catalog):
        assert audit(catalog, app_settings.MANIFEST_FILE) == []

    def test_manifest_gap(self, catalog, tmp_path):
        manifest = tmp_path / "manifest.csv"
        manifest.write_text(
            "label,topic,identity\n"
            "equation:j-flip,theta-flip,theta.flip\n"
            ",orphan,no.such.identity\n"
            "lemma:uncatalogued,,\n"
        )
        with pytest.raises(ManifestIncomplete) as info:
            check_manifest(catalog, manifest)
        assert info.value.problems == [
            "row 'orphan' -> 'no.such.identity': no such identity",
            "topic 'orphan' has no catalog identity",
            "label 'lemma:uncatalogued' has no catalog identity",
        ]

    def test_equation_labels_are_reported_not_required(self, catalog, tmp_path):
        manifest = tmp_path / "manifest.csv"
        manifest.write_text(
            "label,topic,identity\n"
            "equation:j-flip,theta-flip,theta.flip\n"
            "equation:uncatalogued,,\n"
        )
        assert audit(catalog, manifest) == []
        assert unmapped_labels(catalog, manifest) == ["equation:uncatalogued"]

    def test_manifest_needs_labels(self, catalog, tmp_path):
        manifest = tmp_path / "manifest.csv"
        manifest.write_text("topic,identity\ntheta-flip,theta.flip\n")
        with pytest.raises(CatalogError):
            audit(catalog, manifest)

    def test_every_statement_label_is_catalogued(self, catalog):
        unmapped = unmapped_labels(catalog, app_settings.MANIFEST_FILE)
        assert unmapped
        assert all(label.startswith(("equation:", "eq:")) for label in unmapped)
        assert "equation:JTPid" in unmapped
        assert "proposition:level12evenSpinFuncEqn" not in unmapped

    def test_duplicate_names(self, tmp_path):
        (tmp_path / "a.qid").write_text("identity dup lhs = 1 rhs = 1\n")
        (tmp_path / "b.qid").write_text("identity dup lhs = q rhs = q\n")
        with pytest.raises(CatalogError):
            list_identities(tmp_path)


class TestVerify:
    @pytest.mark.parametrize("name", ["theta.flip", "mock.f3.appell", "string.kac-peterson.13", "hecke.degenerate.f551"])
    def test_passes(self, catalog_dir, name):
        summary = verify_suite([find_identity(catalog_dir, name)], order=20, progress=False)
        assert summary.ok, [r for r in summary.reports if r.status != "pass"]

    @pytest.mark.parametrize("name,assignment,side,old,new,exponent,delta", MUTATIONS)
    def test_perturbed_constant_is_caught(self, catalog_dir, name, assignment, side, old, new, exponent, delta):
        identity = find_identity(catalog_dir, name)
        mutated = dataclasses.replace(identity, **{side: replace_first_rational(getattr(identity, side), old, new)})
        report = verify(mutated, assignment, 20)
        assert report.status == "fail"
        assert report.discrepancy_exponent == exponent
        assert Fraction(report.delta_numerator, report.delta_denominator) == delta

    def test_first_discrepancy(self):
        off, _, _ = parse_identities(BROKEN)
        report = verify(off, {}, 10)
        assert (report.discrepancy_exponent, report.delta_numerator, report.delta_denominator) == (1, 1, 1)

    def test_identity_order_caps_request(self):
        (identity,) = parse_identities("identity capped order 5 lhs = 1 rhs = 1")
        assert verify(identity, {}, 30).order == 5

    def test_failure_needs_enough_order(self):
        (identity,) = parse_identities("identity late lhs = 1 + q^12 rhs = 1")
        assert verify(identity, {}, 10).status == "pass"
        assert verify(identity, {}, 20).discrepancy_exponent == 12
        assert verify(identity, {}, 40).discrepancy_exponent == 12

    def test_shortfall_is_a_failure(self):
        (identity,) = parse_identities(
            "identity shallow lhs = q^(-3)*inv(poch(q, inf; q)) rhs = q^(-3)*inv(poch(q, inf; q))"
        )
        report = verify(identity, {}, 10, attempts=0)
        assert (report.status, report.order, report.discrepancy_exponent) == ("fail", 7, None)
        assert "q^7" in report.message
        assert verify_suite([identity], order=10, attempts=0, progress=False).failed == 1
        assert verify(identity, {}, 10).status == "pass"


class TestSuite:
    def test_reports_sorted_by_status(self):
        summary = verify_suite(parse_identities(BROKEN), order=10, progress=False)
        assert [r.status for r in summary.reports] == ["fail", "error", "pass", "pass"]
        assert (summary.total, summary.passed, summary.failed, summary.errors) == (4, 2, 1, 1)
        assert not summary.ok
        assert "ZeroLeadingCoefficient" in summary.reports[1].message

    def test_render(self):
        text = render_report(verify_suite(parse_identities(BROKEN), order=10, progress=False))
        lines = text.splitlines()
        assert lines[0].split("\t") == REPORT_COLUMNS
        assert lines[1].split("\t") == ["demo.off-by-q", "", "10", "fail", "1", "1", "1"]
        assert lines[-1] == "# total=4 pass=2 fail=1 error=1"

    def test_wall_time_on_request(self):
        summary = verify_suite(parse_identities(BROKEN), order=10, progress=False)
        assert summary.elapsed > 0
        footer = render_report(summary, timing=True).splitlines()[-1]
        assert re.fullmatch(r"# total=4 pass=2 fail=1 error=1 wall=\d+\.\d\ds", footer)

    def test_parallel_matches_serial(self, catalog_dir):
        identities = list_identities(catalog_dir, "theta.rearrange*")
        serial = verify_suite(identities, order=15, jobs=1, progress=False)
        parallel = verify_suite(identities, order=15, jobs=2, progress=False)
        assert serial.reports == parallel.reports
        assert serial.ok

    def test_summarize_empty(self):
        assert summarize([]).ok


@pytest.mark.slow
def test_full_catalog(catalog):
    summary = verify_suite(catalog, order=app_settings.DEFAULT_ORDER, jobs=max(1, app_settings.JOBS), progress=False)
    assert summary.ok, [(r.name, r.params, r.message) for r in summary.reports if r.status != "pass"][:10]


@pytest.mark.parametrize("name", [
    "theta.roots.two",
    "euler.integral.2",
    "euler.integral.3",
    "theta-part.level23.odd.first-quad",
    "theta-part.level23.odd.second-quad",
    "shift.level12.even.g",
    "quasi.odd.step.expanded",
    "quasi.odd.step.compact",
])
def test_catalog_entry(catalog_dir, name):
    summary = verify_suite([find_identity(catalog_dir, name)], order=20, progress=False)
    assert summary.ok, [(r.params, r.message) for r in summary.reports if r.status != "pass"]


def test_catalog_at_low_order(catalog):
    summary = verify_suite(catalog, order=8, jobs=max(1, app_settings.JOBS), progress=False)
    assert summary.failed == 0 and summary.errors == 0, [
        (r.name, r.params, r.message) for r in summary.reports if r.status != "pass"
    ][:10]
