"""Case analysis scans over the anticanonical degree budget.

The exclusion counts below are frozen: they pin down both the candidate
enumeration (which supports are even considered) and the order of the
rejection tests, so any change to either shows up as a count diff.
"""

from fractions import Fraction

import pytest

from delpezzo.lattice import C, E, MINUS_K, SurfaceModel, is_ample
from delpezzo.lemma_verify import (DEGREE_OVERFLOW, INTERSECTION_VIOLATION,
                                   NOT_AMPLE, PROJECTION_DEGREE,
                                   alpha1_report, canonical_nodal_survivor,
                                   classify_smooth_candidate, decomposition,
                                   degree_budget_check, lemma31_scan,
                                   lemma51_scan)
from delpezzo.plane_config import SixPointConfig, point

Q = Fraction


def _config(*rows, mode=SurfaceModel.SMOOTH):
    return SixPointConfig(tuple(point(*r) for r in rows), mode)


SMOOTH_COUNTS = {
    2: {"not-ample": 162, "neighbor-counting": 27, "projection-degree": 81},
    3: {"projection-degree": 135},
    4: {"not-ample": 162, "neighbor-counting": 27, "projection-degree": 162},
    5: {"projection-degree": 216},
    6: {"not-ample": 162, "neighbor-counting": 27, "projection-degree": 243},
}


@pytest.mark.parametrize("m", sorted(SMOOTH_COUNTS))
def test_smooth_scan_excludes_everything(m):
    verdict = lemma31_scan(m, Q(2, 3))
    assert verdict.survivors == ()
    assert verdict.counts_by_reason() == SMOOTH_COUNTS[m]
    assert verdict.label == f"smooth-model locus scan: m={m}, lam=2/3"


def test_smooth_scan_smaller_lambda_shrinks_the_pool():
    verdict = lemma31_scan(2, Q(1, 2))
    assert verdict.counts_by_reason() == {"projection-degree": 81}
    assert verdict.survivors == ()


def test_smooth_scan_rejects_bad_arguments():
    with pytest.raises(ValueError):
        lemma31_scan(1, Q(2, 3))
    with pytest.raises(ValueError):
        lemma31_scan(2, Q(3, 4))
    with pytest.raises(ValueError):
        lemma31_scan(2, Q(0))


def test_classifier_enforces_the_coefficient_floor():
    # a single line with multiplicity below m/lam is not a candidate at all
    d = decomposition(2, Q(2, 3), [("E1", E(1), 2)])
    with pytest.raises(ValueError):
        classify_smooth_candidate(d)


def test_classifier_flags_degree_overflow():
    d = decomposition(2, Q(2, 3), [("E1", E(1), 7)])
    rec = classify_smooth_candidate(d)
    assert rec.reason == DEGREE_OVERFLOW
    assert "exceeds the budget" in rec.detail


def test_degree_budget_check():
    good = decomposition(2, Q(2, 3), [("E1", E(1), 3)])
    assert degree_budget_check(good)
    # residual degree goes negative once the support overspends the budget
    bad = decomposition(2, Q(2, 3), [("E1", E(1), 7)])
    assert not degree_budget_check(bad)


def test_smooth_records_carry_reverifiable_details():
    verdict = lemma31_scan(2, Q(2, 3))
    for rec in verdict.records:
        d = rec.candidate
        assert d.m == 2 and d.lam == Q(2, 3)
        if rec.reason == NOT_AMPLE:
            assert not is_ample(d.locus_class())
        elif rec.reason == PROJECTION_DEGREE:
            (_, _, mu), = d.parts
            assert 2 * mu > 3 * d.m


NODAL_EVEN_COUNTS = {"survivor": 1, "intersection-violation": 57,
                     "residual-not-effective": 90}


@pytest.mark.parametrize("m", [2, 4])
def test_nodal_scan_unique_survivor(m):
    verdict = lemma51_scan(m)
    assert verdict.counts_by_reason() == NODAL_EVEN_COUNTS
    (rec,) = verdict.survivors
    assert rec.survived and rec.reason is None
    assert rec.candidate == canonical_nodal_survivor(m)
    assert verdict.label == f"nodal-model locus scan: m={m}, lam=2/3"


def test_nodal_survivor_strings():
    v2 = lemma51_scan(2)
    assert str(v2.survivors[0].candidate) == (
        "3*C + 1*E1 + 1*E2 + 1*E3 + 1*L45 + 1*L46 + 1*L56")
    v4 = lemma51_scan(4)
    assert str(v4.survivors[0].candidate) == (
        "6*C + 2*E1 + 2*E2 + 2*E3 + 2*L45 + 2*L46 + 2*L56")


def test_nodal_scan_odd_multiple_is_empty():
    verdict = lemma51_scan(3)
    assert verdict.survivors == ()
    assert verdict.counts_by_reason() == {"half-integral": 121,
                                          "intersection-violation": 27}


def test_nodal_scan_rejects_bad_arguments():
    with pytest.raises(ValueError):
        lemma51_scan(1)


def test_canonical_survivor_identity():
    for m in (2, 4, 6):
        d = canonical_nodal_survivor(m)
        total = d.locus_class() + d.residual
        assert total == MINUS_K * m
        assert d.residual_is_effective(SurfaceModel.NODAL)
    with pytest.raises(ValueError):
        canonical_nodal_survivor(3)


def test_nodal_survivor_locus_is_a_multiple_of_c():
    d = canonical_nodal_survivor(4)
    locus = d.locus_class()
    # 6C + 2(E1+E2+E3) + 2(L45+L46+L56) lands on (6; 6,6,6,0,0,0) = 6C
    assert locus == C * 6
    assert locus.degree() == 0 and locus.square() == -72


def test_intersection_violation_records_are_genuine():
    verdict = lemma51_scan(2)
    flagged = [r for r in verdict.records if r.reason == INTERSECTION_VIOLATION]
    assert len(flagged) == 57
    assert all(r.detail for r in flagged)


def test_verdict_report_format():
    verdict = lemma51_scan(3)
    lines = verdict.report().splitlines()
    assert lines[0] == "nodal-model locus scan: m=3, lam=2/3"
    assert lines[1] == "148 candidates, 0 survivors"
    assert all(line.startswith("  ") for line in lines[2:])
    assert any("half-integral" in line for line in lines)


def test_record_line_format():
    (rec,) = lemma51_scan(2).survivors
    line = rec.line()
    assert line.startswith("3*C + 1*E1 + 1*E2 + 1*E3 + 1*L45 + 1*L46 + 1*L56"
                           ": SURVIVOR -- ")
    assert "identity in the lattice" in line
    flagged = next(r for r in lemma51_scan(2).records if not r.survived)
    assert f": {flagged.reason} -- " in flagged.line()


FRAME_A = _config((1, 0, 0), (0, 1, 0), (0, 0, 1),
                  (1, 1, 1), (1, 2, 3), (1, 4, 9))
FRAME_PLAIN = _config((1, 0, 0), (0, 1, 0), (0, 0, 1),
                      (1, 1, 1), (1, 2, 5), (2, 7, 1))
FRAME_NODAL = _config((1, 0, 0), (0, 1, 0), (1, 1, 0),
                      (0, 0, 1), (2, 1, 1), (1, 2, 3), mode=SurfaceModel.NODAL)


def test_alpha1_sharp_when_three_lines_concur():
    report = alpha1_report(FRAME_A)
    assert report.value == Q(2, 3)
    assert report.final
    assert str(report) == ("alpha_1 = 2/3 (exact; three concurrent lines "
                           "{E3, F6, L36} infinitely near p3)")


def test_alpha1_upper_bound_without_eckardt_points():
    report = alpha1_report(FRAME_PLAIN)
    assert report.value == Q(1)
    assert not report.final
    assert str(report) == ("alpha_1 <= 1 (upper bound only; triangles of "
                           "coplanar lines only reach normal crossings)")


def test_alpha1_rejects_nodal_configurations():
    with pytest.raises(ValueError):
        alpha1_report(FRAME_NODAL)
