"""Six-point configurations, Eckardt detection, explicit cubic cone tests."""

import random
from fractions import Fraction

import pytest

from delpezzo.lattice import SurfaceModel
from delpezzo.plane_config import (ConfigParseError, CubicForm,
                                   DegenerateConicError, GeometryError,
                                   InvalidConfigError, NotOnSurfaceError,
                                   SingularPointError, SixPointConfig,
                                   collinear, conic_through, conic_value,
                                   dump_config, dump_cubic, eckardt_points,
                                   is_eckardt_on_cubic, line_through,
                                   load_config, load_cubic, point,
                                   tangent_plane_restriction, validate)


def _config(*rows, mode=SurfaceModel.SMOOTH):
    return SixPointConfig(tuple(point(*r) for r in rows), mode)


FRAME_A = _config((1, 0, 0), (0, 1, 0), (0, 0, 1),
                  (1, 1, 1), (1, 2, 3), (1, 4, 9))
FRAME_B = _config((1, 0, 0), (0, 1, 0), (0, 0, 1),
                  (1, 1, 1), (1, 2, 3), (3, 1, 2))
# p1p2, p3p4, p5p6 constructed through (1:1:1)
FRAME_CONCURRENT = _config((1, 0, 0), (2, 1, 1), (0, 1, 0),
                           (1, 2, 1), (0, 0, 1), (1, 1, 2))
# no Eckardt points at all
FRAME_PLAIN = _config((1, 0, 0), (0, 1, 0), (0, 0, 1),
                      (1, 1, 1), (1, 2, 5), (2, 7, 1))
FRAME_NODAL = _config((1, 0, 0), (0, 1, 0), (1, 1, 0),
                      (0, 0, 1), (2, 1, 1), (1, 2, 3), mode=SurfaceModel.NODAL)

EX11_CUBIC = CubicForm.from_dict({
    (0, 3, 0, 0): 1, (0, 0, 3, 0): 1, (0, 0, 0, 3): 1,
    (0, 1, 1, 1): 6,
    (2, 1, 0, 0): 1, (2, 0, 1, 0): 2, (2, 0, 0, 1): 3,
})
FERMAT_CUBIC = CubicForm.from_dict({
    (3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1, (0, 0, 0, 3): 1,
})


# -- primitive geometry ----------------------------------------------------------

def test_points_normalize_to_primitive_representatives():
    assert point(2, 4, 6) == point(1, 2, 3)
    assert point(-1, 0, 2) == point(1, 0, -2)
    assert point("1/2", "1/3", 0) == point(3, 2, 0)


def test_collinear_and_line_through():
    assert collinear(point(1, 0, 0), point(0, 1, 0), point(1, 1, 0))
    assert not collinear(point(1, 0, 0), point(0, 1, 0), point(0, 0, 1))
    line = line_through(point(1, 0, 0), point(0, 1, 0))
    assert [line[0], line[1]] == [0, 0] and line[2] != 0


def test_conic_through_five_standard_points():
    conic = conic_through(point(1, 0, 0), point(0, 1, 0), point(0, 0, 1),
                          point(1, 1, 1), point(1, 2, 3))
    assert conic == (0, 3, -4, 0, 1, 0)   # 3xy - 4xz + yz
    for p in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)):
        assert conic_value(conic, point(*p)) == 0


def test_conic_through_degenerate_quintuple():
    with pytest.raises(DegenerateConicError):
        conic_through(point(1, 0, 0), point(0, 1, 0), point(1, 1, 0),
                      point(2, 1, 0), point(0, 0, 1))


# -- configuration validation ------------------------------------------------------

def test_standard_frames_validate():
    for cfg in (FRAME_A, FRAME_B, FRAME_CONCURRENT, FRAME_PLAIN):
        assert validate(cfg).ok


def test_nodal_frame_requires_first_three_collinear():
    assert validate(FRAME_NODAL).ok
    # the same points in smooth mode violate general position
    smooth = SixPointConfig(FRAME_NODAL.points, SurfaceModel.SMOOTH)
    report = validate(smooth)
    assert not report.ok
    assert any(v.indices == (1, 2, 3) for v in report.violations)


def test_duplicate_point_is_flagged():
    cfg = _config((1, 0, 0), (1, 0, 0), (0, 0, 1),
                  (1, 1, 1), (1, 2, 3), (1, 4, 9))
    report = validate(cfg)
    assert not report.ok
    assert any(v.kind == "duplicate" for v in report.violations)


def test_six_points_on_a_conic_are_flagged():
    # (1:3:9) lies on the conic 3xy - 4xz + yz through the five standard points
    conic = conic_through(point(1, 0, 0), point(0, 1, 0), point(0, 0, 1),
                          point(1, 1, 1), point(1, 2, 3))
    assert conic_value(conic, point(1, 3, 9)) == 0
    cfg = _config((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3),
                  (1, 3, 9))
    report = validate(cfg)
    assert not report.ok
    assert any(v.kind == "conconic" for v in report.violations)


# -- Eckardt points on blow-up models ----------------------------------------------

def test_frame_a_eckardt_records():
    records = [(r.triple, str(r.location)) for r in eckardt_points(FRAME_A)]
    assert records == [
        (("E3", "F6", "L36"), "infinitely near p3"),
        (("E5", "F4", "L45"), "infinitely near p5"),
        (("E5", "F6", "L56"), "infinitely near p5"),
        (("L12", "L34", "L56"), "(1:1:0)"),
    ]


def test_frame_b_single_eckardt_point():
    records = eckardt_points(FRAME_B)
    assert [(r.triple, str(r.location)) for r in records] == [
        (("L16", "L23", "L45"), "(0:1:2)")]


def test_constructed_concurrency_shows_up():
    records = {r.triple: str(r.location) for r in eckardt_points(FRAME_CONCURRENT)}
    assert records[("L12", "L34", "L56")] == "(1:1:1)"
    assert len(records) == 4


def test_plain_frame_has_no_eckardt_points():
    assert eckardt_points(FRAME_PLAIN) == []


def test_eckardt_points_reject_invalid_configs():
    bad = _config((1, 0, 0), (1, 0, 0), (0, 0, 1),
                  (1, 1, 1), (1, 2, 3), (1, 4, 9))
    with pytest.raises(InvalidConfigError):
        eckardt_points(bad)


def test_eckardt_triples_invariant_under_projectivities():
    # relabeling-free invariance: applying a unimodular map to all six points
    # permutes nothing and keeps the triple labels
    rng = random.Random(5)
    base = {r.triple for r in eckardt_points(FRAME_A)}
    for _ in range(5):
        while True:
            mat = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
            det = (mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1])
                   - mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0])
                   + mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0]))
            if det != 0:
                break
        moved = _config(*[
            tuple(sum(mat[r][c] * p.coords[c] for c in range(3))
                  for r in range(3))
            for p in FRAME_A.points])
        assert {r.triple for r in eckardt_points(moved)} == base


# -- explicit cubics and the cone test ----------------------------------------------

def test_example_cubic_cone_point():
    assert is_eckardt_on_cubic(EX11_CUBIC, point(1, 0, 0, 0))


def test_example_cubic_restriction_is_a_cone():
    restricted = tangent_plane_restriction(EX11_CUBIC, point(1, 0, 0, 0))
    assert restricted  # nonzero ternary cubic
    assert all(expo[0] == 0 for expo in restricted)


def test_fermat_eckardt_points():
    assert is_eckardt_on_cubic(FERMAT_CUBIC, point(1, -1, 0, 0))
    assert not is_eckardt_on_cubic(FERMAT_CUBIC, point(3, 4, 5, -6))


def test_fermat_restriction_at_eckardt_point():
    restricted = tangent_plane_restriction(FERMAT_CUBIC, point(1, -1, 0, 0))
    # the cone over s1^3 + s2^3: three concurrent lines
    assert {e for e in restricted} == {(0, 3, 0), (0, 0, 3)}


def test_cone_test_requires_point_on_surface():
    with pytest.raises(NotOnSurfaceError):
        tangent_plane_restriction(FERMAT_CUBIC, point(1, 1, 1, 1))


def test_cone_test_rejects_singular_point():
    cone = CubicForm.from_dict({(0, 3, 0, 0): 1, (0, 0, 3, 0): 1,
                                (0, 0, 0, 3): 1})
    with pytest.raises(SingularPointError):
        tangent_plane_restriction(cone, point(1, 0, 0, 0))


def test_cone_test_needs_four_coordinates():
    with pytest.raises(GeometryError):
        tangent_plane_restriction(FERMAT_CUBIC, point(1, -1, 0))


# -- file formats --------------------------------------------------------------------

def test_config_round_trip():
    text = dump_config(FRAME_A)
    again = load_config(text)
    assert again == FRAME_A
    assert "mode: smooth" in text


def test_config_parse_errors():
    with pytest.raises(ConfigParseError):
        load_config("1 0 0\n")                      # no mode header
    with pytest.raises(ConfigParseError):
        load_config("mode: smooth\n1 0\n")          # wrong arity
    with pytest.raises(ConfigParseError):
        load_config("mode: flat\n")                 # unknown mode
    with pytest.raises(ConfigParseError):
        load_config(dump_config(FRAME_A) + "0 0 1\n")   # seven points


def test_cubic_round_trip():
    text = dump_cubic(EX11_CUBIC)
    assert load_cubic(text) == EX11_CUBIC
    assert len(text.strip().splitlines()) == 20


def test_cubic_parse_errors():
    good = dump_cubic(FERMAT_CUBIC).strip().splitlines()
    with pytest.raises(ConfigParseError):
        load_cubic("\n".join(good[:-1]))            # 19 lines
    swapped = [good[1]] + [good[0]] + good[2:]
    with pytest.raises(ConfigParseError):
        load_cubic("\n".join(swapped))              # out of graded-lex order
    with pytest.raises(ConfigParseError):
        load_cubic("\n".join(good[:-1] + ["z3^3 abc"]))
    with pytest.raises(ConfigParseError):
        load_cubic("\n".join(good[:-1] + ["z3^3 1/0"]))
