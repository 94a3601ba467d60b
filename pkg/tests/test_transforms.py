import math

import numpy as np
import pytest

from glcbench.errors import ContractError, ValidationError
from glcbench.linear_model import evaluate, contribution, model_from_normalized
from glcbench.transforms import (
    KIND_GLC3SL,
    KIND_GLCL,
    KIND_SPC2D,
    KIND_SPC3D,
    KIND_STC,
    MARKER_APEX,
    MARKER_DOT,
    MARKER_ORIGIN,
    PLACEMENT_FREE,
    LayoutConfig,
    map_glc3sl,
    map_glcl,
    map_spc2d,
    map_spc3d,
    map_stc,
    reconstruct,
)

from conftest import make_case

CFG = LayoutConfig()


def random_model(rng, n):
    a = rng.uniform(-1, 1, n)
    a[int(rng.integers(0, n))] = 1.0  # keep the normalization invariant honest
    return model_from_normalized(tuple(a))


class TestLayoutConfig:
    def test_cube_span(self):
        cfg = LayoutConfig(cube_size=2.0, cube_spacing=0.5)
        for k in range(4):
            assert cfg.cube_origin(k) == k * 2.5

    def test_default_spacing_is_quarter(self):
        assert LayoutConfig(cube_size=2.0).spacing == 0.5

    def test_validation(self):
        with pytest.raises(ValidationError):
            LayoutConfig(cube_size=0.0)
        with pytest.raises(ValidationError):
            LayoutConfig(glcl_placement="sideways")


class TestMapSpc2d:
    def test_worked_nodes(self):
        glyph = map_spc2d(make_case([0.1, 0.4, 0.5, 0.7]), CFG)
        assert glyph.nodes == ((0.1, 0.4, 0.0), (1.75, 0.7, 0.0))
        assert glyph.kind == KIND_SPC2D

    def test_zero_vector_at_cube_origins(self):
        glyph = map_spc2d(make_case([0.0] * 4), CFG)
        assert glyph.nodes == ((0.0, 0.0, 0.0), (1.25, 0.0, 0.0))

    def test_six_d_three_nodes(self):
        glyph = map_spc2d(make_case([0.1] * 6), CFG)
        assert len(glyph.nodes) == 3  # two segments

    def test_rejects_unnormalized(self):
        with pytest.raises(ValidationError):
            map_spc2d(make_case([0.1, 1.4]), CFG)

    def test_cube_size_scales(self):
        cfg = LayoutConfig(cube_size=2.0)
        glyph = map_spc2d(make_case([0.5, 0.5]), cfg)
        assert glyph.nodes == ((1.0, 1.0, 0.0),)


class TestMapSpc3d:
    def test_heights_and_dots(self):
        model = model_from_normalized((1.0, 1.0, 1.0, 1.0))
        glyph = map_spc3d(make_case([0.1, 0.4, 0.5, 0.7]), model, CFG)
        apexes = [m.point for m in glyph.markers if m.role == MARKER_APEX]
        dots = [m.point for m in glyph.markers if m.role == MARKER_DOT]
        assert len(apexes) == len(dots) == 2
        for point in apexes:
            assert point[2] == pytest.approx(1.7, abs=1e-12)
        assert dots[0][2] == pytest.approx(0.5, abs=1e-12)
        assert dots[1][2] == pytest.approx(1.2, abs=1e-12)
        # the polyline joins the cube tops
        assert glyph.nodes == tuple(apexes)

    def test_zero_vector_flat(self):
        model = model_from_normalized((1.0, 1.0, 1.0, 1.0))
        glyph = map_spc3d(make_case([0.0] * 4), model, CFG)
        for m in glyph.markers:
            assert m.point[2] == 0.0

    def test_shared_first_pair_differs_in_height(self):
        model = model_from_normalized((1.0, 1.0, 1.0, 1.0))
        ga = map_spc3d(make_case([0.1, 0.4, 0.5, 0.7], case_id=0), model, CFG)
        gb = map_spc3d(make_case([0.1, 0.4, 0.2, 0.8], case_id=1), model, CFG)
        base = lambda g: [m.point for m in g.markers if m.role == MARKER_ORIGIN]
        assert base(ga)[0] == base(gb)[0]          # same left-cube base point
        assert base(ga)[1] != base(gb)[1]          # right cube separates them
        assert ga.nodes[0][2] != gb.nodes[0][2]    # heights differ too

    def test_apex_equals_f_and_dot_equals_contribution(self, iris):
        rng = np.random.default_rng(2)
        model = random_model(rng, 4)
        for case in iris.cases[::25]:
            glyph = map_spc3d(case, model, CFG)
            f = evaluate(model, case)
            apexes = [m for m in glyph.markers if m.role == MARKER_APEX]
            dots = [m for m in glyph.markers if m.role == MARKER_DOT]
            for k, (apex, dot) in enumerate(zip(apexes, dots)):
                assert apex.point[2] == pytest.approx(f, abs=1e-12)
                assert dot.point[2] == pytest.approx(contribution(model, case, k),
                                                     abs=1e-12)
            assert sum(d.point[2] for d in dots) == pytest.approx(f, abs=1e-12)

    def test_model_mismatch(self):
        model = model_from_normalized((1.0, 1.0))
        with pytest.raises(ContractError):
            map_spc3d(make_case([0.1] * 4), model, CFG)


class TestMapStc:
    def test_direct_assignment(self):
        glyph = map_stc(make_case([0.1, 0.2, 0.3, 0.4, 0.5, 0.6]), CFG)
        assert glyph.nodes == ((0.1, 0.2, 0.3), (1.25 + 0.4, 0.5, 0.6))

    def test_four_d_padded(self):
        glyph = map_stc(make_case([0.1, 0.4, 0.5, 0.7]), CFG)
        assert len(glyph.nodes) == 2
        assert glyph.source_dim == 4
        # padding copies the two trailing attributes
        assert glyph.nodes[1] == (1.25 + 0.7, 0.5, 0.7)

    def test_zero_vector(self):
        glyph = map_stc(make_case([0.0] * 6), CFG)
        assert glyph.nodes == ((0.0, 0.0, 0.0), (1.25, 0.0, 0.0))

    def test_node_count(self):
        for n in range(3, 13):
            glyph = map_stc(make_case([0.5] * n), CFG)
            assert len(glyph.nodes) == math.ceil(n / 3)


class TestMapGlcl:
    def test_worked_endpoint(self):
        model = model_from_normalized((0.8, 0.4))
        glyph = map_glcl(make_case([0.5, 0.5]), model, (0.0, 0.0, 0.0), CFG)
        assert glyph.nodes[-1][2] == pytest.approx(0.6, abs=1e-12)
        assert len(glyph.nodes) == 3  # anchor + one node per attribute

    def test_flat_when_all_right_angles(self):
        model = model_from_normalized((0.0, 0.0, 0.0))
        glyph = map_glcl(make_case([0.9, 0.5, 0.2]), model, (0.0, 0.0, 1.0), CFG)
        assert glyph.nodes[-1][2] == pytest.approx(1.0, abs=1e-12)
        assert evaluate(model, (0.9, 0.5, 0.2)) == 0.0

    def test_free_placement_preserves_height_profile(self):
        rng = np.random.default_rng(31)
        free_cfg = LayoutConfig(glcl_placement=PLACEMENT_FREE, random_seed=9)
        for i in range(100):
            n = int(rng.choice([2, 4, 6]))
            model = random_model(rng, n)
            case = make_case(rng.uniform(0, 1, n), case_id=i)
            anchored = map_glcl(case, model, (0.0, 0.0, 0.0), CFG)
            free = map_glcl(case, model, (0.0, 0.0, 0.0), free_cfg)
            for pa, pf in zip(anchored.nodes, free.nodes):
                assert pf[2] == pytest.approx(pa[2], abs=1e-12)

    def test_endpoint_height_equals_f(self):
        rng = np.random.default_rng(5)
        for i in range(50):
            n = int(rng.choice([3, 4, 7]))
            model = random_model(rng, n)
            case = make_case(rng.uniform(0, 1, n), case_id=i)
            anchor = (0.3, -0.2, 0.7)
            glyph = map_glcl(case, model, anchor, CFG)
            rise = glyph.nodes[-1][2] - anchor[2]
            assert rise == pytest.approx(evaluate(model, case), abs=1e-12)

    def test_anchored_stays_in_plane(self):
        model = model_from_normalized((0.6, -0.2, 1.0))
        glyph = map_glcl(make_case([0.5, 0.4, 0.8]), model, (0.7, 0.0, 0.0), CFG)
        assert all(p[0] == 0.7 for p in glyph.nodes)


class TestMapGlc3sl:
    def test_polyline_per_cube(self):
        model = model_from_normalized((1.0, 0.5, -0.5, 0.25))
        case = make_case([0.1, 0.4, 0.5, 0.7])
        glyph = map_glc3sl(case, model, CFG)
        polylines = (glyph.nodes,) + glyph.extra_polylines
        assert len(polylines) == 2
        f = evaluate(model, case)
        anchors = [m.point for m in glyph.markers if m.role == MARKER_ORIGIN]
        for anchor, line in zip(anchors, polylines):
            assert len(line) == 5  # four segments for a 4-D case
            assert line[0] == anchor
            assert line[-1][2] - anchor[2] == pytest.approx(f, abs=1e-12)

    def test_zero_vector_degenerates_to_anchors(self):
        model = model_from_normalized((1.0, 1.0, 1.0, 1.0))
        glyph = map_glc3sl(make_case([0.0] * 4), model, CFG)
        for line in (glyph.nodes,) + glyph.extra_polylines:
            assert all(p == line[0] for p in line)

    def test_equal_endpoint_heights_across_cubes(self, iris):
        model = model_from_normalized((0.3, 1.0, -0.4, 0.9))
        for case in iris.cases[::30]:
            glyph = map_glc3sl(case, model, CFG)
            ends = [line[-1][2] for line in (glyph.nodes,) + glyph.extra_polylines]
            assert ends[0] == pytest.approx(ends[1], abs=1e-12)
            assert ends[0] == pytest.approx(evaluate(model, case), abs=1e-12)


class TestReconstruct:
    def test_spc2d_round_trip(self):
        case = make_case([0.1, 0.4, 0.5, 0.7])
        back = reconstruct(map_spc2d(case, CFG), CFG)
        assert back.values == pytest.approx(case.values, abs=1e-12)

    def test_stc_drops_padding(self):
        case = make_case([0.1, 0.4, 0.5, 0.7])
        back = reconstruct(map_stc(case, CFG), CFG)
        assert len(back.values) == 4
        assert back.values == pytest.approx(case.values, abs=1e-12)

    def test_all_kinds_random_round_trip(self):
        rng = np.random.default_rng(17)
        cfgs = [CFG, LayoutConfig(glcl_placement=PLACEMENT_FREE, random_seed=4)]
        for i in range(100):
            n = int(rng.choice([4, 6, 8, 10]))
            case = make_case(rng.uniform(0, 1, n), case_id=i)
            model = random_model(rng, n)
            model3 = random_model(rng, n if n % 2 == 0 else n + 1)
            for cfg in cfgs:
                glyphs = [
                    map_spc2d(case, cfg),
                    map_spc3d(case, model3, cfg),
                    map_stc(case, cfg),
                    map_glcl(case, model, (0.0, 0.0, 0.0), cfg),
                    map_glc3sl(case, model3, cfg),
                ]
                for glyph in glyphs:
                    back = reconstruct(glyph, cfg)
                    assert len(back.values) == n
                    err = max(abs(a - b) for a, b in zip(back.values, case.values))
                    assert err < 1e-9

    def test_unknown_kind(self):
        glyph = map_spc2d(make_case([0.1, 0.2]), CFG)
        from dataclasses import replace
        with pytest.raises(ContractError):
            reconstruct(replace(glyph, kind="mystery"), CFG)


def test_determinism_bit_identical():
    rng = np.random.default_rng(41)
    model = random_model(rng, 6)
    case = make_case(rng.uniform(0, 1, 6), case_id=3)
    cfg = LayoutConfig(glcl_placement=PLACEMENT_FREE, random_seed=12)
    assert map_glcl(case, model, (0.0, 0.0, 0.0), cfg) == \
        map_glcl(case, model, (0.0, 0.0, 0.0), cfg)
    assert map_glc3sl(case, model, cfg) == map_glc3sl(case, model, cfg)
    assert map_spc3d(case, model, cfg) == map_spc3d(case, model, cfg)


def test_spc_node_count_after_padding():
    for n in range(2, 12):
        glyph = map_spc2d(make_case([0.5] * n), CFG)
        assert len(glyph.nodes) == math.ceil(n / 2)
