"""Lossless maps from n-D cases to 3D glyphs, and their inverses.

Five layouts are supported:

* ``spc2d``: coordinate pairs plotted in shifted unit squares on the Z = 0
  plane, joined into a polyline.
* ``spc3d``: the same base points, with a vertical line per cube rising to
  Z = f(x); a contribution dot marks each pair's partial sum, and consecutive
  cube tops are joined at height.
* ``stc``: coordinate triples plotted as one 3-D point per shifted cube.
* ``glcl``: each attribute becomes a polyline segment of length x_i whose
  vertical rise is cos(Q_i) * x_i, so the endpoint height equals f(x).
* ``glc3sl``: a full glcl polyline anchored at every spc cube's base point.

Every map records the pre-padding dimensionality on the glyph, and
:func:`reconstruct` recovers the original case from geometry alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import CaseRecord, pad_to_multiple
from .errors import ContractError, ValidationError
from .linear_model import LinearModel, contribution, evaluate

__all__ = [
    "LayoutConfig",
    "Glyph",
    "Marker",
    "PLACEMENT_ANCHORED",
    "PLACEMENT_FREE",
    "KIND_SPC2D",
    "KIND_SPC3D",
    "KIND_STC",
    "KIND_GLCL",
    "KIND_GLC3SL",
    "MARKER_APEX",
    "MARKER_DOT",
    "MARKER_ORIGIN",
    "map_spc2d",
    "map_spc3d",
    "map_stc",
    "map_glcl",
    "map_glc3sl",
    "reconstruct",
]

Point3 = tuple[float, float, float]

PLACEMENT_ANCHORED = "anchored-plane"
PLACEMENT_FREE = "free-3d"

KIND_SPC2D = "spc2d-polyline"
KIND_SPC3D = "spc3d-figure"
KIND_STC = "stc-polyline"
KIND_GLCL = "glcl-polyline"
KIND_GLC3SL = "glc3sl-figure"

MARKER_DOT = "contribution-dot"
MARKER_APEX = "apex"
MARKER_ORIGIN = "origin"


@dataclass(frozen=True)
class LayoutConfig:
    """Cube row geometry plus polyline placement options.

    Cube k spans X in [k * (cube_size + spacing), k * (...) + cube_size];
    the spacing defaults to a quarter of the cube size.
    """

    cube_size: float = 1.0
    cube_spacing: float | None = None
    glcl_placement: str = PLACEMENT_ANCHORED
    random_seed: int = 0

    def __post_init__(self):
        if self.cube_size <= 0:
            raise ValidationError(f"cube_size must be positive, got {self.cube_size}")
        if self.cube_spacing is not None and self.cube_spacing <= 0:
            raise ValidationError(f"cube_spacing must be positive, got {self.cube_spacing}")
        if self.glcl_placement not in (PLACEMENT_ANCHORED, PLACEMENT_FREE):
            raise ValidationError(f"unknown glcl placement {self.glcl_placement!r}")

    @property
    def spacing(self) -> float:
        return 0.25 * self.cube_size if self.cube_spacing is None else self.cube_spacing

    def cube_origin(self, k: int) -> float:
        return k * (self.cube_size + self.spacing)


@dataclass(frozen=True)
class Marker:
    point: Point3
    role: str


@dataclass(frozen=True)
class Glyph:
    """Renderer-agnostic geometry of one case under one layout.

    ``nodes`` is the primary polyline (consecutive nodes are segments);
    ``extra_polylines`` holds the per-cube polylines beyond the first for the
    combined layout. ``source_dim`` is the case's pre-padding dimensionality.
    """

    case_id: int
    kind: str
    nodes: tuple[Point3, ...]
    class_label: str
    source_dim: int
    markers: tuple[Marker, ...] = ()
    extra_polylines: tuple[tuple[Point3, ...], ...] = field(default=())


def _check_unit_interval(case: CaseRecord) -> None:
    for i, v in enumerate(case.values):
        if not 0.0 <= v <= 1.0:
            raise ValidationError(
                f"case {case.id} attribute {i} is {v!r}, outside [0, 1]; normalize first"
            )


def _pair_bases(case: CaseRecord, cfg: LayoutConfig) -> list[Point3]:
    s = cfg.cube_size
    return [
        (cfg.cube_origin(k) + case.values[2 * k] * s, case.values[2 * k + 1] * s, 0.0)
        for k in range(len(case.values) // 2)
    ]


def map_spc2d(x: CaseRecord, cfg: LayoutConfig) -> Glyph:
    """Pairs (x_{2k}, x_{2k+1}) plotted in shifted squares at Z = 0."""
    _check_unit_interval(x)
    padded = pad_to_multiple(x, 2)
    return Glyph(
        case_id=x.id,
        kind=KIND_SPC2D,
        nodes=tuple(_pair_bases(padded, cfg)),
        class_label=x.class_label,
        source_dim=len(x.values),
    )


def map_spc3d(x: CaseRecord, model: LinearModel, cfg: LayoutConfig) -> Glyph:
    """Base pairs with vertical lines to Z = f(x) and contribution dots.

    Markers per cube: an origin at the base point, a class-colored apex at
    height f(x), and a white contribution dot at the pair's partial sum.
    The glyph polyline joins consecutive apexes.
    """
    _check_unit_interval(x)
    padded = pad_to_multiple(x, 2)
    if model.dimension != len(padded.values):
        raise ContractError(
            f"model has {model.dimension} coefficients, padded case has "
            f"{len(padded.values)}"
        )
    f = evaluate(model, padded)
    bases = _pair_bases(padded, cfg)
    apexes = []
    markers = []
    for k, (bx, by, _) in enumerate(bases):
        apex = (bx, by, f)
        apexes.append(apex)
        markers.append(Marker((bx, by, 0.0), MARKER_ORIGIN))
        markers.append(Marker(apex, MARKER_APEX))
        markers.append(Marker((bx, by, contribution(model, padded, k)), MARKER_DOT))
    return Glyph(
        case_id=x.id,
        kind=KIND_SPC3D,
        nodes=tuple(apexes),
        class_label=x.class_label,
        source_dim=len(x.values),
        markers=tuple(markers),
    )


def map_stc(x: CaseRecord, cfg: LayoutConfig) -> Glyph:
    """Triples (x_{3k}, x_{3k+1}, x_{3k+2}) as one 3-D point per shifted cube."""
    _check_unit_interval(x)
    padded = pad_to_multiple(x, 3)
    s = cfg.cube_size
    nodes = tuple(
        (
            cfg.cube_origin(k) + padded.values[3 * k] * s,
            padded.values[3 * k + 1] * s,
            padded.values[3 * k + 2] * s,
        )
        for k in range(len(padded.values) // 3)
    )
    return Glyph(
        case_id=x.id,
        kind=KIND_STC,
        nodes=nodes,
        class_label=x.class_label,
        source_dim=len(x.values),
    )


def _glcl_nodes(values: tuple[float, ...], angles: tuple[float, ...],
                anchor: Point3, cfg: LayoutConfig, stream: int) -> tuple[Point3, ...]:
    """Chained segments: segment i has length x_i and vertical rise cos(Q_i)x_i.

    Anchored-plane placement keeps X constant and lays the horizontal part
    along +Y; free placement draws the horizontal azimuth of each segment
    from a generator seeded by (layout seed, stream), preserving the exact
    vertical profile either way.
    """
    nodes = [anchor]
    px, py, pz = anchor
    if cfg.glcl_placement == PLACEMENT_FREE:
        rng = np.random.default_rng([cfg.random_seed, stream])
        azimuths = rng.uniform(0.0, 2.0 * math.pi, size=len(values))
    else:
        azimuths = None
    for i, (v, q) in enumerate(zip(values, angles)):
        rise = math.cos(q) * v
        run = math.sin(q) * v
        if azimuths is None:
            px, py, pz = px, py + run, pz + rise
        else:
            px = px + math.cos(azimuths[i]) * run
            py = py + math.sin(azimuths[i]) * run
            pz = pz + rise
        nodes.append((px, py, pz))
    return tuple(nodes)


def map_glcl(x: CaseRecord, model: LinearModel, anchor: Point3,
             cfg: LayoutConfig) -> Glyph:
    """One angled polyline for the whole case; endpoint height equals f(x)."""
    _check_unit_interval(x)
    if model.dimension != len(x.values):
        raise ContractError(
            f"model has {model.dimension} coefficients, case has {len(x.values)}"
        )
    nodes = _glcl_nodes(x.values, model.angles, anchor, cfg, stream=x.id)
    return Glyph(
        case_id=x.id,
        kind=KIND_GLCL,
        nodes=nodes,
        class_label=x.class_label,
        source_dim=len(x.values),
        markers=(Marker(anchor, MARKER_ORIGIN),),
    )


def map_glc3sl(x: CaseRecord, model: LinearModel, cfg: LayoutConfig) -> Glyph:
    """A full glcl polyline anchored at each spc cube's base point.

    Every polyline covers all attributes, so each one ends at height f(x)
    above its own anchor.
    """
    _check_unit_interval(x)
    padded = pad_to_multiple(x, 2)
    if model.dimension != len(padded.values):
        raise ContractError(
            f"model has {model.dimension} coefficients, padded case has "
            f"{len(padded.values)}"
        )
    bases = _pair_bases(padded, cfg)
    polylines = []
    markers = []
    for k, base in enumerate(bases):
        # Distinct stream per cube so free placement spreads the copies apart.
        polylines.append(
            _glcl_nodes(padded.values, model.angles, base, cfg,
                        stream=x.id * len(bases) + k)
        )
        markers.append(Marker(base, MARKER_ORIGIN))
    return Glyph(
        case_id=x.id,
        kind=KIND_GLC3SL,
        nodes=polylines[0],
        class_label=x.class_label,
        source_dim=len(x.values),
        markers=tuple(markers),
        extra_polylines=tuple(polylines[1:]),
    )


# ---------------------------------------------------------------------------
# Reconstruction


def _segment_lengths(nodes: tuple[Point3, ...]) -> list[float]:
    out = []
    for (ax, ay, az), (bx, by, bz) in zip(nodes, nodes[1:]):
        out.append(math.sqrt((bx - ax) ** 2 + (by - ay) ** 2 + (bz - az) ** 2))
    return out


def reconstruct(glyph: Glyph, cfg: LayoutConfig,
                model: LinearModel | None = None) -> CaseRecord:
    """Recover the original case from a glyph built with the same config.

    Pair and triple layouts invert the shifted-cube placement; angled
    polylines recover each x_i as the segment's euclidean length, which is
    placement-independent. Padding recorded at map time is dropped.
    """
    s = cfg.cube_size
    values: list[float] = []
    if glyph.kind == KIND_SPC2D:
        for k, (nx, ny, _) in enumerate(glyph.nodes):
            values.append((nx - cfg.cube_origin(k)) / s)
            values.append(ny / s)
    elif glyph.kind == KIND_SPC3D:
        bases = [m.point for m in glyph.markers if m.role == MARKER_ORIGIN]
        if not bases:
            raise ContractError("spc3d glyph carries no origin markers")
        for k, (nx, ny, _) in enumerate(bases):
            values.append((nx - cfg.cube_origin(k)) / s)
            values.append(ny / s)
    elif glyph.kind == KIND_STC:
        for k, (nx, ny, nz) in enumerate(glyph.nodes):
            values.append((nx - cfg.cube_origin(k)) / s)
            values.append(ny / s)
            values.append(nz / s)
    elif glyph.kind in (KIND_GLCL, KIND_GLC3SL):
        values = _segment_lengths(glyph.nodes)
    else:
        raise ContractError(f"unknown glyph kind {glyph.kind!r}")

    if model is not None and glyph.kind in (KIND_GLCL, KIND_GLC3SL):
        if model.dimension != len(values):
            raise ContractError(
                f"model has {model.dimension} coefficients, glyph encodes "
                f"{len(values)}"
            )
    if not 0 < glyph.source_dim <= len(values):
        raise ContractError(
            f"glyph source_dim {glyph.source_dim} inconsistent with "
            f"{len(values)} decoded values"
        )
    return CaseRecord(
        id=glyph.case_id,
        values=tuple(values[: glyph.source_dim]),
        class_label=glyph.class_label,
    )
