"""Scene assembly and the canonical scene document.

A scene is a renderer-agnostic snapshot: one glyph per case with a
visibility state, overlay geometry (threshold plane, rule rectangles,
interval plane pairs, regression planes), fixed named camera presets, a
class palette, and display toggles. Serialization is canonical (sorted keys,
17-significant-digit floats), so equal scenes always produce identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dataset import Dataset
from .errors import ConfigError, ContractError, UnknownPresetError, ValidationError
from .formats import FORMAT_VERSION, dumps_canonical_bytes, loads_canonical
from .linear_model import LinearModel
from .rules import (
    Hyperblock,
    RectangleRule,
    build_regression_plane,
    hyperblock_contains,
    regression_interval,
)
from .transforms import (
    KIND_GLC3SL,
    KIND_GLCL,
    KIND_SPC2D,
    KIND_SPC3D,
    KIND_STC,
    MARKER_ORIGIN,
    Glyph,
    LayoutConfig,
    Marker,
    map_glc3sl,
    map_glcl,
    map_spc2d,
    map_spc3d,
    map_stc,
)

__all__ = [
    "Scene",
    "SceneGlyph",
    "Overlay",
    "CameraPreset",
    "VIS_NORMAL",
    "VIS_GRAYED",
    "VIS_HIDDEN",
    "VIEW_KINDS",
    "F_VIEWS",
    "PALETTE_CYCLE",
    "camera_preset",
    "camera_preset_names",
    "build_scene",
    "class_palette",
    "serialize",
    "deserialize",
]

VIS_NORMAL = "normal"
VIS_GRAYED = "grayed"
VIS_HIDDEN = "hidden"

VIEW_KINDS = ("spc2d", "spc3d", "stc", "glcl", "glc3sl")
F_VIEWS = ("spc3d", "glcl", "glc3sl")

_VIEW_TO_KIND = {
    "spc2d": KIND_SPC2D,
    "spc3d": KIND_SPC3D,
    "stc": KIND_STC,
    "glcl": KIND_GLCL,
    "glc3sl": KIND_GLC3SL,
}

# Classes are assigned colors in label order from this documented cycle; for
# the usual three-class iris ordering that yields red, green, blue.
PALETTE_CYCLE = (
    "#e6194b",  # red
    "#3cb44b",  # green
    "#4363d8",  # blue
    "#f58231",  # orange
    "#911eb4",  # purple
    "#46f0f0",  # cyan
    "#f032e6",  # magenta
    "#9a9a9a",  # gray
)

DEFAULT_TOGGLES = {
    "threshold-plane": True,
    "interval-planes": True,
    "contribution-dots": True,
    "grayed-cases": True,
    "glcl-overlay": False,
}

Point3 = tuple[float, float, float]
Quad = tuple[Point3, Point3, Point3, Point3]


@dataclass(frozen=True)
class SceneGlyph:
    glyph: Glyph
    visibility: str


@dataclass(frozen=True)
class Overlay:
    kind: str  # threshold-plane | regression-plane | rule-rectangle | interval-plane-pair
    quads: tuple[Quad, ...]
    color_role: str
    interactive: bool


@dataclass(frozen=True)
class CameraPreset:
    name: str
    position: Point3
    look_at: Point3
    up: Point3
    projection: str  # perspective | orthographic


@dataclass(frozen=True)
class Scene:
    view: str
    glyphs: tuple[SceneGlyph, ...]
    overlays: tuple[Overlay, ...]
    cameras: tuple[CameraPreset, ...]
    palette: tuple[tuple[str, str], ...]
    layout: LayoutConfig
    toggles: tuple[tuple[str, bool], ...]
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        palette = dict(self.palette)
        for entry in self.glyphs:
            if entry.glyph.class_label not in palette:
                raise ValidationError(
                    f"glyph class {entry.glyph.class_label!r} missing from palette"
                )
            if entry.visibility not in (VIS_NORMAL, VIS_GRAYED, VIS_HIDDEN):
                raise ValidationError(f"unknown visibility {entry.visibility!r}")
            if entry.visibility == VIS_GRAYED and (
                entry.glyph.nodes or entry.glyph.extra_polylines
            ):
                raise ValidationError(
                    f"grayed glyph {entry.glyph.case_id} still carries segments"
                )


# ---------------------------------------------------------------------------
# Camera presets: fixed constants, documented in FORMAT.md.

_LOOK_AT = (1.125, 0.5, 0.5)


def _orthonormal_up(position: Point3, look_at: Point3, up: Point3) -> Point3:
    d = tuple(l - p for l, p in zip(look_at, position))
    dn = math.sqrt(sum(c * c for c in d))
    d = tuple(c / dn for c in d)
    dot = sum(u * c for u, c in zip(up, d))
    proj = tuple(u - dot * c for u, c in zip(up, d))
    norm = math.sqrt(sum(c * c for c in proj))
    if norm == 0.0:
        raise ValidationError("camera up vector is parallel to the view direction")
    return tuple(c / norm for c in proj)


def _preset(name, position, look_at, up, projection) -> CameraPreset:
    return CameraPreset(
        name=name,
        position=position,
        look_at=look_at,
        up=_orthonormal_up(position, look_at, up),
        projection=projection,
    )


_PRESETS = {
    p.name: p
    for p in (
        _preset("front", (1.125, 4.0, 0.5), _LOOK_AT, (0.0, 0.0, 1.0), "perspective"),
        _preset("top", (1.125, 0.5, 4.0), _LOOK_AT, (0.0, 1.0, 0.0), "orthographic"),
        _preset("ortho-left", (-2.375, 0.5, 0.5), _LOOK_AT, (0.0, 0.0, 1.0), "orthographic"),
        _preset("low-front", (1.125, 4.0, -0.75), _LOOK_AT, (0.0, 0.0, 1.0), "perspective"),
        _preset("middle-front", (1.125, 4.0, 0.0), _LOOK_AT, (0.0, 0.0, 1.0), "perspective"),
        _preset("center", (1.125, 4.0, 1.5), _LOOK_AT, (0.0, 0.0, 1.0), "perspective"),
    )
}

_PRESET_ORDER = ("front", "top", "ortho-left", "low-front", "middle-front", "center")


def camera_preset_names() -> tuple[str, ...]:
    return _PRESET_ORDER


def camera_preset(name: str) -> CameraPreset:
    """Look up a named preset; unknown names list the valid ones."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown camera preset {name!r}; valid presets: {', '.join(_PRESET_ORDER)}"
        ) from None


def class_palette(class_labels) -> tuple[tuple[str, str], ...]:
    """Colors assigned by label order, stored sorted by label for canonicality."""
    assigned = [
        (label, PALETTE_CYCLE[i % len(PALETTE_CYCLE)])
        for i, label in enumerate(class_labels)
    ]
    return tuple(sorted(assigned))


# ---------------------------------------------------------------------------
# Scene assembly


def _strip_segments(glyph: Glyph) -> Glyph:
    """Drop connecting segments, preserving every vertex as an origin marker."""
    markers = list(glyph.markers)
    for polyline in (glyph.nodes,) + glyph.extra_polylines:
        markers.extend(Marker(p, MARKER_ORIGIN) for p in polyline)
    return Glyph(
        case_id=glyph.case_id,
        kind=glyph.kind,
        nodes=(),
        class_label=glyph.class_label,
        source_dim=glyph.source_dim,
        markers=tuple(markers),
        extra_polylines=(),
    )


def _geometry_bbox(glyphs) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for g in glyphs:
        for polyline in (g.nodes,) + g.extra_polylines:
            for px, py, _ in polyline:
                xs.append(px)
                ys.append(py)
        for m in g.markers:
            xs.append(m.point[0])
            ys.append(m.point[1])
    if not xs:
        return 0.0, 1.0, 0.0, 1.0
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad_x = 0.05 * (x1 - x0) or 0.05
    pad_y = 0.05 * (y1 - y0) or 0.05
    return x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y


def _horizontal_quad(x0, x1, y0, y1, z) -> Quad:
    return ((x0, y0, z), (x1, y0, z), (x1, y1, z), (x0, y1, z))


def _rule_quads(rule, n: int, cfg: LayoutConfig) -> list[Quad]:
    """Rectangle footprints at Z = 0, one quad per selected pair."""
    boxes: list[tuple[int, tuple]] = []
    if isinstance(rule, RectangleRule):
        boxes = list(rule.rectangles)
    elif isinstance(rule, Hyperblock):
        for k in range(min(rule.dimension, n) // 2):
            boxes.append((k, (rule.bounds[2 * k], rule.bounds[2 * k + 1])))
    quads = []
    s = cfg.cube_size
    for pair, ((xlo, xhi), (ylo, yhi)) in boxes:
        off = cfg.cube_origin(pair)
        quads.append((
            (off + xlo * s, ylo * s, 0.0),
            (off + xhi * s, ylo * s, 0.0),
            (off + xhi * s, yhi * s, 0.0),
            (off + xlo * s, yhi * s, 0.0),
        ))
    return quads


def _rule_hyperblock(rule, n: int) -> Hyperblock:
    if isinstance(rule, RectangleRule):
        return rule.to_hyperblock(n)
    if isinstance(rule, Hyperblock):
        return rule
    raise ContractError(f"unsupported rule type {type(rule).__name__}")


def build_scene(dataset: Dataset, view: str, *, model: LinearModel | None = None,
                rules=(), cfg: LayoutConfig | None = None,
                regression_reference=None) -> Scene:
    """Assemble the glyphs, visibility, overlays, cameras, and palette.

    Rule-covered cases stay normal; everything else is grayed (segments
    removed, vertices kept as markers). With no rules, nothing is grayed.
    A model is required for the f-dependent views.
    """
    cfg = cfg or LayoutConfig()
    if view not in VIEW_KINDS:
        raise ConfigError(f"unknown view {view!r}; valid views: {', '.join(VIEW_KINDS)}")
    if view in F_VIEWS and model is None:
        raise ConfigError(f"view {view!r} requires a linear model")

    glyphs: list[SceneGlyph] = []
    rule_blocks = [_rule_hyperblock(rule, dataset.dimension) for rule in rules]
    for case in dataset.cases:
        if view == "spc2d":
            glyph = map_spc2d(case, cfg)
        elif view == "spc3d":
            glyph = map_spc3d(case, model, cfg)
        elif view == "stc":
            glyph = map_stc(case, cfg)
        elif view == "glcl":
            glyph = map_glcl(case, model, (0.0, 0.0, 0.0), cfg)
        else:
            glyph = map_glc3sl(case, model, cfg)
        if rule_blocks:
            covered = any(hyperblock_contains(hb, case) for hb in rule_blocks)
        else:
            covered = True
        if covered:
            glyphs.append(SceneGlyph(glyph=glyph, visibility=VIS_NORMAL))
        else:
            glyphs.append(SceneGlyph(glyph=_strip_segments(glyph), visibility=VIS_GRAYED))

    overlays: list[Overlay] = []
    x0, x1, y0, y1 = _geometry_bbox([entry.glyph for entry in glyphs])
    if model is not None and model.threshold is not None and view in F_VIEWS:
        overlays.append(Overlay(
            kind="threshold-plane",
            quads=(_horizontal_quad(x0, x1, y0, y1, model.threshold),),
            color_role="threshold",
            interactive=True,
        ))
    if view in ("spc2d", "spc3d", "glc3sl"):
        for rule in rules:
            quads = _rule_quads(rule, dataset.dimension, cfg)
            if quads:
                overlays.append(Overlay(
                    kind="rule-rectangle",
                    quads=tuple(quads),
                    color_role="rule",
                    interactive=True,
                ))
    if model is not None and view in F_VIEWS:
        for rule in rules:
            if isinstance(rule, Hyperblock):
                f1, f2 = regression_interval(rule, model)
                overlays.append(Overlay(
                    kind="interval-plane-pair",
                    quads=(
                        _horizontal_quad(x0, x1, y0, y1, f1),
                        _horizontal_quad(x0, x1, y0, y1, f2),
                    ),
                    color_role="interval",
                    interactive=False,
                ))
    if regression_reference is not None and model is not None and view == "spc3d":
        overlays.extend(_regression_overlays(model, regression_reference, cfg))

    return Scene(
        view=view,
        glyphs=tuple(glyphs),
        overlays=tuple(overlays),
        cameras=tuple(_PRESETS[name] for name in _PRESET_ORDER),
        palette=class_palette(dataset.class_labels),
        layout=cfg,
        toggles=tuple(sorted(DEFAULT_TOGGLES.items())),
    )


def _regression_overlays(model: LinearModel, reference, cfg: LayoutConfig):
    """One tilted quad per cube: the graph of f over that cube's pair."""
    s = cfg.cube_size
    overlays = []
    for k in range(model.dimension // 2):
        plane = build_regression_plane(model, reference, k)
        c00, c01, c10, c11 = plane.corner_values
        off = cfg.cube_origin(k)
        quad = (
            (off, 0.0, c00),
            (off + s, 0.0, c10),
            (off + s, s, c11),
            (off, s, c01),
        )
        overlays.append(Overlay(kind="regression-plane", quads=(quad,),
                                color_role="regression", interactive=False))
    return overlays


# ---------------------------------------------------------------------------
# Canonical serialization


def _glyph_obj(entry: SceneGlyph) -> dict:
    g = entry.glyph
    return {
        "case_id": g.case_id,
        "class_label": g.class_label,
        "extra_polylines": [[list(p) for p in line] for line in g.extra_polylines],
        "kind": g.kind,
        "markers": [{"point": list(m.point), "role": m.role} for m in g.markers],
        "nodes": [list(p) for p in g.nodes],
        "source_dim": g.source_dim,
        "visibility": entry.visibility,
    }


def serialize(scene: Scene) -> bytes:
    """Canonical bytes of the scene; identical scenes serialize identically."""
    obj = {
        "format_version": scene.format_version,
        "view": scene.view,
        "glyphs": [_glyph_obj(entry) for entry in scene.glyphs],
        "overlays": [
            {
                "color_role": o.color_role,
                "interactive": o.interactive,
                "kind": o.kind,
                "quads": [[list(p) for p in quad] for quad in o.quads],
            }
            for o in scene.overlays
        ],
        "cameras": [
            {
                "look_at": list(c.look_at),
                "name": c.name,
                "position": list(c.position),
                "projection": c.projection,
                "up": list(c.up),
            }
            for c in scene.cameras
        ],
        "palette": dict(scene.palette),
        "layout": {
            "cube_size": scene.layout.cube_size,
            "cube_spacing": scene.layout.cube_spacing,
            "glcl_placement": scene.layout.glcl_placement,
            "random_seed": scene.layout.random_seed,
        },
        "toggles": dict(scene.toggles),
    }
    return dumps_canonical_bytes(obj)


def _point(obj) -> Point3:
    if not isinstance(obj, list) or len(obj) != 3:
        raise ValidationError(f"expected a 3-D point, got {obj!r}")
    return (float(obj[0]), float(obj[1]), float(obj[2]))


def deserialize(data: bytes) -> Scene:
    """Parse canonical scene bytes back into a structurally equal Scene."""
    obj = loads_canonical(data)
    if not isinstance(obj, dict):
        raise ValidationError("scene document must be an object")
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise ValidationError(
            f"unsupported scene format version {version!r}; supported: {FORMAT_VERSION}"
        )
    try:
        glyphs = tuple(
            SceneGlyph(
                glyph=Glyph(
                    case_id=int(g["case_id"]),
                    kind=g["kind"],
                    nodes=tuple(_point(p) for p in g["nodes"]),
                    class_label=g["class_label"],
                    source_dim=int(g["source_dim"]),
                    markers=tuple(
                        Marker(point=_point(m["point"]), role=m["role"])
                        for m in g["markers"]
                    ),
                    extra_polylines=tuple(
                        tuple(_point(p) for p in line) for line in g["extra_polylines"]
                    ),
                ),
                visibility=g["visibility"],
            )
            for g in obj["glyphs"]
        )
        overlays = tuple(
            Overlay(
                kind=o["kind"],
                quads=tuple(
                    tuple(_point(p) for p in quad) for quad in o["quads"]
                ),
                color_role=o["color_role"],
                interactive=bool(o["interactive"]),
            )
            for o in obj["overlays"]
        )
        cameras = tuple(
            CameraPreset(
                name=c["name"],
                position=_point(c["position"]),
                look_at=_point(c["look_at"]),
                up=_point(c["up"]),
                projection=c["projection"],
            )
            for c in obj["cameras"]
        )
        layout_obj = obj["layout"]
        layout = LayoutConfig(
            cube_size=float(layout_obj["cube_size"]),
            cube_spacing=(None if layout_obj["cube_spacing"] is None
                          else float(layout_obj["cube_spacing"])),
            glcl_placement=layout_obj["glcl_placement"],
            random_seed=int(layout_obj["random_seed"]),
        )
        scene = Scene(
            view=obj["view"],
            glyphs=glyphs,
            overlays=overlays,
            cameras=cameras,
            palette=tuple(sorted(obj["palette"].items())),
            layout=layout,
            toggles=tuple(sorted(obj["toggles"].items())),
            format_version=int(version),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed scene document: {exc!r}") from exc
    return scene
