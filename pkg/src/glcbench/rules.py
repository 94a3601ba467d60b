"""Interpretable rules and their quality statistics.

Two antecedent shapes: an axis-aligned box over all attributes (hyperblock)
and a conjunction of per-pair rectangles, which is the same thing with the
unselected attributes left at [0, 1]. Discriminant rules threshold a linear
function. Regression support bounds f over a hyperblock, builds per-cube
planes from corner evaluations, and compares plane predictions to observed
targets.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from pathlib import Path

from .dataset import CaseRecord, Dataset
from .errors import ConfigError, ContractError, ValidationError
from .formats import FORMAT_VERSION, dumps_canonical, loads_canonical
from .linear_model import LinearModel, classify, evaluate

__all__ = [
    "Hyperblock",
    "RectangleRule",
    "RuleStats",
    "RegressionPlane",
    "PlaneResiduals",
    "Residual",
    "ClampWarning",
    "hyperblock_contains",
    "evaluate_rectangle_rule",
    "apply_discrimination_rule",
    "evaluate_selection",
    "refine_rule",
    "regression_interval",
    "build_regression_plane",
    "probe",
    "residuals_on_plane",
    "rule_to_obj",
    "rule_from_obj",
    "rule_document_from_obj",
    "write_rule",
    "read_rule",
    "read_rule_document",
]

Interval = tuple[float, float]
Box2 = tuple[Interval, Interval]


class ClampWarning(UserWarning):
    """A probe perturbation left [0, 1] and was clamped to the boundary."""


def _check_interval(lo: float, hi: float, what: str) -> None:
    if lo > hi:
        raise ValidationError(f"{what}: lower bound {lo!r} exceeds upper bound {hi!r}")
    if lo < 0.0 or hi > 1.0:
        raise ValidationError(f"{what}: interval [{lo!r}, {hi!r}] outside [0, 1]")


@dataclass(frozen=True)
class Hyperblock:
    """Closed per-attribute intervals; membership is a conjunction of bounds."""

    bounds: tuple[Interval, ...]

    def __post_init__(self):
        for i, (lo, hi) in enumerate(self.bounds):
            _check_interval(lo, hi, f"attribute {i}")

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @classmethod
    def full(cls, n: int) -> "Hyperblock":
        return cls(bounds=((0.0, 1.0),) * n)

    @classmethod
    def from_center(cls, center, below, above) -> "Hyperblock":
        """Box around a point from per-side half-extents, clamped to [0, 1]."""
        bounds = tuple(
            (max(0.0, c - lo), min(1.0, c + hi))
            for c, lo, hi in zip(center, below, above)
        )
        return cls(bounds=bounds)


@dataclass(frozen=True)
class RectangleRule:
    """Conjunction of 2-D boxes over selected coordinate pairs."""

    rectangles: tuple[tuple[int, Box2], ...]
    predicted_class: str

    def __post_init__(self):
        seen = set()
        for pair, ((xlo, xhi), (ylo, yhi)) in self.rectangles:
            if pair in seen:
                raise ValidationError(f"pair index {pair} appears more than once")
            seen.add(pair)
            _check_interval(xlo, xhi, f"pair {pair} first axis")
            _check_interval(ylo, yhi, f"pair {pair} second axis")

    def to_hyperblock(self, n: int) -> Hyperblock:
        """Equivalent full-dimensional box; unselected attributes span [0, 1]."""
        bounds = [(0.0, 1.0)] * n
        for pair, (bx, by) in self.rectangles:
            if 2 * pair + 1 >= n:
                raise ContractError(f"pair index {pair} out of range for {n} attributes")
            bounds[2 * pair] = bx
            bounds[2 * pair + 1] = by
        return Hyperblock(bounds=tuple(bounds))


@dataclass(frozen=True)
class RuleStats:
    """Coverage and per-class confusion counts of a rule against a dataset.

    ``purity`` is the covered fraction belonging to the predicted class and
    reads 0 with ``empty`` set when nothing is covered. ``accuracy`` is only
    present for threshold discriminants (one-vs-rest over the full dataset).
    """

    covered: int
    class_counts: tuple[tuple[str, int], ...]
    purity: float
    empty: bool
    predicted_class: str | None = None
    accuracy: float | None = None

    def as_obj(self) -> dict:
        return {
            "covered": self.covered,
            "class_counts": {label: count for label, count in self.class_counts},
            "purity": self.purity,
            "empty": self.empty,
            "predicted_class": self.predicted_class,
            "accuracy": self.accuracy,
        }


def hyperblock_contains(hb: Hyperblock, x) -> bool:
    """Closed-interval membership: lo_i <= x_i <= hi_i for every attribute."""
    values = x.values if isinstance(x, CaseRecord) else tuple(x)
    if len(values) != hb.dimension:
        raise ContractError(
            f"case has {len(values)} attributes, hyperblock has {hb.dimension}"
        )
    return all(lo <= v <= hi for v, (lo, hi) in zip(values, hb.bounds))


def _coverage_stats(dataset: Dataset, covered_cases, predicted_class: str | None,
                    accuracy: float | None = None) -> RuleStats:
    counts = {label: 0 for label in dataset.class_labels}
    total = 0
    for case in covered_cases:
        counts[case.class_label] += 1
        total += 1
    if total == 0:
        purity, empty = 0.0, True
    else:
        empty = False
        purity = counts.get(predicted_class, 0) / total if predicted_class else 0.0
    return RuleStats(
        covered=total,
        class_counts=tuple(counts.items()),
        purity=purity,
        empty=empty,
        predicted_class=predicted_class,
        accuracy=accuracy,
    )


def evaluate_rectangle_rule(rule: RectangleRule | Hyperblock, dataset: Dataset,
                            predicted_class: str | None = None) -> RuleStats:
    """Coverage statistics of a rectangle conjunction (or hyperblock)."""
    if isinstance(rule, RectangleRule):
        hb = rule.to_hyperblock(dataset.dimension)
        predicted_class = rule.predicted_class
    else:
        hb = rule
    covered = [c for c in dataset.cases if hyperblock_contains(hb, c)]
    return _coverage_stats(dataset, covered, predicted_class)


def apply_discrimination_rule(model: LinearModel, dataset: Dataset,
                              positive_class: str) -> RuleStats:
    """Threshold decisions over the dataset, scored one-vs-rest.

    Coverage is the predicted-positive set; accuracy counts both sides of the
    partition, so the counts always total the dataset size.
    """
    if model.threshold is None:
        raise ContractError("model has no threshold set")
    covered = []
    correct = 0
    for case in dataset.cases:
        decision = classify(model, case)
        if decision:
            covered.append(case)
        if decision == (case.class_label == positive_class):
            correct += 1
    return _coverage_stats(dataset, covered, positive_class,
                           accuracy=correct / len(dataset.cases))


def evaluate_selection(dataset: Dataset, *, model: LinearModel | None = None,
                       rules=()) -> RuleStats:
    """Stats of the combined selection: threshold decision AND rectangle cover.

    With only rules, this is plain rectangle coverage (a case counts when any
    rule covers it); with only a thresholded model, it is the discrimination
    rule. With both, a case must pass the threshold and lie in a rule, which
    is the interactive narrowing loop. Accuracy is reported whenever the
    model knows its positive class.
    """
    use_model = model is not None and model.threshold is not None
    if not use_model and not rules:
        raise ConfigError("nothing to evaluate: need rules or a thresholded model")
    blocks = []
    predicted = None
    for rule in rules:
        if isinstance(rule, RectangleRule):
            blocks.append(rule.to_hyperblock(dataset.dimension))
            if predicted is None:
                predicted = rule.predicted_class
        elif isinstance(rule, Hyperblock):
            blocks.append(rule)
        else:
            raise ContractError(f"unsupported rule type {type(rule).__name__}")
    if predicted is None and model is not None:
        predicted = model.positive_class

    accuracy = None
    if use_model and model.positive_class is not None:
        accuracy = apply_discrimination_rule(
            model, dataset, model.positive_class
        ).accuracy

    covered = []
    for case in dataset.cases:
        if use_model and not classify(model, case):
            continue
        if blocks and not any(hyperblock_contains(hb, case) for hb in blocks):
            continue
        covered.append(case)
    return _coverage_stats(dataset, covered, predicted, accuracy=accuracy)


def refine_rule(rule, pair_index: int, new_box: Box2):
    """Replace (or add) the box at ``pair_index``; returns a new rule.

    Shrinking a box can only shrink coverage, which is what makes interactive
    narrowing monotone.
    """
    (xlo, xhi), (ylo, yhi) = new_box
    _check_interval(xlo, xhi, f"pair {pair_index} first axis")
    _check_interval(ylo, yhi, f"pair {pair_index} second axis")
    if isinstance(rule, RectangleRule):
        rects = [(p, b) for p, b in rule.rectangles if p != pair_index]
        rects.append((pair_index, new_box))
        rects.sort(key=lambda item: item[0])
        return replace(rule, rectangles=tuple(rects))
    if isinstance(rule, Hyperblock):
        if 2 * pair_index + 1 >= rule.dimension:
            raise ContractError(
                f"pair index {pair_index} out of range for {rule.dimension} attributes"
            )
        bounds = list(rule.bounds)
        bounds[2 * pair_index] = (xlo, xhi)
        bounds[2 * pair_index + 1] = (ylo, yhi)
        return Hyperblock(bounds=tuple(bounds))
    raise ContractError(f"cannot refine object of type {type(rule).__name__}")


def regression_interval(hb: Hyperblock, model: LinearModel) -> tuple[float, float]:
    """Exact range [f1, f2] of the linear function over the box.

    A linear function attains its extrema at box corners: the minimum takes
    the lower bound where the coefficient is nonnegative and the upper bound
    where it is negative, and the maximum mirrors that.
    """
    if hb.dimension != model.dimension:
        raise ContractError(
            f"hyperblock has {hb.dimension} attributes, model expects {model.dimension}"
        )
    f1 = 0.0
    f2 = 0.0
    for a, (lo, hi) in zip(model.normalized_coefficients, hb.bounds):
        if a >= 0:
            f1 += a * lo
            f2 += a * hi
        else:
            f1 += a * hi
            f2 += a * lo
    return f1, f2


@dataclass(frozen=True)
class RegressionPlane:
    """Graph of f over one cube's pair with all other attributes held fixed.

    ``corner_values`` holds f at pair coordinates (0,0), (0,1), (1,0), (1,1);
    bilinear interpolation of those corners reproduces f exactly because f is
    linear in the varied pair.
    """

    cube_index: int
    corner_values: tuple[float, float, float, float]
    fixed_point: CaseRecord

    def value_at(self, u: float, v: float) -> float:
        """Bilinear interpolation at pair coordinates (u, v)."""
        c00, c01, c10, c11 = self.corner_values
        return ((1 - u) * (1 - v) * c00 + (1 - u) * v * c01
                + u * (1 - v) * c10 + u * v * c11)


def _substitute_pair(values: tuple[float, ...], cube_index: int,
                     u: float, v: float) -> tuple[float, ...]:
    out = list(values)
    out[2 * cube_index] = u
    out[2 * cube_index + 1] = v
    return tuple(out)


def _check_cube(model: LinearModel, x, cube_index: int) -> tuple[float, ...]:
    values = x.values if isinstance(x, CaseRecord) else tuple(x)
    if len(values) != model.dimension:
        raise ContractError(
            f"case has {len(values)} attributes, model expects {model.dimension}"
        )
    if len(values) % 2 != 0:
        raise ContractError(f"pair cubes need an even dimension, got {len(values)}")
    if not 0 <= cube_index < len(values) // 2:
        raise ContractError(
            f"cube index {cube_index} out of range [0, {len(values) // 2})"
        )
    return values


def build_regression_plane(model: LinearModel, x: CaseRecord,
                           cube_index: int) -> RegressionPlane:
    """Evaluate f at the cube's four pair corners with the rest of x fixed."""
    values = _check_cube(model, x, cube_index)
    corners = tuple(
        evaluate(model, _substitute_pair(values, cube_index, u, v))
        for u, v in ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0))
    )
    return RegressionPlane(cube_index=cube_index, corner_values=corners, fixed_point=x)


def probe(model: LinearModel, x, cube_index: int,
          deltas: tuple[float, float]) -> float:
    """f with only the cube's pair perturbed by ``deltas``; the rest is fixed.

    Perturbed coordinates falling outside [0, 1] are clamped, with a
    ClampWarning raised so callers can surface the adjustment.
    """
    values = _check_cube(model, x, cube_index)
    u = values[2 * cube_index] + deltas[0]
    v = values[2 * cube_index + 1] + deltas[1]
    cu = min(1.0, max(0.0, u))
    cv = min(1.0, max(0.0, v))
    if cu != u or cv != v:
        warnings.warn(
            f"probe ({u!r}, {v!r}) clamped to ({cu!r}, {cv!r})", ClampWarning,
            stacklevel=2,
        )
    return evaluate(model, _substitute_pair(values, cube_index, cu, cv))


Residual = tuple[int, float, float, float]  # case id, predicted, actual, residual


@dataclass(frozen=True)
class PlaneResiduals:
    records: tuple[Residual, ...]
    excluded_ids: tuple[int, ...]


def residuals_on_plane(model: LinearModel, dataset: Dataset, cube_index: int,
                       reference: CaseRecord, *,
                       tolerance: float = 1e-6) -> PlaneResiduals:
    """Signed residuals y - plane(u, v) for cases sharing the fixed attributes.

    Requires a numeric target column. Cases whose non-pair attributes differ
    from the reference by more than ``tolerance`` are excluded and reported.
    """
    targets = dataset.numeric_targets()
    plane = build_regression_plane(model, reference, cube_index)
    fixed_idx = [
        i for i in range(model.dimension)
        if i not in (2 * cube_index, 2 * cube_index + 1)
    ]
    records = []
    excluded = []
    for case, y in zip(dataset.cases, targets):
        if len(case.values) != model.dimension:
            raise ContractError(
                f"case {case.id} has {len(case.values)} attributes, model expects "
                f"{model.dimension}"
            )
        if any(abs(case.values[i] - reference.values[i]) > tolerance for i in fixed_idx):
            excluded.append(case.id)
            continue
        predicted = plane.value_at(case.values[2 * cube_index],
                                   case.values[2 * cube_index + 1])
        records.append((case.id, predicted, y, y - predicted))
    return PlaneResiduals(records=tuple(records), excluded_ids=tuple(excluded))


# ---------------------------------------------------------------------------
# Structured-text rule documents


def rule_to_obj(rule, model_ref: str | None = None) -> dict:
    if isinstance(rule, RectangleRule):
        obj = {
            "format_version": FORMAT_VERSION,
            "kind": "rectangle-rule",
            "predicted_class": rule.predicted_class,
            "rectangles": [
                {"pair": pair, "x": list(bx), "y": list(by)}
                for pair, (bx, by) in rule.rectangles
            ],
        }
    elif isinstance(rule, Hyperblock):
        obj = {
            "format_version": FORMAT_VERSION,
            "kind": "hyperblock",
            "bounds": [list(b) for b in rule.bounds],
        }
    else:
        raise ContractError(f"cannot serialize rule of type {type(rule).__name__}")
    if model_ref is not None:
        obj["model_ref"] = model_ref
    return obj


def rule_document_from_obj(obj) -> tuple:
    """Parse a rule document; returns (rule, model reference or None)."""
    if not isinstance(obj, dict):
        raise ValidationError("rule document must be an object")
    model_ref = obj.get("model_ref")
    if model_ref is not None and not isinstance(model_ref, str):
        raise ValidationError("model_ref must be a string path")
    return rule_from_obj(obj), model_ref


def rule_from_obj(obj):
    if not isinstance(obj, dict):
        raise ValidationError("rule document must be an object")
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise ValidationError(
            f"unsupported rule format version {version!r}; supported: {FORMAT_VERSION}"
        )
    kind = obj.get("kind")
    if kind == "rectangle-rule":
        rects = []
        for entry in obj.get("rectangles", []):
            try:
                pair = int(entry["pair"])
                bx = (float(entry["x"][0]), float(entry["x"][1]))
                by = (float(entry["y"][0]), float(entry["y"][1]))
            except (KeyError, TypeError, IndexError, ValueError) as exc:
                raise ValidationError(f"malformed rectangle entry {entry!r}") from exc
            rects.append((pair, (bx, by)))
        predicted = obj.get("predicted_class")
        if not isinstance(predicted, str):
            raise ValidationError("rectangle-rule requires a predicted_class string")
        return RectangleRule(rectangles=tuple(rects), predicted_class=predicted)
    if kind == "hyperblock":
        try:
            bounds = tuple((float(lo), float(hi)) for lo, hi in obj["bounds"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("malformed hyperblock bounds") from exc
        return Hyperblock(bounds=bounds)
    raise ValidationError(f"unknown rule kind {kind!r}")


def write_rule(rule, path, model_ref: str | None = None) -> None:
    Path(path).write_text(dumps_canonical(rule_to_obj(rule, model_ref)) + "\n",
                          encoding="utf-8")


def read_rule(path):
    rule, _ = read_rule_document(path)
    return rule


def read_rule_document(path) -> tuple:
    """Read (rule, model reference or None) from a rule document file."""
    return rule_document_from_obj(
        loads_canonical(Path(path).read_text(encoding="utf-8"))
    )
