"""Linear discriminant models over unit-interval attributes.

A model holds raw coefficients c_i, their normalized form a_i = c_i / c_max
with c_max = max_i |c_i|, the segment angles Q_i = arccos(a_i) used by the
line-coordinate layouts, and an optional decision threshold T applied as
``f(x) >= T -> class 1``. Normalization keeps every a_i inside [-1, 1] so the
arccos domain is always valid, and rescaling the threshold by 1 / c_max
preserves every classification decision of the raw model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .dataset import CaseRecord, Dataset
from .errors import ContractError, ValidationError
from .formats import FORMAT_VERSION, format_float

__all__ = [
    "LinearModel",
    "normalize_coefficients",
    "model_from_normalized",
    "angles_from_coefficients",
    "evaluate",
    "contribution",
    "classify",
    "scaled_threshold",
    "search_discriminant",
    "SearchParams",
    "model_to_text",
    "model_from_text",
    "write_model",
    "read_model",
]

MODEL_HEADER = "glcbench-model"


@dataclass(frozen=True)
class LinearModel:
    raw_coefficients: tuple[float, ...]
    normalized_coefficients: tuple[float, ...]
    angles: tuple[float, ...]
    scale: float
    threshold: float | None = None
    positive_class: str | None = None

    @property
    def dimension(self) -> int:
        return len(self.normalized_coefficients)

    def with_threshold(self, threshold: float) -> "LinearModel":
        return replace(self, threshold=threshold)


def angles_from_coefficients(a: Sequence[float]) -> tuple[float, ...]:
    """Q_i = arccos(a_i) in [0, pi]; requires every |a_i| <= 1."""
    for i, v in enumerate(a):
        if abs(v) > 1.0:
            raise ValidationError(f"coefficient {i} is {v!r}, outside [-1, 1]")
    return tuple(math.acos(v) for v in a)


def normalize_coefficients(raw: Sequence[float], *, threshold: float | None = None,
                           positive_class: str | None = None) -> LinearModel:
    """Build a model from raw coefficients: a_i = c_i / max_j |c_j|.

    ``threshold``, when given, is already in normalized-function units (use
    :func:`scaled_threshold` to convert a raw-units threshold).
    """
    raw = tuple(float(c) for c in raw)
    if not raw:
        raise ValidationError("coefficient vector is empty")
    c_max = max(abs(c) for c in raw)
    if c_max == 0.0:
        raise ValidationError("all-zero coefficient vector: scale is undefined")
    normalized = tuple(c / c_max for c in raw)
    return LinearModel(
        raw_coefficients=raw,
        normalized_coefficients=normalized,
        angles=angles_from_coefficients(normalized),
        scale=c_max,
        threshold=threshold,
        positive_class=positive_class,
    )


def model_from_normalized(a: Sequence[float], *, threshold: float | None = None,
                          positive_class: str | None = None) -> LinearModel:
    """Build a model directly from coefficients already inside [-1, 1].

    Unlike :func:`normalize_coefficients` this does not force max |a_i| = 1;
    it serves worked examples and degenerate models (including all-zero).
    """
    a = tuple(float(v) for v in a)
    return LinearModel(
        raw_coefficients=a,
        normalized_coefficients=a,
        angles=angles_from_coefficients(a),
        scale=1.0,
        threshold=threshold,
        positive_class=positive_class,
    )


def _values(x) -> tuple[float, ...]:
    if isinstance(x, CaseRecord):
        return x.values
    return tuple(x)


def evaluate(model: LinearModel, x) -> float:
    """f(x) = sum_i a_i * x_i over the normalized coefficients."""
    values = _values(x)
    if len(values) != model.dimension:
        raise ContractError(
            f"case has {len(values)} attributes, model expects {model.dimension}"
        )
    return sum(a * v for a, v in zip(model.normalized_coefficients, values))


def contribution(model: LinearModel, x, pair_index: int) -> float:
    """Partial sum of f over coordinate pair ``pair_index`` (0-based)."""
    values = _values(x)
    if len(values) != model.dimension:
        raise ContractError(
            f"case has {len(values)} attributes, model expects {model.dimension}"
        )
    n = model.dimension
    if n % 2 != 0:
        raise ContractError(f"pair contributions need an even dimension, got {n}")
    if not 0 <= pair_index < n // 2:
        raise ContractError(f"pair index {pair_index} out of range [0, {n // 2})")
    a = model.normalized_coefficients
    i = 2 * pair_index
    return a[i] * values[i] + a[i + 1] * values[i + 1]


def classify(model: LinearModel, x) -> bool:
    """True for class 1 (f(x) >= T, ties included), False for class 2."""
    if model.threshold is None:
        raise ContractError("model has no threshold set")
    return evaluate(model, x) >= model.threshold


def scaled_threshold(model: LinearModel, raw_threshold: float) -> float:
    """Convert a raw-units threshold: decisions of (F, T) equal (f, T / c_max)."""
    return raw_threshold / model.scale


# ---------------------------------------------------------------------------
# Discriminant search


@dataclass(frozen=True)
class SearchParams:
    """Coordinate-descent schedule. Steps halve from 0.5 down to 2**-10."""

    steps: tuple[float, ...] = tuple(0.5 ** k for k in range(1, 11))
    max_sweeps: int = 200
    restarts: int = 2
    seed: int = 0


def _best_threshold(f: np.ndarray, positive: np.ndarray) -> tuple[float, int]:
    """Sweep sorted f values for the threshold maximizing one-vs-rest accuracy.

    Candidates are the minimum f, the midpoints between consecutive distinct
    values, and one value above the maximum; ties resolve to the lowest T.
    """
    order = np.argsort(f, kind="stable")
    fs = f[order]
    ps = positive[order]
    m = len(fs)
    total_pos = int(ps.sum())
    # pos_before[b] / neg_before[b]: counts among the b smallest f values.
    pos_before = np.concatenate(([0], np.cumsum(ps)))
    neg_before = np.concatenate(([0], np.cumsum(~ps)))

    boundaries = [0]
    boundaries.extend(i for i in range(1, m) if fs[i] != fs[i - 1])
    boundaries.append(m)

    best_t = float(fs[0])
    best_correct = -1
    for b in boundaries:
        correct = (total_pos - int(pos_before[b])) + int(neg_before[b])
        if correct > best_correct:
            best_correct = correct
            if b == 0:
                best_t = float(fs[0])
            elif b == m:
                best_t = float(fs[-1]) + 1.0
            else:
                best_t = float((fs[b - 1] + fs[b]) / 2.0)
    return best_t, best_correct


def _score(a: np.ndarray, X: np.ndarray, positive: np.ndarray):
    f = X @ a
    t, correct = _best_threshold(f, positive)
    # Secondary objective: how close the classes are to threshold-separable.
    separation = float(f[positive].min() - f[~positive].max()) if (~positive).any() else 0.0
    return correct, separation, t


def _descend(a0: np.ndarray, X: np.ndarray, positive: np.ndarray,
             params: SearchParams):
    a = a0.copy()
    best_correct, best_sep, best_t = _score(a, X, positive)
    for step in params.steps:
        for _ in range(params.max_sweeps):
            improved = False
            for i in range(len(a)):
                for delta in (step, -step):
                    candidate = min(1.0, max(-1.0, a[i] + delta))
                    if candidate == a[i]:
                        continue
                    old = a[i]
                    a[i] = candidate
                    if not a.any():
                        a[i] = old
                        continue
                    correct, sep, t = _score(a, X, positive)
                    if (correct, sep) > (best_correct, best_sep):
                        best_correct, best_sep, best_t = correct, sep, t
                        improved = True
                    else:
                        a[i] = old
            if not improved:
                break
    return a, best_t, best_correct, best_sep


def search_discriminant(dataset: Dataset, target_class: str,
                        params: SearchParams | None = None):
    """Find a one-vs-rest separating model by coordinate descent.

    Starts at a = (1, ..., 1) with step halving; the threshold at every step
    is chosen by an exact sweep over sorted f values. ``params.restarts``
    extra starts are drawn from a generator seeded by ``params.seed``, so the
    result is deterministic for a fixed seed. Returns the model (rescaled so
    max |a_i| = 1) together with its :class:`~glcbench.rules.RuleStats`.
    """
    from .rules import apply_discrimination_rule  # deferred: rules imports this module

    params = params or SearchParams()
    if target_class not in dataset.class_labels:
        raise ValidationError(f"target class {target_class!r} not in dataset")
    X = np.array([c.values for c in dataset.cases], dtype=float)
    positive = np.array([c.class_label == target_class for c in dataset.cases])
    if not positive.any():
        raise ValidationError(f"target class {target_class!r} has no cases")
    n = X.shape[1]

    rng = np.random.default_rng(params.seed)
    starts = [np.ones(n)]
    for _ in range(params.restarts):
        start = rng.uniform(-1.0, 1.0, n)
        if start.any():
            starts.append(start)

    best = None
    for a0 in starts:
        a, t, correct, sep = _descend(a0, X, positive, params)
        if best is None or (correct, sep) > (best[2], best[3]):
            best = (a, t, correct, sep)

    a, t, _, _ = best
    c_max = float(np.max(np.abs(a)))
    model = normalize_coefficients(
        tuple(float(v) for v in a),
        threshold=t / c_max,
        positive_class=target_class,
    )
    stats = apply_discrimination_rule(model, dataset, target_class)
    return model, stats


# ---------------------------------------------------------------------------
# Plain-text key-value document


def model_to_text(model: LinearModel) -> str:
    lines = [f"{MODEL_HEADER} {FORMAT_VERSION}"]
    lines.append("raw_coefficients " + " ".join(format_float(c) for c in model.raw_coefficients))
    lines.append("normalized_coefficients "
                 + " ".join(format_float(c) for c in model.normalized_coefficients))
    lines.append("angles " + " ".join(format_float(q) for q in model.angles))
    lines.append("scale " + format_float(model.scale))
    if model.threshold is not None:
        lines.append("threshold " + format_float(model.threshold))
    if model.positive_class is not None:
        lines.append("positive_class " + model.positive_class)
    return "\n".join(lines) + "\n"


def model_from_text(text: str) -> LinearModel:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(MODEL_HEADER):
        raise ValidationError(f"not a model document (missing {MODEL_HEADER!r} header)")
    version = lines[0].split()[1:]
    if version != [str(FORMAT_VERSION)]:
        raise ValidationError(
            f"unsupported model format version {' '.join(version)!r}; "
            f"supported: {FORMAT_VERSION}"
        )
    fields: dict[str, list[str]] = {}
    for ln in lines[1:]:
        key, *rest = ln.split()
        fields[key] = rest

    def floats(key):
        if key not in fields:
            raise ValidationError(f"model document missing {key!r}")
        return tuple(float(tok) for tok in fields[key])

    model = LinearModel(
        raw_coefficients=floats("raw_coefficients"),
        normalized_coefficients=floats("normalized_coefficients"),
        angles=floats("angles"),
        scale=floats("scale")[0],
        threshold=floats("threshold")[0] if "threshold" in fields else None,
        positive_class=" ".join(fields["positive_class"]) if "positive_class" in fields else None,
    )
    known = {"raw_coefficients", "normalized_coefficients", "angles", "scale",
             "threshold", "positive_class"}
    unknown = set(fields) - known
    if unknown:
        raise ValidationError(f"unknown model fields: {sorted(unknown)}")
    return model


def write_model(model: LinearModel, path) -> None:
    Path(path).write_text(model_to_text(model), encoding="utf-8")


def read_model(path) -> LinearModel:
    return model_from_text(Path(path).read_text(encoding="utf-8"))
