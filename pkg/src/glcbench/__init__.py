"""glcbench: lossless 3D line-coordinate layouts for visual rule discovery.

The package maps labeled n-D data into shifted paired/tripled coordinate
cubes and angled linear-function polylines, evaluates rectangle, hyperblock,
and threshold rules against it, and assembles everything into a canonical
scene document served to an interactive viewer.
"""

from .dataset import CaseRecord, Dataset, load_csv, normalize, pad_to_multiple, read_csv
from .errors import (
    ConfigError,
    ContractError,
    CsvParseError,
    GlcError,
    UnknownPresetError,
    ValidationError,
)
from .linear_model import (
    LinearModel,
    SearchParams,
    angles_from_coefficients,
    classify,
    contribution,
    evaluate,
    model_from_normalized,
    normalize_coefficients,
    scaled_threshold,
    search_discriminant,
)
from .rules import (
    Hyperblock,
    RectangleRule,
    RuleStats,
    apply_discrimination_rule,
    evaluate_rectangle_rule,
    evaluate_selection,
    hyperblock_contains,
    refine_rule,
    regression_interval,
)
from .scene import Scene, build_scene, camera_preset, deserialize, serialize
from .transforms import (
    Glyph,
    LayoutConfig,
    map_glc3sl,
    map_glcl,
    map_spc2d,
    map_spc3d,
    map_stc,
    reconstruct,
)

__version__ = "0.1.0"
