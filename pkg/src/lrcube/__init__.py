"""Embedding layer-rainbow latin cubes into larger ones.

An order-``m`` layer-rainbow latin cube fits in the corner of an order-``n``
one exactly when ``n >= 2m``; :func:`embed` builds such a cube.
"""

__version__ = "0.1.0"

from .amalgamation import (
    AmalgamProfile,
    ColorMultTable,
    EdgeKind,
    amalgam_profile,
    color_amalgam,
    coloring_parameters,
    coloring_stage_one,
    coloring_stage_three,
    coloring_stage_two,
    necessity_check,
    validate_table,
)
from .cube import (
    LayerRainbowCube,
    VerifyReport,
    base_cube,
    contains_as_corner,
    from_layers,
    parse,
    relabel,
    serialize,
    verify,
)
from .detachment import ColoredExtension, realize, verify_realization
from .embedder import EmbedReport, embed, embed_m1
from .errors import (
    InfeasibleOrderError,
    InternalInvariantError,
    MalformedInputError,
    RealizationError,
)
from .oracle import Outcome, SearchLimits, brute_force_extend, count_extensions

__all__ = [
    "amalgam_profile",
    "AmalgamProfile",
    "base_cube",
    "brute_force_extend",
    "color_amalgam",
    "ColoredExtension",
    "coloring_parameters",
    "coloring_stage_one",
    "coloring_stage_three",
    "coloring_stage_two",
    "ColorMultTable",
    "contains_as_corner",
    "count_extensions",
    "EdgeKind",
    "embed",
    "embed_m1",
    "EmbedReport",
    "from_layers",
    "InfeasibleOrderError",
    "InternalInvariantError",
    "LayerRainbowCube",
    "MalformedInputError",
    "necessity_check",
    "Outcome",
    "parse",
    "RealizationError",
    "realize",
    "relabel",
    "SearchLimits",
    "serialize",
    "validate_table",
    "verify",
    "verify_realization",
    "VerifyReport",
]
