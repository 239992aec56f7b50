"""rbqmc: quasi-Monte Carlo point sets in rational number bases.

Three layers:

* digit expansions in a rational base u/v and their permuted radical
  inverses (`numeration`, `inverse`), which generate the point sequences
  (`sequence`);
* exact star discrepancy with rational arithmetic and a compiled 2-d
  sweep (`discrepancy`, `_kernels`);
* the residue calculus describing which sequence indices land in a given
  digit box (`congruence`) and the witness construction that turns it
  into explicit lower-bound certificates (`witness`).
"""

from .congruence import (
    BoxDigits,
    ResidueSystem,
    fractional_sum_mod1,
    interval_residue,
    joint_left_residue,
    joint_residue,
    left_neighbor_offset,
    mod_inverse,
    residue_system,
)
from .discrepancy import (
    BoxSpec,
    GuardrailExceeded,
    LocalDiscrepancySum,
    box_count,
    perturbation_bound,
    prefix_discrepancies,
    star_discrepancy,
    star_discrepancy_1d,
)
from .inverse import (
    DigitValue,
    PermutationSpec,
    radical_inverse_digits,
    radical_inverse_truncated,
    truncate,
)
from .numeration import (
    ExpansionState,
    RationalBase,
    expand_digits,
    expansion_length,
    reconstruct,
)
from .sequence import (
    ConfigError,
    GeneratorConfig,
    PointSet,
    point,
    point_set,
    read_points_csv,
    validate_config,
    write_points_csv,
)
from .witness import (
    WitnessParams,
    WitnessReport,
    build_box_system,
    derive_params,
    growth_scan,
    verify_bound,
    window_average_brute,
    window_average_closed,
)
from ._kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoxDigits",
    "BoxSpec",
    "ConfigError",
    "DigitValue",
    "ExpansionState",
    "GeneratorConfig",
    "GuardrailExceeded",
    "LocalDiscrepancySum",
    "PermutationSpec",
    "PointSet",
    "RationalBase",
    "ResidueSystem",
    "WitnessParams",
    "WitnessReport",
    "box_count",
    "build_box_system",
    "derive_params",
    "expand_digits",
    "expansion_length",
    "fractional_sum_mod1",
    "growth_scan",
    "interval_residue",
    "joint_left_residue",
    "joint_residue",
    "left_neighbor_offset",
    "mod_inverse",
    "perturbation_bound",
    "point",
    "point_set",
    "radical_inverse_digits",
    "radical_inverse_truncated",
    "read_points_csv",
    "reconstruct",
    "residue_system",
    "prefix_discrepancies",
    "star_discrepancy",
    "star_discrepancy_1d",
    "truncate",
    "validate_config",
    "verify_bound",
    "window_average_brute",
    "window_average_closed",
    "write_points_csv",
]
