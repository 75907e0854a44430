"""Exact arithmetic for t-motives over F_q(theta).

Maximal integral models, local L-factors, and v-adic L-series at finite and
infinite places, computed to arbitrary precision.
"""

from .ffield import (
    ExtField,
    Field,
    Poly,
    PolyFrac,
    factor,
    irreducibles,
    is_irreducible,
)
from .bivar import (
    BivarPoly,
    cartier_fraction,
    cartier_theta,
    det_bivar,
    t_minus_theta_split,
    tau_t,
    tau_theta,
)
from .completion import (
    AtLeastN,
    LocalElement,
    LocalRing,
    LocalThetaPoly,
    Place,
    cartier_local,
    iota_embed,
    iota_infinite,
    iota_inverse,
)
from .motive import Motive, carlitz, dual, from_matrix, tensor, tensor_power, twist
from .model import (
    LatticeBasis,
    LocalFactor,
    LocalLattice,
    SmithDecomposition,
    bad_places,
    local_factor,
    maximal_model_global,
    maximal_model_local,
    saturation_step,
    semilinear_kernel,
    smith_normal_form,
    trim_step,
)
from .lseries import (
    LSeries,
    NucleusParams,
    assemble_dual_matrix,
    carlitz_power_oracle,
    choose_c,
    conjecture_scan,
    dual_char_poly,
    euler_product_oracle,
    h_sequence,
    kw_integers,
    lseries,
    lseries_general,
    order_of_vanishing_at_one,
    rho_finite,
    rho_infinite,
    twist_congruence_check,
)
from .motfile import dump_motive, load_motive, parse_motive_text
from .grammar import parse_bivar, parse_t_poly

__version__ = "0.1.0"
