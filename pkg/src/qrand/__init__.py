"""Quantum state randomization: Pauli channels from small-bias sample
spaces, analytic quality certificates, and numerical worst-case attacks.
"""

from .bitlin import BitMatrix, BitVector, gf2_dot, gf2_kernel, gf2_rank, symplectic
from .channel import (
    FourierTable,
    PauliChannel,
    aghp_channel,
    apply_channel,
    certified_epsilon,
    channel_from_space,
    fourier_coeffs,
    qotp,
    random_pauli_channel,
)
from .errors import QrandError
from .gf2ext import FieldElement, FieldSpec, field_spec, gf_mul, gf_pow
from .linalg import (
    DensityMatrix,
    StateVector,
    haar_unitary,
    herm_eigvals,
    make_rng,
    matrix_from_text,
    matrix_norm,
    matrix_to_text,
    maximally_mixed,
    random_density,
    random_state,
    trace_distance,
)
from .pauli import (
    PauliOp,
    StabilizerGroup,
    pauli_apply,
    pauli_commutes,
    pauli_mul,
    sigma_v,
    stab_dual,
    stab_state,
    stab_validate,
)
from .smallbias import (
    BiasReport,
    SampleSpace,
    VaziraniReport,
    aghp_space,
    bias_at,
    marginal_distance,
    max_bias,
    vazirani_report,
)
from .verify import (
    AttackReport,
    DiagnosticsReport,
    cat_condition,
    diagnose,
    empirical_epsilon,
    product_eigenstate,
    rank_bound,
    sigma_v_condition,
    stabilizer_catalog,
    stabilizer_condition,
    state_distance,
    subspace_condition,
)

__version__ = "0.1.0"
