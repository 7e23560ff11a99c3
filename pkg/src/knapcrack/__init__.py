"""knapcrack: a knapsack public-key scheme and the lattice attack that breaks it."""

from .knapsack import (
    SubsetSumInstance,
    SuperIncreasingSequence,
    density,
    generate_superincreasing,
    is_superincreasing,
    solve_superincreasing,
    solve_superincreasing_unordered,
)
from .permutation import LehmerCode, factorial_carry, lehmer_to_index, permute
from .lattice import (
    GramSchmidtData,
    LatticeBasis,
    enumerate_short_vectors,
    gram_schmidt,
    inner_product,
    is_lll_reduced,
    lattice_determinant,
    lll_reduce,
    lll_reduce_with_stats,
    norm_sq,
    sup_norm,
)
from .diophantine import SdaProblem, SdaSolution, build_sda_lattice, solve_sda
from .cryptosystem import (
    Ciphertext,
    CorruptCiphertextError,
    KeyIncompatibilityError,
    PrivateKey,
    PublicKey,
    SchemeParams,
    decrypt,
    desk_params,
    digest_to_dprime,
    encrypt,
    keygen,
    select_weights,
)
from .attack import (
    AttackConfig,
    AttackReport,
    CandidateMultiplier,
    EquivalentKey,
    attack_decrypt,
    build_attack_lattice,
    derive_equivalent_key,
    full_attack,
    recover_multiplier_candidates,
)
from .bench import TrialGrid, TrialRecord, run_grid, run_trial, summarize

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
