"""
Power operations - Core Library
Adem rewriting, free allowable algebras, excess-filtration stages, the
Steenrod quotient and symmetric-group arithmetic
"""

from .errors import (
    PowerOpsError,
    InputError,
    ParseError,
    InvalidWindowError,
    PrimeMismatchError,
    DomainError,
    StepBudgetExceeded,
    FalsifiedHypothesisError,
)
from .config import EngineConfig
from .modp_arith import Prime, FpScalar, binom_mod_p, lucas_check, prime_power_base
from .op_terms import Side, OpLetter, OpWord, LinComb, degree, weight, excess, is_admissible
from .grammar import parse
from .caching import RewriteCache, SharedRewriteCache
from .adem_engine import AdemEngine, adem_step, reduce, moment
from .free_allowable import (
    Generator,
    GeneratorSet,
    Factor,
    AlgebraMonomial,
    AlgebraElement,
    FreeAllowableAlgebra,
    apply_op,
    free_basis,
)
from .completion import (
    WindowSpec,
    StructureMap,
    completion_basis,
    structure_map,
    suspension_image,
    excess_filtration,
    truncate,
)
from .steenrod import steenrodize, steenrod_basis, milnor_dim
from .equivariant_arith import (
    Permutation,
    Subgroup,
    orbits,
    gamma_fixed_dim,
    in_family_T,
    gcd_binomials,
    weyl_group,
    double_cosets,
    double_coset_check,
    op_pattern,
)
from .tate import TateChart, tate_chart

__all__ = [
    'PowerOpsError',
    'InputError',
    'ParseError',
    'InvalidWindowError',
    'PrimeMismatchError',
    'DomainError',
    'StepBudgetExceeded',
    'FalsifiedHypothesisError',
    'EngineConfig',
    'Prime',
    'FpScalar',
    'binom_mod_p',
    'lucas_check',
    'prime_power_base',
    'Side',
    'OpLetter',
    'OpWord',
    'LinComb',
    'degree',
    'weight',
    'excess',
    'is_admissible',
    'parse',
    'RewriteCache',
    'SharedRewriteCache',
    'AdemEngine',
    'adem_step',
    'reduce',
    'moment',
    'Generator',
    'GeneratorSet',
    'Factor',
    'AlgebraMonomial',
    'AlgebraElement',
    'FreeAllowableAlgebra',
    'apply_op',
    'free_basis',
    'WindowSpec',
    'StructureMap',
    'completion_basis',
    'structure_map',
    'suspension_image',
    'excess_filtration',
    'truncate',
    'steenrodize',
    'steenrod_basis',
    'milnor_dim',
    'Permutation',
    'Subgroup',
    'orbits',
    'gamma_fixed_dim',
    'in_family_T',
    'gcd_binomials',
    'weyl_group',
    'double_cosets',
    'double_coset_check',
    'op_pattern',
    'TateChart',
    'tate_chart',
]
__version__ = '1.0.0'
