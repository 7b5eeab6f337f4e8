"""Character sums attached to low-degree Vélu isogenies over finite fields."""

from .charsum import (
    CharacterContext,
    CharSumResult,
    char_exponent,
    character,
    charsum_bruteforce,
    charsum_compact,
    charsum_lambda,
    distinct_values,
    lambda_sum_general,
    make_context,
)
from .classnum import (
    ClassData,
    CyclotomicInteger,
    class_number,
    dirichlet_sum,
    mr_two_isogeny_sum,
    power_residue_sum,
    verify_dirichlet,
)
from .errors import CharsumError, InternalError
from .families import corpus_generate, family_closed_form, family_instance, kubert_curve
from .finite_field import (
    GF,
    Field,
    FieldElement,
    embed,
    ff_inv,
    ff_sqrt,
    field_make,
    min_ext_degree,
    primitive_root_of_unity,
    quadratic_character,
)
from .formal import (
    TruncatedSeries,
    differential_series,
    expansion_at_infinity,
    normalization_constant,
    scaling_isomorphism_constant,
)
from .velu import (
    Isogeny,
    complement_isogeny,
    velu_eval,
    velu_from_kernel,
    verify_exact_sequence,
    verify_frobenius_factorization,
)
from .weierstrass import Curve, Point, add, curve_make, enumerate_points, frobenius, point_order, scalar_mul

__version__ = "0.1.0"
