from .ideal import (
    GroebnerBasis,
    Ideal,
    NotZeroDimensionalError,
    Staircase,
    buchberger,
    elimination_ideal,
    format_ideal,
    ideal_membership,
    is_zero_dimensional,
    normal_form,
    parse_ideal,
    quotient_dimension,
    radical_zero_dimensional,
    s_polynomial,
    saturation,
    staircase,
    univariate_eliminant,
    verify_groebner,
)

__all__ = [
    "GroebnerBasis",
    "Ideal",
    "NotZeroDimensionalError",
    "Staircase",
    "buchberger",
    "elimination_ideal",
    "format_ideal",
    "ideal_membership",
    "is_zero_dimensional",
    "normal_form",
    "parse_ideal",
    "quotient_dimension",
    "radical_zero_dimensional",
    "s_polynomial",
    "saturation",
    "staircase",
    "univariate_eliminant",
    "verify_groebner",
]
