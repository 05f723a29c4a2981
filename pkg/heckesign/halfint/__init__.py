from .shimura import (
    CoefficientSeries,
    chi_tN,
    epsilon_counterexamples,
    epsilon_lower_bound,
    forward_series,
    forward_series_from_table,
    halfint_exact_normalized,
    halfint_normalized,
    halfint_sign,
    halfint_sign_density,
    inverse_series,
    mobius_inverse,
    shimura_forward,
    synthesize_halfint_series,
)
from .spec import (
    DELTA_LIFT,
    EC11_LIFT,
    HALFINT_PRESETS,
    CharacterTable,
    HalfIntegralSpec,
    get_halfint_preset,
    halfint_spec_from_dict,
    is_fundamental_discriminant,
    load_halfint_spec,
    quadratic_character,
    table_character,
    trivial_character,
)
