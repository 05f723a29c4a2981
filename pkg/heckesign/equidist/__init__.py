from .pairst import (
    PairHistogram,
    PairStReport,
    angles_gof,
    cell_masses,
    pair_histogram,
    pair_st_gof,
    sample_pair_st,
)
from .signs import (
    SignDensityReport,
    class_counts,
    classify,
    prime_sign_density,
    prime_sign_sequence,
    shared_primes,
    sign_changes,
    sign_product_proportion_nu,
)
from .weyl import (
    SinBoxCheck,
    WeylOrbitStats,
    orbit,
    rotation_period,
    sin_box_proportion_check,
    weyl_box_proportion,
    weyl_orbit_stats,
)
