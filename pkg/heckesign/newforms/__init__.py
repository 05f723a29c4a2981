from .elliptic import EllipticCurve, count_points, ec_ap, ec_ap_many
from .hecke import hecke_recurrence, hecke_recurrence_exact, sin_quotient
from .spec import (
    DELTA,
    EC11,
    EC37,
    PRESETS,
    EtaProductDelta,
    ExplicitTable,
    NewformSpec,
    get_preset,
)
from .table import (
    EigenvalueTable,
    build_table,
    form_from_table_file,
    lambda_prime_power,
    read_table_csv,
    resolve_form,
    write_table,
)
