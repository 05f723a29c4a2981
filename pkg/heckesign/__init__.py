from heckesign.angles import AngleSequence, RelationReport, angle, angle_sequence, relation_search
from heckesign.arith import PrimeSieve, divisors, kronecker, mobius, sieve
from heckesign.measures import (
    epsilon_interval_union,
    product_measure,
    sign_interval_union,
    sin_box_measure,
    st_cdf,
    st_measure,
)
from heckesign.newforms import EigenvalueTable, NewformSpec, build_table, ec_ap, lambda_prime_power
from heckesign.qseries import QSeries, eta_power_24_delta, multiply
from heckesign.structures.intervals import IntervalUnion
from heckesign.tally import SignTally

__version__ = "0.1.0"
