"""Half-integral weight q-series mod p: eta quotients, Hecke operators,
traces of singular moduli, Hurwitz class numbers and overpartitions."""

from .arith import QuadraticChar, Rational, Residue, bernoulli, kronecker, reduce_mod
from .classnum import HurwitzValue, hurwitz_from_r3, hurwitz_oracle, hurwitz_table, r3_series
from .dist import (
    SquareClassProfile,
    TallyReport,
    eigen_congruence_check,
    find_hecke_primes,
    hurwitz_tally,
    overpartition_tally,
    square_class_support,
    tally,
    trace_tally,
)
from .errors import HalfmodError
from .moduli import BQF, B_m, TraceValue, fp_series, h1p_series, h_series, j_numeric, reduced_forms, trace_numeric
from .operators import hecke_half, hecke_half_composite, rc_bracket1, theta_lift
from .partitions import g_twist_series, overpartition_enumerate, overpartition_product, overpartition_series
from .qseries import GF, QQ, ZZ, EtaQuotientSpec, LaurentSeries, eisenstein, eta_quotient, jacobi_theta, theta_op, twist

__version__ = "0.1.0"
