"""Certified computations around Gronwall's function G(n) = sigma(n)/(n log log n).

Exact integer/rational arithmetic plus error-bounded real enclosures back
every claim: Robin's inequality scans, superabundant enumeration, GA1
classification, and extraordinary-number probes all return certified
verdicts, never bare floating-point guesses.
"""

from .arith import (
    BudgetExceeded,
    Factorization,
    abundancy,
    divisor_sigma,
    factorize,
    is_prime,
    primes_up_to,
    sigma_sieve,
)
from .enclosure import (
    DEFAULT_PRECISION,
    DEFAULT_PRECISION_CAP,
    BoundedReal,
    Cmp,
    DomainStraddle,
    PrecisionExhausted,
    StraddlesBoundary,
    Tri,
    refine_until,
    truncate3,
)
from .gfun import (
    GAMMA_PRECISION_LIMIT,
    e_gamma,
    g_cmp_e_gamma,
    g_cmp_exact,
    g_compare,
    g_truncate3,
    g_value,
    gamma_enclosure,
    log_log,
)
from .ga import (
    CertificationError,
    CertifyFourTrace,
    GAStatus,
    GAVerdict,
    ProbeReport,
    PropScanReport,
    certify_four,
    extraordinary_probe,
    ga1_check_criterion,
    ga1_check_direct,
    prop_2p_scan,
    prop_pq_scan,
)
from .robin import (
    BOUND_CONSTANT,
    ROBIN_THRESHOLD,
    RobinRecord,
    ScanReport,
    SweepReport,
    bound_margin_sweep,
    harmonic,
    harmonic_exact,
    lagarias_check,
    lagarias_sweep,
    robin_bound_margin,
    robin_check,
    robin_exceptions,
    scan_range,
    witness_prime,
)
from .superabundant import (
    AlaogluErdosReport,
    SAEntry,
    StabilizationReport,
    check_alaoglu_erdos,
    divisibility_stabilization,
    sa_candidates,
    sa_enumerate,
    sa_filter_records,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Factorization",
    "abundancy",
    "divisor_sigma",
    "factorize",
    "is_prime",
    "primes_up_to",
    "sigma_sieve",
    "DEFAULT_PRECISION",
    "DEFAULT_PRECISION_CAP",
    "BoundedReal",
    "Cmp",
    "DomainStraddle",
    "PrecisionExhausted",
    "StraddlesBoundary",
    "Tri",
    "refine_until",
    "truncate3",
    "GAMMA_PRECISION_LIMIT",
    "e_gamma",
    "g_cmp_e_gamma",
    "g_cmp_exact",
    "g_compare",
    "g_truncate3",
    "g_value",
    "gamma_enclosure",
    "log_log",
    "CertificationError",
    "CertifyFourTrace",
    "GAStatus",
    "GAVerdict",
    "ProbeReport",
    "PropScanReport",
    "certify_four",
    "extraordinary_probe",
    "ga1_check_criterion",
    "ga1_check_direct",
    "prop_2p_scan",
    "prop_pq_scan",
    "BOUND_CONSTANT",
    "ROBIN_THRESHOLD",
    "RobinRecord",
    "ScanReport",
    "SweepReport",
    "bound_margin_sweep",
    "harmonic",
    "harmonic_exact",
    "lagarias_check",
    "lagarias_sweep",
    "robin_bound_margin",
    "robin_check",
    "robin_exceptions",
    "scan_range",
    "witness_prime",
    "AlaogluErdosReport",
    "SAEntry",
    "StabilizationReport",
    "check_alaoglu_erdos",
    "divisibility_stabilization",
    "sa_candidates",
    "sa_enumerate",
    "sa_filter_records",
    "__version__",
]
