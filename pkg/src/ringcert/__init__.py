"""Exact linear algebra for column-partitioned matrices over commutative rings.

Decides whether a matrix has an invertible square submatrix with columns from
distinct blocks and, when it has none, builds a checkable certificate of the
structure that forces this.
"""

__version__ = "0.1.0"

from .echelon import EchelonResult, is_reduced_echelon, reduce, unit_column_capacity
from .engine import Branch, TheoremCertificate, certify, to_theorem_form
from .errors import (
    CertificateError,
    GenerationError,
    HypothesisFailure,
    RingcertError,
    RingMismatchError,
    ShapeError,
    UnsupportedRingError,
)
from .matrices import IndexedMatrix, index_set
from .oracle import InstanceSpec, generate, t_max_bruteforce, verify_certificate
from .rado import RadoReport, corollary_nullrow_form, field_rank, rado_condition
from .rings import QQ, ZZ, Ring, RingElement, extended_gcd
from .transversal import (
    AdmissibleSet,
    ColumnPartition,
    admissible_sets,
    hypothesis_holds,
    majorizes,
    select_extremal,
)

__all__ = [
    "AdmissibleSet", "Branch", "CertificateError", "ColumnPartition", "EchelonResult",
    "GenerationError", "HypothesisFailure", "IndexedMatrix", "InstanceSpec", "QQ",
    "RadoReport", "Ring", "RingElement", "RingMismatchError", "RingcertError",
    "ShapeError", "TheoremCertificate", "UnsupportedRingError", "ZZ", "admissible_sets",
    "certify", "corollary_nullrow_form", "extended_gcd", "field_rank", "generate",
    "hypothesis_holds", "index_set", "is_reduced_echelon", "majorizes", "rado_condition",
    "reduce", "select_extremal", "t_max_bruteforce", "to_theorem_form",
    "unit_column_capacity", "verify_certificate",
]
