"""Ideals of Leavitt path algebras of finite graphs: normal forms,
arithmetic, prime/semiprime classification and factorization."""

from .field_poly import QQ, Field, Poly, factor, parse_poly
from .graph import OMEGA, AdmissiblePair, Cycle, Graph
from .ideal import (
    Ideal,
    contains,
    graded_ideal,
    ideal_from_vertices,
    ideal_sum,
    intersect,
    make_ideal,
    product,
    radical,
    whole_ideal,
    zero_ideal,
)
from .classify import is_prime, is_semiprime, primary_report
from .factor import FactorizationCert, prime_factorization, semiprime_factorization

__version__ = "0.1.0"
