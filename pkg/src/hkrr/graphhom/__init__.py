"""Jacobi diagrams modulo AS and IHX, the contraction operators on them,
wheels, and the wheel exponential."""

from .canon import canonicalize, diagram_from_key, key_bidegree, key_from_str, key_to_str
from .checks import (
    check_ell_and_partial,
    check_power_rule,
    check_scp_and_partial,
    check_wheel_contractions,
    check_wheel_glueings,
    omega_eigen_ok,
    trivalent_part,
    verify_omega_eigen,
)
from .diagram import Diagram, GlueError, MalformedDiagram, disjoint_union, from_flags, glue, glue_pairs
from .quotient import (
    DegreeCapExceeded,
    NotInSpan,
    QuotientBasis,
    enumerate_keys,
    equal_mod_ihx,
    ihx_relations,
    is_zero_mod_ihx,
    quotient_basis,
    reduce_vector,
)
from .sym3 import Sym3Poly, lemma_bernoulli_defect, p_map
from .vector import GraphVector, exp_partial, pairing, partial, partial_bilinear, union
from .wheels import double_wheel, ell, omega, omega_mu, theta, wheel

__all__ = [
    "DegreeCapExceeded", "NotInSpan", "Diagram", "GlueError", "MalformedDiagram", "GraphVector", "QuotientBasis", "Sym3Poly",
    "canonicalize", "check_ell_and_partial", "check_power_rule", "check_scp_and_partial",
    "check_wheel_contractions", "check_wheel_glueings", "diagram_from_key", "disjoint_union",
    "double_wheel", "ell", "enumerate_keys", "equal_mod_ihx", "exp_partial", "from_flags", "glue",
    "glue_pairs", "ihx_relations", "is_zero_mod_ihx", "key_bidegree", "key_from_str", "key_to_str",
    "lemma_bernoulli_defect", "omega", "omega_eigen_ok", "omega_mu", "p_map", "pairing", "partial",
    "partial_bilinear", "quotient_basis", "reduce_vector", "theta", "trivalent_part", "union",
    "verify_omega_eigen", "wheel",
]
