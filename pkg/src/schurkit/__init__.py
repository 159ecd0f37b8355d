"""Schur categories, higher level RSK and cyclotomic Schur algebras."""

from .combinatorics import (
    DomainError,
    SemistandardTableau,
    StandardTableau,
    dominance_leq,
    enumerate_multicompositions,
    enumerate_multipartitions,
    enumerate_partitions,
    enumerate_sst,
)
from .hecke import AffHeckeElt, CycContext, m_ST, m_lambda, perm_module_basis
from .parmat import ParMat, count_parmat_flat, enumerate_parmat, enumerate_parmat_flat
from .polyalg import PolyElt, parse_poly
from .rsk import phi, phi_inverse, reduce_level, rsk1, rsk1_inverse, verify_bijection
from .schurdjm import (
    algebra_dimension,
    cellularity_check,
    compose,
    eval_program_hecke,
    functor_check,
    parmat_flat_rank,
    phi_ST,
    verify_relations_djm,
)
from .schurrep import DiagramProgram, GenOp, compile_parmat, eval_program, verify_relations

__version__ = "0.1.0"
