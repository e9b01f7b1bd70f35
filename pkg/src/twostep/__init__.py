"""Exact-arithmetic toolkit for 2-step nilpotent Lie algebras and their
simply connected groups."""

from .algebra import (AlgebraError, AlgebraReport, Element, TwoStepAlgebra,
                      abelian, abelian_factor_split, analyze, bracket, center,
                      commutator_ideal, direct_sum, from_json_text,
                      is_automorphism, is_derivation, is_heisenberg_type,
                      is_homomorphism, j_map, nonsingularity, to_json_text)
from .autos import (AdditiveMap, AutoError, CentralSpec, DiffOp, LinearMap,
                    conjugation_heis3C, dilation, is_central, make_central,
                    n6_witness, semidirect_decompose, sp_right_mult,
                    symplectic_send)
from .catalog import (CatalogError, Fingerprint, build_catalog,
                      classify_dim_le6, fingerprint, heis, heis3c, n5, n6,
                      n6prime, oct, pfaffian_pencil, quat)
from .group import GroupElement, gcommutator, gidentity, ginv, gmul, transport_check
from .linalg import LinalgError, Matrix, Subspace, determinant, inverse, pfaffian, rank_kernel
from .pac import (PacError, PacVerdict, ScanReport, genericity_member,
                  pac_verdict, scan, sufficient_condition)
from .scalars import (QQ, QT, DualScalar, MultiPoly, Quaternion, RatFun,
                      ScalarError, UniPoly, sturm_real_roots)

__version__ = "0.1.0"
