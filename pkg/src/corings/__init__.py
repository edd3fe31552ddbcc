"""Exact computations with corings, Frobenius corings and Frobenius extensions."""

from .algebra import Algebra, RingMap, check_ring_map, make_algebra, opposite
from .bimodule import Bimodule, TensorPresentation, hom_space, invariants, make_bimodule, tensor_over
from .coring import Coring, dual_ring, make_coring, sweedler_coring, trivial_coring
from .frobenius import (CertifiedNotFrobenius, Found, FrobeniusExtensionData, FrobeniusSystem,
                        NoIsoEvidence, NotFoundWithinSearch, ReducedFrobeniusSystem, SearchConfig,
                        find_frobenius_extension_data, find_reduced_system)
from .linalg import GF, QQ, Matrix
from .tower import TowerConfig, build_tower, strongly_coseparable, tower_index_profile
from .verify import verify_frobenius_extension, verify_frobenius_system, verify_reduced_system

__all__ = [
    "Algebra", "RingMap", "check_ring_map", "make_algebra", "opposite",
    "Bimodule", "TensorPresentation", "hom_space", "invariants", "make_bimodule", "tensor_over",
    "Coring", "dual_ring", "make_coring", "sweedler_coring", "trivial_coring",
    "CertifiedNotFrobenius", "Found", "FrobeniusExtensionData", "FrobeniusSystem",
    "NoIsoEvidence", "NotFoundWithinSearch", "ReducedFrobeniusSystem", "SearchConfig",
    "find_frobenius_extension_data", "find_reduced_system",
    "GF", "QQ", "Matrix",
    "TowerConfig", "build_tower", "strongly_coseparable", "tower_index_profile",
    "verify_frobenius_extension", "verify_frobenius_system", "verify_reduced_system",
]
