"""Spectral solver for quantized rigid and affinely-rigid (deformable) tops.

The package algebraizes the free rigid top through angular-momentum
representation matrices and assembles the reduced matrix-valued Schroedinger
problems of the deformable top on deformation-invariant coordinates, for the
affine-affine, metric-affine, affine-metric and doubly-isotropic elastic
kinetic energies, with superselection bookkeeping and classical geodesic
cross-checks.
"""

from .classical import AffineState, IntegrationError, Trajectory, geodesic, integrate, kinetic_energy, velocities
from .measures import TwoPolar, haar_weight, p_l, p_lambda, two_polar
from .peterweyl import ParityClass, PWCoeffs, left_translate, parity_class, right_translate, synth
from .reduced import (
    AffineModel,
    GridAxis,
    GridSpec,
    ModelKind,
    Potential,
    ReducedHamiltonian,
    SuperselectionClass,
    build_coupling_ops,
    build_reduced_hamiltonian,
    dilatation_effective_mass,
    superselection_valid,
)
from .rigidbody import TopParams, TopSpectrum, build_top_matrix, symmetric_top_levels, top_spectrum
from .rotation import (
    HalfInt,
    RotRep,
    build_rot_rep,
    casimir_eigenvalue,
    rot_rep_from_pair_generators,
    su2_compose,
    wigner_D,
)
from .spectra import NonConvergenceError, SpectrumResult, bound_state_diagnostic, eigen_lowest

__version__ = "0.1.0"

__all__ = [
    "AffineModel",
    "AffineState",
    "GridAxis",
    "GridSpec",
    "HalfInt",
    "IntegrationError",
    "ModelKind",
    "NonConvergenceError",
    "ParityClass",
    "PWCoeffs",
    "Potential",
    "ReducedHamiltonian",
    "RotRep",
    "SpectrumResult",
    "SuperselectionClass",
    "TopParams",
    "TopSpectrum",
    "Trajectory",
    "TwoPolar",
    "bound_state_diagnostic",
    "build_coupling_ops",
    "build_reduced_hamiltonian",
    "build_rot_rep",
    "build_top_matrix",
    "casimir_eigenvalue",
    "dilatation_effective_mass",
    "eigen_lowest",
    "geodesic",
    "haar_weight",
    "integrate",
    "kinetic_energy",
    "left_translate",
    "p_l",
    "p_lambda",
    "parity_class",
    "right_translate",
    "rot_rep_from_pair_generators",
    "su2_compose",
    "superselection_valid",
    "symmetric_top_levels",
    "synth",
    "top_spectrum",
    "two_polar",
    "velocities",
    "wigner_D",
]
