"""The quantized top: algebraic eigenproblem per representation label.

With vanishing potential the eigenproblem on the rotation group splits into
one hermitian matrix problem per label j,

    M^j = sum_a (S^j_a)^2 / (2 I_a),

acting on the coefficient matrix c^j from the left.  Each eigenvalue of M^j
occurs with an additional (2j+1)-fold column degeneracy in the full Hilbert
space; that factor is reported as metadata instead of repeating rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rotation import HalfInt, RotRep, as_half_int, build_rot_rep

__all__ = ["TopParams", "TopSpectrum", "build_top_matrix", "top_spectrum", "symmetric_top_levels"]

DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True)
class TopParams:
    """Principal moments of inertia of the rigid top."""

    I1: float
    I2: float
    I3: float
    hbar: float = 1.0

    def __post_init__(self):
        if min(self.I1, self.I2, self.I3) <= 0.0:
            raise ValueError(f"moments of inertia must be positive, got {(self.I1, self.I2, self.I3)}")
        if self.hbar <= 0.0:
            raise ValueError("hbar must be positive")

    @property
    def moments(self) -> tuple[float, float, float]:
        return (self.I1, self.I2, self.I3)


@dataclass(frozen=True)
class TopSpectrum:
    """Grouped energy levels of one c^j block.

    `levels` lists (energy, multiplicity) ascending within the matrix problem;
    the full Hilbert-space multiplicity is (2j+1) times the listed one.
    """

    j: HalfInt
    levels: tuple[tuple[float, int], ...]

    @property
    def column_degeneracy(self) -> int:
        return self.j.dim

    def energies(self) -> np.ndarray:
        return np.array([e for e, _ in self.levels])


def build_top_matrix(rep: RotRep, params: TopParams) -> np.ndarray:
    """Hermitian matrix sum_a S_a^2 / (2 I_a) of dimension 2j+1."""
    if rep.n != 3:
        raise ValueError("the top eigenproblem needs an n = 3 representation")
    mat = np.zeros((rep.dim, rep.dim), dtype=complex)
    for s_a, inertia in zip(rep.gen, params.moments):
        mat += (s_a @ s_a) / (2.0 * inertia)
    return mat


def top_spectrum(rep: RotRep, params: TopParams) -> TopSpectrum:
    """Diagonalize the c^j block and group near-degenerate eigenvalues."""
    mat = build_top_matrix(rep, params)
    energies = np.linalg.eigvalsh(mat)
    spread = float(energies[-1] - energies[0]) if len(energies) > 1 else 0.0
    tol = DEGENERACY_RTOL * max(spread, abs(float(energies[-1])), 1e-300)
    levels: list[tuple[float, int]] = []
    for e in energies:
        if levels and abs(e - levels[-1][0]) <= tol:
            prev, count = levels[-1]
            levels[-1] = (prev, count + 1)
        else:
            levels.append((float(e), 1))
    return TopSpectrum(j=as_half_int(rep.label), levels=tuple(levels))


def symmetric_top_levels(j, I: float, K: float, hbar: float = 1.0) -> list[tuple[float, float]]:
    """Closed-form energies of the symmetric top (I1 = I2 = I, I3 = K).

    Returns (m', E) pairs with m' = -j..j and
    E = hbar^2 j(j+1)/(2I) + (1/(2K) - 1/(2I)) hbar^2 m'^2.
    """
    if I <= 0.0 or K <= 0.0:
        raise ValueError("moments of inertia must be positive")
    j = as_half_int(j)
    out = []
    for twice_m in range(-j.twice, j.twice + 2, 2):
        m = twice_m / 2.0
        e = hbar**2 * j.casimir() / (2.0 * I) + (1.0 / (2.0 * K) - 1.0 / (2.0 * I)) * hbar**2 * m * m
        out.append((m, e))
    return out


def scan_spectrum(
    params: TopParams, twice_j_max: int, sector: str = "all"
) -> list[tuple[int, float, int]]:
    """Spectra for all labels 2j = 0..twice_j_max as (twice_j, energy, multiplicity) rows.

    `sector` restricts to single-valued ("bosonic") or doubly-valued
    ("fermionic") labels.
    """
    if sector not in ("all", "bosonic", "fermionic"):
        raise ValueError(f"unknown sector {sector!r}")
    rows = []
    for twice_j in range(0, twice_j_max + 1):
        if sector == "bosonic" and twice_j % 2 == 1:
            continue
        if sector == "fermionic" and twice_j % 2 == 0:
            continue
        rep = build_rot_rep(3, HalfInt(twice_j), params.hbar)
        spec = top_spectrum(rep, params)
        for energy, mult in spec.levels:
            rows.append((twice_j, energy, mult))
    return rows
