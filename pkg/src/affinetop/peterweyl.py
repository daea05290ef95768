"""Coefficient-matrix calculus for wave functions on the rotation covering group.

A wave function on SU(2) is held purely as its expansion coefficients
{c^j}: Psi(u) = sum_j Tr(c^j D^j(u)).  Synthesis happens on demand at given
rotation vectors; regular translations act algebraically on the coefficient
matrices; the parity classifier implements the boson/fermion superselection
split.  No gridding of the group ever takes place.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .rotation import HalfInt, build_rot_rep, su2_compose, wigner_D

__all__ = ["PWCoeffs", "ParityClass", "synth", "left_translate", "right_translate", "parity_class"]


class ParityClass(Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"
    MIXED = "mixed"
    ZERO = "zero"


class PWCoeffs:
    """Map from label j to the (2j+1) x (2j+1) coefficient matrix c^j.

    Absent labels mean c^j = 0.  Matrices are copied and frozen on entry.
    """

    def __init__(self, terms: dict):
        clean: dict[HalfInt, np.ndarray] = {}
        for label, mat in terms.items():
            j = label if isinstance(label, HalfInt) else HalfInt(int(label))
            mat = np.array(mat, dtype=complex)
            if mat.shape != (j.dim, j.dim):
                raise ValueError(
                    f"coefficient for 2j = {j.twice} must have shape {(j.dim, j.dim)}, got {mat.shape}"
                )
            mat.setflags(write=False)
            clean[j] = mat
        self.terms = clean

    def labels(self) -> list[HalfInt]:
        return sorted(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PWCoeffs):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(np.array_equal(self.terms[j], other.terms[j]) for j in self.terms)


def synth(coeffs: PWCoeffs, k, hbar: float = 1.0) -> complex:
    """Evaluate Psi(u(k)) = sum_j Tr(c^j D^j(u(k)))."""
    total = 0.0 + 0.0j
    for j, c in coeffs.terms.items():
        rep = build_rot_rep(3, j, hbar)
        total += complex(np.trace(c @ wigner_D(rep, k)))
    return total


def left_translate(coeffs: PWCoeffs, v, hbar: float = 1.0) -> PWCoeffs:
    """Coefficients of u -> Psi(v o u), i.e. c^j -> c^j D^j(v)."""
    out = {}
    for j, c in coeffs.terms.items():
        rep = build_rot_rep(3, j, hbar)
        out[j] = c @ wigner_D(rep, v)
    return PWCoeffs(out)


def right_translate(coeffs: PWCoeffs, v, hbar: float = 1.0) -> PWCoeffs:
    """Coefficients of u -> Psi(u o v), i.e. c^j -> D^j(v) c^j."""
    out = {}
    for j, c in coeffs.terms.items():
        rep = build_rot_rep(3, j, hbar)
        out[j] = wigner_D(rep, v) @ c
    return PWCoeffs(out)


def antipode(k) -> np.ndarray:
    """Rotation vector of -u(k), realized by composing with a 2*pi turn."""
    return su2_compose((0.0, 0.0, 2.0 * np.pi), k)


def parity_class(coeffs: PWCoeffs) -> ParityClass:
    """Superselection classification of a coefficient set.

    Bosonic if every nonzero term carries an integer label, fermionic if every
    one is half-odd; a mix of the two cannot carry a probability density on
    the rotation group and is flagged MIXED.
    """
    has_int = False
    has_half = False
    for j, c in coeffs.terms.items():
        if not np.any(c):
            continue
        if j.is_integer:
            has_int = True
        else:
            has_half = True
    if has_int and has_half:
        return ParityClass.MIXED
    if has_int:
        return ParityClass.BOSONIC
    if has_half:
        return ParityClass.FERMIONIC
    return ParityClass.ZERO
