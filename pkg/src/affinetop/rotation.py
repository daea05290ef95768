"""Irreducible representations of the rotation symmetry.

Builds the hermitian generator matrices S_a of angular momentum for any
(half-)integer label j, the pair-indexed generators S_ab, the exponentiated
rotation matrices D^j(k) in canonical coordinates of the first kind, and the
quadratic Casimir eigenvalue.  Everything is exact ladder-operator algebra on
top of numpy; all values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering

import numpy as np
from scipy.linalg import expm

__all__ = [
    "HalfInt",
    "RotRep",
    "build_rot_rep",
    "rot_rep_from_pair_generators",
    "wigner_D",
    "casimir_eigenvalue",
    "su2_matrix",
    "su2_compose",
    "su2_rotation_vector",
    "PAULI",
]

HERMITICITY_TOL = 1e-12

PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """A non-negative integer or half-odd-integer label stored exactly as 2j."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, (int, np.integer)):
            raise TypeError(f"twice must be an integer, got {type(self.twice).__name__}")
        if self.twice < 0:
            raise ValueError(f"label must be non-negative, got 2j = {self.twice}")
        object.__setattr__(self, "twice", int(self.twice))

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def dim(self) -> int:
        """Dimension 2j + 1 of the representation carrying this label."""
        return self.twice + 1

    def casimir(self) -> float:
        """j(j + 1), evaluated exactly from the integer 2j."""
        return self.twice * (self.twice + 2) / 4.0

    def __eq__(self, other) -> bool:
        if isinstance(other, HalfInt):
            return self.twice == other.twice
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, HalfInt):
            return self.twice < other.twice
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("HalfInt", self.twice))

    def __str__(self) -> str:
        return str(self.twice // 2) if self.is_integer else f"{self.twice}/2"


def as_half_int(label) -> HalfInt:
    """Coerce an int (meaning j itself) or HalfInt to HalfInt."""
    if isinstance(label, HalfInt):
        return label
    if isinstance(label, (int, np.integer)):
        return HalfInt(2 * int(label))
    raise TypeError(f"expected HalfInt or integer label, got {label!r}")


@dataclass(frozen=True, eq=False)
class RotRep:
    """An irreducible unitary representation of the rotation symmetry.

    For n = 3 the representation is labeled by a (half-)integer j and carries
    hermitian generators S_1, S_2, S_3 in the ladder basis (S_3 diagonal with
    entries hbar*m, m = j..-j).  For n = 2 the label is an integer weight m
    and the single pair generator is the 1x1 matrix [hbar*m].  Other n are
    accepted only through user-supplied pair generators.
    """

    n: int
    label: HalfInt | int
    dim: int
    hbar: float
    gen: tuple[np.ndarray, ...]
    _pair: dict = field(repr=False)

    def pair_generator(self, a: int, b: int) -> np.ndarray:
        """Hermitian generator S_ab of the rotation in the (a, b) plane, 1-based axes."""
        if a == b:
            raise ValueError("pair generator requires two distinct axes")
        if not (1 <= a <= self.n and 1 <= b <= self.n):
            raise ValueError(f"axes must lie in 1..{self.n}, got ({a}, {b})")
        if (a, b) in self._pair:
            return self._pair[(a, b)]
        return -self._pair[(b, a)]

    @property
    def twice_label(self) -> int:
        lab = self.label
        return lab.twice if isinstance(lab, HalfInt) else 2 * lab


def _ladder_generators(j: HalfInt, hbar: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """S_1, S_2, S_3 for the spin-j representation, S_3 = diag(hbar*m), m = j..-j."""
    dim = j.dim
    m = (np.arange(j.twice, -j.twice - 2, -2) / 2.0)[:dim]
    s3 = np.diag(hbar * m).astype(complex)
    jj = j.casimir()
    # S_+ raises m by one: entry at (row of m+1, col of m); rows are ordered j..-j.
    sp = np.zeros((dim, dim), dtype=complex)
    for col in range(1, dim):
        mm = m[col]
        sp[col - 1, col] = hbar * np.sqrt(jj - mm * (mm + 1.0))
    sm = sp.conj().T
    s1 = (sp + sm) / 2.0
    s2 = (sp - sm) / 2.0j
    return s1, s2, s3


def build_rot_rep(n: int, label, hbar: float = 1.0) -> RotRep:
    """Construct the built-in representation for spatial dimension n in {2, 3}.

    For n = 3 the label is j (HalfInt or integer); for n = 2 any integer
    weight m, giving the one-dimensional representation with S_12 = hbar*m.
    """
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    if n == 3:
        j = as_half_int(label)
        s1, s2, s3 = _ladder_generators(j, hbar)
        # S_ab = eps_ab^c S_c
        pair = {(1, 2): s3, (2, 3): s1, (3, 1): s2}
        return RotRep(n=3, label=j, dim=j.dim, hbar=hbar, gen=(s1, s2, s3), _pair=pair)
    if n == 2:
        if isinstance(label, HalfInt):
            if not label.is_integer:
                raise ValueError("n = 2 weights must be integers")
            m = label.twice // 2
        elif isinstance(label, (int, np.integer)):
            m = int(label)
        else:
            raise TypeError(f"n = 2 label must be an integer weight, got {label!r}")
        s12 = np.array([[hbar * m]], dtype=complex)
        return RotRep(n=2, label=m, dim=1, hbar=hbar, gen=(), _pair={(1, 2): s12})
    raise ValueError(f"unsupported dimension n = {n}; supply generators explicitly")


def rot_rep_from_pair_generators(
    n: int, pair_gens: dict[tuple[int, int], np.ndarray], hbar: float = 1.0, label=None
) -> RotRep:
    """Wrap user-supplied pair generators S_ab for rotation groups beyond n = 3.

    Requires one matrix per unordered axis pair (a < b), each hermitian; the
    antisymmetric partner S_ba = -S_ab is derived.  No irreducibility check
    is attempted.
    """
    dims = set()
    pair = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if (a, b) not in pair_gens:
                raise ValueError(f"missing pair generator for axes ({a}, {b})")
            mat = np.asarray(pair_gens[(a, b)], dtype=complex)
            if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                raise ValueError(f"generator ({a}, {b}) is not square")
            if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL * max(1.0, np.max(np.abs(mat))):
                raise ValueError(f"generator ({a}, {b}) is not hermitian")
            dims.add(mat.shape[0])
            pair[(a, b)] = mat
    if len(dims) != 1:
        raise ValueError("all pair generators must share one dimension")
    dim = dims.pop()
    return RotRep(n=n, label=label, dim=dim, hbar=hbar, gen=(), _pair=pair)


def wigner_D(rep: RotRep, k) -> np.ndarray:
    """Rotation matrix D^j(k) = exp(-(i/hbar) k.S) for a rotation vector k.

    The sign is fixed so that the j = 1/2 matrix coincides with the defining
    SU(2) element u(k) = exp(-(i/2) k.sigma).  Rotation vectors longer than
    2*pi are rejected (they leave the canonical coordinate chart).
    """
    if rep.n != 3:
        raise ValueError("rotation vectors parametrize n = 3 representations only")
    k = np.asarray(k, dtype=float)
    if k.shape != (3,):
        raise ValueError(f"rotation vector must have three components, got shape {k.shape}")
    norm = float(np.linalg.norm(k))
    if norm > 2.0 * np.pi * (1.0 + 1e-12):
        raise ValueError(f"|k| = {norm} exceeds 2*pi")
    if norm == 0.0:
        return np.eye(rep.dim, dtype=complex)
    exponent = sum(kk * s for kk, s in zip(k, rep.gen))
    return expm(-1.0j / rep.hbar * exponent)


def casimir_eigenvalue(rep: RotRep) -> float:
    """Quadratic Casimir C(2, s) with sum_{a<b} S_ab^2 = hbar^2 C(2, s) Id.

    Equals s(s+1) for the n = 3 label s and m^2 for an n = 2 weight m.  The
    scalar is read off the matrix identity and verified against it.
    """
    total = np.zeros((rep.dim, rep.dim), dtype=complex)
    for a in range(1, rep.n + 1):
        for b in range(a + 1, rep.n + 1):
            s_ab = rep.pair_generator(a, b)
            total += s_ab @ s_ab
    c = float(np.real(np.trace(total)) / rep.dim / rep.hbar**2)
    scale = max(1.0, abs(c) * rep.hbar**2)
    residual = np.max(np.abs(total - rep.hbar**2 * c * np.eye(rep.dim)))
    if residual > 1e-10 * scale:
        raise ValueError(f"pair-generator sum of squares is not scalar (residual {residual:.3e})")
    return c


# ---------------------------------------------------------------------------
# SU(2) arithmetic on rotation vectors (used by the coefficient calculus and
# by homomorphism tests).

def su2_matrix(k) -> np.ndarray:
    """Defining representation u(k) = exp(-(i/2) k.sigma)."""
    k = np.asarray(k, dtype=float)
    norm = float(np.linalg.norm(k))
    if norm == 0.0:
        return np.eye(2, dtype=complex)
    axis = k / norm
    half = norm / 2.0
    return np.cos(half) * np.eye(2, dtype=complex) - 1.0j * np.sin(half) * (
        axis[0] * PAULI[0] + axis[1] * PAULI[1] + axis[2] * PAULI[2]
    )


def su2_rotation_vector(u: np.ndarray) -> np.ndarray:
    """Inverse of su2_matrix: the unique k with |k| <= 2*pi and u(k) = u.

    For u = -Id (all axes equivalent) the representative (0, 0, 2*pi) is
    returned.
    """
    a = float(np.real(u[0, 0] + u[1, 1])) / 2.0
    b = np.array([(1.0j / 2.0 * np.trace(p @ u)).real for p in PAULI])
    bnorm = float(np.linalg.norm(b))
    if bnorm < 1e-15:
        if a >= 0.0:
            return np.zeros(3)
        return np.array([0.0, 0.0, 2.0 * np.pi])
    half_angle = float(np.arctan2(bnorm, a))
    return (2.0 * half_angle / bnorm) * b


def su2_compose(k1, k2) -> np.ndarray:
    """Rotation vector of the product u(k1) u(k2)."""
    return su2_rotation_vector(su2_matrix(k1) @ su2_matrix(k2))
