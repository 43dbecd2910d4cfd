"""Canonical qubit channels realizing a prescribed admissible spectrum.

Two constructions cover every qubit spectrum consistent with the necessary CP
conditions: a convex mixture of a classical doubly stochastic channel and a
diagonal phase unitary (for spectra with a conjugate pair), and a real normal
superoperator (for all-real spectra).  Both are exact: eigenvalues are placed
by construction, not by optimization.
"""

import numpy as np

from .channel import Superoperator, TransferMatrix
from .criteria import complex_pair_disc, real_tetrahedron
from .exceptions import NotRealizableError

_BOUNDARY_SLACK = 1e-9


def classical_channel(a: float) -> Superoperator:
    """Classical doubly stochastic channel mixing the populations.

    Superoperator has corners ``{a, 1-a; 1-a, a}`` and a vanishing middle
    block; eigenvalues ``{1, 2a-1, 0, 0}``.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {a}")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = a
    m[0, 3] = m[3, 0] = 1.0 - a
    return Superoperator(dim=2, matrix=m)


def phase_unitary_channel(alpha: float) -> Superoperator:
    """Phase rotation about the computational basis: ``diag(1, e^{-ia}, e^{ia}, 1)``."""
    return Superoperator(
        dim=2,
        matrix=np.diag([1.0, np.exp(-1j * alpha), np.exp(1j * alpha), 1.0]),
    )


def mixture_channel(p: float, a: float, alpha: float) -> Superoperator:
    """Convex mixture ``p * classical + (1 - p) * phase unitary``.

    CPTP by construction; eigenvalues ``{1, 1 - 2p(1-a), (1-p) e^{-+ i alpha}}``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixture weight must lie in [0, 1], got {p}")
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {a}")
    matrix = p * classical_channel(a).matrix + (1.0 - p) * phase_unitary_channel(alpha).matrix
    return Superoperator(dim=2, matrix=matrix)


def synthesize_from_complex_pair(x: float, z: complex) -> Superoperator:
    """Channel with spectrum ``{1, x, z, conj(z)}`` for a genuine complex pair.

    Realized as :func:`mixture_channel` with ``p = 1 - |z|``,
    ``a = (x - 2|z| + 1) / (2 - 2|z|)`` and ``alpha = arg z``.  At ``|z| = 1``
    the disc condition forces ``x = 1`` and the mixture degenerates to the
    phase unitary, which is returned directly.

    Raises
    ------
    NotRealizableError
        If ``Im z = 0``, ``|x| > 1``, or the disc condition
        ``|z| <= (1 + x)/2`` fails.
    """
    z = complex(z)
    if z.imag == 0.0:
        raise NotRealizableError(
            "spectrum with a real pair belongs to the all-real construction",
            inequality="Im z != 0",
        )
    if abs(x) > 1.0:
        raise NotRealizableError(
            f"real eigenvalue {x} outside the unit interval", inequality="|x| <= 1"
        )
    verdict = complex_pair_disc(x, z)
    if not verdict.satisfied:
        raise NotRealizableError(
            f"|z| = {abs(z):.6g} exceeds the admissible radius {(1 + x) / 2:.6g}",
            inequality="|z| <= (1 + x)/2",
        )
    radius = abs(z)
    alpha = float(np.angle(z))
    if radius >= 1.0 - 1e-15:
        return phase_unitary_channel(alpha)
    p = 1.0 - radius
    a = (x - 2.0 * radius + 1.0) / (2.0 - 2.0 * radius)
    # float slop near the disc boundary maps to a slightly outside [0, 1]
    if -_BOUNDARY_SLACK <= a < 0.0:
        a = 0.0
    elif 1.0 < a <= 1.0 + _BOUNDARY_SLACK:
        a = 1.0
    return mixture_channel(p, a, alpha)


def xi_from_real_spectrum(l1: float, l2: float, l3: float) -> Superoperator:
    """Real normal superoperator with spectrum ``{1, l1, l2, l3}``.

    The matrix is symmetric with corner block ``(1 +- l1)/2`` and middle block
    ``(l2 +- l3)/2``; it is a valid channel exactly on the admissible
    tetrahedron.

    Raises
    ------
    NotRealizableError
        If the tetrahedron condition fails.
    """
    verdict = real_tetrahedron(l1, l2, l3)
    if not verdict.satisfied:
        raise NotRealizableError(
            f"real triple ({l1}, {l2}, {l3}) violates the tetrahedron condition "
            f"by {-verdict.margin:.3e}",
            inequality="1 +- l1 +- l2 +- l3 >= 0",
        )
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = (1.0 + l1) / 2.0
    m[0, 3] = m[3, 0] = (1.0 - l1) / 2.0
    m[1, 1] = m[2, 2] = (l2 + l3) / 2.0
    m[1, 2] = m[2, 1] = (l3 - l2) / 2.0
    return Superoperator(dim=2, matrix=m)


def det_saturating_transfer() -> TransferMatrix:
    """Exact block form of the determinant-saturating channel: k = 0, T = -1/3."""
    return TransferMatrix.from_blocks(np.zeros(3), np.diag([-1.0 / 3.0] * 3), dim=2)


def det_saturating_channel() -> Superoperator:
    """Unital qubit channel whose Bloch-map determinant attains the minimum -1/27.

    Block form ``k = 0``, ``T = -identity/3`` (see
    :func:`det_saturating_transfer`); acting as
    ``rho -> (2/3) Tr[rho] - rho / 3``.  The Choi spectrum is
    ``{0, 2/3, 2/3, 2/3}``, so the channel sits exactly on the CP boundary.
    The superoperator entries are written out directly to keep the Bloch-map
    determinant at the float closest to -1/27.
    """
    third = 1.0 / 3.0
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = third
    m[0, 3] = m[3, 0] = 2.0 * third
    m[1, 1] = m[2, 2] = -third
    return Superoperator(dim=2, matrix=m)
