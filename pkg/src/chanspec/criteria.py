"""Necessary complete-positivity criteria for qubit channels.

Every test here is one-directional: a violated verdict certifies the channel
(or candidate spectrum) cannot be completely positive, while a satisfied
verdict is inconclusive.  The single documented exception is a normal Bloch
map, whose singular values equal its eigenvalue moduli, making
:func:`theorem1_spectral` sufficient as well.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import UnsupportedDimensionError
from .spectra import EtaTriple, SingularTriple, Spectrum

VERDICT_ATOL = 1e-12
DET_SIGN_BAND = 1e-12


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one inequality test.

    ``margin`` is the smallest slack among the inequalities tested (negative
    when violated); ``branch`` names the determinant-sign branch that was
    evaluated.  ``satisfied`` is equivalent to ``margin >= -1e-12``.
    """

    criterion: str
    satisfied: bool
    margin: float
    branch: str = ""


def _verdict(criterion: str, margin: float, branch: str = "") -> CriterionVerdict:
    margin = float(margin)
    return CriterionVerdict(
        criterion=criterion,
        satisfied=margin >= -VERDICT_ATOL,
        margin=margin,
        branch=branch,
    )


def _as_triple(values) -> np.ndarray:
    if isinstance(values, (EtaTriple, SingularTriple)):
        return values.as_array()
    arr = np.asarray(values, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected three values, got shape {arr.shape}")
    return arr


def quadruple_product(eta) -> float:
    """Product of the four factors ``(1 +- eta_1 +- eta_2 +- eta_3)`` with an
    even number of minus signs."""
    e1, e2, e3 = _as_triple(eta)
    return float(
        (1.0 + e1 + e2 + e3)
        * (1.0 + e1 - e2 - e3)
        * (1.0 - e1 + e2 - e3)
        * (1.0 - e1 - e2 + e3)
    )


def fa_conditions(eta) -> CriterionVerdict:
    """Exact unital-qubit CP test in the signed triple: ``1 +- eta_3 >= |eta_1 +- eta_2|``.

    The four linear slacks are the factors of :func:`quadruple_product`; the
    margin is their minimum.
    """
    e1, e2, e3 = _as_triple(eta)
    slacks = (
        1.0 + e1 + e2 + e3,
        1.0 + e1 - e2 - e3,
        1.0 - e1 + e2 - e3,
        1.0 - e1 - e2 + e3,
    )
    return _verdict("fa_conditions", min(slacks))


def _fa_singular_margin(s: np.ndarray, positive_branch: bool) -> float:
    total = float(np.sum(s))
    if positive_branch:
        return 1.0 - total + 2.0 * float(np.min(s))
    return 1.0 - total


def fa_singular(s, det_sign) -> CriterionVerdict:
    """The same test rewritten in decreasing singular values plus a determinant sign.

    ``det_sign`` is +1, 0 or -1 (the sign of ``det T``).  For a positive
    determinant the condition reads ``1 - s1 - s2 - s3 + 2*min(s) >= 0``, for a
    negative one ``1 - s1 - s2 - s3 >= 0``; at zero both coincide and the
    larger margin is reported.
    """
    arr = _as_triple(s)
    if np.any(np.diff(arr) > 0) or arr[2] < 0:
        raise ValueError(f"singular values must be decreasing and nonnegative: {arr}")
    det_sign = float(det_sign)
    if det_sign > DET_SIGN_BAND:
        return _verdict("fa_singular", _fa_singular_margin(arr, True), branch="+")
    if det_sign < -DET_SIGN_BAND:
        return _verdict("fa_singular", _fa_singular_margin(arr, False), branch="-")
    margin = max(_fa_singular_margin(arr, True), _fa_singular_margin(arr, False))
    return _verdict("fa_singular", margin, branch="0")


def _spectral_product(sp: Spectrum) -> float:
    values = sp.non_unit_values()
    return float(np.prod(values).real)


def theorem1(sp: Spectrum) -> CriterionVerdict:
    """Gauge-invariant necessary CP test on the moduli of the non-unit eigenvalues.

    For a nonnegative eigenvalue product the test is
    ``1 - (m1 + m2 + m3) + 2*min(m) >= 0``; for a negative product the last
    term is dropped.  Violation certifies non-CP; satisfaction is inconclusive
    (sufficient only when the Bloch map is normal).
    """
    if sp.dim != 2:
        raise UnsupportedDimensionError(f"theorem1 needs a qubit spectrum, got dim {sp.dim}")
    moduli = np.abs(sp.non_unit_values())
    product = _spectral_product(sp)
    if product >= 0.0:
        margin = 1.0 - float(np.sum(moduli)) + 2.0 * float(np.min(moduli))
        return _verdict("theorem1", margin, branch="+")
    return _verdict("theorem1", 1.0 - float(np.sum(moduli)), branch="-")


def real_tetrahedron(l1: float, l2: float, l3: float) -> CriterionVerdict:
    """Tetrahedron condition for all-real qubit eigenvalues."""
    slacks = (
        1.0 + l1 + l2 + l3,
        1.0 + l1 - l2 - l3,
        1.0 - l1 + l2 - l3,
        1.0 - l1 - l2 + l3,
    )
    return _verdict("real_tetrahedron", min(slacks))


def complex_pair_disc(x: float, z: complex) -> CriterionVerdict:
    """Disc condition ``|z| <= (1 + x) / 2`` for a conjugate-pair qubit spectrum.

    Requires ``|x| <= 1``; beyond that the unit-disk property is already
    violated and the verdict reports the unit-disk slack instead.
    """
    if abs(x) > 1.0 + VERDICT_ATOL:
        return _verdict("complex_pair_disc", 1.0 - abs(x), branch="unit-disk")
    return _verdict("complex_pair_disc", (1.0 + x) / 2.0 - abs(z))


def det_range_check(sp: Spectrum) -> CriterionVerdict:
    """Product of the non-unit eigenvalues must lie in ``[-1/27, 1]``."""
    if sp.dim != 2:
        raise UnsupportedDimensionError(
            f"det_range_check needs a qubit spectrum, got dim {sp.dim}"
        )
    product = _spectral_product(sp)
    return _verdict("det_range_check", min(product + 1.0 / 27.0, 1.0 - product))


def k_norm_bound(sp: Spectrum) -> float:
    """Upper bound on the squared translation norm of any CP channel with this spectrum.

    Returns ``1 - |l1|^2 - |l2|^2 - |l3|^2 + 2*l1*l2*l3``.  A value below
    ``-1e-12`` certifies that no completely positive channel has this
    spectrum; a value of zero forces any such channel to be unital.
    """
    if sp.dim != 2:
        raise UnsupportedDimensionError(f"k_norm_bound needs a qubit spectrum, got dim {sp.dim}")
    values = sp.non_unit_values()
    return float(1.0 - np.sum(np.abs(values) ** 2) + 2.0 * _spectral_product(sp))


def z_condition(eta, k) -> CriterionVerdict:
    """Translation-aware quartic condition in the signed triple.

    ``Z = |k|^4 - 2|k|^2 - 2 sum_i eta_i^2 (2 k_i^2 - |k|^2) + q(eta)`` with
    ``q`` the quadruple product; the verdict margin is ``Z`` itself.
    """
    e = _as_triple(eta)
    kv = np.asarray(k, dtype=float)
    if kv.shape != (3,):
        raise ValueError(f"translation must be a 3-vector, got shape {kv.shape}")
    norm_sq = float(kv @ kv)
    coupling = float(np.sum(e**2 * (2.0 * kv**2 - norm_sq)))
    margin = norm_sq**2 - 2.0 * norm_sq - 2.0 * coupling + quadruple_product(e)
    return _verdict("z_condition", margin)


def z_condition_singular(s, k, det_sign) -> CriterionVerdict:
    """Quartic condition in singular values and a determinant sign.

    Positive branch: ``Z(s) >= 0``.  Negative branch: ``Z(s) - 16*det T >= 0``
    with ``det T = -s1*s2*s3``.  At zero determinant both branches agree and
    the larger margin is reported.
    """
    arr = _as_triple(s)
    if np.any(np.diff(arr) > 0) or arr[2] < 0:
        raise ValueError(f"singular values must be decreasing and nonnegative: {arr}")
    base = z_condition(arr, k).margin
    det_sign = float(det_sign)
    negative_margin = base + 16.0 * float(np.prod(arr))
    if det_sign > DET_SIGN_BAND:
        return _verdict("z_condition_singular", base, branch="+")
    if det_sign < -DET_SIGN_BAND:
        return _verdict("z_condition_singular", negative_margin, branch="-")
    return _verdict("z_condition_singular", max(base, negative_margin), branch="0")
