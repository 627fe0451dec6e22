"""
Operator norms on finite weighted ℓᵖ spaces.

The norm of a matrix *A* acting on :math:`ℓ^p(X, μ)` for a finite set *X*
with positive weights μ is

.. math::

    \\|A\\| = \\sup_{ξ ≠ 0} \\|Aξ\\|_p / \\|ξ\\|_p, \\quad
    \\|ξ\\|_p^p = Σ_x |ξ_x|^p μ_x.

The weights are absorbed by the diagonal similarity
:math:`D^{1/p} A D^{-1/p}`, D the diagonal of weights, which maps the problem
onto unweighted :math:`ℓ^p`.


Methods
=======

Computing p-norms is hard in general. Depending on the matrix, one of the
following methods is used (see :class:`NormMethod`):

* ``exact_p1``: for p = 1, the largest column sum of absolute values.

* ``exact_p2``: for p = 2, the largest singular value.

* ``boyd_nonnegative``: if the matrix has nonnegative entries, possibly
  after conjugation with diagonal unitaries, the nonlinear power method of
  Boyd on each connected block. The upper bound is a Schur test with the
  final iterate, hence the estimate is certified once lower and upper bound
  agree.

* ``sphere_search``: otherwise, the largest value found by ascent from
  seeded random starting vectors. Only the lower bound is meaningful; the
  upper bound given is the smaller of the Riesz-Thorin bound and the norm
  of the matrix of absolute values.


Hermitian idempotents
=====================

An idempotent *e* is hermitian if :math:`\\|\\exp(iλe)\\| ≤ 1` for all real
λ. For idempotents, :math:`\\exp(iλe) = I + (e^{iλ} − 1) e` holds exactly,
hence no matrix exponential is needed. For p ≠ 2, hermitian idempotents on
ℓᵖ spaces are exactly the indicator matrices, and
:func:`hermitian_idempotent_test` decides by this structural criterion.


Module documentation
====================

"""

import dataclasses
import enum
import logging
import warnings

import networkx as nx
import numpy as np
import scipy.linalg

import lpga.exceptions


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

CERTIFICATION_TOLERANCE = 1e-8
STOPPING_TOLERANCE = 1e-10
MAX_ITERATIONS = 10000


class NormMethod(enum.Enum):
    """Method an operator norm estimate was obtained with."""

    EXACT_P1 = "exact_p1"
    EXACT_P2 = "exact_p2"
    BOYD_NONNEGATIVE = "boyd_nonnegative"
    SPHERE_SEARCH = "sphere_search"


@dataclasses.dataclass(frozen=True)
class NormEstimate:
    """
    Enclosure of an operator norm.

    Attributes
    ----------
    lower : :class:`float`
        Lower bound, attained by a vector

    upper : :class:`float`
        Upper bound, None if unknown

    certified : :class:`bool`
        Whether lower and upper bound agree within the certification
        tolerance

    method : :class:`NormMethod`
        Method used

    """

    lower: float
    upper: float = None
    certified: bool = False
    method: NormMethod = NormMethod.SPHERE_SEARCH

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper * (1 + 1e-9) + 1e-12:
            raise ValueError("Lower bound exceeds upper bound")

    @property
    def value(self):
        """Upper bound for certified estimates, lower bound otherwise."""
        if self.certified and self.upper is not None:
            return self.upper
        return self.lower

    def to_dict(self):
        """Return the estimate with the method as string."""
        return {
            "lower": self.lower,
            "upper": self.upper,
            "certified": self.certified,
            "method": self.method.value,
        }


def absorb_weights(matrix, weights, p):
    """Return :math:`D^{1/p} A D^{-1/p}` for D the diagonal of weights."""
    if weights is None:
        return matrix
    scale = np.asarray(weights, dtype=float) ** (1.0 / p)
    return scale[:, None] * matrix / scale[None, :]


def _validate(matrix, weights, p):
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise lpga.exceptions.DimensionError(
            f"Operator needs to be a square matrix, got shape {matrix.shape}"
        )
    if weights is not None:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (matrix.shape[0],):
            raise lpga.exceptions.DimensionError(
                "Number of weights does not match the matrix"
            )
        if np.any(weights <= 0):
            raise ValueError("Weights need to be positive")
    if not p >= 1 or not np.isfinite(p):
        raise ValueError("Exponent p needs to be in [1, ∞)")
    return matrix, weights


def _dual_map(vector, p):
    """Return ψ_p(x) = |x|^{p−1} sign(x)."""
    modulus = np.abs(vector)
    phase = np.ones_like(vector)
    nonzero = modulus > 0
    phase[nonzero] = vector[nonzero] / modulus[nonzero]
    return phase * modulus ** (p - 1)


def _norm(vector, p):
    return float(np.sum(np.abs(vector) ** p) ** (1.0 / p))


def _blocks(matrix, tolerance=0.0):
    """Connected blocks of the bipartite support graph as (rows, columns)."""
    support = nx.Graph()
    rows, columns = np.nonzero(np.abs(matrix) > tolerance)
    for row, column in zip(rows, columns):
        support.add_edge(("row", int(row)), ("column", int(column)))
    blocks = []
    for component in nx.connected_components(support):
        block_rows = sorted(index for kind, index in component if kind == "row")
        block_columns = sorted(index for kind, index in component if kind == "column")
        blocks.append((block_rows, block_columns))
    return sorted(blocks)


def phase_conjugate_to_nonnegative(matrix, tolerance=1e-12):
    """
    Whether diagonal unitaries U, V exist with ``U A V`` nonnegative.

    The phases are propagated along a spanning tree of each block of the
    bipartite support graph and checked on all remaining entries.
    """
    for rows, columns in _blocks(matrix):
        row_phase = {rows[0]: 1.0 + 0j}
        column_phase = {}
        pending = [("row", rows[0])]
        while pending:
            kind, index = pending.pop()
            if kind == "row":
                for column in columns:
                    entry = matrix[index, column]
                    if entry != 0 and column not in column_phase:
                        column_phase[column] = (
                            row_phase[index].conjugate() * entry / abs(entry)
                        )
                        pending.append(("column", column))
            else:
                for row in rows:
                    entry = matrix[row, index]
                    if entry != 0 and row not in row_phase:
                        row_phase[row] = (
                            column_phase[index].conjugate() * entry / abs(entry)
                        )
                        pending.append(("row", row))
        for row in rows:
            for column in columns:
                entry = matrix[row, column]
                if entry == 0:
                    continue
                rotated = row_phase[row].conjugate() * entry
                rotated *= column_phase[column].conjugate()
                if abs(rotated - abs(entry)) > tolerance * max(1.0, abs(entry)):
                    return False
    return True


def _boyd_block(block, p):
    """Boyd iteration on a nonnegative block; returns (lower, upper, converged)."""
    rows, columns = block.shape
    if rows == 1 or columns == 1:
        if columns == 1:
            value = _norm(block[:, 0], p)
        else:
            value = _norm(block[0, :], p / (p - 1))
        return value, value, True
    vector = np.ones(columns) / columns ** (1.0 / p)
    dual = p / (p - 1)
    estimate = 0.0
    converged = False
    for _ in range(MAX_ITERATIONS):
        image = block @ vector
        new_estimate = _norm(image, p)
        step = np.real(_dual_map(block.T @ _dual_map(image, p), dual))
        vector = step / _norm(step, p)
        if abs(new_estimate - estimate) <= STOPPING_TOLERANCE * new_estimate:
            estimate = new_estimate
            converged = True
            break
        estimate = new_estimate
    image = block @ vector
    lower = _norm(image, p)
    positive = np.where(vector > 0, vector, np.inf)
    ratios = (block.T @ image ** (p - 1)) / positive ** (p - 1)
    if np.any(vector <= 0):
        upper = np.inf
    else:
        upper = float(np.max(ratios)) ** (1.0 / p)
    return lower, max(upper, lower), converged


def _boyd(matrix, p):
    lower = upper = 0.0
    converged = True
    for rows, columns in _blocks(matrix):
        block = np.abs(matrix[np.ix_(rows, columns)])
        block_lower, block_upper, block_converged = _boyd_block(block, p)
        lower = max(lower, block_lower)
        upper = max(upper, block_upper)
        converged = converged and block_converged
    return lower, upper, converged


def _riesz_thorin(matrix, p):
    modulus = np.abs(matrix)
    one = float(np.max(modulus.sum(axis=0), initial=0.0))
    infinity = float(np.max(modulus.sum(axis=1), initial=0.0))
    return one ** (1.0 / p) * infinity ** (1.0 - 1.0 / p)


def _sphere_search(matrix, p, rng, starts):
    dual = p / (p - 1)
    size = matrix.shape[1]
    adjoint = matrix.conj().T
    best = 0.0
    for _ in range(starts):
        vector = rng.normal(size=size) + 1j * rng.normal(size=size)
        vector /= _norm(vector, p)
        value = _norm(matrix @ vector, p)
        for _ in range(200):
            step = _dual_map(adjoint @ _dual_map(matrix @ vector, p), dual)
            length = _norm(step, p)
            if length == 0:
                break
            vector = step / length
            new_value = _norm(matrix @ vector, p)
            if new_value <= value * (1 + STOPPING_TOLERANCE):
                value = max(value, new_value)
                break
            value = new_value
        best = max(best, value)
    return best


def opnorm(matrix, weights=None, p=2.0, seed=0, starts=32):
    """
    Estimate the norm of a matrix on a weighted ℓᵖ space.

    Parameters
    ----------
    matrix : :class:`numpy.ndarray`
        Square complex matrix

    weights : :class:`numpy.ndarray`
        Positive weights of the coordinates, unit weights if None

    p : :class:`float`
        Exponent in [1, ∞)

    seed : :class:`int`
        Seed of the random starting vectors of the sphere search

    starts : :class:`int`
        Number of random starting vectors of the sphere search

        Default: 32

    Returns
    -------
    estimate : :class:`NormEstimate`
        Lower and upper bound together with the method used

    Raises
    ------
    lpga.exceptions.DimensionError
        Raised if the matrix is not square or weights do not fit

    ValueError
        Raised if p < 1

    """
    matrix, weights = _validate(matrix, weights, p)
    matrix = absorb_weights(matrix, weights, p)
    if not np.any(matrix):
        method = NormMethod.EXACT_P1 if p == 1 else NormMethod.EXACT_P2
        return NormEstimate(lower=0.0, upper=0.0, certified=True, method=method)
    if p == 1:
        value = float(np.max(np.abs(matrix).sum(axis=0)))
        return NormEstimate(
            lower=value, upper=value, certified=True, method=NormMethod.EXACT_P1
        )
    if p == 2:
        value = float(scipy.linalg.svdvals(matrix)[0])
        return NormEstimate(
            lower=value, upper=value, certified=True, method=NormMethod.EXACT_P2
        )
    if phase_conjugate_to_nonnegative(matrix):
        lower, upper, converged = _boyd(matrix, p)
        certified = converged and upper - lower <= CERTIFICATION_TOLERANCE * upper
        if not certified:
            logger.warning(
                "Boyd iteration not certified (lower %g, upper %g)", lower, upper
            )
        return NormEstimate(
            lower=lower,
            upper=upper,
            certified=certified,
            method=NormMethod.BOYD_NONNEGATIVE,
        )
    rng = np.random.default_rng(seed)
    lower = _sphere_search(matrix, p, rng, starts)
    _, majorant, _ = _boyd(matrix, p)
    upper = min(_riesz_thorin(matrix, p), majorant)
    logger.info("Falling back to sphere search, estimate is uncertified")
    return NormEstimate(
        lower=lower,
        upper=max(upper, lower),
        certified=False,
        method=NormMethod.SPHERE_SEARCH,
    )


@dataclasses.dataclass
class HermitianReport:
    """
    Outcome of :func:`hermitian_idempotent_test`.

    Attributes
    ----------
    is_idempotent : :class:`bool`
        Whether ``e² = e`` within tolerance

    is_hermitian : :class:`bool`
        Verdict: idempotent and hermitian

    max_exp_norm : :class:`float`
        Largest estimated norm of ``exp(iλe)`` over the sampled λ

    structural_indicator : :class:`list`
        Indices of the indicator set if e is an indicator matrix, else None

    certified : :class:`bool`
        Whether all norm estimates were certified

    residual : :class:`float`
        Largest entry of ``e² − e``

    """

    is_idempotent: bool = False
    is_hermitian: bool = False
    max_exp_norm: float = 0.0
    structural_indicator: list = None
    certified: bool = True
    residual: float = 0.0

    def to_dict(self):
        """Return the report as dict."""
        return dataclasses.asdict(self)


def indicator_set(matrix, tolerance=1e-12):
    """Indices where a 0/1 diagonal matrix is one, None if not such a matrix."""
    matrix = np.asarray(matrix, dtype=complex)
    diagonal = np.diag(matrix)
    if np.max(np.abs(matrix - np.diag(diagonal)), initial=0.0) > tolerance:
        return None
    ones = np.abs(diagonal - 1.0) <= tolerance
    zeros = np.abs(diagonal) <= tolerance
    if not np.all(ones | zeros):
        return None
    return [int(index) for index in np.flatnonzero(ones)]


def sample_phases(rng, samples):
    """Return λ ∈ {±2^j : j = −3..3} together with uniform samples in (−π, π)."""
    fixed = [sign * 2.0**j for j in range(-3, 4) for sign in (1, -1)]
    return fixed + list(rng.uniform(-np.pi, np.pi, size=samples))


def hermitian_idempotent_test(
    matrix, weights=None, p=2.0, samples=16, seed=0, tolerance=1e-9
):
    """
    Test whether a matrix is a hermitian idempotent.

    Parameters
    ----------
    matrix : :class:`numpy.ndarray`
        Square matrix

    weights : :class:`numpy.ndarray`
        Positive weights, unit weights if None

    p : :class:`float`
        Exponent in [1, ∞)

    samples : :class:`int`
        Number of uniformly drawn λ, at least 8, on top of the fixed ones

    seed : :class:`int`
        Seed for drawing λ and for norm estimates

    tolerance : :class:`float`
        Tolerance of the idempotency check

    Returns
    -------
    report : :class:`HermitianReport`
        For p = 2 the verdict is self-adjointness in the weighted inner
        product, otherwise the structural indicator test. The norm bound of
        the exponentials is reported as corroboration.

    """
    if samples < 8:
        raise ValueError("At least 8 samples are needed")
    matrix, weights = _validate(matrix, weights, p)
    size = matrix.shape[0]
    residual = float(np.max(np.abs(matrix @ matrix - matrix), initial=0.0))
    report = HermitianReport(residual=residual, is_idempotent=residual <= tolerance)
    report.structural_indicator = indicator_set(matrix)
    rng = np.random.default_rng(seed)
    identity = np.eye(size, dtype=complex)
    for lam in sample_phases(rng, samples):
        exponential = identity + (np.exp(1j * lam) - 1.0) * matrix
        estimate = opnorm(exponential, weights, p, seed=seed)
        report.max_exp_norm = max(report.max_exp_norm, estimate.value)
        report.certified = report.certified and estimate.certified
    if p == 2:
        absorbed = absorb_weights(matrix, weights, p)
        asymmetry = np.max(np.abs(absorbed - absorbed.conj().T), initial=0.0)
        report.is_hermitian = report.is_idempotent and bool(asymmetry <= tolerance)
    else:
        report.is_hermitian = (
            report.is_idempotent and report.structural_indicator is not None
        )
    if report.is_hermitian and report.max_exp_norm > 1 + 1e-6:
        warnings.warn(
            "Exponential norm exceeds one for a structurally hermitian idempotent"
        )
    return report
