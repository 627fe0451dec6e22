"""
Analysis steps for operators on weighted ℓᵖ spaces.

Analysis steps, in contrast to representing elements, do not change the
matrix of an :class:`lpga.dataset.OperatorDataset`, but compute a quantity
from it, stored as result of the step. Following the ASpecD framework,
analysis steps are performed by the dataset:

.. code-block::

    dataset = lpga.dataset.OperatorDataset.from_matrix(matrix, p=3)
    norm = dataset.analyse(lpga.analysis.OperatorNorm())
    norm.result  # a NormEstimate

This way, each step ends up in the history of the dataset.


Analysis steps
==============

* :class:`OperatorNorm`

  Norm estimate of the operator, see :func:`lpga.pnorm.opnorm`.

* :class:`HermitianIdempotency`

  Test whether the operator is a hermitian idempotent, see
  :func:`lpga.pnorm.hermitian_idempotent_test`.


Module documentation
====================

"""

import aspecd.analysis

import lpga.pnorm


class OperatorNorm(aspecd.analysis.SingleAnalysisStep):
    # noinspection PyUnresolvedReferences
    """
    Estimate the operator norm of the matrix of a dataset.

    For p = 1 and p = 2 the norm is computed exactly. Matrices that are
    conjugate to nonnegative matrices by phases are treated with the
    power method of Boyd, yielding certified bounds in general. All other
    matrices get a lower bound from a search over the unit sphere, not
    certified.

    The result is a :class:`lpga.pnorm.NormEstimate`.

    Attributes
    ----------
    parameters : :class:`dict`
        All parameters necessary for this step.

        p : :class:`float`
            Exponent overriding the one of the dataset

            Default: None

        seed : :class:`int`
            Seed of the random starting vectors of the sphere search

            Default: 0

        starts : :class:`int`
            Number of starting vectors of the sphere search

            Default: 32

    Raises
    ------
    ValueError
        Raised if p < 1

    Examples
    --------
    Estimate the norm of a represented element for p = 3:

    .. code-block::

        dataset = OperatorDataset.from_family(represent(x, family), family)
        step = OperatorNorm()
        step.parameters["p"] = 3
        step = dataset.analyse(step)

    """

    def __init__(self):
        super().__init__()
        self.description = "Estimate operator norm on weighted lp space"
        self.parameters["p"] = None
        self.parameters["seed"] = 0
        self.parameters["starts"] = 32

    @staticmethod
    def applicable(dataset):
        """
        Check whether analysis step is applicable to the given dataset.

        Norms are defined for square matrices only.

        Parameters
        ----------
        dataset : :class:`aspecd.dataset.Dataset`
            Dataset to check

        Returns
        -------
        applicable : :class:`bool`
            Whether dataset is applicable

        """
        shape = dataset.data.data.shape
        return len(shape) == 2 and shape[0] == shape[1]

    def _sanitise_parameters(self):
        if self.parameters["p"] is not None and self.parameters["p"] < 1:
            raise ValueError("Exponent p needs to be at least one")

    def _perform_task(self):
        p = self.parameters["p"] or self.dataset.p
        self.result = lpga.pnorm.opnorm(
            self.dataset.data.data,
            weights=self.dataset.weights,
            p=p,
            seed=self.parameters["seed"],
            starts=self.parameters["starts"],
        )


class HermitianIdempotency(aspecd.analysis.SingleAnalysisStep):
    """
    Test whether the matrix of a dataset is a hermitian idempotent.

    An idempotent *e* is hermitian if :math:`\\|\\exp(iλe)\\| ≤ 1` for
    all real λ. For p = 2 this means self-adjointness in the weighted inner
    product, for p ≠ 2 it means being an indicator matrix.

    The result is a :class:`lpga.pnorm.HermitianReport`.

    Attributes
    ----------
    parameters : :class:`dict`
        All parameters necessary for this step.

        samples : :class:`int`
            Number of randomly drawn λ, at least 8

            Default: 16

        seed : :class:`int`
            Seed for drawing λ

            Default: 0

        tolerance : :class:`float`
            Tolerance of the idempotency check

            Default: 1e-9

    Raises
    ------
    ValueError
        Raised if fewer than 8 samples are requested

    """

    def __init__(self):
        super().__init__()
        self.description = "Test for hermitian idempotent"
        self.parameters["samples"] = 16
        self.parameters["seed"] = 0
        self.parameters["tolerance"] = 1e-9

    @staticmethod
    def applicable(dataset):
        """Check whether the dataset holds a square matrix."""
        return OperatorNorm.applicable(dataset)

    def _sanitise_parameters(self):
        if self.parameters["samples"] < 8:
            raise ValueError("At least 8 samples are needed")

    def _perform_task(self):
        self.result = lpga.pnorm.hermitian_idempotent_test(
            self.dataset.data.data,
            weights=self.dataset.weights,
            p=self.dataset.p,
            samples=self.parameters["samples"],
            seed=self.parameters["seed"],
            tolerance=self.parameters["tolerance"],
        )
