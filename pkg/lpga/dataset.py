"""
Datasets: units containing represented operators and their context.

A represented algebra element is a matrix acting on a weighted ℓᵖ space of
atoms. Norms and the hermitian property depend on the weights and the
exponent, hence these belong to the data just as the matrix does. The
:class:`OperatorDataset` unites the three, so that analysis steps (see
:mod:`lpga.analysis`) can be applied the way the ASpecD framework does it,
with a full history of every step performed.

Datasets
========

  * :class:`lpga.dataset.OperatorDataset`


Module documentation
====================
"""

import aspecd.dataset
import numpy as np

import lpga.exceptions


class OperatorDataset(aspecd.dataset.CalculatedDataset):
    """
    Square matrix on a weighted ℓᵖ space.

    The matrix is stored as the data of the dataset, so that the ASpecD
    machinery (history, analysis steps) applies.

    Attributes
    ----------
    weights : :class:`numpy.ndarray`
        Positive weight per coordinate

    p : :class:`float`
        Exponent of the ℓᵖ space

    labels : :class:`list`
        Names of the coordinates, *e.g.* the atoms of a measure space

    Examples
    --------
    .. code-block::

        dataset = OperatorDataset.from_matrix(matrix, p=3)
        step = dataset.analyse(lpga.analysis.OperatorNorm())
        step.result.value

    """

    def __init__(self):
        super().__init__()
        self.weights = np.zeros(0)
        self.p = 2.0
        self.labels = []

    @classmethod
    def from_matrix(cls, matrix, weights=None, p=2.0, labels=None, label=""):
        """
        Create a dataset from a matrix.

        Parameters
        ----------
        matrix : :class:`numpy.ndarray`
            Square matrix

        weights : :class:`numpy.ndarray`
            Positive weights, unit weights if None

        p : :class:`float`
            Exponent, at least one

        labels : :class:`list`
            Coordinate names, numbered if None

        label : :class:`str`
            Label of the dataset

        Raises
        ------
        lpga.exceptions.DimensionError
            Raised if the matrix is not square or weights do not fit

        ValueError
            Raised if p < 1

        """
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise lpga.exceptions.DimensionError("Matrix needs to be square")
        size = matrix.shape[0]
        if weights is None:
            weights = np.ones(size)
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (size,):
            raise lpga.exceptions.DimensionError(
                "Weights do not fit the matrix"
            )
        if p < 1:
            raise ValueError("Exponent p needs to be at least one")
        dataset = cls()
        dataset.data.data = matrix
        dataset.weights = weights
        dataset.p = float(p)
        dataset.labels = list(labels) if labels else [str(i) for i in range(size)]
        dataset.label = label
        dataset.metadata.calculation.type = "spatial representation"
        dataset.metadata.calculation.parameters = {"p": dataset.p}
        return dataset

    @classmethod
    def from_family(cls, matrix, family, label=""):
        """Create a dataset for a matrix represented with a family."""
        return cls.from_matrix(
            matrix,
            weights=family.space.weight_vector(),
            p=family.p,
            labels=family.space.atoms,
            label=label,
        )

    @property
    def matrix(self):
        """Matrix stored as data."""
        return self.data.data
