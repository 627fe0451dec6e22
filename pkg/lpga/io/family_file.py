"""
Files with Cuntz-Krieger families of operators.

A family is stored with its measure space, its exponent, and one matrix per
generator:

.. code-block:: json

    {
      "graph": "loop",
      "p": 3.0,
      "space": {"atoms": ["v:0"], "weights": {"v:0": 1.0},
                "vertex_of": {"v:0": "v"}, "edge_support": {"a": ["v:0"]}},
      "phases": {"a": [1.0, 0.0]},
      "S": {"a": {"format": "dense", "shape": [1, 1], "data": [[[1.0, 0.0]]]}},
      "T": {"a": {"format": "dense", "shape": [1, 1], "data": [[[1.0, 0.0]]]}},
      "E": {"v": {"format": "dense", "shape": [1, 1], "data": [[[1.0, 0.0]]]}}
    }

Dense matrices are lists of rows, each entry a pair of real and imaginary
part. Matrices of spaces with :data:`SPARSE_THRESHOLD` or more atoms are
written sparsely as coordinate triplets:

.. code-block:: json

    {"format": "sparse", "shape": [64, 64],
     "entries": [[0, 3, [1.0, 0.0]], [1, 4, [0.0, 1.0]]]}

Both forms are accepted on input, regardless of size. The key ``phases`` is
optional.

As files contain matrices only, spatial systems are recovered by
:func:`lpga.spatial.certificate_from_matrix` when reading. Families read
from files are treated numerically.

Module documentation
====================

"""

import logging

import numpy as np

import lpga.exceptions
import lpga.spatial
from lpga.io import json_file


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

SPARSE_THRESHOLD = 64


def matrix_to_dict(matrix, sparse=None):
    """
    Return a complex matrix in its serialisation format.

    Parameters
    ----------
    matrix : :class:`numpy.ndarray`
        Square complex matrix

    sparse : :class:`bool`
        Whether to use coordinate triplets. If None, matrices with
        :data:`SPARSE_THRESHOLD` or more rows are written sparsely.

    Returns
    -------
    content : :class:`dict`
        Matrix with format, shape, and entries

    """
    matrix = np.asarray(matrix, dtype=complex)
    if sparse is None:
        sparse = matrix.shape[0] >= SPARSE_THRESHOLD
    shape = [int(matrix.shape[0]), int(matrix.shape[1])]
    if sparse:
        rows, columns = np.nonzero(matrix)
        return {
            "format": "sparse",
            "shape": shape,
            "entries": [
                [int(row), int(column), _pair(matrix[row, column])]
                for row, column in zip(rows, columns)
            ],
        }
    return {
        "format": "dense",
        "shape": shape,
        "data": [[_pair(value) for value in row] for row in matrix],
    }


def matrix_from_dict(content):
    """
    Create a complex matrix from its serialisation format.

    Raises
    ------
    lpga.exceptions.FileFormatError
        Raised if format, shape, and entries do not fit together

    """
    try:
        shape = tuple(int(value) for value in content["shape"])
        if len(shape) != 2:
            raise ValueError("Matrices need two dimensions")
        if content.get("format", "dense") == "sparse":
            matrix = np.zeros(shape, dtype=complex)
            for row, column, value in content["entries"]:
                matrix[int(row), int(column)] = _complex(value)
        elif content.get("format", "dense") == "dense":
            matrix = np.asarray(
                [[_complex(value) for value in row] for row in content["data"]],
                dtype=complex,
            ).reshape(shape)
        else:
            raise ValueError(f"Unknown matrix format {content['format']!r}")
    except (KeyError, TypeError, ValueError, IndexError) as error:
        raise lpga.exceptions.FileFormatError(
            f"Malformed matrix: {error}"
        ) from None
    return matrix


def _pair(value):
    value = complex(value)
    return [float(value.real), float(value.imag)]


def _complex(value):
    real, imag = value
    return complex(float(real), float(imag))


class FamilyImporter(json_file.JsonImporter):
    """
    Read a Cuntz-Krieger family of a given graph.

    Attributes
    ----------
    graph : :class:`lpga.graphs.Graph`
        Graph of the family

    Raises
    ------
    lpga.exceptions.FileFormatError
        Raised if generators are missing or matrices do not fit the space

    lpga.exceptions.GraphMismatchError
        Raised if the file names a different graph

    lpga.exceptions.InvalidSystemError
        Raised if the space is inconsistent with the graph

    """

    def __init__(self, source="", graph=None):
        super().__init__(source=source)
        self.graph = graph

    def _import(self):
        name = self.content.get("graph", "")
        if name and self.graph.name and name != self.graph.name:
            raise lpga.exceptions.GraphMismatchError(
                f"Family belongs to graph {name}, not {self.graph.name}"
            )
        p = float(self._require("p", (int, float)))
        space = self._space()
        operators = {}
        for kind, keys in (
            ("S", self.graph.edge_ids),
            ("T", self.graph.edge_ids),
            ("E", self.graph.vertices),
        ):
            generators = self._require(kind, dict)
            operators[kind] = {}
            for key in keys:
                matrix = matrix_from_dict(self._require(key, dict, generators))
                if matrix.shape != (len(space), len(space)):
                    raise lpga.exceptions.FileFormatError(
                        f"Matrix {kind}_{key} does not fit the space"
                    )
                operators[kind][key] = lpga.spatial.SpatialOperator(
                    matrix=matrix,
                    certificate=lpga.spatial.certificate_from_matrix(
                        matrix, space, p
                    ),
                    space=space,
                    p=p,
                )
        phases = {
            key: _complex(value)
            for key, value in self.content.get("phases", {}).items()
        }
        self.result = lpga.spatial.CKFamily(
            graph=self.graph,
            space=space,
            p=p,
            S=operators["S"],
            T=operators["T"],
            E=operators["E"],
            phases=phases,
        )

    def _space(self):
        content = self._require("space", dict)
        space = lpga.spatial.AtomicMeasureSpace(
            atoms=self._require("atoms", list, content),
            weights=content.get("weights", {}),
            vertex_of=self._require("vertex_of", dict, content),
            edge_support=self._require("edge_support", dict, content),
        )
        space.validate(self.graph)
        return space


class FamilyExporter(json_file.JsonExporter):
    """
    Write a Cuntz-Krieger family.

    Attributes
    ----------
    sparse : :class:`bool`
        Whether to write matrices sparsely, if None decided by size

    """

    def __init__(self, target="", sparse=None):
        super().__init__(target=target)
        self.sparse = sparse

    def _to_dict(self, object_):
        return family_to_dict(object_, sparse=self.sparse)


def family_to_dict(family, sparse=None):
    """Return a family in its serialisation format."""
    content = {
        "graph": family.graph.name,
        "p": family.p,
        "space": family.space.to_dict(),
    }
    if family.phases:
        content["phases"] = {
            key: _pair(family.phases[key]) for key in sorted(family.phases)
        }
    for kind in ("S", "T", "E"):
        generators = getattr(family, kind)
        content[kind] = {
            key: matrix_to_dict(generators[key].matrix, sparse=sparse)
            for key in sorted(generators)
        }
    return content
