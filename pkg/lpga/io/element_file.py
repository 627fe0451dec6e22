"""
Files with elements of Leavitt path algebras.

An element is stored as list of terms, each term consisting of the two
paths of its monomial ``s_α t_β`` and its coefficient:

.. code-block:: json

    {
      "graph": "loop",
      "terms": [
        {"alpha": ["a"], "beta": [], "base_alpha": "v", "base_beta": "v",
         "re": "1", "im": "0"},
        {"alpha": [], "beta": [], "base_alpha": "v", "base_beta": "v",
         "re": "-1/2", "im": "0"}
      ]
    }

Paths are given as lists of edge ids, ``α₁`` first. The base vertices are
the ranges of the paths, needed to tell the vertices apart. Exact
coefficients are written as rational strings, numeric coefficients as
numbers. When reading, an element is exact if all coefficients are strings.

Module documentation
====================

"""

import lpga.exceptions
import lpga.leavitt
import lpga.utils
from lpga.io import json_file


class ElementImporter(json_file.JsonImporter):
    """
    Read an algebra element of a given graph.

    Attributes
    ----------
    graph : :class:`lpga.graphs.Graph`
        Graph of the algebra the element belongs to

    parameters : :class:`dict`
        Parameters controlling the import

        exact : :class:`bool` | None
            Whether to create an exact element. If None, exactness is
            detected from the type of the coefficients.

            Default: None

    Raises
    ------
    lpga.exceptions.FileFormatError
        Raised if the file is malformed

    lpga.exceptions.GraphMismatchError
        Raised if the file names a different graph

    lpga.exceptions.NoSuchPathError
        Raised if a path does not exist in the graph

    """

    def __init__(self, source="", graph=None):
        super().__init__(source=source)
        self.graph = graph
        self.parameters["exact"] = None

    def _import(self):
        name = self.content.get("graph", "")
        if name and self.graph.name and name != self.graph.name:
            raise lpga.exceptions.GraphMismatchError(
                f"Element belongs to graph {name}, not {self.graph.name}"
            )
        terms = self._require("terms", list)
        exact = self.parameters["exact"]
        if exact is None:
            exact = all(
                isinstance(term.get(key, "0"), str)
                for term in terms
                if isinstance(term, dict)
                for key in ("re", "im")
            )
        algebra = lpga.leavitt.LeavittAlgebra(self.graph, exact=exact)
        element = algebra.zero()
        for term in terms:
            if not isinstance(term, dict):
                raise lpga.exceptions.FileFormatError("Terms need to be objects")
            element = element + algebra.from_monomial(
                self._monomial(algebra, term), self._coefficient(term)
            )
        self.result = element

    def _monomial(self, algebra, term):
        alpha = self._require("alpha", list, content=term)
        beta = self._require("beta", list, content=term)
        try:
            return algebra.monomial(
                alpha,
                beta,
                base_alpha=term.get("base_alpha"),
                base_beta=term.get("base_beta"),
            )
        except ValueError as error:
            raise lpga.exceptions.FileFormatError(str(error)) from None

    @staticmethod
    def _coefficient(term):
        pair = (term.get("re", "0"), term.get("im", "0"))
        for value in pair:
            if isinstance(value, bool) or not isinstance(value, (str, int, float)):
                raise lpga.exceptions.FileFormatError(
                    f"Coefficient {pair} is not a number"
                )
        try:
            lpga.utils.parse_rational(pair[0])
            lpga.utils.parse_rational(pair[1])
        except (ValueError, ZeroDivisionError, OverflowError):
            raise lpga.exceptions.FileFormatError(
                f"Coefficient {pair} is not a number"
            ) from None
        return pair


class ElementExporter(json_file.JsonExporter):
    """Write an algebra element, terms in canonical order."""

    def _to_dict(self, object_):
        return element_to_dict(object_)


def element_to_dict(element):
    """Return an element in its serialisation format."""
    field = element.field
    terms = []
    for monomial, coefficient in element.sorted_terms():
        real, imag = field.to_strings(coefficient)
        terms.append(
            {
                "alpha": list(monomial.alpha.edges),
                "beta": list(monomial.beta.edges),
                "base_alpha": monomial.alpha.base,
                "base_beta": monomial.beta.base,
                "re": real,
                "im": imag,
            }
        )
    return {"graph": element.algebra.graph.name, "terms": terms}
