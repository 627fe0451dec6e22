"""
Graph files.

A graph is stored as JSON object with the vertices and the edges, each edge
with its id, source, and range:

.. code-block:: json

    {
      "convention": "paper-rs",
      "name": "a2",
      "vertices": ["v", "w"],
      "edges": [{"id": "a", "source": "v", "range": "w"}],
      "infinite_receivers": []
    }

The Cuntz-Krieger relation at a vertex *v* sums over the edges whose
``range`` is *v*. The key ``convention`` is optional, but if present, it
needs to be ``"paper-rs"``, the only convention supported. Files written
always contain it. The keys ``name`` and ``infinite_receivers`` are
optional as well; the name defaults to the file name without extension.

The graphs used by ``lpga demo`` are bundled with the package and
available by name with :func:`bundled_graph`.

Module documentation
====================

"""

import aspecd.utils

import lpga.exceptions
import lpga.graphs
from lpga.io import json_file


CONVENTION = "paper-rs"
BUNDLED = ("a2", "loop", "loop_entry", "cuntz2", "chain3")


class GraphImporter(json_file.JsonImporter):
    """
    Read a graph from a JSON file.

    Raises
    ------
    lpga.exceptions.FileFormatError
        Raised if keys are missing, have the wrong type, or the convention
        is not supported

    lpga.exceptions.UnknownVertexError
        Raised if an edge refers to an unknown vertex

    Examples
    --------
    .. code-block::

        graph = GraphImporter(source="loop.json").import_()

    """

    def _import(self):
        self._check_convention()
        vertices = self._require("vertices", list)
        edges = self._require("edges", list)
        for edge in edges:
            if not isinstance(edge, dict):
                raise lpga.exceptions.FileFormatError("Edges need to be objects")
            for key in ("id", "source", "range"):
                self._require(key, str, content=edge)
        name = self.content.get("name", self.stem)
        try:
            self.result = lpga.graphs.Graph(
                vertices=vertices,
                edges=edges,
                name=str(name),
                infinite_receivers=self.content.get("infinite_receivers", []),
            )
        except ValueError as error:
            raise lpga.exceptions.FileFormatError(str(error)) from None

    def _check_convention(self):
        convention = self.content.get("convention", CONVENTION)
        if convention != CONVENTION:
            raise lpga.exceptions.FileFormatError(
                f"Unsupported convention {convention!r}, "
                f"only {CONVENTION!r} is supported"
            )


class GraphExporter(json_file.JsonExporter):
    """Write a graph to a JSON file, including the convention."""

    def _to_dict(self, object_):
        return graph_to_dict(object_)


def graph_to_dict(graph):
    """
    Return a graph in its serialisation format.

    Vertices and edges are sorted by id.
    """
    content = {
        "convention": CONVENTION,
        "name": graph.name,
        "vertices": list(graph.vertices),
        "edges": [
            {"id": edge.id, "source": edge.source, "range": edge.range}
            for edge in graph.edges
        ],
    }
    if graph.infinite_receivers:
        content["infinite_receivers"] = sorted(graph.infinite_receivers)
    return content


def bundled_graph(name):
    """
    Return one of the graphs bundled with the package.

    Parameters
    ----------
    name : :class:`str`
        One of "a2", "loop", "loop_entry", "cuntz2", and "chain3"

    Raises
    ------
    ValueError
        Raised if no graph of this name is bundled

    """
    if name not in BUNDLED:
        raise ValueError(f"No bundled graph {name!r}")
    importer = GraphImporter(source=f"{name}.json")
    return importer.import_from_text(
        aspecd.utils.get_package_data(f"lpga@data/{name}.json")
    )
