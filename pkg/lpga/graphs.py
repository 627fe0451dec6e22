"""
Finite directed multigraphs and their path combinatorics.

Graphs are the combinatorial data a Leavitt path algebra is built from.
Everything in this package follows a single convention for edges: an edge
*a* points from its **source** ``s(a)`` to its **range** ``r(a)``, and the
Cuntz-Krieger relation at a vertex *v* sums over the edges whose *range* is
*v*. Consequently, a vertex is a

* **source** if no edge has it as its range (``r⁻¹(v)`` is empty),
* **sink** if no edge starts at it (``s⁻¹(v)`` is empty),
* **regular** if it is not a source (on finite graphs the finiteness
  condition on ``r⁻¹(v)`` is automatic).

A path ``α = α₁…αₙ`` is composable if ``s(αᵢ) = r(αᵢ₊₁)``; its range is the
range of its *first* edge, its source the source of its *last* edge.
Vertices are paths of length zero.


Truncated infinite receivers
============================

A finite graph never has vertices receiving infinitely many edges. To make
the constructions for infinite graphs reproducible at desk scale, a graph
may flag some of its vertices as *infinite receivers*: finite truncations of
vertices that receive infinitely many edges in a larger graph. Flagged
vertices are never regular and impose no Cuntz-Krieger relation.


Graph surgery
=============

* :func:`ck_completion` completes a finite subgraph to a graph carrying a
  Cuntz-Krieger family inside the algebra of the ambient graph.

* :func:`desingularize_truncated` attaches tails to sinks and heads to
  sources, truncated after a given depth.


Module documentation
====================

"""

import dataclasses
import enum
import functools
import logging

import networkx as nx

import lpga.exceptions


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


@dataclasses.dataclass(frozen=True, order=True)
class Edge:
    """
    Directed edge of a graph.

    Attributes
    ----------
    id : :class:`str`
        Identifier of the edge, unique within its graph

    source : :class:`str`
        Vertex the edge starts at, *i.e.* ``s(a)``

    range : :class:`str`
        Vertex the edge points to, *i.e.* ``r(a)``

    """

    id: str
    source: str
    range: str


@dataclasses.dataclass(frozen=True)
class Path:
    """
    Finite path in a graph.

    Paths are created by :meth:`Graph.path` and :meth:`Graph.vertex_path`
    that check composability. The ends of a path are stored with it, so that
    paths can be compared and concatenated without access to the graph.

    Attributes
    ----------
    edges : :class:`tuple`
        Edge ids ``α₁…αₙ``, empty for a vertex

    source : :class:`str`
        Source vertex ``s(α) = s(αₙ)``

    range : :class:`str`
        Range vertex ``r(α) = r(α₁)``

    """

    edges: tuple
    source: str
    range: str

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        if not self.edges:
            return self.source
        return "".join(self.edges) if self._short_ids() else ".".join(self.edges)

    def _short_ids(self):
        return all(len(edge) == 1 for edge in self.edges)

    @property
    def base(self):
        """Vertex a path of length zero consists of."""
        return self.range

    @property
    def is_vertex(self):
        """Whether the path has length zero."""
        return not self.edges

    @property
    def last_edge(self):
        """Edge ``αₙ``, or None for a vertex."""
        return self.edges[-1] if self.edges else None

    def sort_key(self):
        """Key ordering vertices before edges, then lexicographically."""
        if self.edges:
            return 1, self.edges, ""
        return 0, (), self.base

    def concat(self, other):
        """
        Return the concatenation ``self·other``.

        Parameters
        ----------
        other : :class:`Path`
            Path whose range has to equal the source of this path

        Returns
        -------
        path : :class:`Path`
            concatenated path

        Raises
        ------
        lpga.exceptions.NoSuchPathError
            Raised if the paths are not composable

        """
        if self.source != other.range:
            raise lpga.exceptions.NoSuchPathError(
                f"Paths {self} and {other} are not composable"
            )
        if not self.edges:
            return other
        if not other.edges:
            return self
        return Path(
            edges=self.edges + other.edges,
            source=other.source,
            range=self.range,
        )

    def to_dict(self):
        """Return the path as list of edge ids plus its base vertex."""
        return {"edges": list(self.edges), "base": self.base}


class VertexClass(enum.Enum):
    """
    Classification of a vertex.

    ``REGULAR_SINK`` denotes a regular vertex that emits no edges.
    ``SINK`` is only ever reported for flagged infinite receivers without
    outgoing edges, as every other non-source of a finite graph is regular.
    """

    SOURCE = "source"
    SINK = "sink"
    SOURCE_AND_SINK = "source-and-sink"
    REGULAR = "regular"
    REGULAR_SINK = "regular-sink"
    INFINITE_RECEIVER = "infinite-receiver"


class Graph:
    """
    Finite directed multigraph.

    Vertex and edge ids are strings. Edges may be given as :class:`Edge`
    objects, as ``(id, source, range)`` tuples, or as dicts with the keys
    ``id``, ``source``, and ``range``.

    Graphs are immutable after construction. Two graphs compare equal if
    they have the same vertices, edges, and flagged infinite receivers; the
    name is ignored.

    Attributes
    ----------
    name : :class:`str`
        Name of the graph, used when serialising algebra elements

    vertices : :class:`tuple`
        Sorted vertex ids

    edges : :class:`tuple`
        Edges sorted by id

    infinite_receivers : :class:`frozenset`
        Vertices flagged as truncated infinite receivers

    Raises
    ------
    ValueError
        Raised if vertex or edge ids are not unique

    lpga.exceptions.UnknownVertexError
        Raised if an edge refers to an unknown vertex

    """

    def __init__(self, vertices=None, edges=None, name="", infinite_receivers=None):
        vertex_list = [str(vertex) for vertex in (vertices or [])]
        if len(set(vertex_list)) != len(vertex_list):
            raise ValueError("Vertex ids need to be unique")
        self.name = name
        self.vertices = tuple(sorted(vertex_list))
        self._vertex_set = frozenset(vertex_list)
        self._edges = {}
        for edge in edges or []:
            edge = self._to_edge(edge)
            if edge.id in self._edges:
                raise ValueError(f"Edge id {edge.id} is not unique")
            for vertex in (edge.source, edge.range):
                if vertex not in self._vertex_set:
                    raise lpga.exceptions.UnknownVertexError(
                        f"Edge {edge.id} refers to unknown vertex {vertex}"
                    )
            self._edges[edge.id] = edge
        self.edges = tuple(self._edges[key] for key in sorted(self._edges))
        self.infinite_receivers = frozenset(
            str(vertex) for vertex in (infinite_receivers or [])
        )
        for vertex in self.infinite_receivers:
            self._check_vertex(vertex)
        self._range_preimage = {vertex: [] for vertex in self.vertices}
        self._source_preimage = {vertex: [] for vertex in self.vertices}
        for edge in self.edges:
            self._range_preimage[edge.range].append(edge.id)
            self._source_preimage[edge.source].append(edge.id)

    @staticmethod
    def _to_edge(edge):
        if isinstance(edge, Edge):
            return edge
        if isinstance(edge, dict):
            return Edge(str(edge["id"]), str(edge["source"]), str(edge["range"]))
        id_, source, range_ = edge
        return Edge(str(id_), str(source), str(range_))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.infinite_receivers == other.infinite_receivers
        )

    def __hash__(self):
        return hash((self.vertices, self.edges, self.infinite_receivers))

    def __repr__(self):
        return (
            f"Graph(name={self.name!r}, vertices={len(self.vertices)}, "
            f"edges={len(self.edges)})"
        )

    def _check_vertex(self, vertex):
        if vertex not in self._vertex_set:
            raise lpga.exceptions.UnknownVertexError(
                f"Unknown vertex {vertex}"
            )

    def has_vertex(self, vertex):
        """Whether the vertex belongs to the graph."""
        return vertex in self._vertex_set

    def has_edge(self, edge_id):
        """Whether the edge belongs to the graph."""
        return edge_id in self._edges

    @property
    def edge_ids(self):
        """Sorted edge ids."""
        return tuple(edge.id for edge in self.edges)

    def edge(self, edge_id):
        """
        Return the edge with the given id.

        Raises
        ------
        lpga.exceptions.UnknownEdgeError
            Raised if the edge does not exist

        """
        try:
            return self._edges[edge_id]
        except KeyError as error:
            raise lpga.exceptions.UnknownEdgeError(
                f"Unknown edge {edge_id}"
            ) from error

    def source(self, edge_id):
        """Source vertex ``s(a)`` of an edge."""
        return self.edge(edge_id).source

    def range(self, edge_id):
        """Range vertex ``r(a)`` of an edge."""
        return self.edge(edge_id).range

    def range_preimage(self, vertex):
        """Sorted ids of the edges *a* with ``r(a) = vertex``."""
        self._check_vertex(vertex)
        return tuple(self._range_preimage[vertex])

    def source_preimage(self, vertex):
        """Sorted ids of the edges *a* with ``s(a) = vertex``."""
        self._check_vertex(vertex)
        return tuple(self._source_preimage[vertex])

    def is_source(self, vertex):
        """Whether no edge has the vertex as its range."""
        return not self.range_preimage(vertex)

    def is_sink(self, vertex):
        """Whether no edge starts at the vertex."""
        return not self.source_preimage(vertex)

    def is_regular(self, vertex):
        """Whether the vertex carries a Cuntz-Krieger relation."""
        return (
            bool(self.range_preimage(vertex))
            and vertex not in self.infinite_receivers
        )

    @property
    def regular_vertices(self):
        """Sorted regular vertices."""
        return tuple(vertex for vertex in self.vertices if self.is_regular(vertex))

    @property
    def sources(self):
        """Sorted sources."""
        return tuple(vertex for vertex in self.vertices if self.is_source(vertex))

    @property
    def sinks(self):
        """Sorted sinks."""
        return tuple(vertex for vertex in self.vertices if self.is_sink(vertex))

    def vertex_path(self, vertex):
        """Return the path of length zero at a vertex."""
        self._check_vertex(vertex)
        return Path(edges=(), source=vertex, range=vertex)

    def path(self, *edge_ids):
        """
        Return the path consisting of the given edges.

        Parameters
        ----------
        edge_ids : :class:`str`
            Edge ids ``α₁, …, αₙ``, *i.e.* the edge defining the range first

        Returns
        -------
        path : :class:`Path`
            Path with its ends set

        Raises
        ------
        lpga.exceptions.NoSuchPathError
            Raised if the edges are not composable

        lpga.exceptions.UnknownEdgeError
            Raised if an edge does not exist

        """
        if not edge_ids:
            raise lpga.exceptions.NoSuchPathError(
                "Use vertex_path for paths of length zero"
            )
        edges = [self.edge(edge_id) for edge_id in edge_ids]
        for first, second in zip(edges, edges[1:]):
            if first.source != second.range:
                raise lpga.exceptions.NoSuchPathError(
                    f"Edges {first.id} and {second.id} are not composable"
                )
        return Path(
            edges=tuple(edge_ids), source=edges[-1].source, range=edges[0].range
        )

    def make_path(self, edge_ids, base=None):
        """
        Return a path from a (possibly empty) list of edges.

        For an empty list, ``base`` is the vertex of the path.
        """
        if edge_ids:
            path = self.path(*edge_ids)
            if base is not None and base != path.range:
                raise lpga.exceptions.NoSuchPathError(
                    f"Base {base} does not match range of path {path}"
                )
            return path
        if base is None:
            raise lpga.exceptions.NoSuchPathError(
                "Empty path needs a base vertex"
            )
        return self.vertex_path(base)

    def contains_path(self, path):
        """Whether a path is a valid path of this graph."""
        try:
            rebuilt = self.make_path(path.edges, path.base)
        except lpga.exceptions.Error:
            return False
        return rebuilt == path

    def is_acyclic(self):
        """Whether the graph contains no cycle (loops included)."""
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def to_networkx(self):
        """
        Return the graph as :class:`networkx.MultiDiGraph`.

        Networkx edges point from source to range and are keyed by edge id.
        """
        graph = nx.MultiDiGraph(name=self.name)
        graph.add_nodes_from(self.vertices)
        for edge in self.edges:
            graph.add_edge(edge.source, edge.range, key=edge.id)
        return graph

    def subgraph(self, vertices, edge_ids, name=""):
        """Return the subgraph with the given vertices and edges."""
        edges = [self.edge(edge_id) for edge_id in edge_ids]
        return Graph(
            vertices=vertices,
            edges=edges,
            name=name,
            infinite_receivers=self.infinite_receivers & set(vertices),
        )


def classify_vertex(graph, vertex):
    """
    Classify a vertex by its incoming and outgoing edges.

    Parameters
    ----------
    graph : :class:`Graph`
        Graph the vertex belongs to

    vertex : :class:`str`
        Vertex to classify

    Returns
    -------
    class_ : :class:`VertexClass`
        Class of the vertex

    Raises
    ------
    lpga.exceptions.UnknownVertexError
        Raised if the vertex is not part of the graph

    """
    incoming = len(graph.range_preimage(vertex))
    outgoing = len(graph.source_preimage(vertex))
    if vertex in graph.infinite_receivers:
        return VertexClass.SINK if not outgoing else VertexClass.INFINITE_RECEIVER
    if not incoming:
        return VertexClass.SOURCE_AND_SINK if not outgoing else VertexClass.SOURCE
    return VertexClass.REGULAR_SINK if not outgoing else VertexClass.REGULAR


def enumerate_paths(graph, max_len, filter_=None):
    """
    Return all paths up to a given length.

    Paths are extended at their source end. The result starts with the
    vertices (sorted), followed by all paths of positive length in
    lexicographic order of their edge-id sequences.

    Parameters
    ----------
    graph : :class:`Graph`
        Graph to enumerate paths of

    max_len : :class:`int`
        Maximum path length, non-negative

    filter_ : :class:`tuple`
        Optional pair ``(range vertex, source vertex)``; ``None`` for either
        component does not restrict that end

    Returns
    -------
    paths : :class:`list`
        Paths in deterministic order

    """
    if max_len < 0:
        raise ValueError("Maximum path length needs to be non-negative")
    range_vertex, source_vertex = filter_ or (None, None)
    layer = [
        graph.vertex_path(vertex)
        for vertex in graph.vertices
        if range_vertex is None or vertex == range_vertex
    ]
    paths = list(layer)
    for _ in range(max_len):
        layer = [
            path.concat(graph.path(edge_id))
            for path in layer
            for edge_id in graph.range_preimage(path.source)
        ]
        paths.extend(layer)
    if source_vertex is not None:
        paths = [path for path in paths if path.source == source_vertex]
    return sorted(paths, key=Path.sort_key)


class Comparison(enum.Enum):
    """Outcome of comparing two paths by prefix."""

    EQUAL = "equal"
    ALPHA_EXTENDS_BETA = "alpha-extends-beta"
    BETA_EXTENDS_ALPHA = "beta-extends-alpha"
    INCOMPARABLE = "incomparable"


@dataclasses.dataclass(frozen=True)
class PathComparison:
    """
    Result of :func:`compare_paths`.

    Attributes
    ----------
    kind : :class:`Comparison`
        How the paths relate

    remainder : :class:`Path`
        The path γ with ``α = βγ`` (or ``β = αγ``), None otherwise

    """

    kind: Comparison
    remainder: Path = None


def compare_paths(alpha, beta):
    """
    Compare two paths of the same graph by prefix.

    A vertex *w* is a prefix of every path with range *w*.

    Returns
    -------
    comparison : :class:`PathComparison`
        ``ALPHA_EXTENDS_BETA`` with remainder γ if ``α = βγ`` and ``|γ| ≥ 1``,
        ``BETA_EXTENDS_ALPHA`` analogously, ``EQUAL`` or ``INCOMPARABLE``
        otherwise

    """
    if alpha == beta:
        return PathComparison(Comparison.EQUAL)
    if beta.is_vertex:
        if not alpha.is_vertex and alpha.range == beta.base:
            return PathComparison(Comparison.ALPHA_EXTENDS_BETA, alpha)
        return PathComparison(Comparison.INCOMPARABLE)
    if alpha.is_vertex:
        if beta.range == alpha.base:
            return PathComparison(Comparison.BETA_EXTENDS_ALPHA, beta)
        return PathComparison(Comparison.INCOMPARABLE)
    if len(alpha) > len(beta) and alpha.edges[: len(beta)] == beta.edges:
        remainder = Path(
            edges=alpha.edges[len(beta):], source=alpha.source, range=beta.source
        )
        return PathComparison(Comparison.ALPHA_EXTENDS_BETA, remainder)
    if len(beta) > len(alpha) and beta.edges[: len(alpha)] == alpha.edges:
        remainder = Path(
            edges=beta.edges[len(alpha):], source=beta.source, range=alpha.source
        )
        return PathComparison(Comparison.BETA_EXTENDS_ALPHA, remainder)
    return PathComparison(Comparison.INCOMPARABLE)


def find_cycles(graph):
    """
    Return all cycles of a graph together with their entries.

    A cycle is a closed path with pairwise distinct edges (vertices may
    repeat). Each cycle is reported once, rotated to start with its least
    edge id. An entry of a cycle ``α`` is an edge *a* with ``r(a) = r(αᵢ)``
    and ``a ≠ αᵢ`` for some *i*.

    Returns
    -------
    cycles : :class:`list`
        Pairs ``(cycle, entries)`` sorted by cycle, entries sorted by id

    """
    cycles = []

    def extend(start, trail, used):
        current = graph.source(trail[-1])
        if current == graph.range(start):
            cycles.append(graph.path(*trail))
        for edge_id in graph.range_preimage(current):
            if edge_id > start and edge_id not in used:
                extend(start, trail + [edge_id], used | {edge_id})

    for edge in graph.edges:
        extend(edge.id, [edge.id], {edge.id})
    result = []
    for cycle in sorted(cycles, key=lambda path: path.edges):
        entries = set()
        for edge_id in cycle.edges:
            entries.update(
                other
                for other in graph.range_preimage(graph.range(edge_id))
                if other != edge_id
            )
        result.append((cycle, sorted(entries)))
    return result


def condition_l(graph):
    """Whether every cycle of the graph has an entry."""
    return all(entries for _, entries in find_cycles(graph))


def is_nonreturning(path):
    """Whether the last edge of a path does not occur earlier in it."""
    return not path.edges or path.last_edge not in path.edges[:-1]


def find_nonreturning_path(graph, vertex, min_len):
    """
    Find a nonreturning path ending in a given vertex.

    The search tries lengths ``min_len, …, min_len + |edges| + 1`` in
    ascending order and, for each length, candidate last edges in ascending
    order. The first edges are filled in with the lexicographically least
    choice avoiding the last edge.

    Parameters
    ----------
    graph : :class:`Graph`
        Graph to search in

    vertex : :class:`str`
        Range ``r(λ)`` of the path

    min_len : :class:`int`
        Minimum length of the path, positive

    Returns
    -------
    path : :class:`Path`
        Nonreturning path λ with ``r(λ) = vertex`` and ``|λ| ≥ min_len``

    Raises
    ------
    lpga.exceptions.NoSuchPathError
        Raised if no such path is found within the search bound

    """
    graph.vertex_path(vertex)
    if min_len < 1:
        raise ValueError("Minimum length needs to be positive")
    for length in range(min_len, min_len + len(graph.edges) + 2):
        for last in graph.edge_ids:
            prefix = _avoiding_prefix(
                graph, vertex, graph.range(last), length - 1, last
            )
            if prefix is None:
                continue
            path = graph.make_path(list(prefix) + [last])
            if path.range != vertex or not is_nonreturning(path):
                raise AssertionError(f"Invalid nonreturning path {path}")
            logger.debug("Nonreturning path %s found for vertex %s", path, vertex)
            return path
    raise lpga.exceptions.NoSuchPathError(
        f"No nonreturning path of length >= {min_len} ends in {vertex}"
    )


def _avoiding_prefix(graph, start, target, length, forbidden):
    """Least path of given length from range ``start`` to source ``target``."""

    @functools.lru_cache(maxsize=None)
    def feasible(current, remaining):
        if not remaining:
            return current == target
        return any(
            feasible(graph.source(edge_id), remaining - 1)
            for edge_id in graph.range_preimage(current)
            if edge_id != forbidden
        )

    if not feasible(start, length):
        return None
    prefix, current = [], start
    for remaining in range(length, 0, -1):
        for edge_id in graph.range_preimage(current):
            if edge_id != forbidden and feasible(graph.source(edge_id), remaining - 1):
                prefix.append(edge_id)
                current = graph.source(edge_id)
                break
    return prefix


def _check_subgraph(subgraph, graph):
    for vertex in subgraph.vertices:
        if not graph.has_vertex(vertex):
            raise lpga.exceptions.NotASubgraphError(
                f"Vertex {vertex} is not part of the ambient graph"
            )
    for edge in subgraph.edges:
        if not graph.has_edge(edge.id) or graph.edge(edge.id) != edge:
            raise lpga.exceptions.NotASubgraphError(
                f"Edge {edge.id} is not an edge of the ambient graph"
            )


def is_ck_subgraph(subgraph, graph):
    """
    Check whether a subgraph is a Cuntz-Krieger subgraph.

    Every vertex receiving at least one edge of the subgraph needs to
    receive all edges it receives in the ambient graph. Vertices flagged as
    infinite receivers in the ambient graph can never satisfy this.

    Raises
    ------
    lpga.exceptions.NotASubgraphError
        Raised if vertices or edges are not contained in the ambient graph

    """
    _check_subgraph(subgraph, graph)
    for vertex in subgraph.vertices:
        incoming = subgraph.range_preimage(vertex)
        if not incoming:
            continue
        if vertex in graph.infinite_receivers:
            return False
        if set(incoming) != set(graph.range_preimage(vertex)):
            return False
    return True


class Provenance(enum.Enum):
    """Origin of a vertex or edge of a completed graph."""

    ORIGINAL = "original"
    ADDED_FROM_Q = "added-from-q"
    PRIMED = "primed"


@dataclasses.dataclass(frozen=True)
class CompletionTagging:
    """
    Bookkeeping of :func:`ck_completion`.

    Attributes
    ----------
    vertex_tags : :class:`dict`
        Provenance per vertex of the completed graph

    edge_tags : :class:`dict`
        Provenance per edge of the completed graph

    y : :class:`frozenset`
        Vertices regular in the intermediate graph but not in the ambient one

    primes : :class:`dict`
        Maps primed vertex and edge ids to the ids they are copies of

    intermediate : :class:`Graph`
        The graph obtained before adding primed copies

    """

    vertex_tags: dict
    edge_tags: dict
    y: frozenset
    primes: dict
    intermediate: Graph

    def to_dict(self):
        """Return the tagging with plain values."""
        return {
            "vertices": {key: tag.value for key, tag in self.vertex_tags.items()},
            "edges": {key: tag.value for key, tag in self.edge_tags.items()},
            "Y": sorted(self.y),
            "primes": dict(sorted(self.primes.items())),
        }


def _fresh_id(candidate, taken):
    while candidate in taken:
        candidate += "'"
    return candidate


def ck_completion(subgraph, graph):
    """
    Complete a finite subgraph to a graph with a Cuntz-Krieger family.

    The construction proceeds in three steps:

    #. For each vertex regular in the ambient graph that receives an edge of
       the subgraph, add all its incoming ambient edges and their sources.

    #. Collect the set *Y* of vertices regular in the intermediate graph but
       not in the ambient one. At desk scale these are the flagged infinite
       receivers.

    #. Add a primed copy *v'* for every *v* in *Y* and a primed copy *a'* of
       every intermediate edge *a* with ``s(a)`` in *Y*, with
       ``s(a') = s(a)'`` and ``r(a') = r(a)``.

    Parameters
    ----------
    subgraph : :class:`Graph`
        Finite subgraph to complete

    graph : :class:`Graph`
        Ambient graph

    Returns
    -------
    completion : :class:`tuple`
        Completed graph and its :class:`CompletionTagging`

    Raises
    ------
    lpga.exceptions.NotASubgraphError
        Raised if the subgraph is not contained in the ambient graph

    """
    _check_subgraph(subgraph, graph)
    vertices = set(subgraph.vertices)
    edge_ids = set(subgraph.edge_ids)
    for vertex in subgraph.vertices:
        if graph.is_regular(vertex) and subgraph.range_preimage(vertex):
            for edge_id in graph.range_preimage(vertex):
                edge_ids.add(edge_id)
                vertices.add(graph.source(edge_id))
    intermediate = Graph(
        vertices=vertices,
        edges=[graph.edge(edge_id) for edge_id in edge_ids],
        name=f"{subgraph.name}-intermediate",
    )
    y_set = frozenset(
        vertex
        for vertex in intermediate.regular_vertices
        if not graph.is_regular(vertex)
    )
    vertex_tags = {
        vertex: Provenance.ORIGINAL
        if subgraph.has_vertex(vertex)
        else Provenance.ADDED_FROM_Q
        for vertex in intermediate.vertices
    }
    edge_tags = {
        edge_id: Provenance.ORIGINAL
        if subgraph.has_edge(edge_id)
        else Provenance.ADDED_FROM_Q
        for edge_id in intermediate.edge_ids
    }
    taken = set(graph.vertices) | set(graph.edge_ids)
    primes, primed_names = {}, {}
    for vertex in sorted(y_set):
        primed = _fresh_id(f"{vertex}'", taken)
        taken.add(primed)
        primes[primed] = vertex
        primed_names[vertex] = primed
        vertex_tags[primed] = Provenance.PRIMED
    primed_edges = []
    for edge in intermediate.edges:
        if edge.source in y_set:
            primed = _fresh_id(f"{edge.id}'", taken)
            taken.add(primed)
            primes[primed] = edge.id
            edge_tags[primed] = Provenance.PRIMED
            primed_edges.append(Edge(primed, primed_names[edge.source], edge.range))
    completed = Graph(
        vertices=list(intermediate.vertices) + sorted(primed_names.values()),
        edges=list(intermediate.edges) + primed_edges,
        name=f"{subgraph.name}-completed" if subgraph.name else "",
    )
    logger.info(
        "CK completion: %d added edges, Y=%s",
        len(intermediate.edges) - len(subgraph.edges),
        sorted(y_set),
    )
    if graph.is_acyclic() and not completed.is_acyclic():
        raise AssertionError("Completion of an acyclic graph is cyclic")
    tagging = CompletionTagging(
        vertex_tags=dict(sorted(vertex_tags.items())),
        edge_tags=dict(sorted(edge_tags.items())),
        y=y_set,
        primes=primes,
        intermediate=intermediate,
    )
    return completed, tagging


def desingularize_truncated(graph, depth):
    """
    Attach truncated tails to sinks and heads to sources.

    Every sink *v* receives a tail ``v → v~t1 → … → v~t<depth>`` (edge
    ``v~tf1`` starts at *v*), every source a head
    ``v~h<depth> → … → v~h1 → v`` (edge ``v~hf1`` ends at *v*). A vertex
    that is both gets both. The ends of tails and heads are new sinks and
    sources, respectively. Flagged infinite receivers are left untouched.

    Parameters
    ----------
    graph : :class:`Graph`
        Finite graph

    depth : :class:`int`
        Length of tails and heads, positive

    Returns
    -------
    result : :class:`tuple`
        New graph, vertex map, and edge map (embeddings of the old graph)

    Raises
    ------
    ValueError
        Raised if depth is smaller than one

    """
    if depth < 1:
        raise ValueError("Depth of tails and heads needs to be positive")
    vertices = list(graph.vertices)
    edges = list(graph.edges)
    for vertex in graph.vertices:
        if vertex in graph.infinite_receivers:
            logger.warning(
                "Infinite receiver %s left untouched by desingularisation", vertex
            )
            continue
        if graph.is_sink(vertex):
            previous = vertex
            for step in range(1, depth + 1):
                current = f"{vertex}~t{step}"
                vertices.append(current)
                edges.append(Edge(f"{vertex}~tf{step}", previous, current))
                previous = current
        if graph.is_source(vertex):
            previous = vertex
            for step in range(1, depth + 1):
                current = f"{vertex}~h{step}"
                vertices.append(current)
                edges.append(Edge(f"{vertex}~hf{step}", current, previous))
                previous = current
    desingularized = Graph(
        vertices=vertices,
        edges=edges,
        name=f"{graph.name}-desingularized" if graph.name else "",
        infinite_receivers=graph.infinite_receivers,
    )
    logger.info(
        "Desingularisation added %d vertices",
        len(desingularized.vertices) - len(graph.vertices),
    )
    vertex_map = {vertex: vertex for vertex in graph.vertices}
    edge_map = {edge_id: edge_id for edge_id in graph.edge_ids}
    return desingularized, vertex_map, edge_map
