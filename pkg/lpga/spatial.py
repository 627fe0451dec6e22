"""
Spatial representations on finite weighted atomic measure spaces.

Representations of Leavitt path algebras on :math:`L^p` spaces are built
from *spatial partial isometries*: operators moving functions from a set *E*
to a set *F* along a bijection, multiplied by a unimodular phase and a
Radon-Nikodym factor. On a finite atomic measure space with weights
:math:`μ_x` this reads

.. math::

    s[y, η(y)] = f(y) \\, (μ_{η(y)} / μ_y)^{1/p}, \\quad y ∈ F,

and all other entries vanish. The tuple :math:`(E, F, η, f)` is the
*spatial system* of the operator and serves as its certificate: every
operator created in this module carries it along, and relations between
operators can be checked on the certificates.


Cuntz-Krieger families
======================

For a graph whose atom counts can be solved for (see
:func:`atomic_size_assignment`), :func:`atomic_ck_family` synthesises a
family of spatial operators satisfying the relations of the Leavitt path
algebra: every vertex *v* owns a set :math:`X_v` of atoms, every edge *a* a
subset :math:`X_a ⊆ X_{r(a)}`, and for regular vertices the sets
:math:`X_a, a ∈ r^{-1}(v)` partition :math:`X_v`.

:func:`represent` maps algebra elements to matrices by substituting the
operators of a family for the generators.


Module documentation
====================

"""

import dataclasses
import logging

import networkx as nx
import numpy as np
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix

import lpga.exceptions
import lpga.graphs
import lpga.utils


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

CERTIFICATE_TOLERANCE = 1e-12


class AtomicMeasureSpace:
    """
    Finite atomic measure space partitioned by the vertices of a graph.

    Attributes
    ----------
    atoms : :class:`list`
        Atom ids in matrix order

    weights : :class:`dict`
        Positive weight per atom

    vertex_of : :class:`dict`
        Vertex per atom

    edge_support : :class:`dict`
        Set of atoms :math:`X_a ⊆ X_{r(a)}` per edge

    Raises
    ------
    lpga.exceptions.InvalidSystemError
        Raised if weights are not positive or an atom is unknown

    """

    def __init__(self, atoms=None, weights=None, vertex_of=None, edge_support=None):
        self.atoms = list(atoms or [])
        self.weights = {atom: 1.0 for atom in self.atoms}
        self.weights.update(
            {key: float(value) for key, value in (weights or {}).items()}
        )
        self.vertex_of = dict(vertex_of or {})
        self.edge_support = {
            key: frozenset(value) for key, value in (edge_support or {}).items()
        }
        self._index = {atom: index for index, atom in enumerate(self.atoms)}
        if len(self._index) != len(self.atoms):
            raise lpga.exceptions.InvalidSystemError("Atom ids need to be unique")
        for atom, weight in self.weights.items():
            if atom not in self._index:
                raise lpga.exceptions.InvalidSystemError(f"Unknown atom {atom}")
            if not weight > 0:
                raise lpga.exceptions.InvalidSystemError(
                    f"Weight of atom {atom} is not positive"
                )

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasureSpace):
            return NotImplemented
        return (
            self.atoms == other.atoms
            and self.weights == other.weights
            and self.vertex_of == other.vertex_of
            and self.edge_support == other.edge_support
        )

    def index(self, atom):
        """Row and column index of an atom."""
        try:
            return self._index[atom]
        except KeyError:
            raise lpga.exceptions.InvalidSystemError(f"Unknown atom {atom}") from None

    def has_atom(self, atom):
        """Whether the atom belongs to the space."""
        return atom in self._index

    def weight_vector(self):
        """Weights in atom order."""
        return np.asarray([self.weights[atom] for atom in self.atoms], dtype=float)

    def atoms_of(self, vertex):
        """Atoms of :math:`X_v`, in atom order."""
        return [atom for atom in self.atoms if self.vertex_of.get(atom) == vertex]

    def support(self, edge_id):
        """Atoms of :math:`X_a`, in atom order."""
        support = self.edge_support.get(edge_id, frozenset())
        return [atom for atom in self.atoms if atom in support]

    def indicator(self, atoms):
        """Diagonal matrix of the indicator function of a set of atoms."""
        matrix = np.zeros((len(self), len(self)), dtype=complex)
        for atom in atoms:
            index = self.index(atom)
            matrix[index, index] = 1.0
        return matrix

    def has_unit_weights(self):
        """Whether all weights equal one."""
        return all(weight == 1.0 for weight in self.weights.values())

    def validate(self, graph):
        """
        Check the support partition condition for a graph.

        Raises
        ------
        lpga.exceptions.InvalidSystemError
            Raised if a vertex owns no atom, an edge support leaves its range
            set, supports into a vertex overlap, or supports of a regular
            vertex do not cover it

        """
        for vertex in graph.vertices:
            if not self.atoms_of(vertex):
                raise lpga.exceptions.InvalidSystemError(
                    f"Vertex {vertex} owns no atom"
                )
        for vertex in graph.vertices:
            owned = set(self.atoms_of(vertex))
            covered = set()
            for edge_id in graph.range_preimage(vertex):
                support = set(self.edge_support.get(edge_id, ()))
                if not support <= owned:
                    raise lpga.exceptions.InvalidSystemError(
                        f"Support of edge {edge_id} leaves vertex {vertex}"
                    )
                if support & covered:
                    raise lpga.exceptions.InvalidSystemError(
                        f"Supports into vertex {vertex} overlap"
                    )
                covered |= support
            if graph.is_regular(vertex) and covered != owned:
                raise lpga.exceptions.InvalidSystemError(
                    f"Edge supports do not cover regular vertex {vertex}"
                )

    def to_dict(self):
        """Return the space in its serialisation format."""
        return {
            "atoms": list(self.atoms),
            "weights": {atom: self.weights[atom] for atom in self.atoms},
            "vertex_of": {atom: self.vertex_of[atom] for atom in self.atoms},
            "edge_support": {
                key: self.support(key) for key in sorted(self.edge_support)
            },
        }


@dataclasses.dataclass(frozen=True)
class SpatialSystem:
    """
    Spatial system :math:`(E, F, η, f)` of a spatial partial isometry.

    Attributes
    ----------
    E : :class:`frozenset`
        Atoms of the initial set

    F : :class:`frozenset`
        Atoms of the final set

    eta : :class:`dict`
        Bijection F → E as point map

    f : :class:`dict`
        Unimodular phase per atom of F

    """

    E: frozenset
    F: frozenset
    eta: dict
    f: dict

    @classmethod
    def create(cls, eta, f=None):
        """Create a system from the point map, phases defaulting to one."""
        eta = dict(eta)
        phases = {atom: 1.0 + 0j for atom in eta}
        phases.update(f or {})
        return cls(
            E=frozenset(eta.values()), F=frozenset(eta), eta=eta, f=phases
        )

    @classmethod
    def identity(cls, atoms):
        """System of the indicator of a set of atoms."""
        return cls.create({atom: atom for atom in atoms})

    def validate(self, space=None):
        """
        Check that η is a bijection F → E and f is unimodular.

        Raises
        ------
        lpga.exceptions.InvalidSystemError
            Raised if the system is inconsistent

        """
        if set(self.eta) != set(self.F) or set(self.eta.values()) != set(self.E):
            raise lpga.exceptions.InvalidSystemError(
                "Point map does not match the sets E and F"
            )
        if len(set(self.eta.values())) != len(self.eta):
            raise lpga.exceptions.InvalidSystemError("Point map is not injective")
        if set(self.f) != set(self.F):
            raise lpga.exceptions.InvalidSystemError(
                "Phases need to be given on F exactly"
            )
        for atom, phase in self.f.items():
            if abs(abs(complex(phase)) - 1.0) > CERTIFICATE_TOLERANCE:
                raise lpga.exceptions.InvalidSystemError(
                    f"Phase at atom {atom} is not unimodular"
                )
        if space is not None:
            for atom in self.E | self.F:
                if not space.has_atom(atom):
                    raise lpga.exceptions.InvalidSystemError(
                        f"Atom {atom} is not part of the space"
                    )

    def reverse(self):
        """Return :math:`(F, E, η^{-1}, \\bar f ∘ η^{-1})`."""
        inverse = {image: atom for atom, image in self.eta.items()}
        return SpatialSystem(
            E=self.F,
            F=self.E,
            eta=inverse,
            f={
                atom: complex(self.f[source]).conjugate()
                for atom, source in inverse.items()
            },
        )

    def rotated(self, z):
        """Return the system with all phases multiplied by z."""
        return dataclasses.replace(
            self, f={atom: z * complex(phase) for atom, phase in self.f.items()}
        )

    def to_dict(self):
        """Return the system with sorted keys."""
        return {
            "E": sorted(self.E),
            "F": sorted(self.F),
            "eta": {atom: self.eta[atom] for atom in sorted(self.eta)},
            "f": {
                atom: [complex(self.f[atom]).real, complex(self.f[atom]).imag]
                for atom in sorted(self.f)
            },
        }


@dataclasses.dataclass(eq=False)
class SpatialOperator:
    """
    Matrix on an atomic measure space, optionally with its spatial system.

    Attributes
    ----------
    matrix : :class:`numpy.ndarray`
        Complex square matrix indexed by atoms

    certificate : :class:`SpatialSystem`
        Spatial system the matrix is derived from, None if unknown

    space : :class:`AtomicMeasureSpace`
        Space the operator acts on

    p : :class:`float`
        Exponent the weight factors were computed for

    """

    matrix: np.ndarray
    certificate: SpatialSystem = None
    space: AtomicMeasureSpace = None
    p: float = 2.0

    def coherence_residual(self):
        """
        Deviation of the matrix from the one derived from its certificate.

        Raises
        ------
        lpga.exceptions.MissingCertificateError
            Raised if the operator lacks its spatial system

        """
        if self.certificate is None or self.space is None:
            raise lpga.exceptions.MissingCertificateError(
                "Operator has no spatial system"
            )
        expected = spi_matrix(self.space, self.certificate, self.p).matrix
        return float(np.max(np.abs(self.matrix - expected), initial=0.0))

    def with_matrix(self, matrix):
        """Return an operator with another matrix and the same certificate."""
        return dataclasses.replace(self, matrix=np.asarray(matrix, dtype=complex))


def spi_matrix(space, system, p):
    """
    Return the spatial partial isometry of a spatial system.

    Parameters
    ----------
    space : :class:`AtomicMeasureSpace`
        Space the operator acts on

    system : :class:`SpatialSystem`
        Certificate of the operator

    p : :class:`float`
        Exponent, at least one

    Returns
    -------
    operator : :class:`SpatialOperator`
        Operator with ``s[y, η(y)] = f(y) (μ_{η(y)} / μ_y)^{1/p}``

    Raises
    ------
    lpga.exceptions.InvalidSystemError
        Raised if the system is inconsistent or not on the space

    ValueError
        Raised if p < 1

    """
    if p < 1:
        raise ValueError("Exponent p needs to be at least one")
    system.validate(space)
    matrix = np.zeros((len(space), len(space)), dtype=complex)
    for atom, image in system.eta.items():
        factor = (space.weights[image] / space.weights[atom]) ** (1.0 / p)
        matrix[space.index(atom), space.index(image)] = complex(system.f[atom]) * factor
    return SpatialOperator(matrix=matrix, certificate=system, space=space, p=float(p))


def spi_compose(second, first):
    """
    Return the product ``second · first`` of two spatial partial isometries.

    With :math:`s_1 = (E_1, F_1, η_1, f_1)` and :math:`s_2 = (E_2, F_2, η_2,
    f_2)`, the product has the system

    .. math::

        (η_1(E_2 ∩ F_1), η_2^{-1}(E_2 ∩ F_1), η_1 ∘ η_2, f_2 \\cdot (f_1 ∘ η_2))

    and its matrix is the matrix product.

    Raises
    ------
    lpga.exceptions.MissingCertificateError
        Raised if either operator lacks its spatial system

    lpga.exceptions.InvalidSystemError
        Raised if the operators act on different spaces

    """
    if first.certificate is None or second.certificate is None:
        raise lpga.exceptions.MissingCertificateError(
            "Composition needs both spatial systems"
        )
    if first.space != second.space or first.p != second.p:
        raise lpga.exceptions.InvalidSystemError(
            "Operators act on different spaces"
        )
    space, p = first.space, first.p
    first_system, second_system = first.certificate, second.certificate
    overlap = second_system.E & first_system.F
    eta = {}
    phases = {}
    for atom, middle in second_system.eta.items():
        if middle in overlap:
            eta[atom] = first_system.eta[middle]
            phases[atom] = complex(second_system.f[atom]) * complex(
                first_system.f[middle]
            )
    system = SpatialSystem(
        E=frozenset(eta.values()), F=frozenset(eta), eta=eta, f=phases
    )
    operator = SpatialOperator(
        matrix=second.matrix @ first.matrix, certificate=system, space=space, p=p
    )
    if operator.coherence_residual() > CERTIFICATE_TOLERANCE * max(1, len(space)):
        raise lpga.exceptions.InvalidSystemError(
            "Product does not match its composed system"
        )
    return operator


def spi_reverse(operator):
    """
    Return the reverse of a spatial partial isometry.

    The reverse *t* of *s* satisfies ``sts = s`` and ``tst = t``; ``st`` and
    ``ts`` are the indicators of *F* and *E*.

    Raises
    ------
    lpga.exceptions.MissingCertificateError
        Raised if the operator lacks its spatial system

    """
    if operator.certificate is None or operator.space is None:
        raise lpga.exceptions.MissingCertificateError(
            "Reverse needs the spatial system"
        )
    return spi_matrix(operator.space, operator.certificate.reverse(), operator.p)


def certificate_from_matrix(matrix, space, p, tolerance=1e-9):
    """
    Try to recover a spatial system from a bare matrix.

    The matrix is accepted if its support is a partial permutation pattern
    and every nonzero entry has the modulus the weight factor prescribes.
    This is a heuristic diagnostic: it recognises matrices of spatial partial
    isometries on atomic spaces, but makes no claims beyond that.

    Returns
    -------
    system : :class:`SpatialSystem`
        Recovered system, None if the matrix does not pass

    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (len(space), len(space)):
        return None
    rows, columns = np.nonzero(np.abs(matrix) > tolerance)
    if len(set(rows)) != len(rows) or len(set(columns)) != len(columns):
        return None
    eta = {}
    phases = {}
    for row, column in zip(rows, columns):
        atom, image = space.atoms[row], space.atoms[column]
        factor = (space.weights[image] / space.weights[atom]) ** (1.0 / p)
        value = matrix[row, column] / factor
        if abs(abs(value) - 1.0) > tolerance:
            return None
        eta[atom] = image
        phases[atom] = value / abs(value)
    return SpatialSystem(
        E=frozenset(eta.values()), F=frozenset(eta), eta=eta, f=phases
    )


@dataclasses.dataclass(frozen=True)
class Unsolvable:
    """
    Outcome of an atom count assignment without positive solution.

    Attributes
    ----------
    reason : :class:`str`
        Why no assignment exists

    vertices : :class:`tuple`
        Vertices involved

    """

    reason: str
    vertices: tuple = ()

    def __bool__(self):
        return False


def atomic_size_assignment(graph, source_size=1):
    """
    Solve for atom counts satisfying the support partition condition.

    Each regular vertex needs :math:`|X_v| = Σ_{a ∈ r^{-1}(v)} |X_{s(a)}|`.
    Counts are determined along the strongly connected components of the
    graph in topological order. Vertices without incoming edges get
    *source_size* atoms, flagged infinite receivers get *source_size* atoms
    more than their incoming edges use.

    A strongly connected component with a cycle only has a solution if it is
    a single cycle without any entry, in which case all its vertices get
    *source_size* atoms. Otherwise, the equations force a count of zero.

    Parameters
    ----------
    graph : :class:`lpga.graphs.Graph`
        Finite graph

    source_size : :class:`int`
        Count for free choices

        Default: 1

    Returns
    -------
    sizes : :class:`dict` | :class:`Unsolvable`
        Positive count per vertex, or the reason why none exists

    """
    if source_size < 1:
        raise ValueError("Free atom count needs to be positive")
    dependencies = nx.DiGraph()
    dependencies.add_nodes_from(graph.vertices)
    for edge in graph.edges:
        dependencies.add_edge(edge.source, edge.range)
    condensed = nx.condensation(dependencies)
    sizes = {}
    for component in nx.topological_sort(condensed):
        members = sorted(condensed.nodes[component]["members"])
        cyclic = len(members) > 1 or dependencies.has_edge(members[0], members[0])
        if cyclic:
            for vertex in members:
                incoming = graph.range_preimage(vertex)
                if vertex in graph.infinite_receivers or len(incoming) != 1:
                    return Unsolvable(
                        reason=f"cycle through {vertex} has an entry or an "
                        "infinite receiver",
                        vertices=tuple(members),
                    )
            for vertex in members:
                sizes[vertex] = source_size
            continue
        vertex = members[0]
        incoming = sum(
            sizes[graph.source(edge_id)] for edge_id in graph.range_preimage(vertex)
        )
        if vertex in graph.infinite_receivers:
            sizes[vertex] = incoming + source_size
        elif incoming:
            sizes[vertex] = incoming
        else:
            sizes[vertex] = source_size
    return dict(sorted(sizes.items()))


class CKFamily:
    """
    Cuntz-Krieger family of spatial operators on an atomic measure space.

    Attributes
    ----------
    graph : :class:`lpga.graphs.Graph`
        Graph of the family

    space : :class:`AtomicMeasureSpace`
        Space the operators act on

    p : :class:`float`
        Exponent

    S : :class:`dict`
        :class:`SpatialOperator` per edge

    T : :class:`dict`
        :class:`SpatialOperator` per edge, the reverses of S

    E : :class:`dict`
        :class:`SpatialOperator` per vertex, the indicators of :math:`X_v`

    exact_phases : :class:`dict`
        Phases per edge as Gaussian rationals if the family is exactly
        representable, otherwise None

    phases : :class:`dict`
        Phase per edge the family was synthesised with, empty if unknown

    """

    def __init__(self, graph, space, p, S, T, E, exact_phases=None, phases=None):
        self.phases = dict(phases or {})
        self.graph = graph
        self.space = space
        self.p = float(p)
        self.S = S
        self.T = T
        self.E = E
        self.exact_phases = exact_phases

    @property
    def dimension(self):
        """Number of atoms."""
        return len(self.space)

    @property
    def is_exact(self):
        """Whether :func:`represent_exact` applies."""
        return self.exact_phases is not None and self.space.has_unit_weights()

    def replace(self, S=None, T=None, E=None):
        """Return a copy with some operators replaced, losing exactness."""
        return CKFamily(
            graph=self.graph,
            space=self.space,
            p=self.p,
            S={**self.S, **(S or {})},
            T={**self.T, **(T or {})},
            E={**self.E, **(E or {})},
            exact_phases=None if (S or T or E) else self.exact_phases,
            phases=self.phases,
        )

    def rotated(self, z, rotate_reverse=True):
        """
        Return the family :math:`(zS, \\bar z T, E)`.

        With *rotate_reverse* False, only S is rotated and T kept, which
        breaks the reverse relations.
        """
        z = complex(z)

        def rotate(operator, factor):
            certificate = operator.certificate
            if certificate is not None:
                certificate = certificate.rotated(factor)
            return dataclasses.replace(
                operator, matrix=factor * operator.matrix, certificate=certificate
            )

        return CKFamily(
            graph=self.graph,
            space=self.space,
            p=self.p,
            S={key: rotate(value, z) for key, value in self.S.items()},
            T={
                key: rotate(value, z.conjugate()) if rotate_reverse else value
                for key, value in self.T.items()
            },
            E=dict(self.E),
            phases={key: z * value for key, value in self.phases.items()},
        )

    def direct_sum(self, other):
        """
        Return the block diagonal sum of two families of the same graph.

        Atoms are renamed by appending ``#0`` and ``#1``.

        Raises
        ------
        lpga.exceptions.GraphMismatchError
            Raised if graphs or exponents differ

        """
        if self.graph != other.graph or self.p != other.p:
            raise lpga.exceptions.GraphMismatchError(
                "Direct sums need families of the same graph and exponent"
            )

        def rename(atom, tag):
            return f"{atom}#{tag}"

        parts = ((self, 0), (other, 1))
        atoms = [
            rename(atom, tag) for family, tag in parts for atom in family.space.atoms
        ]
        space = AtomicMeasureSpace(
            atoms=atoms,
            weights={
                rename(atom, tag): weight
                for family, tag in parts
                for atom, weight in family.space.weights.items()
            },
            vertex_of={
                rename(atom, tag): vertex
                for family, tag in parts
                for atom, vertex in family.space.vertex_of.items()
            },
            edge_support={
                edge_id: {
                    rename(atom, tag)
                    for family, tag in parts
                    for atom in family.space.edge_support.get(edge_id, ())
                }
                for edge_id in self.graph.edge_ids
            },
        )

        def combine(key, attribute):
            blocks = [getattr(family, attribute)[key] for family, _ in parts]
            matrix = np.zeros((len(space), len(space)), dtype=complex)
            offset = len(self.space)
            matrix[:offset, :offset] = blocks[0].matrix
            matrix[offset:, offset:] = blocks[1].matrix
            certificate = None
            if all(block.certificate is not None for block in blocks):
                eta, phases = {}, {}
                for (_, tag), block in zip(parts, blocks):
                    for atom, image in block.certificate.eta.items():
                        eta[rename(atom, tag)] = rename(image, tag)
                        phases[rename(atom, tag)] = block.certificate.f[atom]
                certificate = SpatialSystem(
                    E=frozenset(eta.values()), F=frozenset(eta), eta=eta, f=phases
                )
            return SpatialOperator(
                matrix=matrix, certificate=certificate, space=space, p=self.p
            )

        exact_phases = None
        if self.exact_phases is not None and self.exact_phases == other.exact_phases:
            exact_phases = self.exact_phases
        return CKFamily(
            graph=self.graph,
            space=space,
            p=self.p,
            S={key: combine(key, "S") for key in self.S},
            T={key: combine(key, "T") for key in self.T},
            E={key: combine(key, "E") for key in self.E},
            exact_phases=exact_phases,
            phases=self.phases if self.phases == other.phases else None,
        )


def _phases(graph, phases):
    numeric = {edge_id: 1.0 + 0j for edge_id in graph.edge_ids}
    exact = {edge_id: QQ_I.one for edge_id in graph.edge_ids}
    for edge_id, value in (phases or {}).items():
        if not graph.has_edge(edge_id):
            raise lpga.exceptions.UnknownEdgeError(f"Phase for unknown edge {edge_id}")
        if isinstance(value, str):
            value = lpga.utils.parse_complex_pair(value)
        if isinstance(value, QQ_I.dtype):
            exact_value, numeric_value = value, lpga.utils.EXACT.to_complex(value)
        else:
            exact_value, numeric_value = lpga.utils.exact_or_numeric(
                value if isinstance(value, (tuple, list)) else complex(value)
            )
        if not lpga.utils.NUMERIC.is_unimodular(numeric_value):
            raise lpga.exceptions.NotUnimodularError(
                f"Phase of edge {edge_id} does not have modulus one"
            )
        numeric[edge_id] = numeric_value
        if exact is not None and exact_value is not None:
            exact[edge_id] = exact_value
        else:
            exact = None
    return numeric, exact


def atomic_ck_family(graph, p, phases=None, weights=None, source_size=1):
    """
    Synthesise a Cuntz-Krieger family on a finite atomic measure space.

    Vertex *v* gets atoms ``"v:0"``, ``"v:1"``, … as counted by
    :func:`atomic_size_assignment`. The atoms of a regular vertex are split
    into consecutive blocks :math:`X_a`, one per edge in
    :math:`r^{-1}(v)` in edge order, of size :math:`|X_{s(a)}|`. The
    operator :math:`S_a` moves :math:`X_{s(a)}` onto :math:`X_a` preserving
    the atom order and multiplies by the phase of *a*, :math:`T_a` is its
    reverse and :math:`E_v` the indicator of :math:`X_v`.

    Parameters
    ----------
    graph : :class:`lpga.graphs.Graph`
        Graph with a solvable atom count assignment

    p : :class:`float`
        Exponent, at least one

    phases : :class:`dict`
        Unimodular phase per edge, defaulting to one. Values may be complex
        numbers, pairs ``(re, im)`` or strings ``"re,im"``.

    weights : :class:`dict`
        Positive weight per atom, defaulting to one

    source_size : :class:`int`
        Atom count of free vertices

    Returns
    -------
    family : :class:`CKFamily`
        Family satisfying the Cuntz-Krieger relations

    Raises
    ------
    lpga.exceptions.UnsolvableAssignmentError
        Raised if the graph admits no finite atomic family

    """
    sizes = atomic_size_assignment(graph, source_size=source_size)
    if isinstance(sizes, Unsolvable):
        raise lpga.exceptions.UnsolvableAssignmentError(
            f"No finite atomic family for graph {graph.name}: {sizes.reason}"
        )
    numeric_phases, exact_phases = _phases(graph, phases)
    owned = {
        vertex: [f"{vertex}:{index}" for index in range(size)]
        for vertex, size in sizes.items()
    }
    atoms = [atom for vertex in graph.vertices for atom in owned[vertex]]
    vertex_of = {atom: vertex for vertex in graph.vertices for atom in owned[vertex]}
    supports = {}
    for vertex in graph.vertices:
        offset = 0
        for edge_id in graph.range_preimage(vertex):
            size = sizes[graph.source(edge_id)]
            supports[edge_id] = owned[vertex][offset:offset + size]
            offset += size
    space = AtomicMeasureSpace(
        atoms=atoms, weights=weights, vertex_of=vertex_of, edge_support=supports
    )
    space.validate(graph)
    S, T = {}, {}
    for edge in graph.edges:
        eta = dict(zip(supports[edge.id], owned[edge.source]))
        system = SpatialSystem.create(
            eta, {atom: numeric_phases[edge.id] for atom in eta}
        )
        S[edge.id] = spi_matrix(space, system, p)
        T[edge.id] = spi_reverse(S[edge.id])
    E = {
        vertex: spi_matrix(space, SpatialSystem.identity(owned[vertex]), p)
        for vertex in graph.vertices
    }
    logger.debug(
        "Atomic family for %s on %d atoms", graph.name or "graph", len(space)
    )
    return CKFamily(
        graph=graph,
        space=space,
        p=p,
        S=S,
        T=T,
        E=E,
        exact_phases=exact_phases,
        phases=numeric_phases,
    )


def _check_graph(element, family):
    if element.algebra.graph != family.graph:
        raise lpga.exceptions.GraphMismatchError(
            "Element and family belong to different graphs"
        )


def _path_product(family, path, generators, reverse, cache):
    key = (path, reverse)
    if key not in cache:
        if path.is_vertex:
            cache[key] = family.E[path.base].matrix
        else:
            edges = reversed(path.edges) if reverse else path.edges
            matrix = None
            for edge_id in edges:
                factor = generators[edge_id].matrix
                matrix = factor if matrix is None else matrix @ factor
            cache[key] = matrix
    return cache[key]


def represent(element, family):
    """
    Map an algebra element to a matrix by substituting the family.

    A monomial ``s_α t_β`` becomes
    :math:`S_{α_1} ⋯ S_{α_n} T_{β_m} ⋯ T_{β_1}`, a vertex ``e_v`` becomes
    :math:`E_v`.

    Raises
    ------
    lpga.exceptions.GraphMismatchError
        Raised if the element belongs to another graph

    """
    _check_graph(element, family)
    cache = {}
    result = np.zeros((family.dimension, family.dimension), dtype=complex)
    for monomial, value in element.terms.items():
        left = _path_product(family, monomial.alpha, family.S, False, cache)
        right = _path_product(family, monomial.beta, family.T, True, cache)
        result += element.field.to_complex(value) * (left @ right)
    return result


def _exact_generator(family, edge_id, reverse):
    size = family.dimension
    rows = [[QQ_I.zero] * size for _ in range(size)]
    space = family.space
    phase = family.exact_phases[edge_id]
    initial = space.atoms_of(family.graph.source(edge_id))
    for source, target in zip(space.support(edge_id), initial):
        if reverse:
            rows[space.index(target)][space.index(source)] = (
                lpga.utils.EXACT.conjugate(phase)
            )
        else:
            rows[space.index(source)][space.index(target)] = phase
    return DomainMatrix(rows, (size, size), QQ_I)


def represent_exact(element, family):
    """
    Exact counterpart of :func:`represent` over the Gaussian rationals.

    Returns
    -------
    matrix : :class:`sympy.polys.matrices.DomainMatrix`
        Matrix over ``QQ_I``

    Raises
    ------
    lpga.exceptions.PreconditionError
        Raised if the family has non-rational phases or non-unit weights

    """
    _check_graph(element, family)
    if not family.is_exact:
        raise lpga.exceptions.PreconditionError(
            "Exact representation needs Gaussian rational phases and unit weights"
        )
    size = family.dimension
    space = family.space
    vertices = {}
    for vertex in family.graph.vertices:
        rows = [[QQ_I.zero] * size for _ in range(size)]
        for atom in space.atoms_of(vertex):
            rows[space.index(atom)][space.index(atom)] = QQ_I.one
        vertices[vertex] = DomainMatrix(rows, (size, size), QQ_I)
    edge_ids = family.graph.edge_ids
    S = {edge_id: _exact_generator(family, edge_id, False) for edge_id in edge_ids}
    T = {edge_id: _exact_generator(family, edge_id, True) for edge_id in edge_ids}

    def product(path, generators, reverse):
        if path.is_vertex:
            return vertices[path.base]
        edges = reversed(path.edges) if reverse else path.edges
        matrix = None
        for edge_id in edges:
            generator = generators[edge_id]
            matrix = generator if matrix is None else matrix.matmul(generator)
        return matrix

    field = lpga.utils.EXACT
    result = DomainMatrix.zeros((size, size), QQ_I)
    for monomial, value in element.terms.items():
        term = product(monomial.alpha, S, False).matmul(product(monomial.beta, T, True))
        result = result + term * field.convert(value)
    return result


def support_of(element, family, tolerance=1e-9):
    """
    Return the set of atoms an element represents as indicator.

    Raises
    ------
    lpga.exceptions.NotAnIndicatorError
        Raised if the represented matrix is not a 0/1 diagonal matrix

    """
    matrix = represent(element, family)
    diagonal = np.diag(matrix)
    off_diagonal = matrix - np.diag(diagonal)
    if np.max(np.abs(off_diagonal), initial=0.0) > tolerance or np.any(
        np.minimum(np.abs(diagonal), np.abs(diagonal - 1.0)) > tolerance
    ):
        raise lpga.exceptions.NotAnIndicatorError(
            f"Element {element} is not represented by an indicator"
        )
    return frozenset(
        atom
        for atom, value in zip(family.space.atoms, diagonal)
        if abs(value - 1.0) <= tolerance
    )
