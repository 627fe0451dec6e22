"""
Exact arithmetic in Leavitt path algebras.

The Leavitt path algebra :math:`L_Q` of a finite graph *Q* is generated by
vertex idempotents ``e_v`` and elements ``s_a``, ``t_a`` for each edge *a*,
subject to

#. ``e_v e_w = δ_{v,w} e_v``,
#. ``e_{r(a)} s_a = s_a e_{s(a)} = s_a`` and ``e_{s(a)} t_a = t_a e_{r(a)} = t_a``,
#. ``t_a s_b = δ_{a,b} e_{s(b)}``,
#. ``e_v = Σ_{a ∈ r⁻¹(v)} s_a t_a`` for every regular vertex *v*.

Every element is a finite linear combination of monomials ``s_α t_β``
with ``s(α) = s(β)``. A vertex ``e_v`` is the monomial with both paths equal
to the vertex *v*.


Products and normal forms
=========================

Monomials multiply without any knowledge of the graph: in
``(s_α t_β)(s_γ t_δ)`` the middle factor ``t_β s_γ`` is ``e_{s(β)}`` if
``β = γ``, ``t_{β'}`` if ``β = γβ'``, ``s_{γ'}`` if ``γ = βγ'``, and zero
otherwise.

Equality in :math:`L_Q` is decided by a normal form: for each regular
vertex *v*, a :class:`BasisPolicy` selects a special edge *f* in ``r⁻¹(v)``,
and the relation (4) is used from right to left to rewrite

``s_{αf} t_{βf} → s_α t_β − Σ_{a ∈ r⁻¹(v), a ≠ f} s_{αa} t_{βa}``

until no monomial ends with the same special edge on both sides. Each step
replaces a monomial of total length *L* by one of length *L* − 2 and
irreducible monomials of length *L*, hence the rewriting terminates. The
result does not depend on the order of the steps.


Coefficients
============

Algebras are exact (coefficients in ℚ(i), see
:class:`lpga.utils.GaussianRationals`) by default. Numeric algebras with
double-precision coefficients are used for handing elements over to
representations, see :meth:`AlgebraElement.to_numeric`.


Module documentation
====================

"""

import dataclasses
import logging

import numpy as np

import lpga.exceptions
import lpga.graphs
import lpga.report
import lpga.utils
from lpga.graphs import Comparison


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


@dataclasses.dataclass(frozen=True)
class Monomial:
    """
    Monomial ``s_α t_β`` of a Leavitt path algebra.

    Attributes
    ----------
    alpha : :class:`lpga.graphs.Path`
        Path of the ``s`` part

    beta : :class:`lpga.graphs.Path`
        Path of the ``t`` part

    Raises
    ------
    ValueError
        Raised if the paths do not share their source

    """

    alpha: lpga.graphs.Path
    beta: lpga.graphs.Path

    def __post_init__(self):
        if self.alpha.source != self.beta.source:
            raise ValueError(
                f"Paths {self.alpha} and {self.beta} need a common source"
            )

    def __str__(self):
        if self.alpha.is_vertex and self.beta.is_vertex:
            return f"e_{self.alpha.base}"
        parts = []
        if not self.alpha.is_vertex:
            parts.append(f"s_{self.alpha}")
        if not self.beta.is_vertex:
            parts.append(f"t_{self.beta}")
        return " ".join(parts)

    @property
    def source(self):
        """Common source vertex of both paths."""
        return self.alpha.source

    @property
    def degree(self):
        """Gauge degree ``|α| − |β|``."""
        return len(self.alpha) - len(self.beta)

    @property
    def length(self):
        """Total length ``|α| + |β|``."""
        return len(self.alpha) + len(self.beta)

    @property
    def is_vertex(self):
        """Whether the monomial is a vertex idempotent."""
        return self.alpha.is_vertex and self.beta.is_vertex

    def sort_key(self):
        """Key ordering by total length, then α, then β."""
        return self.length, self.alpha.sort_key(), self.beta.sort_key()

    def star(self):
        """Return ``s_β t_α``."""
        return Monomial(self.beta, self.alpha)


def monomial_product(first, second):
    """
    Multiply two monomials by the four-case rule.

    Parameters
    ----------
    first : :class:`Monomial`
        Left factor ``s_α t_β``

    second : :class:`Monomial`
        Right factor ``s_γ t_δ``

    Returns
    -------
    product : :class:`Monomial` | None
        The product, or None if it vanishes

    """
    comparison = lpga.graphs.compare_paths(first.beta, second.alpha)
    if comparison.kind is Comparison.EQUAL:
        return Monomial(first.alpha, second.beta)
    if comparison.kind is Comparison.ALPHA_EXTENDS_BETA:
        return Monomial(first.alpha, second.beta.concat(comparison.remainder))
    if comparison.kind is Comparison.BETA_EXTENDS_ALPHA:
        return Monomial(first.alpha.concat(comparison.remainder), second.beta)
    return None


class BasisPolicy:
    """
    Choice of a special edge for every regular vertex.

    The special edges determine the normal form of algebra elements.

    Attributes
    ----------
    graph : :class:`lpga.graphs.Graph`
        Graph the policy belongs to

    special_edges : :class:`dict`
        Special edge per regular vertex

    Raises
    ------
    lpga.exceptions.PolicyError
        Raised if a regular vertex is not covered or the special edge does
        not end in its vertex

    """

    def __init__(self, graph, special_edges):
        self.graph = graph
        self.special_edges = dict(sorted(special_edges.items()))
        for vertex in graph.regular_vertices:
            if vertex not in self.special_edges:
                raise lpga.exceptions.PolicyError(
                    f"No special edge for regular vertex {vertex}"
                )
        for vertex, edge_id in self.special_edges.items():
            if not graph.has_vertex(vertex) or not graph.is_regular(vertex):
                raise lpga.exceptions.PolicyError(
                    f"Special edge given for non-regular vertex {vertex}"
                )
            if edge_id not in graph.range_preimage(vertex):
                raise lpga.exceptions.PolicyError(
                    f"Edge {edge_id} does not end in vertex {vertex}"
                )

    @classmethod
    def default(cls, graph):
        """Policy choosing the least edge id ending in each regular vertex."""
        return cls(
            graph,
            {
                vertex: graph.range_preimage(vertex)[0]
                for vertex in graph.regular_vertices
            },
        )

    @classmethod
    def from_mapping(cls, graph, mapping):
        """Default policy with the special edges in mapping overriding it."""
        special_edges = cls.default(graph).special_edges
        special_edges.update({str(key): str(value) for key, value in mapping.items()})
        return cls(graph, special_edges)

    def special_edge(self, vertex):
        """Return the special edge of a regular vertex."""
        return self.special_edges[vertex]

    def __eq__(self, other):
        if not isinstance(other, BasisPolicy):
            return NotImplemented
        return self.graph == other.graph and self.special_edges == other.special_edges

    def __hash__(self):
        return hash((self.graph, tuple(self.special_edges.items())))

    def to_dict(self):
        """Return the special edges."""
        return dict(self.special_edges)

    def is_reducible(self, monomial):
        """Whether both paths of a monomial end in the same special edge."""
        last = monomial.alpha.last_edge
        if last is None or last != monomial.beta.last_edge:
            return False
        vertex = self.graph.range(last)
        return self.special_edges.get(vertex) == last


class LeavittAlgebra:
    """
    Leavitt path algebra of a finite graph.

    The algebra is a factory for its elements; it holds the graph and the
    coefficient field.

    Attributes
    ----------
    graph : :class:`lpga.graphs.Graph`
        Underlying graph

    field : :class:`lpga.utils.CoefficientField`
        Coefficient field, exact unless created with ``exact=False``

    Examples
    --------
    For the graph with two loops *a*, *b* at *v*:

    .. code-block::

        algebra = LeavittAlgebra(graph)
        x = algebra.s("a") * algebra.t("a") + algebra.s("b") * algebra.t("b")
        normalize(x, BasisPolicy.default(graph)) == algebra.e("v")  # True

    """

    def __init__(self, graph, exact=True):
        self.graph = graph
        self.field = lpga.utils.coefficient_field(exact)

    def __eq__(self, other):
        if not isinstance(other, LeavittAlgebra):
            return NotImplemented
        return self.graph == other.graph and self.field.exact == other.field.exact

    def __hash__(self):
        return hash((self.graph, self.field.exact))

    @property
    def exact(self):
        """Whether coefficients are exact."""
        return self.field.exact

    def path(self, edges, base=None):
        """Return a path of the graph, a vertex path if edges are empty."""
        if isinstance(edges, lpga.graphs.Path):
            return edges
        if isinstance(edges, str):
            edges = [edges]
        return self.graph.make_path(list(edges), base)

    def monomial(self, alpha, beta, base_alpha=None, base_beta=None):
        """Return the monomial ``s_α t_β`` for given edge lists or paths."""
        return Monomial(self.path(alpha, base_alpha), self.path(beta, base_beta))

    def element(self, terms=None):
        """
        Create an element from a mapping monomial → coefficient.

        Coefficients are converted into the coefficient field.
        """
        return AlgebraElement(self, terms or {})

    def zero(self):
        """Return the zero element."""
        return AlgebraElement(self, {})

    def from_monomial(self, monomial, coefficient=1):
        """Return ``coefficient · monomial``."""
        return AlgebraElement(self, {monomial: coefficient})

    def e(self, vertex):
        """Return the vertex idempotent ``e_v``."""
        path = self.graph.vertex_path(vertex)
        return self.from_monomial(Monomial(path, path))

    def s(self, *edges):
        """Return ``s_α`` for the path α given by its edges."""
        path = self.graph.path(*edges)
        return self.from_monomial(
            Monomial(path, self.graph.vertex_path(path.source))
        )

    def t(self, *edges):
        """Return ``t_β`` for the path β given by its edges."""
        path = self.graph.path(*edges)
        return self.from_monomial(
            Monomial(self.graph.vertex_path(path.source), path)
        )

    def vertex_sum(self, vertices):
        """Return ``ε_S = Σ_{v ∈ S} e_v``."""
        result = self.zero()
        for vertex in vertices:
            result = result + self.e(vertex)
        return result

    def unit(self):
        """Return the sum of all vertex idempotents, the unit of the algebra."""
        return self.vertex_sum(self.graph.vertices)

    def numeric(self):
        """Return the numeric counterpart of this algebra."""
        return LeavittAlgebra(self.graph, exact=False)


class AlgebraElement:
    """
    Finite linear combination of monomials.

    Elements are immutable; arithmetic returns new elements. Zero
    coefficients are never stored. Elements know whether they are in
    normal form with respect to a basis policy (attribute ``policy``);
    products with a normalised factor are normalised again.

    Attributes
    ----------
    algebra : :class:`LeavittAlgebra`
        Algebra the element belongs to

    terms : :class:`dict`
        Mapping :class:`Monomial` → coefficient

    policy : :class:`BasisPolicy`
        Policy the element is normalised with, None if not normalised

    """

    def __init__(self, algebra, terms, policy=None):
        self.algebra = algebra
        field = algebra.field
        self.terms = {}
        for monomial, coefficient in terms.items():
            coefficient = field.convert(coefficient)
            if not field.is_zero(coefficient):
                self.terms[monomial] = coefficient
        self.policy = policy

    @property
    def field(self):
        """Coefficient field of the algebra."""
        return self.algebra.field

    def sorted_terms(self):
        """Return ``(monomial, coefficient)`` pairs in canonical order."""
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for monomial, coefficient in self.sorted_terms():
            if coefficient == self.field.one:
                parts.append(str(monomial))
            elif coefficient == -self.field.one:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{self.field.describe(coefficient)}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def _check_compatible(self, other):
        if self.algebra.graph != other.algebra.graph:
            raise lpga.exceptions.GraphMismatchError(
                "Elements belong to algebras of different graphs"
            )
        if self.field.exact != other.field.exact:
            raise TypeError("Cannot combine exact and numeric elements")

    def _combine(self, other, sign):
        self._check_compatible(other)
        terms = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            if sign < 0:
                coefficient = -coefficient
            terms[monomial] = terms.get(monomial, self.field.zero) + coefficient
        return AlgebraElement(self.algebra, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return AlgebraElement(
            self.algebra,
            {monomial: -value for monomial, value in self.terms.items()},
            self.policy,
        )

    def scale(self, scalar):
        """Return the element multiplied by a scalar."""
        scalar = self.field.convert(scalar)
        return AlgebraElement(
            self.algebra,
            {monomial: scalar * value for monomial, value in self.terms.items()},
            self.policy,
        )

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self):
        """Whether no term is stored (not whether the element vanishes in L_Q)."""
        return not self.terms

    def degrees(self):
        """Sorted gauge degrees occurring in the element."""
        return sorted({monomial.degree for monomial in self.terms})

    def max_path_length(self):
        """Largest length of a path occurring in the element."""
        return max(
            (
                max(len(monomial.alpha), len(monomial.beta))
                for monomial in self.terms
            ),
            default=0,
        )

    def star(self):
        """Return the element with ``s``, ``t`` swapped and coefficients conjugated."""
        return AlgebraElement(
            self.algebra,
            {
                monomial.star(): self.field.conjugate(value)
                for monomial, value in self.terms.items()
            },
        )

    def max_abs_coefficient(self):
        """Largest modulus of a coefficient, zero for the zero element."""
        return max(
            (abs(self.field.to_complex(value)) for value in self.terms.values()),
            default=0.0,
        )

    def to_numeric(self):
        """Return the element over the numeric coefficient field."""
        algebra = self.algebra.numeric()
        return AlgebraElement(
            algebra,
            {
                monomial: self.field.to_complex(value)
                for monomial, value in self.terms.items()
            },
            self.policy,
        )


def mul_monomials(algebra, first, second):
    """
    Multiply two monomials of an algebra.

    Returns
    -------
    product : :class:`AlgebraElement`
        Element with at most one term

    """
    product = monomial_product(first, second)
    if product is None:
        return algebra.zero()
    return algebra.from_monomial(product)


def mul(first, second):
    """
    Multiply two elements.

    The product is the bilinear extension of :func:`monomial_product`. If
    either factor is normalised, so is the product.

    Raises
    ------
    lpga.exceptions.GraphMismatchError
        Raised if the factors belong to different graphs

    """
    first._check_compatible(second)
    field = first.field
    terms = {}
    for left, left_value in first.terms.items():
        for right, right_value in second.terms.items():
            product = monomial_product(left, right)
            if product is not None:
                terms[product] = (
                    terms.get(product, field.zero) + left_value * right_value
                )
    result = AlgebraElement(first.algebra, terms)
    policy = first.policy or second.policy
    if policy is not None:
        result = normalize(result, policy)
    return result


def _rewrite(graph, policy, monomial):
    """Return the replacement terms of a reducible monomial as (monomial, sign)."""
    special = monomial.alpha.last_edge
    vertex = graph.range(special)
    alpha = _drop_last(graph, monomial.alpha, vertex)
    beta = _drop_last(graph, monomial.beta, vertex)
    replacement = [(Monomial(alpha, beta), 1)]
    for edge_id in graph.range_preimage(vertex):
        if edge_id == special:
            continue
        edge = graph.path(edge_id)
        replacement.append((Monomial(alpha.concat(edge), beta.concat(edge)), -1))
    return replacement


def _drop_last(graph, path, vertex):
    if len(path) == 1:
        return graph.vertex_path(vertex)
    return graph.path(*path.edges[:-1])


def normalize(element, policy, rng=None):
    """
    Return the normal form of an element.

    Parameters
    ----------
    element : :class:`AlgebraElement`
        Element to normalise

    policy : :class:`BasisPolicy`
        Special edges defining the normal form

    rng : :class:`numpy.random.Generator`
        If given, reducible terms are rewritten in random order instead of
        longest-first. The result is the same.

    Returns
    -------
    element : :class:`AlgebraElement`
        Normal form, flagged as normalised with the policy

    Raises
    ------
    lpga.exceptions.PolicyError
        Raised if the policy belongs to another graph

    """
    graph = element.algebra.graph
    if policy.graph != graph:
        raise lpga.exceptions.PolicyError("Policy belongs to another graph")
    if element.policy == policy:
        return element
    field = element.field
    terms = dict(element.terms)
    reducible = {monomial for monomial in terms if policy.is_reducible(monomial)}
    steps = 0
    while reducible:
        candidates = sorted(reducible, key=Monomial.sort_key)
        if rng is None:
            monomial = candidates[-1]
        else:
            monomial = candidates[int(rng.integers(len(candidates)))]
        reducible.discard(monomial)
        coefficient = terms.pop(monomial)
        for target, sign in _rewrite(graph, policy, monomial):
            value = terms.get(target, field.zero) + (
                coefficient if sign > 0 else -coefficient
            )
            if field.is_zero(value):
                terms.pop(target, None)
                reducible.discard(target)
            else:
                terms[target] = value
                if policy.is_reducible(target):
                    reducible.add(target)
        steps += 1
    logger.debug("Normalisation took %d rewriting steps", steps)
    return AlgebraElement(element.algebra, terms, policy)


def equal_in_algebra(first, second, policy=None):
    """Whether two elements agree in the Leavitt path algebra."""
    policy = policy or BasisPolicy.default(first.algebra.graph)
    return normalize(first - second, policy).is_zero()


def expand_to_level(element, level):
    """
    Expand terms by the Cuntz-Krieger relation up to a given level.

    Every term ``s_α t_β`` with ``min(|α|, |β|) < level`` is replaced by
    ``Σ_{a ∈ r⁻¹(w)} s_{αa} t_{βa}``, *w* its source, until
    ``min(|α|, |β|) = level``.

    Raises
    ------
    lpga.exceptions.SourceBlockedError
        Raised if a term to expand has a non-regular source vertex

    """
    if level < 0:
        raise ValueError("Level needs to be non-negative")
    graph = element.algebra.graph
    field = element.field
    terms = {}
    pending = list(element.terms.items())
    while pending:
        monomial, coefficient = pending.pop()
        if min(len(monomial.alpha), len(monomial.beta)) >= level:
            terms[monomial] = terms.get(monomial, field.zero) + coefficient
            continue
        vertex = monomial.source
        if not graph.is_regular(vertex):
            raise lpga.exceptions.SourceBlockedError(
                f"Cannot expand {monomial}: vertex {vertex} is not regular"
            )
        for edge_id in graph.range_preimage(vertex):
            edge = graph.path(edge_id)
            pending.append(
                (
                    Monomial(monomial.alpha.concat(edge), monomial.beta.concat(edge)),
                    coefficient,
                )
            )
    return AlgebraElement(element.algebra, terms)


def _to_scalar(field, z):
    value = field.convert(z)
    if not field.is_unimodular(value):
        raise lpga.exceptions.NotUnimodularError(
            f"{z} does not have modulus one"
            + ("" if not field.exact else " (exact algebras need Gaussian rationals)")
        )
    return value


def gauge_apply(z, element):
    """
    Apply the gauge action ``γ_z``.

    Each term ``λ s_α t_β`` is mapped to ``z^{|α|−|β|} λ s_α t_β``.

    Parameters
    ----------
    z : :class:`complex`
        Unimodular scalar. Exact algebras need an exactly unimodular
        Gaussian rational such as ``1j`` or ``(3/5, 4/5)``.

    element : :class:`AlgebraElement`
        Element to rotate

    Raises
    ------
    lpga.exceptions.NotUnimodularError
        Raised if ``|z| ≠ 1`` (within 1e-12 for numeric algebras)

    """
    field = element.field
    value = _to_scalar(field, z)
    conjugate = field.conjugate(value)
    terms = {}
    for monomial, coefficient in element.terms.items():
        degree = monomial.degree
        factor = value**degree if degree >= 0 else conjugate ** (-degree)
        terms[monomial] = factor * coefficient
    return AlgebraElement(element.algebra, terms, element.policy)


def phi_n(n, element):
    """Spectral projection: keep exactly the terms of gauge degree *n*."""
    return AlgebraElement(
        element.algebra,
        {
            monomial: value
            for monomial, value in element.terms.items()
            if monomial.degree == n
        },
        element.policy,
    )


@dataclasses.dataclass(frozen=True)
class Block:
    """
    Matrix block of an acyclic graph algebra at a source.

    Attributes
    ----------
    source : :class:`str`
        Source vertex *v*

    paths : :class:`tuple`
        All paths starting at *v*, ordered by length, then lexicographically

    """

    source: str
    paths: tuple

    @property
    def dimension(self):
        """Number ``n_v`` of paths, the size of the matrix block."""
        return len(self.paths)

    def index(self, path):
        """Position of a path within the block."""
        return self.paths.index(path)


class AcyclicDecomposition:
    """
    Decomposition of the algebra of a finite acyclic graph into matrix blocks.

    For every source *v*, the monomials ``s_α t_β`` with ``s(α) = s(β) = v``
    form a system of ``n_v × n_v`` matrix units, and the algebra is the
    direct sum of these blocks. Elements are mapped to blocks by expanding
    every term down to the sources.

    Attributes
    ----------
    algebra : :class:`LeavittAlgebra`
        Algebra of the graph

    blocks : :class:`dict`
        :class:`Block` per source

    """

    def __init__(self, algebra, blocks):
        self.algebra = algebra
        self.blocks = blocks

    @property
    def dimension(self):
        """Dimension ``Σ_v n_v²`` of the algebra."""
        return sum(block.dimension**2 for block in self.blocks.values())

    def matrix_unit(self, source, row, column):
        """Return ``s_α t_β`` for paths α, β at the given block positions."""
        block = self.blocks[source]
        return self.algebra.from_monomial(
            Monomial(block.paths[row], block.paths[column])
        )

    def full_expansion(self, element):
        """Expand every term until its source vertex is a source of the graph."""
        graph = self.algebra.graph
        field = element.field
        terms = {}
        pending = list(element.terms.items())
        while pending:
            monomial, coefficient = pending.pop()
            vertex = monomial.source
            if not graph.is_regular(vertex):
                terms[monomial] = terms.get(monomial, field.zero) + coefficient
                continue
            for edge_id in graph.range_preimage(vertex):
                edge = graph.path(edge_id)
                pending.append(
                    (
                        Monomial(
                            monomial.alpha.concat(edge), monomial.beta.concat(edge)
                        ),
                        coefficient,
                    )
                )
        return AlgebraElement(element.algebra, terms)

    def component(self, element, source):
        """Return the part of an element living in the block of a source."""
        expanded = self.full_expansion(element)
        return AlgebraElement(
            element.algebra,
            {
                monomial: value
                for monomial, value in expanded.terms.items()
                if monomial.source == source
            },
        )

    def to_matrices(self, element):
        """
        Return the block matrices of an element.

        Returns
        -------
        matrices : :class:`dict`
            Complex :class:`numpy.ndarray` of shape ``(n_v, n_v)`` per source

        """
        expanded = self.full_expansion(element)
        matrices = {
            source: np.zeros((block.dimension, block.dimension), dtype=complex)
            for source, block in self.blocks.items()
        }
        for monomial, value in expanded.terms.items():
            block = self.blocks[monomial.source]
            matrices[monomial.source][
                block.index(monomial.alpha), block.index(monomial.beta)
            ] += element.field.to_complex(value)
        return matrices

    def to_dict(self):
        """Return sources with their paths and dimensions."""
        return {
            source: {
                "paths": [str(path) for path in block.paths],
                "n": block.dimension,
            }
            for source, block in self.blocks.items()
        }


def acyclic_decomposition(graph, exact=True):
    """
    Decompose the algebra of a finite acyclic graph into matrix blocks.

    Parameters
    ----------
    graph : :class:`lpga.graphs.Graph`
        Finite acyclic graph without flagged infinite receivers

    exact : :class:`bool`
        Whether the algebra of the decomposition is exact

    Returns
    -------
    decomposition : :class:`AcyclicDecomposition`
        One block per source vertex

    Raises
    ------
    lpga.exceptions.CyclicGraphError
        Raised if the graph contains a cycle

    """
    if not graph.is_acyclic():
        raise lpga.exceptions.CyclicGraphError(
            f"Graph {graph.name} contains a cycle"
        )
    if graph.infinite_receivers:
        raise lpga.exceptions.PreconditionError(
            "Graphs with infinite receivers have no finite block decomposition"
        )
    algebra = LeavittAlgebra(graph, exact=exact)
    blocks = {}
    max_len = max(len(graph.vertices) - 1, 0)
    for source in graph.sources:
        paths = lpga.graphs.enumerate_paths(graph, max_len, (None, source))
        paths.sort(key=lambda path: (len(path), path.edges))
        blocks[source] = Block(source=source, paths=tuple(paths))
    return AcyclicDecomposition(algebra, blocks)


@dataclasses.dataclass
class GeneratorFamily:
    """
    Assignment of algebra elements to the generators of a target graph.

    Attributes
    ----------
    target : :class:`lpga.graphs.Graph`
        Graph whose generators are assigned

    algebra : :class:`LeavittAlgebra`
        Algebra the assigned elements live in

    E : :class:`dict`
        Element per target vertex

    S : :class:`dict`
        Element per target edge

    T : :class:`dict`
        Element per target edge

    """

    target: lpga.graphs.Graph
    algebra: LeavittAlgebra
    E: dict
    S: dict
    T: dict

    def replace(self, E=None, S=None, T=None):
        """Return a copy with some of the assigned elements replaced."""
        return GeneratorFamily(
            target=self.target,
            algebra=self.algebra,
            E={**self.E, **(E or {})},
            S={**self.S, **(S or {})},
            T={**self.T, **(T or {})},
        )

    def to_dict(self):
        """Return the assigned elements as strings."""
        return {
            "E": {key: str(value) for key, value in sorted(self.E.items())},
            "S": {key: str(value) for key, value in sorted(self.S.items())},
            "T": {key: str(value) for key, value in sorted(self.T.items())},
        }


def tautological_family(algebra):
    """Return the family ``E_v = e_v``, ``S_a = s_a``, ``T_a = t_a``."""
    graph = algebra.graph
    return GeneratorFamily(
        target=graph,
        algebra=algebra,
        E={vertex: algebra.e(vertex) for vertex in graph.vertices},
        S={edge_id: algebra.s(edge_id) for edge_id in graph.edge_ids},
        T={edge_id: algebra.t(edge_id) for edge_id in graph.edge_ids},
    )


def embedded_ck_family(completed, graph, tagging):
    """
    Return the Cuntz-Krieger family of a completed graph inside ``L_Q``.

    With ``ε_v = Σ_{a ∈ r⁻¹(v)} s_a t_a`` (sum over the edges of the
    intermediate graph) the family is

    * ``E_v = e_v`` for *v* not in *Y*,
    * ``E_v = ε_v`` and ``E_{v'} = e_v − ε_v`` for *v* in *Y*,
    * ``S_a = s_a``, ``T_a = t_a`` if ``s(a)`` is not in *Y*,
    * ``S_a = s_a ε_{s(a)}``, ``T_a = ε_{s(a)} t_a`` if ``s(a)`` is in *Y*,
    * ``S_{a'} = s_a (e_{s(a)} − ε_{s(a)})`` and
      ``T_{a'} = (e_{s(a)} − ε_{s(a)}) t_a``.

    Parameters
    ----------
    completed : :class:`lpga.graphs.Graph`
        Completed graph returned by :func:`lpga.graphs.ck_completion`

    graph : :class:`lpga.graphs.Graph`
        Ambient graph

    tagging : :class:`lpga.graphs.CompletionTagging`
        Tagging returned by :func:`lpga.graphs.ck_completion`

    Returns
    -------
    family : :class:`GeneratorFamily`
        Family with target the completed graph in the exact algebra of the
        ambient graph

    Raises
    ------
    lpga.exceptions.PreconditionError
        Raised if the inputs are not the output of a completion

    """
    _check_tagging(completed, graph, tagging)
    algebra = LeavittAlgebra(graph)
    intermediate = tagging.intermediate
    epsilon = {}
    for vertex in tagging.y:
        epsilon[vertex] = algebra.zero()
        for edge_id in intermediate.range_preimage(vertex):
            epsilon[vertex] = epsilon[vertex] + algebra.s(edge_id) * algebra.t(edge_id)
    family = GeneratorFamily(target=completed, algebra=algebra, E={}, S={}, T={})
    for vertex in completed.vertices:
        if vertex in tagging.primes:
            original = tagging.primes[vertex]
            family.E[vertex] = algebra.e(original) - epsilon[original]
        elif vertex in tagging.y:
            family.E[vertex] = epsilon[vertex]
        else:
            family.E[vertex] = algebra.e(vertex)
    for edge_id in completed.edge_ids:
        original = tagging.primes.get(edge_id, edge_id)
        source = graph.source(original)
        s_a, t_a = algebra.s(original), algebra.t(original)
        if edge_id in tagging.primes:
            complement = algebra.e(source) - epsilon[source]
            family.S[edge_id] = s_a * complement
            family.T[edge_id] = complement * t_a
        elif source in tagging.y:
            family.S[edge_id] = s_a * epsilon[source]
            family.T[edge_id] = epsilon[source] * t_a
        else:
            family.S[edge_id] = s_a
            family.T[edge_id] = t_a
    return family


def _check_tagging(completed, graph, tagging):
    if set(tagging.vertex_tags) != set(completed.vertices) or set(
        tagging.edge_tags
    ) != set(completed.edge_ids):
        raise lpga.exceptions.PreconditionError(
            "Tagging does not match the completed graph"
        )
    for vertex, tag in tagging.vertex_tags.items():
        original = tagging.primes.get(vertex, vertex)
        if tag is lpga.graphs.Provenance.PRIMED:
            if original not in tagging.y:
                raise lpga.exceptions.PreconditionError(
                    f"Primed vertex {vertex} has no counterpart in Y"
                )
        elif not graph.has_vertex(vertex):
            raise lpga.exceptions.PreconditionError(
                f"Vertex {vertex} is not part of the ambient graph"
            )
    for edge_id in completed.edge_ids:
        original = tagging.primes.get(edge_id, edge_id)
        if not graph.has_edge(original):
            raise lpga.exceptions.PreconditionError(
                f"Edge {edge_id} has no counterpart in the ambient graph"
            )


def symbolic_ck_check(family, target=None, policy=None):
    """
    Check the algebraic Cuntz-Krieger relations of a family.

    All relations are decided by normal forms in the algebra the family
    lives in. Violations are report entries, not errors.

    Parameters
    ----------
    family : :class:`GeneratorFamily`
        Family to check

    target : :class:`lpga.graphs.Graph`
        Graph whose relations are checked, defaults to the family's target

    policy : :class:`BasisPolicy`
        Policy for normal forms, defaults to the default policy

    Returns
    -------
    report : :class:`lpga.report.VerificationReport`
        One check per relation instance

    """
    target = target or family.target
    policy = policy or BasisPolicy.default(family.algebra.graph)
    report = lpga.report.VerificationReport(
        subject=f"symbolic CK relations for {target.name or 'graph'}"
    )

    def check(name, left, right):
        difference = normalize(left - right, policy)
        report.add_check(
            name=name,
            passed=difference.is_zero(),
            residual=difference.max_abs_coefficient(),
            detail="" if difference.is_zero() else f"difference {difference}",
        )

    zero = family.algebra.zero()
    vertices = target.vertices
    for index, vertex in enumerate(vertices):
        e_v = family.E[vertex]
        check(f"E_{vertex} E_{vertex} = E_{vertex}", e_v * e_v, e_v)
        for other in vertices[index + 1:]:
            check(f"E_{vertex} E_{other} = 0", family.E[vertex] * family.E[other], zero)
            check(f"E_{other} E_{vertex} = 0", family.E[other] * family.E[vertex], zero)
    for edge in target.edges:
        a = edge.id
        s_a, t_a = family.S[a], family.T[a]
        e_r, e_s = family.E[edge.range], family.E[edge.source]
        check(f"E_r({a}) S_{a} = S_{a}", e_r * s_a, s_a)
        check(f"S_{a} E_s({a}) = S_{a}", s_a * e_s, s_a)
        check(f"E_s({a}) T_{a} = T_{a}", e_s * t_a, t_a)
        check(f"T_{a} E_r({a}) = T_{a}", t_a * e_r, t_a)
        check(f"S_{a} T_{a} S_{a} = S_{a}", s_a * t_a * s_a, s_a)
        check(f"T_{a} S_{a} T_{a} = T_{a}", t_a * s_a * t_a, t_a)
        for other in target.edges:
            expected = e_s if other.id == edge.id else zero
            check(
                f"T_{edge.id} S_{other.id} = "
                + (f"E_{edge.source}" if other.id == edge.id else "0"),
                t_a * family.S[other.id],
                expected,
            )
    for vertex in target.regular_vertices:
        total = zero
        for edge_id in target.range_preimage(vertex):
            total = total + family.S[edge_id] * family.T[edge_id]
        check(f"E_{vertex} = sum S_a T_a (CK2)", family.E[vertex], total)
    return report


def core_projections(algebra, level):
    """
    Return ``ε_v = Σ_{α ∈ Q^k, s(α) = v} s_α t_α`` for every vertex.

    Vertices without paths of length *k* starting at them get zero.
    """
    graph = algebra.graph
    projections = {}
    for vertex in graph.vertices:
        total = algebra.zero()
        for path in lpga.graphs.enumerate_paths(graph, level, (None, vertex)):
            if len(path) == level:
                total = total + algebra.from_monomial(Monomial(path, path))
        projections[vertex] = total
    return projections


def level_paths(graph, level, source):
    """Paths of length exactly *level* starting at a vertex, in canonical order."""
    return [
        path
        for path in lpga.graphs.enumerate_paths(graph, level, (None, source))
        if len(path) == level
    ]


def reduced_monomials(graph, level, policy):
    """
    Monomials ``s_α t_β`` with ``|α|, |β| ≤ level`` in normal form.

    These span the elements of the algebra up to the given level and are
    linearly independent, as the normal form is unique.
    """
    by_source = {}
    for path in lpga.graphs.enumerate_paths(graph, level):
        by_source.setdefault(path.source, []).append(path)
    monomials = [
        Monomial(alpha, beta)
        for paths in by_source.values()
        for alpha in paths
        for beta in paths
    ]
    return sorted(
        (monomial for monomial in monomials if not policy.is_reducible(monomial)),
        key=Monomial.sort_key,
    )


def lift_element(element, algebra):
    """
    Map an element into the algebra of a graph containing its graph.

    Vertices and edges keep their ids.

    Raises
    ------
    lpga.exceptions.UnknownEdgeError
        Raised if an edge is missing in the larger graph

    """
    terms = {}
    for monomial, value in element.terms.items():
        lifted = algebra.monomial(
            list(monomial.alpha.edges),
            list(monomial.beta.edges),
            base_alpha=monomial.alpha.base,
            base_beta=monomial.beta.base,
        )
        terms[lifted] = element.field.to_complex(value) if not algebra.exact else value
    return algebra.element(terms)


def v_operator(algebra, pairs, level, vertex, policy=None):
    """
    Build the compressing operator V for a vertex.

    Parameters
    ----------
    algebra : :class:`LeavittAlgebra`
        Algebra of a graph in which every cycle has an entry

    pairs : :class:`list`
        Pairs ``(α, β)`` of paths, the monomials of an element expanded
        so that ``min(|α|, |β|) = level``

    level : :class:`int`
        Level *k* of the pairs

    vertex : :class:`str`
        Vertex *v* whose block is compressed

    policy : :class:`BasisPolicy`
        Policy for the normal form of V, defaults to the default policy

    Returns
    -------
    result : :class:`tuple`
        ``(V, λ, G)`` with ``G`` the paths of length *level* starting at *v*
        occurring in pairs with ``|α| = |β| = level``, λ a nonreturning path
        with range *v* longer than all paths in pairs, and
        ``V = Σ_{τ ∈ G} s_{τλ} t_{τλ}``

    Raises
    ------
    lpga.exceptions.NoSuchPathError
        Raised if no nonreturning path ends in the vertex

    """
    graph = algebra.graph
    policy = policy or BasisPolicy.default(graph)
    paths = set()
    longest = 0
    for alpha, beta in pairs:
        longest = max(longest, len(alpha), len(beta))
        if len(alpha) == len(beta) == level and alpha.source == vertex:
            paths.update((alpha, beta))
    g_paths = sorted(paths, key=lpga.graphs.Path.sort_key)
    lam = lpga.graphs.find_nonreturning_path(graph, vertex, longest + 1)
    operator = algebra.zero()
    for tau in g_paths:
        path = tau.concat(lam)
        operator = operator + algebra.from_monomial(Monomial(path, path))
    return normalize(operator, policy), lam, g_paths


def _forward_path(graph, vertex, length):
    """Least path τ of given length with ``s(τ) = vertex``."""

    def extend(path_edges, current, remaining):
        if not remaining:
            return path_edges
        for edge_id in graph.source_preimage(current):
            found = extend([edge_id] + path_edges, graph.range(edge_id), remaining - 1)
            if found is not None:
                return found
        return None

    edges = extend([], vertex, length)
    if edges is None:
        raise lpga.exceptions.SinkBlockedError(
            f"No path of length {length} starts at vertex {vertex}"
        )
    return graph.path(*edges)


def spectral_shift_gadget(element, n, policy=None):
    """
    Shift a homogeneous element to gauge degree zero.

    For ``n ≥ 0`` and every range vertex *v* of a β-path in the element, a
    path ``τ_v`` of length *n* with ``s(τ_v) = v`` is chosen, and with
    ``x = Σ t_{τ_v}`` the shifted element is ``a·x``. For ``n < 0`` the
    α-paths are used, ``x = Σ s_{τ_v}`` and the shifted element is
    ``x·a``. The identities ``a x x* = a`` (respectively ``x* x a = a``)
    and ``deg(shifted) = 0`` are asserted by normal forms.

    Parameters
    ----------
    element : :class:`AlgebraElement`
        Element homogeneous of gauge degree *n*

    n : :class:`int`
        Gauge degree

    policy : :class:`BasisPolicy`
        Policy for normal forms, defaults to the default policy

    Returns
    -------
    result : :class:`tuple`
        Shifted element and the pair ``(x, x*)``

    Raises
    ------
    lpga.exceptions.DegreeMismatchError
        Raised if the element is not homogeneous of degree *n*

    lpga.exceptions.SinkBlockedError
        Raised if some ``τ_v`` does not exist

    """
    algebra = element.algebra
    graph = algebra.graph
    policy = policy or BasisPolicy.default(graph)
    if any(degree != n for degree in element.degrees()):
        raise lpga.exceptions.DegreeMismatchError(
            f"Element has degrees {element.degrees()}, expected only {n}"
        )
    if n >= 0:
        vertices = sorted({monomial.beta.range for monomial in element.terms})
    else:
        vertices = sorted({monomial.alpha.range for monomial in element.terms})
    if n == 0:
        unit = algebra.vertex_sum(vertices)
        return normalize(element, policy), (unit, unit)
    x = algebra.zero()
    x_star = algebra.zero()
    for vertex in vertices:
        tau = _forward_path(graph, vertex, abs(n))
        if n > 0:
            x = x + algebra.from_monomial(Monomial(graph.vertex_path(tau.source), tau))
            x_star = x_star + algebra.from_monomial(
                Monomial(tau, graph.vertex_path(tau.source))
            )
        else:
            x = x + algebra.from_monomial(Monomial(tau, graph.vertex_path(tau.source)))
            x_star = x_star + algebra.from_monomial(
                Monomial(graph.vertex_path(tau.source), tau)
            )
    if n > 0:
        shifted = normalize(element * x, policy)
        restored = element * x * x_star
    else:
        shifted = normalize(x * element, policy)
        restored = x_star * x * element
    if not equal_in_algebra(restored, element, policy):
        raise AssertionError("Spectral shift does not restore the element")
    if any(degree != 0 for degree in shifted.degrees()):
        raise AssertionError("Shifted element is not of degree zero")
    return shifted, (x, x_star)


def random_element(algebra, rng, n_terms=3, max_len=2, coefficients="gaussian"):
    """
    Create a random element from monomials with paths up to a length.

    Parameters
    ----------
    algebra : :class:`LeavittAlgebra`
        Algebra to create the element in

    rng : :class:`numpy.random.Generator`
        Random number generator

    n_terms : :class:`int`
        Number of monomials drawn (duplicates are merged)

    max_len : :class:`int`
        Maximum length of the paths of the monomials

    coefficients : :class:`str`
        Either "gaussian" (small Gaussian integers, suitable for exact
        algebras), "complex" (standard normal complex), or "nonnegative"
        (uniform in [0, 1))

    Returns
    -------
    element : :class:`AlgebraElement`
        Random element, possibly zero

    """
    graph = algebra.graph
    paths = lpga.graphs.enumerate_paths(graph, max_len)
    by_source = {}
    for path in paths:
        by_source.setdefault(path.source, []).append(path)
    sources = sorted(by_source)
    terms = {}
    for _ in range(n_terms):
        candidates = by_source[sources[int(rng.integers(len(sources)))]]
        alpha = candidates[int(rng.integers(len(candidates)))]
        beta = candidates[int(rng.integers(len(candidates)))]
        monomial = Monomial(alpha, beta)
        if coefficients == "gaussian":
            value = (int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
        elif coefficients == "nonnegative":
            value = float(rng.uniform(0, 1))
        else:
            value = complex(rng.normal(), rng.normal())
        terms[monomial] = algebra.field.convert(value) + terms.get(
            monomial, algebra.field.zero
        )
    return algebra.element(terms)
