"""
Verification of representations and of uniqueness properties.

The functions in this module check, at desk scale, that spatial
representations of Leavitt path algebras behave as the uniqueness theorems
predict, and that they fail where the hypotheses of these theorems fail:

* :func:`check_ck_family`: numeric check of the Cuntz-Krieger relations of a
  family of operators, including contractivity and hermitian idempotents.

* :func:`injectivity_on_level`: kernel of the canonical map π on the span of
  the normal-form monomials up to a level.

* :func:`isometry_on_level`: comparison of norms of represented elements
  with the norms of the matrix blocks of acyclic graph algebras.

* :func:`gauge_equivariance_check`: the rotated family is a Cuntz-Krieger
  family again, and π intertwines the gauge action with the rotation.

* :func:`uniqueness_witness_suite`: compression by the operator V from
  :func:`lpga.leavitt.v_operator`, checked symbolically and numerically.

* :func:`fixed_point_algebra_report`: matrix-unit blocks of the fixed-point
  algebra on a level and their inclusion into the next level.

* :func:`orthogonal_sum_norm_check`: sums of spatial partial isometries
  with disjoint supports have the supremum norm of their coefficients.

All functions return :class:`lpga.report.VerificationReport` objects:
violations are report entries, not exceptions. Exceptions are raised only
if the hypotheses of a check are not met.


Tolerances
==========

Relations are checked with a residual of 1e-9, norm equalities with a
relative deviation of 1e-6. Checks resting on uncertified norm estimates
are marked as such in the report, see
:attr:`lpga.report.VerificationReport.uncertified`.


Module documentation
====================

"""

import logging

import numpy as np
import scipy.linalg
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix

import lpga.exceptions
import lpga.graphs
import lpga.leavitt
import lpga.pnorm
import lpga.report
import lpga.spatial
import lpga.utils


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

RELATION_TOLERANCE = 1e-9
ISOMETRY_TOLERANCE = 1e-6


def _residual(left, right):
    return float(np.max(np.abs(left - right), initial=0.0))


def _hermitian_idempotent(matrix, weights, p, tolerance):
    """Return (passed, residual, detail) of the structural hermitian test."""
    residual = _residual(matrix @ matrix, matrix)
    if residual > tolerance:
        return False, residual, "not idempotent"
    if p == 2:
        absorbed = lpga.pnorm.absorb_weights(matrix, weights, p)
        deviation = _residual(absorbed, absorbed.conj().T)
        return deviation <= tolerance, max(residual, deviation), (
            "" if deviation <= tolerance else "not self-adjoint"
        )
    if lpga.pnorm.indicator_set(matrix, tolerance=tolerance) is None:
        return False, residual, "not an indicator matrix"
    return True, residual, ""


def check_ck_family(family, tolerance=RELATION_TOLERANCE, seed=0):
    """
    Check the Cuntz-Krieger relations of a family numerically.

    Checked are: the vertex operators are pairwise orthogonal hermitian
    idempotents; all :math:`S_a`, :math:`T_a` are contractive and satisfy
    ``S T S = S`` and ``T S T = T``; ``S_a T_a`` and ``T_a S_a`` are
    hermitian idempotents; the range and source relations, ``T_a S_b =
    δ_{a,b} E_{s(b)}``, and CK2 at every regular vertex. Operators carrying
    a spatial system are checked for coherence with it, bare matrices are
    tested by :func:`lpga.spatial.certificate_from_matrix`.

    Hermitian means self-adjoint for p = 2 and being an indicator matrix
    otherwise.

    Parameters
    ----------
    family : :class:`lpga.spatial.CKFamily`
        Family to check

    tolerance : :class:`float`
        Largest admissible residual

    seed : :class:`int`
        Seed for norm estimates

    Returns
    -------
    report : :class:`lpga.report.VerificationReport`
        One check per relation instance

    """
    graph = family.graph
    p = family.p
    weights = family.space.weight_vector()
    report = lpga.report.VerificationReport(
        subject=f"CK family on {graph.name or 'graph'} (p={p:g})"
    )

    def relation(name, left, right):
        residual = _residual(left, right)
        report.add_check(name=name, passed=residual <= tolerance, residual=residual)

    def hermitian(name, matrix):
        passed, residual, detail = _hermitian_idempotent(matrix, weights, p, tolerance)
        report.add_check(
            name=f"{name} hermitian idempotent",
            passed=passed,
            residual=residual,
            detail=detail,
        )

    def contractive(name, matrix):
        estimate = lpga.pnorm.opnorm(matrix, weights, p, seed=seed)
        report.add_check(
            name=f"||{name}|| <= 1",
            passed=estimate.lower <= 1 + tolerance,
            residual=max(estimate.value - 1.0, 0.0),
            detail=f"norm {estimate.value:.12g} ({estimate.method.value})",
            certified=estimate.certified,
        )

    def spatial(name, operator):
        if operator.certificate is not None and operator.space is not None:
            residual = operator.coherence_residual()
            report.add_check(
                name=f"{name} matches its spatial system",
                passed=residual
                <= lpga.spatial.CERTIFICATE_TOLERANCE * max(1, len(family.space)),
                residual=residual,
            )
        else:
            system = lpga.spatial.certificate_from_matrix(
                operator.matrix, family.space, p
            )
            report.add_check(
                name=f"{name} looks spatial",
                passed=system is not None,
                detail="heuristic test of the support pattern",
                certified=False,
            )

    def composed_indicator(edge_id):
        name = f"S_{edge_id} T_{edge_id} composes to the indicator of F"
        try:
            system = lpga.spatial.spi_compose(
                family.S[edge_id], family.T[edge_id]
            ).certificate
        except lpga.exceptions.InvalidSystemError as error:
            report.add_check(name=name, passed=False, detail=error.message)
            return
        expected = family.S[edge_id].certificate.F
        deviation = max(
            (abs(complex(phase) - 1.0) for phase in system.f.values()), default=0.0
        )
        passed = (
            system.F == expected
            and all(atom == image for atom, image in system.eta.items())
            and deviation <= tolerance
        )
        report.add_check(name=name, passed=passed, residual=deviation)

    E = {vertex: family.E[vertex].matrix for vertex in graph.vertices}
    S = {edge_id: family.S[edge_id].matrix for edge_id in graph.edge_ids}
    T = {edge_id: family.T[edge_id].matrix for edge_id in graph.edge_ids}
    zero = np.zeros_like(next(iter(E.values()))) if E else np.zeros((0, 0))
    vertices = graph.vertices
    for index, vertex in enumerate(vertices):
        hermitian(f"E_{vertex}", E[vertex])
        for other in vertices[index + 1:]:
            relation(f"E_{vertex} E_{other} = 0", E[vertex] @ E[other], zero)
    for edge in graph.edges:
        a = edge.id
        spatial(f"S_{a}", family.S[a])
        spatial(f"T_{a}", family.T[a])
        if family.S[a].certificate is not None and family.T[a].certificate is not None:
            composed_indicator(a)
        contractive(f"S_{a}", S[a])
        contractive(f"T_{a}", T[a])
        relation(f"S_{a} T_{a} S_{a} = S_{a}", S[a] @ T[a] @ S[a], S[a])
        relation(f"T_{a} S_{a} T_{a} = T_{a}", T[a] @ S[a] @ T[a], T[a])
        hermitian(f"S_{a} T_{a}", S[a] @ T[a])
        hermitian(f"T_{a} S_{a}", T[a] @ S[a])
        relation(f"E_r({a}) S_{a} = S_{a}", E[edge.range] @ S[a], S[a])
        relation(f"S_{a} E_s({a}) = S_{a}", S[a] @ E[edge.source], S[a])
        relation(f"E_s({a}) T_{a} = T_{a}", E[edge.source] @ T[a], T[a])
        relation(f"T_{a} E_r({a}) = T_{a}", T[a] @ E[edge.range], T[a])
        for other in graph.edges:
            b = other.id
            expected = E[other.source] if a == b else zero
            relation(
                f"T_{a} S_{b} = " + (f"E_{other.source}" if a == b else "0"),
                T[a] @ S[b],
                expected,
            )
    for vertex in graph.regular_vertices:
        total = sum((S[a] @ T[a] for a in graph.range_preimage(vertex)), zero)
        relation(f"E_{vertex} = sum S_a T_a (CK2)", E[vertex], total)
    report.results["dimension"] = family.dimension
    return report


def _kernel_exact(columns, size):
    rows = [
        [columns[column][row] for column in range(len(columns))]
        for row in range(size)
    ]
    matrix = DomainMatrix(rows, (size, len(columns)), QQ_I)
    kernel = matrix.nullspace()
    return [list(vector) for vector in kernel.to_list()]


def _kernel_numeric(columns, tolerance):
    matrix = np.column_stack(columns)
    kernel = scipy.linalg.null_space(matrix, rcond=tolerance)
    if not kernel.shape[1]:
        return []
    # rows with a unit entry at pivot positions, least basis positions first
    _, _, pivots = scipy.linalg.qr(kernel.T, pivoting=True)
    pivots = sorted(pivots[: kernel.shape[1]])
    reduced = scipy.linalg.solve(kernel.T[:, pivots], kernel.T)
    reduced[np.abs(reduced) < tolerance] = 0.0
    return [list(row) for row in reduced]


def injectivity_on_level(family, level, policy=None, tolerance=RELATION_TOLERANCE):
    """
    Compute the kernel of π on normal-form monomials up to a level.

    The matrix of π on the basis of monomials ``s_α t_β`` in normal form with
    ``|α|, |β| ≤ level`` is assembled column by column and its kernel
    computed exactly over ℚ(i) if the family allows (see
    :attr:`lpga.spatial.CKFamily.is_exact`), otherwise by singular value
    decomposition with threshold ``tolerance`` relative to the largest
    singular value.

    Parameters
    ----------
    family : :class:`lpga.spatial.CKFamily`
        Family defining π

    level : :class:`int`
        Maximum path length, non-negative

    policy : :class:`lpga.leavitt.BasisPolicy`
        Policy of the normal form, defaults to the default policy

    tolerance : :class:`float`
        Relative rank threshold in floating point mode

    Returns
    -------
    result : :class:`tuple`
        Report with kernel dimension and witnesses as strings, and the
        witnesses as :class:`lpga.leavitt.AlgebraElement` objects

    Examples
    --------
    For the graph with a single loop *a* at *v* and phase 1, the kernel on
    level 1 contains ``s_a − e_v`` and ``t_a − e_v``: a cycle without entry
    defeats uniqueness.

    """
    if level < 0:
        raise ValueError("Level needs to be non-negative")
    graph = family.graph
    policy = policy or lpga.leavitt.BasisPolicy.default(graph)
    basis = lpga.leavitt.reduced_monomials(graph, level, policy)
    exact = family.is_exact
    algebra = lpga.leavitt.LeavittAlgebra(graph, exact=exact)
    if exact:
        columns = []
        for monomial in basis:
            matrix = lpga.spatial.represent_exact(
                algebra.from_monomial(monomial), family
            )
            columns.append([entry for row in matrix.to_list() for entry in row])
        kernel = _kernel_exact(columns, family.dimension**2) if basis else []
    else:
        columns = [
            lpga.spatial.represent(algebra.from_monomial(monomial), family).ravel()
            for monomial in basis
        ]
        kernel = _kernel_numeric(columns, tolerance) if basis else []
    witnesses = [
        algebra.element(dict(zip(basis, vector))) for vector in kernel
    ]
    report = lpga.report.VerificationReport(
        subject=f"injectivity of pi on level {level} of {graph.name or 'graph'}"
    )
    report.add_check(
        name=f"kernel on level {level} is trivial",
        passed=not witnesses,
        detail=f"witness {witnesses[0]}" if witnesses else "",
    )
    report.results.update(
        {
            "kernel_dimension": len(witnesses),
            "basis_size": len(basis),
            "exact": exact,
            "kernel_witnesses": [str(witness) for witness in witnesses],
        }
    )
    return report, witnesses


def _compare_norms(report, name, first, second, tolerance=ISOMETRY_TOLERANCE):
    """Add a check for equality of two norm estimates, return the deviation."""
    scale = max(first.value, second.value, 1e-300)
    deviation = abs(first.value - second.value) / scale
    certified = first.certified and second.certified
    if certified:
        passed = deviation <= tolerance
    else:
        passed = (
            first.lower <= second.upper * (1 + tolerance)
            and second.lower <= first.upper * (1 + tolerance)
        )
    report.add_check(
        name=name,
        passed=passed,
        residual=deviation,
        detail=f"{first.value:.12g} vs {second.value:.12g}",
        certified=certified,
    )
    return deviation, certified


def isometry_on_level(
    family, level, p=None, trials=5, seed=0, elements=None, coefficients="complex"
):
    """
    Compare norms of represented elements with their block norms.

    For a finite acyclic graph, the algebra is a direct sum of matrix
    algebras (see :func:`lpga.leavitt.acyclic_decomposition`), and π should
    be isometric when the blocks carry the norms of operators on ℓᵖ of
    their paths. For random elements built from monomials with paths up to
    the level, the norm of the represented matrix is compared with the
    largest norm of the blocks.

    Parameters
    ----------
    family : :class:`lpga.spatial.CKFamily`
        Family on an acyclic graph

    level : :class:`int`
        Maximum path length of the random elements

    p : :class:`float`
        Exponent, defaults to the exponent of the family

    trials : :class:`int`
        Number of random elements

    seed : :class:`int`
        Seed of the random elements and the norm estimates

    elements : :class:`list`
        Elements to compare instead of random ones

    coefficients : :class:`str`
        Kind of random coefficients, see :func:`lpga.leavitt.random_element`

    Returns
    -------
    report : :class:`lpga.report.VerificationReport`
        One check per element, and the largest relative deviation among
        certified comparisons in the results

    Raises
    ------
    lpga.exceptions.CyclicGraphError
        Raised if the graph of the family has a cycle

    """
    graph = family.graph
    p = family.p if p is None else float(p)
    if p != family.p:
        raise ValueError(f"Family was built for p={family.p:g}, not p={p:g}")
    decomposition = lpga.leavitt.acyclic_decomposition(graph, exact=False)
    algebra = decomposition.algebra
    weights = family.space.weight_vector()
    rng = np.random.default_rng(seed)
    if elements is None:
        elements = [
            lpga.leavitt.random_element(
                algebra, rng, n_terms=4, max_len=level, coefficients=coefficients
            )
            for _ in range(trials)
        ]
    report = lpga.report.VerificationReport(
        subject=f"isometry of pi on {graph.name or 'graph'} (p={p:g}, level {level})"
    )
    largest = 0.0
    uncertified = 0
    for index, element in enumerate(elements):
        element = element if not element.field.exact else element.to_numeric()
        blocks = decomposition.to_matrices(element)
        block_estimates = [
            lpga.pnorm.opnorm(matrix, None, p, seed=seed) for matrix in blocks.values()
        ]
        reference = lpga.pnorm.NormEstimate(
            lower=max((estimate.lower for estimate in block_estimates), default=0.0),
            upper=max((estimate.upper for estimate in block_estimates), default=0.0),
            certified=all(estimate.certified for estimate in block_estimates),
            method=block_estimates[0].method
            if block_estimates
            else lpga.pnorm.NormMethod.EXACT_P1,
        )
        represented = lpga.pnorm.opnorm(
            lpga.spatial.represent(element, family), weights, p, seed=seed
        )
        deviation, certified = _compare_norms(
            report, f"element {index}: ||pi(x)|| = block norm", represented, reference
        )
        if certified:
            largest = max(largest, deviation)
        else:
            uncertified += 1
    report.results.update(
        {"max_relative_deviation": largest, "uncertified_trials": uncertified}
    )
    return report


def gauge_equivariance_check(family, zs, level, policy=None, rotate_reverse=True):
    """
    Check that rotating a family implements the gauge action.

    For each z, the rotated family :math:`(zS, \\bar z T, E)` has to pass
    :func:`check_ck_family`, and :math:`π_z(x) = π(γ_z(x))` has to hold for
    all normal-form monomials up to the level, :math:`π_z` the representation
    by the rotated family.

    Parameters
    ----------
    family : :class:`lpga.spatial.CKFamily`
        Family to rotate

    zs : :class:`list`
        Unimodular complex numbers

    level : :class:`int`
        Maximum path length of the monomials checked

    policy : :class:`lpga.leavitt.BasisPolicy`
        Policy of the normal form, defaults to the default policy

    rotate_reverse : :class:`bool`
        If False, only S is rotated, which has to make the check fail

    Returns
    -------
    report : :class:`lpga.report.VerificationReport`
        Relation checks per z, prefixed with z, and one intertwining check
        per z

    """
    graph = family.graph
    policy = policy or lpga.leavitt.BasisPolicy.default(graph)
    algebra = lpga.leavitt.LeavittAlgebra(graph, exact=False)
    basis = lpga.leavitt.reduced_monomials(graph, level, policy)
    report = lpga.report.VerificationReport(
        subject=f"gauge equivariance on {graph.name or 'graph'} (level {level})"
    )
    for z in zs:
        z = complex(z)
        label = f"z={z.real:.6g}{z.imag:+.6g}i"
        rotated = family.rotated(z, rotate_reverse=rotate_reverse)
        report.merge(check_ck_family(rotated), prefix=f"{label}: ")
        residual = 0.0
        for monomial in basis:
            element = algebra.from_monomial(monomial)
            left = lpga.spatial.represent(lpga.leavitt.gauge_apply(z, element), family)
            right = lpga.spatial.represent(element, rotated)
            residual = max(residual, _residual(left, right))
        report.add_check(
            name=f"{label}: rotation intertwines pi with the gauge action",
            passed=residual <= RELATION_TOLERANCE,
            residual=residual,
        )
    return report


def _carried_weights(space, extended_space):
    """Weights of the atoms shared by a family and its extension."""
    return {
        atom: space.weights[atom]
        for atom in extended_space.atoms
        if space.has_atom(atom)
        and space.vertex_of.get(atom) == extended_space.vertex_of.get(atom)
    }


def _weight_provenance(space, carried):
    if not carried:
        return "unit"
    if set(carried) == set(space.atoms):
        return "family"
    return "partial"


def _block_of(element, vertex, level):
    return element.algebra.element(
        {
            monomial: value
            for monomial, value in element.terms.items()
            if monomial.source == vertex and len(monomial.alpha) == level
        }
    )


def uniqueness_witness_suite(
    graph, family=None, level=1, policy=None, trials=2, seed=0, p=2.0
):
    """
    Check the compression argument behind the uniqueness theorem.

    Random elements *a* are expanded to the level, and for each vertex *v*
    carrying a part :math:`b_v` of :math:`Φ_0(a)`, the operator V of
    :func:`lpga.leavitt.v_operator` is built. Checked are

    #. :math:`V s_α t_β V = 0` for all terms with :math:`|α| ≠ |β|`, in
       normal form,

    #. :math:`V b_v V = Σ c\\, s_{αλ} t_{βλ}` in normal form, and
       :math:`\\|π(V b_v V)\\| = \\|π(b_v)\\|` as well as
       :math:`\\|π(Φ_0(a))\\| = \\max_v \\|π(b_v)\\|` numerically,

    #. :math:`\\|π(Φ_0(a))\\| ≤ \\|π(a)\\|` numerically.

    To make the expansion possible, the computations take place in the
    graph with heads and tails of length ``2·level + 2`` attached (see
    :func:`lpga.graphs.desingularize_truncated`). Numeric checks need finite
    atomic families; without them, they are recorded as skipped with the
    status "no finite representation".

    Parameters
    ----------
    graph : :class:`lpga.graphs.Graph`
        Graph in which every cycle has an entry

    family : :class:`lpga.spatial.CKFamily`
        Family of the graph with nonzero vertex operators; synthesised by
        :func:`lpga.spatial.atomic_ck_family` if None and possible

    level : :class:`int`
        Level *k* the elements are expanded to

    policy : :class:`lpga.leavitt.BasisPolicy`
        Special edges overriding the default policy

    trials : :class:`int`
        Number of random elements

    seed : :class:`int`
        Seed of the random elements and the norm estimates

    p : :class:`float`
        Exponent of a synthesised family

    Returns
    -------
    report : :class:`lpga.report.VerificationReport`
        Symbolic and numeric checks per element and vertex

    Raises
    ------
    lpga.exceptions.PreconditionError
        Raised if a cycle has no entry, the graph has infinite receivers,
        or a vertex operator of the family vanishes

    """
    if not lpga.graphs.condition_l(graph):
        raise lpga.exceptions.PreconditionError(
            f"Graph {graph.name or ''} has a cycle without entry; "
            "injectivity_on_level exhibits the resulting kernel"
        )
    if graph.infinite_receivers:
        raise lpga.exceptions.PreconditionError(
            "Expansion needs graphs without infinite receivers"
        )
    if level < 0:
        raise ValueError("Level needs to be non-negative")
    if family is None:
        try:
            family = lpga.spatial.atomic_ck_family(graph, p)
        except lpga.exceptions.UnsolvableAssignmentError:
            family = None
    if family is not None:
        if family.graph != graph:
            raise lpga.exceptions.GraphMismatchError("Family belongs to another graph")
        for vertex in graph.vertices:
            if not np.any(family.E[vertex].matrix):
                raise lpga.exceptions.PreconditionError(
                    f"Vertex operator E_{vertex} vanishes"
                )
        p = family.p
    extended, _, _ = lpga.graphs.desingularize_truncated(graph, 2 * level + 2)
    algebra = lpga.leavitt.LeavittAlgebra(graph)
    extended_algebra = lpga.leavitt.LeavittAlgebra(extended)
    extended_policy = lpga.leavitt.BasisPolicy.from_mapping(
        extended, policy.special_edges if policy else {}
    )
    extended_family = None
    if family is not None:
        phases = {
            key: value for key, value in family.phases.items() if graph.has_edge(key)
        }
        extended_family = lpga.spatial.atomic_ck_family(extended, p, phases=phases)
        carried = _carried_weights(family.space, extended_family.space)
        if carried:
            extended_family = lpga.spatial.atomic_ck_family(
                extended, p, phases=phases, weights=carried
            )
    report = lpga.report.VerificationReport(
        subject=f"uniqueness witnesses on {graph.name or 'graph'} (level {level})"
    )
    report.results["norm_checks"] = (
        "numeric" if family is not None else "no finite representation"
    )
    if family is not None:
        report.results["compression_weights"] = _weight_provenance(
            family.space, carried
        )
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        element = lpga.leavitt.random_element(algebra, rng, n_terms=4, max_len=level)
        expanded = lpga.leavitt.expand_to_level(
            lpga.leavitt.lift_element(element, extended_algebra), level
        )
        phi0 = lpga.leavitt.phi_n(0, expanded)
        pairs = [(monomial.alpha, monomial.beta) for monomial in expanded.terms]
        off_diagonal = sorted(
            (monomial for monomial in expanded.terms if monomial.degree),
            key=lpga.leavitt.Monomial.sort_key,
        )
        vertices = sorted({monomial.source for monomial in phi0.terms})
        block_norms = []
        for vertex in vertices:
            V, lam, _ = lpga.leavitt.v_operator(
                extended_algebra, pairs, level, vertex, extended_policy
            )
            prefix = f"trial {trial}, vertex {vertex}, lambda {lam}: "
            residual = 0.0
            offending = ""
            for monomial in off_diagonal:
                product = V * extended_algebra.from_monomial(monomial) * V
                if not product.is_zero():
                    residual = max(residual, product.max_abs_coefficient())
                    offending = offending or str(monomial)
            report.add_check(
                name=prefix + "V s_alpha t_beta V = 0 for |alpha| != |beta|",
                passed=not offending,
                residual=residual,
                detail=f"fails for {offending}" if offending else "",
            )
            block = _block_of(phi0, vertex, level)
            compressed = V * block * V
            expected = extended_algebra.zero()
            for monomial, value in block.terms.items():
                expected = expected + extended_algebra.from_monomial(
                    lpga.leavitt.Monomial(
                        monomial.alpha.concat(lam), monomial.beta.concat(lam)
                    ),
                    value,
                )
            difference = lpga.leavitt.normalize(compressed - expected, extended_policy)
            report.add_check(
                name=prefix + "V Phi_0(a) V = sum c s_(alpha lambda) t_(beta lambda)",
                passed=difference.is_zero(),
                residual=difference.max_abs_coefficient(),
            )
            if extended_family is None:
                continue
            weights = extended_family.space.weight_vector()
            compressed_norm = lpga.pnorm.opnorm(
                lpga.spatial.represent(compressed.to_numeric(), extended_family),
                weights, p, seed=seed,
            )
            block_norm = lpga.pnorm.opnorm(
                lpga.spatial.represent(block.to_numeric(), extended_family),
                weights, p, seed=seed,
            )
            block_norms.append(block_norm)
            _compare_norms(
                report,
                prefix + "||V pi(b_v) V|| = ||pi(b_v)||",
                compressed_norm,
                block_norm,
            )
        if extended_family is None:
            continue
        weights = extended_family.space.weight_vector()
        phi0_norm = lpga.pnorm.opnorm(
            lpga.spatial.represent(phi0.to_numeric(), extended_family),
            weights, p, seed=seed,
        )
        if block_norms:
            largest = max(block_norms, key=lambda estimate: estimate.value)
            _compare_norms(
                report,
                f"trial {trial}: ||pi(Phi_0(a))|| = max_v ||pi(b_v)||",
                phi0_norm,
                largest,
            )
        weights = family.space.weight_vector()
        whole = lpga.pnorm.opnorm(
            lpga.spatial.represent(element.to_numeric(), family), weights, p, seed=seed
        )
        core = lpga.pnorm.opnorm(
            lpga.spatial.represent(lpga.leavitt.phi_n(0, element).to_numeric(), family),
            weights, p, seed=seed,
        )
        bound = whole.upper if whole.upper is not None else whole.value
        report.add_check(
            name=f"trial {trial}: ||pi(Phi_0(a))|| <= ||pi(a)||",
            passed=core.lower <= bound + ISOMETRY_TOLERANCE,
            residual=max(core.value - whole.value, 0.0),
            detail=f"{core.value:.12g} vs {whole.value:.12g}",
            certified=core.certified and whole.certified,
        )
    if extended_family is None:
        report.add_check(
            name="norm checks",
            passed=True,
            detail="no finite representation",
            certified=False,
        )
    return report


def fixed_point_algebra_report(graph, level):
    """
    Report the matrix-unit blocks of the fixed-point algebra on a level.

    The elements ``s_α t_β`` with ``|α| = |β| = level`` and common source
    *v* form a system of matrix units of dimension :math:`n_v^2`,
    :math:`n_v` the number of paths of length *level* starting at *v*.
    The matrix-unit relations within and between blocks are checked
    symbolically. For graphs without sources, sinks, and infinite receivers,
    each matrix unit is expanded to the next level, which has to give an
    element of the next level equal to it.

    Returns
    -------
    report : :class:`lpga.report.VerificationReport`
        Checks together with the block dimensions per vertex, their total,
        and whether the inclusion was verified (None if not applicable)

    """
    if level < 0:
        raise ValueError("Level needs to be non-negative")
    report = lpga.report.VerificationReport(
        subject=f"fixed-point algebra of {graph.name or 'graph'} on level {level}"
    )
    blocks = {
        vertex: lpga.leavitt.level_paths(graph, level, vertex)
        for vertex in graph.vertices
    }
    units = {
        vertex: [
            lpga.leavitt.Monomial(alpha, beta) for alpha in paths for beta in paths
        ]
        for vertex, paths in blocks.items()
    }
    failures = []
    all_units = [unit for vertex in graph.vertices for unit in units[vertex]]
    for first in all_units:
        for second in all_units:
            product = lpga.leavitt.monomial_product(first, second)
            expected = (
                lpga.leavitt.Monomial(first.alpha, second.beta)
                if first.beta == second.alpha
                else None
            )
            if product != expected:
                failures.append(f"({first})({second})")
    report.add_check(
        name="matrix-unit relations",
        passed=not failures,
        residual=float(len(failures)),
        detail=", ".join(failures[:3]),
    )
    inclusion = None
    applicable = not graph.infinite_receivers and all(
        graph.is_regular(vertex) and not graph.is_sink(vertex)
        for vertex in graph.vertices
    )
    if applicable:
        algebra = lpga.leavitt.LeavittAlgebra(graph)
        policy = lpga.leavitt.BasisPolicy.default(graph)
        inclusion = True
        for unit in all_units:
            element = algebra.from_monomial(unit)
            expanded = lpga.leavitt.expand_to_level(element, level + 1)
            lengths_ok = all(
                len(monomial.alpha) == len(monomial.beta) == level + 1
                for monomial in expanded.terms
            )
            if not lengths_ok or not lpga.leavitt.equal_in_algebra(
                expanded, element, policy
            ):
                inclusion = False
                report.add_check(
                    name=f"{unit} lies in level {level + 1}", passed=False
                )
        report.add_check(
            name=f"level {level} included in level {level + 1}", passed=inclusion
        )
    dimensions = {vertex: len(paths) ** 2 for vertex, paths in blocks.items()}
    report.results.update(
        {
            "blocks": dimensions,
            "total_dimension": sum(dimensions.values()),
            "inclusion_verified": inclusion,
        }
    )
    return report


def _random_orthogonal_systems(rng, n_atoms, n_terms):
    atoms = [f"x{index}" for index in range(n_atoms)]
    order = [str(atom) for atom in rng.permutation(atoms)]
    sizes = [1] * n_terms
    for _ in range(n_atoms // 2 - n_terms):
        sizes[int(rng.integers(0, n_terms))] += 1
    systems = []
    offset = 0
    for size in sizes:
        final = order[offset:offset + size]
        initial = order[offset + size:offset + 2 * size]
        offset += 2 * size
        phases = {atom: lpga.utils.random_unimodular(rng) for atom in final}
        systems.append(
            lpga.spatial.SpatialSystem.create(dict(zip(final, initial)), phases)
        )
    return atoms, systems


def orthogonal_sum_norm_check(p, trials=100, max_terms=5, seed=0):
    """
    Check that sums of orthogonal spatial partial isometries have sup norm.

    For spatial partial isometries :math:`s_1, …, s_k` with pairwise
    disjoint initial and pairwise disjoint final sets, and complex λ,

    .. math::

        \\|\\textstyle\\sum_i λ_i s_i\\| = \\max_i |λ_i|

    on every weighted ℓᵖ space. Random systems with random atom weights are
    drawn, and the norm estimate of the sum is compared with the maximum.

    Parameters
    ----------
    p : :class:`float`
        Exponent, at least one

    trials : :class:`int`
        Number of random sums

    max_terms : :class:`int`
        Largest number *k* of summands

    seed : :class:`int`
        Seed of the random systems

    Returns
    -------
    report : :class:`lpga.report.VerificationReport`
        One check per sum, the largest relative deviation in the results

    """
    if max_terms < 1:
        raise ValueError("At least one summand is needed")
    rng = np.random.default_rng(seed)
    report = lpga.report.VerificationReport(
        subject=f"norm of orthogonal spatial sums (p={p:g})"
    )
    largest = 0.0
    for trial in range(trials):
        n_terms = int(rng.integers(1, max_terms + 1))
        n_atoms = 2 * n_terms + int(rng.integers(0, 5))
        atoms, systems = _random_orthogonal_systems(rng, n_atoms, n_terms)
        space = lpga.spatial.AtomicMeasureSpace(
            atoms=atoms,
            weights={atom: float(rng.uniform(0.25, 4.0)) for atom in atoms},
        )
        lambdas = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
        matrix = sum(
            value * lpga.spatial.spi_matrix(space, system, p).matrix
            for value, system in zip(lambdas, systems)
        )
        expected = float(np.max(np.abs(lambdas)))
        reference = lpga.pnorm.NormEstimate(
            lower=expected, upper=expected, certified=True,
            method=lpga.pnorm.NormMethod.EXACT_P1,
        )
        estimate = lpga.pnorm.opnorm(matrix, space.weight_vector(), p, seed=seed)
        deviation, certified = _compare_norms(
            report, f"sum {trial}: ||sum lambda_i s_i|| = max |lambda_i|",
            estimate, reference,
        )
        if certified:
            largest = max(largest, deviation)
    report.results["max_relative_deviation"] = largest
    return report
