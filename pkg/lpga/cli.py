"""
Command-line interface.

All capabilities of the package are available from the command line, as
subcommands of the ``lpga`` command:

.. code-block:: bash

    lpga decompose --graph a2.json
    lpga verify-ck --graph loop.json --p 3 --phase a=1
    lpga injectivity --graph loop.json --p 3 --level 1

Results are written to standard output, as JSON (default) or as plain text
(``--format text``). Log messages go to standard error, and only with
``--verbose``.


Exit status
===========

=====  ==================================================================
0      success, verification passed
1      a verification failed
2      invalid arguments or input files, or an unmet precondition
=====  ==================================================================


Options
=======

``--graph PATH``
    Graph file, see :mod:`lpga.io.graph_file`

``--p REAL``
    Exponent of the ℓᵖ spaces, default 2

``--level INT``
    Level *k* of path lengths, default 3

``--seed INT``
    Seed of all random choices, default the environment variable
    ``LPGA_SEED`` or zero

``--phase EDGE=RE,IM``
    Phase of an edge in synthesised families, may be repeated

``--weights PATH``
    Atom weights of synthesised families, see :mod:`lpga.io.mapping_file`

``--policy PATH``
    Special edges overriding the default basis policy

``--element PATH``, ``--other PATH``
    Algebra elements, see :mod:`lpga.io.element_file`

``--family PATH``
    Family file used instead of a synthesised family, see
    :mod:`lpga.io.family_file`

``--shift INT``, ``--z RE,IM``, ``--expand K``, ``--subgraph PATH``,
``--depth INT``, ``--trials INT``, ``--data-dir PATH``
    Options of individual commands, see ``lpga <command> --help``

Output is byte-stable: the same arguments give the same bytes.

Module documentation
====================

"""

import argparse
import logging
import os
import sys

import numpy as np

import lpga.analysis
import lpga.dataset
import lpga.exceptions
import lpga.graphs
import lpga.leavitt
import lpga.report
import lpga.spatial
import lpga.utils
import lpga.verify
from lpga.io import element_file, exporter, family_file, graph_file, mapping_file


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

DEMO_GRAPHS = graph_file.BUNDLED
DEMO_EXPONENTS = (1.0, 1.5, 3.0, 7.0)


class Session:
    """
    Inputs of a single command, loaded on demand.

    Attributes
    ----------
    args : :class:`argparse.Namespace`
        Parsed command-line arguments

    seed : :class:`int`
        Seed of all random choices

    """

    def __init__(self, args):
        self.args = args
        self.seed = _seed(args.seed)
        self._graph = None
        self._family = None

    @property
    def graph(self):
        """Graph given with ``--graph``."""
        if self._graph is None:
            if not self.args.graph:
                raise lpga.exceptions.UsageError(
                    f"Command {self.args.command} needs --graph"
                )
            self._graph = graph_file.GraphImporter(source=self.args.graph).import_()
        return self._graph

    def policy(self):
        """Basis policy, overridden by ``--policy``."""
        if self.args.policy:
            return mapping_file.read_policy(self.args.policy, self.graph)
        return lpga.leavitt.BasisPolicy.default(self.graph)

    def element(self, source=None, option="--element"):
        """Element read from ``--element`` or another file."""
        source = source or self.args.element
        if not source:
            raise lpga.exceptions.UsageError(
                f"Command {self.args.command} needs {option}"
            )
        return element_file.ElementImporter(source=source, graph=self.graph).import_()

    def phases(self):
        """Phases given with ``--phase`` as pairs of strings."""
        phases = {}
        for entry in self.args.phase:
            edge_id, separator, value = entry.partition("=")
            if not separator:
                raise lpga.exceptions.UsageError(
                    f"Phase {entry!r} needs the form EDGE=RE,IM"
                )
            try:
                phases[edge_id.strip()] = lpga.utils.parse_complex_pair(value)
            except ValueError as error:
                raise lpga.exceptions.UsageError(str(error)) from None
        return phases

    def family(self, required=True):
        """
        Family read with ``--family`` or synthesised on the atomic space.

        Returns None if no family can be synthesised and *required* is False.
        """
        if self._family is None:
            if self.args.family:
                self._family = family_file.FamilyImporter(
                    source=self.args.family, graph=self.graph
                ).import_()
            else:
                weights = None
                if self.args.weights:
                    weights = mapping_file.read_weights(self.args.weights)
                try:
                    self._family = lpga.spatial.atomic_ck_family(
                        self.graph, self.args.p, phases=self.phases(), weights=weights
                    )
                except lpga.exceptions.UnsolvableAssignmentError:
                    if required:
                        raise
                    return None
        return self._family

    def z(self, default=(1, 0)):
        """Unimodular scalar given with ``--z``, as pair (exact, complex)."""
        if self.args.z is None:
            pair = default
        else:
            try:
                pair = lpga.utils.parse_complex_pair(self.args.z)
            except ValueError as error:
                raise lpga.exceptions.UsageError(str(error)) from None
        return lpga.utils.exact_or_numeric(pair)


def _seed(value):
    if value is not None:
        return value
    try:
        return int(os.environ.get("LPGA_SEED", "0"))
    except ValueError:
        raise lpga.exceptions.UsageError("LPGA_SEED needs to be an integer") from None


def _element_payload(element, key="element"):
    return {key: str(element), "normal_form": element_file.element_to_dict(element)}


def _same_field(first, second):
    if first.field.exact == second.field.exact:
        return first, second
    return first.to_numeric(), second.to_numeric()


def _graph_summary(graph):
    return {
        "classes": {
            vertex: lpga.graphs.classify_vertex(graph, vertex).value
            for vertex in graph.vertices
        },
        "cycles": [
            {"cycle": str(cycle), "entries": entries}
            for cycle, entries in lpga.graphs.find_cycles(graph)
        ],
        "condition_l": lpga.graphs.condition_l(graph),
    }


def normalize_command(session):
    """Normal form of an element, optionally expanded and compared."""
    policy = session.policy()
    element = session.element()
    if session.args.expand is not None:
        element = lpga.leavitt.expand_to_level(element, session.args.expand)
    normal = lpga.leavitt.normalize(element, policy)
    payload = _element_payload(normal)
    if session.args.other:
        first, other = _same_field(
            element, session.element(session.args.other, "--other")
        )
        payload["equal"] = lpga.leavitt.equal_in_algebra(first, other, policy)
    return payload


def mul_command(session):
    """Normal form of the product of two elements."""
    policy = session.policy()
    first, second = _same_field(
        session.element(), session.element(session.args.other, "--other")
    )
    product = lpga.leavitt.normalize(lpga.leavitt.mul(first, second), policy)
    return _element_payload(product, "product")


def phi_command(session):
    """Spectral projection of an element and its shift to degree zero."""
    policy = session.policy()
    n = session.args.shift
    element = lpga.leavitt.normalize(session.element(), policy)
    projection = lpga.leavitt.phi_n(n, element)
    payload = {"n": n}
    payload.update(_element_payload(projection, "projection"))
    if not projection.is_zero():
        try:
            shifted, (x, _) = lpga.leavitt.spectral_shift_gadget(projection, n, policy)
        except (
            lpga.exceptions.SinkBlockedError,
            lpga.exceptions.NoSuchPathError,
        ) as error:
            payload["shifted"] = None
            payload["shift_blocked"] = error.message
        else:
            payload["shifted"] = str(shifted)
            payload["x"] = str(x)
    return payload


def gauge_command(session):
    """Gauge action on an element, or the equivariance check of a family."""
    exact_z, numeric_z = session.z(default=("0", "1"))
    if session.args.element:
        element = session.element()
        if element.field.exact and exact_z is None:
            element = element.to_numeric()
        z = exact_z if element.field.exact else numeric_z
        rotated = lpga.leavitt.gauge_apply(z, element)
        payload = {"z": [numeric_z.real, numeric_z.imag]}
        payload.update(_element_payload(rotated))
        return payload
    rng = np.random.default_rng(session.seed)
    zs = [numeric_z, np.exp(2j * np.pi / 3), lpga.utils.random_unimodular(rng)]
    return lpga.verify.gauge_equivariance_check(
        session.family(), zs, session.args.level, policy=session.policy()
    )


def decompose_command(session):
    """Matrix blocks of the algebra of an acyclic graph."""
    decomposition = lpga.leavitt.acyclic_decomposition(session.graph)
    blocks = decomposition.to_dict()
    for block in blocks.values():
        block["algebra"] = f"M_{block['n']}"
    payload = {
        "graph": session.graph.name,
        "dimension": decomposition.dimension,
        "blocks": blocks,
    }
    if session.args.element:
        matrices = decomposition.to_matrices(session.element())
        payload["matrices"] = {
            source: family_file.matrix_to_dict(matrix, sparse=False)
            for source, matrix in matrices.items()
        }
    return payload


def _subgraph(session):
    if not session.args.subgraph:
        raise lpga.exceptions.UsageError(
            f"Command {session.args.command} needs --subgraph"
        )
    return graph_file.GraphImporter(source=session.args.subgraph).import_()


def complete_ck_command(session):
    """Cuntz-Krieger completion of a subgraph and its family."""
    graph = session.graph
    completed, tagging = lpga.graphs.ck_completion(_subgraph(session), graph)
    family = lpga.leavitt.embedded_ck_family(completed, graph, tagging)
    report = lpga.leavitt.symbolic_ck_check(family, policy=session.policy())
    report.results.update(
        {
            "completed": graph_file.graph_to_dict(completed),
            "tagging": tagging.to_dict(),
            "family": family.to_dict(),
        }
    )
    return report


def desingularize_command(session):
    """Graph with truncated tails and heads attached."""
    desingularized, _, _ = lpga.graphs.desingularize_truncated(
        session.graph, session.args.depth
    )
    return {
        "graph": graph_file.graph_to_dict(desingularized),
        "before": _graph_summary(session.graph),
        "after": _graph_summary(desingularized),
    }


def ck_subgraph_command(session):
    """Whether a subgraph is a Cuntz-Krieger subgraph."""
    subgraph = _subgraph(session)
    return {
        "subgraph": subgraph.name,
        "is_ck_subgraph": lpga.graphs.is_ck_subgraph(subgraph, session.graph),
    }


def represent_command(session):
    """Matrix of an element in a family."""
    element = session.element()
    family = session.family()
    matrix = lpga.spatial.represent(element, family)
    try:
        support = sorted(lpga.spatial.support_of(element, family))
    except lpga.exceptions.NotAnIndicatorError:
        support = None
    return {
        "element": str(element),
        "p": family.p,
        "exact": family.is_exact,
        "space": family.space.to_dict(),
        "matrix": family_file.matrix_to_dict(matrix),
        "support": support,
    }


def norm_command(session):
    """Norm of a represented element, or the orthogonal sum check."""
    if not session.args.element:
        return lpga.verify.orthogonal_sum_norm_check(
            session.args.p, trials=session.args.trials or 100, seed=session.seed
        )
    element = session.element()
    family = session.family()
    dataset = lpga.dataset.OperatorDataset.from_family(
        lpga.spatial.represent(element, family), family, label=str(element)
    )
    norm = lpga.analysis.OperatorNorm()
    norm.parameters["seed"] = session.seed
    norm = dataset.analyse(norm)
    hermitian = lpga.analysis.HermitianIdempotency()
    hermitian.parameters["seed"] = session.seed
    hermitian = dataset.analyse(hermitian)
    return {
        "element": str(element),
        "p": family.p,
        "estimate": norm.result.to_dict(),
        "hermitian_idempotent": hermitian.result.to_dict(),
    }


def verify_ck_command(session):
    """Relations of a family, numerically, and of the algebra, symbolically."""
    report = lpga.verify.check_ck_family(session.family(), seed=session.seed)
    algebra = lpga.leavitt.LeavittAlgebra(session.graph)
    report.merge(
        lpga.leavitt.symbolic_ck_check(
            lpga.leavitt.tautological_family(algebra), policy=session.policy()
        ),
        prefix="symbolic: ",
    )
    return report


def injectivity_command(session):
    """Kernel of the representation on a level."""
    report, _ = lpga.verify.injectivity_on_level(
        session.family(), session.args.level, policy=session.policy()
    )
    return report


def isometry_command(session):
    """Norms of represented elements of an acyclic graph."""
    return lpga.verify.isometry_on_level(
        session.family(),
        session.args.level,
        trials=session.args.trials or 5,
        seed=session.seed,
    )


def uniqueness_command(session):
    """Compression identities behind the uniqueness theorem."""
    return lpga.verify.uniqueness_witness_suite(
        session.graph,
        family=session.family(required=False),
        level=session.args.level,
        policy=session.policy() if session.args.policy else None,
        trials=session.args.trials or 2,
        seed=session.seed,
        p=session.args.p,
    )


def fixed_point_command(session):
    """Matrix-unit blocks of the fixed-point algebra on a level."""
    graph = session.graph
    report = lpga.verify.fixed_point_algebra_report(graph, session.args.level)
    projections = lpga.leavitt.core_projections(
        lpga.leavitt.LeavittAlgebra(graph), session.args.level
    )
    report.results["core_projections"] = {
        vertex: str(value) for vertex, value in projections.items()
    }
    return report


def _demo_graph(name, data_dir):
    if data_dir:
        source = os.path.join(data_dir, f"{name}.json")
        return graph_file.GraphImporter(source=source).import_()
    return graph_file.bundled_graph(name)


def demo_command(session):
    """Showcase of the bundled graphs."""
    graphs = {name: _demo_graph(name, session.args.data_dir) for name in DEMO_GRAPHS}
    report = lpga.report.VerificationReport(subject="lpga showcase")

    decomposition = lpga.leavitt.acyclic_decomposition(graphs["a2"])
    sizes = {source: block.dimension for source, block in decomposition.blocks.items()}
    report.add_check(
        name="A2: algebra is M_2",
        passed=sizes == {"v": 2} and decomposition.dimension == 4,
        detail=f"blocks {sizes}",
    )
    chain = lpga.leavitt.acyclic_decomposition(graphs["chain3"])
    report.add_check(
        name="chain3: algebra is M_3",
        passed=chain.dimension == 9,
        detail=f"dimension {chain.dimension}",
    )

    fixed_point = lpga.verify.fixed_point_algebra_report(graphs["cuntz2"], 2)
    report.merge(fixed_point, prefix="cuntz2 fixed points: ")
    report.add_check(
        name="cuntz2 fixed points: level 2 is M_4",
        passed=fixed_point.results["blocks"] == {"v": 16},
        detail=f"blocks {fixed_point.results['blocks']}",
    )

    family = lpga.spatial.atomic_ck_family(graphs["loop"], 3.0)
    injectivity, witnesses = lpga.verify.injectivity_on_level(family, 1)
    report.add_check(
        name="loop: kernel on level 1 is nontrivial",
        passed=bool(witnesses),
        detail=", ".join(str(witness) for witness in witnesses),
    )

    uniqueness = lpga.verify.uniqueness_witness_suite(
        graphs["loop_entry"], level=1, trials=1, seed=session.seed
    )
    report.merge(uniqueness, prefix="loop_entry: ")

    deviations = {}
    for p in DEMO_EXPONENTS:
        sums = lpga.verify.orthogonal_sum_norm_check(p, trials=25, seed=session.seed)
        report.merge(sums, prefix=f"p={p:g}: ")
        deviations[f"{p:g}"] = sums.results["max_relative_deviation"]

    report.results.update(
        {
            "a2_blocks": sizes,
            "cuntz2_level_2_blocks": fixed_point.results["blocks"],
            "loop_kernel_dimension": injectivity.results["kernel_dimension"],
            "loop_entry_norm_checks": uniqueness.results["norm_checks"],
            "orthogonal_sum_deviation": deviations,
        }
    )
    return report


COMMANDS = {
    "normalize": (normalize_command, "normal form of an element"),
    "mul": (mul_command, "product of two elements"),
    "phi": (phi_command, "spectral projection of an element"),
    "gauge": (gauge_command, "gauge action or equivariance check"),
    "decompose": (decompose_command, "matrix blocks of an acyclic graph algebra"),
    "complete-ck": (complete_ck_command, "Cuntz-Krieger completion of a subgraph"),
    "desingularize": (desingularize_command, "attach truncated tails and heads"),
    "ck-subgraph": (ck_subgraph_command, "test for a Cuntz-Krieger subgraph"),
    "represent": (represent_command, "matrix of an element in a family"),
    "norm": (norm_command, "norm of a represented element"),
    "verify-ck": (verify_ck_command, "Cuntz-Krieger relations of a family"),
    "injectivity": (injectivity_command, "kernel of the representation on a level"),
    "isometry": (isometry_command, "norm comparison for acyclic graphs"),
    "uniqueness": (
        uniqueness_command,
        "compression identities of the uniqueness theorem",
    ),
    "fixed-point": (fixed_point_command, "fixed-point algebra on a level"),
    "demo": (demo_command, "showcase of the bundled graphs"),
}


def build_parser():
    """Return the argument parser with one subparser per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file")
    common.add_argument("--p", type=float, default=2.0, help="exponent, default 2")
    common.add_argument("--level", type=int, default=3, help="level, default 3")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument(
        "--phase", action="append", default=[], metavar="EDGE=RE,IM",
        help="phase of an edge, may be repeated",
    )
    common.add_argument("--weights", help="file with atom weights")
    common.add_argument("--format", choices=exporter.FORMATS, default="json")
    common.add_argument("--policy", help="file with special edges")
    common.add_argument("--verbose", action="store_true", help="log to stderr")
    common.add_argument("--element", help="element file")
    common.add_argument("--other", help="second element file")
    common.add_argument("--family", help="family file")
    common.add_argument("--shift", type=int, default=0, help="gauge degree n")
    common.add_argument("--z", metavar="RE,IM", help="unimodular scalar")
    common.add_argument("--expand", type=int, metavar="K", help="expand to level K")
    common.add_argument("--subgraph", help="subgraph file")
    common.add_argument("--depth", type=int, default=2, help="tail and head length")
    common.add_argument("--trials", type=int, help="number of random trials")
    common.add_argument("--data-dir", help="directory with the demo graphs")
    parser = argparse.ArgumentParser(
        prog="lpga",
        description="Leavitt path algebras and their spatial representations",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for name, (_, help_) in COMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=help_)
    return parser


def run(argv=None, stdout=None):
    """
    Execute a command and write its result.

    Parameters
    ----------
    argv : :class:`list`
        Arguments without the program name, defaults to ``sys.argv[1:]``

    stdout : file-like
        Stream for the result, defaults to standard output

    Returns
    -------
    status : :class:`int`
        Exit status

    """
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as error:
        return 2 if error.code else 0
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
    logger.info("Running command %s", args.command)
    try:
        payload = COMMANDS[args.command][0](Session(args))
    except (lpga.exceptions.Error, ValueError) as error:
        print(f"lpga {args.command}: {error}", file=sys.stderr)
        return 2
    stdout.write(exporter.ReportExporter(format_=args.format).export_from(payload))
    if isinstance(payload, lpga.report.VerificationReport):
        return 0 if payload.passed else 1
    return 0


def main(argv=None):
    """Entry point of the ``lpga`` command."""
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
