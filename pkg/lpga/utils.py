"""
General facilities for use throughout the lpga package.

Coefficient fields
==================

Elements of Leavitt path algebras are finite linear combinations with
complex coefficients. Two coefficient fields are available:

* :class:`GaussianRationals`: exact arithmetic over ℚ(i), based on the
  :obj:`sympy.polys.domains.QQ_I` domain of SymPy. Used for all symbolic
  relation checks.

* :class:`ComplexNumbers`: double-precision complex numbers, used when
  handing elements over to numerical representations.

Both share the same small interface, so that algebra code never needs to
know which field it works with.


Random graphs
=============

:func:`random_graph` creates reproducible random graphs for property tests
and demonstrations.


Module documentation
====================

"""

import fractions
import logging

import numpy as np
import sympy
from sympy import QQ_I

import lpga.graphs


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


def parse_rational(value):
    """
    Convert a value into a :class:`fractions.Fraction`.

    Strings such as ``"1/2"``, ``"-3"``, or ``"0.25"`` are parsed exactly,
    floats are converted exactly (binary expansion).

    Parameters
    ----------
    value : :class:`str` | :class:`int` | :class:`float`
        Value to convert

    Returns
    -------
    value : :class:`fractions.Fraction`
        Exact rational value

    Raises
    ------
    ValueError
        Raised if the value cannot be interpreted as rational number

    """
    if isinstance(value, str):
        return fractions.Fraction(value.strip())
    if isinstance(value, sympy.Rational):
        return fractions.Fraction(int(value.p), int(value.q))
    return fractions.Fraction(value)


def _mpq_to_fraction(value):
    return fractions.Fraction(int(value.numerator), int(value.denominator))


class CoefficientField:
    """
    Interface of the coefficient fields of algebra elements.

    Attributes
    ----------
    exact : :class:`bool`
        Whether arithmetic is exact

    zero :
        Additive unit of the field

    one :
        Multiplicative unit of the field

    """

    exact = False
    zero = None
    one = None

    def convert(self, value):
        """Convert a number (or a pair of real and imaginary part)."""
        raise NotImplementedError

    def to_complex(self, value):
        """Return the value as Python complex number."""
        raise NotImplementedError

    def is_zero(self, value):
        """Whether a value is (numerically) zero."""
        raise NotImplementedError

    def to_strings(self, value):
        """Return real and imaginary part for serialisation."""
        raise NotImplementedError

    def conjugate(self, value):
        """Return the complex conjugate."""
        return value.conjugate()

    def is_unimodular(self, value):
        """Whether the value has modulus one."""
        raise NotImplementedError

    def describe(self, value):
        """Return a short human-readable representation."""
        real, imag = self.to_strings(value)
        if str(imag) in ("0", "0.0"):
            return str(real)
        if str(real) in ("0", "0.0"):
            return f"{imag}i"
        return f"({real}+{imag}i)".replace("+-", "-")


class GaussianRationals(CoefficientField):
    """
    Exact coefficients from ℚ(i).

    Values are elements of the SymPy domain ``QQ_I``. Conversion accepts
    integers, fractions, rational strings, floats (converted exactly), Python
    complex numbers, SymPy numbers and pairs ``(real, imag)``.
    """

    exact = True
    zero = QQ_I.zero
    one = QQ_I.one

    def convert(self, value):
        if isinstance(value, QQ_I.dtype):
            return value
        if isinstance(value, (tuple, list)):
            real, imag = parse_rational(value[0]), parse_rational(value[1])
        elif isinstance(value, complex):
            real, imag = parse_rational(value.real), parse_rational(value.imag)
        elif isinstance(value, sympy.Basic):
            return QQ_I.from_sympy(sympy.nsimplify(value, rational=True))
        else:
            real, imag = parse_rational(value), fractions.Fraction(0)
        return QQ_I.from_sympy(
            sympy.Rational(real.numerator, real.denominator)
            + sympy.I * sympy.Rational(imag.numerator, imag.denominator)
        )

    def to_complex(self, value):
        return complex(float(value.x), float(value.y))

    def is_zero(self, value):
        return value == QQ_I.zero

    def to_strings(self, value):
        return (
            str(_mpq_to_fraction(value.x)),
            str(_mpq_to_fraction(value.y)),
        )

    def conjugate(self, value):
        return QQ_I(value.x, -value.y)

    def is_unimodular(self, value):
        return value * self.conjugate(value) == QQ_I.one


class ComplexNumbers(CoefficientField):
    """
    Double-precision complex coefficients.

    Values with modulus below :attr:`tolerance` count as zero and are never
    stored in algebra elements.

    Attributes
    ----------
    tolerance : :class:`float`
        Threshold below which a coefficient is considered zero

        Default: 1e-14

    """

    exact = False
    zero = 0j
    one = 1 + 0j

    def __init__(self, tolerance=1e-14):
        self.tolerance = tolerance

    def convert(self, value):
        if isinstance(value, (tuple, list)):
            real, imag = parse_rational(value[0]), parse_rational(value[1])
            return complex(float(real), float(imag))
        if isinstance(value, QQ_I.dtype):
            return EXACT.to_complex(value)
        if isinstance(value, str):
            return complex(float(parse_rational(value)))
        return complex(value)

    def to_complex(self, value):
        return complex(value)

    def is_zero(self, value):
        return abs(value) <= self.tolerance

    def to_strings(self, value):
        return float(value.real), float(value.imag)

    def is_unimodular(self, value, tolerance=1e-12):
        return abs(abs(value) - 1.0) <= tolerance


EXACT = GaussianRationals()
NUMERIC = ComplexNumbers()


def coefficient_field(exact=True):
    """Return the exact or the numeric coefficient field."""
    return EXACT if exact else NUMERIC


def parse_complex_pair(text):
    """
    Parse a string ``"re,im"`` (or ``"re"``) into a pair of strings.

    Used for phases given on the command line, *e.g.* ``"0,1"`` for *i*.
    """
    parts = [part.strip() for part in str(text).split(",")]
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"Cannot interpret {text!r} as complex number")
    return parts[0], parts[1]


def exact_or_numeric(pair):
    """
    Return an exact unimodular value if possible, otherwise a complex.

    Parameters
    ----------
    pair : :class:`tuple`
        Real and imaginary part as strings or numbers

    Returns
    -------
    value : :class:`tuple`
        Pair ``(exact value or None, complex value)``

    """
    try:
        exact = EXACT.convert(pair)
    except (ValueError, TypeError, ZeroDivisionError):
        exact = None
    numeric = NUMERIC.convert(pair)
    if exact is not None and not EXACT.is_unimodular(exact):
        exact = None
    return exact, numeric


def random_graph(rng, n_vertices, n_edges, acyclic=False, name="random"):
    """
    Create a random finite graph.

    Vertices are named ``v0``, ``v1``, …, edges ``e00``, ``e01``, … so that
    their lexicographic order matches their creation order.

    Parameters
    ----------
    rng : :class:`numpy.random.Generator`
        Random number generator

    n_vertices : :class:`int`
        Number of vertices, positive

    n_edges : :class:`int`
        Number of edges

    acyclic : :class:`bool`
        If true, every edge points from a higher to a lower vertex index,
        hence the graph has no cycles. Requires two or more vertices for
        edges to be created.

    name : :class:`str`
        Name of the graph

    Returns
    -------
    graph : :class:`lpga.graphs.Graph`
        Random graph

    """
    vertices = [f"v{index}" for index in range(n_vertices)]
    edges = []
    for index in range(n_edges):
        if acyclic:
            if n_vertices < 2:
                break
            low, high = sorted(rng.choice(n_vertices, size=2, replace=False))
            source, range_ = high, low
        else:
            source, range_ = rng.integers(0, n_vertices, size=2)
        edges.append((f"e{index:02d}", vertices[source], vertices[range_]))
    return lpga.graphs.Graph(vertices=vertices, edges=edges, name=name)


def random_unimodular(rng):
    """Return a random complex number of modulus one."""
    return complex(np.exp(1j * rng.uniform(-np.pi, np.pi)))
