"""
Policy and weight files.

Both are flat mappings, written in YAML or JSON:

* A **policy file** maps regular vertices to their special edge,
  overriding the default choice of :meth:`lpga.leavitt.BasisPolicy.default`:

  .. code-block:: yaml

      v: b
      w: c

* A **weight file** maps atoms to positive weights, atoms not given have
  weight one:

  .. code-block:: yaml

      "v:0": 2.0
      "v:1": 0.5

Files are read with :class:`aspecd.utils.Yaml`.

Module documentation
====================

"""

import aspecd.utils

import lpga.exceptions
import lpga.leavitt


class MappingImporter:
    """
    Read a flat mapping from a YAML or JSON file.

    Attributes
    ----------
    source : :class:`str`
        Name of the file to read

    Raises
    ------
    lpga.exceptions.FileFormatError
        Raised if the file cannot be read or is not a flat mapping

    """

    def __init__(self, source=""):
        self.source = source

    def import_(self):
        """Return the mapping with string keys."""
        yaml_file = aspecd.utils.Yaml()
        try:
            yaml_file.read_from(self.source)
        except OSError:
            raise lpga.exceptions.FileFormatError(
                f"File {self.source} cannot be read"
            ) from None
        except Exception as error:  # pylint: disable=broad-except
            raise lpga.exceptions.FileFormatError(
                f"File {self.source} is no valid YAML: {error}"
            ) from None
        content = yaml_file.dict
        if not isinstance(content, dict) or any(
            isinstance(value, (dict, list)) for value in content.values()
        ):
            raise lpga.exceptions.FileFormatError(
                f"File {self.source} does not contain a flat mapping"
            )
        return {str(key): value for key, value in content.items()}


def read_policy(source, graph):
    """
    Read a basis policy for a graph.

    Raises
    ------
    lpga.exceptions.PolicyError
        Raised if an entry is not a valid special edge

    """
    mapping = MappingImporter(source=source).import_()
    return lpga.leavitt.BasisPolicy.from_mapping(
        graph, {key: str(value) for key, value in mapping.items()}
    )


def read_weights(source):
    """Read atom weights as floats."""
    mapping = MappingImporter(source=source).import_()
    try:
        return {key: float(value) for key, value in mapping.items()}
    except (TypeError, ValueError):
        raise lpga.exceptions.FileFormatError(
            f"Weights in {source} need to be numbers"
        ) from None
