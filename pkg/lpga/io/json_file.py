"""
Common ground of all JSON importers and exporters.

Importers read a file (the ``source``) and return the object it describes,
exporters write an object to a file (the ``target``). Without a target,
exporters only create the text, accessible as attribute ``text``, as the
command-line interface writes to standard output.

The serialisation is canonical: the same object always yields the same
bytes, and floats are written with their shortest round-trip representation.

Module documentation
====================

"""

import json
import logging
import os

import lpga.exceptions


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class JsonImporter:
    """
    Base class for importers of JSON files.

    Derived classes implement :meth:`_import` and set the attribute
    ``result`` there, using the parsed content in ``content``.

    Attributes
    ----------
    source : :class:`str`
        Name of the file to read

    content : :class:`dict`
        Parsed JSON content

    result :
        Object read

    parameters : :class:`dict`
        Parameters controlling the import

    Raises
    ------
    lpga.exceptions.FileFormatError
        Raised if the file does not exist, is no valid JSON, or its top
        level is not an object

    """

    def __init__(self, source=""):
        self.source = source
        self.content = {}
        self.result = None
        self.parameters = {}

    def import_(self):
        """
        Read the source and return the resulting object.

        Returns
        -------
        result :
            Object read

        """
        self.content = self._read()
        self._import()
        return self.result

    def import_from_dict(self, content):
        """Create the object from already parsed content."""
        self.content = content
        self._import()
        return self.result

    def import_from_text(self, text):
        """Create the object from JSON text, *e.g.* bundled package data."""
        try:
            content = json.loads(text)
        except json.JSONDecodeError as error:
            raise lpga.exceptions.FileFormatError(
                f"{self.source or 'Input'} is no valid JSON: {error}"
            ) from None
        if not isinstance(content, dict):
            raise lpga.exceptions.FileFormatError(
                f"{self.source or 'Input'} does not contain a JSON object"
            )
        return self.import_from_dict(content)

    def _read(self):
        try:
            with open(self.source, encoding="utf-8") as file:
                content = json.load(file)
        except FileNotFoundError:
            raise lpga.exceptions.FileFormatError(
                f"File {self.source} does not exist"
            ) from None
        except json.JSONDecodeError as error:
            raise lpga.exceptions.FileFormatError(
                f"File {self.source} is no valid JSON: {error}"
            ) from None
        if not isinstance(content, dict):
            raise lpga.exceptions.FileFormatError(
                f"File {self.source} does not contain a JSON object"
            )
        logger.debug("Read %s", self.source)
        return content

    def _import(self):
        pass

    def _require(self, key, type_=None, content=None):
        content = self.content if content is None else content
        if key not in content:
            raise lpga.exceptions.FileFormatError(
                f"Missing key {key!r} in {self.source or 'input'}"
            )
        value = content[key]
        if type_ is not None and not isinstance(value, type_):
            raise lpga.exceptions.FileFormatError(
                f"Key {key!r} in {self.source or 'input'} has wrong type"
            )
        return value

    @property
    def stem(self):
        """Base name of the source without extension."""
        return os.path.splitext(os.path.basename(self.source))[0]


class JsonExporter:
    """
    Base class for exporters writing JSON.

    Derived classes implement :meth:`_to_dict`.

    Attributes
    ----------
    target : :class:`str`
        Name of the file to write, no file is written if empty

    text : :class:`str`
        Serialised object, ending with a newline

    """

    def __init__(self, target=""):
        self.target = target
        self.text = ""

    def export_from(self, object_):
        """Serialise the object and write it to the target, if given."""
        self.text = dumps(self._to_dict(object_))
        if self.target:
            with open(self.target, "w", encoding="utf-8") as file:
                file.write(self.text)
            logger.debug("Wrote %s", self.target)
        return self.text

    def _to_dict(self, object_):
        return object_.to_dict()


def dumps(content):
    """Serialise to indented JSON with a trailing newline."""
    return json.dumps(content, indent=2, ensure_ascii=False) + "\n"
