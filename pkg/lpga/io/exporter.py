"""
Exporters for reports and results.

Everything the command-line interface prints goes through
:class:`ReportExporter`, in either of two formats:

* ``json``: the serialisation format of the object, indented, with a
  trailing newline. Reports serialise to

  .. code-block:: json

      {"subject": "...", "verdict": "pass",
       "checks": [{"name": "...", "status": "pass", "residual": 0.0,
                   "detail": "", "certified": true}],
       "results": {}}

* ``text``: a human-readable rendering, see
  :meth:`lpga.report.VerificationReport.to_text`.

Objects that are no reports (plain results, such as a normalised element)
are given as dicts. Their text rendering lists the keys with their values.

.. note::
    Output is byte-stable: the same object always gives the same text.

"""

import lpga.report
from lpga.io import json_file


FORMATS = ("json", "text")


class ReportExporter(json_file.JsonExporter):
    """
    Export reports and results as JSON or plain text.

    Attributes
    ----------
    format : :class:`str`
        Either "json" or "text"

    Raises
    ------
    ValueError
        Raised if the format is unknown

    """

    def __init__(self, target="", format_="json"):
        super().__init__(target=target)
        if format_ not in FORMATS:
            raise ValueError(f"Unknown format {format_!r}")
        self.format = format_

    def export_from(self, object_):
        """Serialise a report or a dict and write it to the target, if given."""
        if self.format == "json":
            return super().export_from(object_)
        self.text = to_text(object_) + "\n"
        if self.target:
            with open(self.target, "w", encoding="utf-8") as file:
                file.write(self.text)
        return self.text

    def _to_dict(self, object_):
        if isinstance(object_, lpga.report.VerificationReport):
            return object_.to_dict()
        return object_


def to_text(object_, indent=""):
    """Render a report, a dict, or a list as indented plain text."""
    if isinstance(object_, lpga.report.VerificationReport):
        return "\n".join(indent + line for line in object_.to_text().split("\n"))
    if isinstance(object_, dict):
        lines = []
        for key, value in object_.items():
            nested = (dict, list, lpga.report.VerificationReport)
            if isinstance(value, nested) and value:
                lines.append(f"{indent}{key}:")
                lines.append(to_text(value, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {_scalar(value)}")
        return "\n".join(lines)
    if isinstance(object_, list):
        lines = []
        for value in object_:
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{indent}-")
                lines.append(to_text(value, indent + "  "))
            else:
                lines.append(f"{indent}- {_scalar(value)}")
        return "\n".join(lines)
    return f"{indent}{_scalar(object_)}"


def _scalar(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    if value is None:
        return "-"
    if isinstance(value, (dict, list)):
        return "none"
    return str(value)
