"""
Verification reports.

Every check of the package, be it symbolic or numeric, ends up in a
:class:`VerificationReport`: a subject, a list of individual checks, and a
verdict. The verdict is "pass" if and only if every check passed.

Checks based on numerical norm estimates that could not be certified are
marked as uncertified. They count as passed as far as the verdict is
concerned, but are listed separately, so that callers can decide whether an
uncertified check is good enough.

Reports can be converted to dicts (and hence written as JSON, see
:mod:`lpga.io.exporter`) and rendered as plain text.


Module documentation
====================

"""

import logging

import aspecd.utils


logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class Check(aspecd.utils.ToDictMixin):
    """
    Single check within a report.

    Attributes
    ----------
    name : :class:`str`
        Name of the check, *e.g.* the relation checked

    passed : :class:`bool`
        Whether the check passed

    residual : :class:`float`
        Size of the deviation found, zero for exact checks that passed

    detail : :class:`str`
        Additional information, *e.g.* the offending term

    certified : :class:`bool`
        Whether the outcome rests on certified methods only

    """

    def __init__(self, name="", passed=True, residual=0.0, detail="", certified=True):
        super().__init__()
        self.name = name
        self.passed = bool(passed)
        self.residual = float(residual)
        self.detail = detail
        self.certified = bool(certified)

    @property
    def status(self):
        """Either "pass" or "fail"."""
        return "pass" if self.passed else "fail"

    def to_dict(self, remove_empty=False):
        """Return the check with the field names of the report format."""
        return {
            "name": self.name,
            "status": self.status,
            "residual": self.residual,
            "detail": self.detail,
            "certified": self.certified,
        }


class VerificationReport(aspecd.utils.ToDictMixin):
    """
    Collection of checks with a common verdict.

    Attributes
    ----------
    subject : :class:`str`
        What has been verified

    checks : :class:`list`
        :class:`Check` objects in the order they were added

    results : :class:`dict`
        Additional results, *e.g.* kernel dimensions or block sizes

    Examples
    --------
    Checks are added one by one, the verdict follows automatically:

    .. code-block::

        report = VerificationReport(subject="CK family on loop")
        report.add_check(name="E_v idempotent", passed=True)
        report.add_check(name="T_a S_a = E_v", passed=False, residual=1.0)
        report.verdict  # "fail"

    """

    def __init__(self, subject=""):
        super().__init__()
        self.subject = subject
        self.checks = []
        self.results = {}

    @property
    def verdict(self):
        """Either "pass" (all checks passed) or "fail"."""
        return "pass" if self.passed else "fail"

    @property
    def passed(self):
        """Whether every check passed."""
        return all(check.passed for check in self.checks)

    @property
    def uncertified(self):
        """Names of passed checks that rest on uncertified estimates."""
        return [
            check.name
            for check in self.checks
            if check.passed and not check.certified
        ]

    @property
    def max_residual(self):
        """Largest residual of all checks, zero for an empty report."""
        return max((check.residual for check in self.checks), default=0.0)

    def add_check(self, name="", passed=True, residual=0.0, detail="", certified=True):
        """
        Add a check to the report.

        Returns
        -------
        check : :class:`Check`
            The check just added

        """
        check = Check(
            name=name,
            passed=passed,
            residual=residual,
            detail=detail,
            certified=certified,
        )
        if not check.passed:
            logger.info("Check failed: %s %s", name, detail)
        self.checks.append(check)
        return check

    def failed_checks(self):
        """Return all checks that failed."""
        return [check for check in self.checks if not check.passed]

    def merge(self, other, prefix=""):
        """Append the checks of another report, optionally prefixing names."""
        for check in other.checks:
            self.add_check(
                name=f"{prefix}{check.name}",
                passed=check.passed,
                residual=check.residual,
                detail=check.detail,
                certified=check.certified,
            )

    def to_dict(self, remove_empty=False):
        """Return the report in its serialisation format."""
        return {
            "subject": self.subject,
            "verdict": self.verdict,
            "checks": [check.to_dict() for check in self.checks],
            "results": self.results,
        }

    def to_text(self):
        """Render the report as plain text."""
        lines = [f"{self.subject}: {self.verdict.upper()}"]
        for check in self.checks:
            flag = "" if check.certified else " (uncertified)"
            line = f"  [{check.status}] {check.name}{flag}"
            if check.residual:
                line += f"  residual={check.residual:.3g}"
            if check.detail:
                line += f"  {check.detail}"
            lines.append(line)
        for key, value in self.results.items():
            lines.append(f"  {key}: {value}")
        return "\n".join(lines)
