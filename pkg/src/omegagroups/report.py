"""Witness-bearing reports and the error types shared by every checker."""

from __future__ import annotations

import contextlib
import contextvars
from collections import Counter
from dataclasses import dataclass

DEFAULT_MAX_WITNESSES = 16

_max_witnesses = contextvars.ContextVar("max_witnesses", default=DEFAULT_MAX_WITNESSES)


@contextlib.contextmanager
def witness_limit(k: int):
    """Temporarily change how many witnesses each law keeps."""
    token = _max_witnesses.set(k)
    try:
        yield
    finally:
        _max_witnesses.reset(token)


class StructureError(ValueError):
    """Malformed input: wrong table sizes, out-of-range entries, bad syntax.

    Distinct from an axiom failure, which is reported, not raised.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class VerificationError(Exception):
    """A construction was handed (or produced) something that fails its checks."""

    def __init__(self, message, report: Report | None = None):
        super().__init__(message)
        self.report = report if report is not None else Report()


@dataclass(frozen=True)
class Violation:
    section: str
    law: str
    witness: tuple
    detail: str = ""


class Report:
    """Collects violated laws with witnesses, capped per law.

    `counts` keeps the true number of failures per law even when
    witnesses were dropped.
    """

    def __init__(self, subject=""):
        self.subject = subject
        self.max_witnesses = _max_witnesses.get()
        self.violations: list[Violation] = []
        self.counts: Counter = Counter()

    @property
    def ok(self) -> bool:
        return not self.counts

    def add(self, section, law, witness, detail=""):
        key = (section, law)
        if self.counts[key] < self.max_witnesses:
            self.violations.append(Violation(section, law, tuple(int(w) for w in witness), detail))
        self.counts[key] += 1

    def add_many(self, section, law, witnesses, detail=""):
        """Record rows of an (k, arity) witness array (numpy or nested lists)."""
        witnesses = list(witnesses)
        if not witnesses:
            return
        key = (section, law)
        room = max(self.max_witnesses - self.counts[key], 0)
        for w in witnesses[:room]:
            self.violations.append(Violation(section, law, tuple(int(x) for x in w), detail))
        self.counts[key] += len(witnesses)

    def extend(self, other: Report, section=None):
        """Merge another report, optionally re-homing it under `section`."""
        for v in other.violations:
            sec = v.section if section is None else f"{section}.{v.section}"
            self.violations.append(Violation(sec, v.law, v.witness, v.detail))
        for (sec, law), n in other.counts.items():
            sec = sec if section is None else f"{section}.{sec}"
            self.counts[(sec, law)] += n
        return self

    def laws(self):
        return sorted(self.counts)

    def failed(self, law) -> bool:
        return any(l == law for _, l in self.counts)

    def first(self, law=None) -> Violation | None:
        for v in self.violations:
            if law is None or v.law == law:
                return v
        return None

    def __repr__(self):
        return f"Report({self.subject!r}, violations={sum(self.counts.values())})"

    def render(self, fmt="human") -> str:
        if fmt == "machine":
            return self._render_machine()
        lines = [f"{self.subject or 'report'}: {'OK' if self.ok else 'FAILED'}"]
        for (sec, law), n in sorted(self.counts.items()):
            lines.append(f"  [{sec}] {law}: {n} violation(s)")
            for v in self.violations:
                if (v.section, v.law) == (sec, law):
                    w = ", ".join(map(str, v.witness))
                    extra = f"  ({v.detail})" if v.detail else ""
                    lines.append(f"      witness ({w}){extra}")
        return "\n".join(lines)

    def _render_machine(self) -> str:
        lines = [f"subject={self.subject}", f"status={'pass' if self.ok else 'fail'}"]
        for (sec, law), n in sorted(self.counts.items()):
            lines.append(f"law section={sec} name={law} count={n}")
            for v in self.violations:
                if (v.section, v.law) == (sec, law):
                    lines.append(
                        f"witness section={sec} name={law} values={','.join(map(str, v.witness))}"
                        + (f" detail={v.detail.replace(' ', '_')}" if v.detail else "")
                    )
        lines.append(f"total={sum(self.counts.values())}")
        return "\n".join(lines)
