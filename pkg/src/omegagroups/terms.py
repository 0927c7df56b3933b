"""Prefix-notation terms over a group with operations, and identity checking.

Grammar::

    term     := "0" | variable | "(" op term+ ")"
    identity := term "=" term

``op`` is ``+`` (binary), ``-`` (one argument: negation; two: a + (-b)),
or a named operation of the signature.  Example: ``(mul a (+ b c))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .report import Report, StructureError

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(=)|([^\s()=]+))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")

# evaluate identities in slices of this many assignments
_CHUNK = 1 << 20


class TermError(StructureError):
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple

    def __str__(self):
        return "(" + " ".join([self.op, *map(str, self.args)]) + ")"


@dataclass(frozen=True)
class Identity:
    lhs: object
    rhs: object
    variables: tuple

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def variables_of(t) -> list[str]:
    seen: list[str] = []

    def walk(u):
        if isinstance(u, Var):
            if u.name not in seen:
                seen.append(u.name)
        elif isinstance(u, App):
            for a in u.args:
                walk(a)

    walk(t)
    return seen


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermError(f"cannot tokenize term at offset {pos}: {text!r}")
        kind = m.lastindex
        out.append(("(", ")", "=", "atom")[kind - 1] if kind != 4 else m.group(4))
        pos = m.end()
    return out


def _parse(tokens, i):
    if i >= len(tokens):
        raise TermError("unexpected end of term")
    tok = tokens[i]
    if tok == "(":
        if i + 1 >= len(tokens) or tokens[i + 1] in ("(", ")", "="):
            raise TermError("expected an operation name after '('")
        op = tokens[i + 1]
        if op not in ("+", "-") and not _NAME.match(op):
            raise TermError(f"bad operation name {op!r}")
        args = []
        j = i + 2
        while j < len(tokens) and tokens[j] != ")":
            arg, j = _parse(tokens, j)
            args.append(arg)
        if j >= len(tokens):
            raise TermError("unbalanced parentheses")
        if not args:
            raise TermError(f"operation {op!r} applied to no arguments")
        return App(op, tuple(args)), j + 1
    if tok in (")", "="):
        raise TermError(f"unexpected {tok!r}")
    if tok == "0":
        return Zero(), i + 1
    if not _NAME.match(tok):
        raise TermError(f"bad variable name {tok!r}")
    return Var(tok), i + 1


def parse_term(text: str):
    tokens = _tokenize(text)
    t, j = _parse(tokens, 0)
    if j != len(tokens):
        raise TermError(f"trailing input after term: {' '.join(tokens[j:])}")
    return t


def parse_identity(text: str, variables=None) -> Identity:
    if text.count("=") != 1:
        raise TermError(f"identity needs exactly one '=': {text!r}")
    left, right = text.split("=")
    lhs, rhs = parse_term(left), parse_term(right)
    found = variables_of(lhs) + [v for v in variables_of(rhs) if v not in variables_of(lhs)]
    if variables is None:
        variables = found
    else:
        variables = list(variables)
        missing = [v for v in found if v not in variables]
        if missing:
            raise TermError(f"variables {missing} not declared")
    return Identity(lhs, rhs, tuple(variables))


def check_term(G, t):
    """Raise TermError if `t` uses operations absent from G or wrong arities."""
    if isinstance(t, App):
        if t.op == "+":
            ok = len(t.args) == 2
        elif t.op == "-":
            ok = len(t.args) in (1, 2)
        elif t.op in G.binary:
            ok = len(t.args) == 2
        elif t.op in G.unary:
            ok = len(t.args) == 1
        else:
            raise TermError(f"unknown operation {t.op!r}")
        if not ok:
            raise TermError(f"wrong number of arguments for {t.op!r}: {len(t.args)}")
        for a in t.args:
            check_term(G, a)


def _eval(G, t, env):
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise TermError(f"unbound variable {t.name!r}") from None
    args = [_eval(G, a, env) for a in t.args]
    if t.op == "+":
        return G.add[args[0], args[1]]
    if t.op == "-":
        if len(args) == 1:
            return G.neg[args[0]]
        return G.add[args[0], G.neg[args[1]]]
    if t.op in G.binary:
        return G.binary[t.op][args[0], args[1]]
    return G.unary[t.op][args[0]]


def eval_term(G, t, env):
    """Value of `t` in G under `env` (variable name -> element).

    Elements may also be numpy index arrays; evaluation then broadcasts.
    """
    if isinstance(t, str):
        t = parse_term(t)
    check_term(G, t)
    for v in env.values():
        if np.any(np.asarray(v) < 0) or np.any(np.asarray(v) >= G.order):
            raise TermError(f"assignment {v} outside the carrier")
    value = _eval(G, t, env)
    if np.ndim(value) == 0:
        return int(value)
    return value


def check_identity(G, ident: Identity, report: Report | None = None) -> Report:
    """Exhaustively test `ident` over every assignment of its variables."""
    if isinstance(ident, str):
        ident = parse_identity(ident)
    check_term(G, ident.lhs)
    check_term(G, ident.rhs)
    for v in variables_of(ident.lhs) + variables_of(ident.rhs):
        if v not in ident.variables:
            raise TermError(f"unbound variable {v!r}")
    report = report if report is not None else Report(f"identity {ident}")
    k = len(ident.variables)
    n = G.order
    total = n**k
    law = str(ident)
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(total, start + _CHUNK))
        coords = np.unravel_index(flat, (n,) * k) if k else ()
        env = dict(zip(ident.variables, coords))
        lhs = np.broadcast_to(_eval(G, ident.lhs, env), flat.shape)
        rhs = np.broadcast_to(_eval(G, ident.rhs, env), flat.shape)
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            rows = np.stack([c[bad] for c in coords], axis=1) if k else np.zeros((bad.size, 0), int)
            report.add_many("identities", law, rows)
    return report
