"""Parameter DSL, pretty printer, and JSON reporting.

Grammar (whitespace insensitive, '#' starts a comment):

    doc    := datum decl* param roots? places?
    datum  := "group" "U(" INT ")" "parity" SIGN
    decl   := "mu" IDENT ":" "deg" "=" INT "," "sd" "=" ("+" | "-" | "none")
    param  := "psi" "=" term ("+" term)*
    term   := [INT "*"] IDENT "(x)" "nu(" INT ")"
    roots  := "roots" "{" (IDENT "," IDENT ":" SIGN)* "}"
    places := "places" "[" (IDENT ":" ("inert" | "split"))* "]"

Exit codes: 1 parse error, 2 semantic validation failure, 3 internal
invariant failure.  Rationals are serialized as {"num": ..., "den": ...}.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import centralizer as central
from . import endoscopy, multiplicity, signs, tadic
from .params import (
    NOT_SELF_DUAL,
    ORTHOGONAL,
    SYMPLECTIC,
    GlobalParameter,
    SimpleDatumTag,
    SimpleParameter,
    classify,
    factors_through,
)
from .weylnum import ComponentDatum, ConnectedShape, e_number, i_number, sigma, so, sp as sp_factor


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__("%s at line %d, column %d" % (message, line, column))
        self.line = line
        self.column = column


class SemanticError(Exception):
    pass


class InternalInvariantError(Exception):
    pass


# ---------------------------------------------------------------------------
# Lexer


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | INT | PUNCT
    text: str
    line: int
    column: int


_PUNCT = set("(){}[]:,=+-*")


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(Token("INT", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("IDENT", text[start:i], line, col))
            col += i - start
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    return tokens


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Decl:
    label: str
    deg: int
    sd: str  # "+", "-", "none"


@dataclass(frozen=True)
class Term:
    mult: int
    label: str
    nu: int


@dataclass(frozen=True)
class ParameterDocument:
    N: int
    parity: int
    decls: Tuple[Decl, ...]
    terms: Tuple[Term, ...]
    roots: Tuple[Tuple[str, str, int], ...]
    places: Tuple[Tuple[str, str], ...]


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, message: str):
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("PUNCT", "", 1, 1)
            raise ParseError(message + " (at end of input)", last.line, last.column)
        raise ParseError(message + ", got %r" % tok.text, tok.line, tok.column)

    def _take(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self._peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            self._fail("expected %r" % want)
        self.pos += 1
        return tok

    def _at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def _int(self) -> int:
        return int(self._take("INT").text)

    def _sign(self) -> int:
        tok = self._peek()
        if tok is None or tok.text not in ("+", "-"):
            self._fail("expected a sign")
        self.pos += 1
        return 1 if tok.text == "+" else -1

    def _signed_one(self) -> int:
        """A sign written as -1 or +1 (the bare sign is also accepted)."""
        sign = self._sign()
        if self._at("INT", "1"):
            self.pos += 1
        return sign

    def document(self) -> ParameterDocument:
        self._take("IDENT", "group")
        self._take("IDENT", "U")
        self._take("PUNCT", "(")
        n = self._int()
        self._take("PUNCT", ")")
        self._take("IDENT", "parity")
        parity = self._sign()
        decls = []
        while self._at("IDENT", "mu"):
            decls.append(self._decl())
        self._take("IDENT", "psi")
        self._take("PUNCT", "=")
        terms = [self._term()]
        while self._at("PUNCT", "+"):
            self.pos += 1
            terms.append(self._term())
        roots: List[Tuple[str, str, int]] = []
        if self._at("IDENT", "roots"):
            roots = self._roots()
        places: List[Tuple[str, str]] = []
        if self._at("IDENT", "places"):
            places = self._places()
        if self._peek() is not None:
            self._fail("unexpected trailing input")
        return ParameterDocument(n, parity, tuple(decls), tuple(terms), tuple(roots), tuple(places))

    def _decl(self) -> Decl:
        self._take("IDENT", "mu")
        label = self._take("IDENT").text
        self._take("PUNCT", ":")
        self._take("IDENT", "deg")
        self._take("PUNCT", "=")
        deg = self._int()
        self._take("PUNCT", ",")
        self._take("IDENT", "sd")
        self._take("PUNCT", "=")
        tok = self._peek()
        if tok is not None and tok.text in ("+", "-"):
            self.pos += 1
            sd = tok.text
        elif self._at("IDENT", "none"):
            self.pos += 1
            sd = "none"
        else:
            self._fail("expected '+', '-' or 'none'")
        return Decl(label, deg, sd)

    def _term(self) -> Term:
        mult = 1
        if self._at("INT"):
            mult = self._int()
            self._take("PUNCT", "*")
        label = self._take("IDENT").text
        self._take("PUNCT", "(")
        self._take("IDENT", "x")
        self._take("PUNCT", ")")
        self._take("IDENT", "nu")
        self._take("PUNCT", "(")
        nu = self._int()
        self._take("PUNCT", ")")
        return Term(mult, label, nu)

    def _roots(self) -> List[Tuple[str, str, int]]:
        self._take("IDENT", "roots")
        self._take("PUNCT", "{")
        out = []
        while not self._at("PUNCT", "}"):
            a = self._take("IDENT").text
            self._take("PUNCT", ",")
            b = self._take("IDENT").text
            self._take("PUNCT", ":")
            out.append((a, b, self._signed_one()))
        self._take("PUNCT", "}")
        return out

    def _places(self) -> List[Tuple[str, str]]:
        self._take("IDENT", "places")
        self._take("PUNCT", "[")
        out = []
        while not self._at("PUNCT", "]"):
            name = self._take("IDENT").text
            self._take("PUNCT", ":")
            if self._at("IDENT", "inert") or self._at("IDENT", "split"):
                kind = self._take("IDENT").text
            else:
                self._fail("expected 'inert' or 'split'")
            out.append((name, kind))
        self._take("PUNCT", "]")
        return out


def parse(text: str) -> ParameterDocument:
    return _Parser(tokenize(text)).document()


def print_document(doc: ParameterDocument) -> str:
    lines = ["group U(%d) parity %s" % (doc.N, "+" if doc.parity == 1 else "-")]
    for d in doc.decls:
        lines.append("mu %s: deg=%d, sd=%s" % (d.label, d.deg, d.sd))
    terms = []
    for t in doc.terms:
        head = "%d*" % t.mult if t.mult != 1 else ""
        terms.append("%s%s (x) nu(%d)" % (head, t.label, t.nu))
    lines.append("psi = " + " + ".join(terms))
    if doc.roots:
        body = " ".join("%s, %s : %s" % (a, b, "+1" if s == 1 else "-1") for a, b, s in doc.roots)
        lines.append("roots { %s }" % body)
    if doc.places:
        body = " ".join("%s : %s" % (name, kind) for name, kind in doc.places)
        lines.append("places [ %s ]" % body)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Semantics


@dataclass(frozen=True)
class Semantics:
    psi: GlobalParameter
    tag: SimpleDatumTag
    table: signs.RootNumberTable
    places: Tuple[multiplicity.Place, ...]


def elaborate(doc: ParameterDocument) -> Semantics:
    decls = {}
    for d in doc.decls:
        if d.label in decls:
            raise SemanticError("label %r declared twice" % d.label)
        decls[d.label] = d
    seen = set()
    constituents = []
    for t in doc.terms:
        if t.label not in decls:
            raise SemanticError("label %r used but not declared" % t.label)
        key = (t.label, t.nu)
        if key in seen:
            raise SemanticError("duplicate term %s (x) nu(%d)" % key)
        if any(k[0] == t.label for k in seen):
            raise SemanticError(
                "label %r reused with a different nu; declare a second label" % t.label
            )
        seen.add(key)
        d = decls[t.label]
        if d.sd == "none":
            base = SimpleParameter(t.label, d.deg, NOT_SELF_DUAL, t.nu, partner=t.label + "*")
            mate = SimpleParameter(t.label + "*", d.deg, NOT_SELF_DUAL, t.nu, partner=t.label)
            constituents.append((base, t.mult))
            constituents.append((mate, t.mult))
        else:
            duality = ORTHOGONAL if d.sd == "+" else SYMPLECTIC
            constituents.append((SimpleParameter(t.label, d.deg, duality, t.nu), t.mult))
    try:
        psi = GlobalParameter(constituents)
    except ValueError as exc:
        raise SemanticError(str(exc))
    if psi.total_degree != doc.N:
        raise SemanticError(
            "declared degree %d but constituents sum to %d" % (doc.N, psi.total_degree)
        )
    kappa = doc.parity * (-1) ** (doc.N - 1)
    tag = SimpleDatumTag(doc.N, kappa)
    entries = {}
    for a, b, s in doc.roots:
        for lab in (a, b):
            if lab not in decls:
                raise SemanticError("root-number label %r not declared" % lab)
        if a == b:
            raise SemanticError("root-number entries pair distinct labels")
        entries[frozenset((a, b))] = s
    try:
        table = signs.RootNumberTable(entries)
        table.validate_against(psi)
    except ValueError as exc:
        raise SemanticError(str(exc))
    names = set()
    places = []
    for name, kind in doc.places:
        if name in names:
            raise SemanticError("place %r declared twice" % name)
        names.add(name)
        places.append(multiplicity.Place(name, kind))
    return Semantics(psi, tag, table, tuple(places))


# ---------------------------------------------------------------------------
# Reports


def _enc(value):
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, dict):
        return {k: _enc(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [_enc(v) for v in value]
    return value


def _dump(report: dict) -> str:
    return json.dumps(_enc(report), sort_keys=True, indent=2) + "\n"


def _flags_dict(flags) -> dict:
    return {
        "sim": flags.in_sim,
        "two": flags.in_2,
        "ell": flags.in_ell,
        "s_disc": flags.in_s_disc,
        "disc": flags.in_disc,
        "generic": flags.is_generic,
    }


def report_classify(sem: Semantics) -> dict:
    return {
        "command": "classify",
        "N": sem.tag.N,
        "parity": sem.tag.parity,
        "factors_through": factors_through(sem.psi, sem.tag),
        "group": _flags_dict(classify(sem.psi, sem.tag)),
        "twisted": _flags_dict(classify(sem.psi)),
    }


def _require_factoring(sem: Semantics):
    if not factors_through(sem.psi, sem.tag):
        raise SemanticError("parameter does not factor through the declared datum")


def report_centralizer(sem: Semantics) -> dict:
    _require_factoring(sem)
    shape = central.centralizer_shape(sem.psi, sem.tag)
    diagram = central.levi_diagram(sem.psi, sem.tag)
    if not (diagram.exact and diagram.splitting_ok):
        raise InternalInvariantError("normalizer diagram failed exactness")
    group = central.component_group(shape)
    return {
        "command": "centralizer",
        "orthogonal": [[sp.label, l] for sp, l in shape.orthogonal],
        "symplectic": [[sp.label, l] for sp, l in shape.symplectic],
        "general_linear": [[sp.label, l] for sp, l in shape.general_linear],
        "component_group_order": group.order,
        "diagram": {
            "w0": diagram.w0_order,
            "w": diagram.w_order,
            "n": diagram.n_order,
            "s": diagram.s_order,
            "s1": diagram.s1_order,
            "r": diagram.r_order,
        },
    }


def report_arthur(sem: Semantics) -> dict:
    _require_factoring(sem)
    shape = central.centralizer_shape(sem.psi, sem.tag)
    group = central.component_group(shape)
    rows = []
    for vec in group.elements():
        factors = []
        coset = []
        for (sp_c, l), sign in zip(shape.orthogonal, vec):
            factors.append(so(l))
            coset.append(sign == -1)
        for _, l in shape.symplectic:
            factors.append(sp_factor(l))
            coset.append(False)
        from .weylnum import gl as gl_factor

        for _, l in shape.general_linear:
            factors.append(gl_factor(l))
            coset.append(False)
        datum = ComponentDatum(ConnectedShape(tuple(factors)), tuple(coset))
        rows.append({
            "component": list(vec),
            "i": i_number(datum),
            "e": e_number(datum),
        })
    sig = sigma(multiplicity.identity_component_shape(shape))
    return {
        "command": "arthur",
        "components": rows,
        "sigma_bar0": sig,
    }


def report_endoscopy(N: int) -> dict:
    std = [
        {"split": list(d.split), "iota": d.iota, "out_order": d.out_order}
        for d in endoscopy.enumerate_standard(N)
    ]
    tw = [
        {
            "split": list(d.split),
            "signature": list(d.signature),
            "simple": d.is_simple,
            "iota": d.iota_twisted,
            "parity": d.parity,
        }
        for d in endoscopy.enumerate_twisted(N)
    ]
    return {"command": "endoscopy", "N": N, "standard": std, "twisted": tw}


def report_epsilon(sem: Semantics) -> dict:
    _require_factoring(sem)
    char = signs.epsilon_character(sem.psi, sem.tag, sem.table)
    return {
        "command": "epsilon",
        "labels": list(char.labels),
        "exponents": list(char.exponents),
        "trivial": char.is_trivial,
        "value_at_s_psi": char.value_at_s_psi,
        "is_epsilon_parameter": signs.is_epsilon_parameter(sem.psi),
        "defaulted_pairs": sorted(sorted(p) for p in sem.table.warned_pairs),
    }


def report_multiplicity(sem: Semantics) -> dict:
    _require_factoring(sem)
    coeff = multiplicity.stable_coefficient(sem.psi, sem.tag, sem.table)
    report = {
        "command": "multiplicity",
        "stable_coefficient": coeff,
    }
    flags = classify(sem.psi, sem.tag)
    if flags.in_2 and sem.places:
        shape = central.centralizer_shape(sem.psi, sem.tag)
        model = multiplicity.GlobalPlacesModel(shape, sem.places)
        members = multiplicity.enumerate_members(model)
        selected = sum(
            multiplicity.spectral_multiplicity(sem.psi, sem.tag, sem.table, m, model)
            for m in members
        )
        report["packet"] = {"members": len(members), "selected": selected}
    return report


def report_tadic(n: int, k: int, field: str) -> dict:
    case = tadic.ARCH if field == "arch" else tadic.NONARCH
    combo = tadic.expand("r", n, k, case)
    terms = []
    for term, coeff in combo.items():
        terms.append({
            "coefficient": coeff,
            "symbols": [
                {"k": s.k, "lambda": Fraction(s.lam)} for s in term.symbols
            ],
        })
    star_term, star_coeff = tadic.tempered_part(combo)
    return {
        "command": "tadic",
        "n": n,
        "k": k,
        "field": field,
        "terms": terms,
        "tempered": {
            "coefficient": star_coeff,
            "symbols": [{"k": s.k, "lambda": Fraction(s.lam)} for s in star_term.symbols],
        },
    }


def run_check() -> dict:
    """A condensed invariant battery across the modules; exit 3 on failure."""
    from . import checks

    failures = checks.run_all()
    if failures:
        raise InternalInvariantError("; ".join(failures))
    return {"command": "check", "status": "ok"}


# ---------------------------------------------------------------------------
# Entry point


_DOC_COMMANDS = ("classify", "centralizer", "arthur", "epsilon", "multiplicity")


def run(command: str, doc: Optional[ParameterDocument], flags: argparse.Namespace) -> dict:
    if command in _DOC_COMMANDS:
        if doc is None:
            raise SemanticError("command %r needs an input document" % command)
        sem = elaborate(doc)
        if command == "classify":
            return report_classify(sem)
        if command == "centralizer":
            return report_centralizer(sem)
        if command == "arthur":
            return report_arthur(sem)
        if command == "epsilon":
            return report_epsilon(sem)
        return report_multiplicity(sem)
    if command == "endoscopy":
        if flags.n is None:
            if doc is None:
                raise SemanticError("endoscopy needs --n or an input document")
            return report_endoscopy(doc.N)
        return report_endoscopy(flags.n)
    if command == "tadic":
        if flags.n is None or flags.k is None:
            raise SemanticError("tadic needs --n and --k")
        return report_tadic(flags.n, flags.k, flags.field)
    if command == "check":
        return run_check()
    raise SemanticError("unknown command %r" % command)


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="uendo",
        description="exact endoscopic combinatorics for unitary groups",
    )
    parser.add_argument(
        "command",
        choices=["classify", "centralizer", "arthur", "endoscopy", "epsilon",
                 "multiplicity", "tadic", "check", "print"],
    )
    parser.add_argument("--input", help="parameter document file")
    parser.add_argument("--json", action="store_true", help="JSON output (default)")
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--k", type=int, default=None)
    parser.add_argument("--field", choices=["arch", "nonarch"], default="nonarch")
    args = parser.parse_args(argv)

    doc = None
    try:
        if args.input:
            with open(args.input, "r", encoding="utf-8") as handle:
                doc = parse(handle.read())
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("cannot read input: %s" % exc, file=sys.stderr)
        return 2

    try:
        if args.command == "print":
            if doc is None:
                raise SemanticError("print needs an input document")
            sys.stdout.write(print_document(doc))
            return 0
        report = run(args.command, doc, args)
    except SemanticError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print("invariant failure: %s" % exc, file=sys.stderr)
        return 3
    sys.stdout.write(_dump(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
