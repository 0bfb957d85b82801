"""Text formats: parsing and canonical rendering for every AST in the system.

Formats:

* tree DSL        -- ``SAND([E], C([S1 & S2], ALLR([G])))``
* trace files     -- a ``props:`` header, one ``{p,q}`` letter per line,
                     blank lines separating traces
* first-order     -- ``E x. (A y. (~(x < y)) & letter({p}, x))``
* expressions     -- ``{p} . !0 & eps | {q}`` with precedence ! > . > & > |

``#`` starts a line comment in every format.  Parsers report positions as
``line:col``; renderers emit the structural (sugar-free) form, so
``parse(render(x)) == x`` holds for every AST.
"""

from __future__ import annotations

from dataclasses import dataclass

from adtlab import core, fo, sere
from adtlab.core import (
    Adt,
    AndN,
    Counter,
    Eps,
    Formula,
    Leaf,
    OrN,
    PropSet,
    SandN,
    Trace,
    Valuation,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.span = span


# ---------------------------------------------------------------------------
# lexer

_SYMBOLS = "()[]{},&|!~<.:"


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "nat", one of _SYMBOLS, or "eof"
    text: str
    span: SourceSpan


def _lex(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        span = SourceSpan(line, col)
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, span))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("nat", text[i:j], span))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], span))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", span)
    tokens.append(_Token("eof", "", SourceSpan(line, col)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.span)
        return tok

    def at_end(self) -> bool:
        return self.peek().kind == "eof"

    def require_end(self):
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input starting at {tok.text!r}", tok.span)

    def fail(self, message: str):
        raise ParseError(message, self.peek().span)


# ---------------------------------------------------------------------------
# propositional formulas


def _parse_formula(p: _Parser, props: PropSet) -> Formula:
    return _formula_or(p, props)


def _formula_or(p: _Parser, props: PropSet) -> Formula:
    out = _formula_and(p, props)
    while p.peek().kind == "|":
        p.next()
        out = core.Or(out, _formula_and(p, props))
    return out


def _formula_and(p: _Parser, props: PropSet) -> Formula:
    out = _formula_unary(p, props)
    while p.peek().kind == "&":
        p.next()
        out = core.And(out, _formula_unary(p, props))
    return out


def _formula_unary(p: _Parser, props: PropSet) -> Formula:
    tok = p.peek()
    if tok.kind == "!":
        p.next()
        return core.Not(_formula_unary(p, props))
    if tok.kind == "(":
        p.next()
        out = _formula_or(p, props)
        p.expect(")")
        return out
    if tok.kind == "ident":
        p.next()
        if tok.text == "true":
            return core.Top()
        if tok.text == "false":
            return core.Bottom()
        if tok.text not in props:
            raise ParseError(f"undeclared proposition {tok.text!r}", tok.span)
        return core.Var(tok.text)
    raise ParseError(f"expected a formula, found {tok.text or 'end of input'!r}", tok.span)


def parse_formula(text: str, props: PropSet) -> Formula:
    p = _Parser(text)
    out = _parse_formula(p, props)
    p.require_end()
    return out


# ---------------------------------------------------------------------------
# tree DSL

_NARY = {"OR": OrN, "SAND": SandN, "AND": AndN}
_UNARY_SUGAR = {"NOT", "ALLB", "ALLL", "ALLR"}


def _parse_adt(p: _Parser, props: PropSet) -> Adt:
    tok = p.peek()
    if tok.kind == "[":
        p.next()
        formula = _parse_formula(p, props)
        p.expect("]")
        return Leaf(formula, props)
    if tok.kind != "ident":
        raise ParseError(f"expected a tree, found {tok.text or 'end of input'!r}", tok.span)
    p.next()
    head = tok.text
    if head == "EPS":
        return Eps(props)
    if head == "TOP":
        return Leaf(core.Top(), props)
    if head == "ETRUE":
        return core.etrue(props)
    if head in _NARY:
        p.expect("(")
        children = [_parse_adt(p, props)]
        while p.peek().kind == ",":
            p.next()
            children.append(_parse_adt(p, props))
        p.expect(")")
        return _NARY[head](tuple(children))
    if head == "C":
        p.expect("(")
        attack = _parse_adt(p, props)
        p.expect(",")
        defense = _parse_adt(p, props)
        p.expect(")")
        return Counter(attack, defense)
    if head in ("GE", "LE", "EQ"):
        p.expect("(")
        nat = p.expect("nat")
        p.expect(")")
        try:
            return core.build_length(head, int(nat.text), props)
        except ValueError as exc:
            raise ParseError(str(exc), nat.span) from None
    if head == "STRICT":
        p.expect("(")
        formula = _parse_formula(p, props)
        p.expect(")")
        return core.strict(formula, props)
    if head in _UNARY_SUGAR:
        p.expect("(")
        child = _parse_adt(p, props)
        p.expect(")")
        return core.build_frame(head, child)
    if head == "CAP":
        p.expect("(")
        left = _parse_adt(p, props)
        p.expect(",")
        right = _parse_adt(p, props)
        p.expect(")")
        return core.cap(left, right)
    raise ParseError(f"unknown tree constructor {head!r}", tok.span)


def parse_adt(text: str, props: PropSet) -> Adt:
    p = _Parser(text)
    out = _parse_adt(p, props)
    p.require_end()
    return out


# ---------------------------------------------------------------------------
# trace files


def parse_valuation(text: str, props: PropSet) -> Valuation:
    p = _Parser(text)
    out = _parse_valuation(p, props)
    p.require_end()
    return out


def _parse_valuation(p: _Parser, props: PropSet) -> Valuation:
    p.expect("{")
    names = []
    if p.peek().kind == "ident":
        names.append(p.next().text)
        while p.peek().kind == ",":
            p.next()
            names.append(p.expect("ident").text)
    tok = p.expect("}")
    try:
        return props.valuation(names)
    except ValueError as exc:
        raise ParseError(str(exc), tok.span) from None


def parse_trace_file(text: str) -> tuple[PropSet, list[Trace]]:
    """Parse a trace file: a ``props:`` header, then traces separated by
    blank lines, one ``{...}`` letter per line.

    A blank line ends the trace accumulated so far (possibly the empty
    trace); end of input ends a trace only if it has at least one letter,
    so the customary trailing newline adds nothing.  Comment-only lines
    are ignored entirely and do not separate traces.
    """
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()  # the final newline terminates a line, it is not a blank line
    # locate the header, skipping leading blanks/comments
    idx = 0
    while idx < len(lines):
        if _strip_comment(lines[idx]).strip():
            break
        idx += 1
    else:
        raise ParseError("missing 'props:' header", SourceSpan(1, 1))
    header = _strip_comment(lines[idx]).strip()
    if not header.startswith("props:"):
        raise ParseError("first line must start with 'props:'", SourceSpan(idx + 1, 1))
    names = [n.strip() for n in header[len("props:"):].split(",")]
    names = [n for n in names if n]
    try:
        props = PropSet(names)
    except ValueError as exc:
        raise ParseError(str(exc), SourceSpan(idx + 1, 1)) from None

    traces: list[Trace] = []
    block: list[Valuation] = []
    saw_letters = False
    for lineno in range(idx + 1, len(lines)):
        raw = lines[lineno]
        if raw.strip().startswith("#"):
            continue
        content = _strip_comment(raw).strip()
        if not content:
            traces.append(Trace(props, tuple(block)))
            block = []
            saw_letters = False
            continue
        try:
            v = parse_valuation(content, props)
        except ParseError as exc:
            raise ParseError(str(exc.args[0]).split(": ", 1)[-1], SourceSpan(lineno + 1, 1)) from None
        block.append(v)
        saw_letters = True
    if saw_letters:
        traces.append(Trace(props, tuple(block)))
    return props, traces


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


# ---------------------------------------------------------------------------
# first-order formulas


def _at_quantifier(p: _Parser) -> bool:
    # "E x." / "A x." -- the dot keeps E and A usable as variable names
    toks = p.tokens
    i = p.pos
    return (
        toks[i].kind == "ident"
        and toks[i].text in ("E", "A")
        and i + 2 < len(toks)
        and toks[i + 1].kind == "ident"
        and toks[i + 2].kind == "."
    )


def _parse_fo(p: _Parser, props: PropSet) -> fo.FoFormula:
    if _at_quantifier(p):
        head = p.next()
        var = p.expect("ident").text
        p.expect(".")
        body = _parse_fo(p, props)
        return fo.Exists(var, body) if head.text == "E" else fo.Forall(var, body)
    return _fo_or(p, props)


def _fo_or(p: _Parser, props: PropSet) -> fo.FoFormula:
    out = _fo_and(p, props)
    while p.peek().kind == "|":
        p.next()
        out = fo.Or(out, _fo_and(p, props))
    return out


def _fo_and(p: _Parser, props: PropSet) -> fo.FoFormula:
    out = _fo_unary(p, props)
    while p.peek().kind == "&":
        p.next()
        out = fo.And(out, _fo_unary(p, props))
    return out


def _fo_unary(p: _Parser, props: PropSet) -> fo.FoFormula:
    tok = p.peek()
    if tok.kind == "~":
        p.next()
        return fo.Not(_fo_unary(p, props))
    if tok.kind == "(":
        p.next()
        out = _parse_fo(p, props)
        p.expect(")")
        return out
    if tok.kind == "ident":
        if tok.text == "true":
            p.next()
            return fo.FTrue()
        if tok.text == "false":
            p.next()
            return fo.FFalse()
        if tok.text == "letter":
            p.next()
            p.expect("(")
            v = _parse_valuation(p, props)
            p.expect(",")
            var = p.expect("ident").text
            p.expect(")")
            return fo.Letter(v, var)
        if _at_quantifier(p):
            return _parse_fo(p, props)
        p.next()
        p.expect("<")
        right = p.expect("ident").text
        return fo.Less(tok.text, right)
    raise ParseError(f"expected a first-order formula, found {tok.text or 'end of input'!r}", tok.span)


def parse_fo(text: str, props: PropSet) -> fo.FoFormula:
    p = _Parser(text)
    out = _parse_fo(p, props)
    p.require_end()
    return out


# ---------------------------------------------------------------------------
# expressions


def _parse_sere(p: _Parser, props: PropSet) -> sere.Sere:
    out = _sere_inter(p, props)
    while p.peek().kind == "|":
        p.next()
        out = sere.SUnion(out, _sere_inter(p, props))
    return out


def _sere_inter(p: _Parser, props: PropSet) -> sere.Sere:
    out = _sere_concat(p, props)
    while p.peek().kind == "&":
        p.next()
        out = sere.SInter(out, _sere_concat(p, props))
    return out


def _sere_concat(p: _Parser, props: PropSet) -> sere.Sere:
    out = _sere_unary(p, props)
    while p.peek().kind == ".":
        p.next()
        out = sere.SConcat(out, _sere_unary(p, props))
    return out


def _sere_unary(p: _Parser, props: PropSet) -> sere.Sere:
    tok = p.peek()
    if tok.kind == "!":
        p.next()
        return sere.SCompl(_sere_unary(p, props))
    if tok.kind == "(":
        p.next()
        out = _parse_sere(p, props)
        p.expect(")")
        return out
    if tok.kind == "nat" and tok.text == "0":
        p.next()
        return sere.SEmpty()
    if tok.kind == "ident" and tok.text == "eps":
        p.next()
        return sere.SEps()
    if tok.kind == "{":
        return sere.SLetter(_parse_valuation(p, props))
    raise ParseError(f"expected an expression, found {tok.text or 'end of input'!r}", tok.span)


def parse_sere(text: str, props: PropSet) -> sere.Sere:
    p = _Parser(text)
    out = _parse_sere(p, props)
    p.require_end()
    return out


# ---------------------------------------------------------------------------
# proposition inference
#
# The tree, formula and expression formats carry no header, so a consumer
# that only has the source text needs somewhere to get the PropSet from.
# These helpers scan the token stream; an explicit PropSet always wins over
# inference (a proposition spelled like a keyword can only be declared).

_ADT_KEYWORDS = frozenset(
    ["EPS", "TOP", "ETRUE", "C", "CAP", "STRICT", "GE", "LE", "EQ", "true", "false"]
) | frozenset(_NARY) | _UNARY_SUGAR


def infer_adt_props(text: str) -> PropSet:
    """Collect the proposition names of a tree source: every identifier
    that is not a constructor keyword."""
    names = {t.text for t in _lex(text) if t.kind == "ident"} - _ADT_KEYWORDS
    return PropSet(tuple(sorted(names)))


def infer_letter_props(text: str) -> PropSet:
    """Collect the proposition names of a formula or expression source.
    There they occur only inside {...} letters, which keeps variable
    names out of the picture."""
    names: set[str] = set()
    depth = 0
    for t in _lex(text):
        if t.kind == "{":
            depth += 1
        elif t.kind == "}":
            depth = 0
        elif depth and t.kind == "ident":
            names.add(t.text)
    return PropSet(tuple(sorted(names)))


# ---------------------------------------------------------------------------
# rendering


def render(obj) -> str:
    """Canonical text for any AST or trace in the system."""
    if isinstance(obj, Adt):
        return render_adt(obj)
    if isinstance(obj, Formula):
        return render_formula(obj)
    if isinstance(obj, Trace):
        return render_trace(obj)
    if isinstance(obj, Valuation):
        return render_valuation(obj)
    if isinstance(obj, fo.FoFormula):
        return render_fo(obj)
    if isinstance(obj, sere.Sere):
        return render_sere(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")


def render_valuation(v: Valuation) -> str:
    return "{%s}" % ",".join(v.members())


def render_trace(t: Trace) -> str:
    """Single-line trace: juxtaposed letters, ``eps`` when empty."""
    if len(t) == 0:
        return "eps"
    return "".join(render_valuation(v) for v in t)


def render_trace_file(props: PropSet, traces: list[Trace]) -> str:
    """The trace file format: header, then each trace as one letter per
    line ended by a blank line."""
    out = ["props: " + ",".join(props.names)]
    for t in traces:
        out.extend(render_valuation(v) for v in t)
        out.append("")
    return "\n".join(out) + "\n"


def render_adt(t: Adt) -> str:
    """Structural tree DSL (sugar-free)."""
    memo: dict[int, str] = {}

    def go(node: Adt) -> str:
        got = memo.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Eps):
            out = "EPS"
        elif isinstance(node, Leaf):
            out = f"[{render_formula(node.formula)}]"
        elif isinstance(node, OrN):
            out = "OR(%s)" % ", ".join(go(c) for c in node.children)
        elif isinstance(node, SandN):
            out = "SAND(%s)" % ", ".join(go(c) for c in node.children)
        elif isinstance(node, AndN):
            out = "AND(%s)" % ", ".join(go(c) for c in node.children)
        elif isinstance(node, Counter):
            out = f"C({go(node.attack)}, {go(node.defense)})"
        else:
            raise TypeError(f"not a tree node: {node!r}")
        memo[id(node)] = out
        return out

    return go(t)


_F_OR, _F_AND, _F_NOT, _F_ATOM = 0, 1, 2, 3


def _formula_level(f: Formula) -> int:
    if isinstance(f, core.Or):
        return _F_OR
    if isinstance(f, core.And):
        return _F_AND
    if isinstance(f, core.Not):
        return _F_NOT
    return _F_ATOM


def render_formula(f: Formula) -> str:
    def go(node: Formula, level: int) -> str:
        mine = _formula_level(node)
        if isinstance(node, core.Top):
            text = "true"
        elif isinstance(node, core.Bottom):
            text = "false"
        elif isinstance(node, core.Var):
            text = node.name
        elif isinstance(node, core.Not):
            text = "!" + go(node.arg, _F_NOT)
        elif isinstance(node, core.And):
            text = go(node.left, _F_AND) + " & " + go(node.right, _F_AND + 1)
        elif isinstance(node, core.Or):
            text = go(node.left, _F_OR) + " | " + go(node.right, _F_OR + 1)
        else:
            raise TypeError(f"not a formula: {node!r}")
        if mine < level:
            return "(" + text + ")"
        return text

    return go(f, _F_OR)


def render_fo(phi: fo.FoFormula) -> str:
    # precedence: atoms > ~ > & > | > quantifiers (a quantifier body runs
    # as far right as it can, so quantifiers under a connective get parens)
    def go(node: fo.FoFormula, level: int) -> str:
        if isinstance(node, (fo.Exists, fo.Forall)):
            head = "E" if isinstance(node, fo.Exists) else "A"
            text = f"{head} {node.var}. ({go(node.body, 0)})"
            return "(" + text + ")" if level > 0 else text
        if isinstance(node, fo.FTrue):
            return "true"
        if isinstance(node, fo.FFalse):
            return "false"
        if isinstance(node, fo.Less):
            return f"{node.left} < {node.right}"
        if isinstance(node, fo.Letter):
            return f"letter({render_valuation(node.val)}, {node.var})"
        if isinstance(node, fo.Not):
            return "~" + go(node.arg, 3)
        if isinstance(node, fo.And):
            text = go(node.left, 2) + " & " + go(node.right, 3)
            return "(" + text + ")" if level > 2 else text
        if isinstance(node, fo.Or):
            text = go(node.left, 1) + " | " + go(node.right, 2)
            return "(" + text + ")" if level > 1 else text
        raise TypeError(f"not a first-order formula: {node!r}")

    return go(phi, 0)


def render_sere(e: sere.Sere) -> str:
    # precedence: ! > . > & > |
    def go(node: sere.Sere, level: int) -> str:
        if isinstance(node, sere.SEmpty):
            return "0"
        if isinstance(node, sere.SEps):
            return "eps"
        if isinstance(node, sere.SLetter):
            return render_valuation(node.val)
        if isinstance(node, sere.SCompl):
            return "!" + go(node.arg, 3)
        if isinstance(node, sere.SConcat):
            text = go(node.left, 2) + " . " + go(node.right, 3)
            return "(" + text + ")" if level > 2 else text
        if isinstance(node, sere.SInter):
            text = go(node.left, 1) + " & " + go(node.right, 2)
            return "(" + text + ")" if level > 1 else text
        if isinstance(node, sere.SUnion):
            text = go(node.left, 0) + " | " + go(node.right, 1)
            return "(" + text + ")" if level > 0 else text
        raise TypeError(f"not an expression: {node!r}")

    return go(e, 0)
