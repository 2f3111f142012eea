"""A small text format for operators.

Example::

    # two nested summands around 1/2
    uninorm ordinal {
      e = 0.5
      summand { a = 0 b = 0.25 c = 0.75 d = 1
                op = uninorm representable { gen = paper_example; mode = disjunctive } }
      summand { a = 0.25 b = 0.5 c = 0.5 d = 0.75
                op = uninorm representable { gen = paper_example; mode = disjunctive } }
    }

Fields are separated by whitespace or ``;`` and ``#`` starts a comment.
The ``paper_example`` generator is ln(2x) on [0, 1/2] and -ln(2 - 2x) on
[1/2, 1].  ``print_op`` emits a canonical form that parses back to an equal
operator.
"""

import re
from dataclasses import dataclass, field

from . import generators as G
from .operators import (ConstructionError, GeneratedTConorm, GeneratedTNorm, Internal, Maximum, Minimum, Mode,
                        OrdinalSumC, OrdinalSumT, Representable, Rescaled, SInternal, UMaxComposite,
                        UMinComposite, internal, ordinal_sum_tconorm, ordinal_sum_tnorm, representable_uninorm,
                        s_internal, tconorm_from_generator, tnorm_from_generator)
from .ordinal import OrdinalSumUninorm, OrdinalSumUninormSpec, SummandSpec, validate_spec
from .scaling import ScaleMap


@dataclass(frozen=True)
class Span:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


class DSLError(ValueError):
    def __init__(self, message, span=None):
        self.span = span
        self.bare = message
        super().__init__(f"{span}: {message}" if span else message)


class DSLSyntaxError(DSLError):
    def __init__(self, message, span=None, expected=()):
        self.expected = tuple(expected)
        if expected:
            message = f"{message}; expected {' or '.join(expected)}"
        super().__init__(f"syntax error: {message}", span)


class DSLSemanticError(DSLError):
    def __init__(self, message, span=None, related=()):
        self.related = tuple(related)
        if related:
            message = f"{message} (see {', '.join(str(s) for s in related)})"
        super().__init__(f"semantic error: {message}", span)


# --- tokens -------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>-?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[{}()\[\],=;])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span


def tokenize(text):
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = Span(line, pos - line_start + 1)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "punct":
            out.append(Token(m.group(), m.group(), span))
        elif kind in ("num", "name"):
            out.append(Token(kind, m.group(), span))
        pos = m.end()
    out.append(Token("eof", "", Span(line, pos - line_start + 1)))
    return out


# --- syntax tree --------------------------------------------------------

@dataclass
class Num:
    value: float
    span: Span


@dataclass
class Name:
    text: str
    span: Span
    args: list = None


@dataclass
class Seq:
    items: list
    span: Span


@dataclass
class Item:
    name: str
    value: object
    span: Span


@dataclass
class Block:
    category: str
    kind: str
    span: Span
    items: list = field(default_factory=list)


CATEGORIES = ("uninorm", "tnorm", "tconorm")


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def _describe(self, tok):
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def fail(self, *expected):
        raise DSLSyntaxError(f"unexpected {self._describe(self.tok)}", self.tok.span, expected)

    def take(self, kind, *expected):
        if self.tok.kind != kind:
            self.fail(*(expected or (repr(kind),)))
        t = self.tok
        self.i += 1
        return t

    def document(self):
        block = self.op_def()
        if self.tok.kind != "eof":
            self.fail("end of input")
        return block

    def op_def(self):
        t = self.tok
        if t.kind != "name" or t.text not in CATEGORIES:
            self.fail("'uninorm'", "'tnorm'", "'tconorm'")
        self.i += 1
        kind = self.take("name", "an operator kind").text
        self.take("{", "'{'")
        block = Block(t.text, kind, t.span, self.items("}"))
        self.take("}", "'}'")
        return block

    def items(self, closer):
        out = []
        while True:
            while self.tok.kind == ";":
                self.i += 1
            t = self.tok
            if t.kind == closer:
                return out
            if t.kind != "name":
                self.fail("a field name", repr(closer))
            self.i += 1
            if t.text == "summand":
                self.take("{", "'{'")
                body = self.items("}")
                self.take("}", "'}'")
                out.append(Item("summand", body, t.span))
            elif t.text == "corner":
                body = []
                for _ in range(2):
                    n = self.take("name", "'b'", "'value'")
                    self.take("=", "'='")
                    body.append(Item(n.text, self.value(), n.span))
                out.append(Item("corner", body, t.span))
            else:
                self.take("=", "'='")
                out.append(Item(t.text, self.value(), t.span))

    def value(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(float(t.text), t.span)
        if t.kind == "name" and t.text in CATEGORIES:
            return self.op_def()
        if t.kind == "name":
            self.i += 1
            if self.tok.kind == "(":
                return Name(t.text, t.span, self.sequence("(", ")").items)
            return Name(t.text, t.span)
        if t.kind == "[":
            return self.sequence("[", "]")
        if t.kind == "(":
            return self.sequence("(", ")")
        self.fail("a number", "a name", "'['", "an operator")

    def sequence(self, opener, closer):
        start = self.take(opener, repr(opener))
        items = []
        if self.tok.kind != closer:
            items.append(self.value())
            while self.tok.kind == ",":
                self.i += 1
                items.append(self.value())
        self.take(closer, "','", repr(closer))
        return Seq(items, start.span)


# --- semantic checks and construction -----------------------------------

_GENS = {g.family.value: g for g in G.CATALOG}


class _Fields:
    """Field lookup for one block, with spans for error messages."""

    def __init__(self, block, allowed):
        self.block = block
        self.map = {}
        for it in block.items:
            if it.name in ("summand", "corner"):
                if it.name not in allowed:
                    raise DSLSemanticError(f"'{it.name}' is not allowed in {self.what}", it.span)
                continue
            if it.name not in allowed:
                raise DSLSemanticError(f"unknown field '{it.name}' in {self.what}; allowed: {', '.join(allowed)}",
                                       it.span)
            if it.name in self.map:
                raise DSLSemanticError(f"field '{it.name}' given twice", it.span)
            self.map[it.name] = it

    @property
    def what(self):
        return f"{self.block.category} {self.block.kind}"

    def item(self, name, required=True):
        if name not in self.map:
            if required:
                raise DSLSemanticError(f"missing field '{name}' in {self.what}", self.block.span)
            return None
        return self.map[name]

    def number(self, name, required=True):
        it = self.item(name, required)
        if it is None:
            return None
        return _number(it.value, name)

    def name(self, name, required=True):
        it = self.item(name, required)
        if it is None:
            return None
        if not isinstance(it.value, Name) or it.value.args is not None:
            raise DSLSemanticError(f"field '{name}' needs a name", it.span)
        return it.value


def _number(value, what):
    if not isinstance(value, Num):
        raise DSLSemanticError(f"'{what}' needs a number", getattr(value, "span", None))
    return value.value


def _generator(value):
    if not isinstance(value, Name):
        raise DSLSemanticError("expected a generator name", getattr(value, "span", None))
    if value.text == "knot":
        if value.args is None or len(value.args) != 3:
            raise DSLSemanticError("knot takes (knot_x, knot_y, base)", value.span)
        kx = _number(value.args[0], "knot_x")
        ky = _number(value.args[1], "knot_y")
        try:
            return G.knot(kx, ky, _generator(value.args[2]))
        except ValueError as exc:
            raise DSLSemanticError(str(exc), value.span) from None
    if value.args is not None:
        raise DSLSemanticError(f"generator '{value.text}' takes no arguments", value.span)
    if value.text not in _GENS:
        raise DSLSemanticError(f"unknown generator '{value.text}'; known: {', '.join(sorted(_GENS))}, knot(...)",
                               value.span)
    return _GENS[value.text]


def _operator_field(fields, name, category=None):
    it = fields.item(name)
    if not isinstance(it.value, Block):
        raise DSLSemanticError(f"field '{name}' needs an operator definition", it.span)
    if category and it.value.category != category:
        raise DSLSemanticError(f"field '{name}' needs a {category}, got a {it.value.category}", it.value.span)
    return _build(it.value)


def _curve(fields):
    it = fields.item("curve")
    if not isinstance(it.value, Seq):
        raise DSLSemanticError("curve needs a list of points", it.span)
    pts = []
    for p in it.value.items:
        if not isinstance(p, Seq) or len(p.items) not in (2, 3):
            raise DSLSemanticError("curve points are (x, y) or (x, y_low, y_high)", getattr(p, "span", it.span))
        pts.append(tuple(_number(v, "curve coordinate") for v in p.items))
    return pts, it.span


def _wrap(fn, span):
    try:
        return fn()
    except (ValueError, ConstructionError) as exc:
        if isinstance(exc, DSLError):
            raise
        raise DSLSemanticError(str(exc), span) from None


def _build_uninorm(block):
    kind = block.kind
    if kind == "representable":
        f = _Fields(block, ("gen", "mode"))
        gen = _generator(f.item("gen").value)
        mode = f.name("mode", required=False)
        m = Mode.CONJUNCTIVE
        if mode is not None:
            if mode.text not in ("conjunctive", "disjunctive"):
                raise DSLSemanticError("mode is 'conjunctive' or 'disjunctive'", mode.span)
            m = Mode(mode.text)
        return _wrap(lambda: representable_uninorm(gen, m), f.item("gen").span)
    if kind == "ordinal":
        return _build_ordinal(block)
    if kind in ("umin", "umax"):
        f = _Fields(block, ("e", "tnorm", "tconorm"))
        e = f.number("e")
        t = _operator_field(f, "tnorm", "tnorm")
        c = _operator_field(f, "tconorm", "tconorm")
        cls = UMinComposite if kind == "umin" else UMaxComposite
        return _wrap(lambda: cls(t, c, e), block.span)
    if kind in ("sinternal", "internal"):
        f = _Fields(block, ("curve",))
        pts, span = _curve(f)
        if kind == "sinternal" and any(len(p) == 3 and p[1] != p[2] for p in pts):
            raise DSLSemanticError("an s-internal curve cannot have vertical segments", span)
        build = s_internal if kind == "sinternal" else internal
        return _wrap(lambda: build(pts), span)
    if kind == "rescaled":
        names = ("c", "a", "b", "d", "v", "e")
        f = _Fields(block, names + ("op",))
        vals = [f.number(n) for n in names]
        op = _operator_field(f, "op")
        return _wrap(lambda: Rescaled(op, ScaleMap(*vals)), block.span)
    raise DSLSemanticError(f"unknown uninorm kind '{kind}'; known: representable, ordinal, umin, umax, "
                           f"sinternal, internal, rescaled", block.span)


def _build_ordinal(block):
    f = _Fields(block, ("e", "summand", "corner"))
    e = f.number("e")
    summands, spans, corners = [], [], []
    for it in block.items:
        if it.name == "summand":
            sb = Block("summand", "", it.span, it.value)
            sf = _Fields(sb, ("a", "b", "c", "d", "v", "op"))
            op = _operator_field(sf, "op")
            summands.append(SummandSpec(sf.number("a"), sf.number("b"), sf.number("c"), sf.number("d"), op,
                                        sf.number("v", required=False)))
            spans.append(it.span)
        elif it.name == "corner":
            vals = {c.name: _number(c.value, c.name) for c in it.value}
            if set(vals) != {"b", "value"}:
                raise DSLSemanticError("corner needs b=... value=...", it.span)
            corners.append((vals["b"], vals["value"]))
    spec = OrdinalSumUninormSpec(e, tuple(summands), tuple(corners))
    report = validate_spec(spec)
    if not report.ok:
        # pairwise violations point at two summands, so they locate best
        vs = sorted(report.violations, key=lambda v: -len(v.summands))
        related = [spans[k] for k in vs[0].summands]
        message = "; ".join(str(v) for v in vs)
        raise DSLSemanticError(message, related[0] if related else block.span, related[1:])
    return OrdinalSumUninorm(spec)


def _build_tnorm_like(block, tnorm):
    cat = "tnorm" if tnorm else "tconorm"
    kind = block.kind
    if kind == "generated":
        f = _Fields(block, ("gen",))
        gen = _generator(f.item("gen").value)
        build = tnorm_from_generator if tnorm else tconorm_from_generator
        return _wrap(lambda: build(gen), f.item("gen").span)
    if kind == ("min" if tnorm else "max"):
        _Fields(block, ())
        return Minimum() if tnorm else Maximum()
    if kind == "ordinal":
        lo, hi = ("a", "b") if tnorm else ("c", "d")
        _Fields(block, ("summand",))
        parts = []
        for it in block.items:
            sf = _Fields(Block("summand", "", it.span, it.value), (lo, hi, "op"))
            op = _operator_field(sf, "op", cat)
            parts.append((sf.number(lo), sf.number(hi), op))
        build = ordinal_sum_tnorm if tnorm else ordinal_sum_tconorm
        return _wrap(lambda: build(parts), block.span)
    known = "generated, min, ordinal" if tnorm else "generated, max, ordinal"
    raise DSLSemanticError(f"unknown {cat} kind '{kind}'; known: {known}", block.span)


def _build(block):
    if block.category == "uninorm":
        return _build_uninorm(block)
    return _build_tnorm_like(block, block.category == "tnorm")


@dataclass(frozen=True)
class OperatorDocument:
    source: str
    op: object
    tree: Block = field(repr=False, compare=False)

    def spans(self):
        """Source positions of every block and field, depth first."""
        out = []

        def walk(node, path):
            if isinstance(node, Block):
                out.append((path or node.category, node.span))
                for it in node.items:
                    walk(it, f"{path}.{it.name}" if path else it.name)
            elif isinstance(node, Item):
                out.append((path, node.span))
                if isinstance(node.value, Block):
                    walk(node.value, path)
                elif isinstance(node.value, list):
                    for sub in node.value:
                        walk(sub, f"{path}.{sub.name}")

        walk(self.tree, "")
        return out


def parse_spec(text):
    tree = _Parser(tokenize(text)).document()
    return OperatorDocument(text, _build(tree), tree)


def parse_operator(text):
    return parse_spec(text).op


# --- canonical printing -------------------------------------------------

def _num(x):
    return repr(float(x))


def _lines(op):
    """Canonical lines of ``op`` without indentation handling."""
    if isinstance(op, Representable):
        return ["uninorm representable {", f"  gen = {op.gen.label()}", f"  mode = {op.mode.value}", "}"]
    if isinstance(op, OrdinalSumUninorm):
        out = ["uninorm ordinal {", f"  e = {_num(op.spec.e)}"]
        for s in op.spec.summands:
            out.append("  summand {")
            for name in "abcd":
                out.append(f"    {name} = {_num(getattr(s, name))}")
            if s.v_override is not None:
                out.append(f"    v = {_num(s.v_override)}")
            out += _field("op", s.op, "    ")
            out.append("  }")
        for b, value in op.spec.boundary_values:
            out.append(f"  corner b = {_num(b)} value = {_num(value)}")
        return out + ["}"]
    if isinstance(op, (UMinComposite, UMaxComposite)):
        kind = "umin" if isinstance(op, UMinComposite) else "umax"
        return ([f"uninorm {kind} {{", f"  e = {_num(op.e)}"] + _field("tnorm", op.tnorm, "  ")
                + _field("tconorm", op.tconorm, "  ") + ["}"])
    if isinstance(op, (SInternal, Internal)):
        kind = "sinternal" if isinstance(op, SInternal) else "internal"
        pts = []
        for x, lo, hi in op.boundary.points:
            vals = (x, lo) if lo == hi else (x, lo, hi)
            pts.append("(" + ", ".join(_num(v) for v in vals) + ")")
        return [f"uninorm {kind} {{", f"  curve = [{', '.join(pts)}]", "}"]
    if isinstance(op, Rescaled):
        f = op.scale
        out = ["uninorm rescaled {"] + [f"  {n} = {_num(getattr(f, n))}" for n in ("c", "a", "b", "d", "v", "e")]
        return out + _field("op", op.base, "  ") + ["}"]
    if isinstance(op, (GeneratedTNorm, GeneratedTConorm)):
        cat = "tnorm" if isinstance(op, GeneratedTNorm) else "tconorm"
        return [f"{cat} generated {{", f"  gen = {op.gen.label()}", "}"]
    if isinstance(op, Minimum):
        return ["tnorm min {", "}"]
    if isinstance(op, Maximum):
        return ["tconorm max {", "}"]
    if isinstance(op, (OrdinalSumT, OrdinalSumC)):
        cat, lo, hi = ("tnorm", "a", "b") if isinstance(op, OrdinalSumT) else ("tconorm", "c", "d")
        out = [f"{cat} ordinal {{"]
        for x, y, sub in op.summands:
            out += ["  summand {", f"    {lo} = {_num(x)}", f"    {hi} = {_num(y)}"]
            out += _field("op", sub, "    ") + ["  }"]
        return out + ["}"]
    raise TypeError(f"no text form for {type(op).__name__}")


def _field(name, op, indent):
    sub = _lines(op)
    return [f"{indent}{name} = {sub[0]}"] + [indent + line for line in sub[1:]]


def print_op(op):
    return "\n".join(_lines(op)) + "\n"
