"""Text syntax for field elements, extension descriptors, algebra elements and forms.

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' '-'? INT)?
    atom     := INT | VAR | '(' expr ')' | 'ext' '[' expr (',' expr)* ']'

    desc     := 'trivial' | KIND '(' KEY '=' expr ')' ('over' desc)?
    algebra  := 'symbol' '(' 'alpha' '=' expr ',' 'beta' '=' expr ')' ('over' desc)?
    element  := 'elem' '[' row ';' row ';' row ']'      row := expr ',' expr ',' expr
    form     := 'form' '(' expr (';' expr (',' expr)*)? ')'

Variables are single lowercase letters; integers are read mod 3. `ext[...]`
lists the coordinates of an extension element over its immediate base.
Parsing produces a small AST that is evaluated in a target field, so the same
expression text works at every level of a tower. Errors carry 1-based columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactfield import FunctionField, MPoly, RatFunc


class ParseError(ValueError):
    def __init__(self, message: str, column: Optional[int] = None):
        self.message = message
        self.column = column
        super().__init__(f"column {column}: {message}" if column is not None else message)


class DescriptorError(ParseError):
    """Well-formed descriptor whose defining datum fails validation."""


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    column: int


_OPS = set("+-*/^()[],;=")


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], i + 1))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("name", text[i:j], i + 1))
            i = j
        elif ch in _OPS:
            out.append(Token("op", ch, i + 1))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i + 1)
    out.append(Token("end", "", n + 1))
    return out


# AST nodes are tuples tagged by their first entry:
#   ('int', n)  ('var', name, col)  ('neg', x)  ('add'|'sub'|'mul', l, r)
#   ('div', l, r, col)  ('pow', base, k, col)  ('ext', [nodes], col)


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            want = repr(text) if text is not None else kind
            raise ParseError(f"expected {want}, found {self._describe(self.tok)}", self.tok.column)
        return self.advance()

    @staticmethod
    def _describe(t: Token) -> str:
        return "end of input" if t.kind == "end" else repr(t.text)

    def finish(self) -> None:
        if not self.at("end"):
            raise ParseError(f"unexpected {self._describe(self.tok)}", self.tok.column)

    # -- expressions -------------------------------------------------------

    def expr(self):
        node = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.advance().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at("op", "*") or self.at("op", "/"):
            t = self.advance()
            rhs = self.unary()
            node = ("mul", node, rhs) if t.text == "*" else ("div", node, rhs, t.column)
        return node

    def unary(self):
        if self.at("op", "-"):
            self.advance()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("op", "^"):
            caret = self.advance()
            sign = 1
            if self.at("op", "-"):
                self.advance()
                sign = -1
            if not self.at("int"):
                raise ParseError(f"expected integer exponent, found {self._describe(self.tok)}", self.tok.column)
            k = sign * int(self.advance().text)
            return ("pow", base, k, caret.column)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return ("int", int(t.text))
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect("op", ")")
            return node
        if t.kind == "name":
            if t.text == "ext":
                self.advance()
                self.expect("op", "[")
                items = [self.expr()]
                while self.at("op", ","):
                    self.advance()
                    items.append(self.expr())
                self.expect("op", "]")
                return ("ext", items, t.column)
            if len(t.text) == 1 and t.text.islower():
                self.advance()
                return ("var", t.text, t.column)
            raise ParseError(f"unknown name {t.text!r}", t.column)
        raise ParseError(f"expected an operand, found {self._describe(t)}", t.column)

    # -- structured literals -----------------------------------------------

    def keyword_arg(self, key: str):
        self.expect("name", key)
        self.expect("op", "=")
        return self.expr()

    def descriptor(self):
        """('trivial',) or (kind, expr_ast, base_descriptor)."""
        t = self.tok
        if self.at("name", "trivial"):
            self.advance()
            return ("trivial",)
        keys = {"quad": "d", "as": "alpha", "insep": "c"}
        if t.kind != "name" or t.text not in keys:
            raise ParseError(f"expected an extension descriptor, found {self._describe(t)}", t.column)
        self.advance()
        self.expect("op", "(")
        node = self.keyword_arg(keys[t.text])
        self.expect("op", ")")
        base = ("trivial",)
        if self.at("name", "over"):
            self.advance()
            base = self.descriptor()
        return (t.text, node, base, t.column)

    def algebra(self):
        self.expect("name", "symbol")
        self.expect("op", "(")
        alpha = self.keyword_arg("alpha")
        self.expect("op", ",")
        beta = self.keyword_arg("beta")
        self.expect("op", ")")
        over = ("trivial",)
        if self.at("name", "over"):
            self.advance()
            over = self.descriptor()
        return alpha, beta, over

    def element(self):
        self.expect("name", "elem")
        self.expect("op", "[")
        entries = []
        for i in range(3):
            if i:
                self.expect("op", ";")
            for j in range(3):
                if j:
                    self.expect("op", ",")
                entries.append(self.expr())
        self.expect("op", "]")
        return entries

    def form(self):
        self.expect("name", "form")
        self.expect("op", "(")
        a = self.expr()
        bs = []
        if self.at("op", ";"):
            self.advance()
            bs.append(self.expr())
            while self.at("op", ","):
                self.advance()
                bs.append(self.expr())
        self.expect("op", ")")
        return a, bs


# -- evaluation --------------------------------------------------------------


def evaluate(node, field):
    """Value of an expression AST in `field` (a FunctionField or an extension)."""
    tag = node[0]
    if tag == "int":
        return field(node[1])
    if tag == "var":
        name, col = node[1], node[2]
        bottom = field.base_field
        if name not in bottom.vars:
            raise ParseError(f"unknown variable {name!r} (declared: {','.join(bottom.vars)})", col)
        return field(bottom.gen(name))
    if tag == "neg":
        return -evaluate(node[1], field)
    if tag in ("add", "sub", "mul"):
        lhs, rhs = evaluate(node[1], field), evaluate(node[2], field)
        if tag == "add":
            return lhs + rhs
        if tag == "sub":
            return lhs - rhs
        return lhs * rhs
    if tag == "div":
        den = evaluate(node[2], field)
        if den.is_zero():
            raise ParseError("division by zero", node[3])
        return evaluate(node[1], field) / den
    if tag == "pow":
        base = evaluate(node[1], field)
        if node[2] < 0 and base.is_zero():
            raise ParseError("negative power of zero", node[3])
        return base ** node[2]
    if tag == "ext":
        items, col = node[1], node[2]
        if field.degree == 1:
            raise ParseError("ext[...] literal in a field that is not an extension", col)
        if len(items) != field.degree:
            raise ParseError(f"extension of degree {field.degree} needs {field.degree} coordinates, got {len(items)}", col)
        return field.element([evaluate(item, field.base) for item in items])
    raise AssertionError(f"unknown AST node {tag}")


def build_descriptor(node, bottom: FunctionField):
    from .towers import ArtinSchreier, Inseparable, Quadratic

    if node[0] == "trivial":
        return bottom
    kind, expr, base_node, col = node
    base = build_descriptor(base_node, bottom)
    value = evaluate(expr, base)
    ctor = {"quad": Quadratic, "as": ArtinSchreier, "insep": Inseparable}[kind]
    try:
        return ctor(base, value)
    except (ValueError, NotImplementedError) as exc:
        raise DescriptorError(f"invalid descriptor: {exc}", col) from exc


def _run(text: str, method: str):
    p = Parser(text)
    out = getattr(p, method)()
    p.finish()
    return out


def parse_expr(text: str):
    return _run(text, "expr")


def parse_in(text: str, field):
    """Parse an expression and evaluate it in `field`."""
    return evaluate(parse_expr(text), field)


def parse_ratfunc(text: str, vars) -> RatFunc:
    return parse_in(text, FunctionField(vars))


def parse_poly(text: str, vars) -> MPoly:
    f = parse_ratfunc(text, vars)
    if not f.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return f.num


def parse_descriptor(text: str, bottom: FunctionField):
    return build_descriptor(_run(text, "descriptor"), bottom)


def parse_algebra(text: str, bottom: FunctionField):
    from .symbolalg import SymbolAlgebra

    alpha, beta, over = _run(text, "algebra")
    center = build_descriptor(over, bottom)
    b = evaluate(beta, center)
    if b.is_zero():
        raise ParseError("beta must be nonzero")
    return SymbolAlgebra(center, evaluate(alpha, center), b)


def parse_alg_element(text: str, algebra):
    entries = _run(text, "element")
    return algebra.element([evaluate(e, algebra.center) for e in entries])


def parse_form(text: str, field):
    from .katomilne import SymbolForm

    a, bs = _run(text, "form")
    values = [evaluate(b, field) for b in bs]
    for node, v in zip(bs, values):
        if v.is_zero():
            raise ParseError("dlog of zero in a symbol form")
    return SymbolForm(evaluate(a, field), tuple(values))


def parse_element(text: str, context):
    """Parse `text` in a field, an extension or a symbol algebra."""
    from .symbolalg import SymbolAlgebra

    if isinstance(context, SymbolAlgebra):
        stripped = text.lstrip()
        if stripped.startswith("elem"):
            return parse_alg_element(text, context)
        return context.scalar(parse_in(text, context.center))
    return parse_in(text, context)
