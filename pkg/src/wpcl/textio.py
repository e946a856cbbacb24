"""Concrete syntax: parser and printer for formulas, configurations and normal forms.

Spellings::

    PIL     !p   p . q   p | q   true   false   m: p . !q
    PCL     neg f   f + g   f ^ g   f U g   f => g   close(f)     (inside [...])
    wPCL    w(3/2)   a (x) b   a (#) b   a (+) b   star(a)   close(a)   fullval(a)

Binding, tightest first: ``!``, ``.``, ``|`` for PIL; ``+``, ``^``, ``U``,
``=>`` for PCL (``=>`` associates to the right, the rest to the left); and
``(x)``, ``(#)``, ``(+)`` for weighted formulas.  Every PIL formula binds
tighter than any PCL operator.

The printer emits the fewest parentheses that parse back to the same tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DomainError, ParseError, UsageError
from .logic import (
    TRUE,
    And,
    Atom,
    Close,
    Coalesce,
    Const,
    FullVal,
    Implies,
    Inter,
    Neg,
    Not,
    Oplus,
    Or,
    Otimes,
    PclClose,
    Pil,
    Star,
    Top,
    Union,
    Uplus,
    RESERVED,
    characteristic_monomial,
    config_key,
    interaction_key,
    is_pcl,
    make_ports,
)
from .pvm import format_value, parse_value


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VALUE_RE = re.compile(r"[+-]?(?:inf|\d+(?:\s*/\s*\d+)?)")


class _Parser:
    def __init__(self, text: str, ports=None):
        self.text = text
        self.pos = 0
        self.ports = tuple(ports) if ports is not None else None

    # -- scanning ---------------------------------------------------------

    def skip(self):
        t = self.text
        n = len(t)
        while self.pos < n:
            c = t[self.pos]
            if c.isspace():
                self.pos += 1
            elif t.startswith("//", self.pos):
                nl = t.find("\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            else:
                break

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def peek_word(self, w: str) -> bool:
        self.skip()
        m = _ID_RE.match(self.text, self.pos)
        return m is not None and m.group() == w

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def accept_word(self, w: str) -> bool:
        if self.peek_word(w):
            self.pos += len(w)
            return True
        return False

    def expect(self, s: str, what=None):
        if not self.accept(s):
            self.fail(f"expected {what or repr(s)}")

    def fail(self, message, start=None, end=None):
        self.skip()
        start = self.pos if start is None else start
        end = min(len(self.text), start + 1) if end is None else end
        found = self.text[self.pos : self.pos + 12] or "end of input"
        if start == self.pos:
            message = f"{message}, found {found!r}"
        raise ParseError(message, SourceSpan(start, max(start, end)), self.text)

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def ident(self, what="port name"):
        self.skip()
        m = _ID_RE.match(self.text, self.pos)
        if m is None:
            self.fail(f"expected {what}")
        name = m.group()
        if name in RESERVED:
            self.fail(f"{name!r} is a keyword, not a {what}", m.start(), m.end())
        self.pos = m.end()
        return name

    def value(self):
        self.skip()
        m = _VALUE_RE.match(self.text, self.pos)
        if m is None:
            self.fail("expected a value (int, a/b, inf or -inf)")
        try:
            v = parse_value(m.group())
        except UsageError as e:
            self.fail(str(e), m.start(), m.end())
        self.pos = m.end()
        return v

    # -- weighted layer ---------------------------------------------------

    def wpcl(self):
        out = self.w1()
        while self.accept("(+)"):
            out = Oplus(out, self.w1())
        return out

    def w1(self):
        out = self.w2()
        while self.accept("(#)"):
            out = Uplus(out, self.w2())
        return out

    def w2(self):
        out = self.w3()
        while self.accept("(x)"):
            out = Otimes(out, self.w3())
        return out

    def w3(self):
        for word, node in (("star", Star), ("close", Close), ("fullval", FullVal)):
            if self.peek_word(word):
                self.accept_word(word)
                self.expect("(")
                inner = self.wpcl()
                self.expect(")")
                return node(inner)
        if self.peek_word("w"):
            self.accept_word("w")
            self.expect("(")
            v = self.value()
            self.expect(")")
            return Const(v)
        if self.accept("["):
            f = self.pcl()
            self.expect("]")
            return f
        if self.peek("(") and not self._weighted_op():
            self.accept("(")
            inner = self.wpcl()
            self.expect(")")
            return inner
        self.fail("expected a weighted formula (w(..), star(..), close(..), fullval(..), [..] or (..))")

    def _weighted_op(self):
        return any(self.peek(op) for op in ("(+)", "(#)", "(x)"))

    # -- PCL layer --------------------------------------------------------

    def pcl(self):
        left = self.p_union()
        if self.accept("=>"):
            return Implies(left, self.pcl())
        return left

    def p_union(self):
        out = self.p_inter()
        while self.accept_word("U"):
            out = Union(out, self.p_inter())
        return out

    def p_inter(self):
        out = self.p_coal()
        while self.accept("^"):
            out = Inter(out, self.p_coal())
        return out

    def p_coal(self):
        out = self.p_unary()
        while self.accept("+"):
            out = Coalesce(out, self.p_unary())
        return out

    def p_unary(self):
        if self.accept_word("neg"):
            return Not(self.p_unary())
        if self.peek_word("close"):
            self.accept_word("close")
            self.expect("(")
            inner = self.pcl()
            self.expect(")")
            return PclClose(inner)
        if self.peek("("):
            start = self.pos
            try:
                return self.pil()
            except ParseError:
                self.pos = start
            self.accept("(")
            inner = self.pcl()
            self.expect(")")
            return inner
        return self.pil()

    # -- PIL layer --------------------------------------------------------

    def pil(self):
        out = self.l1()
        while self.peek("|"):
            self.accept("|")
            out = Or(out, self.l1())
        return out

    def l1(self):
        out = self.l2()
        while self.accept("."):
            out = And(out, self.l2())
        return out

    def l2(self):
        if self.accept("!"):
            return Neg(self.l2())
        if self.accept_word("true"):
            return TRUE
        if self.accept_word("false"):
            return Neg(TRUE)
        if self.accept("("):
            inner = self.pil()
            self.expect(")")
            return inner
        if self._monomial_ahead():
            return self.monomial()
        name, _ = self.literal()
        return Atom(name)

    def _monomial_ahead(self):
        if not self.peek_word("m"):
            return False
        save = self.pos
        self.accept_word("m")
        ok = self.peek(":")
        self.pos = save
        return ok

    def monomial(self):
        # with a known port set, unlisted ports are negated (m_alpha)
        start = self.pos
        self.accept_word("m")
        self.expect(":")
        lits = [self.literal()]
        while self.accept("."):
            lits.append(self.literal())
        if self.ports is None:
            return _fold_and([Atom(p) if pos else Neg(Atom(p)) for p, pos in lits])
        positives = {p for p, pos in lits if pos}
        negatives = {p for p, pos in lits if not pos}
        if positives & negatives:
            self.fail("monomial lists a port both positively and negatively", start, self.pos)
        if not positives:
            self.fail("monomial needs a positive port", start, self.pos)
        return characteristic_monomial(frozenset(positives), self.ports).formula()

    def literal(self):
        positive = not self.accept("!")
        self.skip()
        start = self.pos
        name = self.ident()
        if self.ports is not None and name not in self.ports:
            self.fail(f"unknown port {name!r}", start, self.pos)
        return name, positive

    # -- configurations ---------------------------------------------------

    def configuration(self, ports):
        start = self.pos
        self.expect("{")
        if self.peek("}"):
            self.accept("}")
            self.fail("configuration must be nonempty", start, self.pos)
        alphas = [self.interaction(ports)]
        while self.accept(","):
            alphas.append(self.interaction(ports))
        self.expect("}", "'}' or ','")
        return frozenset(alphas)

    def interaction(self, ports):
        self.skip()
        start = self.pos
        self.expect("{", "'{' opening an interaction")
        if self.peek("}"):
            self.accept("}")
            self.fail("interaction must be nonempty", start, self.pos)
        names = [self._port(ports)]
        while self.accept(","):
            names.append(self._port(ports))
        self.expect("}", "'}' or ','")
        return frozenset(names)

    def _port(self, ports):
        self.skip()
        start = self.pos
        name = self.ident()
        if ports is not None and name not in ports:
            self.fail(f"unknown port {name!r}", start, self.pos)
        return name


def _fold_and(items):
    out = items[0]
    for x in items[1:]:
        out = And(out, x)
    return out


def _parse_all(text, rule, ports=None):
    p = _Parser(text, ports)
    out = rule(p)
    if not p.at_end():
        p.fail("unexpected trailing input")
    return out


def parse_wpcl(text: str, ports=None):
    """Parse a weighted formula; derived operators stay as derived nodes.

    With ``ports``, ``m: p`` is the full monomial of {p} over the port set.
    """
    return _parse_all(text, _Parser.wpcl, ports)


def parse_pcl(text: str, ports=None):
    return _parse_all(text, _Parser.pcl, ports)


def parse_pil(text: str, ports=None):
    return _parse_all(text, _Parser.pil, ports)


def parse_configuration(text: str, ports=None):
    """``{ {p, q}, {r} }``; every port must belong to ``ports`` when given."""
    return _parse_all(text, lambda p: p.configuration(ports))


def parse_file(text: str):
    """``ports p, q; f1; f2; ...`` -> ``(ports, [formulas])``."""
    p = _Parser(text)
    if not p.accept_word("ports"):
        p.fail("expected 'ports' declaration")
    names = [p.ident()]
    while p.accept(","):
        names.append(p.ident())
    p.expect(";")
    try:
        ports = make_ports(names)
    except UsageError as e:
        raise ParseError(str(e)) from None
    p.ports = ports
    formulas = []
    while not p.at_end():
        formulas.append(p.wpcl())
        p.expect(";")
    return ports, formulas


# ---------------------------------------------------------------------------
# printing


def print_pil(f, level=0) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Atom):
        return f.port
    if isinstance(f, Neg):
        if isinstance(f.child, Top):
            return "false"
        return "!" + print_pil(f.child, 3)
    if isinstance(f, Or):
        s, own = f"{print_pil(f.left, 1)} | {print_pil(f.right, 2)}", 1
    elif isinstance(f, And):
        s, own = f"{print_pil(f.left, 2)} . {print_pil(f.right, 3)}", 2
    else:
        raise UsageError(f"not a PIL formula: {f!r}")
    return f"({s})" if level > own else s


_PCL_LEVEL = {Implies: 1, Union: 2, Inter: 3, Coalesce: 4}


def print_pcl(f, level=0) -> str:
    if isinstance(f, Pil):
        return print_pil(f)
    if isinstance(f, Not):
        return "neg " + print_pcl(f.child, 5)
    if isinstance(f, PclClose):
        return f"close({print_pcl(f.child)})"
    own = _PCL_LEVEL.get(type(f))
    if own is None:
        raise UsageError(f"not a PCL formula: {f!r}")
    if isinstance(f, Implies):
        s = f"{print_pcl(f.left, 2)} => {print_pcl(f.right, 1)}"
    else:
        sym = {Union: "U", Inter: "^", Coalesce: "+"}[type(f)]
        s = f"{print_pcl(f.left, own)} {sym} {print_pcl(f.right, own + 1)}"
    return f"({s})" if level > own else s


_W_LEVEL = {Oplus: (1, "(+)"), Uplus: (2, "(#)"), Otimes: (3, "(x)")}


def print_wpcl(z, level=0) -> str:
    if isinstance(z, Const):
        return f"w({format_value(z.value)})"
    if is_pcl(z):
        return f"[{print_pcl(z)}]"
    for node, word in ((Star, "star"), (Close, "close"), (FullVal, "fullval")):
        if isinstance(z, node):
            return f"{word}({print_wpcl(z.child)})"
    if type(z) not in _W_LEVEL:
        raise UsageError(f"not a weighted PCL formula: {z!r}")
    own, sym = _W_LEVEL[type(z)]
    s = f"{print_wpcl(z.left, own)} {sym} {print_wpcl(z.right, own + 1)}"
    return f"({s})" if level > own else s


def print_interaction(alpha) -> str:
    return "{" + ",".join(interaction_key(alpha)) + "}"


def print_configuration(gamma) -> str:
    return "{" + ",".join(print_interaction(a) for a in sorted(gamma, key=interaction_key)) + "}"


def print_fnf(fnf) -> str:
    from .normal_form import Constant

    if isinstance(fnf, Constant):
        return f"CONST {format_value(fnf.value)}"
    if not fnf.terms:
        return "ZERO"
    return "\n".join(f"{format_value(t.value)} @ {print_configuration(t.config)}" for t in fnf.terms)


def parse_fnf(text: str, ports=None):
    from .normal_form import Constant, FnfTerm, Terms

    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if lines == ["ZERO"]:
        return Terms()
    if len(lines) == 1 and lines[0].startswith("CONST "):
        return Constant(parse_value(lines[0][6:]))
    terms = {}
    for ln in lines:
        if "@" not in ln:
            raise ParseError(f"expected 'value @ {{config}}' in line {ln!r}")
        v, c = ln.split("@", 1)
        try:
            value = parse_value(v)
        except UsageError as e:
            raise ParseError(str(e)) from None
        g = parse_configuration(c, ports)
        if g in terms:
            raise DomainError(f"configuration {print_configuration(g)} listed twice")
        terms[g] = value
    items = sorted(terms.items(), key=lambda gv: config_key(gv[0]))
    return Terms(tuple(FnfTerm(v, g) for g, v in items))


def print_table(table) -> str:
    return "\n".join(
        f"{format_value(v)} @ {print_configuration(g)}"
        for g, v in sorted(table.items(), key=lambda gv: config_key(gv[0]))
    )
