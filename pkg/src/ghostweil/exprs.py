"""Surface syntax for states: parser, printer, evaluator, serializers.

The grammar is prefix-functional:

    expr     := ['-'] term (('+'|'-') term)*
    term     := rational? atom
    atom     := 'b' | 'c' | 'beta' | 'gamma' ('[' int ']')?
              | 'D' '(' int ',' expr ')'
              | 'W' '(' expr (',' expr)+ ')'
              | 'C' '(' int ',' expr ',' expr ')'
              | 'LS' '(' rational ')' | 'LE' '(' rational ')'
              | 'J' | 'x' | 'y' | '1'
              | '(' expr ')'
    rational := int ('/' posint)?

D is the iterated formal derivative, W the right-nested Wick product and C
the circle product of the given order.  Any state serializes back into
this grammar (each monomial factors as a Wick word of derivative atoms,
up to the factorials the derivative carries), so printing and parsing
round-trip through exact evaluation.
"""

from dataclasses import dataclass
from fractions import Fraction

from .fock import KIND_BY_NAME, KIND_NAMES, State, monomial_key
from .engine import circle, derive_pow, iterated_wick
from .ghosts import generator, virasoro_E, virasoro_S
from .weil import brst_context, class_x, class_y


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Gen:
    kind: str
    flavor: int = 0


@dataclass(frozen=True)
class Lit1:
    pass


@dataclass(frozen=True)
class Deriv:
    k: int
    arg: object


@dataclass(frozen=True)
class WickN:
    args: tuple


@dataclass(frozen=True)
class CircleN:
    n: int
    a: object
    b: object


@dataclass(frozen=True)
class Stress:
    family: str  # "LS" or "LE"
    lam: Fraction


@dataclass(frozen=True)
class Current:
    pass


@dataclass(frozen=True)
class ClassAtom:
    name: str  # "x" or "y"


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    atom: object


@dataclass(frozen=True)
class Sum:
    terms: tuple


_SYMBOLS = set("+-()[],/")


def _tokenize(text):
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _SYMBOLS:
            toks.append((ch, ch, line, col))
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            toks.append(("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    toks.append(("EOF", "", line, col))
    return toks


_ATOM_STARTS = {"NAME", "INT", "("}


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            self.fail("expected %r, found %r" % (kind, t[1] or "end of input"), t)
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "EOF":
            self.fail("trailing input %r" % t[1], t)
        return e

    def expr(self):
        terms = []
        sign = 1
        if self.peek()[0] == "-":
            self.next()
            sign = -1
        terms.append(self.term(sign))
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            terms.append(self.term(-1 if op == "-" else 1))
        return Sum(tuple(terms))

    def term(self, sign):
        coeff = Fraction(1)
        t = self.peek()
        if t[0] == "INT":
            nxt = self.toks[self.pos + 1]
            # an integer is a coefficient when something follows it;
            # the bare token "1" is the vacuum atom
            if nxt[0] == "/" or nxt[0] in _ATOM_STARTS:
                coeff = self.rational()
            elif t[1] == "1":
                self.next()
                return Term(Fraction(sign), Lit1())
            else:
                self.fail("a bare number is not a state; write %s 1" % t[1], t)
        atom = self.atom()
        return Term(sign * coeff, atom)

    def rational(self):
        neg = False
        if self.peek()[0] == "-":
            self.next()
            neg = True
        t = self.expect("INT")
        num = int(t[1])
        den = 1
        if self.peek()[0] == "/":
            self.next()
            t2 = self.expect("INT")
            den = int(t2[1])
            if den == 0:
                self.fail("zero denominator", t2)
        return Fraction(-num if neg else num, den)

    def integer(self):
        neg = False
        if self.peek()[0] == "-":
            self.next()
            neg = True
        t = self.expect("INT")
        return -int(t[1]) if neg else int(t[1])

    def atom(self):
        t = self.next()
        if t[0] == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if t[0] == "INT":
            if t[1] == "1":
                return Lit1()
            self.fail("a bare number is not a state; write %s 1" % t[1], t)
        if t[0] != "NAME":
            self.fail("expected a field expression, found %r" % (t[1] or "end of input"), t)
        name = t[1]
        if name in KIND_BY_NAME:
            flavor = 0
            if self.peek()[0] == "[":
                self.next()
                flavor = self.integer()
                self.expect("]")
            return Gen(name, flavor)
        if name == "D":
            self.expect("(")
            k = self.integer()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            if k < 0:
                self.fail("derivative order must be >= 0", t)
            return Deriv(k, arg)
        if name == "W":
            self.expect("(")
            args = [self.expr()]
            self.expect(",")
            args.append(self.expr())
            while self.peek()[0] == ",":
                self.next()
                args.append(self.expr())
            self.expect(")")
            return WickN(tuple(args))
        if name == "C":
            self.expect("(")
            n = self.integer()
            self.expect(",")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return CircleN(n, a, b)
        if name in ("LS", "LE"):
            self.expect("(")
            lam = self.rational()
            self.expect(")")
            return Stress(name, lam)
        if name == "J":
            return Current()
        if name in ("x", "y"):
            return ClassAtom(name)
        self.fail("unknown name %r" % name, t)


def parse(text):
    return _Parser(text).parse()


def print_expr(e):
    if isinstance(e, Sum):
        bits = []
        for idx, term in enumerate(e.terms):
            co = term.coeff
            body = _print_atom(term.atom)
            mag = -co if co < 0 else co
            if mag == 1:
                txt = body
            else:
                txt = "%s %s" % (mag, body)
            if idx == 0:
                bits.append(("-" + txt) if co < 0 else txt)
            else:
                bits.append(("- " if co < 0 else "+ ") + txt)
        return " ".join(bits)
    return _print_atom(e)


def _print_atom(a):
    if isinstance(a, Sum):
        return "(" + print_expr(a) + ")"
    if isinstance(a, Gen):
        return a.kind + ("[%d]" % a.flavor if a.flavor else "")
    if isinstance(a, Lit1):
        return "1"
    if isinstance(a, Deriv):
        return "D(%d, %s)" % (a.k, print_expr(a.arg))
    if isinstance(a, WickN):
        return "W(" + ", ".join(print_expr(x) for x in a.args) + ")"
    if isinstance(a, CircleN):
        return "C(%d, %s, %s)" % (a.n, print_expr(a.a), print_expr(a.b))
    if isinstance(a, Stress):
        return "%s(%s)" % (a.family, a.lam)
    if isinstance(a, Current):
        return "J"
    if isinstance(a, ClassAtom):
        return a.name
    raise TypeError("not an expression node: %r" % (a,))


_CTX_CACHE = {}


def eval_expr(e, scheme):
    """Evaluate an expression to a state under the given grading scheme."""
    if isinstance(e, Sum):
        out = State()
        for term in e.terms:
            out = out + term.coeff * eval_expr(term.atom, scheme)
        return out
    if isinstance(e, Gen):
        return generator(KIND_BY_NAME[e.kind], e.flavor, d=scheme.d)
    if isinstance(e, Lit1):
        return State({(): Fraction(1)})
    if isinstance(e, Deriv):
        return derive_pow(eval_expr(e.arg, scheme), e.k)
    if isinstance(e, WickN):
        return iterated_wick([eval_expr(x, scheme) for x in e.args])
    if isinstance(e, CircleN):
        return circle(eval_expr(e.a, scheme), e.n, eval_expr(e.b, scheme))
    if isinstance(e, Stress):
        v = virasoro_S(e.lam) if e.family == "LS" else virasoro_E(e.lam)
        return v.state
    if isinstance(e, Current):
        ctx = _CTX_CACHE.get(scheme.lambda_s)
        if ctx is None:
            ctx = brst_context(scheme.lambda_s)
            _CTX_CACHE[scheme.lambda_s] = ctx
        return ctx.J
    if isinstance(e, ClassAtom):
        return class_x() if e.name == "x" else class_y()
    raise TypeError("not an expression node: %r" % (e,))


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _mode_atom_text(m):
    kind, flavor, index = m
    name = KIND_NAMES[kind]
    if flavor:
        name += "[%d]" % flavor
    depth = -index
    if depth == 1:
        return name
    return "D(%d, %s)" % (depth - 1, name)


def state_text(s):
    """Serialize a state into the expression grammar.

    Each monomial is a Wick word of derivative atoms; the coefficient is
    divided by the factorials those atoms carry, so evaluation restores the
    state exactly.
    """
    if s.is_zero():
        return "0 1"
    bits = []
    for idx, (mono, co) in enumerate(s.sorted_terms()):
        scale = 1
        for m in mono:
            scale *= _factorial(-m[2] - 1)
        co = co / scale
        if not mono:
            body = "1"
        elif len(mono) == 1:
            body = _mode_atom_text(mono[0])
        else:
            body = "W(" + ", ".join(_mode_atom_text(m) for m in mono) + ")"
        mag = -co if co < 0 else co
        txt = body if mag == 1 else "%s %s" % (mag, body)
        if idx == 0:
            bits.append(("-" + txt) if co < 0 else txt)
        else:
            bits.append(("- " if co < 0 else "+ ") + txt)
    return " ".join(bits)


def state_json(s):
    """JSON document for a state, terms in the fixed monomial order."""
    terms = []
    for mono, co in s.sorted_terms():
        terms.append({
            "modes": [[KIND_NAMES[k], f, i] for k, f, i in mono],
            "coeff": str(co),
        })
    return {"terms": terms}
