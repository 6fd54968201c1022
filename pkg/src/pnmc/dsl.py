"""Textual model (.pnt) and property (.prop) languages.

Grammar summary (``//`` starts a comment; layout is free, the printer puts
one declaration per line)::

    domain Data = { D1, D2 }            domain Small = 0..3
    plts Name {
      param cap : 1..2
      var buf : array[2] of 0..4
      var len : 0..2
      states s0, s1
      init s0 { len := 0 }
      trans s0 -> s1 : ?Q(d) with d : Data when len < cap do buf[len] := 1, len := len + 1
    }
    net Name {
      param G : 1..3
      sort { Q(*), Error() }
      hole init : { !Q(*) }
      hole part[0..G-1] : { ?Q(*) }
      vector Q(d) = < init.!Q(d), BC k : 0..G-1 . part[k].?Q(d) > with d : Data
    }
    fill Name.hole = Filler

    prop p1 = reachable "Error()" expect true
    prop p5 = after "Q(*)" eventually "C()" or "V()"
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .check import DeadlockFree, Inevitably, Never, Property, Reachable
from .core import (
    BOOL,
    Action,
    Assign,
    BinOp,
    Broadcast,
    Collect,
    DataDomain,
    Direction,
    DomainRef,
    Expr,
    Hole,
    Idle,
    Index,
    IndexRange,
    LabelPattern,
    Lit,
    ModelError,
    Not,
    Param,
    PLts,
    PNet,
    Single,
    SortError,
    SyncVector,
    Transition,
    Var,
    VarDecl,
    WellFormednessError,
    format_value,
)


class DslError(ModelError):
    pass


class DslSyntaxError(DslError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        msg = f"{line}:{col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)
        self.line, self.col, self.expected, self.found = line, col, expected, found


class DslNameError(DslError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col = line, col


class DslSortError(DslError, SortError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col = line, col


class UnknownPattern(DslError):
    def __init__(self, line: int, col: int, found: str):
        super().__init__(f"{line}:{col}: unknown property pattern {found!r}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class Fill:
    net: str
    hole: str
    filler: str


@dataclass(frozen=True)
class ModelFile:
    domains: tuple[DataDomain, ...] = ()
    plts: tuple[PLts, ...] = ()
    pnets: tuple[PNet, ...] = ()
    fills: tuple[Fill, ...] = ()

    def plts_named(self, name: str) -> PLts:
        return next(p for p in self.plts if p.name == name)

    def net_named(self, name: str) -> PNet:
        return next(n for n in self.pnets if n.name == name)


@dataclass(frozen=True)
class NamedProperty:
    name: str
    prop: Property
    expect: bool | None = None


@dataclass(frozen=True)
class PropertyFile:
    props: tuple[NamedProperty, ...] = ()


def make_range(lo: Expr, hi: Expr) -> DomainRef:
    """Literal bounds give a concrete domain, anything else stays symbolic."""
    if isinstance(lo, Lit) and isinstance(hi, Lit) and type(lo.value) is int and type(hi.value) is int:
        if lo.value > hi.value:
            raise WellFormednessError(f"empty range {lo.value}..{hi.value}")
        return DataDomain.range(lo.value, hi.value)
    return IndexRange(lo, hi)


# --------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, string, sym, eof
    text: str
    line: int
    col: int


_SYMBOLS = sorted(
    ["{", "}", "(", ")", "[", "]", "<", ">", ",", ".", ":", "=", "!=", "<=", ">=", "+", "-", "!", "?", "*",
     "->", ":=", ".."],
    key=len,
    reverse=True,
)


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r\f\v":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            toks.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise DslSyntaxError(line, start_col, "closing '\"'")
            toks.append(Token("string", text[i + 1 : j], line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(Token("sym", sym, line, start_col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise DslSyntaxError(line, start_col, "a token", ch)
    toks.append(Token("eof", "", line, col))
    return toks


# --------------------------------------------------------------------------
# parser


_EXPR_RESERVED = {"and", "or", "not", "true", "false"}


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.domains: dict[str, DataDomain] = {}
        self.literals: set[str] = set()

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "ident") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.pos += 1
        return t

    def fail(self, expected: str):
        t = self.tok
        raise DslSyntaxError(t.line, t.col, expected, t.text if t.kind != "eof" else "end of input")

    def ident(self, what: str = "an identifier") -> str:
        t = self.tok
        if t.kind != "ident":
            self.fail(what)
        self.pos += 1
        return t.text

    def integer(self) -> int:
        neg = self.accept("-")
        t = self.tok
        if t.kind != "int":
            self.fail("an integer")
        self.pos += 1
        return -int(t.text) if neg else int(t.text)

    def string(self) -> str:
        t = self.tok
        if t.kind != "string":
            self.fail("a quoted pattern")
        self.pos += 1
        return t.text

    # expressions
    def expr(self) -> Expr:
        left = self.conj()
        while self.accept("or"):
            left = BinOp("or", left, self.conj())
        return left

    def conj(self) -> Expr:
        left = self.negation()
        while self.accept("and"):
            left = BinOp("and", left, self.negation())
        return left

    def negation(self) -> Expr:
        if self.accept("not"):
            return Not(self.negation())
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.additive()
        for op in ("=", "!=", "<=", ">=", "<", ">"):
            if self.at(op) and self.tok.kind == "sym":
                self.pos += 1
                return BinOp(op, left, self.additive())
        return left

    def additive(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "sym" and self.tok.text in ("+", "-"):
            op = self.tok.text
            self.pos += 1
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.at("-"):
            self.pos += 1
            inner = self.unary()
            if isinstance(inner, Lit) and type(inner.value) is int:
                return Lit(-inner.value)
            return BinOp("-", Lit(0), inner)
        return self.primary()

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return Lit(int(t.text))
        if t.kind == "ident":
            if t.text == "true":
                self.pos += 1
                return Lit(True)
            if t.text == "false":
                self.pos += 1
                return Lit(False)
            if t.text in _EXPR_RESERVED:
                self.fail("an expression")
            self.pos += 1
            if self.at("[") :
                self.pos += 1
                idx = self.expr()
                self.expect("]")
                return Index(t.text, idx)
            if t.text in self.literals:
                return Lit(t.text)
            return Var(t.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail("an expression")

    # domains
    def domref(self) -> DomainRef:
        t = self.tok
        if t.kind == "ident" and not (self.peek().kind == "sym" and self.peek().text in ("..", "+", "-", "[")):
            self.pos += 1
            if t.text == "bool":
                return BOOL
            if t.text in self.domains:
                return self.domains[t.text]
            raise DslNameError(t.line, t.col, f"undefined domain {t.text!r}")
        lo = self.additive()
        self.expect("..")
        hi = self.additive()
        try:
            return make_range(lo, hi)
        except WellFormednessError as exc:
            raise DslSyntaxError(t.line, t.col, "a non-empty range", str(exc)) from None

    def binders(self) -> tuple[Param, ...]:
        out = [self.binder()]
        while self.accept(","):
            out.append(self.binder())
        return tuple(out)

    def binder(self) -> Param:
        name = self.ident("a variable name")
        self.expect(":")
        return Param(name, self.domref())

    # actions
    def action(self) -> Action:
        if self.accept("tau"):
            return Action.tau()
        direction = Direction.INTERNAL
        if self.accept("!"):
            direction = Direction.EMIT
        elif self.accept("?"):
            direction = Direction.RECEIVE
        name = self.ident("an action label")
        family = index = None
        if self.accept("["):
            family = name
            index = self.expr()
            self.expect("]")
            self.expect(".")
            name = self.ident("an action label")
        self.expect("(")
        args: list[Expr] = []
        if not self.at(")"):
            args.append(self.expr())
            while self.accept(","):
                args.append(self.expr())
        self.expect(")")
        return Action(direction, name, tuple(args), family, index)

    def pattern(self) -> str:
        # label pattern written as tokens, e.g. ?Q_Suggest(*) or Fam[*].L(D1,*)
        if self.accept("*"):
            return "*"
        if self.accept("tau"):
            return "i"
        out = ""
        if self.at("!") or self.at("?"):
            out += self.tok.text
            self.pos += 1
        out += self.ident("a label pattern")
        if self.accept("["):
            out += "[" + self.pattern_cell() + "]"
            self.expect(".")
            out += "." + self.ident("an action label")
        if self.accept("("):
            cells = []
            if not self.at(")"):
                cells.append(self.pattern_cell())
                while self.accept(","):
                    cells.append(self.pattern_cell())
            self.expect(")")
            out += "(" + ",".join(cells) + ")"
        return out

    def pattern_cell(self) -> str:
        if self.accept("*"):
            return "*"
        t = self.tok
        if t.kind == "ident":
            self.pos += 1
            return t.text
        return str(self.integer())

    def pattern_set(self) -> tuple[str, ...]:
        self.expect("{")
        out = []
        if not self.at("}"):
            out.append(self.pattern())
            while self.accept(","):
                out.append(self.pattern())
        self.expect("}")
        return tuple(out)

    # declarations
    def model(self) -> ModelFile:
        domains, plts, nets, fills = [], [], [], []
        names: dict[str, set[str]] = {"domain": set(), "plts": set(), "net": set()}
        while self.tok.kind != "eof":
            t = self.tok
            if t.text == "domain":
                d = self.domain_decl()
                if d.name in names["domain"]:
                    raise DslNameError(t.line, t.col, f"duplicate domain {d.name!r}")
                names["domain"].add(d.name)
                domains.append(d)
            elif t.text == "plts":
                p = self.plts_decl()
                if p.name in names["plts"] | names["net"]:
                    raise DslNameError(t.line, t.col, f"duplicate process name {p.name!r}")
                names["plts"].add(p.name)
                plts.append(p)
            elif t.text == "net":
                n = self.net_decl()
                if n.name in names["plts"] | names["net"]:
                    raise DslNameError(t.line, t.col, f"duplicate process name {n.name!r}")
                names["net"].add(n.name)
                nets.append(n)
            elif t.text == "fill":
                fills.append((t, self.fill_decl()))
            else:
                self.fail("'domain', 'plts', 'net' or 'fill'")
        nets_by = {n.name: n for n in nets}
        seen = set()
        for t, f in fills:
            if f.net not in nets_by:
                raise DslNameError(t.line, t.col, f"fill of undefined net {f.net!r}")
            if f.hole not in {h.name for h in nets_by[f.net].holes}:
                raise DslNameError(t.line, t.col, f"net {f.net} has no hole {f.hole!r}")
            if f.filler not in names["plts"] | names["net"]:
                raise DslNameError(t.line, t.col, f"undefined filler {f.filler!r}")
            if (f.net, f.hole) in seen:
                raise DslNameError(t.line, t.col, f"hole {f.net}.{f.hole} filled twice")
            seen.add((f.net, f.hole))
        return ModelFile(tuple(domains), tuple(plts), tuple(nets), tuple(f for _, f in fills))

    def domain_decl(self) -> DataDomain:
        self.expect("domain")
        name = self.ident("a domain name")
        self.expect("=")
        t = self.tok
        if self.accept("{"):
            lits = [self.ident("an enumeration literal")]
            while self.accept(","):
                lits.append(self.ident("an enumeration literal"))
            self.expect("}")
            for l in lits:
                if l in self.literals or l in _EXPR_RESERVED:
                    raise DslNameError(t.line, t.col, f"literal {l!r} already in use")
            try:
                d = DataDomain.enum(name, lits)
            except WellFormednessError as exc:
                raise DslNameError(t.line, t.col, str(exc)) from None
            self.literals.update(lits)
        elif self.accept("bool"):
            d = DataDomain(name, "bool")
        else:
            lo = self.integer()
            self.expect("..")
            hi = self.integer()
            if lo > hi:
                raise DslSyntaxError(t.line, t.col, "a non-empty range", f"{lo}..{hi}")
            d = DataDomain(name, "range", lo=lo, hi=hi)
        self.domains[name] = d
        return d

    def fill_decl(self) -> Fill:
        self.expect("fill")
        net = self.ident("a net name")
        self.expect(".")
        hole = self.ident("a hole name")
        self.expect("=")
        return Fill(net, hole, self.ident("a filler name"))

    def plts_decl(self) -> PLts:
        head = self.expect("plts")
        name = self.ident("a pLTS name")
        self.expect("{")
        params, vars_, states, init, inits, trans = [], [], [], None, [], []
        while not self.accept("}"):
            t = self.tok
            if self.accept("param"):
                params.append(self.binder())
            elif self.accept("var"):
                vname = self.ident("a variable name")
                self.expect(":")
                if self.accept("array"):
                    self.expect("[")
                    size = self.expr()
                    self.expect("]")
                    self.expect("of")
                    vars_.append(VarDecl(vname, self.domref(), size))
                else:
                    vars_.append(VarDecl(vname, self.domref()))
            elif self.accept("states"):
                states.append(self.ident("a state name"))
                while self.accept(","):
                    states.append(self.ident("a state name"))
            elif self.accept("init"):
                if init is not None:
                    raise DslNameError(t.line, t.col, "second 'init'")
                init = self.ident("a state name")
                if self.accept("{"):
                    if not self.at("}"):
                        inits.extend(self.assigns())
                    self.expect("}")
            elif self.accept("trans"):
                src = self.ident("a state name")
                self.expect("->")
                dst = self.ident("a state name")
                self.expect(":")
                act = self.action()
                inputs = self.binders() if self.accept("with") else ()
                guard = self.expr() if self.accept("when") else None
                assigns = tuple(self.assigns()) if self.accept("do") else ()
                trans.append(Transition(src, dst, act, guard, assigns, inputs))
            else:
                self.fail("'param', 'var', 'states', 'init', 'trans' or '}'")
        if init is None:
            raise DslNameError(head.line, head.col, f"pLTS {name} has no 'init'")
        try:
            return PLts(name, tuple(params), tuple(vars_), tuple(states), init, tuple(trans), tuple(inits))
        except WellFormednessError as exc:
            raise DslNameError(head.line, head.col, str(exc)) from None

    def assigns(self) -> list[Assign]:
        out = [self.assign()]
        while self.accept(","):
            out.append(self.assign())
        return out

    def assign(self) -> Assign:
        target = self.ident("an assignment target")
        index = None
        if self.accept("["):
            index = self.expr()
            self.expect("]")
        self.expect(":=")
        return Assign(target, self.expr(), index)

    def net_decl(self) -> PNet:
        head = self.expect("net")
        name = self.ident("a net name")
        self.expect("{")
        params, sort, holes, vectors = [], (), [], []
        while not self.accept("}"):
            if self.accept("param"):
                params.append(self.binder())
            elif self.accept("sort"):
                sort = self.pattern_set()
            elif self.accept("hole"):
                hname = self.ident("a hole name")
                index = None
                if self.accept("["):
                    index = self.domref()
                    self.expect("]")
                self.expect(":")
                holes.append(Hole(hname, self.pattern_set(), index))
            elif self.accept("vector"):
                vectors.append(self.vector())
            else:
                self.fail("'param', 'sort', 'hole', 'vector' or '}'")
        try:
            for pat in sort + tuple(p for h in holes for p in h.sort):
                LabelPattern(pat)
            return PNet(name, tuple(params), sort, tuple(holes), tuple(vectors))
        except SortError as exc:
            raise DslSortError(head.line, head.col, str(exc)) from None
        except (WellFormednessError, ValueError) as exc:
            raise DslNameError(head.line, head.col, str(exc)) from None

    def vector(self) -> SyncVector:
        glob = self.action()
        self.expect("=")
        self.expect("<")
        entries = [self.entry()]
        while self.accept(","):
            entries.append(self.entry())
        self.expect(">")
        binders = self.binders() if self.accept("with") else ()
        try:
            return SyncVector(glob, tuple(entries), binders)
        except WellFormednessError as exc:
            raise DslNameError(self.tok.line, self.tok.col, str(exc)) from None

    def entry(self):
        t = self.tok
        if t.kind == "ident" and t.text in ("BC", "CO") and self.peek().kind == "ident":
            self.pos += 1
            var = self.ident("a bound variable")
            self.expect(":")
            rng = self.domref()
            self.expect(".")
            hole = self.ident("a hole name")
            self.expect("[")
            idx_tok = self.tok
            idx = self.ident("the bound variable")
            if idx != var:
                raise DslNameError(idx_tok.line, idx_tok.col, f"{t.text} member index must be {var!r}")
            self.expect("]")
            self.expect(".")
            act = self.action()
            return Broadcast(hole, var, rng, act) if t.text == "BC" else Collect(hole, var, rng, act)
        hole = self.ident("a hole name")
        index = None
        if self.accept("["):
            index = self.expr()
            self.expect("]")
        self.expect(".")
        if self.accept("*"):
            if index is not None:
                self.fail("'*' on the whole family (no index)")
            return Idle(hole)
        return Single(hole, self.action(), index)

    # properties
    def props(self) -> PropertyFile:
        out = []
        names = set()
        while self.tok.kind != "eof":
            t = self.expect("prop")
            name = self.ident("a property name")
            if name in names:
                raise DslNameError(t.line, t.col, f"duplicate property {name!r}")
            names.add(name)
            self.expect("=")
            kw = self.tok
            if self.accept("deadlock_free"):
                prop: Property = DeadlockFree()
            elif self.accept("reachable"):
                prop = Reachable(self.label_pattern())
            elif self.accept("never"):
                prop = Never(self.label_pattern())
            elif self.accept("after"):
                after = self.label_pattern()
                self.expect("eventually")
                goals = [self.label_pattern()]
                while self.accept("or"):
                    goals.append(self.label_pattern())
                prop = Inevitably(after, tuple(goals))
            else:
                raise UnknownPattern(kw.line, kw.col, kw.text)
            expect = None
            if self.accept("expect"):
                if self.accept("true"):
                    expect = True
                elif self.accept("false"):
                    expect = False
                else:
                    self.fail("'true' or 'false'")
            out.append(NamedProperty(name, prop, expect))
        return PropertyFile(tuple(out))

    def label_pattern(self) -> LabelPattern:
        t = self.tok
        text = self.string()
        try:
            return LabelPattern(text)
        except ValueError:
            raise DslSyntaxError(t.line, t.col, "a label pattern", text) from None


def _decode(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DslSyntaxError(1, exc.start + 1, "UTF-8 text") from None
    return text


def parse_model(text: str | bytes) -> ModelFile:
    text = _decode(text)
    try:
        return _Parser(text).model()
    except RecursionError:
        raise DslSyntaxError(1, 1, "less deeply nested input") from None


def parse_props(text: str | bytes) -> PropertyFile:
    text = _decode(text)
    try:
        return _Parser(text).props()
    except RecursionError:
        raise DslSyntaxError(1, 1, "less deeply nested input") from None


# --------------------------------------------------------------------------
# printer


def print_expr(e: Expr, top: bool = True) -> str:
    if isinstance(e, Lit):
        return format_value(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Index):
        return f"{e.array}[{print_expr(e.index)}]"
    if isinstance(e, Not):
        return f"not {print_expr(e.operand, top=False)}"
    if isinstance(e, BinOp):
        text = f"{print_expr(e.left, top=False)} {e.op} {print_expr(e.right, top=False)}"
        return text if top else f"({text})"
    raise TypeError(f"not an expression: {e!r}")


def print_domref(d: DomainRef) -> str:
    if isinstance(d, IndexRange):
        return f"{print_expr(d.lo, top=False)}..{print_expr(d.hi, top=False)}"
    if d.kind == "range" and d.name == f"{d.lo}..{d.hi}":
        return d.name
    return d.name


def print_action(a: Action) -> str:
    if a.is_tau:
        return "tau"
    target = f"{a.family}[{print_expr(a.index)}]." if a.family is not None else ""
    return f"{a.direction.value}{target}{a.label}({', '.join(print_expr(x) for x in a.args)})"


def _print_patterns(pats: Sequence[str]) -> str:
    return "{ " + ", ".join("tau" if p == "i" else p for p in pats) + " }" if pats else "{ }"


def _print_binders(bs: Sequence[Param]) -> str:
    return ", ".join(f"{b.name} : {print_domref(b.domain)}" for b in bs)


def _print_assigns(assigns: Sequence[Assign]) -> str:
    out = []
    for a in assigns:
        target = a.target if a.index is None else f"{a.target}[{print_expr(a.index)}]"
        out.append(f"{target} := {print_expr(a.value)}")
    return ", ".join(out)


def _print_entry(e) -> str:
    if isinstance(e, Idle):
        return f"{e.hole}.*"
    if isinstance(e, Single):
        idx = f"[{print_expr(e.index)}]" if e.index is not None else ""
        return f"{e.hole}{idx}.{print_action(e.action)}"
    kw = "BC" if isinstance(e, Broadcast) else "CO"
    return f"{kw} {e.var} : {print_domref(e.range)} . {e.hole}[{e.var}].{print_action(e.action)}"


def print_domain(d: DataDomain) -> str:
    if d.kind == "enum":
        return f"domain {d.name} = {{ {', '.join(d.literals)} }}"
    if d.kind == "bool":
        return f"domain {d.name} = bool"
    return f"domain {d.name} = {d.lo}..{d.hi}"


def print_plts(p: PLts) -> str:
    lines = [f"plts {p.name} {{"]
    for prm in p.params:
        lines.append(f"  param {prm.name} : {print_domref(prm.domain)}")
    for v in p.vars:
        if v.is_array:
            lines.append(f"  var {v.name} : array[{print_expr(v.size)}] of {print_domref(v.domain)}")
        else:
            lines.append(f"  var {v.name} : {print_domref(v.domain)}")
    lines.append(f"  states {', '.join(p.states)}")
    init = f"  init {p.initial}"
    if p.init_values:
        init += f" {{ {_print_assigns(p.init_values)} }}"
    lines.append(init)
    for t in p.transitions:
        line = f"  trans {t.src} -> {t.dst} : {print_action(t.action)}"
        if t.inputs:
            line += f" with {_print_binders(t.inputs)}"
        if t.guard is not None:
            line += f" when {print_expr(t.guard)}"
        if t.assigns:
            line += f" do {_print_assigns(t.assigns)}"
        lines.append(line)
    lines.append("}")
    return "\n".join(lines)


def print_net(n: PNet) -> str:
    lines = [f"net {n.name} {{"]
    for prm in n.params:
        lines.append(f"  param {prm.name} : {print_domref(prm.domain)}")
    lines.append(f"  sort {_print_patterns(n.global_sort)}")
    for h in n.holes:
        idx = f"[{print_domref(h.index)}]" if h.index is not None else ""
        lines.append(f"  hole {h.name}{idx} : {_print_patterns(h.sort)}")
    for v in n.vectors:
        line = f"  vector {print_action(v.global_action)} = < {', '.join(_print_entry(e) for e in v.entries)} >"
        if v.binders:
            line += f" with {_print_binders(v.binders)}"
        lines.append(line)
    lines.append("}")
    return "\n".join(lines)


def print_model(m: ModelFile) -> str:
    blocks = []
    if m.domains:
        blocks.append("\n".join(print_domain(d) for d in m.domains))
    blocks.extend(print_plts(p) for p in m.plts)
    blocks.extend(print_net(n) for n in m.pnets)
    if m.fills:
        blocks.append("\n".join(f"fill {f.net}.{f.hole} = {f.filler}" for f in m.fills))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def print_props(pf: PropertyFile) -> str:
    lines = []
    for p in pf.props:
        line = f"prop {p.name} = {p.prop.describe()}"
        if p.expect is not None:
            line += f" expect {'true' if p.expect else 'false'}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")
