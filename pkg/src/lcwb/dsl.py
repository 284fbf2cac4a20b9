"""The .lcw scripting language: parser, static checks and pretty-printer.

    ring R = F(32003)[x,y];
    algebra A = dual;
    ideal I = <x*y>;
    module M = coker[[x^2, x*y]];
    module N = coker[[x, 0], [0, x]] over A action {[[1, 0], [0, 1]], [[0, 0], [1, 0]]};
    sub S = submodule(M, [[x]]);
    module Q = M / S;
    task gamma(module coker[[x^2]], I=I, J=<0>);
    task lc(M, I=<x,y>, route="colim", box=box([-3,3]^n), i=[0,1,2]);

Statements end with ';'.  ``<...>`` is an ideal, ``coker[[...]]`` a matrix
given by rows whose columns are the relations, ``box([lo,hi]^n)`` a degree
box (``n`` stands for the number of variables).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ScriptNameError, ScriptSyntaxError, TypeMismatch
from .expr import Num, TokenStream, Var, format_expr, parse_expr, tokenize, BinOp, Neg, Pow


# -- AST ------------------------------------------------------------------------

def _span(tok):
    return (tok.line, tok.col)


@dataclass(frozen=True)
class IdealLit:
    gens: tuple
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class MatrixLit:
    rows: tuple  # tuple of tuples of expressions
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class ModuleLit:
    kind: str  # coker | free | quotient | subquotient
    matrix: MatrixLit | None = None
    rank: int | None = None
    ideal: object = None
    degrees: tuple | None = None
    algebra: str | None = None
    action: tuple = ()
    base: str | None = None
    sub: str | None = None
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class BoxLit:
    lo: int
    hi: int
    dim: object  # int or "n"
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class IntLit:
    value: int
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class StrLit:
    value: str
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class ListLit:
    items: tuple
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class NameRef:
    name: str
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class RingDecl:
    name: str
    characteristic: int
    variables: tuple
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    kind: str  # trivial | dual | split | constants
    args: tuple = ()
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Decl:
    kind: str  # ideal | module | sub
    name: str
    value: object
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Arg:
    key: str | None
    value: object
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class TaskDecl:
    name: str
    args: tuple
    span: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Script:
    ring: RingDecl
    statements: tuple

    @property
    def tasks(self):
        return [s for s in self.statements if isinstance(s, TaskDecl)]


# -- task signatures -----------------------------------------------------------------

REQUIRED = object()

TASK_SIGNATURES = {
    "ass": [("M", "module", REQUIRED), ("d", "int", 6)],
    "filtration": [("M", "module", REQUIRED), ("d", "int", 6)],
    "gamma": [("M", "module", REQUIRED), ("I", "ideal", REQUIRED), ("J", "ideal", None), ("d", "int", 6)],
    "w": [("I", "ideal", REQUIRED), ("J", "ideal", None), ("p", "ideal", REQUIRED)],
    "lc": [("M", "module", REQUIRED), ("I", "ideal", REQUIRED), ("J", "ideal", None),
           ("route", "str", "cech"), ("box", "box", None), ("i", "ints", None)],
    "ss": [("M", "module", REQUIRED), ("family", "ideals", REQUIRED), ("J", "ideal", None),
           ("box", "box", None)],
    "gammaV": [("M", "module", REQUIRED), ("V", "module", None), ("K", "ideal", REQUIRED),
               ("i", "ints", None), ("box", "box", None)],
    "nagata": [("M", "module", REQUIRED), ("V", "module", None), ("K", "ideal", REQUIRED),
               ("i", "ints", None), ("box", "box", None)],
    "check": [("suite", "str", REQUIRED)],
}

ROUTES = ("cech", "colim", "two")


# -- parser ---------------------------------------------------------------------------

def _int(ts: TokenStream) -> int:
    neg = ts.accept("-")
    t = ts.expect_kind("num")
    return -int(t.text) if neg else int(t.text)


def _matrix(ts: TokenStream) -> MatrixLit:
    start = ts.expect("[[")
    rows = []
    row = [parse_expr(ts)]
    while True:
        if ts.accept(","):
            row.append(parse_expr(ts))
            continue
        if ts.accept("]]"):
            rows.append(tuple(row))
            break
        ts.expect("]")
        rows.append(tuple(row))
        ts.expect(",")
        ts.expect("[")
        row = [parse_expr(ts)]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise TypeMismatch("matrix rows have different lengths", *_span(start))
    return MatrixLit(tuple(rows), _span(start))


def _int_rows(ts: TokenStream):
    ts.expect("[[")
    rows, row = [], [_int(ts)]
    while True:
        if ts.accept(","):
            row.append(_int(ts))
            continue
        if ts.accept("]]"):
            rows.append(tuple(row))
            return tuple(rows)
        ts.expect("]")
        rows.append(tuple(row))
        ts.expect(",")
        ts.expect("[")
        row = [_int(ts)]


def _ideal(ts: TokenStream) -> IdealLit:
    start = ts.expect("<")
    gens = []
    if not ts.at(">"):
        gens.append(parse_expr(ts))
        while ts.accept(","):
            gens.append(parse_expr(ts))
    ts.expect(">")
    return IdealLit(tuple(gens), _span(start))


def _box(ts: TokenStream) -> BoxLit:
    start = ts.expect("box")
    ts.expect("(")
    ts.expect("[")
    lo = _int(ts)
    ts.expect(",")
    hi = _int(ts)
    ts.expect("]")
    ts.expect("^")
    t = ts.peek()
    if t.kind == "num":
        ts.next()
        dim = int(t.text)
    elif t.kind == "name" and t.text == "n":
        ts.next()
        dim = "n"
    else:
        raise ScriptSyntaxError("box exponent must be a number or n", t.line, t.col)
    ts.expect(")")
    if lo > hi:
        raise TypeMismatch("empty degree box", *_span(start))
    return BoxLit(lo, hi, dim, _span(start))


def _module(ts: TokenStream) -> ModuleLit:
    t = ts.peek()
    span = _span(t)
    if ts.accept("coker"):
        mat = _matrix(ts)
        degrees = algebra = None
        action = ()
        if ts.accept("degrees"):
            degrees = _int_rows(ts)
        if ts.accept("over"):
            algebra = ts.expect_kind("name").text
            ts.expect("action")
            ts.expect("{")
            acts = [_matrix(ts)]
            while ts.accept(","):
                acts.append(_matrix(ts))
            ts.expect("}")
            action = tuple(acts)
        return ModuleLit("coker", matrix=mat, degrees=degrees, algebra=algebra, action=action, span=span)
    if ts.accept("free"):
        ts.expect("(")
        r = ts.expect_kind("num")
        ts.expect(")")
        return ModuleLit("free", rank=int(r.text), span=span)
    if ts.accept("quotient"):
        ts.expect("(")
        ideal = _ideal(ts) if ts.at("<") else _nameref(ts)
        ts.expect(")")
        return ModuleLit("quotient", ideal=ideal, span=span)
    if t.kind == "name" and ts.peek(1).text == "/":
        base = ts.next().text
        ts.expect("/")
        sub = ts.expect_kind("name").text
        return ModuleLit("subquotient", base=base, sub=sub, span=span)
    raise ScriptSyntaxError(f"expected a module expression, found {t.text or 'end of input'!r}", t.line, t.col)


def _nameref(ts: TokenStream) -> NameRef:
    t = ts.expect_kind("name")
    return NameRef(t.text, _span(t))


def _value(ts: TokenStream):
    t = ts.peek()
    if ts.at("<"):
        return _ideal(ts)
    if ts.at("module"):
        ts.next()
        return _module(ts)
    if ts.at("ideal"):
        ts.next()
        return _ideal(ts)
    if ts.at("box"):
        return _box(ts)
    if t.kind == "str":
        ts.next()
        return StrLit(t.text[1:-1], _span(t))
    if t.kind == "num" or ts.at("-"):
        return IntLit(_int(ts), _span(t))
    if ts.at("["):
        ts.next()
        items = []
        if not ts.at("]"):
            items.append(_value(ts))
            while ts.accept(","):
                items.append(_value(ts))
        ts.expect("]")
        return ListLit(tuple(items), _span(t))
    if t.kind == "name":
        if t.text in ("coker", "free", "quotient"):
            return _module(ts)
        return _nameref(ts)
    raise ScriptSyntaxError(f"expected a value, found {t.text or 'end of input'!r}", t.line, t.col)


def _ring(ts: TokenStream) -> RingDecl:
    start = ts.expect("ring")
    name = ts.expect_kind("name").text
    ts.expect("=")
    ts.expect("F")
    ts.expect("(")
    p = int(ts.expect_kind("num").text)
    ts.expect(")")
    ts.expect("[")
    names = [ts.expect_kind("name").text]
    while ts.accept(","):
        names.append(ts.expect_kind("name").text)
    ts.expect("]")
    ts.expect(";")
    if len(set(names)) != len(names):
        raise TypeMismatch("repeated variable name", *_span(start))
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise TypeMismatch(f"characteristic {p} is not prime", *_span(start))
    return RingDecl(name, p, tuple(names), _span(start))


def _algebra(ts: TokenStream) -> AlgebraDecl:
    start = ts.expect("algebra")
    name = ts.expect_kind("name").text
    ts.expect("=")
    kind_tok = ts.expect_kind("name")
    kind = kind_tok.text
    args = ()
    if kind == "split":
        ts.expect("(")
        args = (int(ts.expect_kind("num").text),)
        ts.expect(")")
    elif kind == "constants":
        ts.expect("(")
        dim = int(ts.expect_kind("num").text)
        ts.expect(",")
        vals = _value(ts)
        ts.expect(",")
        unit = _value(ts)
        ts.expect(")")
        args = (dim, tuple(_ints_of(vals)), tuple(_ints_of(unit)))
        if len(args[1]) != dim ** 3 or len(args[2]) != dim:
            raise TypeMismatch("structure constants need dim^3 entries and a unit of length dim",
                               *_span(kind_tok))
    elif kind not in ("trivial", "dual"):
        raise TypeMismatch(f"unknown algebra {kind!r}", *_span(kind_tok))
    ts.expect(";")
    return AlgebraDecl(name, kind, args, _span(start))


def _ints_of(v):
    if not isinstance(v, ListLit) or not all(isinstance(x, IntLit) for x in v.items):
        raise TypeMismatch("expected a list of integers", *(v.span or (0, 0)))
    return [x.value for x in v.items]


def _statement(ts: TokenStream):
    t = ts.peek()
    if ts.at("algebra"):
        return _algebra(ts)
    if t.text in ("ideal", "module", "sub") and t.kind == "name":
        ts.next()
        name = ts.expect_kind("name").text
        ts.expect("=")
        if t.text == "ideal":
            value = _ideal(ts) if ts.at("<") else _nameref(ts)
        elif t.text == "module":
            value = _module(ts)
        else:
            ts.expect("submodule")
            ts.expect("(")
            base = _nameref(ts)
            ts.expect(",")
            mat = _matrix(ts)
            ts.expect(")")
            value = (base, mat)
        ts.expect(";")
        return Decl(t.text, name, value, _span(t))
    if ts.at("task"):
        ts.next()
        name_tok = ts.expect_kind("name")
        ts.expect("(")
        args = []
        if not ts.at(")"):
            args.append(_arg(ts))
            while ts.accept(","):
                args.append(_arg(ts))
        ts.expect(")")
        ts.expect(";")
        return TaskDecl(name_tok.text, tuple(args), _span(name_tok))
    if ts.at("ring"):
        raise ScriptSyntaxError("only one ring declaration is allowed", t.line, t.col)
    raise ScriptSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col)


def _arg(ts: TokenStream) -> Arg:
    t = ts.peek()
    if t.kind == "name" and ts.peek(1).text == "=" :
        ts.next()
        ts.next()
        return Arg(t.text, _value(ts), _span(t))
    return Arg(None, _value(ts), _span(t))


def parse_syntax(text: str) -> Script:
    ts = TokenStream(tokenize(text))
    ring = _ring(ts)
    stmts = []
    while ts.peek().kind != "eof":
        stmts.append(_statement(ts))
    return Script(ring, tuple(stmts))


def parse_script(text: str) -> Script:
    """Parse and statically check a script (names, types, task signatures)."""
    script = parse_syntax(text)
    check_script(script)
    return script


# -- static checks --------------------------------------------------------------------

def _expr_names(e):
    if isinstance(e, Var):
        yield e
    elif isinstance(e, Neg):
        yield from _expr_names(e.arg)
    elif isinstance(e, Pow):
        yield from _expr_names(e.base)
    elif isinstance(e, BinOp):
        yield from _expr_names(e.left)
        yield from _expr_names(e.right)


def _check_poly(e, ring: RingDecl):
    for v in _expr_names(e):
        if v.name not in ring.variables:
            raise ScriptNameError(f"unknown variable {v.name!r}", *(v.span or (0, 0)))


def _type_of(value, env, ring) -> str:
    if isinstance(value, IdealLit):
        for g in value.gens:
            _check_poly(g, ring)
        return "ideal"
    if isinstance(value, ModuleLit):
        _check_module(value, env, ring)
        return "module"
    if isinstance(value, BoxLit):
        if value.dim != "n" and value.dim != len(ring.variables):
            raise TypeMismatch("box dimension differs from the number of variables", *(value.span or (0, 0)))
        return "box"
    if isinstance(value, IntLit):
        return "int"
    if isinstance(value, StrLit):
        return "str"
    if isinstance(value, ListLit):
        kinds = {_type_of(v, env, ring) for v in value.items}
        if kinds <= {"int"}:
            return "ints"
        if kinds == {"ideal"}:
            return "ideals"
        raise TypeMismatch("lists hold integers or ideals", *(value.span or (0, 0)))
    if isinstance(value, NameRef):
        if value.name not in env:
            raise ScriptNameError(f"undeclared name {value.name!r}", *(value.span or (0, 0)))
        return env[value.name]
    raise TypeMismatch("unsupported value", 0, 0)


def _check_module(m: ModuleLit, env, ring):
    span = m.span or (0, 0)
    if m.kind == "coker":
        for row in m.matrix.rows:
            for e in row:
                _check_poly(e, ring)
        rank = len(m.matrix.rows)
        if m.degrees is not None:
            if len(m.degrees) != rank or any(len(d) != len(ring.variables) for d in m.degrees):
                raise TypeMismatch("one degree vector of length n per generator", *span)
        if m.algebra is not None:
            if env.get(m.algebra) != "algebra":
                raise ScriptNameError(f"undeclared algebra {m.algebra!r}", *span)
            for a in m.action:
                if len(a.rows) != rank or len(a.rows[0]) != rank:
                    raise TypeMismatch("action matrices must be square of the module rank", *span)
                for row in a.rows:
                    for e in row:
                        _check_poly(e, ring)
    elif m.kind == "quotient":
        t = _type_of(m.ideal, env, ring)
        if t != "ideal":
            raise TypeMismatch(f"quotient expects an ideal, got {t}", *span)
    elif m.kind == "subquotient":
        if env.get(m.base) != "module":
            raise ScriptNameError(f"undeclared module {m.base!r}", *span)
        if env.get(m.sub) != "sub":
            raise ScriptNameError(f"undeclared subobject {m.sub!r}", *span)


def check_script(script: Script) -> None:
    ring = script.ring
    env = {}
    for st in script.statements:
        if isinstance(st, AlgebraDecl):
            env[st.name] = "algebra"
        elif isinstance(st, Decl):
            if st.kind == "sub":
                base, mat = st.value
                if env.get(base.name) != "module":
                    raise ScriptNameError(f"undeclared module {base.name!r}", *(base.span or (0, 0)))
                for row in mat.rows:
                    for e in row:
                        _check_poly(e, ring)
            else:
                t = _type_of(st.value, env, ring)
                if t != st.kind:
                    raise TypeMismatch(f"{st.name} is declared {st.kind} but the value is {t}",
                                       *(st.span or (0, 0)))
            env[st.name] = st.kind
        elif isinstance(st, TaskDecl):
            bind_task_args(st, env, ring)


def bind_task_args(task: TaskDecl, env, ring) -> dict:
    """Map arguments to parameter names, checking arity and types."""
    sig = TASK_SIGNATURES.get(task.name)
    span = task.span or (0, 0)
    if sig is None:
        raise ScriptNameError(f"unknown task {task.name!r}", *span)
    names = [s[0] for s in sig]
    bound = {}
    positional = True
    for k, arg in enumerate(task.args):
        if arg.key is None:
            if not positional:
                raise ScriptSyntaxError("positional argument after keyword argument", *(arg.span or span))
            if k >= len(sig):
                raise TypeMismatch(f"too many arguments for {task.name}", *(arg.span or span))
            key = names[k]
        else:
            positional = False
            key = arg.key
            if key not in names:
                raise ScriptNameError(f"{task.name} has no parameter {key!r}", *(arg.span or span))
        if key in bound:
            raise TypeMismatch(f"parameter {key!r} given twice", *(arg.span or span))
        want = dict((s[0], s[1]) for s in sig)[key]
        got = _type_of(arg.value, env, ring)
        ok = got == want or (want == "ints" and got == "int") or (want == "ideals" and got == "ints" and not arg.value.items)
        if not ok:
            raise TypeMismatch(f"{task.name}: parameter {key!r} expects {want}, got {got}",
                               *(arg.span or span))
        bound[key] = arg.value
    for name, _, default in sig:
        if name not in bound and default is REQUIRED:
            raise TypeMismatch(f"{task.name}: missing required parameter {name!r}", *span)
    if task.name == "lc" and "route" in bound and bound["route"].value not in ROUTES:
        raise TypeMismatch(f"lc: route must be one of {', '.join(ROUTES)}", *(bound["route"].span or span))
    return bound


# -- pretty printing -------------------------------------------------------------------

def _fmt_matrix(m: MatrixLit) -> str:
    return "[[" + "], [".join(", ".join(format_expr(e) for e in row) for row in m.rows) + "]]"


def _fmt_value(v) -> str:
    if isinstance(v, IdealLit):
        return "<" + ", ".join(format_expr(g) for g in v.gens) + ">"
    if isinstance(v, ModuleLit):
        return "module " + _fmt_module(v)
    if isinstance(v, BoxLit):
        return f"box([{v.lo},{v.hi}]^{v.dim})"
    if isinstance(v, IntLit):
        return str(v.value)
    if isinstance(v, StrLit):
        return f'"{v.value}"'
    if isinstance(v, ListLit):
        return "[" + ", ".join(_fmt_value(x) for x in v.items) + "]"
    if isinstance(v, NameRef):
        return v.name
    raise TypeError(v)


def _fmt_module(m: ModuleLit) -> str:
    if m.kind == "coker":
        out = "coker" + _fmt_matrix(m.matrix)
        if m.degrees is not None:
            out += " degrees [[" + "], [".join(", ".join(str(x) for x in d) for d in m.degrees) + "]]"
        if m.algebra is not None:
            out += f" over {m.algebra} action {{" + ", ".join(_fmt_matrix(a) for a in m.action) + "}"
        return out
    if m.kind == "free":
        return f"free({m.rank})"
    if m.kind == "quotient":
        return f"quotient({_fmt_value(m.ideal)})"
    return f"{m.base} / {m.sub}"


def format_statement(st) -> str:
    if isinstance(st, RingDecl):
        return f"ring {st.name} = F({st.characteristic})[{','.join(st.variables)}];"
    if isinstance(st, AlgebraDecl):
        if st.kind == "split":
            return f"algebra {st.name} = split({st.args[0]});"
        if st.kind == "constants":
            dim, vals, unit = st.args
            return (f"algebra {st.name} = constants({dim}, [{', '.join(map(str, vals))}], "
                    f"[{', '.join(map(str, unit))}]);")
        return f"algebra {st.name} = {st.kind};"
    if isinstance(st, Decl):
        if st.kind == "ideal":
            return f"ideal {st.name} = {_fmt_value(st.value)};"
        if st.kind == "module":
            return f"module {st.name} = {_fmt_module(st.value)};"
        base, mat = st.value
        return f"sub {st.name} = submodule({base.name}, {_fmt_matrix(mat)});"
    if isinstance(st, TaskDecl):
        args = ", ".join((f"{a.key}=" if a.key else "") + _fmt_value(a.value) for a in st.args)
        return f"task {st.name}({args});"
    raise TypeError(st)


def pretty_print(script: Script) -> str:
    lines = [format_statement(script.ring)] + [format_statement(s) for s in script.statements]
    return "\n".join(lines) + "\n"
