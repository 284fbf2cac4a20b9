"""Polynomial rings F_p[x_1..x_n] with sparse dictionary polynomials."""

from __future__ import annotations

from functools import reduce

from .errors import ScriptNameError, ScriptSyntaxError
from .expr import BinOp, Neg, Num, Pow, TokenStream, Var, parse_expr, tokenize

DEFAULT_PRIME = 32003


def degrevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def deglex_key(e):
    return (sum(e), tuple(e))


def lex_key(e):
    return tuple(e)


ORDERS = {"degrevlex": degrevlex_key, "deglex": deglex_key, "lex": lex_key}


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b, a):
    return all(x <= y for x, y in zip(b, a))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PolynomialRing:
    """R = F_p[variables].  Rings compare equal when prime and variable names agree."""

    def __init__(self, variables, p: int = DEFAULT_PRIME, order: str = "degrevlex"):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if not _is_prime(p) or p >= 2**31:
            raise ValueError(f"characteristic must be a prime below 2^31, got {p}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.p = p
        self.n = len(self.variables)
        self.order = order

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.variables == other.variables
                and self.p == other.p)

    def __hash__(self):
        return hash((self.variables, self.p))

    def __repr__(self):
        return f"F({self.p})[{','.join(self.variables)}]"

    @property
    def zero_exp(self):
        return (0,) * self.n

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {self.zero_exp: c})

    def monomial(self, exp, c: int = 1) -> Polynomial:
        exp = tuple(int(x) for x in exp)
        if len(exp) != self.n or min(exp, default=0) < 0:
            raise ValueError(f"bad exponent vector {exp}")
        return Polynomial(self, {exp: c})

    def var(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.n)]

    def extend(self, names) -> PolynomialRing:
        """Ring with extra variables appended (placed last in every order)."""
        return PolynomialRing(self.variables + tuple(names), self.p, self.order)

    def fresh_name(self, base: str = "z") -> str:
        name, k = base, 0
        while name in self.variables:
            k += 1
            name = f"{base}{k}"
        return name

    def embed(self, f: Polynomial, target: PolynomialRing) -> Polynomial:
        """Image of f in a ring extending this one by trailing variables."""
        pad = (0,) * (target.n - self.n)
        return Polynomial(target, {e + pad: c for e, c in f.terms.items()})

    def coerce(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise ValueError(f"polynomial from {x.ring} used in {self}")
            return x
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a polynomial")

    def parse(self, text: str) -> Polynomial:
        ts = TokenStream(tokenize(text))
        ast = parse_expr(ts)
        t = ts.peek()
        if t.kind != "eof":
            raise ScriptSyntaxError(f"unexpected {t.text!r}", t.line, t.col)
        return self.evaluate(ast)

    def evaluate(self, ast) -> Polynomial:
        if isinstance(ast, Num):
            return self.const(ast.value)
        if isinstance(ast, Var):
            if ast.name not in self.variables:
                line, col = ast.span or (None, None)
                raise ScriptNameError(f"unknown variable {ast.name!r}", line, col)
            return self.var(ast.name)
        if isinstance(ast, Neg):
            return -self.evaluate(ast.arg)
        if isinstance(ast, Pow):
            return self.evaluate(ast.base) ** ast.exp
        a, b = self.evaluate(ast.left), self.evaluate(ast.right)
        if ast.op == "+":
            return a + b
        if ast.op == "-":
            return a - b
        if ast.op == "*":
            return a * b
        if not b.is_constant() or b.is_zero():
            line, col = ast.span or (None, None)
            raise ScriptSyntaxError("division only by nonzero constants", line, col)
        return a * pow(b.constant_value(), -1, self.p)


class Polynomial:
    """Sparse polynomial: dict exponent-tuple -> coefficient in [1, p)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        p = ring.p
        self.ring = ring
        self.terms = {e: c % p for e, c in terms.items() if c % p}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    def _other(self, o) -> Polynomial:
        if isinstance(o, Polynomial):
            if o.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return o
        if isinstance(o, int):
            return self.ring.const(o)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        p = self.ring.p
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, int):
            return Polynomial(self.ring, {e: c * o for e, c in self.terms.items()})
        o = self._other(o)
        if o is NotImplemented:
            return o
        p = self.ring.p
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t.get(e, 0) + c1 * c2) % p
        return Polynomial._raw(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, o):
        if isinstance(o, int):
            o = self.ring.const(o)
        if not isinstance(o, Polynomial):
            return NotImplemented
        return self.ring == o.ring and self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(self.ring.zero_exp, 0)

    def is_monomial(self) -> bool:
        """Single term (a scalar multiple of a monomial)."""
        return len(self.terms) == 1

    def is_multihomogeneous(self) -> bool:
        """Homogeneous for the fine Z^n grading, i.e. at most one term."""
        return len(self.terms) <= 1

    def leading_exp(self, order: str | None = None):
        key = ORDERS[order or self.ring.order]
        return max(self.terms, key=key)

    def leading_coeff(self, order: str | None = None) -> int:
        return self.terms[self.leading_exp(order)]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        inv = pow(self.leading_coeff(), -1, self.ring.p)
        return self * inv

    def mul_term(self, exp, c: int) -> Polynomial:
        p = self.ring.p
        return Polynomial._raw(self.ring, {mono_mul(e, exp): (v * c) % p for e, v in self.terms.items()})

    def evaluate_at(self, point) -> int:
        p = self.ring.p
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = v * pow(x, k, p) % p
            total = (total + v) % p
        return total

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)


def format_monomial(exp, names) -> str:
    parts = []
    for k, name in zip(exp, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    """Deterministic text form, terms in decreasing degrevlex order; parses back to f."""
    if not f.terms:
        return "0"
    key = ORDERS[f.ring.order]
    p = f.ring.p
    pieces = []
    for e in sorted(f.terms, key=key, reverse=True):
        c = f.terms[e]
        sign = "+"
        if c > p // 2:
            sign, c = "-", p - c
        mono = format_monomial(e, f.ring.variables)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        pieces.append((sign, body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def product(polys, ring: PolynomialRing) -> Polynomial:
    return reduce(lambda a, b: a * b, polys, ring.one())
