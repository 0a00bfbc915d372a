"""Syntax and standard-model semantics for the first-order language of
arithmetic: constants 0 and 1, binary + and *, relations = and <, the
propositional connectives, and quantifiers over variables x0, x1, ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceeded,
    DivisionByZero,
    InvalidSchemaVariables,
    NotPrenex,
    ParseError,
    UnboundVariable,
)

# ---------------------------------------------------------------------------
# Abstract syntax
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: int
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: int
    body: Formula


@dataclass(frozen=True)
class QuantClass:
    """Prenex classification: kind is "Sigma" or "Pi", level counts the
    maximal alternating blocks of unbounded quantifiers."""

    kind: str
    level: int


def numeral(n):
    """The term 1+1+...+1 (n ones, left-nested); 0 is the constant 0."""
    if n == 0:
        return Zero()
    t = One()
    for _ in range(n - 1):
        t = Add(t, One())
    return t


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"forall\b|exists\b|x\d+|->|[01+*=<!&|()]")
_WS_RE = re.compile(r"\s*")
_EOF = "<end of input>"


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        pos = _WS_RE.match(text, pos).end()
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            off = len(text[:pos].encode("utf-8"))
            raise ParseError(
                f"unexpected character {text[pos]!r} at byte {off}",
                offset=off,
                expected=frozenset(
                    {"0", "1", "+", "*", "=", "<", "->", "!", "&", "|",
                     "(", ")", "forall", "exists", "x<i>"}
                ),
            )
        tokens.append((m.group(), pos))
        pos = m.end()
    return tokens


class _Retry(Exception):
    """Internal backtracking signal; never escapes parse()."""


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.far_pos = 0
        self.far_expected = set()

    def _peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else _EOF

    def _byte_offset(self, pos):
        if pos < len(self.tokens):
            return len(self.text[: self.tokens[pos][1]].encode("utf-8"))
        return len(self.text.encode("utf-8"))

    def _fail(self, expected):
        if self.pos > self.far_pos:
            self.far_pos = self.pos
            self.far_expected = set(expected)
        elif self.pos == self.far_pos:
            self.far_expected |= set(expected)
        raise _Retry

    def _expect(self, tok):
        if self._peek() != tok:
            self._fail({tok})
        self.pos += 1

    def error(self):
        found = self.tokens[self.far_pos][0] if self.far_pos < len(self.tokens) else _EOF
        exp = ", ".join(sorted(self.far_expected))
        off = self._byte_offset(self.far_pos)
        return ParseError(
            f"at byte {off}: found {found!r}, expected one of: {exp}",
            offset=off,
            expected=frozenset(self.far_expected),
        )

    def formula(self):
        return self._implication()

    def _variable(self):
        tok = self._peek()
        if tok is _EOF or tok[0] != "x" or len(tok) < 2:
            self._fail({"variable"})
        self.pos += 1
        return int(tok[1:])

    def _implication(self):
        left = self._disjunction()
        if self._peek() == "->":
            self.pos += 1
            return Implies(left, self.formula())
        return left

    def _disjunction(self):
        f = self._conjunction()
        while self._peek() == "|":
            self.pos += 1
            f = Or(f, self._conjunction())
        return f

    def _conjunction(self):
        f = self._unary()
        while self._peek() == "&":
            self.pos += 1
            f = And(f, self._unary())
        return f

    def _unary(self):
        # quantifiers bind tightly: their body is the next unary formula,
        # so binary connectives after a quantified group stay outside it
        tok = self._peek()
        if tok == "!":
            self.pos += 1
            return Not(self._unary())
        if tok in ("forall", "exists"):
            self.pos += 1
            v = self._variable()
            body = self._unary()
            return ForAll(v, body) if tok == "forall" else Exists(v, body)
        return self._primary()

    def _primary(self):
        # "(" may open a grouped formula or a parenthesized left-hand term
        if self._peek() == "(":
            saved = self.pos
            self.pos += 1
            try:
                f = self.formula()
                self._expect(")")
                return f
            except _Retry:
                self.pos = saved
        return self._atom()

    def _atom(self):
        t1 = self.term()
        tok = self._peek()
        if tok not in ("=", "<"):
            self._fail({"=", "<"})
        self.pos += 1
        t2 = self.term()
        return Eq(t1, t2) if tok == "=" else Lt(t1, t2)

    def term(self):
        t = self._product()
        while self._peek() == "+":
            self.pos += 1
            t = Add(t, self._product())
        return t

    def _product(self):
        t = self._term_primary()
        while self._peek() == "*":
            self.pos += 1
            t = Mul(t, self._term_primary())
        return t

    def _term_primary(self):
        tok = self._peek()
        if tok == "0":
            self.pos += 1
            return Zero()
        if tok == "1":
            self.pos += 1
            return One()
        if tok is not _EOF and tok[0] == "x" and len(tok) > 1:
            self.pos += 1
            return Var(int(tok[1:]))
        if tok == "(":
            self.pos += 1
            t = self.term()
            self._expect(")")
            return t
        self._fail({"0", "1", "(", "variable"})


def parse(text):
    """Parse formula text into its AST; raises ParseError on bad input."""
    p = _Parser(text)
    try:
        f = p.formula()
        if p.pos != len(p.tokens):
            p._fail({"end of input"})
        return f
    except _Retry:
        raise p.error() from None


def parse_term(text):
    """Parse a bare term (used by tooling; formulas go through parse)."""
    p = _Parser(text)
    try:
        t = p.term()
        if p.pos != len(p.tokens):
            p._fail({"end of input"})
        return t
    except _Retry:
        raise p.error() from None


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def render(node):
    """Fully parenthesized canonical text; parse(render(f)) == f."""
    if isinstance(node, Zero):
        return "0"
    if isinstance(node, One):
        return "1"
    if isinstance(node, Var):
        return f"x{node.index}"
    if isinstance(node, Add):
        return f"({render(node.left)} + {render(node.right)})"
    if isinstance(node, Mul):
        return f"({render(node.left)} * {render(node.right)})"
    if isinstance(node, Eq):
        return f"({render(node.left)} = {render(node.right)})"
    if isinstance(node, Lt):
        return f"({render(node.left)} < {render(node.right)})"
    if isinstance(node, Not):
        return f"!{render(node.body)}"
    if isinstance(node, And):
        return f"({render(node.left)} & {render(node.right)})"
    if isinstance(node, Or):
        return f"({render(node.left)} | {render(node.right)})"
    if isinstance(node, Implies):
        return f"({render(node.left)} -> {render(node.right)})"
    if isinstance(node, ForAll):
        return f"forall x{node.var} ({render(node.body)})"
    if isinstance(node, Exists):
        return f"exists x{node.var} ({render(node.body)})"
    raise TypeError(f"not an AST node: {node!r}")


def ast_text(node):
    """Compact constructor-style rendering of an AST, e.g. Eq(Zero, Zero)."""
    if isinstance(node, (Zero, One)):
        return type(node).__name__
    if isinstance(node, Var):
        return f"Var({node.index})"
    if isinstance(node, (Add, Mul, Eq, Lt, And, Or, Implies)):
        name = type(node).__name__
        return f"{name}({ast_text(node.left)}, {ast_text(node.right)})"
    if isinstance(node, Not):
        return f"Not({ast_text(node.body)})"
    if isinstance(node, (ForAll, Exists)):
        return f"{type(node).__name__}({node.var}, {ast_text(node.body)})"
    raise TypeError(f"not an AST node: {node!r}")


_JSON_KIND = {
    Zero: "zero", One: "one", Var: "var", Add: "add", Mul: "mul",
    Eq: "eq", Lt: "lt", Not: "not", And: "and", Or: "or",
    Implies: "implies", ForAll: "forall", Exists: "exists",
}


def to_json(node):
    """Tagged-union JSON export with fields "kind" and "args"."""
    kind = _JSON_KIND[type(node)]
    if isinstance(node, (Zero, One)):
        args = []
    elif isinstance(node, Var):
        args = [node.index]
    elif isinstance(node, Not):
        args = [to_json(node.body)]
    elif isinstance(node, (ForAll, Exists)):
        args = [node.var, to_json(node.body)]
    else:
        args = [to_json(node.left), to_json(node.right)]
    return {"kind": kind, "args": args}


# ---------------------------------------------------------------------------
# Variables and substitution
# ---------------------------------------------------------------------------


def term_vars(t):
    """All variable indices occurring in a term."""
    if isinstance(t, Var):
        return {t.index}
    if isinstance(t, (Add, Mul)):
        return term_vars(t.left) | term_vars(t.right)
    return set()


def free_vars(f):
    """Variable indices with at least one free occurrence; empty iff sentence."""
    if isinstance(f, Term):
        return term_vars(f)
    if isinstance(f, (Eq, Lt)):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (ForAll, Exists)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not an AST node: {f!r}")


def _all_vars(f):
    if isinstance(f, Term):
        return term_vars(f)
    if isinstance(f, (Eq, Lt)):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return _all_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return _all_vars(f.left) | _all_vars(f.right)
    return _all_vars(f.body) | {f.var}


def _fresh_index(used):
    i = 0
    while i in used:
        i += 1
    return i


def _term_subst(t, v, repl):
    if isinstance(t, Var):
        return repl if t.index == v else t
    if isinstance(t, Add):
        return Add(_term_subst(t.left, v, repl), _term_subst(t.right, v, repl))
    if isinstance(t, Mul):
        return Mul(_term_subst(t.left, v, repl), _term_subst(t.right, v, repl))
    return t


def substitute(f, v, t):
    """Capture-avoiding substitution of term t for free occurrences of x_v.

    When a quantifier would capture a variable of t, its bound variable is
    renamed to the smallest index unused in both operands.
    """
    if isinstance(f, (Eq, Lt)):
        return type(f)(_term_subst(f.left, v, t), _term_subst(f.right, v, t))
    if isinstance(f, Not):
        return Not(substitute(f.body, v, t))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(substitute(f.left, v, t), substitute(f.right, v, t))
    if isinstance(f, (ForAll, Exists)):
        if f.var == v or v not in free_vars(f.body):
            return f
        if f.var in term_vars(t):
            fresh = _fresh_index(_all_vars(f.body) | term_vars(t) | {f.var})
            body = substitute(f.body, f.var, Var(fresh))
            return type(f)(fresh, substitute(body, v, t))
        return type(f)(f.var, substitute(f.body, v, t))
    raise TypeError(f"not a formula: {f!r}")


def induction_instance(phi, x, params):
    """Instance of the induction schema for phi with induction variable x_x
    and parameter variables params (universally closed, outermost first)."""
    if x in params:
        raise InvalidSchemaVariables(
            f"induction variable x{x} also appears in the parameter list"
        )
    if len(set(params)) != len(params):
        raise InvalidSchemaVariables("duplicate parameter variables")
    base = substitute(phi, x, Zero())
    step = ForAll(x, Implies(phi, substitute(phi, x, Add(Var(x), One()))))
    out = Implies(And(base, step), ForAll(x, phi))
    for p in reversed(list(params)):
        out = ForAll(p, out)
    return out


# ---------------------------------------------------------------------------
# Prenex classification
# ---------------------------------------------------------------------------


def _guard_bound(guard, v):
    """Recognize v < t (strict) or v < t | v = t / v = t | v < t (inclusive)."""
    if isinstance(guard, Lt) and guard.left == Var(v):
        return guard.right, False
    if isinstance(guard, Or):
        a, b = guard.left, guard.right
        if (isinstance(a, Lt) and isinstance(b, Eq)
                and a.left == Var(v) and b.left == Var(v) and a.right == b.right):
            return a.right, True
        if (isinstance(a, Eq) and isinstance(b, Lt)
                and a.left == Var(v) and b.left == Var(v) and a.right == b.right):
            return b.right, True
    return None


def _bounded_parts(f):
    """Decompose bounded-quantifier sugar: returns (var, bound term,
    inclusive, matrix) or None.  Patterns: forall v (v<t -> psi) and
    exists v (v<t & psi), plus their v<=t variants, with v not free in t."""
    if isinstance(f, ForAll) and isinstance(f.body, Implies):
        guard, matrix = f.body.left, f.body.right
    elif isinstance(f, Exists) and isinstance(f.body, And):
        guard, matrix = f.body.left, f.body.right
    else:
        return None
    g = _guard_bound(guard, f.var)
    if g is None:
        return None
    t, inclusive = g
    if f.var in term_vars(t):
        return None
    return f.var, t, inclusive, matrix


def _check_matrix(f):
    bp = _bounded_parts(f)
    if bp is not None:
        _check_matrix(bp[3])
        return
    if isinstance(f, (ForAll, Exists)):
        raise NotPrenex("unbounded quantifier occurs under a connective")
    if isinstance(f, Not):
        _check_matrix(f.body)
    elif isinstance(f, (And, Or, Implies)):
        _check_matrix(f.left)
        _check_matrix(f.right)


def classify_prenex(f):
    """Sigma/Pi level of a prenex formula, counting maximal alternating
    blocks of unbounded quantifiers; bounded-quantifier sugar belongs to the
    matrix.  Quantifier-free formulas are Sigma(0) (= Pi(0)) by convention."""
    blocks = []
    g = f
    while isinstance(g, (ForAll, Exists)) and _bounded_parts(g) is None:
        kind = "E" if isinstance(g, Exists) else "A"
        if not blocks or blocks[-1] != kind:
            blocks.append(kind)
        g = g.body
    _check_matrix(g)
    if not blocks:
        return QuantClass("Sigma", 0)
    return QuantClass("Sigma" if blocks[0] == "E" else "Pi", len(blocks))


# ---------------------------------------------------------------------------
# Evaluation over the standard model
# ---------------------------------------------------------------------------


def eval_term(t, env):
    """Value of a term under env (variable index -> natural)."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Var):
        try:
            return env[t.index]
        except KeyError:
            raise UnboundVariable(f"x{t.index} is not bound") from None
    if isinstance(t, Add):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Mul):
        return eval_term(t.left, env) * eval_term(t.right, env)
    raise TypeError(f"not a term: {t!r}")


_VECTORIZE_MIN = 32
_INT64_LIMIT = 2 ** 62


def _quantifier_free(f):
    if isinstance(f, (Eq, Lt)):
        return True
    if isinstance(f, Not):
        return _quantifier_free(f.body)
    if isinstance(f, (And, Or, Implies)):
        return _quantifier_free(f.left) and _quantifier_free(f.right)
    return False


def _term_upper_bound(t, v, vmax, env):
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Var):
        if t.index == v:
            return vmax
        try:
            return env[t.index]
        except KeyError:
            raise UnboundVariable(f"x{t.index} is not bound") from None
    if isinstance(t, Add):
        return (_term_upper_bound(t.left, v, vmax, env)
                + _term_upper_bound(t.right, v, vmax, env))
    return (_term_upper_bound(t.left, v, vmax, env)
            * _term_upper_bound(t.right, v, vmax, env))


def _fits_int64(f, v, vmax, env):
    if isinstance(f, (Eq, Lt)):
        return (_term_upper_bound(f.left, v, vmax, env) < _INT64_LIMIT
                and _term_upper_bound(f.right, v, vmax, env) < _INT64_LIMIT)
    if isinstance(f, Not):
        return _fits_int64(f.body, v, vmax, env)
    return (_fits_int64(f.left, v, vmax, env)
            and _fits_int64(f.right, v, vmax, env))


def _vec_term(t, env, v, vals):
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Var):
        return vals if t.index == v else env[t.index]
    if isinstance(t, Add):
        return _vec_term(t.left, env, v, vals) + _vec_term(t.right, env, v, vals)
    return _vec_term(t.left, env, v, vals) * _vec_term(t.right, env, v, vals)


def _vec_formula(f, env, v, vals):
    if isinstance(f, Eq):
        return np.asarray(_vec_term(f.left, env, v, vals)
                          == _vec_term(f.right, env, v, vals))
    if isinstance(f, Lt):
        return np.asarray(_vec_term(f.left, env, v, vals)
                          < _vec_term(f.right, env, v, vals))
    if isinstance(f, Not):
        return ~_vec_formula(f.body, env, v, vals)
    if isinstance(f, And):
        return _vec_formula(f.left, env, v, vals) & _vec_formula(f.right, env, v, vals)
    if isinstance(f, Or):
        return _vec_formula(f.left, env, v, vals) | _vec_formula(f.right, env, v, vals)
    return (~_vec_formula(f.left, env, v, vals)) | _vec_formula(f.right, env, v, vals)


_VECTOR_CHUNK = 1 << 20


def _eval_over_range(matrix, v, count, env, budget, universal):
    # Exact check over v in 0..count-1; the numpy path is a fast path only,
    # guarded so that every term value fits in int64 and chunked so memory
    # stays bounded for large bounds.
    if (count > _VECTORIZE_MIN and _quantifier_free(matrix)
            and _fits_int64(matrix, v, count - 1, env)):
        for lo in range(0, count, _VECTOR_CHUNK):
            vals = np.arange(lo, min(lo + _VECTOR_CHUNK, count), dtype=np.int64)
            res = np.asarray(_vec_formula(matrix, env, v, vals))
            if universal and not bool(res.all()):
                return False
            if not universal and bool(res.any()):
                return True
        return universal
    env2 = dict(env)
    for val in range(count):
        env2[v] = val
        r = eval_nat(matrix, env2, budget)
        if universal and not r:
            return False
        if not universal and r:
            return True
    return universal


def eval_nat(f, env, budget):
    """Truth value of f in the standard model under env.

    Bounded-quantifier sugar is evaluated exactly.  A genuinely unbounded
    quantifier is searched over 0..budget: a universal falsified or an
    existential witnessed within the range returns exactly; otherwise
    BudgetExceeded is raised (the search was inconclusive, never a value).
    """
    if isinstance(f, Eq):
        return eval_term(f.left, env) == eval_term(f.right, env)
    if isinstance(f, Lt):
        return eval_term(f.left, env) < eval_term(f.right, env)
    if isinstance(f, Not):
        return not eval_nat(f.body, env, budget)
    if isinstance(f, And):
        return eval_nat(f.left, env, budget) and eval_nat(f.right, env, budget)
    if isinstance(f, Or):
        return eval_nat(f.left, env, budget) or eval_nat(f.right, env, budget)
    if isinstance(f, Implies):
        if not eval_nat(f.left, env, budget):
            return True
        return eval_nat(f.right, env, budget)
    if isinstance(f, (ForAll, Exists)):
        universal = isinstance(f, ForAll)
        bp = _bounded_parts(f)
        if bp is not None:
            v, t, inclusive, matrix = bp
            count = eval_term(t, env) + (1 if inclusive else 0)
            return _eval_over_range(matrix, v, count, env, budget, universal)
        env2 = dict(env)
        for val in range(budget + 1):
            env2[f.var] = val
            r = eval_nat(f.body, env2, budget)
            if universal and not r:
                return False
            if not universal and r:
                return True
        raise BudgetExceeded(
            f"quantifier search over x{f.var} inconclusive within budget {budget}"
        )
    raise TypeError(f"not a formula: {f!r}")


def euclid_div(b, a):
    """The unique pair (s, r) with b == a*s + r and r < a; a must be nonzero."""
    if a == 0:
        raise DivisionByZero("division by zero")
    return divmod(b, a)
