"""Prime-power Goedel coding.

Symbol codes follow the fixed table ('0'->1, '1'->2, '+'->3, '*'->4, '='->5,
'('->6, ')'->7, '->'->8, '!'->9, 'forall'->10, x_i -> 11+i); a token string
a1...an is coded as 2^#a1 * 3^#a2 * ... * p_n^#an.  Sequence codes carry a +1
exponent shift so element 0 survives; set codes use the bare exponents and
therefore exclude element 0.
"""

from __future__ import annotations

from math import isqrt

from .errors import IndexOutOfRange, NotACode, ZeroElement
from .formula import (
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Implies,
    Lt,
    Mul,
    Not,
    One,
    Or,
    Var,
    Zero,
    term_vars,
)

# ---------------------------------------------------------------------------
# Primes and the bounded search operator
# ---------------------------------------------------------------------------

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def nth_prime(n):
    """The n-th prime, zero-indexed (p_0 = 2)."""
    while len(_PRIMES) <= n:
        c = _PRIMES[-1] + 2
        while not _trial_prime(c):
            c += 2
        _PRIMES.append(c)
    return _PRIMES[n]


def _trial_prime(c):
    # _PRIMES always covers every prime up to sqrt(c) while growing one by one
    for p in _PRIMES:
        if p * p > c:
            return True
        if c % p == 0:
            return False
    return True


def bounded_mu(g, bound):
    """Least y < bound with g(y) true; bound itself when there is none."""
    for y in range(bound):
        if g(y):
            return y
    return bound


# ---------------------------------------------------------------------------
# Pairing
# ---------------------------------------------------------------------------


def pair(x, y):
    """The pairing bijection (x+y)(x+y+1)/2 + y."""
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z):
    """Inverse of pair, via triangular-number inversion."""
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


# ---------------------------------------------------------------------------
# Symbol table
# ---------------------------------------------------------------------------

SYMBOL_CODES = {
    "0": 1,
    "1": 2,
    "+": 3,
    "·": 4,
    "=": 5,
    "(": 6,
    ")": 7,
    "→": 8,
    "¬": 9,
    "∀": 10,
}

_CODE_SYMBOLS = {c: s for s, c in SYMBOL_CODES.items()}


def token_code(tok):
    if tok in SYMBOL_CODES:
        return SYMBOL_CODES[tok]
    if len(tok) > 1 and tok[0] == "x" and tok[1:].isdigit():
        return 11 + int(tok[1:])
    raise ValueError(f"unknown symbol {tok!r}")


def code_token(code):
    if code >= 11:
        return f"x{code - 11}"
    sym = _CODE_SYMBOLS.get(code)
    if sym is None:
        raise NotACode(f"{code} is not a symbol code")
    return sym


# ---------------------------------------------------------------------------
# Desugaring into the coding alphabet
# ---------------------------------------------------------------------------


def _fresh_for(t1, t2):
    used = term_vars(t1) | term_vars(t2)
    i = 0
    while i in used:
        i += 1
    return i


def desugar(f):
    """Rewrite a formula into the coding alphabet (=, ->, !, forall only):
    t1<t2 becomes !forall xk !(t1+(xk+1) = t2) with xk fresh, exists v phi
    becomes !forall v !phi, a&b becomes !(a -> !b), a|b becomes (!a -> b)."""
    if isinstance(f, Eq):
        return f
    if isinstance(f, Lt):
        k = _fresh_for(f.left, f.right)
        return Not(ForAll(k, Not(Eq(Add(f.left, Add(Var(k), One())), f.right))))
    if isinstance(f, Not):
        return Not(desugar(f.body))
    if isinstance(f, And):
        return Not(Implies(desugar(f.left), Not(desugar(f.right))))
    if isinstance(f, Or):
        return Implies(Not(desugar(f.left)), desugar(f.right))
    if isinstance(f, Implies):
        return Implies(desugar(f.left), desugar(f.right))
    if isinstance(f, ForAll):
        return ForAll(f.var, desugar(f.body))
    if isinstance(f, Exists):
        return Not(ForAll(f.var, Not(desugar(f.body))))
    raise TypeError(f"not a formula: {f!r}")


def term_tokens(t):
    if isinstance(t, Zero):
        return ["0"]
    if isinstance(t, One):
        return ["1"]
    if isinstance(t, Var):
        return [f"x{t.index}"]
    if isinstance(t, Add):
        return ["("] + term_tokens(t.left) + ["+"] + term_tokens(t.right) + [")"]
    if isinstance(t, Mul):
        return ["("] + term_tokens(t.left) + ["·"] + term_tokens(t.right) + [")"]
    raise TypeError(f"not a term: {t!r}")


def _formula_tokens(f):
    # caller must desugar first; only the coding alphabet is rendered
    if isinstance(f, Eq):
        return term_tokens(f.left) + ["="] + term_tokens(f.right)
    if isinstance(f, Not):
        return ["¬"] + _formula_tokens(f.body)
    if isinstance(f, Implies):
        return ["("] + _formula_tokens(f.left) + ["→"] + _formula_tokens(f.right) + [")"]
    if isinstance(f, ForAll):
        return ["∀", f"x{f.var}"] + _formula_tokens(f.body)
    raise ValueError(f"node outside the coding alphabet: {f!r}")


def _encode_tokens(tokens):
    code = 1
    for i, tok in enumerate(tokens):
        code *= nth_prime(i) ** token_code(tok)
    return code


def encode_formula(f):
    """Goedel code of the canonical token string of the desugared formula."""
    return _encode_tokens(_formula_tokens(desugar(f)))


def encode_term(t):
    """Goedel code of a term's token string."""
    return _encode_tokens(term_tokens(t))


def _remove_factor(a, p):
    """(a / p^e, e) for the maximal e, in O(log e) big-number divisions."""
    q, r = divmod(a, p)
    if r:
        return a, 0
    a, e = q, 1
    powers = [p]
    while True:
        pk = powers[-1] * powers[-1]
        q, r = divmod(a, pk)
        if r:
            break
        a = q
        e += 1 << len(powers)
        powers.append(pk)
    for j in range(len(powers) - 1, -1, -1):
        q, r = divmod(a, powers[j])
        if r == 0:
            a = q
            e += 1 << j
    return a, e


def _contiguous_exponents(a):
    """Exponent list of a under p_0, p_1, ...; a gap in the prime support
    (or a < 1) is NotACode."""
    if a < 1:
        raise NotACode("codes are positive")
    exps = []
    i = 0
    while a > 1:
        a, e = _remove_factor(a, nth_prime(i))
        if e == 0:
            raise NotACode(f"gap in prime support at p_{i}")
        exps.append(e)
        i += 1
    return exps


class _NoParse(Exception):
    pass


def _dec_term(toks, i):
    if i >= len(toks):
        raise _NoParse
    tok = toks[i]
    if tok == "0":
        return Zero(), i + 1
    if tok == "1":
        return One(), i + 1
    if tok[0] == "x" and len(tok) > 1:
        return Var(int(tok[1:])), i + 1
    if tok == "(":
        t1, j = _dec_term(toks, i + 1)
        if j >= len(toks) or toks[j] not in ("+", "·"):
            raise _NoParse
        op = toks[j]
        t2, k = _dec_term(toks, j + 1)
        if k >= len(toks) or toks[k] != ")":
            raise _NoParse
        node = Add(t1, t2) if op == "+" else Mul(t1, t2)
        return node, k + 1
    raise _NoParse


def _dec_atom(toks, i):
    t1, j = _dec_term(toks, i)
    if j >= len(toks) or toks[j] != "=":
        raise _NoParse
    t2, k = _dec_term(toks, j + 1)
    return Eq(t1, t2), k


def _dec_formula(toks, i):
    if i >= len(toks):
        raise _NoParse
    tok = toks[i]
    if tok == "¬":
        f, j = _dec_formula(toks, i + 1)
        return Not(f), j
    if tok == "∀":
        if i + 1 >= len(toks):
            raise _NoParse
        vtok = toks[i + 1]
        if vtok[0] != "x" or len(vtok) < 2:
            raise _NoParse
        f, j = _dec_formula(toks, i + 2)
        return ForAll(int(vtok[1:]), f), j
    if tok == "(":
        try:
            f1, j = _dec_formula(toks, i + 1)
            if j < len(toks) and toks[j] == "→":
                f2, k = _dec_formula(toks, j + 1)
                if k < len(toks) and toks[k] == ")":
                    return Implies(f1, f2), k + 1
            raise _NoParse
        except _NoParse:
            pass
    return _dec_atom(toks, i)


def decode_formula(code):
    """Inverse of encode_formula on the desugared alphabet.  NotACode on a
    prime-support gap, an unknown symbol code, or an ungrammatical string."""
    exps = _contiguous_exponents(code)
    if not exps:
        raise NotACode("the empty string is not a formula")
    toks = [code_token(e) for e in exps]
    try:
        f, j = _dec_formula(toks, 0)
    except _NoParse:
        raise NotACode("token string is not a formula") from None
    if j != len(toks):
        raise NotACode("trailing symbols after a complete formula")
    return f


# ---------------------------------------------------------------------------
# Sequence codes
# ---------------------------------------------------------------------------


def encode_seq(xs):
    """Code of a finite list: the empty list is 1, otherwise the product of
    p_i^(xs[i]+1)."""
    code = 1
    for i, x in enumerate(xs):
        if x < 0:
            raise ValueError("sequence elements must be naturals")
        code *= nth_prime(i) ** (x + 1)
    return code


def decode_seq(a):
    """Element list of a sequence code; NotACode when a is not in Seq."""
    if a == 1:
        return []
    return [e - 1 for e in _contiguous_exponents(a)]


def is_seq_code(a):
    """Membership in Seq: 1, or a > 1 with contiguous prime support."""
    if a == 1:
        return True
    if a < 1:
        return False
    try:
        _contiguous_exponents(a)
    except NotACode:
        return False
    return True


def seq_long(a):
    """Last prime index of a sequence code (length-1 for nonempty lists);
    0 for a = 1 and for non-sequence numbers."""
    if a <= 1 or not is_seq_code(a):
        return 0
    return len(_contiguous_exponents(a)) - 1


def seq_at(a, x):
    """Element x of a sequence code: the exponent of p_x, minus one."""
    if a <= 1 or not is_seq_code(a):
        raise IndexOutOfRange(f"{a} is not a nonempty sequence code")
    exps = _contiguous_exponents(a)
    if x >= len(exps):
        raise IndexOutOfRange(f"index {x} out of range for length {len(exps)}")
    return exps[x] - 1


def seq_concat(a, b):
    """Concatenation code a*b = a times prod p_(Long(a)+x+1)^((b)_x+1); the
    empty code 1 is an identity on both sides so * stays total."""
    if a == 1:
        return b
    if b == 1:
        return a
    la = seq_long(a)
    out = a
    for x in range(seq_long(b) + 1):
        out *= nth_prime(la + x + 1) ** (seq_at(b, x) + 1)
    return out


# ---------------------------------------------------------------------------
# Set codes (bare exponents, so element 0 cannot be represented)
# ---------------------------------------------------------------------------


def encode_set(xs):
    """Code of a strictly increasing list of naturals >= 1 as prod p_i^a_i.
    Element 0 would vanish from the code and is rejected."""
    prev = 0
    code = 1
    for i, x in enumerate(xs):
        if x == 0:
            raise ZeroElement("element 0 cannot be set-coded")
        if x <= prev and i > 0:
            raise ValueError("set elements must be strictly increasing")
        prev = x
        code *= nth_prime(i) ** x
    return code


def decode_set(a):
    """Exponent list of a set code (NotACode on a prime-support gap)."""
    if a == 1:
        return []
    return _contiguous_exponents(a)
