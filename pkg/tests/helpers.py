"""Shared builders for the test suite: seeded random AST generators and the
number-theory formulas used as evaluation subjects."""

from peano_forge import (
    Add,
    And,
    BoundedMu,
    Comp,
    Eq,
    Exists,
    ForAll,
    Implies,
    Lt,
    Mul,
    Not,
    One,
    Or,
    PrimRec,
    Proj,
    Succ,
    Var,
    Zero,
    ZeroFn,
    arity,
)


def random_term(rng, depth, max_var=3):
    if depth <= 0:
        return rng.choice([Zero(), One(), Var(rng.randrange(max_var + 1))])
    kind = rng.randrange(5)
    if kind == 0:
        return Zero()
    if kind == 1:
        return One()
    if kind == 2:
        return Var(rng.randrange(max_var + 1))
    left = random_term(rng, depth - 1, max_var)
    right = random_term(rng, depth - 1, max_var)
    return Add(left, right) if kind == 3 else Mul(left, right)


def random_formula(rng, depth, max_var=3):
    if depth <= 0:
        t1 = random_term(rng, 1, max_var)
        t2 = random_term(rng, 1, max_var)
        return Eq(t1, t2) if rng.random() < 0.5 else Lt(t1, t2)
    kind = rng.randrange(8)
    if kind == 0:
        return Eq(random_term(rng, depth, max_var), random_term(rng, depth, max_var))
    if kind == 1:
        return Lt(random_term(rng, depth, max_var), random_term(rng, depth, max_var))
    if kind == 2:
        return Not(random_formula(rng, depth - 1, max_var))
    if kind in (3, 4, 5):
        ctor = (And, Or, Implies)[kind - 3]
        return ctor(random_formula(rng, depth - 1, max_var),
                    random_formula(rng, depth - 1, max_var))
    ctor = ForAll if kind == 6 else Exists
    return ctor(rng.randrange(max_var + 1), random_formula(rng, depth - 1, max_var))


def le_guard(v, t):
    """The v <= t bounded-quantifier guard, written as v < t | v = t."""
    return Or(Lt(Var(v), t), Eq(Var(v), t))


def divides_formula(x_var, y_var, z_var):
    """x | y as exists z <= y (x*z = y)."""
    return Exists(z_var, And(le_guard(z_var, Var(y_var)),
                             Eq(Mul(Var(x_var), Var(z_var)), Var(y_var))))


def prim_formula():
    """Primality of x0: x0 != 0 and x0 != 1 and every divisor below it is
    itself or 1 (divisor variable x1, product witness x2)."""
    body = Implies(divides_formula(1, 0, 2),
                   Or(Eq(Var(0), Var(1)), Eq(Var(1), One())))
    return And(Not(Eq(Var(0), Zero())),
               And(Not(Eq(Var(0), One())),
                   ForAll(1, Implies(le_guard(1, Var(0)), body))))


def irred_formula():
    """Irreducibility of x0 over divisors >= 1: every such divisor is 1 or
    x0 itself; the divisor search is bounded by x0."""
    body = Implies(Lt(Zero(), Var(1)),
                   Implies(divides_formula(1, 0, 2),
                           Or(Eq(Var(1), One()), Eq(Var(1), Var(0)))))
    return ForAll(1, Implies(le_guard(1, Var(0)), body))


def sieve(limit):
    """Primality table for 0..limit by the classic sieve."""
    flags = [True] * (limit + 1)
    flags[0] = False
    if limit >= 1:
        flags[1] = False
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            for j in range(i * i, limit + 1, i):
                flags[j] = False
    return flags


def random_prdef(rng, target_arity, depth):
    """A random Mu-free definition of the requested arity."""
    if depth <= 0 or rng.random() < 0.3:
        if target_arity == 1 and rng.random() < 0.5:
            return rng.choice([ZeroFn(), Succ()])
        return Proj(rng.randint(1, target_arity), target_arity)
    kind = rng.randrange(3)
    if kind == 0:
        inner_arity = rng.randint(1, 3)
        f = random_prdef(rng, inner_arity, depth - 1)
        gs = tuple(random_prdef(rng, target_arity, depth - 1)
                   for _ in range(inner_arity))
        return Comp(f, gs)
    if kind == 1 and target_arity >= 2:
        base = random_prdef(rng, target_arity - 1, depth - 1)
        step = random_prdef(rng, target_arity + 1, depth - 1)
        return PrimRec(base, step)
    return BoundedMu(random_prdef(rng, target_arity + 1, depth - 1))


def random_valid_prdef(rng, depth=3):
    while True:
        d = random_prdef(rng, rng.randint(1, 3), depth)
        try:
            arity(d)
        except Exception:
            continue
        return d
