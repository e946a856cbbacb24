"""A deliberately naive evaluator, written independently of wpcl.semantics.

No memoization, no shared helpers from the package beyond the AST classes;
covers and splits come straight from itertools.
"""

import itertools

from wpcl.logic import (
    TRUE, And, Atom, Close, Coalesce, Const, Implies, Inter, Neg, Not, Oplus, Or,
    Otimes, PclClose, Star, Top, Union, Uplus,
)


def sat_i(alpha, f):
    if isinstance(f, Top):
        return True
    if isinstance(f, Atom):
        return f.port in alpha
    if isinstance(f, Neg):
        return not sat_i(alpha, f.child)
    if isinstance(f, Or):
        return sat_i(alpha, f.left) or sat_i(alpha, f.right)
    if isinstance(f, And):
        return sat_i(alpha, f.left) and sat_i(alpha, f.right)
    raise TypeError(f)


def sat(gamma, f):
    if isinstance(f, (Top, Atom, Neg, Or, And)):
        return all(sat_i(a, f) for a in gamma)
    if isinstance(f, Not):
        return not sat(gamma, f.child)
    if isinstance(f, Union):
        return sat(gamma, f.left) or sat(gamma, f.right)
    if isinstance(f, Inter):
        return sat(gamma, f.left) and sat(gamma, f.right)
    if isinstance(f, Implies):
        return (not sat(gamma, f.left)) or sat(gamma, f.right)
    if isinstance(f, (Coalesce, PclClose)):
        left = f.left if isinstance(f, Coalesce) else f.child
        right = f.right if isinstance(f, Coalesce) else TRUE
        items = list(gamma)
        # 0: left only, 1: right only, 2: both
        for assign in itertools.product((0, 1, 2), repeat=len(items)):
            g1 = frozenset(a for a, s in zip(items, assign) if s != 1)
            g2 = frozenset(a for a, s in zip(items, assign) if s != 0)
            if g1 and g2 and sat(g1, left) and sat(g2, right):
                return True
        return False
    raise TypeError(f)


def partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def evaluate(gamma, z, m):
    if isinstance(z, Const):
        return z.value
    if isinstance(z, (Top, Atom, Neg, Or, And, Not, Union, Inter, Implies, Coalesce, PclClose)):
        return m.one if sat(gamma, z) else m.zero
    if isinstance(z, Oplus):
        return m.oplus(evaluate(gamma, z.left, m), evaluate(gamma, z.right, m))
    if isinstance(z, Otimes):
        return m.otimes(evaluate(gamma, z.left, m), evaluate(gamma, z.right, m))
    if isinstance(z, Uplus):
        items = sorted(gamma, key=lambda a: sorted(a))
        out = m.zero
        for k in range(1, len(items)):
            for g1 in itertools.combinations(items, k):
                g1 = frozenset(g1)
                g2 = frozenset(gamma) - g1
                out = m.oplus(out, m.otimes(evaluate(g1, z.left, m), evaluate(g2, z.right, m)))
        return out
    if isinstance(z, Star):
        out = m.zero
        for p in partitions(list(gamma)):
            out = m.oplus(out, m.val([evaluate(frozenset(b), z.child, m) for b in p]))
        return out
    if isinstance(z, Close):
        return evaluate(gamma, Oplus(z.child, Uplus(z.child, Const(m.one))), m)
    raise TypeError(z)


def subsets_sum(gamma, z, m):
    """The sum of ``||z||`` over all nonempty subsets of gamma."""
    items = list(gamma)
    out = m.zero
    for k in range(1, len(items) + 1):
        for sub in itertools.combinations(items, k):
            out = m.oplus(out, evaluate(frozenset(sub), z, m))
    return out
