"""Exact extended rationals and product valuation monoids.

Finite values are :class:`fractions.Fraction`; the two infinities are the
singletons :data:`POS_INF` and :data:`NEG_INF`, which order and add correctly
against fractions.  The three builtin monoids are

====================  =====  =====  =====  ======  ======
name                  oplus  val    otimes  zero    one
====================  =====  =====  =====  ======  ======
``max-avg-plus``      max    avg    +       -inf    0
``min-avg-plus``      min    avg    +       +inf    0
``min-maj-max``       min    maj    max     +inf    -inf
====================  =====  =====  =====  ======  ======
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field, fields
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Iterable, Sequence, Union

from .errors import UsageError


@total_ordering
class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __neg__(self):
        return POS_INF if self.sign < 0 else NEG_INF

    def __add__(self, other):
        if isinstance(other, _Infinity):
            if other.sign != self.sign:
                raise ArithmeticError("inf + -inf is undefined")
            return self
        if isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (_infinity, (self.sign,))


def _infinity(sign):
    return POS_INF if sign > 0 else NEG_INF


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)

ExtValue = Union[Fraction, _Infinity]

_VALUE_RE = re.compile(r"\s*([+-]?)(?:(inf)|(\d+)(?:\s*/\s*(\d+))?)\s*\Z")


def is_infinite(v):
    return isinstance(v, _Infinity)


def value(x) -> ExtValue:
    """Coerce ``x`` to an exact extended value.

    Accepts ints, fractions, the infinity singletons, and literal text
    (``4``, ``3/2``, ``-5/3``, ``inf``, ``-inf``).  Floats are rejected.
    """
    if isinstance(x, _Infinity):
        return x
    if isinstance(x, bool):
        raise UsageError(f"not a value: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_value(x)
    raise UsageError(f"not an exact value: {x!r}")


def parse_value(text: str) -> ExtValue:
    m = _VALUE_RE.match(text)
    if m is None:
        raise UsageError(f"malformed value literal {text!r}")
    sign, inf, num, den = m.groups()
    if inf:
        return NEG_INF if sign == "-" else POS_INF
    if den is not None and int(den) == 0:
        raise UsageError(f"zero denominator in {text!r}")
    v = Fraction(int(num), int(den) if den else 1)
    return -v if sign == "-" else v


def format_value(v: ExtValue) -> str:
    return str(v)


def add(a, b):
    """Extended addition; ``inf + -inf`` raises ArithmeticError."""
    return a + b


def avg(args: Sequence[ExtValue]) -> ExtValue:
    total = Fraction(0)
    for a in args:
        total = total + a
    if isinstance(total, _Infinity):
        return total
    return total / len(args)


def maj(args: Sequence[ExtValue]) -> ExtValue:
    """Greatest value among the most frequent ones."""
    counts = Counter(args)
    top = max(counts.values())
    return max(v for v, c in counts.items() if c == top)


@dataclass(frozen=True)
class Flags:
    idempotent: bool = False
    val_symmetric: bool = False
    otimes_commutative: bool = False
    otimes_associative: bool = False
    left_oplus_distributive: bool = False
    right_oplus_distributive: bool = False
    left_val_distributive: bool = False
    oplus_preservative: bool = False

    def names(self):
        return [f.name for f in fields(self)]

    def true_flags(self):
        return [n for n in self.names() if getattr(self, n)]


# Flags the normal-form construction and the equivalence decider rely on.
NORMAL_FORM_FLAGS = (
    "idempotent",
    "val_symmetric",
    "otimes_commutative",
    "otimes_associative",
    "left_oplus_distributive",
    "right_oplus_distributive",
)


@dataclass(frozen=True)
class PvMonoid:
    """An operation bundle ``(D, oplus, val, otimes, zero, one)``.

    ``raw_val`` only ever sees argument lists of length >= 2 that contain no
    ``zero``; :meth:`val` adds the valuation-monoid axioms around it.  Flags
    are declarations, trusted by the engine; :func:`verify_flags` samples them.
    """

    name: str
    zero: ExtValue
    one: ExtValue
    oplus: Callable[[ExtValue, ExtValue], ExtValue]
    otimes: Callable[[ExtValue, ExtValue], ExtValue]
    raw_val: Callable[[Sequence[ExtValue]], ExtValue]
    flags: Flags = field(default_factory=Flags)
    carrier: tuple = ()  # infinities belonging to D, used for sampling

    def val(self, args: Iterable[ExtValue]) -> ExtValue:
        return val_apply(self, args)

    def oplus_fold(self, args: Iterable[ExtValue]) -> ExtValue:
        return oplus_fold(self, args)

    def otimes_fold(self, args: Iterable[ExtValue]) -> ExtValue:
        out = self.one
        for a in args:
            out = self.otimes(out, a)
        return out

    def missing_flags(self, required=NORMAL_FORM_FLAGS):
        return [n for n in required if not getattr(self.flags, n)]

    def __repr__(self):
        return f"PvMonoid({self.name!r})"


def in_carrier(m: PvMonoid, v: ExtValue) -> bool:
    """Finite values always belong to D; an infinity only if the monoid has it."""
    return not is_infinite(v) or v == m.zero or v == m.one or v in m.carrier


def val_apply(m: PvMonoid, args: Iterable[ExtValue]) -> ExtValue:
    args = list(args)
    if not args:
        raise UsageError("val needs at least one argument")
    if any(a == m.zero for a in args):
        return m.zero
    if len(args) == 1:
        return args[0]
    return m.raw_val(args)


def oplus_fold(m: PvMonoid, args: Iterable[ExtValue]) -> ExtValue:
    out = m.zero
    for a in args:
        out = m.oplus(out, a)
    return out


_AVG_FLAGS = Flags(
    idempotent=True,
    val_symmetric=True,
    otimes_commutative=True,
    otimes_associative=True,
    left_oplus_distributive=True,
    right_oplus_distributive=True,
    left_val_distributive=True,
    oplus_preservative=True,
)

MAX_AVG_PLUS = PvMonoid("max-avg-plus", NEG_INF, Fraction(0), max, add, avg, _AVG_FLAGS, (NEG_INF,))
MIN_AVG_PLUS = PvMonoid("min-avg-plus", POS_INF, Fraction(0), min, add, avg, _AVG_FLAGS, (POS_INF,))
MIN_MAJ_MAX = PvMonoid(
    "min-maj-max",
    POS_INF,
    NEG_INF,
    min,
    max,
    maj,
    Flags(
        idempotent=True,
        val_symmetric=True,
        otimes_commutative=True,
        otimes_associative=True,
        left_oplus_distributive=True,
        right_oplus_distributive=True,
        # not left-val-distributive: max(2, maj(0,1,3)) = 3 but maj(2,2,3) = 2
        left_val_distributive=False,
        oplus_preservative=False,
    ),
    (POS_INF, NEG_INF),
)

_REGISTRY = {m.name: m for m in (MAX_AVG_PLUS, MIN_AVG_PLUS, MIN_MAJ_MAX)}
BUILTIN_NAMES = tuple(_REGISTRY)


def builtin_monoid(name: str) -> PvMonoid:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UsageError(
            f"unknown monoid {name!r}; expected one of {', '.join(sorted(_REGISTRY))}"
        ) from None


def register_monoid(m: PvMonoid, replace=False):
    """Make a custom monoid reachable by name (e.g. from the CLI)."""
    if m.name in _REGISTRY and not replace:
        raise UsageError(f"monoid {m.name!r} already registered")
    _REGISTRY[m.name] = m


def unregister_monoid(name: str):
    if name in BUILTIN_NAMES:
        raise UsageError(f"cannot unregister builtin monoid {name!r}")
    _REGISTRY.pop(name, None)


def sample_values(m: PvMonoid, rng: random.Random, n: int, span=6, den=4):
    """Random carrier elements: small rationals, ``zero``, ``one`` and infinities."""
    special = [m.zero, m.one, *m.carrier]
    out = []
    for _ in range(n):
        if rng.random() < 0.2:
            out.append(rng.choice(special))
        else:
            out.append(Fraction(rng.randint(-span * den, span * den), rng.randint(1, den)))
    return out


def _flag_checks(m: PvMonoid):
    o, t, v = m.oplus, m.otimes, m.val
    return {
        "idempotent": lambda a, b, c: o(a, a) == a,
        "val_symmetric": lambda a, b, c: v([a, b, c]) == v([c, a, b]) == v([b, c, a]),
        "otimes_commutative": lambda a, b, c: t(a, b) == t(b, a),
        "otimes_associative": lambda a, b, c: t(t(a, b), c) == t(a, t(b, c)),
        "left_oplus_distributive": lambda a, b, c: t(a, o(b, c)) == o(t(a, b), t(a, c)),
        "right_oplus_distributive": lambda a, b, c: t(o(b, c), a) == o(t(b, a), t(c, a)),
        "left_val_distributive": lambda a, b, c: (
            t(a, v([b, c])) == v([t(a, b), t(a, c)])
            and t(a, v([b, c, b])) == v([t(a, b), t(a, c), t(a, b)])
            and t(a, v([a, b, c])) == v([t(a, a), t(a, b), t(a, c)])
        ),
        "oplus_preservative": lambda a, b, c: (
            v([o(b, c), a]) == o(v([b, a]), v([c, a]))
            and v([a, o(b, c)]) == o(v([a, b]), v([a, c]))
        ),
    }


def _axiom_checks(m: PvMonoid):
    o, t, v, z, e = m.oplus, m.otimes, m.val, m.zero, m.one
    return {
        "oplus_commutative": lambda a, b, c: o(a, b) == o(b, a),
        "oplus_associative": lambda a, b, c: o(o(a, b), c) == o(a, o(b, c)),
        "oplus_identity": lambda a, b, c: o(a, z) == a == o(z, a),
        "val_singleton": lambda a, b, c: v([a]) == a,
        "val_zero_absorbing": lambda a, b, c: v([a, z, b]) == z and v([z]) == z,
        "val_of_ones": lambda a, b, c: all(v([e] * n) == e for n in (1, 2, 3, 5)),
        "otimes_zero": lambda a, b, c: t(z, a) == z == t(a, z),
        "otimes_one": lambda a, b, c: t(e, a) == a == t(a, e),
    }


def verify_flags(m: PvMonoid, samples=200, seed=0, axioms=True):
    """Sample ``samples`` value triples; return {property: counterexample}.

    Only flags declared true are checked (plus the pv-monoid axioms when
    ``axioms``).  An empty dict means no counterexample was found.
    """
    rng = random.Random(seed)
    checks = {}
    if axioms:
        checks.update(_axiom_checks(m))
    flag_checks = _flag_checks(m)
    checks.update({n: flag_checks[n] for n in m.flags.true_flags()})
    failures = {}
    for _ in range(samples):
        a, b, c = sample_values(m, rng, 3)
        for name, check in checks.items():
            if name in failures:
                continue
            try:
                ok = check(a, b, c)
            except ArithmeticError:
                ok = False
            if not ok:
                failures[name] = (a, b, c)
    return failures
