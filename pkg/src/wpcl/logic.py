"""Ports, interactions, configurations and the formula ASTs.

Interactions are ``frozenset``s of port names and configurations are
``frozenset``s of interactions, so structural equality is set equality.

Formula layers share node classes where the grammars overlap:

* PIL: :class:`Top`, :class:`Atom`, :class:`Neg`, :class:`Or` (+ derived :class:`And`)
* PCL: any PIL formula, :class:`Not`, :class:`Union`, :class:`Coalesce`
  (+ derived :class:`Inter`, :class:`Implies`, :class:`PclClose`)
* wPIL: :class:`Const`, any PIL formula, :class:`Oplus`, :class:`Otimes`
* wPCL: :class:`Const`, any PCL formula, :class:`Oplus`, :class:`Otimes`,
  :class:`Uplus`, :class:`Star` (+ derived :class:`Close`, :class:`FullVal`)

PCL ``true`` and PIL ``true`` are the same node (:data:`TRUE`): they have the
same meaning on every configuration.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, Tuple

from .errors import DomainError, ResourceLimitError, UsageError
from .pvm import ExtValue, value

Interaction = FrozenSet[str]
Configuration = FrozenSet[Interaction]
Ports = Tuple[str, ...]

_PORT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED = frozenset(
    {"true", "false", "neg", "U", "inf", "w", "star", "close", "fullval", "ports"}
)


# ---------------------------------------------------------------------------
# domain


def make_ports(names: "str | Iterable[str]") -> Ports:
    """Validate a port set; accepts ``"p,q"`` or an iterable of names."""
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",") if n.strip()]
    names = list(names)
    if not names:
        raise UsageError("port set must be nonempty")
    for n in names:
        if not isinstance(n, str) or not _PORT_RE.match(n) or n in RESERVED:
            raise UsageError(f"invalid port name {n!r}")
    if len(set(names)) != len(names):
        raise UsageError(f"duplicate port names in {names}")
    return tuple(sorted(names))


def interaction_key(alpha: Interaction):
    return tuple(sorted(alpha))


def config_key(gamma: Configuration):
    return tuple(sorted(interaction_key(a) for a in gamma))


def interaction(*ports: str) -> Interaction:
    if not ports:
        raise DomainError("interaction must be nonempty")
    return frozenset(ports)


def configuration(*alphas: Iterable[str]) -> Configuration:
    """``configuration({"p"}, {"q", "r"})`` -> ``{{p},{q,r}}``."""
    out = frozenset(frozenset(a) for a in alphas)
    if not out:
        raise DomainError("configuration must be nonempty")
    if any(not a for a in out):
        raise DomainError("interaction must be nonempty")
    return out


def check_configuration(gamma: Configuration, ports: Ports):
    if not gamma:
        raise DomainError("configuration must be nonempty")
    allowed = set(ports)
    for a in gamma:
        if not a:
            raise DomainError("interaction must be nonempty")
        extra = set(a) - allowed
        if extra:
            raise DomainError(f"unknown port(s) {sorted(extra)} in interaction {sorted(a)}")


def all_interactions(ports: Ports) -> list:
    """I(P) in canonical order."""
    ports = tuple(sorted(ports))
    out = []
    for k in range(1, len(ports) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(ports, k))
    return sorted(out, key=interaction_key)


def count_configurations(n_ports: int) -> int:
    """|C(P)| = 2^(2^n - 1) - 1."""
    return 2 ** (2**n_ports - 1) - 1


def nonempty_subsets(items) -> Iterator[frozenset]:
    items = list(items)
    for mask in range(1, 1 << len(items)):
        yield frozenset(items[i] for i in range(len(items)) if mask >> i & 1)


def all_configurations(ports: Ports, port_limit: int = 4) -> list:
    """C(P) in canonical order; guarded by ``port_limit``."""
    if len(ports) > port_limit:
        raise ResourceLimitError(
            f"enumerating C(P) for {len(ports)} ports", len(ports), port_limit, "--port-limit"
        )
    return sorted(nonempty_subsets(all_interactions(ports)), key=config_key)


# ---------------------------------------------------------------------------
# PIL


class Formula:
    """Marker base for every AST node."""

    __slots__ = ()


class Pil(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class Top(Pil):
    pass


TRUE = Top()


@dataclass(frozen=True)
class Atom(Pil):
    port: str


@dataclass(frozen=True)
class Neg(Pil):
    """PIL negation.  ``Neg(Neg(x))`` *is* ``x``."""

    child: Pil

    def __new__(cls, child):
        if isinstance(child, Neg):
            return child.child
        return super().__new__(cls)


FALSE = Neg(TRUE)


@dataclass(frozen=True)
class Or(Pil):
    left: Pil
    right: Pil


@dataclass(frozen=True)
class And(Pil):
    """Derived: ``a . b`` stands for ``!(!a | !b)``."""

    left: Pil
    right: Pil


# ---------------------------------------------------------------------------
# PCL


class Pcl(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class Not(Pcl):
    child: Formula


@dataclass(frozen=True)
class Union(Pcl):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Coalesce(Pcl):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Inter(Pcl):
    """Derived: ``f ^ g`` stands for ``neg (neg f U neg g)``."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Pcl):
    """Derived: ``f => g`` stands for ``neg f U g``."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class PclClose(Pcl):
    """Derived: ``close(f)`` stands for ``f + true``."""

    child: Formula


# ---------------------------------------------------------------------------
# weighted


class Weighted(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class Const(Weighted):
    value: ExtValue

    def __post_init__(self):
        object.__setattr__(self, "value", value(self.value))


@dataclass(frozen=True)
class Oplus(Weighted):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Otimes(Weighted):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Uplus(Weighted):
    """Weighted coalescing: split into two disjoint nonempty parts."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Star(Weighted):
    """Valuation operator: val over every partition of the configuration."""

    child: Formula


@dataclass(frozen=True)
class Close(Weighted):
    """Derived: ``close(z)`` stands for ``z (+) (z (#) w(1))``."""

    child: Formula


@dataclass(frozen=True)
class FullVal(Weighted):
    """Full valuation: ``star(z)`` restricted to the coalescing of z's normal-form terms.

    Derived, but expanding it needs the normal form of the child, hence a
    port set and a monoid.
    """

    child: Formula


PIL_TYPES = (Top, Atom, Neg, Or, And)
PCL_TYPES = (Not, Union, Coalesce, Inter, Implies, PclClose)
WEIGHTED_TYPES = (Const, Oplus, Otimes, Uplus, Star, Close, FullVal)
DERIVED_TYPES = (And, Inter, Implies, PclClose, Close, FullVal)


def is_pil(f) -> bool:
    return isinstance(f, Pil)


def is_pcl(f) -> bool:
    """True for PIL and PCL formulas (PIL formulas are PCL formulas)."""
    return isinstance(f, (Pil, Pcl))


def is_wpil(f) -> bool:
    if isinstance(f, (Const, Pil)):
        return True
    if isinstance(f, (Oplus, Otimes)):
        return is_wpil(f.left) and is_wpil(f.right)
    return False


def children(f):
    if isinstance(f, (Top, Atom, Const)):
        return ()
    if isinstance(f, (Neg, Not, PclClose, Star, Close, FullVal)):
        return (f.child,)
    return (f.left, f.right)


def ports_of(f) -> set:
    if isinstance(f, Atom):
        return {f.port}
    out = set()
    for c in children(f):
        out |= ports_of(c)
    return out


def depth(f) -> int:
    cs = children(f)
    return 0 if not cs else 1 + max(depth(c) for c in cs)


def size(f) -> int:
    return 1 + sum(size(c) for c in children(f))


# ---------------------------------------------------------------------------
# monomials


@dataclass(frozen=True)
class FullMonomial:
    positives: frozenset
    negatives: frozenset

    def __post_init__(self):
        if self.positives & self.negatives:
            raise DomainError("full monomial has a port both positive and negative")
        if not self.positives:
            raise DomainError("full monomial with no positive port matches no interaction")

    @property
    def ports(self) -> Ports:
        return tuple(sorted(self.positives | self.negatives))

    def formula(self) -> Pil:
        lits = [Atom(p) for p in sorted(self.positives)]
        lits += [Neg(Atom(p)) for p in sorted(self.negatives)]
        out = lits[0]
        for lit in lits[1:]:
            out = And(out, lit)
        return out


def characteristic_monomial(alpha: Interaction, ports: Ports) -> FullMonomial:
    alpha = frozenset(alpha)
    if not alpha:
        raise DomainError("interaction must be nonempty")
    if not alpha <= set(ports):
        raise DomainError(f"interaction {sorted(alpha)} is not over ports {list(ports)}")
    return FullMonomial(alpha, frozenset(ports) - alpha)


def monomial_interaction(m: FullMonomial) -> Interaction:
    return m.positives


def monomial_formula(alpha: Interaction, ports: Ports) -> Pil:
    """m_alpha as a PIL formula."""
    return characteristic_monomial(alpha, ports).formula()


def config_formula(gamma: Configuration, ports: Ports) -> Formula:
    """The PCL coalescing of the characteristic monomials of ``gamma``.

    Satisfied by ``gamma`` and nothing else.
    """
    alphas = sorted(gamma, key=interaction_key)
    out = monomial_formula(alphas[0], ports)
    for a in alphas[1:]:
        out = Coalesce(out, monomial_formula(a, ports))
    return out


# ---------------------------------------------------------------------------
# derived operators


def expand_derived(f, ports=None, monoid=None, **limits):
    """Rewrite derived nodes into core constructors.

    ``FullVal`` needs the normal form of its argument; it is expanded only
    when ``ports`` and ``monoid`` are given and left in place otherwise.
    """
    if isinstance(f, (Top, Atom, Const)):
        return f
    if isinstance(f, Neg):
        return Neg(expand_derived(f.child, ports, monoid, **limits))
    if isinstance(f, And):
        a = expand_derived(f.left, ports, monoid, **limits)
        b = expand_derived(f.right, ports, monoid, **limits)
        return Neg(Or(Neg(a), Neg(b)))
    if isinstance(f, Inter):
        a = expand_derived(f.left, ports, monoid, **limits)
        b = expand_derived(f.right, ports, monoid, **limits)
        return Not(Union(Not(a), Not(b)))
    if isinstance(f, Implies):
        a = expand_derived(f.left, ports, monoid, **limits)
        b = expand_derived(f.right, ports, monoid, **limits)
        return Union(Not(a), b)
    if isinstance(f, PclClose):
        return Coalesce(expand_derived(f.child, ports, monoid, **limits), TRUE)
    if isinstance(f, Close):
        if monoid is None:
            raise UsageError("expanding close(...) needs the monoid's unit; pass monoid=")
        z = expand_derived(f.child, ports, monoid, **limits)
        return Oplus(z, Uplus(z, Const(monoid.one)))
    if isinstance(f, FullVal):
        z = expand_derived(f.child, ports, monoid, **limits)
        if ports is None or monoid is None:
            return FullVal(z)
        from .normal_form import full_valuation_expansion

        return full_valuation_expansion(z, ports, monoid, **limits)
    cs = [expand_derived(c, ports, monoid, **limits) for c in children(f)]
    return type(f)(*cs)


def close_expansion(z, one) -> Weighted:
    """``z (+) (z (#) one)``; the closure with the unit spelled out."""
    return Oplus(z, Uplus(z, Const(one)))
