"""Satisfaction relations and weighted evaluation by exhaustive enumeration.

Everything here follows the definitions literally (covers, splits,
partitions) and is the brute-force oracle the normal-form code is checked
against.  Two places lean on the normal form: ``fullval``, whose definition
goes through the normal form of its argument, and closures over
configurations larger than ``Limits.split_limit``, which sum the normal form
of the child restricted to subconfigurations instead of enumerating them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import set_partitions
from .config import DEFAULT_LIMITS, Limits
from .errors import DomainError, ResourceLimitError, UsageError
from .logic import (
    And,
    Atom,
    Close,
    Coalesce,
    Configuration,
    Const,
    FullVal,
    Implies,
    Inter,
    Interaction,
    Neg,
    Not,
    Oplus,
    Or,
    Otimes,
    PclClose,
    Pil,
    Ports,
    TRUE,
    Star,
    Top,
    Union,
    Uplus,
    all_configurations,
    check_configuration,
    children,
    interaction_key,
    is_pcl,
    ports_of,
)
from .pvm import ExtValue, PvMonoid


def pil_sat(alpha: Interaction, phi) -> bool:
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Atom):
        return phi.port in alpha
    if isinstance(phi, Neg):
        return not pil_sat(alpha, phi.child)
    if isinstance(phi, Or):
        return pil_sat(alpha, phi.left) or pil_sat(alpha, phi.right)
    if isinstance(phi, And):
        return pil_sat(alpha, phi.left) and pil_sat(alpha, phi.right)
    raise UsageError(f"not a PIL formula: {phi!r}")


def _split_items(gamma):
    return sorted(gamma, key=interaction_key)


def pcl_sat(gamma: Configuration, f, _memo=None) -> bool:
    """``gamma |= f``.  Coalescing ranges over possibly overlapping covers."""
    memo = {} if _memo is None else _memo
    key = (id(f), gamma)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, Pil):
        out = all(pil_sat(a, f) for a in gamma)
    elif isinstance(f, Not):
        out = not pcl_sat(gamma, f.child, memo)
    elif isinstance(f, Union):
        out = pcl_sat(gamma, f.left, memo) or pcl_sat(gamma, f.right, memo)
    elif isinstance(f, Inter):
        out = pcl_sat(gamma, f.left, memo) and pcl_sat(gamma, f.right, memo)
    elif isinstance(f, Implies):
        out = (not pcl_sat(gamma, f.left, memo)) or pcl_sat(gamma, f.right, memo)
    elif isinstance(f, (Coalesce, PclClose)):
        left = f.left if isinstance(f, Coalesce) else f.child
        right = f.right if isinstance(f, Coalesce) else TRUE
        out = _covers(gamma, left, right, memo)
    else:
        raise UsageError(f"not a PCL formula: {f!r}")
    # holding f keeps its id from being recycled while the memo lives
    memo[key] = (f, out)
    return out


def _covers(gamma, left, right, memo):
    # gamma = g1 U g2 with g1, g2 nonempty, possibly overlapping:
    # choose g1, then g2 = (gamma - g1) + any subset of g1, g2 nonempty.
    items = _split_items(gamma)
    n = len(items)
    full = (1 << n) - 1
    for m1 in range(1, full + 1):
        g1 = frozenset(items[i] for i in range(n) if m1 >> i & 1)
        if not pcl_sat(g1, left, memo):
            continue
        rest = full & ~m1
        sub = m1
        while True:
            m2 = rest | sub
            if m2:
                g2 = frozenset(items[i] for i in range(n) if m2 >> i & 1)
                if pcl_sat(g2, right, memo):
                    return True
            if sub == 0:
                break
            sub = (sub - 1) & m1
    return False


def wpil_eval(alpha: Interaction, zeta, m: PvMonoid) -> ExtValue:
    if isinstance(zeta, Const):
        return zeta.value
    if isinstance(zeta, Pil):
        return m.one if pil_sat(alpha, zeta) else m.zero
    if isinstance(zeta, Oplus):
        return m.oplus(wpil_eval(alpha, zeta.left, m), wpil_eval(alpha, zeta.right, m))
    if isinstance(zeta, Otimes):
        return m.otimes(wpil_eval(alpha, zeta.left, m), wpil_eval(alpha, zeta.right, m))
    raise UsageError(f"not a weighted PIL formula: {zeta!r}")


class Evaluator:
    """Memoizing evaluator of weighted PCL formulas for one monoid.

    The cache is keyed by ``(id(node), gamma)``, so it is only valid while
    the formulas it has seen are alive; the evaluator keeps references.
    ``ports`` is needed only for ``fullval``.
    """

    def __init__(self, monoid: PvMonoid, ports: Ports | None = None, limits: Limits = DEFAULT_LIMITS):
        self.m = monoid
        self.ports = ports
        self.limits = limits
        self._values = {}
        self._sat = {}
        self._partitions = {}
        self._fullval = {}
        self._alive = []

    def __call__(self, zeta, gamma: Configuration) -> ExtValue:
        self.prepare(zeta)
        return self.eval(zeta, gamma)

    def prepare(self, zeta):
        """Resolve every ``fullval`` node up front.

        Their errors (a constant normal form, missing ports) then surface on
        every configuration, not only where evaluation happens to reach them.
        """
        self._alive.append(zeta)
        stack = [zeta]
        seen = set()
        while stack:
            f = stack.pop()
            if id(f) in seen:
                continue
            seen.add(id(f))
            if isinstance(f, FullVal):
                self._fullval_target(f)
            stack.extend(children(f))

    def eval(self, zeta, gamma: Configuration) -> ExtValue:
        key = (id(zeta), gamma)
        hit = self._values.get(key)
        if hit is not None:
            return hit[1]
        out = self._eval(zeta, gamma)
        self._values[key] = (zeta, out)
        return out

    def _eval(self, zeta, gamma):
        m = self.m
        if isinstance(zeta, Const):
            return zeta.value
        if is_pcl(zeta):
            return m.one if pcl_sat(gamma, zeta, self._sat) else m.zero
        if isinstance(zeta, Oplus):
            return m.oplus(self.eval(zeta.left, gamma), self.eval(zeta.right, gamma))
        if isinstance(zeta, Otimes):
            return m.otimes(self.eval(zeta.left, gamma), self.eval(zeta.right, gamma))
        if isinstance(zeta, Uplus):
            return self._uplus(gamma, lambda g: self.eval(zeta.left, g), lambda g: self.eval(zeta.right, g))
        if isinstance(zeta, Star):
            return self._star(zeta.child, gamma)
        if isinstance(zeta, Close):
            if len(gamma) > self.limits.split_limit:
                return self._sparse_closure(zeta.child, gamma)
            # z (+) (z (#) 1)
            z = zeta.child
            one = m.one
            return m.oplus(
                self.eval(z, gamma),
                self._uplus(gamma, lambda g: self.eval(z, g), lambda g: one),
            )
        if isinstance(zeta, FullVal):
            return self._fullval_eval(zeta, gamma)
        raise UsageError(f"not a weighted PCL formula: {zeta!r}")

    def _uplus(self, gamma, left, right):
        # ordered pairs of disjoint nonempty parts; |gamma| = 1 gives the empty sum
        m = self.m
        if len(gamma) > self.limits.split_limit:
            raise ResourceLimitError(
                f"splitting a configuration of {len(gamma)} interactions",
                len(gamma),
                self.limits.split_limit,
                "--split-limit",
            )
        items = _split_items(gamma)
        n = len(items)
        full = (1 << n) - 1
        out = m.zero
        for m1 in range(1, full):
            g1 = frozenset(items[i] for i in range(n) if m1 >> i & 1)
            a = left(g1)
            if a == m.zero:
                continue
            g2 = gamma - g1
            out = m.oplus(out, m.otimes(a, right(g2)))
        return out

    def _sparse_closure(self, z, gamma):
        # sum of ||z|| over the subsets of gamma, read off the normal form of
        # z restricted to configurations inside gamma
        if self.ports is None:
            raise UsageError("closure over a large configuration needs the port set")
        from .normal_form import Constant, Universe, normalize

        u = Universe(self.ports, gamma, self.limits)
        fnf = normalize(z, self.ports, self.m, self.limits, universe=u)
        if isinstance(fnf, Constant):
            return fnf.value
        return self.m.oplus_fold(t.value for t in fnf.terms)

    def partitions(self, gamma):
        hit = self._partitions.get(gamma)
        if hit is None:
            if len(gamma) > self.limits.star_limit:
                raise ResourceLimitError(
                    f"star over a configuration of {len(gamma)} interactions",
                    len(gamma),
                    self.limits.star_limit,
                    "--star-limit",
                )
            hit = [
                [frozenset(block) for block in blocks]
                for blocks in set_partitions(_split_items(gamma))
            ]
            self._partitions[gamma] = hit
        return hit

    def _star(self, z, gamma):
        m = self.m
        out = m.zero
        for blocks in self.partitions(gamma):
            vals = []
            for block in blocks:
                v = self.eval(z, block)
                if v == m.zero:
                    vals = None
                    break
                vals.append(v)
            if vals is None:
                continue  # val(..., 0, ...) = 0
            out = m.oplus(out, m.val(vals))
        return out

    def _fullval_eval(self, zeta, gamma):
        # (star z) (x) (coalescing of z's normal-form monomial sums); the
        # second factor is 1 exactly on the disjoint union of the term
        # configurations, 0 elsewhere.
        m = self.m
        target = self._fullval_target(zeta)
        if not target or gamma != target:
            return m.zero
        return m.otimes(self._star(zeta.child, gamma), m.one)

    def _fullval_target(self, zeta):
        m = self.m
        target = self._fullval.get(id(zeta))
        if target is None:
            if self.ports is None:
                raise UsageError("evaluating fullval(...) needs the port set")
            from .normal_form import Constant, normalize

            fnf = normalize(zeta.child, self.ports, m, limits=self.limits)
            if isinstance(fnf, Constant):
                raise DomainError("fullval(...) of a formula whose normal form is a constant")
            configs = [t.config for t in fnf.terms]
            union = frozenset().union(*configs) if configs else frozenset()
            disjoint = bool(configs) and sum(len(c) for c in configs) == len(union)
            target = union if disjoint else frozenset()
            self._fullval[id(zeta)] = target
            self._alive.append(zeta)
        return target


def wpcl_eval(gamma: Configuration, zeta, m: PvMonoid, ports: Ports | None = None, limits: Limits = DEFAULT_LIMITS) -> ExtValue:
    if not gamma:
        raise DomainError("configuration must be nonempty")
    check_constants(zeta, m)
    return Evaluator(m, ports, limits)(zeta, gamma)


def closure_eval(zeta, gamma: Configuration, m: PvMonoid, ports: Ports | None = None, limits: Limits = DEFAULT_LIMITS) -> ExtValue:
    """``||close(zeta)||(gamma)`` as the sum of ``||zeta||`` over nonempty subsets."""
    check_constants(zeta, m)
    ev = Evaluator(m, ports, limits)
    ev.prepare(zeta)
    items = _split_items(gamma)
    n = len(items)
    out = m.zero
    for mask in range(1, 1 << n):
        sub = frozenset(items[i] for i in range(n) if mask >> i & 1)
        out = m.oplus(out, ev.eval(zeta, sub))
    return out


@dataclass
class SemanticTable:
    """``||zeta||`` materialized over all of C(P), in canonical order."""

    monoid: PvMonoid
    ports: Ports
    entries: dict = field(default_factory=dict)

    def support(self):
        return {g: v for g, v in self.entries.items() if v != self.monoid.zero}

    def __eq__(self, other):
        if not isinstance(other, SemanticTable):
            return NotImplemented
        return (
            self.monoid.name == other.monoid.name
            and self.ports == other.ports
            and self.entries == other.entries
        )

    def differences(self, other):
        return [g for g, v in self.entries.items() if other.entries.get(g) != v]


def semantic_table(zeta, ports: Ports, m: PvMonoid, limits: Limits = DEFAULT_LIMITS) -> SemanticTable:
    check_formula_ports(zeta, ports)
    check_constants(zeta, m)
    ev = Evaluator(m, ports, limits)
    entries = {g: ev(zeta, g) for g in all_configurations(ports, limits.port_limit)}
    return SemanticTable(m, tuple(ports), entries)


def check_formula_ports(zeta, ports):
    extra = ports_of(zeta) - set(ports)
    if extra:
        raise DomainError(f"formula mentions undeclared port(s) {sorted(extra)}")


def check_constants(zeta, m):
    from .normal_form import check_constants as check

    check(zeta, m)


__all__ = [
    "Evaluator",
    "SemanticTable",
    "check_configuration",
    "closure_eval",
    "pcl_sat",
    "pil_sat",
    "semantic_table",
    "wpcl_eval",
    "wpil_eval",
]
