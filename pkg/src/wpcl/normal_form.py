"""Full normal forms, normalization and the equivalence decider.

A full normal form is either a constant or a finite set of terms
``(value, configuration)``; a term stands for ``value (x) Sum_j m_j`` where
the ``m_j`` are the characteristic monomials of the configuration's
interactions.  Storing configurations instead of monomial syntax makes the
distinctness conditions hold by construction.

Everything is computed relative to a :class:`Universe`, the set of
interactions configurations may draw from.  Normally that is I(P); the
evaluator also normalizes over the interactions of a single configuration to
evaluate closures sparsely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_LIMITS, Limits
from .errors import DomainError, HypothesisError, ResourceLimitError, UsageError
from .logic import (
    Close,
    Coalesce,
    Configuration,
    Const,
    FullVal,
    Implies,
    Inter,
    Not,
    Oplus,
    Otimes,
    Pil,
    PclClose,
    Ports,
    Star,
    Union,
    Uplus,
    all_interactions,
    config_formula,
    config_key,
    interaction_key,
    is_pcl,
    nonempty_subsets,
    ports_of,
)
from .pvm import ExtValue, PvMonoid, in_carrier

# I(P) itself is enumerated to compute PIL satisfaction sets.
MAX_INTERACTION_PORTS = 20


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class FnfTerm:
    value: ExtValue
    config: Configuration


@dataclass(frozen=True)
class Constant:
    value: ExtValue


@dataclass(frozen=True)
class Terms:
    """Terms in canonical order; the empty tuple is the zero polynomial."""

    terms: tuple = ()

    def as_dict(self):
        return {t.config: t.value for t in self.terms}

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


ZERO = Terms()


def make_terms(table: dict, m: PvMonoid) -> Terms:
    """Terms from a ``{configuration: value}`` map, dropping zero values."""
    items = [(g, v) for g, v in table.items() if v != m.zero]
    items.sort(key=lambda gv: config_key(gv[0]))
    return Terms(tuple(FnfTerm(v, g) for g, v in items))


def constant(d: ExtValue, m: PvMonoid):
    return ZERO if d == m.zero else Constant(d)


class Universe:
    """The interactions configurations range over, with lazy C(U)."""

    def __init__(self, ports: Ports, interactions=None, limits: Limits = DEFAULT_LIMITS):
        self.ports = tuple(ports)
        self.limits = limits
        self.full = interactions is None
        if self.full:
            if len(self.ports) > MAX_INTERACTION_PORTS:
                raise ResourceLimitError(
                    "enumerating I(P)", len(self.ports), MAX_INTERACTION_PORTS
                )
            interactions = all_interactions(self.ports)
        self.interactions = tuple(sorted(interactions, key=interaction_key))
        self._configs = None

    @classmethod
    def of(cls, ports, limits=DEFAULT_LIMITS):
        return ports if isinstance(ports, Universe) else cls(ports, limits=limits)

    def n_configs(self):
        return (1 << len(self.interactions)) - 1

    def _guard(self, k, what):
        cap = (1 << self.limits.port_limit) - 1
        if k <= cap:
            return
        if self.full and k == len(self.interactions):
            raise ResourceLimitError(
                f"{what} over {len(self.ports)} ports",
                len(self.ports),
                self.limits.port_limit,
                "--port-limit",
            )
        raise ResourceLimitError(f"{what} over {k} interactions", k, cap, "--port-limit")

    def configs(self):
        if self._configs is None:
            self._guard(len(self.interactions), "enumerating all configurations")
            self._configs = sorted(nonempty_subsets(self.interactions), key=config_key)
        return self._configs

    def subsets_of(self, alphas, what="enumerating configurations"):
        alphas = sorted(alphas, key=interaction_key)
        self._guard(len(alphas), what)
        return list(nonempty_subsets(alphas))

    def restrict(self, fnf, m):
        """Drop terms whose configuration leaves this universe."""
        if self.full or isinstance(fnf, Constant):
            return fnf
        inside = frozenset(self.interactions)
        return Terms(tuple(t for t in fnf.terms if t.config <= inside))


def _universe(ports, universe, limits=DEFAULT_LIMITS):
    if universe is not None:
        return universe
    if ports is None:
        return None
    return Universe.of(ports, limits)


def _need(u, op):
    if u is None:
        raise UsageError(f"{op} with a constant operand needs the port set (ports=...)")
    return u


def expand_constant(d: ExtValue, u: Universe, m: PvMonoid) -> Terms:
    """``{(d, g) : g in C(U)}``."""
    if d == m.zero:
        return ZERO
    return Terms(tuple(FnfTerm(d, g) for g in u.configs()))


# ---------------------------------------------------------------------------
# PCL support


def pcl_support(f, u: Universe) -> frozenset:
    """The set of configurations of C(U) satisfying ``f``, computed by set recursion."""
    from .semantics import pil_sat

    memo = {}

    def go(f):
        key = id(f)
        if key in memo:
            return memo[key][1]
        if isinstance(f, Pil):
            sat = [a for a in u.interactions if pil_sat(a, f)]
            out = frozenset(u.subsets_of(sat, "configurations satisfying a PIL formula"))
        elif isinstance(f, Not):
            out = frozenset(u.configs()) - go(f.child)
        elif isinstance(f, Union):
            out = go(f.left) | go(f.right)
        elif isinstance(f, Inter):
            out = go(f.left) & go(f.right)
        elif isinstance(f, Implies):
            out = (frozenset(u.configs()) - go(f.left)) | go(f.right)
        elif isinstance(f, Coalesce):
            out = _cover_unions(go(f.left), go(f.right), u)
        elif isinstance(f, PclClose):
            out = _cover_unions(go(f.child), frozenset(u.configs()), u)
        else:
            raise UsageError(f"not a PCL formula: {f!r}")
        memo[key] = (f, out)
        return out

    return go(f)


def _cover_unions(a, b, u):
    if len(a) * len(b) > u.limits.pair_limit:
        raise ResourceLimitError(
            "configuration pairs in a PCL coalescing", len(a) * len(b), u.limits.pair_limit
        )
    return frozenset(x | y for x in a for y in b)


def fnf_of_pcl(f, ports, m: PvMonoid, limits: Limits = DEFAULT_LIMITS, universe=None) -> Terms:
    """``Terms{(one, g) : g |= f}``; a tautology gives the full one-valued table."""
    u = _universe(ports, universe, limits)
    return make_terms({g: m.one for g in pcl_support(f, u)}, m)


# ---------------------------------------------------------------------------
# combinators


def fnf_oplus(a, b, m: PvMonoid, ports=None, universe=None, limits=DEFAULT_LIMITS):
    if isinstance(a, Constant) and isinstance(b, Constant):
        return constant(m.oplus(a.value, b.value), m)
    if isinstance(a, Constant) or isinstance(b, Constant):
        u = _need(_universe(ports, universe, limits), "oplus")
        if isinstance(a, Constant):
            a = expand_constant(a.value, u, m)
        if isinstance(b, Constant):
            b = expand_constant(b.value, u, m)
    out = a.as_dict()
    for t in b.terms:
        out[t.config] = m.oplus(out[t.config], t.value) if t.config in out else t.value
    return make_terms(out, m)


def fnf_otimes(a, b, m: PvMonoid, ports=None, universe=None, limits=DEFAULT_LIMITS):
    if isinstance(a, Constant) and isinstance(b, Constant):
        return constant(m.otimes(a.value, b.value), m)
    # d (x) t is zero wherever t is, so scaling the terms suffices
    if isinstance(a, Constant):
        return make_terms({t.config: m.otimes(a.value, t.value) for t in b.terms}, m)
    if isinstance(b, Constant):
        return make_terms({t.config: m.otimes(t.value, b.value) for t in a.terms}, m)
    right = b.as_dict()
    return make_terms(
        {t.config: m.otimes(t.value, right[t.config]) for t in a.terms if t.config in right}, m
    )


def fnf_coalesce(a, b, m: PvMonoid, ports=None, universe=None, limits=DEFAULT_LIMITS):
    if isinstance(a, Constant) or isinstance(b, Constant):
        u = _need(_universe(ports, universe, limits), "coalescing")
        if isinstance(a, Constant) and isinstance(b, Constant):
            d = m.otimes(a.value, b.value)
            return make_terms({g: d for g in u.configs() if len(g) >= 2}, m)
        if isinstance(a, Constant):
            a = expand_constant(a.value, u, m)
        if isinstance(b, Constant):
            b = expand_constant(b.value, u, m)
    pairs = len(a) * len(b)
    if pairs > limits.pair_limit:
        raise ResourceLimitError("term pairs in a coalescing", pairs, limits.pair_limit)
    out = {}
    for s in a.terms:
        for t in b.terms:
            if s.config & t.config:
                continue
            g = s.config | t.config
            v = m.otimes(s.value, t.value)
            out[g] = m.oplus(out[g], v) if g in out else v
    return make_terms(out, m)


def fnf_star(a, m: PvMonoid, ports=None, universe=None, limits=DEFAULT_LIMITS):
    """Sum over families of pairwise-disjoint terms of ``val(values)`` on their union."""
    if isinstance(a, Constant):
        # every partition of g into k blocks scores val(d,...,d) (k times)
        u = _need(_universe(ports, universe, limits), "star")
        d = a.value
        if d == m.zero:
            return ZERO
        by_size = [m.zero]
        for n in range(1, len(u.interactions) + 1):
            by_size.append(m.oplus(by_size[-1], m.val([d] * n)))
        return make_terms({g: by_size[len(g)] for g in u.configs()}, m)
    terms = a.terms
    n = len(terms)
    out = {}
    vals = []
    visited = 0

    def rec(start, used):
        nonlocal visited
        for i in range(start, n):
            t = terms[i]
            if t.config & used:
                continue
            visited += 1
            if visited > limits.family_limit:
                raise ResourceLimitError(
                    "disjoint term families in a star", visited, limits.family_limit, None
                )
            vals.append(t.value)
            g = used | t.config
            v = m.val(vals)
            out[g] = m.oplus(out[g], v) if g in out else v
            rec(i + 1, g)
            vals.pop()

    rec(0, frozenset())
    return make_terms(out, m)


def full_valuation(a, m: PvMonoid):
    """``val`` of all term values on the union of their configurations.

    Zero unless the term configurations are pairwise disjoint.
    """
    if isinstance(a, Constant):
        raise DomainError("full valuation is undefined for a constant normal form")
    if not a.terms:
        return ZERO
    union = frozenset().union(*(t.config for t in a.terms))
    if sum(len(t.config) for t in a.terms) != len(union):
        return ZERO
    return make_terms({union: m.val([t.value for t in a.terms])}, m)


def fnf_closure(a, m: PvMonoid, ports=None, universe=None, limits=DEFAULT_LIMITS):
    """``close(z)``: on each g the sum of the terms whose configuration lies in g."""
    if isinstance(a, Constant):
        return a  # sum over subsets of a constant, idempotent oplus
    if not a.terms:
        return ZERO
    u = _need(_universe(ports, universe, limits), "closure")
    configs = u.configs()
    if len(configs) * len(a) > limits.pair_limit:
        raise ResourceLimitError(
            "configuration/term pairs in a closure", len(configs) * len(a), limits.pair_limit
        )
    out = {}
    for g in configs:
        acc = m.zero
        for t in a.terms:
            if t.config <= g:
                acc = m.oplus(acc, t.value)
        out[g] = acc
    return make_terms(out, m)


# ---------------------------------------------------------------------------
# normalization


def check_hypotheses(m: PvMonoid):
    missing = m.missing_flags()
    if missing:
        raise HypothesisError(m.name, missing)


def check_constants(z, m: PvMonoid):
    from .logic import children

    stack = [z]
    while stack:
        f = stack.pop()
        if isinstance(f, Const) and not in_carrier(m, f.value):
            raise DomainError(f"value {f.value} is not in the carrier of {m.name}")
        stack.extend(children(f))


def canonical(fnf, universe, m: PvMonoid):
    """Collapse a one-valued table covering all of C(U) to a constant."""
    if isinstance(fnf, Constant):
        return constant(fnf.value, m)
    if fnf.terms and len(fnf.terms) == universe.n_configs():
        values = {t.value for t in fnf.terms}
        if len(values) == 1:
            return Constant(values.pop())
    return fnf


def normalize(z, ports, m: PvMonoid, limits: Limits = DEFAULT_LIMITS, universe=None):
    """The canonical full normal form of ``z`` over ``ports``.

    Refuses monoids lacking the flags the construction relies on.  With
    ``universe`` the result describes ``z`` only on configurations drawn from
    that universe's interactions.
    """
    check_hypotheses(m)
    check_constants(z, m)
    ports = tuple(ports)
    extra = ports_of(z) - set(ports)
    if extra:
        raise DomainError(f"formula mentions undeclared port(s) {sorted(extra)}")
    u = universe if universe is not None else Universe(ports, limits=limits)
    memo = {}

    def go(z):
        key = id(z)
        hit = memo.get(key)
        if hit is not None:
            return hit[1]
        out = _step(z)
        memo[key] = (z, out)
        return out

    def _step(z):
        kw = dict(universe=u, limits=limits)
        if isinstance(z, Const):
            return constant(z.value, m)
        if is_pcl(z):
            return fnf_of_pcl(z, ports, m, **kw)
        if isinstance(z, Oplus):
            return fnf_oplus(go(z.left), go(z.right), m, **kw)
        if isinstance(z, Otimes):
            return fnf_otimes(go(z.left), go(z.right), m, **kw)
        if isinstance(z, Uplus):
            return fnf_coalesce(go(z.left), go(z.right), m, **kw)
        if isinstance(z, Star):
            return fnf_star(go(z.child), m, **kw)
        if isinstance(z, Close):
            return fnf_closure(go(z.child), m, **kw)
        if isinstance(z, FullVal):
            # defined through the normal form over all of I(P)
            if u.full:
                inner = canonical(go(z.child), u, m)
            else:
                inner = normalize(z.child, ports, m, limits)
            return u.restrict(full_valuation(inner, m), m)
        raise UsageError(f"not a weighted PCL formula: {z!r}")

    return canonical(go(z), u, m)


def full_valuation_expansion(z, ports, m: PvMonoid, limits: Limits = DEFAULT_LIMITS):
    """``star(z) (x) (t_1 (#) ... (#) t_k)`` with ``t_i`` the term configuration formulas."""
    fnf = normalize(z, ports, m, limits)
    if isinstance(fnf, Constant):
        raise DomainError("full valuation is undefined for a constant normal form")
    if not fnf.terms:
        return Otimes(Star(z), Const(m.zero))
    parts = [config_formula(t.config, ports) for t in fnf.terms]
    acc = parts[0]
    for p in parts[1:]:
        acc = Uplus(acc, p)
    return Otimes(Star(z), acc)


def fnf_to_formula(fnf, ports, m: PvMonoid):
    """A formula whose normal form is ``fnf``."""
    if isinstance(fnf, Constant):
        return Const(fnf.value)
    if not fnf.terms:
        return Const(m.zero)
    out = None
    for t in fnf.terms:
        term = Otimes(Const(t.value), config_formula(t.config, ports))
        out = term if out is None else Oplus(out, term)
    return out


def fnf_value(fnf, gamma: Configuration, m: PvMonoid) -> ExtValue:
    if isinstance(fnf, Constant):
        return fnf.value
    for t in fnf.terms:
        if t.config == gamma:
            return t.value
    return m.zero


def fnf_table(fnf, ports, m: PvMonoid, limits: Limits = DEFAULT_LIMITS) -> dict:
    u = Universe(ports, limits=limits)
    table = fnf.as_dict() if isinstance(fnf, Terms) else {}
    if isinstance(fnf, Constant):
        return {g: fnf.value for g in u.configs()}
    return {g: table.get(g, m.zero) for g in u.configs()}


# ---------------------------------------------------------------------------
# equivalence


def same_normal_form(a, b) -> bool:
    """Compare canonical forms: term counts, value sets, value -> configurations."""
    if isinstance(a, Constant) or isinstance(b, Constant):
        return a == b
    if len(a) != len(b):
        return False
    if {t.value for t in a} != {t.value for t in b}:
        return False
    return _grouped(a) == _grouped(b)


def _grouped(a):
    out = {}
    for t in a.terms:
        out.setdefault(t.value, set()).add(t.config)
    return out


def equivalent(z, x, ports, m: PvMonoid, limits: Limits = DEFAULT_LIMITS) -> bool:
    return same_normal_form(normalize(z, ports, m, limits), normalize(x, ports, m, limits))


def find_witness(z, x, ports, m: PvMonoid, limits: Limits = DEFAULT_LIMITS):
    """A configuration on which ``z`` and ``x`` differ, or ``None``.

    Returns ``(gamma, value_z, value_x)``.
    """
    a = normalize(z, ports, m, limits)
    b = normalize(x, ports, m, limits)
    if same_normal_form(a, b):
        return None
    candidates = []
    for f in (a, b):
        if isinstance(f, Terms):
            candidates.extend(t.config for t in f.terms)
    for g in sorted(set(candidates), key=config_key):
        va, vb = fnf_value(a, g, m), fnf_value(b, g, m)
        if va != vb:
            return g, va, vb
    # both agree on every listed term, so a constant differs off the terms
    for g in Universe(ports, limits=limits).configs():
        va, vb = fnf_value(a, g, m), fnf_value(b, g, m)
        if va != vb:
            return g, va, vb
    return None
