"""Weighted architecture styles as executable fixtures.

Each builder returns a :class:`Fixture` ``(formula, config, ports)``: the
formula with closures and full valuations left unexpanded, the configuration
the style is evaluated on, and the port set.  Weights are supplied by the
caller as a map from ordered port-name pairs to values, e.g.
``{("s1", "m1"): 4}``; the first name is the component the weight belongs
to (the slave, the publisher or subscriber, or the star centre).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ConfigurationError, UsageError
from .logic import (
    Close,
    Configuration,
    Const,
    FullVal,
    Oplus,
    Otimes,
    Ports,
    make_ports,
    monomial_formula,
)
from .pvm import value

STYLES = ("master-slave", "pubsub", "star")


class Fixture(NamedTuple):
    formula: object
    config: Configuration
    ports: Ports


def _fold(op, items):
    items = list(items)
    out = items[0]
    for x in items[1:]:
        out = op(out, x)
    return out


def _weight(weights, a, b):
    try:
        return value(weights[(a, b)])
    except KeyError:
        raise ConfigurationError(f"missing weight for interaction {{{a},{b}}}") from None


def _check_keys(weights, legal, style):
    extra = set(weights) - set(legal)
    if extra:
        bad = ", ".join(f"{a},{b}" for a, b in sorted(extra))
        raise ConfigurationError(f"weights for interactions not legal in {style}: {bad}")


def _weighted_monomial(weights, a, b, ports):
    """``d (x) m_{a,b}``."""
    return Otimes(Const(_weight(weights, a, b)), monomial_formula(frozenset((a, b)), ports))


def _pair_config(pairs):
    return frozenset(frozenset(p) for p in pairs)


# ---------------------------------------------------------------------------
# master / slave


def master_slave_ports(n_masters, n_slaves):
    return make_ports([f"m{j}" for j in range(1, n_masters + 1)] + [f"s{i}" for i in range(1, n_slaves + 1)])


def build_master_slave(n_masters: int, n_slaves: int, weights: dict, variant: str = "i") -> Fixture:
    """Slaves talk to exactly one master each.

    ``i``    closure of the sum over assignments of the full valuation
    ``ii``   product over assignments of the closed full valuations
    ``iii``  closure of the sum over slaves of each slave's full valuation
    """
    if n_masters < 1 or n_slaves < 1:
        raise UsageError("need at least one master and one slave")
    ports = master_slave_ports(n_masters, n_slaves)
    masters = [f"m{j}" for j in range(1, n_masters + 1)]
    slaves = [f"s{i}" for i in range(1, n_slaves + 1)]
    legal = [(s, m) for s in slaves for m in masters]
    _check_keys(weights, legal, "master-slave")
    phi = {(s, m): _weighted_monomial(weights, s, m, ports) for s, m in legal}

    def assignment_fullvals():
        for choice in itertools.product(masters, repeat=n_slaves):
            yield FullVal(_fold(Oplus, [phi[(s, m)] for s, m in zip(slaves, choice)]))

    if variant == "i":
        formula = Close(_fold(Oplus, assignment_fullvals()))
    elif variant == "ii":
        formula = _fold(Otimes, [Close(z) for z in assignment_fullvals()])
    elif variant == "iii":
        formula = Close(
            _fold(Oplus, [FullVal(_fold(Oplus, [phi[(s, m)] for m in masters])) for s in slaves])
        )
    else:
        raise UsageError(f"unknown master-slave variant {variant!r}; expected i, ii or iii")
    return Fixture(formula, _pair_config(legal), ports)


# ---------------------------------------------------------------------------
# publish / subscribe


def pubsub_ports(n_pub, n_topics, n_sub):
    names = [f"p{k}" for k in range(1, n_pub + 1)]
    names += [f"t{j}{e}" for j in range(1, n_topics + 1) for e in (1, 2)]
    names += [f"s{i}" for i in range(1, n_sub + 1)]
    return make_ports(names)


def _pubsub_legal(n_pub, n_topics, n_sub):
    pt = [(f"p{k}", f"t{j}1") for k in range(1, n_pub + 1) for j in range(1, n_topics + 1)]
    st = [(f"s{i}", f"t{j}2") for i in range(1, n_sub + 1) for j in range(1, n_topics + 1)]
    return pt, st


def build_pubsub(n_pub: int, n_topics: int, n_sub: int, weights: dict, variant: str = "total") -> Fixture:
    """Publishers feed topics on port ``tj1``; subscribers read ``tj2``.

    ``subscriber_i``  closure of subscriber i's best (publisher, topic) route
    ``total``         product of the subscriber closures
    ``topic_i``       closure of the full valuation of topic i's interactions
    ``prune``         closure of the sum of all topic full valuations

    The configuration holds every publisher-topic and subscriber-topic pair,
    including those of the last subscriber.
    """
    if min(n_pub, n_topics, n_sub) < 1:
        raise UsageError("need at least one publisher, topic and subscriber")
    ports = pubsub_ports(n_pub, n_topics, n_sub)
    pt, st = _pubsub_legal(n_pub, n_topics, n_sub)
    _check_keys(weights, pt + st, "pubsub")
    phi = {pair: _weighted_monomial(weights, *pair, ports) for pair in pt + st}

    def subscriber(i):
        return _fold(
            Oplus,
            [
                FullVal(Oplus(phi[(f"p{k}", f"t{j}1")], phi[(f"s{i}", f"t{j}2")]))
                for j in range(1, n_topics + 1)
                for k in range(1, n_pub + 1)
            ],
        )

    def topic(j):
        parts = [phi[(f"p{k}", f"t{j}1")] for k in range(1, n_pub + 1)]
        parts += [phi[(f"s{i}", f"t{j}2")] for i in range(1, n_sub + 1)]
        return FullVal(_fold(Oplus, parts))

    kind, _, index = variant.partition("_")
    if kind == "subscriber" and index:
        i = _index(index, n_sub, variant)
        formula = Close(subscriber(i))
    elif kind == "topic" and index:
        formula = Close(topic(_index(index, n_topics, variant)))
    elif variant == "total":
        formula = _fold(Otimes, [Close(subscriber(i)) for i in range(1, n_sub + 1)])
    elif variant == "prune":
        formula = Close(_fold(Oplus, [topic(j) for j in range(1, n_topics + 1)]))
    else:
        raise UsageError(
            f"unknown pubsub variant {variant!r}; expected subscriber_<i>, total, topic_<i> or prune"
        )
    return Fixture(formula, _pair_config(pt + st), ports)


def _index(text, bound, variant):
    if not text.isdigit() or not 1 <= int(text) <= bound:
        raise UsageError(f"variant {variant!r}: index must be in 1..{bound}")
    return int(text)


# ---------------------------------------------------------------------------
# star


def star_ports(n):
    return make_ports([f"s{i}" for i in range(1, n + 1)])


def build_star(n: int, weights: dict) -> Fixture:
    """Closure of the sum over centres i of the full valuation of i's spokes.

    ``weights[("si", "sj")]`` is the cost of {si,sj} when si is the centre;
    the two orientations are independent.
    """
    if n < 3:
        raise UsageError("a star needs at least 3 components")
    ports = star_ports(n)
    names = [f"s{i}" for i in range(1, n + 1)]
    legal = [(a, b) for a in names for b in names if a != b]
    _check_keys(weights, legal, "star")
    zetas = [
        FullVal(_fold(Oplus, [_weighted_monomial(weights, a, b, ports) for b in names if b != a]))
        for a in names
    ]
    config = _pair_config((a, b) for a, b in legal if a < b)
    return Fixture(Close(_fold(Oplus, zetas)), config, ports)


# ---------------------------------------------------------------------------
# declarative specs


@dataclass
class ArchSpec:
    """A style, its component counts, weights and the variant to build."""

    name: str
    weights: dict = field(default_factory=dict)
    variant: str = ""
    counts: dict = field(default_factory=dict)

    def build(self) -> Fixture:
        c = self.counts
        if self.name == "master-slave":
            return build_master_slave(c.get("masters", 2), c.get("slaves", 2), self.weights, self.variant or "i")
        if self.name == "pubsub":
            return build_pubsub(
                c.get("publishers", 2), c.get("topics", 3), c.get("subscribers", 4),
                self.weights, self.variant or "total",
            )
        if self.name == "star":
            return build_star(c.get("n", 5), self.weights)
        raise UsageError(f"unknown style {self.name!r}; expected one of {', '.join(STYLES)}")


def parse_weights(data: dict) -> dict:
    """``{"s1,m1": "4"}`` -> ``{("s1", "m1"): Fraction(4)}``."""
    out = {}
    for key, v in data.items():
        parts = [p.strip() for p in str(key).split(",")]
        if len(parts) != 2 or not all(parts):
            raise ConfigurationError(f"weight key {key!r} is not a port pair 'a,b'")
        if isinstance(v, float):
            raise ConfigurationError(f"weight for {key!r} must be an int or a string, not a float")
        try:
            out[tuple(parts)] = value(v)
        except UsageError as e:
            raise ConfigurationError(f"weight for {key!r}: {e}") from None
    return out


def load_weights(path) -> dict:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"{path}: invalid JSON ({e})") from None
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path}: expected a JSON object of weights")
    return parse_weights(data)


# Weights used throughout the tests and the demo files.
MASTER_SLAVE_WEIGHTS = {("s1", "m1"): 4, ("s1", "m2"): 2, ("s2", "m1"): 6, ("s2", "m2"): 0}
STAR3_WEIGHTS = {
    ("s1", "s2"): 2, ("s1", "s3"): 2,
    ("s2", "s1"): 4, ("s2", "s3"): 4,
    ("s3", "s1"): 6, ("s3", "s2"): 6,
}
PUBSUB_WEIGHTS = {
    ("p1", "t11"): 1, ("p2", "t11"): 2,
    ("p1", "t21"): 3, ("p2", "t21"): 3,
    ("p1", "t31"): 2, ("p2", "t31"): 1,
    ("s1", "t12"): 1, ("s2", "t12"): 2, ("s3", "t12"): 1, ("s4", "t12"): 3,
    ("s1", "t22"): 2, ("s2", "t22"): 1, ("s3", "t22"): 3, ("s4", "t22"): 2,
    ("s1", "t32"): 3, ("s2", "t32"): 3, ("s3", "t32"): 1, ("s4", "t32"): 2,
}
