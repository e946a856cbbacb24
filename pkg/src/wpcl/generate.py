"""Seeded random formulas and configurations for sweeps and tests."""

from __future__ import annotations

import random
from fractions import Fraction

from .logic import (
    TRUE,
    And,
    Atom,
    Close,
    Coalesce,
    Const,
    FullVal,
    Implies,
    Inter,
    Neg,
    Not,
    Oplus,
    Or,
    Otimes,
    PclClose,
    Star,
    Union,
    Uplus,
    all_interactions,
    config_formula,
)
from .pvm import PvMonoid


def random_value(rng: random.Random, m: PvMonoid, special=0.25):
    """Small rationals, with ``zero``/``one`` (and carrier infinities) mixed in."""
    if rng.random() < special:
        return rng.choice([m.zero, m.one, *m.carrier])
    return Fraction(rng.randint(-6, 6), rng.choice((1, 1, 1, 2, 3)))


def random_pil(rng: random.Random, ports, depth=2, derived=True):
    if depth <= 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.1:
            return TRUE
        if r < 0.15:
            return Neg(TRUE)
        return Atom(rng.choice(ports))
    kind = rng.choice(("neg", "or", "and") if derived else ("neg", "or"))
    if kind == "neg":
        return Neg(random_pil(rng, ports, depth - 1, derived))
    a = random_pil(rng, ports, depth - 1, derived)
    b = random_pil(rng, ports, depth - 1, derived)
    return Or(a, b) if kind == "or" else And(a, b)


def random_pcl(rng: random.Random, ports, depth=2, derived=True):
    if depth <= 0 or rng.random() < 0.35:
        return random_pil(rng, ports, 2, derived)
    kinds = ["not", "union", "coal"]
    if derived:
        kinds += ["inter", "implies", "close"]
    kind = rng.choice(kinds)
    if kind == "not":
        return Not(random_pcl(rng, ports, depth - 1, derived))
    if kind == "close":
        return PclClose(random_pcl(rng, ports, depth - 1, derived))
    a = random_pcl(rng, ports, depth - 1, derived)
    b = random_pcl(rng, ports, depth - 1, derived)
    return {"union": Union, "coal": Coalesce, "inter": Inter, "implies": Implies}[kind](a, b)


def random_config(rng: random.Random, ports, max_size=None):
    alphas = all_interactions(ports)
    k = rng.randint(1, max_size or len(alphas))
    return frozenset(rng.sample(alphas, min(k, len(alphas))))


def random_term_sum(rng: random.Random, ports, m: PvMonoid, n_terms=None):
    """``(+)`` of ``w(d) (x) [config formula]``; a child for ``fullval``."""
    n_terms = n_terms or rng.randint(1, 3)
    parts = []
    for _ in range(n_terms):
        d = Fraction(rng.randint(-6, 6))
        g = random_config(rng, ports, max_size=2)
        parts.append(Otimes(Const(d), config_formula(g, ports)))
    out = parts[0]
    for p in parts[1:]:
        out = Oplus(out, p)
    return out


def random_wpcl(
    rng: random.Random,
    ports,
    m: PvMonoid,
    depth=4,
    derived=True,
    fullval=False,
    pcl_depth=2,
):
    """A random weighted formula of depth at most ``depth``.

    ``derived`` admits closures; ``fullval`` admits ``fullval(..)`` nodes over
    term sums (whose normal form is never a constant).
    """
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.45:
            return Const(random_value(rng, m))
        return random_pcl(rng, ports, min(pcl_depth, max(depth, 0)), derived)
    kinds = ["oplus", "otimes", "uplus", "star"]
    if derived:
        kinds.append("close")
    if fullval and len(ports) > 1:
        # over one port every nonzero term sum is a constant
        kinds.append("fullval")
    kind = rng.choice(kinds)
    if kind == "fullval":
        return FullVal(random_term_sum(rng, ports, m))
    if kind in ("star", "close"):
        child = random_wpcl(rng, ports, m, depth - 1, derived, fullval, pcl_depth)
        return Star(child) if kind == "star" else Close(child)
    a = random_wpcl(rng, ports, m, depth - 1, derived, fullval, pcl_depth)
    b = random_wpcl(rng, ports, m, depth - 1, derived, fullval, pcl_depth)
    return {"oplus": Oplus, "otimes": Otimes, "uplus": Uplus}[kind](a, b)
