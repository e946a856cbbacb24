"""Run-time limits and CLI run configuration."""

from dataclasses import dataclass, field

from .errors import UsageError


@dataclass(frozen=True)
class Limits:
    """Resource guards; every exponential enumeration checks one of these.

    port_limit
        max |P| for which C(P) (2^(2^|P|-1) - 1 configurations) is materialized.
    star_limit
        max |gamma| for partition enumeration in the semantics (Bell(9) = 21147).
    family_limit
        max number of pairwise-disjoint term families visited by the
        normal-form star.
    pair_limit
        max term pairs examined by a normal-form coalescing.
    split_limit
        max |gamma| for enumerating the 2^|gamma| splits of a weighted
        coalescing; larger closures are evaluated through the normal form.
    """

    port_limit: int = 4
    star_limit: int = 9
    family_limit: int = 1 << 16
    pair_limit: int = 2_000_000
    split_limit: int = 12

    def __post_init__(self):
        for name in ("port_limit", "star_limit", "family_limit", "pair_limit", "split_limit"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name} must be positive")


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class RunConfig:
    monoid: str = "max-avg-plus"
    limits: Limits = field(default_factory=Limits)
    output_format: str = "text"

    def __post_init__(self):
        if self.output_format not in ("text", "json-lines"):
            raise UsageError(f"unknown output format {self.output_format!r}")
