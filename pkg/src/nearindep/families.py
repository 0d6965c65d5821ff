"""Named extremal graph families and the closed-form bounds they attain."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    Graph,
    complement,
    complete_graph,
    disjoint_copies,
    empty_graph,
    join,
    star_graph,
    union,
)


class FamilyError(ValueError):
    """Unknown family, or an order the family does not admit."""


# CLI name -> (internal name, K2 multiplicity)
FAMILY_NAMES = {
    "complete": ("complete", None),
    "edgeless": ("edgeless", None),
    "star": ("star", None),
    "3k2-iso": ("mK2_plus_isolated", 3),
    "4k2-iso": ("mK2_plus_isolated", 4),
    "join-g64": ("join_complement", None),
}

BOUND_KINDS = ("ng_lower_general", "ng_lower_tree", "ng_upper_general", "sigma1_max")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    order: int
    m: int | None = None

    @classmethod
    def from_cli(cls, name: str, order: int) -> "FamilySpec":
        try:
            internal, m = FAMILY_NAMES[name]
        except KeyError:
            raise FamilyError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}") from None
        return cls(internal, order, m)

    @property
    def min_order(self) -> int:
        if self.name == "star":
            return 2
        if self.name == "mK2_plus_isolated":
            return 2 * (self.m or 0)
        if self.name == "join_complement":
            return 6
        return 1

    def validate(self) -> None:
        if self.name not in {"complete", "edgeless", "star", "mK2_plus_isolated", "join_complement"}:
            raise FamilyError(f"unknown family {self.name!r}")
        if self.name == "mK2_plus_isolated" and (self.m is None or self.m < 1):
            raise FamilyError("mK2_plus_isolated needs a multiplicity m >= 1")
        if self.order < self.min_order:
            raise FamilyError(f"{self.label()} requires order >= {self.min_order}")

    def label(self) -> str:
        if self.name == "mK2_plus_isolated":
            return f"{self.m}K2 + isolated"
        return self.name


def mk2_plus_isolated(m: int, n: int) -> Graph:
    """``m`` disjoint edges followed by ``n - 2m`` isolated vertices."""
    return union(disjoint_copies(complete_graph(2), m), empty_graph(n - 2 * m))


def build(spec: FamilySpec) -> Graph:
    spec.validate()
    n = spec.order
    if spec.name == "complete":
        return complete_graph(n)
    if spec.name == "edgeless":
        return empty_graph(n)
    if spec.name == "star":
        return star_graph(n)
    if spec.name == "mK2_plus_isolated":
        return mk2_plus_isolated(spec.m, n)
    # K_{n-6} joined with the octahedron, the complement of 3K2
    return join(complete_graph(n - 6), complement(mk2_plus_isolated(3, 6)))


def _exact(x: Fraction) -> int | Fraction:
    return int(x) if x.denominator == 1 else x


def sigma1_max_value(n: int) -> int | Fraction:
    return _exact(Fraction(27 * 2 ** n, 64))


@dataclass(frozen=True)
class BoundValue:
    kind: str
    order: int
    value: int | Fraction


def bound(kind: str, n: int) -> BoundValue:
    if n < 1:
        raise ValueError("order must be >= 1")
    if kind == "ng_lower_general":
        value = n * (n - 1) // 2
    elif kind == "ng_lower_tree":
        value = (n - 1) ** 2
    elif kind == "sigma1_max":
        value = sigma1_max_value(n)
    elif kind == "ng_upper_general":
        value = _exact(Fraction(27 * 2 ** n, 64) + Fraction((n + 2) * (n - 3), 2))
    else:
        raise ValueError(f"unknown bound kind {kind!r}; choose from {', '.join(BOUND_KINDS)}")
    return BoundValue(kind, n, value)


def closed_form_ng(spec: FamilySpec) -> int:
    """Closed-form sigma_1(G) + sigma_1(complement G) for a family member."""
    spec.validate()
    n = spec.order
    if spec.name in ("complete", "edgeless"):
        return n * (n - 1) // 2
    if spec.name == "star":
        return (n - 1) ** 2
    if spec.name == "mK2_plus_isolated" and spec.m == 3:
        return 27 * 2 ** (n - 6) + (n + 2) * (n - 3) // 2
    raise FamilyError(f"no closed-form NG sum for {spec.label()}")
