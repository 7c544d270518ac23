"""Target boundary behaviour of link, AND and OR gadgets.

A boundary assignment is a tuple of connector colors, 1 meaning the
connector points into its NCL vertex and 4 meaning it points away.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

IN, OUT = 1, 4
ALPHABET = (IN, OUT)


class Kind(str, enum.Enum):
    LINK = "LINK"
    AND = "AND"
    OR = "OR"


Assignment = tuple[int, ...]


@dataclass(frozen=True)
class InterfaceSpec:
    kind: Kind
    arity: int
    allowed: frozenset[Assignment]
    adjacency: frozenset[frozenset[Assignment]]

    def __post_init__(self):
        for pair in self.adjacency:
            a, b = sorted(pair)
            if a not in self.allowed or b not in self.allowed:
                raise ValueError(f"adjacency {a}-{b} leaves the allowed set")
            if sum(x != y for x, y in zip(a, b)) != 1:
                raise ValueError(f"adjacency {a}-{b} must differ in one coordinate")

    def permuted(self, perm: tuple[int, ...]) -> "InterfaceSpec":
        """Same spec with coordinates reordered: new[i] = old[perm[i]]."""
        def p(t):
            return tuple(t[i] for i in perm)
        return InterfaceSpec(
            self.kind,
            self.arity,
            frozenset(p(t) for t in self.allowed),
            frozenset(frozenset(p(t) for t in pair) for pair in self.adjacency),
        )


def in_weight(kind: Kind, t: Assignment) -> int:
    if kind is Kind.AND:
        e1, e2, ea = t
        return (e1 == IN) + (e2 == IN) + 2 * (ea == IN)
    if kind is Kind.OR:
        return 2 * sum(x == IN for x in t)
    raise ValueError(f"no vertex in-weight for {kind}")


def _single_flip_pairs(allowed) -> frozenset[frozenset[Assignment]]:
    return frozenset(
        frozenset((a, b))
        for a, b in itertools.combinations(sorted(allowed), 2)
        if sum(x != y for x, y in zip(a, b)) == 1
    )


def derive_interface(kind: Kind | str) -> InterfaceSpec:
    kind = Kind(kind)
    if kind is Kind.LINK:
        # both connectors inward would count the edge at both ends; (4,4) is the neutral state
        allowed = frozenset(t for t in itertools.product(ALPHABET, repeat=2) if t != (IN, IN))
        return InterfaceSpec(kind, 2, allowed, _single_flip_pairs(allowed))
    allowed = frozenset(t for t in itertools.product(ALPHABET, repeat=3) if in_weight(kind, t) >= 2)
    return InterfaceSpec(kind, 3, allowed, _single_flip_pairs(allowed))
