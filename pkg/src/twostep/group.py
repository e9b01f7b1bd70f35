"""The simply connected group of a 2-step algebra in exponential coordinates.

exp and log are the identity on coordinates; the product is the exact 2-step
BCH formula log(g*h) = x + y + (1/2)[x, y].
"""

from __future__ import annotations

import random
from typing import Callable, Optional, Union

from .algebra import AlgebraError, Element, TwoStepAlgebra, bracket


class GroupElement:
    """Group element stored by its log coordinates."""

    __slots__ = ("log",)

    def __init__(self, log: Element):
        self.log = log

    @property
    def algebra(self) -> TwoStepAlgebra:
        return self.log.algebra

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.log == other.log

    def __repr__(self):
        return f"GroupElement(log={self.log!r})"


def gidentity(a: TwoStepAlgebra) -> GroupElement:
    return GroupElement(a.zero_element())

def _half(a: TwoStepAlgebra):
    two = a.field.from_int(2)
    if a.field.is_zero(two):
        raise AlgebraError("BCH needs invertible 2")
    return a.field.one / two


def gmul(a: TwoStepAlgebra, g: GroupElement, h: GroupElement) -> GroupElement:
    """Exact BCH product: truncation at the bracket term is exact in 2-step."""
    x, y = g.log, h.log
    return GroupElement(x + y + bracket(a, x, y).scale(_half(a)))


def ginv(a: TwoStepAlgebra, g: GroupElement) -> GroupElement:
    # x and -x commute, so exp(x)^-1 = exp(-x)
    return GroupElement(-g.log)


def gcommutator(a: TwoStepAlgebra, g: GroupElement, h: GroupElement) -> GroupElement:
    """g h g^-1 h^-1; its log equals [log g, log h] exactly."""
    return gmul(a, gmul(a, g, h), gmul(a, ginv(a, g), ginv(a, h)))


def random_element(a: TwoStepAlgebra, rng: random.Random, bound: int = 5) -> Element:
    f = a.field
    return Element(a, [f.sample(rng, bound) for _ in range(a.q)],
                   [f.sample(rng, bound) for _ in range(a.p)])


def transport_check(a: TwoStepAlgebra, b: TwoStepAlgebra,
                    f: Union["MapLike", Callable[[Element], Element]],
                    trials: int = 100, seed: int = 0) -> tuple[bool, Optional[tuple]]:
    """Randomized check that F = exp o f o exp^-1 is a group homomorphism:
    F(g*h) = F(g)*F(h) on sampled pairs.  Necessary condition for f being a
    Lie ring homomorphism; returns (ok, witness pair or None)."""
    apply = f if callable(f) and not hasattr(f, "apply_element") else f.apply_element
    rng = random.Random(seed)
    for _ in range(trials):
        x = random_element(a, rng)
        y = random_element(a, rng)
        g, h = GroupElement(x), GroupElement(y)
        lhs = apply(gmul(a, g, h).log)
        rhs = gmul(b, GroupElement(apply(x)), GroupElement(apply(y))).log
        if lhs != rhs:
            return False, (x, y)
    return True, None
