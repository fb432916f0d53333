"""Positive braid monoid of a finite Weyl group, in left-greedy normal form.

A braid is stored as its canonical factorization ``x_1 ... x_k`` into
nonidentity simples, where each consecutive pair is left-weighted: every left
descent of ``x_{i+1}`` is a right descent of ``x_i``.  Two braids are equal iff
their factor tuples agree.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .coxeter import CoxeterError, CoxeterSystem, DiagramAutomorphism, Element, is_prefix


class NotDivisor(CoxeterError):
    pass


def _slide(x: Element, y: Element) -> tuple[Element, Element]:
    """Move the largest possible prefix of ``y`` onto ``x``."""
    while True:
        free = y.ldes_mask & ~x.rdes_mask
        if not free:
            return x, y
        i = (free & -free).bit_length() - 1
        x = x.right_mul_gen(i)
        y = y.left_mul_gen(i)


def _is_left_weighted(factors: Sequence[Element]) -> bool:
    return all(not (b.ldes_mask & ~a.rdes_mask) for a, b in zip(factors, factors[1:]))


def _normalize(factors: list[Element]) -> list[Element]:
    factors = [f for f in factors if not f.is_identity()]
    while not _is_left_weighted(factors):
        for i in range(len(factors) - 2, -1, -1):
            factors[i], factors[i + 1] = _slide(factors[i], factors[i + 1])
        factors = [f for f in factors if not f.is_identity()]
    return factors


def _append_simple(factors: list[Element], y: Element) -> list[Element]:
    if y.is_identity():
        return factors
    factors = factors + [y]
    i = len(factors) - 1
    while i > 0:
        a, b = _slide(factors[i - 1], factors[i])
        if a is factors[i - 1]:
            break
        factors[i - 1], factors[i] = a, b
        i -= 1
    return _normalize(factors)


class BraidWord:
    """An element of the positive braid monoid, immutable."""

    __slots__ = ("system", "factors", "_hash")

    def __init__(self, system: CoxeterSystem, factors: Sequence[Element] = ()):
        factors = tuple(factors)
        if not _is_left_weighted(factors) or any(f.is_identity() for f in factors):
            factors = tuple(_normalize(list(factors)))
        self.system = system
        self.factors: tuple[Element, ...] = factors
        self._hash = None

    @classmethod
    def _trusted(cls, system, factors):
        b = cls.__new__(cls)
        b.system = system
        b.factors = tuple(factors)
        b._hash = None
        return b

    @classmethod
    def unit(cls, system: CoxeterSystem) -> BraidWord:
        return cls._trusted(system, ())

    @classmethod
    def simple(cls, x: Element) -> BraidWord:
        return cls._trusted(x.system, () if x.is_identity() else (x,))

    @classmethod
    def from_elements(cls, xs: Iterable[Element], system: CoxeterSystem | None = None) -> BraidWord:
        xs = list(xs)
        if system is None:
            if not xs:
                raise ValueError("system required for an empty product")
            system = xs[0].system
        factors: list[Element] = []
        for x in xs:
            factors = _append_simple(factors, x)
        return cls._trusted(system, factors)

    @classmethod
    def from_word(cls, system: CoxeterSystem, word: Iterable[int | str]) -> BraidWord:
        """The braid of a positive word in the Artin generators."""
        return cls.from_elements((system.evaluate([s]) for s in word), system)

    def __repr__(self):
        inner = ")(".join(".".join(f.labels()) for f in self.factors)
        return f"BraidWord(({inner}))" if self.factors else "BraidWord(1)"

    def __eq__(self, other):
        if not isinstance(other, BraidWord):
            return NotImplemented
        return self.system is other.system and self.factors == other.factors

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.factors)
        return self._hash

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def __pow__(self, k: int) -> BraidWord:
        if k < 0:
            raise ValueError("positive braid monoid has no inverses")
        out = BraidWord.unit(self.system)
        for _ in range(k):
            out = out * self
        return out

    def is_unit(self) -> bool:
        return not self.factors

    def length(self) -> int:
        """Number of Artin generators in any positive word for this braid."""
        return sum(f.length() for f in self.factors)

    def support(self) -> frozenset[int]:
        return braid_support(self)

    def words(self) -> list[tuple[int, ...]]:
        return [f.canonical_word() for f in self.factors]

    def to_json(self) -> list[list[str]]:
        return [f.labels() for f in self.factors]

    @classmethod
    def from_json(cls, system: CoxeterSystem, data: Sequence[Sequence[str]]) -> BraidWord:
        return cls.from_elements((system.evaluate(word) for word in data), system)


def from_elements(xs: Iterable[Element], system: CoxeterSystem | None = None) -> BraidWord:
    return BraidWord.from_elements(xs, system)


def multiply(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.system is not b.system:
        raise CoxeterError("braids from different systems")
    factors = list(a.factors)
    for y in b.factors:
        factors = _append_simple(factors, y)
    return BraidWord._trusted(a.system, factors)


def equals(a: BraidWord, b: BraidWord) -> bool:
    return a == b


def left_divides_simple(x: Element, b: BraidWord) -> bool:
    """Whether the simple braid of ``x`` left-divides ``b``.

    The first normal-form factor is the greatest simple left divisor of ``b``.
    """
    if x.is_identity():
        return True
    if b.is_unit():
        return False
    return is_prefix(x, b.factors[0])


def left_quotient_simple(x: Element, b: BraidWord) -> BraidWord:
    """The braid ``c`` with ``x * c == b``."""
    if not left_divides_simple(x, b):
        raise NotDivisor(f"{x!r} does not left-divide {b!r}")
    if x.is_identity():
        return b
    first = x.inverse() * b.factors[0]
    return BraidWord(b.system, (first,) + b.factors[1:])


def left_quotient(a: BraidWord, b: BraidWord) -> BraidWord:
    """The braid ``c`` with ``a * c == b``, dividing by ``a``'s factors in turn."""
    for x in a.factors:
        b = left_quotient_simple(x, b)
    return b


def delta(system: CoxeterSystem, subset: Iterable[int] | None = None) -> BraidWord:
    return BraidWord.simple(system.longest_element(subset))


def full_twist(system: CoxeterSystem, subset: Iterable[int] | None = None) -> BraidWord:
    d = delta(system, subset)
    return d * d


def braid_support(b: BraidWord) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for f in b.factors:
        out |= f.support()
    return out


def apply_automorphism(F: DiagramAutomorphism, b: BraidWord) -> BraidWord:
    # a diagram automorphism preserves descents, so the image stays left-weighted
    return BraidWord._trusted(b.system, [F.apply(f) for f in b.factors])


def beta_products(w: Element, F: DiagramAutomorphism):
    """Yield ``w F(w) ... F^(d-1)(w)`` for ``d = 1, 2, ...``."""
    system = w.system
    factors: list[Element] = []
    twisted = w
    while True:
        factors = _append_simple(factors, twisted)
        yield BraidWord._trusted(system, factors)
        twisted = F.apply(twisted)


def beta_product(w: Element, F: DiagramAutomorphism, d: int) -> BraidWord:
    if d < 1:
        raise ValueError("d must be a positive integer")
    for k, b in enumerate(beta_products(w, F), start=1):
        if k == d:
            return b
