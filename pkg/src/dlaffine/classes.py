"""Twisted conjugacy classes, cyclic shift, and good minimal-length elements."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .braid import BraidWord, beta_product, braid_support, left_divides_simple, left_quotient_simple
from .coxeter import GROUP_CAP, CoxeterError, CoxeterSystem, DiagramAutomorphism, Element, prefixes

log = logging.getLogger(__name__)


class MisuseNotMinimal(CoxeterError):
    pass


def word_key(w: Element) -> tuple:
    return (w.length(), w.canonical_word())


@dataclass(frozen=True)
class FClass:
    representative: Element
    members: frozenset[Element] = field(repr=False)
    min_length: int
    c_min: frozenset[Element] = field(repr=False)
    d: int

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_c_min(self) -> list[Element]:
        return sorted(self.c_min, key=word_key)

    def __contains__(self, w: Element) -> bool:
        return w in self.members


@dataclass(frozen=True)
class GoodCertificate:
    """``beta_d(w)`` equals ``w_{I_1}^2 ... w_{I_r}^2`` with ``chain = (I_1, ..., I_r)``."""
    element: Element
    d: int
    chain: tuple[frozenset[int], ...]

    def to_json(self) -> dict:
        system = self.element.system
        return {
            "element": self.element.labels(),
            "d": self.d,
            "chain": [system.subset_labels(I) for I in self.chain],
        }


def twisted_order(w: Element, F: DiagramAutomorphism) -> int:
    """Smallest k with ``w F(w) ... F^(k-1)(w) == 1`` and ``F^k == id``."""
    product = w
    twisted = w
    k = 1
    while not (product.is_identity() and k % F.order == 0):
        twisted = F.apply(twisted)
        product = product * twisted
        k += 1
    return k


def _conjugation_orbit(w: Element, F: DiagramAutomorphism) -> set[Element]:
    system = w.system
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for i in range(system.rank):
            y = x.left_mul_gen(i).right_mul_gen(F.sigma[i])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _make_class(members: set[Element], F: DiagramAutomorphism) -> FClass:
    min_length = min(x.length() for x in members)
    c_min = frozenset(x for x in members if x.length() == min_length)
    rep = min(c_min, key=word_key)
    return FClass(rep, frozenset(members), min_length, c_min, twisted_order(rep, F))


def f_class_of(w: Element, F: DiagramAutomorphism) -> FClass:
    """The F-conjugacy class of ``w``, closed under ``x -> s x F(s)``."""
    return _make_class(_conjugation_orbit(w, F), F)


def all_f_classes(system: CoxeterSystem, F: DiagramAutomorphism, max_group_size: int = GROUP_CAP) -> list[FClass]:
    """Partition of ``W`` into F-classes, sorted by (min length, representative word)."""
    remaining = set(system.elements(max_group_size))
    classes = []
    for w in system.elements(max_group_size):
        if w not in remaining:
            continue
        orbit = _conjugation_orbit(w, F)
        remaining -= orbit
        classes.append(_make_class(orbit, F))
    classes.sort(key=lambda c: word_key(c.representative))
    return classes


def class_d(cls: FClass | Element, F: DiagramAutomorphism) -> int:
    w = cls.representative if isinstance(cls, FClass) else cls
    return twisted_order(w, F)


def cyclic_neighbors(w: Element, F: DiagramAutomorphism) -> set[Element]:
    """All ``y F(x)`` with ``w = x y`` reduced and ``l(y F(x)) == l(w)``."""
    n = w.length()
    out = set()
    for x, y in prefixes(w):
        z = y * F.apply(x)
        if z.length() == n:
            out.add(z)
    return out


def cyclic_bfs(w: Element, F: DiagramAutomorphism) -> Iterator[tuple[Element, list[Element]]]:
    """Breadth-first walk of the cyclic-shift component of ``w``, yielding paths from ``w``."""
    parent: dict[Element, Element | None] = {w: None}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        path = [x]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        yield x, path[::-1]
        for y in sorted(cyclic_neighbors(x, F), key=word_key):
            if y not in parent:
                parent[y] = x
                queue.append(y)


def cyclic_component(w: Element, F: DiagramAutomorphism) -> set[Element]:
    return {x for x, _ in cyclic_bfs(w, F)}


def cyclic_equivalent(w: Element, w2: Element, F: DiagramAutomorphism) -> bool:
    if w.length() != w2.length():
        return False
    return any(x == w2 for x, _ in cyclic_bfs(w, F))


def cyclic_path(w: Element, w2: Element, F: DiagramAutomorphism) -> list[Element] | None:
    for x, path in cyclic_bfs(w, F):
        if x == w2:
            return path
    return None


def cyclic_shift_graph(members: Iterable[Element], F: DiagramAutomorphism) -> dict[Element, set[Element]]:
    """Cyclic-shift adjacency restricted to ``members``, without self-loops."""
    members = set(members)
    return {x: {y for y in cyclic_neighbors(x, F) if y in members and y != x} for x in members}


def good_chain(beta: BraidWord) -> tuple[frozenset[int], ...] | None:
    """Peel ``w_J^2`` with ``J`` the support until the unit is reached.

    Any decomposition into nested squares must start with the full support,
    and the monoid is cancellative, so the greedy peel decides the question.
    """
    system = beta.system
    chain: list[frozenset[int]] = []
    while not beta.is_unit():
        J = braid_support(beta)
        if chain and not J <= chain[-1]:
            return None
        wJ = system.longest_element(J)
        for _ in range(2):
            if not left_divides_simple(wJ, beta):
                return None
            beta = left_quotient_simple(wJ, beta)
        chain.append(J)
    return tuple(chain)


def is_good(w: Element, F: DiagramAutomorphism, cls: FClass | None = None) -> GoodCertificate | None:
    """Certificate that ``w`` is good, or None.  ``w`` must have minimal length in its class."""
    if cls is None:
        cls = f_class_of(w, F)
    elif w not in cls.members:
        raise CoxeterError("element is not in the given class")
    if w.length() != cls.min_length:
        raise MisuseNotMinimal(f"{w!r} has length {w.length()} > {cls.min_length}, the class minimum")
    d = cls.d
    chain = good_chain(beta_product(w, F, d))
    if chain is None:
        return None
    return GoodCertificate(w, d, chain)


def find_good(cls: FClass, F: DiagramAutomorphism) -> GoodCertificate | None:
    """First good element of ``C_min`` in (length, canonical word) order."""
    for w in cls.sorted_c_min():
        cert = is_good(w, F, cls)
        if cert is not None:
            return cert
    log.error("no good element in C_min of the class of %r; one is expected to exist", cls.representative)
    return None
