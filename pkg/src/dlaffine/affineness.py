"""Sufficient criteria for affineness of the variety attached to ``(w, F)``.

Every check here can only establish affineness; a negative outcome is reported
as ``Inconclusive`` and never as non-affineness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence, Union

from .braid import BraidWord, beta_product, beta_products, full_twist, left_divides_simple, left_quotient_simple
from .classes import cyclic_bfs, f_class_of, twisted_order
from .coxeter import DiagramAutomorphism, Element


class Status(str, enum.Enum):
    ESTABLISHED = "AffineEstablished"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DeltaDivisibility:
    """``beta_d(w) == w_I * witness`` with ``I`` the stable closure of the support."""
    d: int
    witness: BraidWord
    kind = "delta_divisibility"


@dataclass(frozen=True)
class FullTwist:
    d: int
    kind = "full_twist"


@dataclass(frozen=True)
class MinimalLength:
    min_length: int
    kind = "minimal_length"


@dataclass(frozen=True)
class CyclicShiftTransfer:
    path: tuple[Element, ...]
    inner: Reason
    kind = "cyclic_shift"


Reason = Union[DeltaDivisibility, FullTwist, MinimalLength, CyclicShiftTransfer]


@dataclass(frozen=True)
class Verdict:
    element: Element
    status: Status
    reason: Reason | None
    reduced_support: frozenset[int]
    attempts: tuple[str, ...] = field(default=())

    @property
    def established(self) -> bool:
        return self.status is Status.ESTABLISHED

    def innermost(self) -> Reason | None:
        r = self.reason
        while isinstance(r, CyclicShiftTransfer):
            r = r.inner
        return r

    def to_json(self) -> dict:
        system = self.element.system
        inner = self.innermost()
        out = {
            "element": self.element.labels(),
            "status": self.status.value,
            "reason": None if self.reason is None else self.reason.kind,
            "d": getattr(inner, "d", None),
            "witness": inner.witness.to_json() if isinstance(inner, DeltaDivisibility) else None,
            "path": None,
            "reduced_support": system.subset_labels(self.reduced_support),
            "attempts": list(self.attempts),
        }
        if isinstance(self.reason, CyclicShiftTransfer):
            out["path"] = [x.labels() for x in self.reason.path]
            out["inner_reason"] = inner.kind
        return out


def support_reduce(w: Element, F: DiagramAutomorphism) -> frozenset[int]:
    """Smallest F-stable set of generators whose parabolic subgroup contains ``w``."""
    return F.closure(w.support())


def default_d_max(w: Element, F: DiagramAutomorphism) -> int:
    return 2 * twisted_order(w, F)


def _ambient(w, F, reduce):
    """(element, automorphism, subset) to compute with, inside ``W_I`` when reducing."""
    I = support_reduce(w, F)
    if not reduce:
        return w, F, I
    system = w.system
    sub_w = system.to_parabolic(w, I)
    return sub_w, F.restrict(I), sub_w.system.S


def _lift(b: BraidWord, system, I, reduce) -> BraidWord:
    if not reduce:
        return b
    return BraidWord(system, [system.from_parabolic(f, I) for f in b.factors])


def delta_divisibility_check(w: Element, F: DiagramAutomorphism, d_max: int | None = None,
                             reduce: bool = True) -> Verdict:
    """Smallest ``d <= d_max`` with ``w_I`` left-dividing ``w F(w) ... F^(d-1)(w)``.

    Left divisors of one twisted product divide all longer ones, so the first
    hit is the minimal ``d``.
    """
    I = support_reduce(w, F)
    if d_max is None:
        d_max = default_d_max(w, F)
    x, G, J = _ambient(w, F, reduce)
    target = x.system.longest_element(J)
    for d, beta in enumerate(beta_products(x, G), start=1):
        if d > d_max:
            break
        if left_divides_simple(target, beta):
            witness = _lift(left_quotient_simple(target, beta), w.system, I, reduce)
            return Verdict(w, Status.ESTABLISHED, DeltaDivisibility(d, witness), I)
    return Verdict(w, Status.INCONCLUSIVE, None, I, (f"delta_divisibility: d in 1..{d_max}",))


def full_twist_check(w: Element, F: DiagramAutomorphism, d: int | None = None, reduce: bool = True) -> Verdict:
    """Whether ``w F(w) ... F^(d-1)(w)`` is the full twist of ``W_I``.

    Without ``d`` the only length-compatible exponent is tried.
    """
    I = support_reduce(w, F)
    x, G, J = _ambient(w, F, reduce)
    twist = full_twist(x.system, J)
    if d is None:
        n = x.length()
        if n == 0:
            d = 1
        elif twist.length() % n:
            return Verdict(w, Status.INCONCLUSIVE, None, I,
                           (f"full_twist: length {n} does not divide {twist.length()}",))
        else:
            d = twist.length() // n
    if beta_product(x, G, d) == twist:
        return Verdict(w, Status.ESTABLISHED, FullTwist(d), I)
    return Verdict(w, Status.INCONCLUSIVE, None, I, (f"full_twist: d = {d}",))


def min_length_check(w: Element, F: DiagramAutomorphism) -> Verdict:
    I = support_reduce(w, F)
    cls = f_class_of(w, F)
    if w.length() == cls.min_length:
        return Verdict(w, Status.ESTABLISHED, MinimalLength(cls.min_length), I)
    return Verdict(w, Status.INCONCLUSIVE, None, I,
                   (f"minimal_length: length {w.length()} > class minimum {cls.min_length}",))


def cyclic_search(w: Element, F: DiagramAutomorphism, d_max: int | None = None, reduce: bool = True) -> Verdict:
    """Search the cyclic-shift component of ``w`` for an element passing a braid criterion."""
    I = support_reduce(w, F)
    visited = 0
    for x, path in cyclic_bfs(w, F):
        visited += 1
        for check in (delta_divisibility_check, full_twist_check):
            v = check(x, F, d_max, reduce) if check is delta_divisibility_check else check(x, F, None, reduce)
            if v.established:
                return Verdict(w, Status.ESTABLISHED, CyclicShiftTransfer(tuple(path), v.reason), I)
    return Verdict(w, Status.INCONCLUSIVE, None, I, (f"cyclic_shift: {visited} elements searched",))


ALL_CRITERIA = ("minimal_length", "delta_divisibility", "full_twist", "cyclic_shift")
# criteria that argue through braid identities only
BRAID_CRITERIA = ("delta_divisibility", "full_twist", "cyclic_shift")


def verdict(w: Element, F: DiagramAutomorphism, criteria: Sequence[str] = ALL_CRITERIA,
            d_max: int | None = None, reduce: bool = True) -> Verdict:
    """Run ``criteria`` in order; the first success wins."""
    attempts: list[str] = []
    for name in criteria:
        if name == "minimal_length":
            v = min_length_check(w, F)
        elif name == "delta_divisibility":
            v = delta_divisibility_check(w, F, d_max, reduce)
        elif name == "full_twist":
            v = full_twist_check(w, F, None, reduce)
        elif name == "cyclic_shift":
            v = cyclic_search(w, F, d_max, reduce)
        else:
            raise ValueError(f"unknown criterion {name!r}")
        if v.established:
            return v
        attempts.extend(v.attempts)
    return Verdict(w, Status.INCONCLUSIVE, None, support_reduce(w, F), tuple(attempts))


def recheck(v: Verdict, F: DiagramAutomorphism) -> bool:
    """Re-verify a divisibility certificate in the ambient braid monoid."""
    r = v.reason
    x = v.element
    if isinstance(r, CyclicShiftTransfer):
        x, r = r.path[-1], r.inner
    if not isinstance(r, DeltaDivisibility):
        return True
    system = x.system
    wI = BraidWord.simple(system.longest_element(support_reduce(x, F)))
    return wI * r.witness == beta_product(x, F, r.d)
