"""Replay of the worked B5 example: a regular element whose fifth power is the cube of Delta."""

from __future__ import annotations

from dataclasses import dataclass

from .affineness import verdict
from .braid import BraidWord, delta
from .classes import cyclic_equivalent
from .coxeter import CoxeterSystem, DiagramAutomorphism, build_system

WORD = "s1,t,s3,s2,s1,t,s1,s4,s3,s2,s1,t,s1,s2,s3"
SHIFTED_WORD = "s1,t,s3,s2,s1,t,s1,s2,s3,s4,s3,s2,s1,t,s1"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def run_checks(word: str = WORD, system: CoxeterSystem | None = None) -> list[Check]:
    W = system or build_system("B5")
    F = DiagramAutomorphism(W)
    w = W.parse_word(word)
    w0 = W.longest_element()
    s4 = W.parse_word("s4")
    shifted = s4 * w * s4

    fifth = BraidWord.simple(w) ** 5
    cube = delta(W) ** 3
    checks = [
        Check("braid_identity", fifth == cube,
              f"l_B(w^5) = {fifth.length()}, l_B(Delta^3) = {cube.length()}"),
        Check("lengths", w.length() == 15 and w0.length() == 25,
              f"l(w) = {w.length()}, l(w0) = {w0.length()}"),
        Check("cyclic_shift", shifted == W.parse_word(SHIFTED_WORD) and cyclic_equivalent(w, shifted, F),
              "s4 w s4 = " + ",".join(shifted.labels())),
    ]
    v = verdict(w, F)
    checks.append(Check("verdict", v.established,
                        f"{v.status.value} via {v.reason.kind if v.reason else 'none'}"))
    return checks
