import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dlaffine.coxeter import DiagramAutomorphism, build_system, parse_automorphism  # noqa: E402

B5_WORD = "s1,t,s3,s2,s1,t,s1,s4,s3,s2,s1,t,s1,s2,s3"

# (type, automorphism) pairs of the desk-scale sweep
SWEEP = [
    ("A1", None), ("A2", None), ("A3", None), ("A4", None),
    ("B2", None), ("B3", None), ("B4", None), ("D4", None), ("G2", None), ("F4", None),
    ("A2", "s1:s2,s2:s1"), ("A3", "s1:s3,s3:s1"), ("A4", "s1:s4,s4:s1,s2:s3,s3:s2"),
    ("D4", "s1:s3,s3:s4,s4:s1"),
]


@pytest.fixture(scope="session")
def systems():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_system(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def b5(systems):
    W = systems("B5")
    return W, DiagramAutomorphism(W), W.parse_word(B5_WORD)


def system_and_aut(get, name, aut):
    W = get(name)
    return W, parse_automorphism(W, aut)
