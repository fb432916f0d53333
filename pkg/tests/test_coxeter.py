import json
import random
from itertools import chain, combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dlaffine.coxeter import (
    CoxeterError,
    CoxeterSystem,
    DiagramAutomorphism,
    InvalidAutomorphism,
    NonCrystallographic,
    NonFiniteType,
    build_system,
    f_closure,
    is_prefix,
    load_system,
    parse_automorphism,
    prefixes,
)
from oracles import cayley_lengths, coxeter_matrix, reflection_matrices, word_matrix


def subsets(n):
    return chain.from_iterable(combinations(range(n), k) for k in range(n + 1))


@pytest.mark.parametrize("name, n_roots", [
    ("A1", 1), ("A2", 3), ("A4", 10), ("A7", 28),
    ("B2", 4), ("B5", 25), ("C3", 9), ("C5", 25),
    ("D4", 12), ("D6", 30), ("E6", 36), ("F4", 24), ("G2", 6),
])
def test_root_counts(name, n_roots):
    # closed forms: A_n n(n+1)/2, B_n/C_n n^2, D_n n(n-1)
    assert build_system(name).num_positive_roots == n_roots


@pytest.mark.parametrize("family, n", [("A", 2), ("A", 3), ("B", 3), ("B", 4), ("D", 4), ("G", 2), ("F", 4)])
def test_group_order_matches_matrix_group(family, n):
    W = build_system(f"{family}{n}")
    dist, _ = cayley_lengths(reflection_matrices(coxeter_matrix(family, n)))
    assert len(W.elements()) == len(dist)


def test_noncrystallographic_rejected():
    with pytest.raises(NonCrystallographic):
        CoxeterSystem([[1, 5], [5, 1]])
    with pytest.raises(NonCrystallographic):
        CoxeterSystem([[1, 3, 2], [3, 1, 5], [2, 5, 1]])


def test_affine_type_hits_root_cap():
    # affine A2: a triangle of order-3 bonds
    with pytest.raises(NonFiniteType):
        CoxeterSystem([[1, 3, 3], [3, 1, 3], [3, 3, 1]], root_cap=500)


def test_bad_matrices():
    with pytest.raises(CoxeterError):
        CoxeterSystem([[1, 3], [2, 1]])
    with pytest.raises(CoxeterError):
        CoxeterSystem([[2, 3], [3, 1]])
    with pytest.raises(CoxeterError):
        build_system("Q3")
    with pytest.raises(CoxeterError):
        build_system("D3")


def test_cartan_orientation_irrelevant_for_group():
    m = coxeter_matrix("B", 3).tolist()
    a = CoxeterSystem(m, flip_cartan=False)
    b = CoxeterSystem(m, flip_cartan=True)
    assert a.cartan_matrix != b.cartan_matrix
    assert len(a.elements()) == len(b.elements()) == 48


def test_b5_labels(systems):
    W = systems("B5")
    assert W.labels == ("t", "s1", "s2", "s3", "s4")
    assert W.coxeter_matrix[0][1] == 4
    assert all(W.coxeter_matrix[i][i + 1] == 3 for i in range(1, 4))


def test_gen_action_involutive_and_sign_compatible(systems):
    for name in ["A3", "B4", "G2", "F4", "E6"]:
        W = systems(name)
        N = W.num_positive_roots
        for i, g in enumerate(W.gen_action):
            assert all(g[g[r]] == r for r in range(2 * N))
            assert all(g[(r + N) % (2 * N)] == (g[r] + N) % (2 * N) for r in range(2 * N))
            negated = [r for r in range(N) if g[r] >= N]
            assert negated == [i]


def test_multiply_basics(systems):
    W = systems("A2")
    s1, s2 = W.generators
    e = W.identity
    assert s1 * e == s1 and e * s1 == s1
    assert (s1 * s2).length() == 2
    assert (s1 * s2).inverse() == s2 * s1
    assert s1.apply_gen(1, "right") == s1 * s2
    assert s1.apply_gen(1, "left") == s2 * s1


def test_lengths_match_cayley_bfs():
    """Root-count length agrees with the word metric on the matrix group (exhaustive)."""
    for family, n in [("B", 3), ("A", 3), ("G", 2)]:
        W = build_system(f"{family}{n}")
        mats = reflection_matrices(coxeter_matrix(family, n))
        dist, _ = cayley_lengths(mats)
        for w in W.elements():
            assert dist[word_matrix(mats, w.canonical_word()).tobytes()] == w.length()


def test_elements_agree_with_matrices_on_random_words():
    rng = random.Random(7)
    W = build_system("F4")
    mats = reflection_matrices(coxeter_matrix("F", 4))
    for _ in range(300):
        u = [rng.randrange(4) for _ in range(rng.randrange(12))]
        v = [rng.randrange(4) for _ in range(rng.randrange(12))]
        same_matrix = np.array_equal(word_matrix(mats, u), word_matrix(mats, v))
        assert (W.evaluate(u) == W.evaluate(v)) == same_matrix


def test_length_examples(systems, b5):
    W, _, w = b5
    assert W.identity.length() == 0
    assert W.longest_element().length() == 25
    assert w.length() == 15


def test_descents(systems):
    W = systems("A2")
    s1, s2 = W.generators
    assert W.identity.left_descents() == frozenset()
    assert W.longest_element().left_descents() == W.S
    assert W.longest_element().right_descents() == W.S
    assert (s1 * s2).left_descents() == {0}
    assert (s1 * s2).right_descents() == {1}


def test_descents_match_length_drop(systems):
    W = systems("B3")
    for w in W.elements():
        for i in range(W.rank):
            assert w.has_left_descent(i) == (w.left_mul_gen(i).length() < w.length())
            assert w.has_right_descent(i) == (w.right_mul_gen(i).length() < w.length())


def test_longest_element(systems):
    W = systems("A2")
    assert W.longest_element(()) == W.identity
    w0 = W.longest_element()
    assert w0 == W.parse_word("s1,s2,s1") and w0.length() == 3
    assert max(W.elements(), key=lambda x: x.length()) == w0
    B5 = systems("B5")
    assert B5.longest_element().length() == 25
    # w_I has all of I as descents and nothing else
    B3 = systems("B3")
    for I in subsets(3):
        wI = B3.longest_element(I)
        assert wI.left_descents() == frozenset(I)
        assert wI.length() == B3.parabolic(I).num_positive_roots


def test_canonical_word(systems):
    W = systems("A2")
    assert W.identity.canonical_word() == ()
    assert W.longest_element().canonical_word() == (0, 1, 0)
    B3 = systems("B3")
    for w in B3.elements():
        word = w.canonical_word()
        assert len(word) == w.length()
        assert B3.evaluate(word) == w


def test_support(systems, b5):
    W, _, w = b5
    assert W.identity.support() == frozenset()
    assert w.support() == W.S
    A2 = systems("A2")
    assert A2.parse_word("s1,s2,s1").support() == {0, 1}


def _random_braid_move(word, m, rng):
    """Apply one braid relation at a random applicable position, if any."""
    spots = []
    for p in range(len(word) - 1):
        i, j = word[p], word[p + 1]
        if i == j:
            continue
        k = m[i][j]
        seg = word[p:p + k]
        if len(seg) == k and all(seg[t] == (i if t % 2 == 0 else j) for t in range(k)):
            spots.append((p, i, j, k))
    if not spots:
        return word
    p, i, j, k = rng.choice(spots)
    return word[:p] + tuple(j if t % 2 == 0 else i for t in range(k)) + word[p + k:]


def test_support_invariant_under_braid_moves():
    rng = random.Random(11)
    groups = {name: build_system(name) for name in ["A3", "B3", "G2"]}
    elements = {name: W.elements() for name, W in groups.items()}
    pairs = 0
    while pairs < 1000:
        name = rng.choice(sorted(groups))
        W = groups[name]
        w = rng.choice(elements[name])
        word = w.canonical_word()
        other = word
        for _ in range(10):
            other = _random_braid_move(other, W.coxeter_matrix, rng)
        if other == word:
            continue
        assert W.evaluate(other) == w
        assert set(other) == set(word)
        pairs += 1


def test_is_prefix(systems):
    W = systems("B3")
    w0 = W.longest_element()
    for w in W.elements():
        assert is_prefix(W.identity, w)
        assert is_prefix(w, w0)
        assert is_prefix(w0, w) == (w == w0)


def test_prefixes_enumerate_weak_interval(systems):
    W = systems("B3")
    els = W.elements()
    rng = random.Random(3)
    for w in rng.sample(els, 20):
        found = {x for x, _ in prefixes(w)}
        assert found == {x for x in els if is_prefix(x, w)}
        assert all(x * y == w for x, y in prefixes(w))


def test_exchange_condition(systems):
    W = systems("B3")
    for w in W.elements():
        for i in range(3):
            assert abs(w.left_mul_gen(i).length() - w.length()) == 1


def test_automorphisms(systems):
    A2 = systems("A2")
    split = DiagramAutomorphism(A2)
    flip = parse_automorphism(A2, "s1:s2,s2:s1")
    assert f_closure(split, {0}) == {0}
    assert f_closure(flip, {0}) == {0, 1}
    assert flip(A2.generators[0]) == A2.generators[1]
    assert flip.order == 2 and split.order == 1
    D4 = systems("D4")
    tri = parse_automorphism(D4, "s1:s3,s3:s4,s4:s1")
    assert tri.order == 3
    assert tri.closure({0}) == {0, 2, 3}


def test_invalid_automorphism(systems):
    with pytest.raises(InvalidAutomorphism):
        parse_automorphism(systems("A3"), "s1:s2,s2:s1")
    with pytest.raises(InvalidAutomorphism):
        parse_automorphism(systems("A3"), "s1:s3")
    with pytest.raises(CoxeterError):
        parse_automorphism(systems("A3"), "s1:s9,s9:s1")


def test_automorphism_is_length_preserving_homomorphism(systems):
    W = systems("A3")
    F = parse_automorphism(W, "s1:s3,s3:s1")
    els = W.elements()
    for w in els:
        assert F(w).length() == w.length()
        assert F(F(w)) == w
    for a in els:
        for b in els:
            assert F(a * b) == F(a) * F(b)


def test_parabolic_roundtrip(systems):
    W = systems("F4")
    I = frozenset({1, 2})
    sub = W.parabolic(I)
    assert sub.labels == ("s2", "s3") and sub.num_positive_roots == 4
    for x in sub.elements():
        y = W.from_parabolic(x, I)
        assert W.to_parabolic(y, I) == x
        assert y.length() == x.length()
    with pytest.raises(CoxeterError):
        W.to_parabolic(W.generators[0], I)
    empty = W.parabolic(())
    assert empty.rank == 0 and len(empty.elements()) == 1


def test_load_system(tmp_path):
    path = tmp_path / "g2.json"
    path.write_text(json.dumps({"labels": ["a", "b"], "m": [[1, 6], [6, 1]]}))
    W = load_system(str(path))
    assert W.labels == ("a", "b") and W.num_positive_roots == 6
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels": ["a"]}))
    with pytest.raises(CoxeterError):
        load_system(str(bad))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=20), st.lists(st.integers(0, 3), max_size=20))
def test_length_subadditive_and_inverse(u, v):
    W = build_system("B4")
    a, b = W.evaluate(u), W.evaluate(v)
    assert (a * b).length() <= a.length() + b.length()
    assert a.inverse().length() == a.length()
    assert (a * b).inverse() == b.inverse() * a.inverse()
