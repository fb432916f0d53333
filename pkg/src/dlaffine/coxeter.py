"""Finite crystallographic Coxeter systems with exact root-permutation arithmetic.

A group element is stored as the permutation it induces on the signed roots.
Positive roots carry indices ``0..N-1`` (the simple roots come first, in
generator order) and the negative of root ``r`` has index ``r + N``.  The
tuple ``perm`` of an element ``w`` satisfies ``perm[r] == index of w(r)``.
"""

from __future__ import annotations

import json
from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

ROOT_CAP = 10_000
GROUP_CAP = 1_000_000

# product of the two off-diagonal Cartan entries for each bond order
_BOND_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3}


class CoxeterError(ValueError):
    pass


class NonCrystallographic(CoxeterError):
    pass


class NonFiniteType(CoxeterError):
    pass


class GroupTooLarge(CoxeterError):
    pass


class InvalidAutomorphism(CoxeterError):
    pass


def cartan_from_coxeter(m: Sequence[Sequence[int]], flip: bool = False) -> list[list[int]]:
    """Integer Cartan matrix realizing the Coxeter matrix ``m``.

    For a bond of order 4 or 6 between generators ``i < j`` the entry
    ``A[i][j]`` is -2 (resp. -3) and ``A[j][i]`` is -1; ``flip`` swaps the
    two.  ``A[i][j]`` is the coefficient in ``s_i(alpha_j) = alpha_j - A[i][j] alpha_i``.
    """
    n = len(m)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in combinations(range(n), 2):
        k = _BOND_PRODUCT[m[i][j]]
        if k == 0:
            continue
        big, small = (-k, -1)
        if flip:
            big, small = small, big
        a[i][j], a[j][i] = big, small
    return a


def _check_coxeter_matrix(m: Sequence[Sequence[int]]) -> None:
    n = len(m)
    for i in range(n):
        if len(m[i]) != n:
            raise CoxeterError("Coxeter matrix must be square")
        if m[i][i] != 1:
            raise CoxeterError(f"diagonal entry m[{i}][{i}] must be 1")
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise CoxeterError("Coxeter matrix must be symmetric")
            if i != j and m[i][j] not in _BOND_PRODUCT:
                raise NonCrystallographic(
                    f"bond order {m[i][j]} between generators {i} and {j} is not in {{2, 3, 4, 6}}"
                )


def _close_roots(cartan: list[list[int]], root_cap: int) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = list(simple)
    seen = set(roots)
    queue = deque(roots)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            c = sum(cartan[i][j] * beta[j] for j in range(n))
            if c == 0:
                continue
            image = list(beta)
            image[i] -= c
            image = tuple(image)
            if min(image) < 0 or image in seen:
                continue
            seen.add(image)
            roots.append(image)
            if len(roots) > root_cap:
                raise NonFiniteType(f"root closure exceeded {root_cap} positive roots")
            queue.append(image)
    return roots


class CoxeterSystem:
    """A finite Weyl group ``W`` together with its simple reflections.

    Immutable after construction; per-system caches only memoize pure results.
    """

    def __init__(
        self,
        coxeter_matrix: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str | None = None,
        root_cap: int = ROOT_CAP,
        flip_cartan: bool = False,
    ):
        m = [list(row) for row in coxeter_matrix]
        _check_coxeter_matrix(m)
        n = len(m)
        if labels is None:
            labels = [f"s{i + 1}" for i in range(n)]
        labels = list(labels)
        if len(labels) != n or len(set(labels)) != n:
            raise CoxeterError("need one distinct label per generator")
        self.name = name
        self.labels: tuple[str, ...] = tuple(labels)
        self.rank = n
        self.coxeter_matrix = tuple(tuple(r) for r in m)
        self.cartan_matrix = tuple(tuple(r) for r in cartan_from_coxeter(m, flip_cartan))
        self.positive_roots = tuple(_close_roots([list(r) for r in self.cartan_matrix], root_cap))
        self.num_positive_roots = N = len(self.positive_roots)
        index = {beta: r for r, beta in enumerate(self.positive_roots)}
        action = []
        for i in range(n):
            row = [0] * (2 * N)
            for r, beta in enumerate(self.positive_roots):
                if r == i:
                    image = i + N
                else:
                    c = sum(self.cartan_matrix[i][j] * beta[j] for j in range(n))
                    img = list(beta)
                    img[i] -= c
                    image = index[tuple(img)]
                row[r] = image
                row[r + N] = (image + N) % (2 * N)
            action.append(tuple(row))
        self.gen_action: tuple[tuple[int, ...], ...] = tuple(action)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._parabolic_cache: dict[frozenset, tuple] = {}

    def __repr__(self):
        return f"CoxeterSystem({self.name or self.labels!r}, N={self.num_positive_roots})"

    # -- elements ---------------------------------------------------------
    @cached_property
    def identity(self) -> Element:
        return Element(self, tuple(range(2 * self.num_positive_roots)))

    @cached_property
    def generators(self) -> tuple[Element, ...]:
        return tuple(Element(self, g) for g in self.gen_action)

    @property
    def S(self) -> frozenset[int]:
        return frozenset(range(self.rank))

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise CoxeterError(f"unknown generator label {label!r}") from None

    def evaluate(self, word: Iterable[int | str]) -> Element:
        """Product of generators read left to right; accepts indices or labels."""
        perm = self.identity.perm
        for s in word:
            i = self.index_of(s) if isinstance(s, str) else s
            perm = tuple(map(perm.__getitem__, self.gen_action[i]))
        return Element(self, perm)

    def parse_word(self, text: str) -> Element:
        text = text.strip()
        if not text:
            return self.identity
        return self.evaluate([tok.strip() for tok in text.split(",") if tok.strip()])

    def word_labels(self, word: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in word]

    def subset_labels(self, subset: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in sorted(subset)]

    def longest_element(self, subset: Iterable[int] | None = None) -> Element:
        """The longest element of the parabolic subgroup generated by ``subset``."""
        subset = self.S if subset is None else frozenset(subset)
        w = self.identity
        while True:
            for i in sorted(subset):
                if not w.has_right_descent(i):
                    w = w.right_mul_gen(i)
                    break
            else:
                return w

    def elements(self, max_size: int = GROUP_CAP) -> list[Element]:
        """All of ``W`` in breadth-first (length) order."""
        seen = {self.identity.perm}
        out = [self.identity]
        queue = deque(out)
        while queue:
            w = queue.popleft()
            for g in self.gen_action:
                perm = tuple(map(g.__getitem__, w.perm))
                if perm not in seen:
                    seen.add(perm)
                    if len(seen) > max_size:
                        raise GroupTooLarge(f"|W| exceeds the cap of {max_size}")
                    x = Element(self, perm)
                    out.append(x)
                    queue.append(x)
        return out

    # -- parabolic subsystems ---------------------------------------------
    def parabolic(self, subset: Iterable[int]) -> CoxeterSystem:
        """The Coxeter system ``(W_I, I)`` with generators in increasing index order."""
        key = frozenset(subset)
        if key not in self._parabolic_cache:
            idx = sorted(key)
            sub = CoxeterSystem(
                [[self.coxeter_matrix[i][j] for j in idx] for i in idx],
                labels=[self.labels[i] for i in idx],
                name=f"{self.name or 'W'}[{','.join(self.labels[i] for i in idx)}]",
            )
            self._parabolic_cache[key] = (sub, tuple(idx))
        return self._parabolic_cache[key][0]

    def to_parabolic(self, w: Element, subset: Iterable[int]) -> Element:
        sub = self.parabolic(subset)
        idx = self._parabolic_cache[frozenset(subset)][1]
        pos = {g: k for k, g in enumerate(idx)}
        try:
            return sub.evaluate(pos[i] for i in w.canonical_word())
        except KeyError:
            raise CoxeterError("element does not lie in the parabolic subgroup") from None

    def from_parabolic(self, x: Element, subset: Iterable[int]) -> Element:
        self.parabolic(subset)
        idx = self._parabolic_cache[frozenset(subset)][1]
        return self.evaluate(idx[k] for k in x.canonical_word())


class Element:
    """An element of a finite Weyl group, as a signed-root permutation."""

    __slots__ = ("system", "perm", "_key", "_inv", "_length", "_rdes", "_ldes", "_word")

    def __init__(self, system: CoxeterSystem, perm: tuple[int, ...]):
        self.system = system
        self.perm = perm
        # images of the simple roots determine w
        self._key = perm[: system.rank]
        self._inv = None
        self._length = None
        self._rdes = None
        self._ldes = None
        self._word = None

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._key == other._key and self.system is other.system

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        word = self.canonical_word()
        return "Element(" + (".".join(self.system.word_labels(word)) or "1") + ")"

    def __mul__(self, other: Element) -> Element:
        return Element(self.system, tuple(map(self.perm.__getitem__, other.perm)))

    @property
    def N(self) -> int:
        return self.system.num_positive_roots

    def inverse(self) -> Element:
        if self._inv is None:
            inv = [0] * len(self.perm)
            for r, image in enumerate(self.perm):
                inv[image] = r
            self._inv = Element(self.system, tuple(inv))
            self._inv._inv = self
        return self._inv

    def is_identity(self) -> bool:
        return self._key == self.system.identity._key

    def length(self) -> int:
        if self._length is None:
            N = self.N
            self._length = sum(1 for r in range(N) if self.perm[r] >= N)
        return self._length

    def right_mul_gen(self, i: int) -> Element:
        return Element(self.system, tuple(map(self.perm.__getitem__, self.system.gen_action[i])))

    def left_mul_gen(self, i: int) -> Element:
        return Element(self.system, tuple(map(self.system.gen_action[i].__getitem__, self.perm)))

    def apply_gen(self, i: int, side: str = "left") -> Element:
        if side == "left":
            return self.left_mul_gen(i)
        if side == "right":
            return self.right_mul_gen(i)
        raise ValueError("side must be 'left' or 'right'")

    # descents as bitmasks: bit i set when generator i is a descent
    @property
    def rdes_mask(self) -> int:
        if self._rdes is None:
            N = self.N
            self._rdes = sum(1 << i for i in range(self.system.rank) if self.perm[i] >= N)
        return self._rdes

    @property
    def ldes_mask(self) -> int:
        if self._ldes is None:
            self._ldes = self.inverse().rdes_mask
        return self._ldes

    def has_right_descent(self, i: int) -> bool:
        return bool(self.rdes_mask >> i & 1)

    def has_left_descent(self, i: int) -> bool:
        return bool(self.ldes_mask >> i & 1)

    def right_descents(self) -> frozenset[int]:
        return _mask_to_set(self.rdes_mask)

    def left_descents(self) -> frozenset[int]:
        return _mask_to_set(self.ldes_mask)

    def canonical_word(self) -> tuple[int, ...]:
        """Reduced word obtained by repeatedly stripping the smallest left descent."""
        if self._word is None:
            word = []
            w = self
            while True:
                mask = w.ldes_mask
                if not mask:
                    break
                i = (mask & -mask).bit_length() - 1
                word.append(i)
                w = w.left_mul_gen(i)
            self._word = tuple(word)
        return self._word

    def support(self) -> frozenset[int]:
        return frozenset(self.canonical_word())

    def labels(self) -> list[str]:
        return self.system.word_labels(self.canonical_word())

    def is_prefix_of(self, w: Element) -> bool:
        return is_prefix(self, w)


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def multiply(a: Element, b: Element) -> Element:
    return a * b


def inverse(a: Element) -> Element:
    return a.inverse()


def length(w: Element) -> int:
    return w.length()


def is_prefix(x: Element, w: Element) -> bool:
    """Left weak order: ``l(x) + l(x^-1 w) == l(w)``."""
    return x.length() + (x.inverse() * w).length() == w.length()


def prefixes(w: Element) -> Iterator[tuple[Element, Element]]:
    """All factorizations ``w = x*y`` with lengths adding, as pairs ``(x, y)``."""
    start = (w.system.identity, w)
    seen = {start[0]}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        yield x, y
        mask = y.ldes_mask
        i = 0
        while mask:
            if mask & 1:
                x2 = x.right_mul_gen(i)
                if x2 not in seen:
                    seen.add(x2)
                    queue.append((x2, y.left_mul_gen(i)))
            mask >>= 1
            i += 1


class DiagramAutomorphism:
    """A permutation of the generators preserving the Coxeter matrix.

    Acts on ``W`` by ``s_i -> s_sigma(i)``.
    """

    def __init__(self, system: CoxeterSystem, sigma: Sequence[int] | None = None):
        n = system.rank
        sigma = tuple(range(n)) if sigma is None else tuple(sigma)
        if sorted(sigma) != list(range(n)):
            raise InvalidAutomorphism("automorphism must permute the generators")
        m = system.coxeter_matrix
        for i in range(n):
            for j in range(n):
                if m[sigma[i]][sigma[j]] != m[i][j]:
                    raise InvalidAutomorphism(
                        f"{system.labels[i]}->{system.labels[sigma[i]]} does not preserve the Coxeter matrix"
                    )
        self.system = system
        self.sigma = sigma
        self._cache: dict[Element, Element] = {}

    def __repr__(self):
        moved = [f"{self.system.labels[i]}:{self.system.labels[j]}" for i, j in enumerate(self.sigma) if i != j]
        return f"DiagramAutomorphism({','.join(moved) or 'id'})"

    def __eq__(self, other):
        return isinstance(other, DiagramAutomorphism) and self.system is other.system and self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    @property
    def is_identity(self) -> bool:
        return self.sigma == tuple(range(self.system.rank))

    @cached_property
    def order(self) -> int:
        k, p = 1, self.sigma
        while p != tuple(range(len(p))):
            p = tuple(self.sigma[i] for i in p)
            k += 1
        return k

    def __call__(self, w: Element) -> Element:
        return self.apply(w)

    def apply(self, w: Element) -> Element:
        if self.is_identity:
            return w
        image = self._cache.get(w)
        if image is None:
            image = self.system.evaluate(self.sigma[i] for i in w.canonical_word())
            self._cache[w] = image
        return image

    def power_apply(self, w: Element, k: int) -> Element:
        for _ in range(k % self.order):
            w = self.apply(w)
        return w

    def apply_subset(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.sigma[i] for i in subset)

    def closure(self, subset: Iterable[int]) -> frozenset[int]:
        """Smallest stable superset of ``subset``."""
        out = set(subset)
        frontier = list(out)
        while frontier:
            j = self.sigma[frontier.pop()]
            if j not in out:
                out.add(j)
                frontier.append(j)
        return frozenset(out)

    def restrict(self, subset: Iterable[int]) -> DiagramAutomorphism:
        """The induced automorphism of the parabolic subsystem on a stable ``subset``."""
        subset = frozenset(subset)
        if self.apply_subset(subset) != subset:
            raise InvalidAutomorphism("subset is not stable under the automorphism")
        sub = self.system.parabolic(subset)
        idx = sorted(subset)
        pos = {g: k for k, g in enumerate(idx)}
        return DiagramAutomorphism(sub, [pos[self.sigma[g]] for g in idx])

    def to_dict(self) -> dict[str, str]:
        return {self.system.labels[i]: self.system.labels[j] for i, j in enumerate(self.sigma)}


def apply_automorphism(F: DiagramAutomorphism, w: Element) -> Element:
    return F.apply(w)


def f_closure(F: DiagramAutomorphism, subset: Iterable[int]) -> frozenset[int]:
    return F.closure(subset)


def parse_automorphism(system: CoxeterSystem, text: str | None) -> DiagramAutomorphism:
    """Parse ``"a:b,b:a"``; unlisted generators are fixed."""
    sigma = list(range(system.rank))
    if text:
        for pair in text.split(","):
            pair = pair.strip()
            if not pair:
                continue
            try:
                src, dst = (p.strip() for p in pair.split(":"))
            except ValueError:
                raise InvalidAutomorphism(f"bad automorphism entry {pair!r}; expected a:b") from None
            sigma[system.index_of(src)] = system.index_of(dst)
    return DiagramAutomorphism(system, sigma)


# -- named types ----------------------------------------------------------

def _chain(n: int) -> list[list[int]]:
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = 3
    return m


def coxeter_matrix_of_type(name: str) -> tuple[list[list[int]], list[str]]:
    """Coxeter matrix and generator labels for a type name such as ``"B5"``.

    Type B uses the labels ``t, s1, ..., s(n-1)`` with ``m(t, s1) = 4``; every
    other family uses Bourbaki numbering ``s1, ..., sn``.
    """
    name = name.strip().upper()
    family, rank_text = name[:1], name[1:]
    if not rank_text.isdigit():
        raise CoxeterError(f"unknown Coxeter type {name!r}")
    n = int(rank_text)
    labels = [f"s{i + 1}" for i in range(n)]
    if family == "A" and n >= 1:
        m = _chain(n)
    elif family == "B" and n >= 2:
        m = _chain(n)
        m[0][1] = m[1][0] = 4
        labels = ["t"] + [f"s{i}" for i in range(1, n)]
    elif family == "C" and n >= 2:
        m = _chain(n)
        m[n - 2][n - 1] = m[n - 1][n - 2] = 4
    elif family == "D" and n >= 4:
        m = _chain(n)
        m[n - 2][n - 1] = m[n - 1][n - 2] = 2
        m[n - 3][n - 1] = m[n - 1][n - 3] = 3
    elif family == "E" and n in (6, 7, 8):
        # Bourbaki: 1-3-4-5-6-..., with 2 attached to 4
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
        for i, j in edges:
            m[i][j] = m[j][i] = 3
    elif family == "F" and n == 4:
        m = _chain(4)
        m[1][2] = m[2][1] = 4
    elif family == "G" and n == 2:
        m = [[1, 6], [6, 1]]
    else:
        raise CoxeterError(f"unknown Coxeter type {name!r}")
    return m, labels


def build_system(spec: str | Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 root_cap: int = ROOT_CAP) -> CoxeterSystem:
    """Build a system from a type name (``"A4"``, ``"B5"``, ...) or a Coxeter matrix."""
    if isinstance(spec, str):
        m, default_labels = coxeter_matrix_of_type(spec)
        return CoxeterSystem(m, labels or default_labels, name=spec.strip().upper(), root_cap=root_cap)
    return CoxeterSystem(spec, labels, root_cap=root_cap)


def load_system(path: str, root_cap: int = ROOT_CAP) -> CoxeterSystem:
    """Read ``{"labels": [...], "m": [[...]]}`` from a JSON file."""
    with open(path) as fh:
        data = json.load(fh)
    try:
        m = data["m"]
    except (KeyError, TypeError):
        raise CoxeterError("matrix file needs an 'm' entry") from None
    return CoxeterSystem(m, data.get("labels"), name=data.get("name"), root_cap=root_cap)
