"""
Finite groups given by multiplication tables.

Elements are addressed by index; labels are only used at the file and
report boundary. Cosets and subgroups are frozensets of indices and the
canonical coset representative is the least index.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from grfrob.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    labels: Tuple[str, ...]
    table: np.ndarray
    identity: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        n = len(self.labels)
        if n == 0:
            raise InvalidInputError("a group needs at least one element")
        if len(set(self.labels)) != n:
            raise InvalidInputError("group labels must be distinct")
        if table.shape != (n, n):
            raise InvalidInputError(f"multiplication table must be {n}x{n}, got {table.shape}")
        if table.min() < 0 or table.max() >= n:
            raise InvalidInputError("multiplication table refers to unknown elements")
        expected = np.arange(n)
        for row in table:
            if not np.array_equal(np.sort(row), expected):
                raise InvalidInputError("multiplication table is not a Latin square")
        for col in table.T:
            if not np.array_equal(np.sort(col), expected):
                raise InvalidInputError("multiplication table is not a Latin square")
        if not (np.array_equal(table[self.identity], expected) and np.array_equal(table[:, self.identity], expected)):
            raise InvalidInputError(f"element {self.labels[self.identity]!r} is not an identity")
        # (ab)c == a(bc) for every triple
        left = table[table, :]  # left[a, b, c] = (ab)c
        right = table[:, table]  # right[a, b, c] = a(bc)
        if not np.array_equal(left, right):
            a, b, c = (int(i) for i in np.argwhere(left != right)[0])
            raise InvalidInputError(
                f"multiplication table is not associative at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
            )
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.labels == other.labels
            and self.identity == other.identity
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.labels, self.identity, self.table.tobytes()))

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def _inverses(self) -> Tuple[int, ...]:
        return tuple(int(np.nonzero(self.table[a] == self.identity)[0][0]) for a in self.elements)

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def product(self, *elems: int) -> int:
        out = self.identity
        for a in elems:
            out = int(self.table[out, a])
        return out

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def conj(self, sigma: int, h: int) -> int:
        """sigma * h * sigma^-1"""
        return self.product(sigma, h, self.inv(sigma))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidInputError(f"unknown group element {label!r}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> FrozenSet[int]:
        return frozenset(a for a in self.elements if all(self.mul(a, b) == self.mul(b, a) for b in self.elements))

    # Subgroups and cosets

    def _check_elements(self, elems: Iterable[int]) -> List[int]:
        out = []
        for a in elems:
            a = int(a)
            if not 0 <= a < self.order:
                raise InvalidInputError(f"element index {a} is outside a group of order {self.order}")
            out.append(a)
        return out

    def subgroup_closure(self, gens: Iterable[int]) -> FrozenSet[int]:
        gens = self._check_elements(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        S = frozenset(self._check_elements(elems))
        if self.identity not in S:
            return False
        return all(self.mul(a, self.inv(b)) in S for a in S for b in S)

    def left_coset(self, g: int, H: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.mul(g, h) for h in H)

    def right_coset(self, H: Iterable[int], g: int) -> FrozenSet[int]:
        return frozenset(self.mul(h, g) for h in H)

    def left_coset_rep(self, g: int, H: Iterable[int]) -> int:
        return min(self.left_coset(g, H))

    def right_coset_rep(self, H: Iterable[int], g: int) -> int:
        return min(self.right_coset(H, g))

    def left_cosets(self, H: Iterable[int]) -> List[FrozenSet[int]]:
        H = frozenset(self._check_elements(H))
        return sorted({self.left_coset(g, H) for g in self.elements}, key=min)

    def right_cosets(self, H: Iterable[int]) -> List[FrozenSet[int]]:
        H = frozenset(self._check_elements(H))
        return sorted({self.right_coset(H, g) for g in self.elements}, key=min)

    def conjugate_subgroup(self, H: Iterable[int], sigma: int) -> FrozenSet[int]:
        return frozenset(self.conj(sigma, h) for h in H)

    def left_coset_multiset(self, elems: Sequence[int], H: Iterable[int]) -> Tuple[int, ...]:
        """Sorted canonical representatives of the left cosets g·H for g in elems."""
        H = frozenset(H)
        return tuple(sorted(self.left_coset_rep(g, H) for g in elems))

    def right_coset_multiset(self, H: Iterable[int], elems: Sequence[int]) -> Tuple[int, ...]:
        H = frozenset(H)
        return tuple(sorted(self.right_coset_rep(H, g) for g in elems))

    def format_set(self, elems: Iterable[int]) -> List[str]:
        return [self.labels[a] for a in sorted(elems)]

    # Factories

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise InvalidInputError("cyclic group order must be positive")
        labels = tuple("e" if k == 0 else ("c" if k == 1 else f"c{k}") for k in range(n))
        table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return cls(labels, table, 0, name=f"C{n}")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(("e",), np.zeros((1, 1), dtype=np.int64), 0, name="C1")

    @classmethod
    def direct_product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        pairs = list(itertools.product(G.elements, H.elements))

        def lab(a, b):
            if a == G.identity and b == H.identity:
                return "e"
            return f"({G.label(a)},{H.label(b)})"

        labels = tuple(lab(a, b) for a, b in pairs)
        pos = {pair: i for i, pair in enumerate(pairs)}
        table = np.array(
            [[pos[(G.mul(a, c), H.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs],
            dtype=np.int64,
        )
        return cls(labels, table, pos[(G.identity, H.identity)], name=f"{G.name}x{H.name}")

    @classmethod
    def symmetric(cls, n: int = 3) -> "FiniteGroup":
        """Symmetric group on n points; (st)(x) = s(t(x))."""
        perms = sorted(itertools.permutations(range(n)), key=lambda s: (_cycle_label(s) != "e", _cycle_label(s)))
        pos = {s: i for i, s in enumerate(perms)}
        table = np.array(
            [[pos[tuple(s[t[x]] for x in range(n))] for t in perms] for s in perms],
            dtype=np.int64,
        )
        return cls(tuple(_cycle_label(s) for s in perms), table, 0, name=f"S{n}")

    @classmethod
    def by_name(cls, name: str) -> "FiniteGroup":
        """Parse names such as ``C4``, ``C2xC2``, ``S3`` or ``trivial``."""
        key = name.strip()
        if key.lower() in ("trivial", "1", "c1"):
            return cls.trivial()
        if "x" in key:
            factors = [cls.by_name(part) for part in key.split("x")]
            out = factors[0]
            for f in factors[1:]:
                out = cls.direct_product(out, f)
            return out
        if key[:1] in ("C", "c") and key[1:].isdigit():
            return cls.cyclic(int(key[1:]))
        if key[:1] in ("S", "s") and key[1:].isdigit():
            return cls.symmetric(int(key[1:]))
        raise InvalidInputError(f"unknown group name {name!r}")


def _cycle_label(perm: Sequence[int]) -> str:
    n = len(perm)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        cycles.append("(" + "".join(str(i + 1) for i in cyc) + ")")
    return "".join(cycles) or "e"


def group_homomorphism_image(G: FiniteGroup, K: FiniteGroup, images: Sequence[int]) -> Tuple[int, ...]:
    """Validate that images (indexed by G's elements) define a homomorphism G -> K."""
    images = tuple(int(x) for x in images)
    if len(images) != G.order:
        raise InvalidInputError("homomorphism needs one image per group element")
    for a in G.elements:
        for b in G.elements:
            if images[G.mul(a, b)] != K.mul(images[a], images[b]):
                raise InvalidInputError(f"map is not a homomorphism at ({G.label(a)}, {G.label(b)})")
    return images
