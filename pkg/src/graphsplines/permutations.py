"""Permutations of {1, ..., n} with reduced-word machinery.

Permutations are stored in one-line notation (``images[i-1] == w(i)``).
Products compose right-to-left: ``(u * v)(i) == u(v(i))``, so the written
product ``(12)(23)`` means "apply ``(23)`` first".  Cycle strings such as
``"(12)(23)"`` and one-line strings such as ``"[2,3,1]"`` both parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _all_tuples
from typing import Iterable, Iterator


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1, ..., n} in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise PermutationError(f"not a bijection on 1..{n}: {self.images}")

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def from_one_line(images: Iterable[int]) -> "Permutation":
        return Permutation(tuple(images))

    @staticmethod
    def transposition(i: int, j: int, n: int) -> "Permutation":
        """The permutation exchanging i and j, fixing everything else."""
        if not (1 <= i <= n and 1 <= j <= n and i != j):
            raise PermutationError(f"bad transposition ({i} {j}) in S_{n}")
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return Permutation(tuple(images))

    @staticmethod
    def simple(i: int, n: int) -> "Permutation":
        """The simple reflection (i, i+1)."""
        return Permutation.transposition(i, i + 1, n)

    @staticmethod
    def from_cycles(text: str, n: int) -> "Permutation":
        """Parse cycle notation: ``"(13)"``, ``"(12)(23)"``, ``"(1,10)(2 3)"``.

        ``"e"``, ``"id"``, ``"()"`` and ``""`` all give the identity.
        Written left-to-right, cycles compose right-to-left like products.
        """
        text = text.strip()
        if text in ("e", "id", "()", ""):
            return Permutation.identity(n)
        groups = re.findall(r"\(([^()]*)\)", text)
        leftover = re.sub(r"\([^()]*\)", "", text).strip()
        if not groups or leftover:
            raise PermutationError(f"cannot parse cycle notation: {text!r}")
        result = Permutation.identity(n)
        for group in groups:
            if "," in group or " " in group.strip():
                entries = [int(tok) for tok in re.split(r"[,\s]+", group.strip()) if tok]
            else:
                entries = [int(ch) for ch in group.strip()]
            if not entries:
                continue
            if any(not 1 <= e <= n for e in entries) or len(set(entries)) != len(entries):
                raise PermutationError(f"bad cycle ({group}) in S_{n}")
            images = list(range(1, n + 1))
            for a, b in zip(entries, entries[1:] + entries[:1]):
                images[a - 1] = b
            result = result * Permutation(tuple(images))
        return result

    @staticmethod
    def parse(text: str, n: int) -> "Permutation":
        """Parse either one-line ``"[2,1,3]"`` or cycle ``"(12)"`` notation."""
        text = text.strip()
        if text.startswith("["):
            body = text.strip("[]")
            images = tuple(int(tok) for tok in body.split(",") if tok.strip())
            if len(images) != n:
                raise PermutationError(f"one-line {text!r} is not in S_{n}")
            return Permutation(images)
        return Permutation.from_cycles(text, n)

    # -- basic group operations ---------------------------------------

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise PermutationError("size mismatch in product")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for i, w_i in enumerate(self.images, start=1):
            images[w_i - 1] = i
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(self.n))

    def length(self) -> int:
        """Number of inversions (Coxeter length)."""
        w = self.images
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if w[i] > w[j])

    def descents(self) -> list[int]:
        """Positions i with w(i) > w(i+1)."""
        w = self.images
        return [i + 1 for i in range(self.n - 1) if w[i] > w[i + 1]]

    def right_multiply_simple(self, i: int) -> "Permutation":
        """w * s_i, i.e. swap the entries in positions i and i+1."""
        images = list(self.images)
        images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    # -- reduced words -------------------------------------------------

    def reduced_word(self) -> tuple[int, ...]:
        """Deterministic reduced word: repeatedly strip the smallest descent.

        The word ``(i_1, ..., i_k)`` means ``w == s_{i_1} * ... * s_{i_k}``
        and k equals the inversion number.

        >>> Permutation.from_cycles("(13)", 3).reduced_word()
        (1, 2, 1)
        """
        u = self
        taken: list[int] = []
        while True:
            descents = u.descents()
            if not descents:
                break
            i = descents[0]
            taken.append(i)
            u = u.right_multiply_simple(i)
        return tuple(reversed(taken))

    def all_reduced_words(self) -> tuple[tuple[int, ...], ...]:
        """Every reduced word of this permutation, lexicographically sorted."""
        return _reduced_words(self.images)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """(length, canonical reduced word): a linear extension of Bruhat order."""
        return (self.length(), self.reduced_word())

    # -- presentation ---------------------------------------------------

    def one_line(self) -> str:
        return "[" + ",".join(str(i) for i in self.images) + "]"

    def cycles(self) -> str:
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self(j)
            out.append("(" + " ".join(str(c) for c in cycle) + ")")
        return "".join(out) if out else "e"

    def __str__(self) -> str:
        return self.one_line()


@lru_cache(maxsize=None)
def _reduced_words(images: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    w = Permutation(images)
    if w.is_identity():
        return ((),)
    words = []
    inv = w.inverse()
    for i in range(1, w.n):
        # s_i * w is shorter exactly when i appears after i+1 in w
        if inv(i) > inv(i + 1):
            shorter = Permutation.simple(i, w.n) * w
            for rest in _reduced_words(shorter.images):
                words.append((i,) + rest)
    return tuple(sorted(words))


def symmetric_group(n: int) -> list[Permutation]:
    """All of S_n sorted by (length, canonical reduced word)."""
    perms = [Permutation(images) for images in _all_tuples(range(1, n + 1))]
    perms.sort(key=Permutation.sort_key)
    return perms


def is_reduced(word: Iterable[int], n: int) -> bool:
    """True if the word multiplies out to a permutation of that length."""
    word = tuple(word)
    w = word_to_permutation(word, n)
    return w.length() == len(word)


def word_to_permutation(word: Iterable[int], n: int) -> Permutation:
    w = Permutation.identity(n)
    for i in word:
        if not 1 <= i <= n - 1:
            raise PermutationError(f"letter {i} is not a simple reflection index in S_{n}")
        w = w * Permutation.simple(i, n)
    return w


def iter_transpositions(n: int) -> Iterator[tuple[int, int]]:
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield i, j
