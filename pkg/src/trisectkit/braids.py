"""Artin braid words, the faithful free-group action and full-twist factorizations.

A braid on ``n`` strands is a tuple of nonzero integers: ``i`` stands for
the generator sigma_i and ``-i`` for its inverse.  Equality of braids is
decided by comparing the induced automorphisms of the free group
F_n = <x_1, ..., x_n>, with

    sigma_i:  x_i -> x_i x_{i+1} x_i^-1,   x_{i+1} -> x_i.

Free words inside this module use the same signed-integer encoding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .verdict import BudgetExceeded, InputError, Verdict

DEFAULT_WORD_LIMIT = 10**6
ALLOWED_EXPONENTS = (-2, 1, 2, 3)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise InputError(f"strand count must be positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(e) for e in self.letters))
        for pos, e in enumerate(self.letters):
            if e == 0 or abs(e) > self.strands - 1:
                raise InputError(
                    f"letter {e} at position {pos} is not a generator of B_{self.strands}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    @property
    def exponent_sum(self) -> int:
        return sum(1 if e > 0 else -1 for e in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """Underlying permutation, as the image tuple of 0..n-1 (strand at
        bottom position p ends at top position perm[p])."""
        pos = list(range(self.strands))  # pos[strand] = current position
        where = list(range(self.strands))  # where[position] = strand
        for e in self.letters:
            i = abs(e) - 1
            a, b = where[i], where[i + 1]
            where[i], where[i + 1] = b, a
            pos[a], pos[b] = i + 1, i
        return tuple(pos)

    def __str__(self) -> str:
        if not self.letters:
            return f"1 in B_{self.strands}"
        return " ".join(f"s{abs(e)}" + ("^-1" if e < 0 else "") for e in self.letters)


def _check_same(a: BraidWord, b: BraidWord) -> None:
    if a.strands != b.strands:
        raise InputError(f"strand-count mismatch: B_{a.strands} vs B_{b.strands}")


def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    _check_same(a, b)
    return BraidWord(a.strands, a.letters + b.letters)


def invert(a: BraidWord) -> BraidWord:
    return BraidWord(a.strands, tuple(-e for e in reversed(a.letters)))


def reduce(a: BraidWord) -> BraidWord:
    """Cancel adjacent sigma_i sigma_i^-1 pairs until none remain."""
    return BraidWord(a.strands, free_reduce(a.letters))


def cyclic_reduce(a: BraidWord) -> BraidWord:
    """Free reduction followed by cancelling inverse letters at the two ends.

    The trace closure is unchanged because the result is a conjugate."""
    w = list(free_reduce(a.letters))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return BraidWord(a.strands, tuple(w))


def word_algebra(a: BraidWord, b: BraidWord | None = None, mode: str = "compose") -> BraidWord:
    if mode == "compose":
        if b is None:
            raise InputError("compose needs two words")
        return compose(a, b)
    if mode == "invert":
        return invert(a)
    if mode == "reduce":
        return reduce(a)
    raise InputError(f"unknown mode {mode!r}")


def _generator_images(e: int) -> dict[int, tuple[int, ...]]:
    i = abs(e)
    j = i + 1
    if e > 0:
        return {i: (i, j, -i), j: (i,)}
    return {i: (j,), j: (-j, i, j)}


def artin_action(a: BraidWord, limit: int = DEFAULT_WORD_LIMIT) -> tuple[tuple[int, ...], ...]:
    """Images of x_1..x_n under the automorphism induced by ``a`` (reduced words)."""
    images = [(k,) for k in range(1, a.strands + 1)]
    for e in a.letters:
        sub = _generator_images(e)
        # compose: new image of x_k = old images substituted into sub[k]
        updated = list(images)
        for k, pattern in sub.items():
            out: list[int] = []
            for x in pattern:
                piece = images[abs(x) - 1]
                if x < 0:
                    piece = tuple(-y for y in reversed(piece))
                for y in piece:
                    if out and out[-1] == -y:
                        out.pop()
                    else:
                        out.append(y)
            if len(out) > limit:
                raise BudgetExceeded(
                    f"free-word length {len(out)} exceeds the limit of {limit} letters"
                )
            updated[k - 1] = tuple(out)
        images = updated
    return tuple(images)


def artin_equal(a: BraidWord, b: BraidWord, limit: int = DEFAULT_WORD_LIMIT) -> bool:
    _check_same(a, b)
    return artin_action(a, limit) == artin_action(b, limit)


def full_twist(n: int) -> BraidWord:
    if n < 2:
        raise InputError(f"full twist needs at least 2 strands, got {n}")
    return BraidWord(n, tuple(range(1, n)) * n)


def transverse_self_linking(a: BraidWord) -> int:
    """Self-linking of the transverse closure: exponent sum minus strand count."""
    return a.exponent_sum - a.strands


def stabilize(a: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization: add a strand and append sigma_n^{+-1}."""
    n = a.strands
    return BraidWord(n + 1, a.letters + ((n if sign > 0 else -n),))


def random_word(n: int, length: int, rng: random.Random) -> BraidWord:
    if n < 2:
        return BraidWord(n, ())
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


# -- factorizations ---------------------------------------------------------


@dataclass(frozen=True)
class FactorizationRecord:
    """Delta^2_d written as a product of conjugates g sigma_1^i g^-1."""

    degree: int
    factors: tuple[tuple[BraidWord, int], ...] = field(default_factory=tuple)
    note: str = ""

    def product(self) -> BraidWord:
        letters: list[int] = []
        for g, i in self.factors:
            letters.extend(g.letters)
            letters.extend((1 if i > 0 else -1,) * abs(i))
            letters.extend(-e for e in reversed(g.letters))
        return BraidWord(self.degree, tuple(letters))


def _identity_perm(perm: Sequence[int]) -> bool:
    return all(p == k for k, p in enumerate(perm))


def verify_factorization(rec: FactorizationRecord, limit: int = DEFAULT_WORD_LIMIT) -> Verdict:
    """Check ``rec`` against the full twist in stages.

    The stages run in a fixed order (exponents, exponent sum, permutation,
    free-group action) and the first failing one is reported.
    """
    d = rec.degree
    if d < 2:
        raise InputError(f"degree must be at least 2, got {d}")
    if not rec.factors:
        return Verdict("violated", witness={"stage": "empty"}, lhs=0, rhs=d * (d - 1))
    for idx, (g, _) in enumerate(rec.factors):
        if g.strands != d:
            raise InputError(f"conjugator {idx} lives on {g.strands} strands, expected {d}")

    bad = [i for _, i in rec.factors if i not in ALLOWED_EXPONENTS]
    if bad:
        return Verdict("violated", witness={"stage": "exponents", "bad": bad})

    total = sum(i for _, i in rec.factors)
    target = d * (d - 1)
    if total != target:
        return Verdict("violated", lhs=total, rhs=target, slack=target - total,
                       witness={"stage": "exponent-sum"})

    product = rec.product()
    perm = product.permutation()
    if not _identity_perm(perm):
        return Verdict("violated", witness={"stage": "permutation", "permutation": perm})

    twist = full_twist(d)
    if not artin_equal(product, twist, limit):
        return Verdict("violated", witness={"stage": "artin", "letters": len(product)})
    return Verdict("holds", lhs=total, rhs=target, slack=0,
                   witness={"stage": "complete", "factors": len(rec.factors)})
