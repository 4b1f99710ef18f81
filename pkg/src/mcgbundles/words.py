"""Words over named mapping classes.

A :class:`Word` is a freely reduced product of syllables ``(symbol, exponent)``.
Adjacent syllables over the same symbol are merged and zero exponents dropped,
so two words are equal as Python objects iff they are equal in the free group
on their symbols.

Text form is whitespace separated tokens ``sym`` or ``sym^n``; the token ``1``
is the identity and parses to nothing.  Conjugation follows the convention
``beta^gamma = gamma beta gamma^-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

IDENTITY = "1"

Syllable = tuple[str, int]
Letter = tuple[str, int]  # exponent is +1 or -1


def _merge(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for sym, exp in syllables:
        if sym == IDENTITY or exp == 0:
            continue
        if out and out[-1][0] == sym:
            e = out[-1][1] + exp
            out.pop()
            if e:
                out.append((sym, e))
        else:
            out.append((sym, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _merge(self.syllables))

    @classmethod
    def parse(cls, text: str) -> "Word":
        syl = []
        for tok in text.replace("*", " ").split():
            if "^" in tok:
                sym, exp = tok.split("^", 1)
                syl.append((sym, int(exp)))
            else:
                syl.append((tok, 1))
        return cls(tuple(syl))

    @classmethod
    def gen(cls, sym: str, exp: int = 1) -> "Word":
        return cls(((sym, exp),))

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "Word":
        return cls(tuple(letters))

    def letters(self) -> list[Letter]:
        """Expand into a list of +-1 letters."""
        out = []
        for sym, exp in self.syllables:
            s = 1 if exp > 0 else -1
            out.extend([(sym, s)] * abs(exp))
        return out

    def symbols(self) -> set[str]:
        return {s for s, _ in self.syllables}

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.syllables)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.syllables * abs(n))

    def conj(self, by: "Word") -> "Word":
        """``self^by = by self by^-1``."""
        return by * self * by.inverse()

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return IDENTITY
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


def product(words: Iterable[Word]) -> Word:
    syl: list[Syllable] = []
    for w in words:
        syl.extend(w.syllables)
    return Word(tuple(syl))


@dataclass(frozen=True)
class RelationWord:
    lhs: Word
    rhs: Word
    name: str = ""

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification.  ``witness`` names what failed."""

    holds: bool
    witness: str | None = None
    detail: str = ""
    provenance: str = ""
    assumptions: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.holds

    def label(self) -> str:
        return "Holds" if self.holds else f"Fails({self.witness})"
