"""Free groupoids on typed edges and their vertex-fixing automorphisms.

Paths compose left to right: ``concat(p, q)`` runs ``p`` first, so
``target(p)`` must equal ``source(q)``.  Mapping classes act on the left and
a twist word is evaluated rightmost-first, ``evaluate(s1 s2) = s1 o s2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping

from .words import Word

if TYPE_CHECKING:
    from .planar import SurfaceModel


class TypingError(ValueError):
    """Letters that do not compose, or endpoint mismatch."""


class CatalogError(KeyError):
    """A symbol is not in the model's catalog."""


@dataclass(frozen=True, order=True)
class EdgeGen:
    name: str
    source: int
    target: int
    kind: str = "arc"  # "arc" or "boundary-loop"

    def __post_init__(self):
        if self.kind == "boundary-loop" and self.source != self.target:
            raise TypingError(f"boundary loop {self.name} must be closed")

    def __str__(self):
        return self.name


GLetter = tuple[EdgeGen, int]


def _ends(letter: GLetter) -> tuple[int, int]:
    g, e = letter
    return (g.source, g.target) if e > 0 else (g.target, g.source)


@dataclass(frozen=True)
class GroupoidWord:
    letters: tuple[GLetter, ...]
    source: int
    target: int

    @classmethod
    def empty(cls, vertex: int) -> "GroupoidWord":
        return cls((), vertex, vertex)

    @classmethod
    def of(cls, letters: Iterable[GLetter], source: int | None = None) -> "GroupoidWord":
        """Type-check ``letters`` and return the reduced word."""
        letters = tuple(letters)
        if not letters:
            if source is None:
                raise TypingError("empty word needs an explicit vertex")
            return cls.empty(source)
        start = _ends(letters[0])[0]
        if source is not None and source != start:
            raise TypingError(f"word starts at v{start}, expected v{source}")
        here = start
        for letter in letters:
            s, t = _ends(letter)
            if s != here:
                raise TypingError(f"letter {letter[0]}^{letter[1]} starts at v{s}, path is at v{here}")
            here = t
        return reduce(cls(letters, start, here))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return f"1@v{self.source}"
        return " ".join(g.name if e > 0 else f"{g.name}^-1" for g, e in self.letters)


def reduce(w: GroupoidWord) -> GroupoidWord:
    out: list[GLetter] = []
    for g, e in w.letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return GroupoidWord(tuple(out), w.source, w.target)


def inverse(w: GroupoidWord) -> GroupoidWord:
    return GroupoidWord(tuple((g, -e) for g, e in reversed(w.letters)), w.target, w.source)


def concat(w1: GroupoidWord, w2: GroupoidWord) -> GroupoidWord:
    if w1.target != w2.source:
        raise TypingError(f"cannot compose path ending at v{w1.target} with path starting at v{w2.source}")
    # both inputs are reduced, so cancellation only happens at the seam
    left = list(w1.letters)
    right = w2.letters
    i = 0
    while left and i < len(right) and left[-1][0] == right[i][0] and left[-1][1] == -right[i][1]:
        left.pop()
        i += 1
    return GroupoidWord(tuple(left) + right[i:], w1.source, w2.target)


def word_from_text(text: str, gens: Mapping[str, EdgeGen], source: int | None = None) -> GroupoidWord:
    letters = []
    for tok in text.split():
        if tok == "1" or tok.startswith("1@"):
            continue
        name, _, exp = tok.partition("^")
        if name not in gens:
            raise TypingError(f"unknown edge generator {name!r}")
        n = int(exp) if exp else 1
        letters.extend([(gens[name], 1 if n > 0 else -1)] * abs(n))
    return GroupoidWord.of(letters, source)


@dataclass(frozen=True)
class AutomorphismTable:
    """Images of every generator.  Generators missing from ``images`` are fixed."""

    generators: tuple[EdgeGen, ...]
    images: Mapping[EdgeGen, GroupoidWord]

    @classmethod
    def identity(cls, generators: Iterable[EdgeGen]) -> "AutomorphismTable":
        generators = tuple(generators)
        return cls(generators, {g: GroupoidWord(((g, 1),), g.source, g.target) for g in generators})

    def __post_init__(self):
        full = {}
        for g in self.generators:
            w = self.images.get(g, GroupoidWord(((g, 1),), g.source, g.target))
            if (w.source, w.target) != (g.source, g.target):
                raise TypingError(f"image of {g.name} runs v{w.source}->v{w.target}")
            full[g] = w
        object.__setattr__(self, "images", full)

    def image(self, g: EdgeGen) -> GroupoidWord:
        return self.images[g]

    def apply(self, w: GroupoidWord) -> GroupoidWord:
        """Push a path forward along this automorphism."""
        out: list[GLetter] = []
        for g, e in w.letters:
            img = self.images[g].letters
            if e < 0:
                img = tuple((h, -f) for h, f in reversed(img))
            for letter in img:
                if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                    out.pop()
                else:
                    out.append(letter)
        return GroupoidWord(tuple(out), w.source, w.target)

    def compose(self, inner: "AutomorphismTable") -> "AutomorphismTable":
        """``self o inner``: apply ``inner`` first."""
        return AutomorphismTable(self.generators, {g: self.apply(inner.images[g]) for g in self.generators})

    def is_identity(self) -> bool:
        return all(w.letters == ((g, 1),) for g, w in self.images.items())

    def differs_at(self, other: "AutomorphismTable") -> EdgeGen | None:
        for g in self.generators:
            if self.images[g] != other.images[g]:
                return g
        return None

    def __eq__(self, other):
        if not isinstance(other, AutomorphismTable):
            return NotImplemented
        return self.generators == other.generators and self.differs_at(other) is None

    def __hash__(self):
        return hash(tuple(self.images[g].letters for g in self.generators))


def evaluate(word: Word, model: "SurfaceModel") -> AutomorphismTable:
    """Automorphism of ``word`` with the rightmost symbol acting first."""
    gens = model.generators
    images = {g: GroupoidWord(((g, 1),), g.source, g.target) for g in gens}
    for sym, exp in reversed(word.syllables):
        entry = model.curve(sym)
        act = entry.action if exp > 0 else entry.inverse_action
        for _ in range(abs(exp)):
            images = {g: act.apply(w) for g, w in images.items()}
    return AutomorphismTable(gens, images)


def auto_equal(w1: Word, w2: Word, model: "SurfaceModel") -> bool:
    return evaluate(w1, model) == evaluate(w2, model)
