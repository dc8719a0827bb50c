"""Words in a free group and substitution automorphisms.

Letters are signed 1-based generator indices: ``2`` is a2, ``-2`` is a2^-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyWord, NotAnAutomorphism


def _reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        x = int(x)
        if x == 0:
            raise ValueError("letter 0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, i: int) -> "Word":
        return cls((i,))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def rank_needed(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def evaluate(self, G, images: Sequence[int]) -> int:
        """phi(w) with phi(a_i) = images[i-1]."""
        acc = 0
        for x in self.letters:
            g = images[abs(x) - 1]
            acc = int(G.mult[acc, g if x > 0 else G.inv[g]])
        return acc

    def substitute(self, subs: Sequence["Word"]) -> "Word":
        out: list[int] = []
        for x in self.letters:
            w = subs[abs(x) - 1]
            out.extend(w.letters if x > 0 else w.inverse().letters)
        return Word(out)

    def cyclic_reduce(self) -> "Word":
        L = list(self.letters)
        while len(L) >= 2 and L[0] == -L[-1]:
            L = L[1:-1]
        return Word(L)

    def commutator(self, other: "Word") -> "Word":
        return self * other * self.inverse() * other.inverse()

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def are_conjugate(u: Word, v: Word) -> bool:
    a, b = u.cyclic_reduce().letters, v.cyclic_reduce().letters
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    return any(doubled[i:i + len(b)] == b for i in range(len(a)))


_TOKEN = re.compile(r"\s*([A-Za-z])(\d*)(\s*\^\s*(-?\d+))?")


def parse_word(s: str, names: Sequence[str] | None = None) -> Word:
    """Parse ``a1 a2^-1 a1^2``, ``a1*a2^-1`` or single-letter names like ``a b^-1``.

    With ``names`` given, bare letters map to their position; otherwise
    ``a<k>`` means generator k.  ``1`` or the empty string is the empty word.
    """
    s = s.replace("*", " ").strip()
    if s in ("", "1", "e"):
        return Word()
    out: list[int] = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse word at {s[pos:]!r}")
        letter, idx, _, exp = m.groups()
        if names is not None and not idx:
            if letter not in names:
                raise ValueError(f"unknown generator {letter!r}")
            g = list(names).index(letter) + 1
        elif idx:
            g = int(idx)
        else:
            g = ord(letter.lower()) - ord("a") + 1
        k = int(exp) if exp is not None else 1
        out.extend([g if k > 0 else -g] * abs(k))
        pos = m.end()
    return Word(out)


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    if not w.letters:
        return "1"
    parts = []
    L = w.letters
    i = 0
    while i < len(L):
        j = i
        while j < len(L) and L[j] == L[i]:
            j += 1
        g = abs(L[i])
        name = names[g - 1] if names else f"a{g}"
        k = (j - i) * (1 if L[i] > 0 else -1)
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


def word_from_json(obj) -> Word:
    if isinstance(obj, str):
        return parse_word(obj)
    return Word(tuple(int(x) for x in obj))


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """a_i -> images[i-1], with the inverse substitution supplied and checked."""

    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.images)
        if len(self.inverse_images) != n:
            raise NotAnAutomorphism(f"{self.name}: inverse has wrong rank")
        if any(w.rank_needed() > n for w in self.images + self.inverse_images):
            raise NotAnAutomorphism(f"{self.name}: letter outside rank {n}")
        for i in range(n):
            g = Word.gen(i + 1)
            if g.substitute(self.images).substitute(self.inverse_images) != g \
                    or g.substitute(self.inverse_images).substitute(self.images) != g:
                raise NotAnAutomorphism(f"{self.name}: substitutions are not mutually inverse")

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, w: Word) -> Word:
        return w.substitute(self.images)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.inverse_images, self.images, self.name + "^-1")

    def then(self, other: "Automorphism") -> "Automorphism":
        """self followed by other (as maps on words)."""
        return Automorphism(tuple(other(w) for w in self.images),
                            tuple(self.inverse()(w) for w in other.inverse_images),
                            f"{self.name};{other.name}")


def nielsen_automorphisms(n: int) -> list[Automorphism]:
    """Extended Nielsen moves as automorphisms of F_n, in the search order."""
    ident = [Word.gen(i + 1) for i in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ai, aj = ident[i], ident[j]
            for tag, img, inv in (("R+", ai * aj, ai * aj.inverse()),
                                  ("R-", ai * aj.inverse(), ai * aj),
                                  ("L+", aj * ai, aj.inverse() * ai),
                                  ("L-", aj.inverse() * ai, aj * ai)):
                f, g = list(ident), list(ident)
                f[i], g[i] = img, inv
                out.append(Automorphism(tuple(f), tuple(g), f"{tag}({i + 1},{j + 1})"))
    for i in range(n):
        f = list(ident)
        f[i] = ident[i].inverse()
        out.append(Automorphism(tuple(f), tuple(f), f"I({i + 1})"))
    for i in range(n):
        for j in range(i + 1, n):
            f = list(ident)
            f[i], f[j] = ident[j], ident[i]
            out.append(Automorphism(tuple(f), tuple(f), f"S({i + 1},{j + 1})"))
    return out


def require_nonempty(w: Word):
    if not w.letters:
        raise EmptyWord("empty word")
