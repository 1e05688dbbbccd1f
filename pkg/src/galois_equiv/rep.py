"""Finitely presented groups with a distinguished automorphism, and their matrix
representations over a cyclic extension.

Words are tuples of (generator index, +-1) letters.  The text form is
whitespace separated with a trailing apostrophe marking an inverse letter,
e.g. "a b' a".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import CapExceeded, UnknownGenerator
from .field import CyclicExtension
from .linalg import IncrementalSpan, Mat, inverse

Word = tuple[tuple[int, int], ...]


def parse_word(text: str, gen_names: Sequence[str]) -> Word:
    index = {name: k for k, name in enumerate(gen_names)}
    letters = []
    for token in text.split():
        exp = 1
        if token.endswith("'"):
            exp = -1
            token = token[:-1]
        if token not in index:
            raise UnknownGenerator(f"unknown generator {token!r}")
        letters.append((index[token], exp))
    return tuple(letters)


def word_to_string(word: Word, gen_names: Sequence[str]) -> str:
    return " ".join(gen_names[g] + ("'" if e < 0 else "") for g, e in word)


def invert_word(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def free_reduce(word: Word) -> Word:
    out: list[tuple[int, int]] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


class GroupData:
    """Generators, relations, and an automorphism tau given on generators.

    tau_images[k] is the word tau sends generator k to; tau is extended to
    words by substitution, with only adjacent-inverse cancellation applied.
    """

    def __init__(
        self,
        gen_names: Sequence[str],
        relations: Sequence[Word],
        tau_images: Sequence[Word],
        tau_order: int,
        declared_order: Optional[int] = None,
    ):
        self.gen_names = tuple(gen_names)
        self.relations = tuple(relations)
        self.tau_images = tuple(tau_images)
        self.tau_order = tau_order
        self.declared_order = declared_order
        if tau_order < 2:
            raise ValueError("tau must have order at least 2")
        if len(self.tau_images) != len(self.gen_names):
            raise ValueError("tau must be given on every generator")
        ngens = len(self.gen_names)
        for w in self.relations + self.tau_images:
            for g, _ in w:
                if not 0 <= g < ngens:
                    raise UnknownGenerator(f"generator index {g} out of range")

    @classmethod
    def from_strings(
        cls,
        generators: Sequence[str],
        relations: Sequence[str],
        tau: dict[str, str],
        tau_order: int,
        declared_order: Optional[int] = None,
    ) -> "GroupData":
        rel_words = [parse_word(r, generators) for r in relations]
        images = []
        for name in generators:
            if name not in tau:
                raise UnknownGenerator(f"tau image missing for generator {name!r}")
            images.append(parse_word(tau[name], generators))
        return cls(generators, rel_words, images, tau_order, declared_order)

    def tau_apply(self, word: Word, times: int = 1) -> Word:
        out = word
        for _ in range(times):
            letters: list[tuple[int, int]] = []
            for g, e in out:
                image = self.tau_images[g] if e > 0 else invert_word(self.tau_images[g])
                letters.extend(image)
            out = free_reduce(tuple(letters))
        return out

    def tau_inverse_apply(self, word: Word) -> Word:
        return self.tau_apply(word, self.tau_order - 1)


class Representation:
    """A matrix representation of a GroupData over a CyclicExtension.

    The constructor checks shapes and invertibility; whether the relations
    actually evaluate to the identity is checked separately so that invalid
    data can still be probed.
    """

    def __init__(self, group: GroupData, ext: CyclicExtension, images: Sequence[Mat]):
        if len(images) != len(group.gen_names):
            raise ValueError("one image per generator required")
        self.group = group
        self.ext = ext
        self.images = tuple(images)
        dims = {(m.nrows, m.ncols) for m in images}
        if len(dims) != 1 or any(a != b for a, b in dims):
            raise ValueError("images must be square matrices of equal size")
        self.dim = images[0].nrows
        self._inverses = tuple(inverse(m) for m in images)

    def letter(self, gen: int, exp: int) -> Mat:
        return self.images[gen] if exp > 0 else self._inverses[gen]


def evaluate_word(rep: Representation, word: Word) -> Mat:
    acc = Mat.identity(rep.ext, rep.dim)
    for g, e in word:
        acc = acc * rep.letter(g, e)
    return acc


@dataclass
class RelationReport:
    entries: list[tuple[str, bool]]
    ok: bool


def check_relations(rep: Representation) -> RelationReport:
    entries = []
    ident = Mat.identity(rep.ext, rep.dim)
    for w in rep.group.relations:
        holds = evaluate_word(rep, w) == ident
        entries.append((word_to_string(w, rep.group.gen_names), holds))
    return RelationReport(entries, all(h for _, h in entries))


@dataclass
class AutomorphismReport:
    entries: list[tuple[str, bool]]
    ok: bool
    verified: bool  # False when no representation was supplied


def check_automorphism(group: GroupData, rep: Optional[Representation] = None) -> AutomorphismReport:
    """Check that tau defines an automorphism with tau^r = 1.

    Word identities are only decidable inside a representation; without one
    the report carries verified=False and covers structural checks only.
    """
    entries = [("tau order at least 2", group.tau_order >= 2)]
    if rep is None:
        return AutomorphismReport(entries, all(h for _, h in entries), False)
    ident = Mat.identity(rep.ext, rep.dim)
    for w in group.relations:
        image = group.tau_apply(w)
        holds = evaluate_word(rep, image) == ident
        entries.append((f"tau preserves relation {word_to_string(w, group.gen_names)}", holds))
    for k, name in enumerate(group.gen_names):
        word = group.tau_apply(((k, 1),), group.tau_order)
        holds = evaluate_word(rep, word) == rep.images[k]
        entries.append((f"tau^{group.tau_order} fixes {name}", holds))
    return AutomorphismReport(entries, all(h for _, h in entries), True)


def burnside_dim(rep: Representation, cap: int = 20) -> int:
    """L-dimension of the span of all word images, grown by word length.

    Returns the dimension once a full length pass adds nothing new; raises
    CapExceeded if the span is still growing at the word-length cap.  The
    representation is absolutely irreducible iff this equals dim^2.
    """
    n = rep.dim
    span = IncrementalSpan(rep.ext, n * n)
    ident = Mat.identity(rep.ext, n)
    span.insert(ident.flatten())
    frontier = [ident]
    multipliers = list(rep.images) + list(rep._inverses)
    for _ in range(cap):
        new_frontier = []
        for m in frontier:
            for g in multipliers:
                cand = m * g
                if span.insert(cand.flatten()):
                    new_frontier.append(cand)
        if not new_frontier:
            return span.dim
        frontier = new_frontier
    raise CapExceeded(f"span still growing at word length {cap}")
