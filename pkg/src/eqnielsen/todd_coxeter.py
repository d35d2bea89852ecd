"""
Coset enumeration (HLT strategy with coincidence processing) for finitely presented groups.

Words are sequences of signed generator numbers: +k means generator k-1, -k its inverse
(so generator 0 is written 1, its inverse -1). Enumeration is over the trivial subgroup, which
makes the finished coset table the regular representation of the presented group.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import InternalConsistencyError
from .groups import FiniteGroup, Perm, invert

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: Tuple[Word, ...]

    def __post_init__(self):
        for rel in self.relators:
            for letter in rel:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise ValueError(f"relator letter {letter} outside 1..{self.generator_count}")


@dataclass(frozen=True)
class Overflow:
    """Enumeration stopped after defining more cosets than allowed."""

    cap: int
    defined: int


@dataclass(frozen=True)
class PresentedGroup:
    group: FiniteGroup
    generator_elements: Tuple[int, ...]   # element index of each presentation generator

    def evaluate(self, word: Sequence[int]) -> int:
        g = self.group
        acc = 0
        for letter in word:
            e = self.generator_elements[abs(letter) - 1]
            acc = g.mul(acc, e if letter > 0 else g.inv(e))
        return acc


def _column(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


class _CosetTable:
    def __init__(self, ncols: int, cap: int):
        self.ncols = ncols
        self.cap = cap
        self.table: List[List[Optional[int]]] = [[None] * ncols]
        self.parent: List[int] = [0]
        self.overflowed = False

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.cap:
            self.overflowed = True
            return
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _merge(self, a: int, b: int, queue: List[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: List[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = self.table[e][x]
                if f is None:
                    continue
                self.table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])
            if self.overflowed:
                return


def todd_coxeter(presentation: Presentation, coset_cap: int) -> Union[PresentedGroup, Overflow]:
    """
    Enumerate the cosets of the trivial subgroup.

    Args:
        presentation: generators and relators
        coset_cap: maximum number of cosets ever defined (>= 1)

    Returns:
        PresentedGroup acting regularly on its cosets, or Overflow when the cap is hit
    """
    if coset_cap < 1:
        raise ValueError("coset_cap must be >= 1")
    ncols = 2 * presentation.generator_count
    relators = [[_column(letter) for letter in rel] for rel in presentation.relators if rel]
    ct = _CosetTable(ncols, coset_cap)

    while True:
        c = 0
        while c < len(ct.table):
            if ct.alive(c):
                for rel in relators:
                    ct.scan_and_fill(c, rel)
                    if ct.overflowed:
                        return Overflow(coset_cap, len(ct.table))
                    if not ct.alive(c):
                        break
                if ct.alive(c):
                    for x in range(ncols):
                        if ct.table[c][x] is None:
                            ct.define(c, x)
                            if ct.overflowed:
                                return Overflow(coset_cap, len(ct.table))
            c += 1
        live = [k for k in range(len(ct.table)) if ct.alive(k)]
        if all(ct.table[k][x] is not None for k in live for x in range(ncols)):
            break

    renumber: Dict[int, int] = {k: n for n, k in enumerate(live)}
    degree = len(live)

    # coset table columns act on the right; their inverses act on the left, so that a word
    # evaluates to the left-to-right product of its letters
    elements: List[Perm] = []
    for gen in range(presentation.generator_count):
        right = tuple(renumber[ct.rep(ct.table[k][2 * gen])] for k in live)
        elements.append(invert(right))

    group = FiniteGroup(degree, elements, name="presented")
    if group.order != degree:
        raise InternalConsistencyError(
            f"coset table of size {degree} produced a group of order {group.order}"
        )
    logger.debug(f"Coset enumeration finished: {degree} cosets, {len(ct.table)} defined")
    return PresentedGroup(group, tuple(group.index(p) for p in elements))


def simplify(presentation: Presentation) -> Tuple[Presentation, Dict[int, Word]]:
    """
    Drop generators made trivial or redundant by relators of length one or two.

    Returns the reduced presentation and, for every original generator number, the word in the
    reduced generators it equals.
    """
    subst: Dict[int, Word] = {k: (k,) for k in range(1, presentation.generator_count + 1)}

    def apply(word: Sequence[int]) -> Word:
        out: List[int] = []
        for letter in word:
            image = subst[abs(letter)]
            if letter < 0:
                image = tuple(-x for x in reversed(image))
            for x in image:
                if out and out[-1] == -x:
                    out.pop()
                else:
                    out.append(x)
        return tuple(out)

    def cyclic_reduce(word: Word) -> Word:
        w = list(word)
        while len(w) >= 2 and w[0] == -w[-1]:
            w = w[1:-1]
        return tuple(w)

    relators = [cyclic_reduce(apply(r)) for r in presentation.relators]
    changed = True
    while changed:
        changed = False
        for rel in relators:
            if len(rel) == 1:
                g = abs(rel[0])
                kill: Word = ()
            elif len(rel) == 2 and abs(rel[0]) != abs(rel[1]):
                # a^e b^f = 1  =>  b = a^(-e f)
                g = abs(rel[1])
                kill = (-rel[0],) if rel[1] > 0 else (rel[0],)
            else:
                continue
            for k, w in subst.items():
                subst[k] = _substitute(w, g, kill)
            relators = [cyclic_reduce(_substitute(r, g, kill)) for r in relators]
            relators = [r for r in relators if r]
            changed = True
            break

    used = sorted({abs(x) for w in subst.values() for x in w} | {abs(x) for r in relators for x in r})
    renumber = {old: new for new, old in enumerate(used, start=1)}

    def rename(word: Word) -> Word:
        return tuple(renumber[abs(x)] * (1 if x > 0 else -1) for x in word)

    reduced = Presentation(len(used), tuple(sorted({rename(r) for r in relators}, key=lambda r: (len(r), r))))
    return reduced, {k: rename(w) for k, w in subst.items()}


def _substitute(word: Word, g: int, image: Word) -> Word:
    out: List[int] = []
    for letter in word:
        if abs(letter) == g:
            piece = image if letter > 0 else tuple(-x for x in reversed(image))
        else:
            piece = (letter,)
        for x in piece:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)
