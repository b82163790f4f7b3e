"""Exact permutation arithmetic on the points {1, ..., m}.

Permutations are stored as 0-based image tuples; every public surface
(cycle strings, JSON, point sets) speaks 1-based points. Composition is
function composition, compose(a, b) applies b first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

__all__ = [
    "Permutation",
    "CycleType",
    "CycleStructure",
    "compose",
    "conjugate",
    "cycle_structure",
    "parse_cycles",
    "format_cycles",
]


class Permutation:
    """A bijection of {1, ..., m} with cached cycle data.

    `images` is the 0-based image tuple: images[i] is the image of point i.
    Degree is fixed at construction and must be at least 1; composing or
    comparing permutations of different degrees is an error (embed explicitly
    with `extend` instead).
    """

    __slots__ = ("images", "_cycles")

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if n == 0:
            raise ValueError("degree must be at least 1")
        seen = [False] * n
        for i in images:
            if not isinstance(i, int) or not 0 <= i < n or seen[i]:
                raise ValueError("images must be a bijection of 0..m-1")
            seen[i] = True
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_cycles", None)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_one_based(cls, images):
        """Build from a 1-based image list, e.g. [2, 3, 1] for (1 2 3)."""
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, text, degree):
        return parse_cycles(text, degree)

    @classmethod
    def cycle(cls, points, degree):
        """Single cycle through the given 1-based points, rest fixed."""
        images = list(range(degree))
        pts = [p - 1 for p in points]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if not 0 <= a < degree:
                raise ValueError("point %d out of range 1..%d" % (a + 1, degree))
            images[a] = b
        perm = cls(images)
        return perm

    # -- basic protocol ----------------------------------------------------

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, n):
        if n == 0:
            return Permutation.identity(self.degree)
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = None
        acc = base
        while n:
            if n & 1:
                result = acc if result is None else compose(result, acc)
            n >>= 1
            if n:
                acc = compose(acc, acc)
        return result

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r, degree=%d)" % (format_cycles(self), self.degree)

    def __str__(self):
        return format_cycles(self)

    # -- structure ---------------------------------------------------------

    def cycles(self, include_fixed=False):
        """Disjoint cycles as 1-based tuples, each starting at its least point,
        ordered by least point. Fixed points appear as 1-tuples only on request."""
        if self._cycles is None:
            all_cycles = []
            seen = [False] * len(self.images)
            for start in range(len(self.images)):
                if seen[start]:
                    continue
                cyc = [start]
                seen[start] = True
                nxt = self.images[start]
                while nxt != start:
                    cyc.append(nxt)
                    seen[nxt] = True
                    nxt = self.images[nxt]
                all_cycles.append(tuple(p + 1 for p in cyc))
            object.__setattr__(self, "_cycles", tuple(all_cycles))
        if include_fixed:
            return list(self._cycles)
        return [c for c in self._cycles if len(c) > 1]

    def support(self):
        """Sorted tuple of moved 1-based points."""
        return tuple(i + 1 for i, j in enumerate(self.images) if i != j)

    def order(self):
        n = 1
        for c in self.cycles():
            n = n * len(c) // gcd(n, len(c))
        return n

    def parity(self):
        """+1 for even, -1 for odd."""
        swaps = sum(len(c) - 1 for c in self.cycles())
        return -1 if swaps & 1 else 1

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def extend(self, degree):
        """Same mapping viewed at a larger degree, new points fixed."""
        if degree < len(self.images):
            raise ValueError("cannot shrink degree")
        return Permutation(self.images + tuple(range(len(self.images), degree)))

    def restricted_to(self, points):
        """Relabel onto the given sorted 1-based points, which must be closed
        under the permutation. Point points[i] becomes i+1."""
        pts = [p - 1 for p in points]
        pos = {p: k for k, p in enumerate(pts)}
        try:
            return Permutation(pos[self.images[p]] for p in pts)
        except KeyError:
            raise ValueError("points are not closed under the permutation") from None

    # -- JSON --------------------------------------------------------------

    def to_json_dict(self):
        return {"degree": self.degree, "images": [i + 1 for i in self.images]}

    @classmethod
    def from_json_dict(cls, data):
        images = data["images"]
        if data.get("degree") != len(images):
            raise ValueError("degree field does not match images length")
        return cls.from_one_based(images)


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, fixed points included as 1s."""

    lengths: tuple

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(sorted(self.lengths)))

    @property
    def degree(self):
        return sum(self.lengths)

    def nontrivial(self):
        """Lengths with fixed points dropped."""
        return tuple(l for l in self.lengths if l > 1)

    def counts(self, include_fixed=True):
        """(length, multiplicity) pairs, ascending by length."""
        out = []
        for l in self.lengths if include_fixed else self.nontrivial():
            if out and out[-1][0] == l:
                out[-1] = (l, out[-1][1] + 1)
            else:
                out.append((l, 1))
        return out

    def notation(self):
        """Compact notation like '(1^2, 5)'."""
        parts = []
        for l, mult in self.counts():
            parts.append("%d^%d" % (l, mult) if mult > 1 else str(l))
        return "(" + ", ".join(parts) + ")"

    @property
    def splits_in_alternating(self):
        """Whether the symmetric-class of this type splits into two
        alternating-group classes: all lengths odd and pairwise distinct,
        fixed points counted as length-1 cycles."""
        ls = self.lengths
        return all(l % 2 == 1 for l in ls) and len(set(ls)) == len(ls)

    def __str__(self):
        return self.notation()


@dataclass(frozen=True)
class CycleStructure:
    cycle_type: CycleType
    support: tuple
    parity: int
    order: int


def compose(a, b):
    """Composite permutation applying b first: (a.b)(i) = a(b(i))."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch: %d vs %d" % (a.degree, b.degree))
    ai = a.images
    return Permutation(ai[j] for j in b.images)


def conjugate(g, x):
    """g acting on x by conjugation, g x g^-1."""
    if g.degree != x.degree:
        raise ValueError("degree mismatch: %d vs %d" % (g.degree, x.degree))
    gi, xi = g.images, x.images
    images = [0] * len(gi)
    for i in range(len(gi)):
        images[gi[i]] = gi[xi[i]]
    return Permutation(images)


def cycle_structure(x):
    """Cycle type (fixed points included), support, parity and order of x."""
    lengths = [len(c) for c in x.cycles(include_fixed=True)]
    return CycleStructure(
        cycle_type=CycleType(tuple(lengths)),
        support=x.support(),
        parity=x.parity(),
        order=x.order(),
    )


_TOKEN = re.compile(r"\(|\)|,|\s+|\d+")


def parse_cycles(text, degree):
    """Parse disjoint cycle notation like '(1 2 3)(4 5)' at the given degree.

    Commas and whitespace both separate points. The empty string and '()'
    denote the identity. Malformed text, repeated points (within or across
    cycles) and points outside 1..degree raise ValueError.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    pos = 0
    images = list(range(degree))
    seen = set()
    current = None
    for match in _TOKEN.finditer(text):
        if match.start() != pos:
            raise ValueError("unexpected character at position %d in %r" % (pos, text))
        pos = match.end()
        tok = match.group()
        if tok == "(":
            if current is not None:
                raise ValueError("nested '(' in %r" % text)
            current = []
        elif tok == ")":
            if current is None:
                raise ValueError("unmatched ')' in %r" % text)
            for a, b in zip(current, current[1:] + current[:1]):
                images[a] = b
            current = None
        elif tok.isdigit():
            if current is None:
                raise ValueError("point outside parentheses in %r" % text)
            p = int(tok)
            if not 1 <= p <= degree:
                raise ValueError("point %d out of range 1..%d" % (p, degree))
            if p in seen:
                raise ValueError("repeated point %d in %r" % (p, text))
            seen.add(p)
            current.append(p - 1)
        # commas and whitespace are separators
    if pos != len(text):
        raise ValueError("unexpected character at position %d in %r" % (pos, text))
    if current is not None:
        raise ValueError("unterminated cycle in %r" % text)
    return Permutation(images)


def format_cycles(x):
    """Disjoint cycle string, '()' for the identity. Inverse of parse_cycles."""
    cycles = x.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)
