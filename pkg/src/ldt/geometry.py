"""Exact scalars, vectors and sign patterns.

Every sign decision in this package is made with arbitrary-precision
rational arithmetic.  Floats never touch a comparison: a point that is
exactly on a hyperplane must report ZERO, and no fixed precision can
promise that.
"""

from __future__ import annotations

import re
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+|\.\d+)?$")


def parse_rational(text: str) -> Rational:
    """Parse 'a', 'a/b' or 'a.b' into a Rational, exactly.

    The canonical form produced by format_rational round-trips exactly.
    """
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(token)


def format_rational(q: Rational) -> str:
    """Canonical text for a rational: lowest terms, '/' only when needed."""
    return str(Fraction(q))


class Sign(IntEnum):
    """Sign of an exact inner product; ordered MINUS < ZERO < PLUS."""

    MINUS = -1
    ZERO = 0
    PLUS = 1

    @property
    def char(self) -> str:
        return {Sign.MINUS: "-", Sign.ZERO: "0", Sign.PLUS: "+"}[self]

    @classmethod
    def from_char(cls, ch: str) -> "Sign":
        try:
            return {"-": cls.MINUS, "0": cls.ZERO, "+": cls.PLUS}[ch]
        except KeyError:
            raise ValueError(f"not a sign character: {ch!r}") from None

    def flipped(self) -> "Sign":
        return Sign(-int(self))


def sign_of(q: Rational | int) -> Sign:
    if q > 0:
        return Sign.PLUS
    if q < 0:
        return Sign.MINUS
    return Sign.ZERO


class Vector:
    """Immutable rational vector.

    An all-integer vector is stored as a plain int tuple and only grows
    a Fraction view on demand, so the hot paths (inner products,
    differences, dedup keys) never leave machine integers.
    """

    __slots__ = ("_coords", "ints")

    ints: tuple[int, ...] | None

    def __init__(self, coords: Iterable[Rational | int]) -> None:
        cs = coords if type(coords) is tuple else tuple(coords)
        if all(type(c) is int for c in cs):
            object.__setattr__(self, "ints", cs)
            object.__setattr__(self, "_coords", None)
            return
        fr = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in cs)
        object.__setattr__(self, "_coords", fr)
        if all(c.denominator == 1 for c in fr):
            object.__setattr__(self, "ints", tuple(c.numerator for c in fr))
        else:
            object.__setattr__(self, "ints", None)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        cs = self._coords
        if cs is None:
            cs = tuple(Fraction(i) for i in self.ints)
            object.__setattr__(self, "_coords", cs)
        return cs

    def _key(self) -> tuple:
        ints = self.ints
        return ints if ints is not None else self._coords

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Vector is immutable")

    @classmethod
    def zero(cls, dim: int) -> "Vector":
        return cls([0] * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "Vector":
        coords = [0] * dim
        coords[index] = 1
        return cls(coords)

    @classmethod
    def parse(cls, text: str) -> "Vector":
        tokens = text.split()
        if not tokens:
            raise ValueError("empty vector text")
        return cls(parse_rational(t) for t in tokens)

    @property
    def dim(self) -> int:
        return len(self._key())

    def dot(self, other: "Vector") -> Rational:
        if len(self) != len(other):
            raise ValueError(
                f"dimension mismatch: {len(self)} vs {len(other)}"
            )
        a, b = self.ints, other.ints
        if a is not None and b is not None:
            total = 0
            for u, v in zip(a, b):
                if u and v:
                    total += u * v
            return Fraction(total)
        acc = Fraction(0)
        for u, v in zip(self.coords, other.coords):
            if u and v:
                acc += u * v
        return acc

    def __add__(self, other: "Vector") -> "Vector":
        a, b = self.ints, other.ints
        if a is not None and b is not None:
            if len(a) != len(b):
                raise ValueError("dimension mismatch")
            return Vector(tuple(u + v for u, v in zip(a, b)))
        return Vector(u + v for u, v in zip(self.coords, other.coords, strict=True))

    def __sub__(self, other: "Vector") -> "Vector":
        a, b = self.ints, other.ints
        if a is not None and b is not None:
            if len(a) != len(b):
                raise ValueError("dimension mismatch")
            return Vector(tuple(u - v for u, v in zip(a, b)))
        return Vector(u - v for u, v in zip(self.coords, other.coords, strict=True))

    def __neg__(self) -> "Vector":
        a = self.ints
        if a is not None:
            return Vector(tuple(-u for u in a))
        return Vector(-u for u in self.coords)

    def scaled(self, q: Rational | int) -> "Vector":
        a = self.ints
        if a is not None and type(q) is int:
            return Vector(tuple(u * q for u in a))
        return Vector(u * q for u in self.coords)

    def is_zero(self) -> bool:
        a = self.ints
        if a is not None:
            return not any(a)
        return not any(self._coords)

    def linf(self) -> Rational:
        a = self.ints
        if a is not None:
            return Fraction(max(map(abs, a), default=0))
        return max((abs(c) for c in self._coords), default=Fraction(0))

    def l1(self) -> Rational:
        a = self.ints
        if a is not None:
            return Fraction(sum(map(abs, a)))
        return sum((abs(c) for c in self._coords), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self._key())

    def __str__(self) -> str:
        return " ".join(format_rational(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"Vector({str(self)!r})"


def inner_product(h: Vector, x: Vector) -> Rational:
    """Exact inner product of two vectors of equal dimension."""
    return h.dot(x)


class SignVector:
    """Sign pattern of a point against an identified hyperplane family.

    Maps hyperplane identifier to the Sign of the corresponding inner
    product.  Equality is entrywise, which makes patterns directly
    comparable across runs.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[int, Sign]) -> None:
        object.__setattr__(self, "entries", dict(entries))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SignVector is immutable")

    def __getitem__(self, ident: int) -> Sign:
        return self.entries[ident]

    def __contains__(self, ident: int) -> bool:
        return ident in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignVector):
            return NotImplemented
        return self.entries == other.entries

    def ids(self) -> list[int]:
        return sorted(self.entries)

    def items(self) -> list[tuple[int, Sign]]:
        return sorted(self.entries.items())

    def contains_zero(self) -> bool:
        return any(s is Sign.ZERO for s in self.entries.values())

    def as_string(self) -> str:
        return "".join(self.entries[i].char for i in self.ids())

    def __repr__(self) -> str:
        return f"SignVector({self.as_string()!r})"


def ground_truth_pattern(family: Sequence[Vector], x: Vector) -> SignVector:
    """Full sign pattern of x against a family, indexed by position.

    Trusted-side helper: tests and answer verification call this, the
    solver must never be able to reach it (it would leak the hidden
    point).
    """
    return SignVector({i: sign_of(h.dot(x)) for i, h in enumerate(family)})
