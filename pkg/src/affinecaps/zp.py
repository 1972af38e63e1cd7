"""Residue arithmetic, digit sets and line-equation bookkeeping over Z_p."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


def is_prime(n: int) -> bool:
    """Deterministic trial division; the moduli used here stay small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Prime(int):
    """An odd prime modulus >= 5, validated at construction."""

    def __new__(cls, p: int) -> "Prime":
        p = int(p)
        if p < 5 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime >= 5, got {p}")
        return super().__new__(cls, p)


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a modulo the prime p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class DigitSetPair:
    """A digit set together with the subset of digits whose frequency is pinned.

    ``digits`` are the residues allowed as coordinates; every digit in
    ``fixed`` must occur exactly n/|digits| times in each constructed point.
    """

    p: Prime
    digits: tuple[int, ...]
    fixed: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.digits) < 2:
            raise ValueError("need at least two digits")
        if list(self.digits) != sorted(set(self.digits)):
            raise ValueError("digits must be strictly ascending")
        if not all(0 <= d < self.p for d in self.digits):
            raise ValueError(f"digits must be residues in [0, {self.p})")
        if list(self.fixed) != sorted(set(self.fixed)):
            raise ValueError("fixed digits must be strictly ascending")
        if not set(self.fixed) <= set(self.digits):
            raise ValueError("fixed digits must be a subset of the digit set")


def digit_pair(p: int, digits, fixed=None) -> DigitSetPair:
    """Build a DigitSetPair from plain sequences; ``fixed`` defaults to all digits."""
    digits = tuple(sorted(set(int(d) for d in digits)))
    if fixed is None:
        fixed = digits
    return DigitSetPair(Prime(p), digits, tuple(sorted(set(int(d) for d in fixed))))


@dataclass(frozen=True)
class LineEquation:
    """The line condition x + b*y + c*z = 0 with b + c = -1 (mod p).

    The coefficient of x is normalized to 1; b runs over {1, ..., p-2} since
    b = 0 and b = p-1 only say that the three points are distinct.
    """

    p: Prime
    b: int
    c: int


def make_line_equation(p: int, b: int) -> LineEquation:
    p = Prime(p)
    if not 1 <= b <= p - 2:
        raise ValueError(f"b must lie in 1..{p - 2}, got {b} (degenerate equation)")
    return LineEquation(p, b, (-(b + 1)) % p)


def equation_str(eq: LineEquation) -> str:
    """Render as 'x + cz = (c+1)y', the form used when listing equation classes."""
    zc = "z" if eq.c == 1 else f"{eq.c}z"
    return f"x + {zc} = {eq.c + 1}y"


def mirror_partner(eq: LineEquation) -> int:
    """b-value of the equation whose progressions are this one's, reversed."""
    return (inv_mod(eq.c, eq.p) * eq.b) % eq.p


def swap_partner(eq: LineEquation) -> int:
    """b-value of the equation whose progressions have the last two entries swapped."""
    return eq.c


@dataclass(frozen=True)
class EquationClassPartition:
    """Partition of b in {1, ..., p-2} into classes of equivalent line equations.

    Classes are closed under the reverse and swap moves; only one
    representative per class (the smallest b) has to be checked.
    """

    p: Prime
    classes: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(cls[0] for cls in self.classes)


@lru_cache(maxsize=None)
def equation_classes(p: int) -> EquationClassPartition:
    """Group the p-2 line equations under the reverse/swap equivalence moves."""
    p = Prime(p)
    seen: set[int] = set()
    classes: list[tuple[int, ...]] = []
    for b0 in range(1, p - 1):
        if b0 in seen:
            continue
        orbit = {b0}
        frontier = [b0]
        while frontier:
            b = frontier.pop()
            eq = make_line_equation(p, b)
            for nxt in (mirror_partner(eq), swap_partner(eq)):
                if nxt not in orbit:
                    orbit.add(nxt)
                    frontier.append(nxt)
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda cls: cls[0])
    return EquationClassPartition(p, tuple(classes))


def affine_image(digits, a: int, b: int, p: int) -> tuple[int, ...]:
    """Sorted image of a digit set under x -> a*x + b (a must be a unit)."""
    if a % p == 0:
        raise ValueError("affine map needs a nonzero multiplier")
    return tuple(sorted((a * d + b) % p for d in digits))


def normalize_digit_set(digits, p: int) -> tuple[int, ...]:
    """Lexicographically least affine image of the digit set.

    The minimum always contains 0 and 1 once |digits| >= 2, so canonical
    representatives can be enumerated among sets containing both.
    """
    p = Prime(p)
    digits = tuple(sorted(set(digits)))
    best = None
    for a in range(1, p):
        for b in range(p):
            img = affine_image(digits, a, b, p)
            if best is None or img < best:
                best = img
    assert best is not None
    return best
