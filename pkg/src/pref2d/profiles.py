"""Preference profiles: strict rankings, text I/O, canonical forms, enumeration.

Alternatives and voters are indexed from 0 internally. The text format
(see :func:`parse_profile`) is 1-based, matching the usual convention of
writing an order as 1 > 2 > ... > m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

# A rank is the 0-based position of an alternative in a voter's order:
# 0 = most preferred, m-1 = least preferred.
Rank = int


class ProfileParseError(ValueError):
    """Malformed profile text. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class PreferenceOrder:
    """A strict total order over alternatives 0..m-1, most preferred first."""

    ranking: tuple[int, ...]
    positions: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ranking = tuple(self.ranking)
        object.__setattr__(self, "ranking", ranking)
        m = len(ranking)
        pos = [-1] * m
        for k, a in enumerate(ranking):
            if not isinstance(a, int) or not 0 <= a < m or pos[a] != -1:
                raise ValueError(
                    f"ranking {ranking!r} is not a permutation of 0..{m - 1}"
                )
            pos[a] = k
        object.__setattr__(self, "positions", tuple(pos))

    def __len__(self) -> int:
        return len(self.ranking)

    def rank_of(self, alt: int) -> Rank:
        """Number of alternatives strictly preferred to `alt` (0 = favorite)."""
        return self.positions[alt]


@dataclass(frozen=True)
class Profile:
    """n voters, each holding a strict order over the same m alternatives.

    Orders are pairwise distinct unless the profile was built leniently
    (``allow_duplicates=True``), which is permitted for ad-hoc verification
    but never produced by the enumerator.
    """

    m: int
    orders: tuple[PreferenceOrder, ...]
    allow_duplicates: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if self.m < 1:
            raise ValueError(f"need at least one alternative, got m={self.m}")
        if not self.orders:
            raise ValueError("need at least one voter")
        for o in self.orders:
            if len(o.ranking) != self.m:
                raise ValueError(
                    f"order {o.ranking!r} has length {len(o.ranking)}, expected m={self.m}"
                )
        if not self.allow_duplicates:
            if len({o.ranking for o in self.orders}) != len(self.orders):
                raise ValueError("duplicate preference orders (use Profile.lenient)")

    @property
    def n(self) -> int:
        return len(self.orders)

    @classmethod
    def of(cls, m: int, rankings: Iterable[Sequence[int]]) -> "Profile":
        """Strict constructor from raw 0-based rankings; rejects duplicates."""
        return cls(m, tuple(PreferenceOrder(tuple(r)) for r in rankings))

    @classmethod
    def lenient(cls, m: int, rankings: Iterable[Sequence[int]]) -> "Profile":
        """Like :meth:`of` but admits duplicate orders, flagging the profile."""
        return cls(
            m,
            tuple(PreferenceOrder(tuple(r)) for r in rankings),
            allow_duplicates=True,
        )


def rank(p: Profile, voter: int, alt: int) -> Rank:
    """Rank of `alt` for `voter`: how many alternatives the voter likes better."""
    if not 0 <= voter < p.n:
        raise IndexError(f"voter index {voter} out of range(0, {p.n})")
    if not 0 <= alt < p.m:
        raise IndexError(f"alternative index {alt} out of range(0, {p.m})")
    return p.orders[voter].rank_of(alt)


def parse_profile(text: str, strict: bool = True) -> Profile:
    """Parse the profile text format.

    Line 1 is ``m n``; each of the next n lines lists one voter's m
    alternative ids (1-based, most preferred first). Lines starting with
    ``#`` and blank lines are ignored. With ``strict=False`` duplicate
    voter lines are admitted and the profile is flagged lenient.
    """
    header: tuple[int, int] | None = None
    rankings: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise ProfileParseError("header must be 'm n'", lineno)
            try:
                m, n = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ProfileParseError("header must be two integers", lineno) from None
            if m < 1 or n < 1:
                raise ProfileParseError(f"need m >= 1 and n >= 1, got m={m} n={n}", lineno)
            header = (m, n)
            continue
        m, n = header
        if len(rankings) == n:
            raise ProfileParseError(f"unexpected content after {n} voter lines", lineno)
        if len(tokens) != m:
            raise ProfileParseError(f"expected {m} alternatives, got {len(tokens)}", lineno)
        try:
            ids = tuple(int(t) for t in tokens)
        except ValueError:
            raise ProfileParseError("alternative ids must be integers", lineno) from None
        if sorted(ids) != list(range(1, m + 1)):
            raise ProfileParseError(
                f"{' '.join(tokens)} is not a permutation of 1..{m}", lineno
            )
        ranking = tuple(a - 1 for a in ids)
        if strict and ranking in seen:
            raise ProfileParseError(
                f"duplicate of voter line {seen[ranking]}", lineno
            )
        seen.setdefault(ranking, lineno)
        rankings.append(ranking)
    if header is None:
        raise ProfileParseError("empty input: missing 'm n' header")
    m, n = header
    if len(rankings) != n:
        raise ProfileParseError(f"expected {n} voter lines, found {len(rankings)}")
    orders = tuple(PreferenceOrder(r) for r in rankings)
    return Profile(m, orders, allow_duplicates=not strict)


def serialize_profile(p: Profile) -> str:
    """Canonical text form; round-trips bit-exactly through parse_profile."""
    lines = [f"{p.m} {p.n}"]
    for o in p.orders:
        lines.append(" ".join(str(a + 1) for a in o.ranking))
    return "\n".join(lines) + "\n"


def canonicalize(p: Profile) -> Profile:
    """Relabel alternatives so voter 0's order is 0 > 1 > ... > m-1.

    The relabeling sends the alternative at position k of voter 0's order
    to label k; remaining voters are relabeled consistently and then sorted
    lexicographically. Idempotent.
    """
    sigma = p.orders[0].positions
    relabeled = [tuple(sigma[a] for a in o.ranking) for o in p.orders]
    rest = sorted(relabeled[1:])
    orders = tuple(PreferenceOrder(r) for r in [relabeled[0], *rest])
    return Profile(p.m, orders, allow_duplicates=p.allow_duplicates)


def count_canonical(m: int) -> int:
    """Number of 3-voter canonical profiles over m alternatives: C(m!-1, 2).

    Exact for any m (Python integers do not overflow).
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    return math.comb(math.factorial(m) - 1, 2)


@lru_cache(maxsize=None)
def _nonidentity_orders(m: int) -> tuple[PreferenceOrder, ...]:
    """All non-identity orders over m alternatives, lexicographically sorted."""
    return tuple(PreferenceOrder(r) for r in permutations(range(m)))[1:]


@lru_cache(maxsize=None)
def _identity_order(m: int) -> PreferenceOrder:
    return PreferenceOrder(tuple(range(m)))


def _pair_at(k: int, t: int) -> tuple[int, int]:
    """The t-th pair (i, j), i < j < k, in lexicographic order, in O(1)."""
    # pairs with first index < i: c(i) = i*(2k - i - 1)/2; invert by isqrt.
    disc = (2 * k - 1) ** 2 - 8 * t
    i = ((2 * k - 1) - math.isqrt(disc)) // 2

    def c(i: int) -> int:
        return i * (2 * k - i - 1) // 2

    while c(i + 1) <= t:
        i += 1
    while c(i) > t:
        i -= 1
    return i, i + 1 + (t - c(i))


def enumerate_canonical(m: int, start: int = 0, stop: int | None = None) -> Iterator[Profile]:
    """Stream every canonical 3-voter profile over m alternatives.

    Voter 0 is the identity order; voters 1 and 2 are an unordered pair of
    distinct non-identity orders, emitted with the lexicographically smaller
    order first. The stream is lexicographic and deterministic; `start`/`stop`
    select the half-open index range [start, stop) for splitting long runs.
    """
    total = count_canonical(m)
    if start < 0:
        raise ValueError(f"need start >= 0, got {start}")
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    rest = _nonidentity_orders(m)
    ident = _identity_order(m)
    k = len(rest)
    i, j = _pair_at(k, start)
    for _ in range(start, stop):
        yield Profile(m, (ident, rest[i], rest[j]))
        j += 1
        if j == k:
            i += 1
            j = i + 1


def canonical_profile_at(m: int, index: int) -> Profile:
    """The profile at a given position of the enumerate_canonical stream."""
    total = count_canonical(m)
    if not 0 <= index < total:
        raise IndexError(f"index {index} out of range(0, {total})")
    rest = _nonidentity_orders(m)
    i, j = _pair_at(len(rest), index)
    return Profile(m, (_identity_order(m), rest[i], rest[j]))


def restrict(p: Profile, keep: Iterable[int]) -> Profile:
    """Delete all alternatives outside `keep` and renumber the kept ones.

    Kept alternatives are renumbered 0..|keep|-1 in ascending original-index
    order; each voter's relative order is preserved. Restriction can merge
    previously distinct orders, in which case the result is flagged lenient.
    """
    kept = sorted(set(keep))
    if not kept:
        raise ValueError("keep set must be non-empty")
    for a in kept:
        if not 0 <= a < p.m:
            raise ValueError(f"alternative index {a} out of range(0, {p.m})")
    relabel = {old: new for new, old in enumerate(kept)}
    rankings = [
        tuple(relabel[a] for a in o.ranking if a in relabel) for o in p.orders
    ]
    duplicates = len(set(rankings)) != len(rankings)
    orders = tuple(PreferenceOrder(r) for r in rankings)
    return Profile(len(kept), orders, allow_duplicates=p.allow_duplicates or duplicates)
