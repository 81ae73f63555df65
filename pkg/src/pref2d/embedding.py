"""Embeddings of preference profiles in the plane, and their verification.

An embedding assigns a point to every voter and every alternative. It
certifies a profile when each voter's ranking agrees with strictly
increasing distance. The verifier checks consecutive ranking pairs only;
transitivity of < on the reals extends the guarantee to all pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, NamedTuple

from .geometry import Point, dist
from .profiles import PreferenceOrder, Profile

# Default margin for machine-produced embeddings; the closed-form
# constructions are verified at margin 0 (their slacks are bounded below).
DEFAULT_VERIFY_MARGIN = 1e-7


class DocumentParseError(ValueError):
    """Malformed embedding document."""


class Violation(NamedTuple):
    """One failed comparison: the voter does not sit closer to `preferred`."""

    voter: int
    preferred: int
    other: int
    d_preferred: float
    d_other: float


@dataclass(frozen=True)
class Embedding:
    """Points for all voters and all alternatives of one profile."""

    voter_points: tuple[Point, ...]
    alt_points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "voter_points", tuple(Point(*p) for p in self.voter_points))
        object.__setattr__(self, "alt_points", tuple(Point(*p) for p in self.alt_points))
        for p in (*self.voter_points, *self.alt_points):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ValueError(f"non-finite coordinate {p}")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a verify run.

    `min_slack` is the smallest distance gap over all voters and
    consecutive-in-ranking pairs (inf when m = 1); ok holds exactly when
    min_slack exceeds the margin the check ran at, i.e. violations is empty.
    """

    ok: bool
    min_slack: float
    violations: tuple[Violation, ...]


def distance_matrix(p: Profile, e: Embedding) -> tuple[tuple[float, ...], ...]:
    """n x m matrix of voter-to-alternative distances."""
    return tuple(
        tuple(dist(v, a) for a in e.alt_points) for v in e.voter_points
    )


def verify(p: Profile, e: Embedding, margin: float = 0.0) -> VerificationReport:
    """Check that every voter ranks alternatives by strictly increasing distance.

    For each voter and each consecutively ranked pair (a better than b) the
    check is dist(voter, a) + margin < dist(voter, b). Ties and near-ties
    within the margin are violations; there is no tolerance in the other
    direction.
    """
    if len(e.voter_points) != p.n or len(e.alt_points) != p.m:
        raise ValueError(
            f"embedding has {len(e.voter_points)} voters / {len(e.alt_points)} "
            f"alternatives, profile needs {p.n} / {p.m}"
        )
    min_slack = math.inf
    violations: list[Violation] = []
    for i, order in enumerate(p.orders):
        v = e.voter_points[i]
        ranking = order.ranking
        d_prev = dist(v, e.alt_points[ranking[0]])
        for k in range(1, p.m):
            d_next = dist(v, e.alt_points[ranking[k]])
            slack = d_next - d_prev
            if slack < min_slack:
                min_slack = slack
            if slack <= margin:
                violations.append(
                    Violation(i, ranking[k - 1], ranking[k], d_prev, d_next)
                )
            d_prev = d_next
    return VerificationReport(not violations, min_slack, tuple(violations))


def embed_two_voters(p: Profile) -> Embedding:
    """Closed-form embedding for profiles with at most two voters.

    Voters go far out on the axes, alternatives at their rank pairs; each
    alternative's distance to a voter then falls in a band of width 1 that
    is disjoint from the bands of differently ranked alternatives.
    """
    if p.n > 2:
        raise ValueError(f"construction requires n <= 2 voters, got n={p.n}")
    m = p.m
    if p.n == 1:
        voters = (Point(-float(m * m), 0.0),)
        alts = tuple(Point(float(p.orders[0].rank_of(a)), 0.0) for a in range(m))
    else:
        voters = (Point(-float(m * m), 0.0), Point(0.0, -float(m * m)))
        alts = tuple(
            Point(float(p.orders[0].rank_of(a)), float(p.orders[1].rank_of(a)))
            for a in range(m)
        )
    return Embedding(voters, alts)


_THREE_ALT_POINTS = (Point(0.0, 2.0), Point(2.0, -1.0), Point(-2.0, -1.0))

_THREE_ALT_VOTER = {
    (0, 1, 2): Point(2.0, 2.0),
    (1, 0, 2): Point(2.0, 0.0),
    (1, 2, 0): Point(1.0, -1.0),
    (2, 1, 0): Point(-1.0, -1.0),
    (2, 0, 1): Point(-2.0, 0.0),
    (0, 2, 1): Point(-2.0, 2.0),
}


def embed_three_alternatives(p: Profile) -> Embedding:
    """Fixed-coordinate embedding for profiles with at most three alternatives.

    The three alternatives sit at fixed spots and each of the six possible
    orders has a pre-assigned voter position; any number of voters works.
    """
    if p.m > 3:
        raise ValueError(f"construction requires m <= 3 alternatives, got m={p.m}")
    if p.m == 3:
        alts = _THREE_ALT_POINTS
        voters = tuple(_THREE_ALT_VOTER[o.ranking] for o in p.orders)
    elif p.m == 2:
        alts = (Point(0.0, 0.0), Point(3.0, 0.0))
        voters = tuple(
            Point(-1.0, 0.0) if o.ranking == (0, 1) else Point(4.0, 0.0)
            for o in p.orders
        )
    else:
        alts = (Point(0.0, 0.0),)
        voters = tuple(Point(1.0, 0.0) for _ in p.orders)
    return Embedding(voters, alts)


def restrict_embedding(e: Embedding, keep: Iterable[int]) -> Embedding:
    """Drop alternative points outside `keep`; companion of profiles.restrict."""
    kept = sorted(set(keep))
    if not kept:
        raise ValueError("keep set must be non-empty")
    return Embedding(e.voter_points, tuple(e.alt_points[a] for a in kept))


def write_embedding(
    p: Profile,
    e: Embedding,
    report: VerificationReport,
    metadata: Mapping[str, Any] | None = None,
) -> str:
    """Serialize profile, coordinates, distances and the audit trail as JSON.

    The document is self-contained: it repeats the profile (1-based ids, as
    in the text format), the full distance matrix used for verification, and
    the report. `metadata` may carry "seed" and "config" for reproducibility.
    Floats round-trip bit-exactly through read_embedding.
    """
    doc: dict[str, Any] = {
        "m": p.m,
        "n": p.n,
        "profile": [[a + 1 for a in o.ranking] for o in p.orders],
        "voters": [[v.x, v.y] for v in e.voter_points],
        "alternatives": [[a.x, a.y] for a in e.alt_points],
        "distances": [list(row) for row in distance_matrix(p, e)],
        "min_slack": report.min_slack if math.isfinite(report.min_slack) else None,
        "ok": report.ok,
        "violations": [
            [v.voter + 1, v.preferred + 1, v.other + 1, v.d_preferred, v.d_other]
            for v in report.violations
        ],
    }
    if metadata:
        if "seed" in metadata:
            doc["seed"] = metadata["seed"]
        if "config" in metadata:
            doc["config"] = metadata["config"]
    return json.dumps(doc, indent=2) + "\n"


def read_embedding(text: str) -> tuple[Embedding, dict[str, Any]]:
    """Parse an embedding document; inverse of write_embedding on its output.

    Returns the embedding and the full document dict (profile, distances,
    report fields, optional seed/config) for callers that need the context.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentParseError("document must be a JSON object")
    for key in ("m", "n", "voters", "alternatives"):
        if key not in doc:
            raise DocumentParseError(f"missing field {key!r}")
    m, n = doc["m"], doc["n"]
    if not (isinstance(m, int) and isinstance(n, int) and m >= 1 and n >= 1):
        raise DocumentParseError(f"bad dimensions m={m!r} n={n!r}")

    def points(name: str, count: int) -> tuple[Point, ...]:
        raw = doc[name]
        if not isinstance(raw, list) or len(raw) != count:
            raise DocumentParseError(f"{name!r} must list {count} points")
        pts = []
        for entry in raw:
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(c, (int, float)) for c in entry)
                or not all(math.isfinite(c) for c in entry)
            ):
                raise DocumentParseError(f"bad coordinate {entry!r} in {name!r}")
            pts.append(Point(float(entry[0]), float(entry[1])))
        return tuple(pts)

    e = Embedding(points("voters", n), points("alternatives", m))
    return e, doc


def profile_from_document(doc: Mapping[str, Any]) -> Profile:
    """Rebuild the profile recorded in an embedding document (lenient)."""
    try:
        rankings = [tuple(a - 1 for a in row) for row in doc["profile"]]
        return Profile(
            doc["m"],
            tuple(PreferenceOrder(r) for r in rankings),
            allow_duplicates=True,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentParseError(f"bad profile field: {exc}") from None


def _fmt(v: float) -> str:
    return format(v, ".6g")


def render_svg(p: Profile, e: Embedding) -> str:
    """Draw the embedding: voters as labeled squares, alternatives as circles.

    The y axis is flipped to the usual mathematical orientation and the
    viewBox auto-fits all points with 10% padding. Output is deterministic.
    """
    if len(e.voter_points) != p.n or len(e.alt_points) != p.m:
        raise ValueError(
            f"embedding has {len(e.voter_points)} voters / {len(e.alt_points)} "
            f"alternatives, profile needs {p.n} / {p.m}"
        )
    pts = [(q.x, -q.y) for q in (*e.voter_points, *e.alt_points)]
    xs = [q[0] for q in pts]
    ys = [q[1] for q in pts]
    w = max(xs) - min(xs)
    h = max(ys) - min(ys)
    pad = 0.1 * max(w, h, 1.0)
    span = max(w, h) + 2 * pad
    marker = 0.02 * span
    font = 0.05 * span
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(min(xs) - pad)} {_fmt(min(ys) - pad)} '
        f'{_fmt(w + 2 * pad)} {_fmt(h + 2 * pad)}">'
    ]
    for i, v in enumerate(e.voter_points):
        x, y = v.x, -v.y
        lines.append(
            f'  <rect x="{_fmt(x - marker)}" y="{_fmt(y - marker)}" '
            f'width="{_fmt(2 * marker)}" height="{_fmt(2 * marker)}" '
            'fill="steelblue"/>'
        )
        lines.append(
            f'  <text x="{_fmt(x + 1.5 * marker)}" y="{_fmt(y - 1.5 * marker)}" '
            f'font-size="{_fmt(font)}" fill="steelblue">v{i + 1}</text>'
        )
    for a, q in enumerate(e.alt_points):
        x, y = q.x, -q.y
        lines.append(
            f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(marker)}" '
            'fill="firebrick"/>'
        )
        lines.append(
            f'  <text x="{_fmt(x + 1.5 * marker)}" y="{_fmt(y - 1.5 * marker)}" '
            f'font-size="{_fmt(font)}" fill="firebrick">a{a + 1}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
