"""Finite subcovers of [0, 1] from interval covers, with checkable certificates.

A cover is a finite list of open rational intervals whose union must
contain [0, 1] with room to spare: every point of [0, 1], endpoints
included, needs a whole neighbourhood inside a single element.  The
pipeline computes an exact uniform containment radius (the Lebesgue
number of the cover), lays down a finite net of that spacing, assigns
each net point an element containing its ball, and packages the result as
a certificate that an independent sweep can verify with rational
arithmetic alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .errors import (
    NoContainingElement,
    NonpositiveRadius,
    NotACover,
    NotNiceCover,
    ParseError,
)
from .rational import ONE, ZERO, Rational, parse_rational, render


@dataclass(frozen=True)
class OpenInterval:
    lo: Rational
    hi: Rational

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got ({self.lo}, {self.hi})")

    def contains_point(self, x: Rational) -> bool:
        return self.lo < x < self.hi

    def contains_ball(self, center: Rational, radius: Rational) -> bool:
        # (c - r, c + r) subset of (lo, hi) iff lo <= c - r and c + r <= hi.
        return self.lo <= center - radius and center + radius <= self.hi


CoverList = Sequence[OpenInterval]


def parse_cover(text: str) -> list[OpenInterval]:
    """One interval per line as `lo hi` (rationals or exact decimals); `#` comments."""
    intervals: list[OpenInterval] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        code = line.split("#", 1)[0].strip()
        if not code:
            continue
        parts = code.split()
        if len(parts) != 2:
            raise ParseError(f"line {line_no}: expected `lo hi`, got {code!r}")
        lo = parse_rational(parts[0])
        hi = parse_rational(parts[1])
        if not lo < hi:
            raise ParseError(f"line {line_no}: interval needs lo < hi")
        intervals.append(OpenInterval(lo, hi))
    if not intervals:
        raise ParseError("cover file contains no intervals")
    return intervals


def load_cover(path: str | Path) -> list[OpenInterval]:
    return parse_cover(Path(path).read_text())


def uniform_radius_at(cover: CoverList, x: Rational) -> Rational:
    """Largest r with (x - r, x + r) inside some single element.

    This is max over elements of min(x - lo, hi - x); non-positive when no
    element strictly contains x.
    """
    return max(min(x - e.lo, e.hi - x) for e in cover)


def lebesgue_candidates(cover: CoverList) -> list[Rational]:
    """The finite point set on which the radius envelope attains its minimum.

    The per-point radius is a maximum of tent functions with slopes +1 and
    -1, so over [0, 1] its minimum sits at 0, at 1, or at a crossing of an
    ascending piece (x - lo_j) with a descending piece (hi_k - x), which
    solves to (lo_j + hi_k) / 2.  Element endpoints falling inside [0, 1]
    are included as well.  Sorted, for deterministic scans.
    """
    candidates = {ZERO, ONE}
    for e in cover:
        for v in (e.lo, e.hi):
            if ZERO <= v <= ONE:
                candidates.add(v)
    for e1 in cover:
        for e2 in cover:
            mid = (e1.lo + e2.hi) / 2
            if ZERO <= mid <= ONE:
                candidates.add(mid)
    return sorted(candidates)


def lebesgue_number(cover: CoverList) -> Rational:
    """Exact uniform containment radius of the cover over [0, 1].

    Evaluates the radius envelope on the finite candidate set and returns
    the minimum.  A positive result L certifies that around every point of
    [0, 1] the open L-ball fits inside some single element; a non-positive
    envelope value is proof that some point has no interior margin at all,
    which is reported as NotACover with that witness point.
    """
    if not cover:
        raise ValueError("cover must be nonempty")
    best: Rational | None = None
    witness: Rational | None = None
    for x in lebesgue_candidates(cover):
        value = uniform_radius_at(cover, x)
        if best is None or value < best:
            best, witness = value, x
    if best <= 0:
        raise NotACover(
            f"point {render(witness)} of [0,1] has no interior margin "
            f"(best radius {render(best)})"
        )
    return best


class ConstantModulus:
    """Containment-radius oracle that answers the same radius everywhere."""

    def __init__(self, radius: Rational):
        self.radius = radius

    def radius_at(self, x: Rational) -> Rational:
        return self.radius


class LebesgueModulus:
    """Radius oracle derived from the cover itself: its exact Lebesgue number.

    The number is computed on first query and reused; by construction the
    answer is identical at every point.
    """

    def __init__(self, cover: CoverList):
        self._cover = tuple(cover)
        self._radius: Rational | None = None

    def radius_at(self, x: Rational) -> Rational:
        if self._radius is None:
            self._radius = lebesgue_number(self._cover)
        return self._radius


class OracleModulus:
    """Arbitrary radius procedure, for adversarial testing of the pipeline."""

    def __init__(self, fn: Callable[[Rational], Rational]):
        self._fn = fn

    def radius_at(self, x: Rational) -> Rational:
        return self._fn(x)


NiceModulus = ConstantModulus | LebesgueModulus | OracleModulus

DEFAULT_SAMPLE_POINTS: tuple[Rational, ...] = (ZERO, Rational(1, 2), ONE)


def extract_constant_radius(
    modulus: NiceModulus, sample_points: Sequence[Rational] = DEFAULT_SAMPLE_POINTS
) -> Rational:
    """Sample the radius oracle and insist on one positive answer.

    A legitimate uniform modulus answers identically everywhere, so any
    two samples that disagree expose the oracle as no such thing; the
    disagreeing pair is reported as the NotNiceCover witness.
    """
    points = list(sample_points)
    if not points:
        raise ValueError("need at least one sample point")
    first = modulus.radius_at(points[0])
    for p in points[1:]:
        value = modulus.radius_at(p)
        if value != first:
            raise NotNiceCover(points[0], p, first, value)
    if first <= 0:
        raise NonpositiveRadius(f"common radius {render(first)} is not positive")
    return first


def build_eps_net(eps: Rational) -> list[Rational]:
    """The grid 0, eps, 2*eps, ... capped at 1, with 1 appended when missed.

    Every point of [0, 1] ends up strictly within eps of some net point,
    and the net has at most ceil(1/eps) + 1 points.
    """
    if eps <= 0:
        raise NonpositiveRadius(f"net spacing {render(eps)} is not positive")
    count = int(ONE // eps)
    net = [eps * k for k in range(count + 1)]
    if net[-1] != ONE:
        net.append(ONE)
    return net


def find_containing_element(
    cover: CoverList, center: Rational, radius: Rational
) -> int:
    """Smallest element index whose interval contains the ball around `center`."""
    if radius <= 0:
        raise NonpositiveRadius(f"ball radius {render(radius)} is not positive")
    for index, e in enumerate(cover):
        if e.contains_ball(center, radius):
            return index
    raise NoContainingElement(
        f"ball ({render(center - radius)}, {render(center + radius)}) "
        f"fits no cover element"
    )


@dataclass(frozen=True)
class SubcoverCertificate:
    """Everything needed to re-check a finite subcover without trusting us.

    `assignments` pairs a net-point index with the cover-element index
    whose interval contains that net point's radius ball; `selected` is
    the deduplicated sorted list of the assigned elements.
    """

    radius: Rational
    net: tuple[Rational, ...]
    assignments: tuple[tuple[int, int], ...]
    selected: tuple[int, ...]


def extract_finite_subcover(
    cover: CoverList,
    modulus: NiceModulus,
    sample_points: Sequence[Rational] = DEFAULT_SAMPLE_POINTS,
) -> SubcoverCertificate:
    """The whole pipeline: radius, net, per-point assignment, certificate.

    First-match assignment and the fixed net make the certificate
    byte-reproducible for identical inputs.
    """
    if not cover:
        raise ValueError("cover must be nonempty")
    radius = extract_constant_radius(modulus, sample_points)
    net = build_eps_net(radius)
    assignments = tuple(
        (k, find_containing_element(cover, point, radius))
        for k, point in enumerate(net)
    )
    selected = tuple(sorted({element for _, element in assignments}))
    return SubcoverCertificate(radius, tuple(net), assignments, selected)


@dataclass(frozen=True)
class Covered:
    pass


@dataclass(frozen=True)
class Uncovered:
    witness: Rational


def verify_subcover(cover: CoverList, selected: Sequence[int]) -> Covered | Uncovered:
    """Exact sweep deciding whether the selected elements cover [0, 1].

    Maintains `reach`, the first point not yet known covered, starting at
    0.  Any selected element with lo < reach < hi pushes reach to its hi;
    when none does, `reach` itself (0, a gap endpoint, or 1) is a point of
    [0, 1] inside no selected element and is returned as the witness.
    Covered means reach moved strictly past 1.
    """
    elements = []
    for index in selected:
        if not 0 <= index < len(cover):
            raise ValueError(f"element index {index} out of range")
        elements.append(cover[index])
    reach = ZERO
    while True:
        extensions = [e.hi for e in elements if e.lo < reach < e.hi]
        if not extensions:
            return Uncovered(reach)
        reach = max(extensions)
        if reach > ONE:
            return Covered()


def render_certificate(certificate: SubcoverCertificate) -> str:
    lines = [f"r={render(certificate.radius)}"]
    for net_index, element in certificate.assignments:
        lines.append(f"net {render(certificate.net[net_index])} -> element {element}")
    lines.append("selected " + ",".join(str(j) for j in certificate.selected))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> SubcoverCertificate:
    """Inverse of `render_certificate`; raises ParseError on anything off."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("r="):
        raise ParseError("certificate must start with `r=<rational>`")
    radius = parse_rational(lines[0][len("r=") :])
    net: list[Rational] = []
    assignments: list[tuple[int, int]] = []
    selected: tuple[int, ...] | None = None
    for line in lines[1:]:
        if line.startswith("net "):
            if selected is not None:
                raise ParseError("net line after the selected line")
            body = line[len("net ") :]
            if " -> element " not in body:
                raise ParseError(f"bad net line: {line!r}")
            point_text, element_text = body.split(" -> element ", 1)
            if not element_text.strip().isdigit():
                raise ParseError(f"bad element index in: {line!r}")
            assignments.append((len(net), int(element_text)))
            net.append(parse_rational(point_text))
        elif line.startswith("selected"):
            if selected is not None:
                raise ParseError("duplicate selected line")
            body = line[len("selected") :].strip()
            parts = [p for p in body.split(",") if p.strip()]
            if not all(p.strip().isdigit() for p in parts):
                raise ParseError(f"bad selected line: {line!r}")
            selected = tuple(int(p) for p in parts)
        else:
            raise ParseError(f"unrecognized certificate line: {line!r}")
    if selected is None:
        raise ParseError("certificate has no selected line")
    return SubcoverCertificate(radius, tuple(net), tuple(assignments), selected)


def load_certificate(path: str | Path) -> SubcoverCertificate:
    return parse_certificate(Path(path).read_text())


def verify_certificate(cover: CoverList, certificate: SubcoverCertificate) -> list[str]:
    """Full independent re-check of a certificate against a cover.

    Returns a list of human-readable problems; an empty list means the
    certificate is valid.  Checks, all in exact arithmetic: the radius is
    positive, every net point's ball sits inside its assigned element, the
    selected list matches the assignments, the net with this radius leaves
    no point of [0, 1] farther than the radius from a net point, and the
    selected elements really cover [0, 1].
    """
    problems: list[str] = []
    r = certificate.radius
    if r <= 0:
        problems.append(f"radius {render(r)} is not positive")
        return problems

    if [k for k, _ in certificate.assignments] != list(range(len(certificate.net))):
        problems.append("assignments do not list each net point exactly once, in order")
    for net_index, element in certificate.assignments:
        if not 0 <= element < len(cover):
            problems.append(f"assignment {net_index}: element {element} out of range")
            continue
        point = certificate.net[net_index]
        if not cover[element].contains_ball(point, r):
            e = cover[element]
            problems.append(
                f"ball ({render(point - r)}, {render(point + r)}) around net point "
                f"{render(point)} is not inside element {element} "
                f"({render(e.lo)}, {render(e.hi)})"
            )

    expected_selected = tuple(sorted({j for _, j in certificate.assignments}))
    if certificate.selected != expected_selected:
        problems.append(
            "selected list does not match the set of assigned elements"
        )

    balls = [OpenInterval(c - r, c + r) for c in certificate.net]
    density = verify_subcover(balls, range(len(balls)))
    if isinstance(density, Uncovered):
        problems.append(
            f"net with radius {render(r)} leaves {render(density.witness)} uncovered"
        )

    in_range = [j for _, j in certificate.assignments if 0 <= j < len(cover)]
    coverage = verify_subcover(cover, sorted(set(in_range)))
    if isinstance(coverage, Uncovered):
        problems.append(
            f"selected elements leave {render(coverage.witness)} uncovered"
        )
    return problems
