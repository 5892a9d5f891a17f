"""Circular three-page presentations: chords on a circle, three pages.

A binding sequence flattens to a chord diagram: binding points around a
circle (clockwise), every arc a chord on one of three pages.  Page 1
carries under-passages, page 2 over-passages, page 3 the edge middles
outside the circle.  The chord count is the certified upper bound this
package exists to produce, so this module also carries the independent
checks: book-embedding verification, and reconstruction of a diagram
from nothing but the chord data for a round-trip comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .binding import (INSIDE_OVER, INSIDE_UNDER, OUTSIDE, PAGE_BY_TYPE,
                      BindingSequence, chords_cross)
from .diagram import PlaneDiagram, crossing_of, rotate, slot_of, \
    strand_slot_type
from .errors import VerificationError


@dataclass(frozen=True)
class Chord:
    a: int  # binding point ids, not positions
    b: int
    page: int
    crossings: tuple[int, ...]
    arc: int


@dataclass(frozen=True)
class ThreePagePresentation:
    points: tuple[int, ...]  # binding point ids, clockwise
    chords: tuple[Chord, ...]
    repaired: bool
    bound: int

    @cached_property
    def _position(self) -> dict[int, int]:
        return {pid: i for i, pid in enumerate(self.points)}

    def position(self, point_id: int) -> int:
        return self._position[point_id]

    def span(self, chord: Chord) -> tuple[int, int]:
        """Chord endpoints as circle positions, low first."""
        x, y = self._position[chord.a], self._position[chord.b]
        return (x, y) if x <= y else (y, x)

    def to_json_dict(self) -> dict:
        return {
            "points": list(self.points),
            "arcs": [{"a": c.a, "b": c.b, "page": c.page,
                      "crossings": list(c.crossings)} for c in self.chords],
            "bound": self.bound,
            "repaired": self.repaired,
        }


@dataclass(frozen=True)
class PageReport:
    ok: bool
    degree_ok: bool
    pages_distinct_ok: bool
    planar_ok: bool
    offenders: tuple[str, ...]


@dataclass(frozen=True)
class OverlayResult:
    supported: bool
    pd_text: str | None = None
    diagram: PlaneDiagram | None = None
    reason: str | None = None


def _sequence_problems(seq: BindingSequence) -> list[str]:
    """Diagram-free slice of the binding conditions.

    Everything expressible with the sequence alone is checked here: the
    count identities, point degrees, passage structure, type purity and
    crossing coverage.  Edge-level placement needs the diagram and stays
    in verify_binding.  Condition 4 is enforced only for repaired input;
    an unrepaired sequence on a non-alternating diagram legitimately
    violates it, and the bound it certifies is still valid.
    """
    problems = []
    ids = {p.id for p in seq.points}
    if len(ids) != len(seq.points):
        problems.append("duplicate point ids")
    if len(seq.points) != len(seq.arcs):
        problems.append(f"{len(seq.points)} points vs {len(seq.arcs)} arcs")
    if not seq.repaired and len(seq.points) != 3 * seq.n + 1 - seq.m:
        problems.append("unrepaired point count is not 3n+1-m")

    degree: dict[int, list] = {pid: [] for pid in ids}
    for arc in seq.arcs:
        for end in arc.ends:
            if end.point not in ids:
                problems.append(f"arc {arc.id} ends at unknown point")
                continue
            degree[end.point].append(arc)
        if arc.type == OUTSIDE:
            if arc.crossings or arc.darts:
                problems.append(f"outside arc {arc.id} passes a crossing")
        elif arc.type in (INSIDE_UNDER, INSIDE_OVER):
            if not arc.crossings or len(arc.darts) != 2 * len(arc.crossings):
                problems.append(f"inside arc {arc.id} passage list broken")
                continue
            for k, c in enumerate(arc.crossings):
                x0, x1 = arc.darts[2 * k], arc.darts[2 * k + 1]
                if crossing_of(x0) != c or rotate(rotate(x0)) != x1:
                    problems.append(f"arc {arc.id} passage {k} malformed")
            for x in arc.darts:
                if "inside-" + strand_slot_type(slot_of(x)) != arc.type:
                    problems.append(f"arc {arc.id} type does not match "
                                    f"dart {x}")
        else:
            problems.append(f"arc {arc.id} has unknown type {arc.type!r}")

    for pid, arcs_here in degree.items():
        if len(arcs_here) != 2:
            problems.append(f"point {pid} has {len(arcs_here)} arc ends")
        elif seq.repaired:
            a, b = arcs_here
            if a.id == b.id or a.type == b.type:
                problems.append(f"repaired sequence keeps same-type arcs "
                                f"at point {pid}")

    covered = set()
    for arc in seq.arcs:
        if arc.type != OUTSIDE:
            covered.update(arc.crossings)
    if covered != set(range(seq.n)):
        problems.append("inside arcs do not cover all crossings")
    return problems


def to_presentation(seq: BindingSequence) -> ThreePagePresentation:
    """Flatten a binding sequence to its chord diagram.

    The chord count equals the point count and is the certified bound.
    Raises when the sequence fails its diagram-free verification.
    """
    problems = _sequence_problems(seq)
    if problems:
        raise VerificationError(
            "binding sequence failed verification: " + "; ".join(problems))
    chords = tuple(Chord(a=arc.ends[0].point, b=arc.ends[1].point,
                         page=PAGE_BY_TYPE[arc.type],
                         crossings=arc.crossings, arc=arc.id)
                   for arc in seq.arcs)
    return ThreePagePresentation(points=tuple(p.id for p in seq.points),
                                 chords=chords, repaired=seq.repaired,
                                 bound=len(seq.points))


def verify_pages(pres: ThreePagePresentation) -> PageReport:
    """Book-embedding well-formedness; never raises."""
    bad_deg: list[str] = []
    bad_pages: list[str] = []
    bad_planar: list[str] = []

    known = set(pres.points)
    if len(known) != len(pres.points):
        bad_deg.append("duplicate point ids")
    at_point: dict[int, list[Chord]] = {pid: [] for pid in known}
    for ch in pres.chords:
        if ch.page not in (1, 2, 3):
            bad_pages.append(f"arc {ch.arc} on unknown page {ch.page}")
        for pid in (ch.a, ch.b):
            if pid in at_point:
                at_point[pid].append(ch)
            else:
                bad_deg.append(f"arc {ch.arc} ends at unknown point {pid}")
    for pid in pres.points:
        here = at_point[pid]
        if len(here) != 2:
            bad_deg.append(f"point {pid} has {len(here)} arc ends")
        elif here[0].page == here[1].page:
            bad_pages.append(
                f"point {pid} joins two page-{here[0].page} arcs "
                f"({here[0].arc}, {here[1].arc})")

    spans = [(pres.span(ch), ch) for ch in pres.chords
             if ch.a in known and ch.b in known]
    for ((a1, b1), c1), ((a2, b2), c2) in itertools.combinations(spans, 2):
        if c1.page == c2.page and chords_cross(a1, b1, a2, b2):
            bad_planar.append(f"page-{c1.page} arcs {c1.arc} and {c2.arc} "
                              f"interleave")

    offenders = tuple(bad_deg + bad_pages + bad_planar)
    return PageReport(ok=not offenders,
                      degree_ok=not bad_deg,
                      pages_distinct_ok=not bad_pages,
                      planar_ok=not bad_planar,
                      offenders=offenders)


def interleaving_pairs(
        pres: ThreePagePresentation) -> tuple[tuple[int, int], ...]:
    """Indices of (page-1, page-2) chord pairs that cross.

    For an unrepaired presentation of an n-crossing diagram there are
    exactly n such pairs, one per crossing.
    """
    ones = [i for i, c in enumerate(pres.chords) if c.page == 1]
    twos = [i for i, c in enumerate(pres.chords) if c.page == 2]
    out = []
    for i in ones:
        a1, b1 = pres.span(pres.chords[i])
        for j in twos:
            a2, b2 = pres.span(pres.chords[j])
            if chords_cross(a1, b1, a2, b2):
                out.append((i, j))
    return tuple(out)


def overlay_reconstruct(pres: ThreePagePresentation) -> OverlayResult:
    """Rebuild a diagram from the chords alone.

    Each crossing of the rebuilt diagram is an interleaving page-1 x
    page-2 pair, with the page-2 strand on top; its rotation is the
    circle order of the four chord endpoints.  Edges follow the strand
    through binding points, crossing one outside chord at most.  Merged
    arcs (more than one passage) leave the overlay ambiguous, so such
    presentations are reported as unsupported rather than guessed at.
    Two same-page arcs meeting at a point are fine here: the rebuild
    uses chord geometry only, not the alternation property.
    """
    rep = verify_pages(pres)
    bad_page_value = any(ch.page not in (1, 2, 3) for ch in pres.chords)
    if not (rep.degree_ok and rep.planar_ok) or bad_page_value:
        return OverlayResult(supported=False,
                             reason="presentation failed page verification")
    for ch in pres.chords:
        if ch.page in (1, 2) and len(ch.crossings) != 1:
            return OverlayResult(
                supported=False,
                reason=f"arc {ch.arc} passes {len(ch.crossings)} crossings; "
                       f"overlay needs single-passage arcs")

    ones = [i for i, c in enumerate(pres.chords) if c.page == 1]
    twos = [i for i, c in enumerate(pres.chords) if c.page == 2]
    if not ones and not twos:
        return OverlayResult(supported=True, pd_text="PD[]",
                             diagram=PlaneDiagram([]))

    # Pair up the inside chords; the pairing must be a bijection.
    partner: dict[int, int] = {}
    for i in ones:
        a1, b1 = pres.span(pres.chords[i])
        hits = []
        for j in twos:
            a2, b2 = pres.span(pres.chords[j])
            if chords_cross(a1, b1, a2, b2):
                hits.append(j)
        if len(hits) != 1:
            return OverlayResult(
                supported=False,
                reason=f"page-1 arc {pres.chords[i].arc} interleaves "
                       f"{len(hits)} page-2 arcs, expected exactly 1")
        partner[i] = hits[0]
    if len(set(partner.values())) != len(twos) or len(ones) != len(twos):
        return OverlayResult(
            supported=False,
            reason="page-1/page-2 interleaving is not a perfect matching")

    crossings = sorted(partner.items())  # (under chord, over chord), stable

    at_point: dict[int, list[int]] = {pid: [] for pid in pres.points}
    for idx, ch in enumerate(pres.chords):
        at_point[ch.a].append(idx)
        at_point[ch.b].append(idx)

    def other_chord(pid: int, idx: int) -> int:
        pair = at_point[pid]
        return pair[1] if pair[0] == idx else pair[0]

    def other_end(idx: int, pid: int) -> int:
        ch = pres.chords[idx]
        return ch.b if ch.a == pid else ch.a

    def trace(idx: int, pid: int) -> tuple[int, int] | None:
        """Follow the strand leaving chord idx through point pid."""
        nxt = other_chord(pid, idx)
        if pres.chords[nxt].page in (1, 2):
            return (nxt, pid)
        far = other_end(nxt, pid)
        last = other_chord(far, nxt)
        if pres.chords[last].page == 3:
            return None
        return (last, far)

    # Rays: one per inside chord endpoint; slots from circle order with
    # slot 0 on the under chord's smaller position.
    slot_rays: list[list[tuple[int, int]]] = []
    for under_idx, over_idx in crossings:
        u, o = pres.chords[under_idx], pres.chords[over_idx]
        quad = sorted((pres.position(pid), idx, pid)
                      for idx, pid in ((under_idx, u.a), (under_idx, u.b),
                                       (over_idx, o.a), (over_idx, o.b)))
        start = min(k for k in range(4) if quad[k][1] == under_idx)
        rays = [(quad[(start + k) % 4][1], quad[(start + k) % 4][2])
                for k in range(4)]
        if [pres.chords[i].page for i, _ in rays] != [1, 2, 1, 2]:
            return OverlayResult(
                supported=False,
                reason="crossing rays do not alternate under/over")
        slot_rays.append(rays)

    all_rays = set(itertools.chain.from_iterable(slot_rays))
    label_of: dict[tuple[int, int], int] = {}
    next_label = 1
    for rays in slot_rays:
        for ray in rays:
            if ray in label_of:
                continue
            dest = trace(*ray)
            if dest is None or dest not in all_rays:
                return OverlayResult(
                    supported=False,
                    reason="strand leaves the inside chords and never "
                           "returns to a crossing")
            label_of[ray] = label_of[dest] = next_label
            next_label += 1

    rows = [tuple(label_of[ray] for ray in rays) for rays in slot_rays]
    try:
        diagram = PlaneDiagram(rows)
    except ValueError as exc:
        return OverlayResult(supported=False,
                             reason=f"reassembled code is invalid: {exc}")
    text = "PD[" + ", ".join(
        "X(%d,%d,%d,%d)" % row for row in rows) + "]"
    return OverlayResult(supported=True, pd_text=text, diagram=diagram)


@dataclass(frozen=True)
class RenderOptions:
    size: int = 480
    labels: bool = True
    stroke: float = 2.0


_SVG_STYLE = """\
    circle.binding { fill: none; stroke: #333; }
    circle.pt { fill: #333; }
    .p1 { fill: none; stroke: #d62728; }
    .p2 { fill: none; stroke: #1f77b4; }
    .p3 { fill: none; stroke: #2ca02c; stroke-dasharray: 4 3; }
    text { font: 11px sans-serif; fill: #333; text-anchor: middle;
           dominant-baseline: middle; }
"""


def render_svg(pres: ThreePagePresentation,
               options: RenderOptions = RenderOptions()) -> str:
    """Deterministic SVG picture of the presentation.

    Points sit equally spaced clockwise from the top.  Pages 1 and 2 are
    straight chords (page 2 painted after page 1, so it wins at the
    crossings); page 3 bulges outside the circle.  Equal input gives
    byte-identical output.
    """
    size = options.size
    center = size / 2.0
    radius = 0.30 * size
    count = len(pres.points)

    def xy(position: float, r: float) -> tuple[float, float]:
        ang = -math.pi / 2 + 2 * math.pi * position / max(count, 1)
        return (center + r * math.cos(ang), center + r * math.sin(ang))

    def fmt(v: float) -> str:
        return f"{v:.2f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f"  <style>\n{_SVG_STYLE}  </style>",
        f'  <circle class="binding" cx="{fmt(center)}" cy="{fmt(center)}" '
        f'r="{fmt(radius)}" stroke-width="{fmt(options.stroke)}"/>',
    ]

    def line(ch: Chord) -> str:
        x1, y1 = xy(pres.position(ch.a), radius)
        x2, y2 = xy(pres.position(ch.b), radius)
        return (f'  <line class="p{ch.page}" x1="{fmt(x1)}" y1="{fmt(y1)}" '
                f'x2="{fmt(x2)}" y2="{fmt(y2)}" '
                f'stroke-width="{fmt(options.stroke)}"/>')

    def outer_path(ch: Chord) -> str:
        pa, pb = pres.position(ch.a), pres.position(ch.b)
        x1, y1 = xy(pa, radius)
        x2, y2 = xy(pb, radius)
        lo, hi = min(pa, pb), max(pa, pb)
        # Bulge through the shorter way around, radially outward.
        if count and (hi - lo) > count / 2:
            mid = ((hi + lo) / 2.0 + count / 2.0) % count
            span = count - (hi - lo)
        else:
            mid = (hi + lo) / 2.0
            span = hi - lo
        bulge = radius * (1.12 + 0.5 * (span / max(count, 1)))
        cxp, cyp = xy(mid, bulge)
        return (f'  <path class="p3" d="M {fmt(x1)} {fmt(y1)} '
                f'Q {fmt(cxp)} {fmt(cyp)} {fmt(x2)} {fmt(y2)}" '
                f'stroke-width="{fmt(options.stroke)}"/>')

    for page, draw in ((3, outer_path), (1, line), (2, line)):
        for ch in pres.chords:
            if ch.page == page:
                parts.append(draw(ch))

    for i, pid in enumerate(pres.points):
        x, y = xy(i, radius)
        parts.append(f'  <circle class="pt" cx="{fmt(x)}" cy="{fmt(y)}" '
                     f'r="{fmt(max(2.0, options.stroke * 1.4))}"/>')
        if options.labels:
            lx, ly = xy(i, radius + 0.055 * size)
            parts.append(f'  <text x="{fmt(lx)}" y="{fmt(ly)}">{pid}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
