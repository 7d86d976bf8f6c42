"""Affine labeling, crossing weights, the invariant polynomial, and the
extension to diagrams with singular crossings.

Label propagation: walking a component, the label changes by -sign at an
Over passage and +sign at an Under passage; singular passages change it
by -1 on the primary strand and +1 on the secondary, so all resolutions
of a singular diagram share one labeling.  The index difference delta_i
of a component is its final label minus its starting label and is always
a plain integer.

A classical crossing with over-incoming label a, under-incoming label b
and sign s gets weight W = a - b - s (equivalently over-incoming minus
under-outgoing).  The invariant is

    sum over classical crossings of  sign * t_i^(delta_j) * (t_i^W - 1)

with i the overstrand component and j the understrand component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .algebra import AffineInt, LaurentPoly, shift_monomial
from .diagram import (OVER, SING_PRIMARY, SING_SECONDARY, UNDER, Component,
                      CrossingRecord, Passage, TangleDiagram)
from .errors import HasSingular, NoSingular, NotClassical

_INCREMENT_BY_ROLE = {SING_PRIMARY: -1, SING_SECONDARY: 1}


def _increment(role: str, sign: int | None) -> int:
    if role == OVER:
        return -sign
    if role == UNDER:
        return sign
    return _INCREMENT_BY_ROLE[role]


@dataclass(frozen=True)
class Labeling:
    """Arc labels per component (one more entry than events) and deltas."""

    labels: dict[int, tuple[AffineInt, ...]]
    delta: dict[int, int]

    def incoming(self, component: int, position: int) -> AffineInt:
        return self.labels[component][position]

    def start(self, component: int) -> AffineInt:
        return self.labels[component][0]

    def final(self, component: int) -> AffineInt:
        return self.labels[component][-1]


def propagate_labels(d: TangleDiagram,
                     starts: Mapping[int, AffineInt | int] | None = None) -> Labeling:
    """Propagate labels from each component's start (symbol c_i by default)."""
    labels: dict[int, tuple[AffineInt, ...]] = {}
    delta: dict[int, int] = {}
    for ci, comp in enumerate(d.components, start=1):
        start = AffineInt.symbol(ci)
        if starts is not None and ci in starts:
            given = starts[ci]
            start = AffineInt(given) if isinstance(given, int) else given
        arcs = [start]
        for ev in comp.events:
            arcs.append(arcs[-1] + _increment(ev.role, d.crossings[ev.crossing].sign))
        labels[ci] = tuple(arcs)
        diff = arcs[-1] - arcs[0]
        delta[ci] = diff.const
    return Labeling(labels, delta)


@dataclass(frozen=True)
class WeightEntry:
    weight: AffineInt
    over_component: int
    under_component: int
    sign: int


def crossing_weight(d: TangleDiagram, labeling: Labeling, crossing_id: int) -> AffineInt:
    return weight_entry(d, labeling, crossing_id).weight


def weight_entry(d: TangleDiagram, labeling: Labeling, crossing_id: int) -> WeightEntry:
    rec = d.crossings.get(crossing_id)
    if rec is None or not rec.is_classical:
        raise NotClassical(f"crossing {crossing_id} is not a classical crossing")
    positions = d.passage_positions()
    oi, opos = positions[(crossing_id, OVER)]
    ui, upos = positions[(crossing_id, UNDER)]
    w = labeling.incoming(oi, opos) - labeling.incoming(ui, upos) - rec.sign
    return WeightEntry(w, oi, ui, rec.sign)


def weight_table(d: TangleDiagram, labeling: Labeling | None = None) -> dict[int, WeightEntry]:
    labeling = labeling or propagate_labels(d)
    positions = d.passage_positions()
    table = {}
    for cid in d.classical_ids():
        oi, opos = positions[(cid, OVER)]
        ui, upos = positions[(cid, UNDER)]
        w = labeling.incoming(oi, opos) - labeling.incoming(ui, upos) - d.crossings[cid].sign
        table[cid] = WeightEntry(w, oi, ui, d.crossings[cid].sign)
    return table


# ---------------------------------------------------------------------------
# the polynomial


@dataclass(frozen=True)
class Contribution:
    """One crossing's structured summand, before any simplification."""

    sign: int
    over_component: int
    under_component: int
    weight: AffineInt


@dataclass(frozen=True)
class MaipContributions:
    """Per-crossing records plus the component index differences.

    This is the unsimplified form needed to predict composite
    polynomials: the delta rewrites of composition act on the exponent
    slots of individual records and cannot be recovered from the summed
    polynomial.
    """

    records: tuple[Contribution, ...]
    delta: dict[int, int]

    def polynomial(self) -> LaurentPoly:
        return contribution_poly(self.records, self.delta)


def contribution_poly(records, delta: Mapping[int, int]) -> LaurentPoly:
    total = LaurentPoly.zero()
    for rec in records:
        base = LaurentPoly.monomial(rec.over_component, rec.weight) + LaurentPoly.constant(-1)
        shifted = shift_monomial(base, rec.over_component, AffineInt(delta[rec.under_component]))
        total = total + rec.sign * shifted
    return total


def structured_maip(d: TangleDiagram, labeling: Labeling | None = None) -> MaipContributions:
    labeling = labeling or propagate_labels(d)
    table = weight_table(d, labeling)
    records = tuple(
        Contribution(e.sign, e.over_component, e.under_component, e.weight)
        for _cid, e in sorted(table.items())
    )
    return MaipContributions(records, dict(labeling.delta))


def maip(d: TangleDiagram, labeling: Labeling | None = None) -> LaurentPoly:
    """The multi-variable polynomial of a diagram without singular crossings."""
    if d.singular_ids():
        raise HasSingular("diagram has singular crossings; use resolve")
    return structured_maip(d, labeling).polynomial()


# ---------------------------------------------------------------------------
# singular resolution


@dataclass(frozen=True)
class SingularResolutionTerm:
    coefficient: int
    diagram: TangleDiagram


def resolve_singular(d: TangleDiagram) -> list[SingularResolutionTerm]:
    """All 2^k resolutions of the singular crossings, with signs.

    The + resolution turns (primary, secondary) into (Over, Under) at a
    positive crossing; the - resolution into (Under, Over) at a negative
    one.  The coefficient is (-1)^(number of negative choices).
    """
    sing = d.singular_ids()
    if not sing:
        raise NoSingular("diagram has no singular crossings")
    terms = []
    for choice in itertools.product((1, -1), repeat=len(sing)):
        chosen = dict(zip(sing, choice))
        crossings = dict(d.crossings)
        for cid, res in chosen.items():
            crossings[cid] = CrossingRecord.classical(res)
        components = []
        for comp in d.components:
            events = []
            for ev in comp.events:
                if ev.crossing in chosen:
                    res = chosen[ev.crossing]
                    if ev.role == SING_PRIMARY:
                        events.append(Passage(ev.crossing, OVER if res > 0 else UNDER))
                    else:
                        events.append(Passage(ev.crossing, UNDER if res > 0 else OVER))
                else:
                    events.append(ev)
            components.append(Component(comp.kind, tuple(events), comp.start, comp.end))
        coefficient = 1
        for res in choice:
            coefficient *= res
        terms.append(SingularResolutionTerm(
            coefficient, TangleDiagram(d.m, d.n, tuple(components), crossings)))
    return terms


def vassiliev_eval(d: TangleDiagram) -> LaurentPoly:
    """Signed sum of the polynomial over all resolutions (order-one extension)."""
    if not d.singular_ids():
        return maip(d)
    total = LaurentPoly.zero()
    for term in resolve_singular(d):
        total = total + term.coefficient * maip(term.diagram)
    return total
