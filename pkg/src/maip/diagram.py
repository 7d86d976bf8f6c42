"""Combinatorial tangle diagrams: extended Gauss codes with boundary slots.

A diagram lists, per component, the ordered crossing passages met while
traversing it from its start (long components) or basepoint (closed
components).  Classical crossings appear once as Over and once as Under
and carry a sign; singular crossings appear once as primary and once as
secondary, where the primary strand is the one that passes over in the
positive resolution.

Virtual crossings are deliberately absent from the model: they
contribute nothing to labels, weights, or the intersection pairing, and
the purely virtual moves act trivially on abstract Gauss codes, so
erasing them makes that part of the invariance story true by
representation.

Boundary slots are named ``T1..Tm`` (top, left to right) and ``B1..Bn``
(bottom); each long component records the slot where it starts and the
slot where it ends.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DiagramParseError, ValidationFailure

OVER = "O"
UNDER = "U"
SING_PRIMARY = "X"
SING_SECONDARY = "Y"

CLASSICAL_ROLES = (OVER, UNDER)
SINGULAR_ROLES = (SING_PRIMARY, SING_SECONDARY)


@dataclass(frozen=True)
class Passage:
    crossing: int
    role: str

    def token(self, sign: int | None) -> str:
        if self.role in SINGULAR_ROLES:
            return f"{self.role}{self.crossing}"
        return f"{self.role}{self.crossing}{'+' if sign > 0 else '-'}"


@dataclass(frozen=True)
class CrossingRecord:
    """Classical crossings carry sign +1/-1; singular ones carry None."""

    sign: int | None

    @property
    def is_classical(self) -> bool:
        return self.sign is not None

    @staticmethod
    def classical(sign: int) -> "CrossingRecord":
        if sign not in (1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {sign}")
        return CrossingRecord(sign)

    @staticmethod
    def singular() -> "CrossingRecord":
        return CrossingRecord(None)


@dataclass(frozen=True)
class Component:
    kind: str                      # "closed" | "long"
    events: tuple[Passage, ...]
    start: str | None = None       # slot name, long components only
    end: str | None = None

    @property
    def is_closed(self) -> bool:
        return self.kind == "closed"


@dataclass
class TangleDiagram:
    """An (m, n)-tangle diagram; treat as immutable after construction."""

    m: int
    n: int
    components: tuple[Component, ...]
    crossings: dict[int, CrossingRecord] = field(default_factory=dict)

    def classical_ids(self) -> list[int]:
        return sorted(i for i, r in self.crossings.items() if r.is_classical)

    def singular_ids(self) -> list[int]:
        return sorted(i for i, r in self.crossings.items() if not r.is_classical)

    def sign(self, crossing_id: int) -> int | None:
        return self.crossings[crossing_id].sign

    def passage_positions(self) -> dict[tuple[int, str], tuple[int, int]]:
        """Map (crossing id, role) -> (1-based component index, event offset)."""
        out = {}
        for ci, comp in enumerate(self.components, start=1):
            for pos, ev in enumerate(comp.events):
                out[(ev.crossing, ev.role)] = (ci, pos)
        return out

    def next_crossing_id(self) -> int:
        return max(self.crossings, default=0) + 1

    def slot_map(self) -> dict[str, tuple[int, str]]:
        """Map slot name -> (1-based component index, "start" | "end")."""
        out: dict[str, tuple[int, str]] = {}
        for ci, comp in enumerate(self.components, start=1):
            if comp.kind == "long":
                if comp.start is not None:
                    out[comp.start] = (ci, "start")
                if comp.end is not None:
                    out[comp.end] = (ci, "end")
        return out


def empty_tangle() -> TangleDiagram:
    return TangleDiagram(0, 0, (), {})


# ---------------------------------------------------------------------------
# validation


def validate(d: TangleDiagram) -> list[str]:
    """Return every violated structural invariant; empty list means valid."""
    errs: list[str] = []
    seen: dict[tuple[int, str], int] = {}
    for ci, comp in enumerate(d.components, start=1):
        if comp.kind not in ("closed", "long"):
            errs.append(f"component {ci}: unknown kind {comp.kind!r}")
        if comp.kind == "long":
            if comp.start is None or comp.end is None:
                errs.append(f"component {ci}: endpoint arity")
            elif comp.start == comp.end:
                errs.append(f"component {ci}: endpoint arity (start and end share slot {comp.start})")
        else:
            if comp.start is not None or comp.end is not None:
                errs.append(f"component {ci}: closed component carries boundary slots")
        for ev in comp.events:
            rec = d.crossings.get(ev.crossing)
            if rec is None:
                errs.append(f"crossing {ev.crossing}: referenced but not declared")
                continue
            if rec.is_classical and ev.role not in CLASSICAL_ROLES:
                errs.append(f"crossing {ev.crossing}: role {ev.role} on a classical crossing")
            if not rec.is_classical and ev.role not in SINGULAR_ROLES:
                errs.append(f"crossing {ev.crossing}: role {ev.role} on a singular crossing")
            seen[(ev.crossing, ev.role)] = seen.get((ev.crossing, ev.role), 0) + 1

    for cid, rec in sorted(d.crossings.items()):
        roles = CLASSICAL_ROLES if rec.is_classical else SINGULAR_ROLES
        for role in roles:
            count = seen.pop((cid, role), 0)
            if count == 0:
                errs.append(f"crossing {cid}: missing {role} passage")
            elif count > 1:
                errs.append(f"crossing {cid}: duplicate role {role}")
    for (cid, role), _count in sorted(seen.items()):
        errs.append(f"crossing {cid}: unexpected role {role}")

    expected = [f"T{k}" for k in range(1, d.m + 1)] + [f"B{k}" for k in range(1, d.n + 1)]
    used: dict[str, int] = {}
    for comp in d.components:
        for slot in (comp.start, comp.end):
            if slot is not None:
                used[slot] = used.get(slot, 0) + 1
    for slot in expected:
        count = used.pop(slot, 0)
        if count == 0:
            errs.append(f"slot {slot}: unused")
        elif count > 1:
            errs.append(f"slot {slot}: used {count} times")
    for slot in sorted(used):
        errs.append(f"slot {slot}: not in boundary (m={d.m}, n={d.n})")
    return errs


def require_valid(d: TangleDiagram) -> TangleDiagram:
    errs = validate(d)
    if errs:
        raise ValidationFailure(errs)
    return d


# ---------------------------------------------------------------------------
# text format

_HEADER_RE = re.compile(r"^tangle\s+m=(\d+)\s+n=(\d+)$")
_COMPONENT_RE = re.compile(
    r"^component\s+(\d+)\s+(?:(closed)|long\s+from\s+([TB]\d+)\s+to\s+([TB]\d+))\s*:(.*)$"
)
_TOKEN_RE = re.compile(r"^(?:([OU])(\d+)([+-])|([XY])(\d+))$")


def parse(text: str, check: bool = True) -> TangleDiagram:
    """Parse the line-oriented diagram format; '#' starts a comment.

    Raises :class:`DiagramParseError` on syntax or sign problems and
    :class:`ValidationFailure` if the parsed diagram is not structurally
    valid (unless ``check`` is False).
    """
    header: tuple[int, int] | None = None
    components: list[Component] = []
    crossings: dict[int, CrossingRecord] = {}
    sign_source: dict[int, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise DiagramParseError("expected header 'tangle m=<int> n=<int>'", lineno, 1)
            header = (int(m.group(1)), int(m.group(2)))
            continue
        m = _COMPONENT_RE.match(line)
        if not m:
            raise DiagramParseError("expected a 'component ...' line", lineno, 1)
        idx = int(m.group(1))
        if idx != len(components) + 1:
            raise DiagramParseError(
                f"component index {idx} out of order (expected {len(components) + 1})", lineno, 11)
        events = []
        for tok in m.group(5).split():
            tm = _TOKEN_RE.match(tok)
            if not tm:
                col = raw.index(tok) + 1
                raise DiagramParseError(f"bad token {tok!r}", lineno, col)
            if tm.group(1):
                role, cid, sign = tm.group(1), int(tm.group(2)), (1 if tm.group(3) == "+" else -1)
                old = sign_source.get(cid)
                if old is not None and old != sign:
                    raise DiagramParseError(f"sign mismatch at crossing {cid}", lineno, raw.index(tok) + 1)
                sign_source[cid] = sign
                if cid in crossings and not crossings[cid].is_classical:
                    raise DiagramParseError(f"crossing {cid} is both classical and singular", lineno, 1)
                crossings[cid] = CrossingRecord.classical(sign)
                events.append(Passage(cid, role))
            else:
                role, cid = tm.group(4), int(tm.group(5))
                if cid in crossings and crossings[cid].is_classical:
                    raise DiagramParseError(f"crossing {cid} is both classical and singular", lineno, 1)
                crossings[cid] = CrossingRecord.singular()
                events.append(Passage(cid, role))
        if m.group(2) == "closed":
            components.append(Component("closed", tuple(events)))
        else:
            components.append(Component("long", tuple(events), m.group(3), m.group(4)))

    if header is None:
        raise DiagramParseError("empty input: missing 'tangle' header", 1, 1)
    d = TangleDiagram(header[0], header[1], tuple(components), crossings)
    return require_valid(d) if check else d


def serialize(d: TangleDiagram) -> str:
    """Canonical text form; parse(serialize(d)) == d for valid diagrams."""
    lines = [f"tangle m={d.m} n={d.n}"]
    for idx, comp in enumerate(d.components, start=1):
        tokens = " ".join(ev.token(d.crossings[ev.crossing].sign) for ev in comp.events)
        if comp.kind == "closed":
            head = f"component {idx} closed :"
        else:
            head = f"component {idx} long from {comp.start} to {comp.end} :"
        lines.append(f"{head} {tokens}".rstrip())
    return "\n".join(lines) + "\n"


def to_json(d: TangleDiagram) -> dict:
    return {
        "m": d.m,
        "n": d.n,
        "components": [
            {
                "index": idx,
                "kind": comp.kind,
                "start": comp.start,
                "end": comp.end,
                "events": [ev.token(d.crossings[ev.crossing].sign) for ev in comp.events],
            }
            for idx, comp in enumerate(d.components, start=1)
        ],
    }


def from_json(data: Mapping, check: bool = True) -> TangleDiagram:
    components: list[Component] = []
    crossings: dict[int, CrossingRecord] = {}
    for entry in data["components"]:
        events = []
        for tok in entry.get("events", []):
            tm = _TOKEN_RE.match(tok)
            if not tm:
                raise DiagramParseError(f"bad token {tok!r}")
            if tm.group(1):
                cid, sign = int(tm.group(2)), (1 if tm.group(3) == "+" else -1)
                prev = crossings.get(cid)
                if prev is not None and prev.sign not in (None, sign):
                    raise DiagramParseError(f"sign mismatch at crossing {cid}")
                crossings[cid] = CrossingRecord.classical(sign)
                events.append(Passage(cid, tm.group(1)))
            else:
                cid = int(tm.group(5))
                crossings[cid] = CrossingRecord.singular()
                events.append(Passage(cid, tm.group(4)))
        if entry["kind"] == "closed":
            components.append(Component("closed", tuple(events)))
        else:
            components.append(Component("long", tuple(events), entry["start"], entry["end"]))
    d = TangleDiagram(int(data["m"]), int(data["n"]), tuple(components), crossings)
    return require_valid(d) if check else d


# ---------------------------------------------------------------------------
# random diagrams (fuel for the property harnesses)


def random_diagram(seed: int, n_closed: int, n_long: int, n_crossings: int,
                   n_singular: int = 0) -> TangleDiagram:
    """Deterministic pseudo-random valid diagram.

    Every passage is assigned to a uniformly random component and a
    uniformly random position within it; any such assignment is a valid
    virtual tangle, so no realizability filtering is needed.  Long
    component endpoints land on top or bottom boundary uniformly.
    """
    if n_crossings < 0 or n_singular < 0:
        raise ValueError("crossing counts must be >= 0")
    total = n_closed + n_long
    if total == 0 and (n_crossings or n_singular):
        raise ValueError("crossings need at least one component")
    rng = random.Random(seed)

    crossings: dict[int, CrossingRecord] = {}
    passages: list[Passage] = []
    for cid in range(1, n_crossings + 1):
        crossings[cid] = CrossingRecord.classical(rng.choice((1, -1)))
        passages.append(Passage(cid, OVER))
        passages.append(Passage(cid, UNDER))
    for cid in range(n_crossings + 1, n_crossings + n_singular + 1):
        crossings[cid] = CrossingRecord.singular()
        passages.append(Passage(cid, SING_PRIMARY))
        passages.append(Passage(cid, SING_SECONDARY))

    buckets: list[list[Passage]] = [[] for _ in range(total)]
    for p in passages:
        buckets[rng.randrange(total)].append(p)
    for bucket in buckets:
        rng.shuffle(bucket)

    top_ends: list[tuple[int, str]] = []
    bottom_ends: list[tuple[int, str]] = []
    for ci in range(n_closed, total):
        for which in ("start", "end"):
            (top_ends if rng.random() < 0.5 else bottom_ends).append((ci, which))
    rng.shuffle(top_ends)
    rng.shuffle(bottom_ends)
    slot_of: dict[tuple[int, str], str] = {}
    for k, key in enumerate(top_ends, start=1):
        slot_of[key] = f"T{k}"
    for k, key in enumerate(bottom_ends, start=1):
        slot_of[key] = f"B{k}"

    components = []
    for ci in range(total):
        events = tuple(buckets[ci])
        if ci < n_closed:
            components.append(Component("closed", events))
        else:
            components.append(Component("long", events, slot_of[(ci, "start")], slot_of[(ci, "end")]))
    return TangleDiagram(len(top_ends), len(bottom_ends), tuple(components), crossings)
