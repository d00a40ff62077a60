"""Mode-annotated documents: parsing, coverage, layer tracing, growth rates.

Annotation files (extension ``.rma``) are line-based UTF-8 text::

    # comment
    doc lesson-nature-of-memory
    declared_K 20
    stage Part I
    seg | narration, definition | Opening story and framing of the topic.
    seg | exemplification | ...

``doc`` names the document, ``declared_K`` optionally states the width of
the available repertoire, ``stage`` opens a stage that following segments
belong to, and each ``seg`` line carries a comma-separated mode list plus
optional free text.  Mode names resolve through the registry, so aliases
and loose spellings work.  Segment indices are assigned 1, 2, 3, ... in
order; a segment may override with ``seg <n> | ...`` as long as indices
stay strictly increasing.

On top of parsed documents this module computes repertoire coverage,
per-stage layer traces against a pyramid graph, introduction rates across
a staged corpus, and the per-stage capacity rows of a growth schedule.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .capacity import CoverageReport, capacity, coverage, growth
from .errors import (
    BadCount,
    BadIndex,
    BadSchedule,
    EmptySegment,
    NotEnoughStages,
    ParseError,
    UnknownMode,
    UnmappedStage,
)
from .pyramid import C, E, PyramidGraph
from .registry import Registry, default_registry


@dataclass(frozen=True)
class Segment:
    """One annotated discourse unit: a stage label, mode tags, free text."""

    index: int
    stage: str
    modes: frozenset[str]
    text: str = ""


@dataclass(frozen=True)
class AnnotatedDocument:
    """An ordered sequence of annotated segments."""

    id: str
    segments: tuple[Segment, ...]
    declared_K: int | None = None

    def __post_init__(self):
        previous = 0
        for seg in self.segments:
            if not seg.modes:
                raise EmptySegment(f"segment {seg.index} of {self.id!r} has no modes")
            if seg.index <= previous:
                raise BadIndex(
                    f"segment index {seg.index} of {self.id!r} does not increase")
            previous = seg.index
        if self.declared_K is not None and self.declared_K < len(self.mode_union()):
            raise BadCount(
                f"declared_K={self.declared_K} is below the {len(self.mode_union())} "
                f"distinct modes used in {self.id!r}")

    def mode_union(self) -> frozenset[str]:
        """All distinct mode ids used anywhere in the document."""
        out: set[str] = set()
        for seg in self.segments:
            out.update(seg.modes)
        return frozenset(out)

    def stages(self) -> tuple[str, ...]:
        """Stage labels in first-appearance order."""
        seen: list[str] = []
        for seg in self.segments:
            if seg.stage not in seen:
                seen.append(seg.stage)
        return tuple(seen)

    def stage_modes(self, stage: str) -> frozenset[str]:
        """Union of mode ids over the segments of one stage."""
        out: set[str] = set()
        for seg in self.segments:
            if seg.stage == stage:
                out.update(seg.modes)
        return frozenset(out)


# --- .rma parsing -----------------------------------------------------------

def parse_document(source: "str | Path", registry: Registry | None = None) -> AnnotatedDocument:
    """Parse annotation text (or a file path) into a validated document.

    Diagnostics carry 1-based line numbers; mode names resolve through the
    registry so alias spellings are accepted.
    """
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    registry = registry if registry is not None else default_registry()

    doc_id = "untitled"
    saw_doc = False
    declared_k: int | None = None
    stage: str | None = None
    segments: list[Segment] = []
    next_index = 1

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "doc":
            if saw_doc:
                raise ParseError("duplicate doc header", line=line_no)
            if not rest:
                raise ParseError("doc header needs an id", line=line_no)
            doc_id = rest
            saw_doc = True
        elif keyword == "declared_K":
            if declared_k is not None:
                raise ParseError("duplicate declared_K directive", line=line_no)
            try:
                declared_k = int(rest)
            except ValueError:
                raise ParseError(f"declared_K needs an integer, got {rest!r}",
                                 line=line_no) from None
        elif keyword == "stage":
            if not rest:
                raise ParseError("stage line needs a label", line=line_no)
            stage = rest
        elif keyword == "seg" or line.startswith("seg|") or line.startswith("seg "):
            if stage is None:
                raise ParseError("segment before any stage line", line=line_no)
            segments.append(
                _parse_segment(line, line_no, stage, next_index, segments, registry))
            next_index = segments[-1].index + 1
        else:
            raise ParseError(f"unrecognized line {line!r}", line=line_no)

    return AnnotatedDocument(doc_id, tuple(segments), declared_k)


def _parse_segment(line: str, line_no: int, stage: str, auto_index: int,
                   existing: Sequence[Segment], registry: Registry) -> Segment:
    parts = [p.strip() for p in line.split("|", 2)]
    head = parts[0]
    if len(parts) < 2:
        raise ParseError("segment line needs '|'-separated mode names", line=line_no)
    head_tokens = head.split()
    if head_tokens[0] != "seg":
        raise ParseError(f"unrecognized segment head {head!r}", line=line_no)
    index = auto_index
    if len(head_tokens) == 2:
        try:
            index = int(head_tokens[1])
        except ValueError:
            raise ParseError(f"segment index must be an integer, got "
                             f"{head_tokens[1]!r}", line=line_no) from None
    elif len(head_tokens) > 2:
        raise ParseError(f"unrecognized segment head {head!r}", line=line_no)
    last = existing[-1].index if existing else 0
    if index <= last:
        raise BadIndex(f"segment index {index} repeats or decreases (last was {last})",
                       line=line_no)

    names = [n.strip() for n in parts[1].split(",")]
    names = [n for n in names if n]
    if not names:
        raise EmptySegment("segment lists no modes", line=line_no)
    modes: set[str] = set()
    for name in names:
        try:
            modes.add(registry.resolve(name).id)
        except UnknownMode as exc:
            raise UnknownMode(f"no mode named {name!r}",
                              suggestions=exc.suggestions, line=line_no) from None
    text = parts[2] if len(parts) == 3 else ""
    return Segment(index=index, stage=stage, modes=frozenset(modes), text=text)


def serialize_document(doc: AnnotatedDocument) -> str:
    """Annotation text that parses back to an equal document."""
    lines = [f"doc {doc.id}"]
    if doc.declared_K is not None:
        lines.append(f"declared_K {doc.declared_K}")
    current_stage = None
    auto_index = 1
    for seg in doc.segments:
        if seg.stage != current_stage:
            lines.append(f"stage {seg.stage}")
            current_stage = seg.stage
        head = "seg" if seg.index == auto_index else f"seg {seg.index}"
        auto_index = seg.index + 1
        entry = f"{head} | {', '.join(sorted(seg.modes))}"
        if seg.text:
            entry += f" | {seg.text}"
        lines.append(entry)
    return "\n".join(lines) + "\n"


# --- coverage ---------------------------------------------------------------

def analyze_coverage(doc: AnnotatedDocument, k: int | None = None) -> CoverageReport:
    """Coverage of the available repertoire: modes used over width ``k``.

    Falls back to the document's ``declared_K`` when ``k`` is omitted.
    """
    width = k if k is not None else doc.declared_K
    if width is None:
        raise BadCount(f"no width given and {doc.id!r} declares none")
    return coverage(len(doc.mode_union()), width)


# --- layer tracing ----------------------------------------------------------

@dataclass(frozen=True)
class StageMapping:
    """Declared layer assignment for one stage: its C-functions and E-purpose."""

    stage: str
    c_ids: tuple[str, ...]
    e_id: str


@dataclass(frozen=True)
class StageTrace:
    """Observed vs expected modes for one stage under its mapping."""

    stage: str
    c_ids: tuple[str, ...]
    e_id: str
    observed: frozenset[str]
    expected: frozenset[str]
    overlap: frozenset[str]
    mismatch: frozenset[str]


@dataclass(frozen=True)
class LayerTrace:
    """Per-stage traces plus the distinct E-purposes the document serves."""

    doc_id: str
    stages: tuple[StageTrace, ...]
    e_ids: tuple[str, ...]


def load_stage_map(source: "str | Path | dict | list") -> list[StageMapping]:
    """Stage map from JSON: {"stages": [{"stage", "c": [...], "e"}, ...]}."""
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed stage map: {exc.msg}",
                             line=exc.lineno, column=exc.colno) from exc
    if isinstance(source, dict):
        source = source.get("stages", [])
    if not isinstance(source, list):
        raise ParseError("stage map must be a list or carry a 'stages' list")
    out = []
    for position, entry in enumerate(source):
        where = f"stages[{position}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: entries must be objects")
        stage = entry.get("stage")
        c_ids = entry.get("c")
        e_id = entry.get("e")
        if not isinstance(stage, str) or not stage:
            raise ParseError(f"{where}: 'stage' must be a non-empty string")
        if not isinstance(c_ids, list) or not c_ids or not all(
                isinstance(c, str) for c in c_ids):
            raise ParseError(f"{where}: 'c' must be a non-empty list of names")
        if not isinstance(e_id, str) or not e_id:
            raise ParseError(f"{where}: 'e' must be a non-empty string")
        out.append(StageMapping(stage, tuple(c_ids), e_id))
    return out


def trace_layers(
    doc: AnnotatedDocument,
    graph: PyramidGraph,
    stage_map: Iterable[StageMapping],
) -> LayerTrace:
    """Compare each stage's observed modes with the realizers of its C-functions.

    ``expected`` is the union of the graph's R-targets over the stage's
    declared C-functions; ``mismatch`` is whatever was observed outside it.
    """
    by_stage = {m.stage: m for m in stage_map}
    traces: list[StageTrace] = []
    e_ids: list[str] = []
    for stage in doc.stages():
        mapping = by_stage.get(stage)
        if mapping is None:
            raise UnmappedStage(f"stage {stage!r} has no entry in the stage map")
        e_node = graph.node(E, mapping.e_id)
        expected: set[str] = set()
        c_resolved = []
        for c_name in mapping.c_ids:
            c_node = graph.node(C, c_name)
            c_resolved.append(c_node.id)
            expected.update(r.id for r in graph.children(C, c_node.id))
        observed = doc.stage_modes(stage)
        traces.append(StageTrace(
            stage=stage,
            c_ids=tuple(c_resolved),
            e_id=e_node.id,
            observed=observed,
            expected=frozenset(expected),
            overlap=observed & expected,
            mismatch=observed - expected,
        ))
        if e_node.id not in e_ids:
            e_ids.append(e_node.id)
    return LayerTrace(doc_id=doc.id, stages=tuple(traces), e_ids=tuple(e_ids))


# --- introduction-rate estimation -------------------------------------------

@dataclass(frozen=True)
class IntervalRate:
    """New-mode introduction rate over one interval of the corpus timeline."""

    start: float
    end: float
    new_modes: frozenset[str]
    L_n: float


@dataclass(frozen=True)
class RriEstimate:
    """Cumulative width per stage index and the per-interval rates."""

    cumulative: tuple[tuple[float, int], ...]
    intervals: tuple[IntervalRate, ...]


def estimate_rri(docs: Sequence[tuple[float, AnnotatedDocument]]) -> RriEstimate:
    """Introduction rates across a staged corpus.

    A mode counts as new at its first appearance anywhere in the timeline;
    each interval's rate is new modes over the stage-index gap.
    """
    if len(docs) < 2:
        raise NotEnoughStages(f"need at least two staged documents, got {len(docs)}")
    indices = [i for i, _ in docs]
    for a, b in zip(indices, indices[1:]):
        if b <= a:
            raise BadIndex(f"stage indices must increase strictly ({a} then {b})")

    seen: set[str] = set()
    cumulative: list[tuple[float, int]] = []
    intervals: list[IntervalRate] = []
    previous_index: float | None = None
    for index, doc in docs:
        new = doc.mode_union() - seen
        if previous_index is not None:
            span = index - previous_index
            intervals.append(IntervalRate(
                start=previous_index, end=index,
                new_modes=frozenset(new), L_n=len(new) / span))
        seen.update(new)
        cumulative.append((index, len(seen)))
        previous_index = index
    return RriEstimate(cumulative=tuple(cumulative), intervals=tuple(intervals))


# --- stage schedules and the growth cone ------------------------------------

@dataclass(frozen=True)
class StageStep:
    """One schedule row: cumulative width reached over a stage's duration."""

    name: str
    k_cumulative: int
    duration: float
    l_n: float


@dataclass(frozen=True)
class StageSchedule:
    """Ordered educational stages with cumulative widths and rates."""

    stages: tuple[StageStep, ...]


#: (name, cumulative width, duration in years) for the usual school path.
_DEFAULT_SCHEDULE_ROWS = (
    ("KG", 2, 3.0),
    ("Elementary", 5, 6.0),
    ("Middle", 8, 3.0),
    ("High", 12, 3.0),
    ("Undergraduate", 16, 4.0),
    ("Graduate", 20, 5.0),
)


def _build_schedule(rows: Sequence[tuple[str, int, float]]) -> StageSchedule:
    steps = []
    previous_k = 0
    for name, k, duration in rows:
        if not name:
            raise BadSchedule("stage name must be non-empty")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise BadSchedule(f"stage {name!r} needs a positive integer width, got {k!r}")
        if k < previous_k:
            raise BadSchedule(f"cumulative width decreases at stage {name!r} "
                              f"({previous_k} then {k})")
        if not duration > 0:
            raise BadSchedule(f"stage {name!r} needs a positive duration, got {duration!r}")
        steps.append(StageStep(name=name, k_cumulative=k, duration=float(duration),
                               l_n=(k - previous_k) / duration))
        previous_k = k
    return StageSchedule(tuple(steps))


def default_schedule() -> StageSchedule:
    """The cumulative acquisition path KG through Graduate."""
    return _build_schedule(_DEFAULT_SCHEDULE_ROWS)


def load_schedule(source: "str | Path | dict | None" = None) -> StageSchedule:
    """Schedule from JSON: {"stages": [{"name", "K", "duration"}, ...]}.

    Per-stage rates are always recomputed from the width deltas.
    """
    if source is None:
        return default_schedule()
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed schedule: {exc.msg}",
                             line=exc.lineno, column=exc.colno) from exc
    if not isinstance(source, dict) or not isinstance(source.get("stages"), list):
        raise ParseError("schedule must be a JSON object with a 'stages' list")
    rows = []
    for position, entry in enumerate(source["stages"]):
        where = f"stages[{position}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: entries must be objects")
        name = entry.get("name")
        k = entry.get("K")
        duration = entry.get("duration", 1.0)
        if not isinstance(name, str) or not name:
            raise ParseError(f"{where}: 'name' must be a non-empty string")
        if not isinstance(k, int) or isinstance(k, bool):
            raise ParseError(f"{where}: 'K' must be an integer")
        if not isinstance(duration, (int, float)) or isinstance(duration, bool):
            raise ParseError(f"{where}: 'duration' must be a number")
        rows.append((name, k, float(duration)))
    return _build_schedule(rows)


def serialize_schedule(schedule: StageSchedule) -> str:
    """Deterministic JSON text; loads back to an equal schedule."""
    doc = {"stages": [{"name": s.name, "K": s.k_cumulative, "duration": s.duration}
                      for s in schedule.stages]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class ConeRow:
    """Capacity and load metrics for one schedule stage."""

    stage: str
    K: int
    K_NRC: int
    K_RC: float
    R_scale: float
    R_scale_norm: float

    def as_dict(self) -> dict:
        return {"stage": self.stage, "K": self.K, "K_NRC": self.K_NRC,
                "K_RC": self.K_RC, "R_scale": self.R_scale,
                "R_scale_norm": self.R_scale_norm}


def cone(schedule: StageSchedule, c_0: float = 1.0) -> list[ConeRow]:
    """Per-stage capacity growth along a schedule: the widening of reach.

    Each row pairs the stage's cumulative-width capacity metrics with its
    introduction rate normalized against learner capacity ``c_0``.
    """
    rows = []
    for step in schedule.stages:
        report = capacity(step.k_cumulative)
        params = growth(step.l_n, c_0)
        rows.append(ConeRow(
            stage=step.name,
            K=report.K,
            K_NRC=report.K_NRC,
            K_RC=report.K_RC,
            R_scale=params.R_scale,
            R_scale_norm=params.R_scale_norm,
        ))
    return rows
