"""Three-layer mapping graph: modes (R) → cognitive functions (C) → epistemic purposes (E).

Two built-in profiles ship with the package:

* ``default`` — 14 cognitive functions over the built-in modes, and 8
  epistemic purposes over those functions.
* ``academic-writing`` — an alternative C layer of 7 academic-writing
  functions, each serving one epistemic purpose; its R-layer targets
  include writing moves that are not built-in modes (grading,
  clarification, questioning, ...), which are auto-registered as generated
  atoms so the graph always resolves.

Edges run downward only (C→R and E→C) and are unweighted sets.  Mapping
documents are JSON::

    {"profile": "...",
     "c_nodes": [{"id": "...", "display_name": "...", "modes": [...]}],
     "e_nodes": [{"id": "...", "display_name": "...", "cognitive": [...]}]}

Entries may carry an optional ``description``; R-layer nodes are derived
from the referenced modes, never stored.

The module also builds compound "academic function" modes from a core mode
plus supplementary modes (:func:`compose_academic`).
"""
from __future__ import annotations

import difflib
import json
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean
from typing import Iterable, Sequence

from .errors import (
    BadComposition,
    BadEdge,
    ParseError,
    UnknownMode,
    UnknownNode,
    UnknownProfile,
)
from .registry import (
    Mode,
    Origin,
    Registry,
    _ID_PATTERN,
    _title,
    canon,
    default_registry,
)

R = "R"
C = "C"
E = "E"
LAYERS = (R, C, E)

DEFAULT_PROFILE = "default"
ACADEMIC_PROFILE = "academic-writing"
BUILTIN_PROFILES = (DEFAULT_PROFILE, ACADEMIC_PROFILE)


@dataclass(frozen=True)
class LayerNode:
    """One node of the mapping graph, tagged with its layer."""

    layer: str
    id: str
    display_name: str
    description: str = ""


@dataclass(frozen=True)
class AcademicFunction:
    """A compound writing move: one core mode plus supplementary modes."""

    name: str
    core: str
    supplements: tuple[str, ...]


# --- built-in profile data --------------------------------------------------
# (id, display name, description, mode targets)
_DEFAULT_C_NODES = (
    ("observe", "Observe",
     "Take in phenomena and record what is there.",
     ("description", "narration", "exemplification", "evidence")),
    ("identify", "Identify",
     "Pick out and name entities or patterns.",
     ("definition", "contrast", "classification", "evidence")),
    ("compare", "Compare",
     "Set attributes or outcomes against each other.",
     ("comparison", "analogy", "evaluation")),
    ("classify", "Classify",
     "Sort items into structured groups.",
     ("classification", "division", "definition")),
    ("abstract", "Abstract",
     "Pull general properties out of particulars.",
     ("exemplification", "exposition", "analogy")),
    ("hypothesize", "Hypothesize",
     "Propose candidate explanations.",
     ("problem", "cause", "argument")),
    ("model", "Model",
     "Represent a system in symbolic or schematic form.",
     ("process-analysis", "analogy", "exposition")),
    ("infer", "Infer",
     "Draw out implications from what is known.",
     ("cause", "effect", "argument")),
    ("test-validate", "Test/Validate",
     "Check hypotheses or models against support.",
     ("evidence", "illustration", "evaluation")),
    ("explain", "Explain",
     "Give an account of how or why something holds.",
     ("cause-effect", "exposition", "process-analysis")),
    ("evaluate", "Evaluate",
     "Judge soundness or relevance of claims.",
     ("evaluation", "comparison", "argument", "persuasion")),
    ("predict", "Predict",
     "Project forthcoming outcomes or states.",
     ("analogy", "cause", "process-analysis")),
    ("integrate-synthesize", "Integrate/Synthesize",
     "Bring separate lines of reasoning into one whole.",
     ("exposition", "analogy", "synthesis")),
    ("reflect", "Reflect/Meta-cognitive Assessment",
     "Examine one's own reasoning and its limits.",
     ("evaluation", "definition", "problem-solution", "exposition", "persuasion")),
)

# (id, display name, description, cognitive targets)
_DEFAULT_E_NODES = (
    ("knowledge-formation", "Knowledge Formation",
     "Building up concepts and understanding.",
     ("observe", "identify", "classify", "abstract")),
    ("scientific-discovery", "Scientific Discovery",
     "Generating and testing new hypotheses.",
     ("hypothesize", "model", "test-validate", "infer")),
    ("communication", "Communication",
     "Spreading knowledge through discourse.",
     ("compare", "explain", "integrate-synthesize", "evaluate")),
    ("teaching-learning", "Teaching/Learning",
     "Passing knowledge between teacher and learner.",
     ("observe", "identify", "model", "explain", "evaluate", "reflect")),
    ("problem-solving", "Problem Solving",
     "Putting knowledge to work on concrete problems.",
     ("classify", "hypothesize", "infer", "test-validate", "evaluate")),
    ("innovation-design", "Innovation/Design",
     "Creating new systems, artifacts, or methods.",
     ("model", "abstract", "integrate-synthesize", "predict")),
    ("evaluation-decision-making", "Evaluation/Decision-Making",
     "Weighing evidence to reach decisions.",
     ("evaluate", "reflect", "infer")),
    ("policy-action-implementation", "Policy/Action Implementation",
     "Turning knowledge into action in real settings.",
     ("predict", "explain", "integrate-synthesize", "evaluate")),
)

_ACADEMIC_C_NODES = (
    ("information-presentation", "Information Presentation",
     "Lay out the subject's background, features, and structure.",
     ("narration", "description", "definition", "classification",
      "decomposition", "grading", "summarization", "delineation")),
    ("relational-reasoning", "Relational Reasoning",
     "Work out relationships that carry an explanatory framework.",
     ("comparison", "contrast", "analogy", "relational-analysis",
      "causal-analysis", "induction", "synthesis")),
    ("process-construction", "Process Construction",
     "Spell out sequences, developments, and operational steps.",
     ("process-analysis", "procedural-description")),
    ("argumentation-support", "Argumentation Support",
     "Build and back the author's claims and reasoning chains.",
     ("exemplification", "evidence", "argumentation", "persuasion",
      "elaboration", "claim-making")),
    ("understanding-construction", "Understanding Construction",
     "Deepen conceptual clarity and tie new material to known ground.",
     ("clarification", "explanation")),
    ("interaction-construction", "Interaction Construction",
     "Steer the reader's thinking and invite engagement.",
     ("questioning", "answering")),
    ("evaluation-and-reflection", "Evaluation and Reflection",
     "Weigh the value and validity of ideas, methods, and results.",
     ("evaluation", "verification", "validation")),
)

_ACADEMIC_E_NODES = (
    ("establishing-shared-conceptual-ground", "Establishing Shared Conceptual Ground",
     "Give writer and reader a common footing of concepts.",
     ("information-presentation",)),
    ("constructing-relational-understanding", "Constructing Relational Understanding",
     "Stand up an account of how things relate.",
     ("relational-reasoning",)),
    ("revealing-operational-logic", "Revealing Operational Logic",
     "Expose how a procedure or method actually runs.",
     ("process-construction",)),
    ("validating-propositions", "Validating Propositions",
     "Establish that stated claims deserve acceptance.",
     ("argumentation-support",)),
    ("achieving-conceptual-coherence", "Achieving Conceptual Coherence",
     "Bring the piece's concepts into a consistent whole.",
     ("understanding-construction",)),
    ("co-constructing-understanding", "Co-constructing Understanding",
     "Draw the reader into building the understanding jointly.",
     ("interaction-construction",)),
    ("determining-reliability-and-significance", "Determining Reliability and Significance",
     "Settle how trustworthy and important the results are.",
     ("evaluation-and-reflection",)),
)


@dataclass(frozen=True)
class BranchingStats:
    """Out-degrees of the upper layers, ready for layered-entropy input."""

    c_degrees: tuple[tuple[str, int], ...]
    e_degrees: tuple[tuple[str, int], ...]

    def _layer(self, layer: str) -> tuple[tuple[str, int], ...]:
        if layer == C:
            return self.c_degrees
        if layer == E:
            return self.e_degrees
        raise UnknownNode(f"no out-degrees for layer {layer!r}")

    def max_degree(self, layer: str) -> int:
        degrees = self._layer(layer)
        return max((d for _, d in degrees), default=0)

    def mean_degree(self, layer: str) -> float:
        degrees = self._layer(layer)
        return fmean(d for _, d in degrees) if degrees else 0.0

    def branchings(self, layer: str) -> list[tuple[str, int]]:
        """Stage list for :func:`rhetor.entropy.entropy_layered`."""
        return list(self._layer(layer))


class PyramidGraph:
    """Immutable three-layer graph with downward edges C→R and E→C."""

    def __init__(
        self,
        profile: str,
        nodes: Iterable[LayerNode],
        edges_cr: Iterable[tuple[str, str]],
        edges_ec: Iterable[tuple[str, str]],
        registry: Registry | None = None,
    ):
        self.profile = profile
        self._nodes: dict[str, dict[str, LayerNode]] = {R: {}, C: {}, E: {}}
        for node in nodes:
            if node.layer not in LAYERS:
                raise BadEdge(f"node {node.id!r} has unknown layer {node.layer!r}")
            layer = self._nodes[node.layer]
            if node.id in layer:
                raise ParseError(f"node {node.id!r} duplicated in layer {node.layer}")
            layer[node.id] = node
        self.edges_cr = frozenset(edges_cr)
        self.edges_ec = frozenset(edges_ec)
        self.registry = registry if registry is not None else default_registry()
        self._check_edges()

    def _check_edges(self) -> None:
        for c_id, r_id in self.edges_cr:
            if c_id not in self._nodes[C]:
                raise BadEdge(f"edge references unknown C-node {c_id!r}")
            if r_id not in self._nodes[R]:
                raise BadEdge(f"edge references unknown R-node {r_id!r}")
        for e_id, c_id in self.edges_ec:
            if e_id not in self._nodes[E]:
                raise BadEdge(f"edge references unknown E-node {e_id!r}")
            if c_id not in self._nodes[C]:
                raise BadEdge(f"edge references unknown C-node {c_id!r}")

    # -- access --------------------------------------------------------------

    def layer_nodes(self, layer: str) -> tuple[LayerNode, ...]:
        if layer not in LAYERS:
            raise UnknownNode(f"unknown layer {layer!r}")
        return tuple(sorted(self._nodes[layer].values(), key=lambda n: n.id))

    def node(self, layer: str, name: str) -> LayerNode:
        if layer not in LAYERS:
            raise UnknownNode(f"unknown layer {layer!r}")
        nid = canon(name)
        found = self._nodes[layer].get(nid)
        if found is None:
            pool = sorted(self._nodes[layer])
            hints = difflib.get_close_matches(nid, pool, n=2, cutoff=0.6)
            raise UnknownNode(f"no {layer}-layer node named {name!r}"
                              + (f"; did you mean: {', '.join(hints)}?" if hints else ""))
        return found

    def children(self, layer: str, name: str) -> tuple[LayerNode, ...]:
        """Directly connected nodes one layer down, sorted by id."""
        node = self.node(layer, name)
        if node.layer == C:
            ids = sorted(r for c, r in self.edges_cr if c == node.id)
            return tuple(self._nodes[R][r] for r in ids)
        if node.layer == E:
            ids = sorted(c for e, c in self.edges_ec if e == node.id)
            return tuple(self._nodes[C][c] for c in ids)
        raise UnknownNode("R-layer nodes have no lower layer")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PyramidGraph):
            return NotImplemented
        return (self.profile == other.profile and self._nodes == other._nodes
                and self.edges_cr == other.edges_cr and self.edges_ec == other.edges_ec)

    def __repr__(self) -> str:
        return (f"PyramidGraph({self.profile!r}, R={len(self._nodes[R])}, "
                f"C={len(self._nodes[C])}, E={len(self._nodes[E])})")

    def to_document(self) -> dict:
        c_nodes = []
        for node in self.layer_nodes(C):
            c_nodes.append({
                "id": node.id,
                "display_name": node.display_name,
                "description": node.description,
                "modes": sorted(r for c, r in self.edges_cr if c == node.id),
            })
        e_nodes = []
        for node in self.layer_nodes(E):
            e_nodes.append({
                "id": node.id,
                "display_name": node.display_name,
                "description": node.description,
                "cognitive": sorted(c for e, c in self.edges_ec if e == node.id),
            })
        return {"profile": self.profile, "c_nodes": c_nodes, "e_nodes": e_nodes}


# --- graph queries -----------------------------------------------------------

def realizers(graph: PyramidGraph, layer: str, name: str) -> tuple[LayerNode, ...]:
    """The lower-layer nodes that realize a C- or E-layer node."""
    return graph.children(layer, name)


def compose_re(graph: PyramidGraph, e_name: str) -> tuple[str, ...]:
    """All R-ids reachable from an E-node through its C-children, sorted."""
    reached: set[str] = set()
    for c_node in graph.children(E, e_name):
        reached.update(r.id for r in graph.children(C, c_node.id))
    return tuple(sorted(reached))


def branching_stats(graph: PyramidGraph) -> BranchingStats:
    """Out-degree of every C- and E-node, sorted by node id."""
    c_counts = {node.id: 0 for node in graph.layer_nodes(C)}
    for c_id, _ in graph.edges_cr:
        c_counts[c_id] += 1
    e_counts = {node.id: 0 for node in graph.layer_nodes(E)}
    for e_id, _ in graph.edges_ec:
        e_counts[e_id] += 1
    return BranchingStats(
        c_degrees=tuple(sorted(c_counts.items())),
        e_degrees=tuple(sorted(e_counts.items())),
    )


# --- construction -----------------------------------------------------------

def _resolve_target(registry: Registry, name: str, profile: str,
                    extras: dict[str, Mode]) -> Mode:
    """Resolve an R-layer target, minting a generated atom when unknown."""
    try:
        return registry.resolve(name)
    except UnknownMode:
        cid = canon(name)
        if not _ID_PATTERN.match(cid):
            raise ParseError(f"invalid mode name {name!r} in {profile} mapping")
        mode = extras.get(cid)
        if mode is None:
            mode = Mode(cid, _title(cid), (), Origin.generated("academic-profile", ()),
                        f"Writing move declared by the {profile} mapping profile.")
            extras[cid] = mode
        return mode


def _build_graph(
    profile: str,
    c_rows: Sequence[tuple[str, str, str, Sequence[str]]],
    e_rows: Sequence[tuple[str, str, str, Sequence[str]]],
    registry: Registry,
) -> PyramidGraph:
    extras: dict[str, Mode] = {}
    nodes: list[LayerNode] = []
    edges_cr: set[tuple[str, str]] = set()
    edges_ec: set[tuple[str, str]] = set()
    r_seen: dict[str, Mode] = {}
    c_ids: set[str] = set()

    for c_id, display, description, targets in c_rows:
        if not targets:
            raise BadEdge(f"C-node {c_id!r} lists no modes")
        nodes.append(LayerNode(C, c_id, display, description))
        c_ids.add(c_id)
        for name in targets:
            mode = _resolve_target(registry, name, profile, extras)
            r_seen.setdefault(mode.id, mode)
            edges_cr.add((c_id, mode.id))

    for e_id, display, description, targets in e_rows:
        if not targets:
            raise BadEdge(f"E-node {e_id!r} lists no cognitive functions")
        nodes.append(LayerNode(E, e_id, display, description))
        for name in targets:
            cid = canon(name)
            if cid not in c_ids:
                raise BadEdge(f"E-node {e_id!r} references unknown C-node {name!r}")
            edges_ec.add((e_id, cid))

    for mode in r_seen.values():
        nodes.append(LayerNode(R, mode.id, mode.display_name, mode.description))
    full_registry = registry.with_modes(extras.values()) if extras else registry
    return PyramidGraph(profile, nodes, edges_cr, edges_ec, registry=full_registry)


def _rows_from_document(doc: dict, key: str, target_key: str):
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise ParseError(f"mapping {key!r} must be a list")
    rows = []
    seen: set[str] = set()
    for position, entry in enumerate(raw):
        where = f"{key}[{position}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: node entries must be objects")
        node_id = canon(str(entry.get("id", "")))
        if not node_id or not _ID_PATTERN.match(node_id):
            raise ParseError(f"{where}: missing or invalid id {entry.get('id')!r}")
        if node_id in seen:
            raise ParseError(f"{where}: node {node_id!r} duplicated")
        seen.add(node_id)
        targets = entry.get(target_key, [])
        if not isinstance(targets, list) or not all(isinstance(t, str) for t in targets):
            raise ParseError(f"{where}: {target_key!r} must be a list of names")
        display = entry.get("display_name") or _title(node_id)
        description = entry.get("description", "")
        if not isinstance(description, str):
            raise ParseError(f"{where}: description must be a string")
        rows.append((node_id, display, description, tuple(targets)))
    return rows


def load_pyramid(
    profile: str = DEFAULT_PROFILE,
    source: "str | Path | dict | None" = None,
    registry: Registry | None = None,
) -> PyramidGraph:
    """Graph for a built-in profile, or from a mapping document.

    When a document references modes the registry does not know, they are
    auto-registered as generated atoms; the extended registry rides along
    as ``graph.registry``.
    """
    registry = registry if registry is not None else default_registry()
    if source is not None:
        if isinstance(source, Path):
            source = source.read_text(encoding="utf-8")
        if isinstance(source, str):
            try:
                source = json.loads(source)
            except json.JSONDecodeError as exc:
                raise ParseError(f"malformed mapping document: {exc.msg}",
                                 line=exc.lineno, column=exc.colno) from exc
        if not isinstance(source, dict):
            raise ParseError("mapping document must be a JSON object")
        name = source.get("profile", "custom")
        if not isinstance(name, str) or not name:
            raise ParseError("mapping 'profile' must be a non-empty string")
        c_rows = _rows_from_document(source, "c_nodes", "modes")
        e_rows = _rows_from_document(source, "e_nodes", "cognitive")
        return _build_graph(name, c_rows, e_rows, registry)
    if profile == DEFAULT_PROFILE:
        return _build_graph(DEFAULT_PROFILE, _DEFAULT_C_NODES, _DEFAULT_E_NODES, registry)
    if profile == ACADEMIC_PROFILE:
        return _build_graph(ACADEMIC_PROFILE, _ACADEMIC_C_NODES, _ACADEMIC_E_NODES,
                            registry)
    raise UnknownProfile(
        f"unknown profile {profile!r}; built-in profiles: {', '.join(BUILTIN_PROFILES)}")


def serialize_pyramid(graph: PyramidGraph) -> str:
    """Deterministic JSON text; loads back to an equal graph."""
    return json.dumps(graph.to_document(), indent=2, sort_keys=True) + "\n"


# --- academic-function composition ------------------------------------------

def compose_academic(registry: Registry, f: AcademicFunction) -> Mode:
    """Compound mode for an academic function: core first, then supplements.

    The result's id is ``af-`` plus the canonical function name; it is a
    compound of ``1 + len(supplements)`` constituents (a plain pair when
    only one supplement is given).
    """
    if not f.supplements:
        raise BadComposition(f"academic function {f.name!r} needs supplementary modes")
    core = registry.resolve(f.core)
    supplements = [registry.resolve(s) for s in f.supplements]
    if any(s.id == core.id for s in supplements):
        raise BadComposition(
            f"core mode {core.id!r} cannot also be a supplement of {f.name!r}")
    constituents = (core.id, *(s.id for s in supplements))
    name_id = canon(f.name)
    if not name_id or not _ID_PATTERN.match(name_id):
        raise BadComposition(f"cannot form an id from function name {f.name!r}")
    return Mode(
        id=f"af-{name_id}",
        display_name=_title(name_id),
        constituents=constituents,
        origin=Origin.generated("academic-composition", constituents),
        description=f"Academic function anchored on {core.id} with "
                    f"{len(supplements)} supporting modes.",
    )


def academic_function_examples() -> tuple[AcademicFunction, AcademicFunction]:
    """The two worked compositions: the definition complex and the claim complex."""
    return (
        AcademicFunction("definition", "definition",
                         ("comparison", "exemplification", "classification")),
        AcademicFunction("claim", "cause-effect",
                         ("argument", "evaluation", "comparison", "evidence")),
    )
