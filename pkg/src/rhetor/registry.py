"""Mode registry: the single source of truth for rhetorical mode identities.

The default registry ships 28 built-in modes: 14 canonical modes (7 atomic,
7 diatomic) plus the 14 atoms obtained by splitting each diatomic into its
two parts.  All other modules resolve mode names against a registry, so
canonicalization and aliasing live here.

Registry documents are JSON::

    {"version": "...",
     "modes": [{"id": "cause-effect", "display_name": "Cause-Effect",
                "arity": "diatomic", "constituents": ["cause", "effect"],
                "origin": "base", "description": "..."}, ...],
     "aliases": {"narrative": "narration"}}

``load_registry`` treats a document as an *extension* of the default
registry; entries that restate a built-in mode verbatim are accepted, so a
serialized registry always loads back.
"""
from __future__ import annotations

import difflib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import BadConstituent, DuplicateMode, ParseError, UnknownMode

_ID_PATTERN = re.compile(r"^[a-z][a-z0-9-]*$")
_SEPARATORS = re.compile(r"[–—/\s]+")  # en/em dash, slash, whitespace
_DISALLOWED = re.compile(r"[^a-z0-9-]")
_HYPHEN_RUNS = re.compile(r"-{2,}")

ATOMIC = "atomic"
DIATOMIC = "diatomic"
COMPOUND = "compound"


def canon(name: str) -> str:
    """Canonical id form of a mode name.

    Lowercases, turns dash variants / slashes / whitespace into single
    hyphens and drops other punctuation.  Idempotent: ``canon(canon(s)) ==
    canon(s)``.
    """
    s = _SEPARATORS.sub("-", name.strip().lower())
    s = _DISALLOWED.sub("", s)
    s = _HYPHEN_RUNS.sub("-", s)
    return s.strip("-")


@dataclass(frozen=True)
class Origin:
    """Provenance of a mode: built-in table, decomposition, or one operator application."""

    kind: str  # "base" | "decomposed" | "generated"
    operator: str | None = None
    inputs: tuple[str, ...] = ()

    @classmethod
    def base(cls) -> "Origin":
        return cls("base")

    @classmethod
    def decomposed(cls) -> "Origin":
        return cls("decomposed")

    @classmethod
    def generated(cls, operator: str, inputs: Iterable[str] = ()) -> "Origin":
        return cls("generated", operator, tuple(inputs))


@dataclass(frozen=True)
class Mode:
    """A named rhetorical unit, atomic or composed of other modes."""

    id: str
    display_name: str
    constituents: tuple[str, ...] = ()
    origin: Origin = field(default_factory=Origin.base)
    description: str = ""

    @property
    def arity(self) -> str:
        n = len(self.constituents)
        if n == 0:
            return ATOMIC
        if n == 2:
            return DIATOMIC
        return COMPOUND

    @property
    def k(self) -> int:
        """Number of atomic-level slots: 1 for atoms, len(constituents) otherwise."""
        return len(self.constituents) or 1

    @property
    def is_atomic(self) -> bool:
        return not self.constituents

    @property
    def is_diatomic(self) -> bool:
        return len(self.constituents) == 2


def _title(mode_id: str) -> str:
    return " ".join(part.capitalize() for part in mode_id.split("-"))


# --- built-in tables --------------------------------------------------------
# (id, display name, constituents, description); the 14 canonical modes.
_CANONICAL = (
    ("analysis-synthesis", "Analysis-Synthesis", ("analysis", "synthesis"),
     "Taking a system apart and reassembling the parts into one account."),
    ("analogy", "Analogy", (),
     "Explains one thing through its likeness to another."),
    ("argument-persuasion", "Argument-Persuasion", ("argument", "persuasion"),
     "Reasoned support for a claim joined with appeal to act or believe."),
    ("cause-effect", "Cause-Effect", ("cause", "effect"),
     "Connects prior conditions with the outcomes they produce."),
    ("classification-division", "Classification-Division", ("classification", "division"),
     "Groups items by shared traits or cuts a whole into parts."),
    ("comparison-contrast", "Comparison-Contrast", ("comparison", "contrast"),
     "Works through similarities and differences together."),
    ("definition", "Definition", (),
     "Fixes what a term means and where its boundaries lie."),
    ("description", "Description", (),
     "Renders observable features so a reader can picture them."),
    ("evaluation", "Evaluation", (),
     "Judges worth or quality against stated criteria."),
    ("exemplification-illustration", "Exemplification-Illustration", ("exemplification", "evidence"),
     "Backs a general point with instances and supporting material."),
    ("exposition", "Exposition", (),
     "Lays information out plainly and systematically."),
    ("narration", "Narration", (),
     "Relates events in temporal or logical order."),
    ("problem-solution", "Problem-Solution", ("problem", "solution"),
     "Names an issue and argues for a way to resolve it."),
    ("process-analysis", "Process Analysis", (),
     "Walks through the ordered steps that accomplish something."),
)

# The 14 atoms produced by splitting each diatomic canonical mode.
_DECOMPOSED = (
    ("classification", "Classification", "Groups entities by shared traits."),
    ("division", "Division", "Partitions a whole into its parts."),
    ("cause", "Cause", "Identifies the conditions behind an outcome."),
    ("effect", "Effect", "Describes what follows from given causes."),
    ("exemplification", "Exemplification", "Grounds a claim in concrete instances."),
    ("evidence", "Illustration (Evidence)", "Documents or proves a claim with factual support."),
    ("argument", "Argument", "Advances a claim on stated reasons."),
    ("persuasion", "Persuasion", "Moves attitudes or actions by appeal."),
    ("problem", "Problem", "Poses an issue that needs resolving."),
    ("solution", "Solution", "Justifies a means of resolving an issue."),
    ("comparison", "Comparison", "Highlights similarities between things."),
    ("contrast", "Contrast", "Highlights differences between things."),
    ("analysis", "Analysis", "Breaks a concept down to expose its structure."),
    ("synthesis", "Synthesis", "Integrates separate strands into one understanding."),
)

# Alternative names seen in practice, mapped onto canonical ids.
DEFAULT_ALIASES = {
    "narrative": "narration",
    "illustration": "evidence",
    "argumentation": "argument",
    "persuation": "persuasion",
    "process": "process-analysis",
    "cause-and-effect": "cause-effect",
}

DEFAULT_VERSION = "builtin-1"


class Registry:
    """Immutable set of modes with alias-aware, canonicalizing lookup."""

    def __init__(
        self,
        modes: Iterable[Mode],
        version: str = DEFAULT_VERSION,
        aliases: dict[str, str] | None = None,
        require_constituents: bool = True,
    ):
        self._modes: dict[str, Mode] = {}
        for mode in modes:
            if mode.id in self._modes:
                raise DuplicateMode(f"mode id {mode.id!r} defined more than once")
            self._modes[mode.id] = mode
        self.version = version
        self._aliases = dict(aliases or {})
        self._validate(require_constituents)
        self._by_pair = {
            frozenset(m.constituents): m for m in self._modes.values() if m.is_diatomic
        }

    def _validate(self, require_constituents: bool) -> None:
        for mode in self._modes.values():
            if not _ID_PATTERN.match(mode.id):
                raise ParseError(f"mode id {mode.id!r} is not a valid identifier")
            n = len(mode.constituents)
            if n == 1:
                raise BadConstituent(f"mode {mode.id!r} has a single constituent; "
                                     "use none (atomic) or two or more")
            if mode.is_diatomic and mode.constituents[0] == mode.constituents[1]:
                raise BadConstituent(f"mode {mode.id!r} repeats one constituent twice")
            if not require_constituents:
                continue
            for cid in mode.constituents:
                part = self._modes.get(cid)
                if part is None:
                    raise BadConstituent(
                        f"mode {mode.id!r} references unknown constituent {cid!r}")
                if mode.is_diatomic and not part.is_atomic:
                    raise BadConstituent(
                        f"diatomic mode {mode.id!r} has non-atomic constituent {cid!r}")
                if not part.is_atomic and not part.is_diatomic:
                    raise BadConstituent(
                        f"mode {mode.id!r} nests the compound mode {cid!r}")
        for alias, target in self._aliases.items():
            if target not in self._modes:
                raise BadConstituent(f"alias {alias!r} points at unknown mode {target!r}")

    # -- lookup --------------------------------------------------------------

    def resolve(self, name: "str | Mode") -> Mode:
        """Return the mode whose canonical id matches ``name``.

        Lookup is case-, whitespace- and dash-variant-insensitive and follows
        aliases.  Raises :class:`UnknownMode` with up to two nearby ids.
        """
        if isinstance(name, Mode):
            return name
        cid = canon(name)
        cid = self._aliases.get(cid, cid)
        mode = self._modes.get(cid)
        if mode is None:
            suggestions = tuple(
                difflib.get_close_matches(cid, sorted(self._modes), n=2, cutoff=0.6))
            raise UnknownMode(f"no mode named {name!r}", suggestions=suggestions)
        return mode

    def get(self, mode_id: str) -> Mode | None:
        return self._modes.get(mode_id)

    def __contains__(self, mode_id: str) -> bool:
        return mode_id in self._modes

    def __iter__(self) -> Iterator[Mode]:
        return iter(self._modes.values())

    def __len__(self) -> int:
        return len(self._modes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Registry):
            return NotImplemented
        return (self._modes == other._modes and self.version == other.version
                and self._aliases == other._aliases)

    def __repr__(self) -> str:
        return f"Registry({len(self)} modes, version={self.version!r})"

    def atoms(self) -> frozenset[Mode]:
        """All atomic modes; 21 in the default registry."""
        return frozenset(m for m in self._modes.values() if m.is_atomic)

    def diatomics(self) -> frozenset[Mode]:
        return frozenset(m for m in self._modes.values() if m.is_diatomic)

    def diatomic_for_pair(self, a: str, b: str) -> Mode | None:
        """The registered diatomic whose constituents are {a, b}, if any."""
        return self._by_pair.get(frozenset((a, b)))

    @property
    def aliases(self) -> dict[str, str]:
        return dict(self._aliases)

    # -- derivation ----------------------------------------------------------

    def with_modes(self, modes: Iterable[Mode]) -> "Registry":
        """New registry extended with ``modes``; existing ids must not change."""
        merged = dict(self._modes)
        for mode in modes:
            existing = merged.get(mode.id)
            if existing is not None and existing != mode:
                raise DuplicateMode(f"mode id {mode.id!r} already registered differently")
            merged[mode.id] = mode
        return Registry(merged.values(), version=self.version, aliases=self._aliases)

    # -- serialization -------------------------------------------------------

    def to_document(self) -> dict:
        modes = []
        for mode in sorted(self._modes.values(), key=lambda m: m.id):
            entry: dict = {
                "id": mode.id,
                "display_name": mode.display_name,
                "arity": mode.arity,
                "constituents": list(mode.constituents),
                "description": mode.description,
            }
            if mode.origin.kind == "generated":
                entry["origin"] = {"operator": mode.origin.operator,
                                   "inputs": list(mode.origin.inputs)}
            else:
                entry["origin"] = mode.origin.kind
            modes.append(entry)
        return {"version": self.version, "modes": modes, "aliases": dict(sorted(self._aliases.items()))}


def _build_default() -> Registry:
    modes = []
    for mode_id, display, constituents, description in _CANONICAL:
        modes.append(Mode(mode_id, display, constituents, Origin.base(), description))
    for mode_id, display, description in _DECOMPOSED:
        modes.append(Mode(mode_id, display, (), Origin.decomposed(), description))
    return Registry(modes, version=DEFAULT_VERSION, aliases=DEFAULT_ALIASES)


_DEFAULT: Registry | None = None


def default_registry() -> Registry:
    """The shared built-in registry of 28 modes (21 atomic, 7 diatomic)."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = _build_default()
    return _DEFAULT


def base_registry() -> Registry:
    """Only the 14 canonical modes, without the decomposed atoms.

    Constituent links of the diatomics are left unresolved here; this view
    exists for working with the canonical table alone (7 atoms, 7 diatomics).
    """
    modes = [Mode(mode_id, display, constituents, Origin.base(), description)
             for mode_id, display, constituents, description in _CANONICAL]
    return Registry(modes, version="builtin-canonical-1", aliases={},
                    require_constituents=False)


def base_atoms() -> frozenset[Mode]:
    """The 7 atomic modes of the canonical table."""
    return frozenset(m for m in default_registry()
                     if m.is_atomic and m.origin.kind == "base")


# --- document parsing -------------------------------------------------------

def _parse_origin(raw: object, where: str) -> Origin:
    if raw is None:
        return Origin.generated("user")
    if isinstance(raw, str):
        if raw == "base":
            return Origin.base()
        if raw == "decomposed":
            return Origin.decomposed()
        if raw == "generated":
            return Origin.generated("user")
        raise ParseError(f"{where}: unknown origin {raw!r}")
    if isinstance(raw, dict):
        operator = raw.get("operator")
        if not isinstance(operator, str) or not operator:
            raise ParseError(f"{where}: generated origin needs an operator name")
        inputs = raw.get("inputs", [])
        if not isinstance(inputs, list) or not all(isinstance(i, str) for i in inputs):
            raise ParseError(f"{where}: origin inputs must be a list of ids")
        return Origin.generated(operator, inputs)
    raise ParseError(f"{where}: origin must be a string or an object")


def _mode_from_entry(entry: object, position: int) -> Mode:
    where = f"modes[{position}]"
    if not isinstance(entry, dict):
        raise ParseError(f"{where}: mode entries must be objects")
    mode_id = entry.get("id")
    if not isinstance(mode_id, str) or not _ID_PATTERN.match(mode_id):
        raise ParseError(f"{where}: missing or invalid id {mode_id!r}")
    constituents = entry.get("constituents", [])
    if not isinstance(constituents, list) or not all(isinstance(c, str) for c in constituents):
        raise ParseError(f"{where}: constituents must be a list of ids")
    constituents = tuple(canon(c) for c in constituents)
    arity = entry.get("arity")
    if arity is not None:
        expected = ATOMIC if not constituents else DIATOMIC if len(constituents) == 2 else COMPOUND
        if arity != expected:
            raise ParseError(f"{where}: arity {arity!r} does not match "
                             f"{len(constituents)} constituents")
    display = entry.get("display_name") or _title(mode_id)
    description = entry.get("description", "")
    if not isinstance(description, str):
        raise ParseError(f"{where}: description must be a string")
    origin = _parse_origin(entry.get("origin"), where)
    return Mode(mode_id, display, constituents, origin, description)


def _document_from_source(source: "str | Path | dict", kind: str) -> dict:
    """Normalize path / JSON text / parsed dict into a dict document."""
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed {kind} document: {exc.msg}",
                             line=exc.lineno, column=exc.colno) from exc
    if not isinstance(source, dict):
        raise ParseError(f"{kind} document must be a JSON object")
    return source


def load_registry(source: "str | Path | dict | None" = None) -> Registry:
    """Registry from a document, layered on top of the built-in modes.

    ``source`` may be ``None`` (default registry), a :class:`~pathlib.Path`
    to a JSON file, JSON text, or an already-parsed dict.  Document entries
    extend the default registry; restating a built-in mode unchanged is a
    no-op, redefining it is a :class:`DuplicateMode` error.
    """
    if source is None:
        return default_registry()
    doc = _document_from_source(source, "registry")
    modes_raw = doc.get("modes", [])
    if not isinstance(modes_raw, list):
        raise ParseError("registry 'modes' must be a list")
    seen: dict[str, Mode] = {}
    for position, entry in enumerate(modes_raw):
        mode = _mode_from_entry(entry, position)
        if mode.id in seen:
            raise DuplicateMode(f"mode id {mode.id!r} defined more than once")
        seen[mode.id] = mode
    base = default_registry()
    merged = {m.id: m for m in base}
    for mode in seen.values():
        existing = merged.get(mode.id)
        if existing is not None and existing != mode:
            raise DuplicateMode(
                f"mode id {mode.id!r} conflicts with an existing definition")
        merged[mode.id] = mode
    aliases = dict(DEFAULT_ALIASES)
    extra = doc.get("aliases", {})
    if not isinstance(extra, dict):
        raise ParseError("registry 'aliases' must be an object")
    aliases.update({canon(k): canon(v) for k, v in extra.items()})
    version = doc.get("version", DEFAULT_VERSION)
    if not isinstance(version, str):
        raise ParseError("registry 'version' must be a string")
    return Registry(merged.values(), version=version, aliases=aliases)


def serialize_registry(registry: Registry) -> str:
    """Deterministic JSON text for a registry; loads back to an equal registry."""
    return json.dumps(registry.to_document(), indent=2, sort_keys=True) + "\n"
