"""Duality operators over modes and bounded-depth closure generation.

Six operators act on registry modes:

* ``split`` — diatomic mode into its two atoms.
* ``unite`` — two distinct atoms into a diatomic mode.
* ``forward_backward`` — directional reversal (cause ↔ effect, ...).
* ``expand`` / ``reduce`` — scale change along registered pairs
  (summary ↔ exposition).
* ``orthogonal`` — complementary-axis partner (narration ↔ description).

The unary operators are rule-driven: a :class:`DualityRuleSet` lists the
pairs they act on, and anything unpaired raises :class:`NoDual` instead of
silently returning the input.  Partners named by the rules but absent from
the registry (generalization, combination, summary) come back as generated
modes.  ``closure`` applies a chosen operator set breadth-first up to a
depth bound and records one derivation per first-reached result.

Rule documents are JSON::

    {"reversal": [["cause", "effect"], ...],
     "scale": [["exposition", "summary"], ...],
     "orthogonal": [["narration", "description"]]}

Scale pairs are ordered ``[expanded, reduced]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    BadRuleSet,
    NoDual,
    NotAtomic,
    NotDiatomic,
    ParseError,
    SelfUnite,
    UnknownMode,
)
from .registry import Mode, Origin, Registry, _title, canon, default_registry

SPLIT = "split"
UNITE = "unite"
FORWARD_BACKWARD = "forward_backward"
EXPAND = "expand"
REDUCE = "reduce"
ORTHOGONAL = "orthogonal"

#: All operator kinds, in the order closure applies them within a depth.
OPERATOR_KINDS = (SPLIT, UNITE, FORWARD_BACKWARD, EXPAND, REDUCE, ORTHOGONAL)

#: Accepted short spellings for operator kinds (CLI and rule documents).
OPERATOR_ALIASES = {"fb": FORWARD_BACKWARD, "ortho": ORTHOGONAL}


def operator_kind(name: str) -> str:
    """Normalize an operator name, accepting the short CLI spellings."""
    kind = OPERATOR_ALIASES.get(name, name)
    if kind not in OPERATOR_KINDS:
        raise ValueError(f"unknown operator kind {name!r}")
    return kind


class DualityRuleSet:
    """Registered mode pairs for the unary duality operators.

    ``reversal`` and ``orthogonal`` pairs are unordered; ``scale`` pairs are
    ordered ``(expanded, reduced)``.  A mode may appear in at most one pair
    per relation so each operator stays a function.
    """

    def __init__(
        self,
        reversal: Iterable[Sequence[str]] = (),
        scale: Iterable[Sequence[str]] = (),
        orthogonal: Iterable[Sequence[str]] = (),
    ):
        self.reversal_pairs = self._canon_pairs(reversal, "reversal", ordered=False)
        self.scale_pairs = self._canon_pairs(scale, "scale", ordered=True)
        self.orthogonal_pairs = self._canon_pairs(orthogonal, "orthogonal", ordered=False)
        self._reversal = self._symmetric_map(self.reversal_pairs, "reversal")
        self._orthogonal = self._symmetric_map(self.orthogonal_pairs, "orthogonal")
        self._reduced_of = {}
        self._expanded_of = {}
        seen: set[str] = set()
        for expanded, reduced in self.scale_pairs:
            for member in (expanded, reduced):
                if member in seen:
                    raise BadRuleSet(f"mode {member!r} appears in two scale pairs")
                seen.add(member)
            self._reduced_of[expanded] = reduced
            self._expanded_of[reduced] = expanded

    @staticmethod
    def _canon_pairs(pairs, relation: str, ordered: bool) -> tuple[tuple[str, str], ...]:
        out = []
        for pair in pairs:
            members = [canon(p) for p in pair]
            if len(members) != 2 or not all(members):
                raise BadRuleSet(f"{relation} pair {tuple(pair)!r} must name two modes")
            if members[0] == members[1]:
                raise BadRuleSet(f"{relation} pair repeats {members[0]!r}")
            if not ordered:
                members.sort()
            out.append(tuple(members))
        return tuple(sorted(out))

    @staticmethod
    def _symmetric_map(pairs, relation: str) -> dict[str, str]:
        partner: dict[str, str] = {}
        for a, b in pairs:
            for x, y in ((a, b), (b, a)):
                if x in partner:
                    raise BadRuleSet(f"mode {x!r} appears in two {relation} pairs")
                partner[x] = y
        return partner

    # -- lookups (None when unpaired) ---------------------------------------

    def reversal_partner(self, mode_id: str) -> str | None:
        return self._reversal.get(mode_id)

    def orthogonal_partner(self, mode_id: str) -> str | None:
        return self._orthogonal.get(mode_id)

    def reduced_form(self, mode_id: str) -> str | None:
        """Partner reached by ``reduce``; defined on expanded members only."""
        return self._reduced_of.get(mode_id)

    def expanded_form(self, mode_id: str) -> str | None:
        """Partner reached by ``expand``; defined on reduced members only."""
        return self._expanded_of.get(mode_id)

    def members(self) -> frozenset[str]:
        """Every mode id mentioned by any pair of any relation."""
        flat = [m for pairs in (self.reversal_pairs, self.scale_pairs,
                                self.orthogonal_pairs) for pair in pairs for m in pair]
        return frozenset(flat)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DualityRuleSet):
            return NotImplemented
        return (self.reversal_pairs == other.reversal_pairs
                and self.scale_pairs == other.scale_pairs
                and self.orthogonal_pairs == other.orthogonal_pairs)

    def __repr__(self) -> str:
        return (f"DualityRuleSet(reversal={len(self.reversal_pairs)}, "
                f"scale={len(self.scale_pairs)}, "
                f"orthogonal={len(self.orthogonal_pairs)})")

    def to_document(self) -> dict:
        return {
            "reversal": [list(p) for p in self.reversal_pairs],
            "scale": [list(p) for p in self.scale_pairs],
            "orthogonal": [list(p) for p in self.orthogonal_pairs],
        }


def default_rules() -> DualityRuleSet:
    """The duality pairs the built-in modes are known to participate in."""
    return DualityRuleSet(
        reversal=[("cause", "effect"), ("problem", "solution"),
                  ("exemplification", "generalization"), ("division", "combination")],
        scale=[("exposition", "summary")],
        orthogonal=[("narration", "description")],
    )


def load_rules(source: "str | Path | dict | None" = None) -> DualityRuleSet:
    """Rule set from a JSON document (path, text, or parsed dict)."""
    if source is None:
        return default_rules()
    if isinstance(source, Path):
        source = source.read_text(encoding="utf-8")
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed rules document: {exc.msg}",
                             line=exc.lineno, column=exc.colno) from exc
    if not isinstance(source, dict):
        raise BadRuleSet("rules document must be a JSON object")
    for key in source:
        if key not in ("reversal", "scale", "orthogonal"):
            raise BadRuleSet(f"unknown rules section {key!r}")
    for key in ("reversal", "scale", "orthogonal"):
        section = source.get(key, [])
        if not isinstance(section, list) or not all(
                isinstance(p, (list, tuple)) and all(isinstance(m, str) for m in p)
                for p in section):
            raise BadRuleSet(f"rules section {key!r} must be a list of name pairs")
    return DualityRuleSet(
        reversal=source.get("reversal", ()),
        scale=source.get("scale", ()),
        orthogonal=source.get("orthogonal", ()),
    )


def serialize_rules(rules: DualityRuleSet) -> str:
    """Deterministic JSON text; loads back to an equal rule set."""
    return json.dumps(rules.to_document(), indent=2, sort_keys=True) + "\n"


# --- operator application ---------------------------------------------------

def _as_mode(registry: Registry, m: "str | Mode") -> Mode:
    return m if isinstance(m, Mode) else registry.resolve(m)


def _rule_mode(registry: Registry, rules: DualityRuleSet, m: "str | Mode") -> Mode:
    """Resolve against the registry, falling back to rule-known generated atoms."""
    if isinstance(m, Mode):
        return m
    try:
        return registry.resolve(m)
    except UnknownMode:
        cid = canon(m)
        if cid in rules.members():
            return Mode(cid, _title(cid), (), Origin.generated("rules", ()),
                        f"Duality partner named by the active rule set ({cid}).")
        raise


def _generated_atom(partner_id: str, operator: str, source: Mode) -> Mode:
    descriptions = {
        FORWARD_BACKWARD: f"Directional reversal of {source.id}.",
        EXPAND: f"Expanded-scale form of {source.id}.",
        REDUCE: f"Reduced-scale form of {source.id}.",
        ORTHOGONAL: f"Complementary-axis partner of {source.id}.",
    }
    return Mode(partner_id, _title(partner_id), (),
                Origin.generated(operator, (source.id,)), descriptions[operator])


def split(registry: Registry, m: "str | Mode") -> tuple[Mode, Mode]:
    """The two constituent atoms of a diatomic mode, in stored order."""
    mode = _as_mode(registry, m)
    if not mode.is_diatomic:
        raise NotDiatomic(f"cannot split {mode.id!r}: arity is {mode.arity}")
    parts = []
    for cid in mode.constituents:
        part = registry.get(cid)
        if part is None:
            part = Mode(cid, _title(cid), (), Origin.generated(SPLIT, (mode.id,)),
                        f"Constituent of {mode.id}.")
        parts.append(part)
    return (parts[0], parts[1])


def unite(registry: Registry, a: "str | Mode", b: "str | Mode") -> Mode:
    """Diatomic mode joining two distinct atoms.

    If the pair matches a registered diatomic, that mode is returned;
    otherwise a generated mode whose id joins the two atom ids in
    lexicographic order.  Commutative either way.
    """
    ma, mb = _as_mode(registry, a), _as_mode(registry, b)
    if ma.id == mb.id:
        raise SelfUnite(f"cannot unite {ma.id!r} with itself")
    for mode in (ma, mb):
        if not mode.is_atomic:
            raise NotAtomic(f"cannot unite {mode.id!r}: arity is {mode.arity}")
    existing = registry.diatomic_for_pair(ma.id, mb.id)
    if existing is not None:
        return existing
    first, second = sorted((ma, mb), key=lambda m: m.id)
    new_id = f"{first.id}-{second.id}"
    return Mode(new_id, f"{_title(first.id)}-{_title(second.id)}",
                (first.id, second.id), Origin.generated(UNITE, (first.id, second.id)),
                f"Generated pairing of {first.id} and {second.id}.")


def _unary(registry: Registry, rules: DualityRuleSet, m: "str | Mode",
           operator: str, partner_of, relation: str) -> Mode:
    mode = _rule_mode(registry, rules, m)
    if not mode.is_atomic:
        raise NotAtomic(f"cannot apply {operator} to {mode.id!r}: arity is {mode.arity}")
    partner_id = partner_of(mode.id)
    if partner_id is None:
        raise NoDual(f"{mode.id!r} has no {relation} partner under the active rules")
    existing = registry.get(partner_id)
    if existing is not None:
        return existing
    return _generated_atom(partner_id, operator, mode)


def forward_backward(registry: Registry, rules: DualityRuleSet, m: "str | Mode") -> Mode:
    """Reversal partner of an atom (cause → effect); an involution."""
    return _unary(registry, rules, m, FORWARD_BACKWARD,
                  rules.reversal_partner, "reversal")


def expand(registry: Registry, rules: DualityRuleSet, m: "str | Mode") -> Mode:
    """Expanded-scale partner of a reduced form (summary → exposition)."""
    return _unary(registry, rules, m, EXPAND, rules.expanded_form, "scale")


def reduce(registry: Registry, rules: DualityRuleSet, m: "str | Mode") -> Mode:
    """Reduced-scale partner of an expanded form (exposition → summary)."""
    return _unary(registry, rules, m, REDUCE, rules.reduced_form, "scale")


def orthogonal(registry: Registry, rules: DualityRuleSet, m: "str | Mode") -> Mode:
    """Complementary-axis partner (narration ↔ description); an involution."""
    return _unary(registry, rules, m, ORTHOGONAL,
                  rules.orthogonal_partner, "orthogonal")


# --- closure ----------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    """One recorded operator application inside a closure run."""

    operator: str
    inputs: tuple[str, ...]
    results: tuple[Mode, ...]
    depth: int
    rediscovery: bool  # every result already existed in the starting registry

    @property
    def result_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.results)


_SKIPPABLE = (NotDiatomic, NotAtomic, SelfUnite, NoDual)


def closure(
    registry: Registry,
    rules: DualityRuleSet | None = None,
    ops: Iterable[str] = OPERATOR_KINDS,
    max_depth: int = 1,
    seed: "Iterable[str | Mode] | None" = None,
) -> tuple[Derivation, ...]:
    """Apply ``ops`` breadth-first up to ``max_depth``, recording derivations.

    Every applicable operator/input combination over the current universe is
    tried each depth; a derivation is recorded the first time a result id is
    reached, so the output lists each generated (or rediscovered) mode once,
    at its shallowest depth.  Output is ordered by depth, then result ids.

    ``seed`` restricts the starting universe to the given modes (default:
    the whole registry).  Stops early once a depth adds nothing new.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    kinds = sorted({operator_kind(op) for op in ops}, key=OPERATOR_KINDS.index)
    if not kinds:
        raise ValueError("ops must name at least one operator")
    if rules is None:
        rules = default_rules()
    if seed is None:
        universe = {m.id: m for m in registry}
    else:
        universe = {}
        for entry in seed:
            mode = _as_mode(registry, entry)
            universe[mode.id] = mode

    derived: set[str] = set()
    out: list[Derivation] = []
    for depth in range(1, max_depth + 1):
        snapshot = sorted(universe.values(), key=lambda m: m.id)
        atoms = [m for m in snapshot if m.is_atomic]
        batch: list[Derivation] = []

        def attempt(operator: str, inputs: tuple[Mode, ...], apply) -> None:
            try:
                results = apply()
            except _SKIPPABLE:
                return
            if not isinstance(results, tuple):
                results = (results,)
            novel = tuple(r for r in results if r.id not in derived)
            if not novel:
                return
            derived.update(r.id for r in novel)
            batch.append(Derivation(
                operator=operator,
                inputs=tuple(m.id for m in inputs),
                results=novel,
                depth=depth,
                rediscovery=all(r.id in registry for r in novel),
            ))

        for kind in kinds:
            if kind == SPLIT:
                for mode in snapshot:
                    if mode.is_diatomic:
                        attempt(SPLIT, (mode,), lambda m=mode: split(registry, m))
            elif kind == UNITE:
                for a, b in combinations(atoms, 2):
                    attempt(UNITE, (a, b), lambda x=a, y=b: unite(registry, x, y))
            else:
                op_fn = {FORWARD_BACKWARD: forward_backward, EXPAND: expand,
                         REDUCE: reduce, ORTHOGONAL: orthogonal}[kind]
                for mode in atoms:
                    attempt(kind, (mode,),
                            lambda m=mode, f=op_fn: f(registry, rules, m))

        if not batch:
            break
        batch.sort(key=lambda d: d.result_ids)
        out.extend(batch)
        for derivation in batch:
            for result in derivation.results:
                universe.setdefault(result.id, result)
    return tuple(out)
