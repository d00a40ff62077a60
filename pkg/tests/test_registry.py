import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from rhetor import (
    BadConstituent,
    DuplicateMode,
    Mode,
    Origin,
    ParseError,
    UnknownMode,
    base_atoms,
    base_registry,
    canon,
    default_registry,
    load_registry,
    serialize_registry,
)


class TestCanon:
    @pytest.mark.parametrize("raw, expected", [
        ("Comparison--Contrast", "comparison-contrast"),
        ("Comparison–Contrast", "comparison-contrast"),
        ("Comparison—Contrast", "comparison-contrast"),
        ("  CAUSE-EFFECT  ", "cause-effect"),
        ("Process Analysis", "process-analysis"),
        ("Test / Validate", "test-validate"),
        ("Reflect / Meta-cognitive Assessment", "reflect-meta-cognitive-assessment"),
        ("définition!?", "dfinition"),
        ("a  -  b", "a-b"),
        ("-edge-hyphens-", "edge-hyphens"),
    ])
    def test_examples(self, raw, expected):
        assert canon(raw) == expected

    @given(st.text(max_size=40))
    def test_idempotent(self, s):
        assert canon(canon(s)) == canon(s)

    @given(st.text(max_size=40))
    def test_output_shape(self, s):
        c = canon(s)
        assert c == "" or (c[0] != "-" and c[-1] != "-" and "--" not in c)


class TestDefaultRegistry:
    def test_partition(self, registry):
        assert len(registry) == 28
        atoms = registry.atoms()
        diatomics = registry.diatomics()
        compounds = [m for m in registry if len(m.constituents) > 2]
        assert len(atoms) == 21
        assert len(diatomics) == 7
        assert not compounds

    def test_diatomic_constituents_are_distinct_registered_atoms(self, registry):
        for mode in registry.diatomics():
            a, b = mode.constituents
            assert a != b
            assert registry.get(a).is_atomic
            assert registry.get(b).is_atomic

    def test_origin_split(self, registry):
        base = [m for m in registry if m.origin.kind == "base"]
        decomposed = [m for m in registry if m.origin.kind == "decomposed"]
        assert len(base) == 14
        assert len(decomposed) == 14
        assert all(m.is_atomic for m in decomposed)

    def test_atoms_read_is_stable(self, registry):
        assert registry.atoms() == registry.atoms()

    def test_base_registry_is_the_canonical_table(self):
        base = base_registry()
        assert len(base) == 14
        assert len(base.atoms()) == 7
        assert len(base.diatomics()) == 7

    def test_base_atoms(self):
        assert {m.id for m in base_atoms()} == {
            "analogy", "definition", "description", "evaluation",
            "exposition", "narration", "process-analysis",
        }


class TestResolve:
    @pytest.mark.parametrize("name, mode_id", [
        ("Comparison--Contrast", "comparison-contrast"),
        ("comparison–contrast", "comparison-contrast"),
        ("cause", "cause"),
        ("  Narration ", "narration"),
        ("narrative", "narration"),
        ("Illustration", "evidence"),
        ("argumentation", "argument"),
        ("persuation", "persuasion"),
        ("process", "process-analysis"),
        ("Cause and Effect", "cause-effect"),
        ("PROBLEM--SOLUTION", "problem-solution"),
    ])
    def test_lookup(self, registry, name, mode_id):
        assert registry.resolve(name).id == mode_id

    def test_resolve_mode_passthrough(self, registry):
        mode = registry.resolve("cause")
        assert registry.resolve(mode) is mode

    def test_typo_gets_suggestion(self, registry):
        with pytest.raises(UnknownMode) as excinfo:
            registry.resolve("narationn")
        assert "narration" in excinfo.value.suggestions
        assert len(excinfo.value.suggestions) <= 2

    def test_unknown_without_neighbors(self, registry):
        with pytest.raises(UnknownMode):
            registry.resolve("zzzzqqq")

    def test_arity_labels(self, registry):
        assert registry.resolve("cause").arity == "atomic"
        assert registry.resolve("cause-effect").arity == "diatomic"
        compound = Mode("x", "X", ("a", "b", "c"))
        assert compound.arity == "compound"


class TestSerializeLoad:
    def test_default_round_trip(self, registry):
        text = serialize_registry(registry)
        assert load_registry(text) == registry

    def test_serialization_is_deterministic(self, registry):
        assert serialize_registry(registry) == serialize_registry(registry)

    def test_load_none_is_default(self, registry):
        assert load_registry() == registry

    def test_extension_adds_mode(self, registry, extension_registry_path):
        extended = load_registry(extension_registry_path)
        assert len(extended) == 29
        summary = extended.resolve("summary")
        assert summary.is_atomic
        assert summary.origin.kind == "generated"
        assert summary.origin.operator == "reduce"
        assert extended.version == "extension-demo-1"

    def test_extension_round_trip(self, extension_registry_path):
        extended = load_registry(extension_registry_path)
        assert load_registry(serialize_registry(extended)) == extended

    def test_restating_a_builtin_is_a_noop(self, registry):
        doc = json.loads(serialize_registry(registry))
        doc["modes"] = [m for m in doc["modes"] if m["id"] == "cause"]
        assert load_registry(doc) == registry

    def test_path_source(self, tmp_path, registry):
        file = tmp_path / "reg.json"
        file.write_text(serialize_registry(registry))
        assert load_registry(Path(file)) == registry

    def test_duplicate_in_document(self):
        doc = {"modes": [
            {"id": "cause", "constituents": [], "description": "x"},
            {"id": "cause", "constituents": [], "description": "y"},
        ]}
        with pytest.raises(DuplicateMode):
            load_registry(doc)

    def test_conflicting_redefinition_of_builtin(self):
        doc = {"modes": [{"id": "cause", "display_name": "Cause",
                          "constituents": [], "description": "changed"}]}
        with pytest.raises(DuplicateMode):
            load_registry(doc)

    def test_unknown_constituent(self):
        doc = {"modes": [{"id": "x-y", "constituents": ["x", "y"],
                          "description": ""}]}
        with pytest.raises(BadConstituent):
            load_registry(doc)

    def test_diatomic_over_non_atomic_constituent(self):
        doc = {"modes": [{"id": "weird", "constituents": ["cause-effect", "cause"],
                          "description": ""}]}
        with pytest.raises(BadConstituent):
            load_registry(doc)

    def test_single_constituent_rejected(self):
        doc = {"modes": [{"id": "half", "constituents": ["cause"],
                          "description": ""}]}
        with pytest.raises(BadConstituent):
            load_registry(doc)

    def test_repeated_constituent_rejected(self):
        doc = {"modes": [{"id": "twice", "constituents": ["cause", "cause"],
                          "description": ""}]}
        with pytest.raises(BadConstituent):
            load_registry(doc)

    def test_invalid_id_rejected(self):
        doc = {"modes": [{"id": "Bad Id", "constituents": [], "description": ""}]}
        with pytest.raises(ParseError):
            load_registry(doc)

    def test_arity_mismatch_rejected(self):
        doc = {"modes": [{"id": "x", "arity": "diatomic", "constituents": [],
                          "description": ""}]}
        with pytest.raises(ParseError):
            load_registry(doc)

    def test_malformed_json_reports_position(self):
        with pytest.raises(ParseError) as excinfo:
            load_registry("{\n  broken\n}")
        assert excinfo.value.line is not None

    def test_custom_alias(self):
        extended = load_registry({"modes": [], "aliases": {"story": "narration"}})
        assert extended.resolve("story").id == "narration"

    def test_alias_to_unknown_target(self):
        with pytest.raises(BadConstituent):
            load_registry({"modes": [], "aliases": {"story": "nope"}})


class TestModeValue:
    def test_frozen(self, registry):
        mode = registry.resolve("cause")
        with pytest.raises(AttributeError):
            mode.id = "other"

    def test_origin_constructors(self):
        assert Origin.base().kind == "base"
        assert Origin.decomposed().kind == "decomposed"
        generated = Origin.generated("unite", ("a", "b"))
        assert generated.operator == "unite"
        assert generated.inputs == ("a", "b")
