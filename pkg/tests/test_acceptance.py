"""Package-level acceptance gate: one test per headline requirement.

Each test prints a single [PASS]/[FAIL] verdict line (shown under ``-s``
and echoed in the terminal summary), checks its stated tolerances, and is
deliberately written against public entry points only.
"""
import math
import time
from contextlib import contextmanager

import pytest

from rhetor import (
    asymptotic_subset_entropy,
    base_atoms,
    capacity,
    capacity_ratio,
    closure,
    compose_re,
    default_registry,
    default_rules,
    default_schedule,
    entropy_flat,
    entropy_layered,
    forward_backward,
    load_pyramid,
    load_registry,
    load_schedule,
    orthogonal,
    parse_document,
    reduce,
    serialize_document,
    serialize_pyramid,
    serialize_registry,
    serialize_schedule,
    split,
    subset_entropy_exact,
    subset_entropy_logspace,
    trace_layers,
    unite,
    uniform,
    load_stage_map,
    analyze_coverage,
)
from rhetor.cli import main


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def test_capacity_table_reproduced_bit_exact(capsys, golden_table_path):
    with criterion("capacity table 1..30 bit-exact in under a second"):
        start = time.perf_counter()
        code = main(["tables", "--max-k", "30", "--format", "csv"])
        elapsed = time.perf_counter() - start
        out, _ = capsys.readouterr()
        assert code == 0
        assert out == golden_table_path.read_text()
        assert elapsed < 1.0


def test_combination_counts_and_capacity_ratios():
    with criterion("pair counts 21/210 and subset-count ratios 64/1025"):
        registry = default_registry()
        rules = default_rules()
        over_base = closure(registry, rules, ["unite"], 1, seed=base_atoms())
        assert len(over_base) == 21 == math.comb(7, 2)
        over_all = closure(registry, rules, ["unite"], 1)
        assert len(over_all) == 210 == math.comb(21, 2)
        assert capacity_ratio(16, 10) == pytest.approx(64, rel=0.01)
        assert capacity_ratio(20, 10) == pytest.approx(1025, rel=0.01)


def test_subset_entropy_checkpoints():
    with criterion("entropy checkpoints, asymptote, and flat log2(18)"):
        printed = {2: 0.92, 7: 2.39, 10: 2.70, 14: 2.95, 18: 3.13, 20: 3.21,
                   100: 4.37}
        for k, expected in printed.items():
            assert subset_entropy_exact(k) == pytest.approx(expected, abs=0.03)
        assert asymptotic_subset_entropy(100) == pytest.approx(4.37, abs=0.02)
        assert entropy_flat(uniform(18)) == pytest.approx(4.1699, abs=0.001)


def test_layered_entropy_demonstration():
    with criterion("two-stage 4,4 hierarchy vs flat 20 and monotone scan"):
        report = entropy_layered([("upper", 4), ("lower", 4)], flat_k=20)
        for _, _, h in report.stage_entropies:
            assert h == pytest.approx(1.81, abs=0.03)
        assert report.flat_H == pytest.approx(3.21, abs=0.03)
        values = [subset_entropy_exact(k) for k in range(1, 101)]
        assert all(b > a for a, b in zip(values, values[1:]))


def test_operator_suite():
    with criterion("operator examples, involutions, and split/unite inverses"):
        registry = default_registry()
        rules = default_rules()

        decomposed = {m.id for m in registry.atoms()
                      if m.origin.kind == "decomposed"}
        split_results = {part.id
                         for d in registry.diatomics()
                         for part in split(registry, d)}
        assert split_results == decomposed
        assert len(split_results) == 14

        assert len(closure(registry, rules, ["unite"], 1, seed=base_atoms())) == 21

        fb_results = {d.result_ids[0]
                      for d in closure(registry, rules, ["fb"], 1)}
        assert {"generalization", "combination"} <= fb_results
        assert reduce(registry, rules, "exposition").id == "summary"

        for a, b in rules.orthogonal_pairs:
            for m in (a, b):
                assert orthogonal(registry, rules,
                                  orthogonal(registry, rules, m)).id == m

        for diatomic in registry.diatomics():
            assert unite(registry, *split(registry, diatomic)).id == diatomic.id
        atoms = sorted(m.id for m in registry.atoms())
        for i, a in enumerate(atoms):
            for b in atoms[i + 1:]:
                assert {p.id for p in split(registry, unite(registry, a, b))} \
                    == {a, b}


def test_pyramid_edges_and_composition(expected_edges):
    with criterion("mapping graph edge-for-edge and purpose-to-mode unions"):
        graph = load_pyramid()
        fixture_cr = {(c, r) for c, targets in expected_edges["c"].items()
                      for r in targets}
        fixture_ec = {(e, c) for e, targets in expected_edges["e"].items()
                      for c in targets}
        assert graph.edges_cr == fixture_cr
        assert graph.edges_ec == fixture_ec
        assert len(expected_edges["e"]) == 8
        for e_id, c_ids in expected_edges["e"].items():
            union = sorted({r for c in c_ids for r in expected_edges["c"][c]})
            assert list(compose_re(graph, e_id)) == union


def test_lesson_pipeline_end_to_end(lesson_path, lesson_map_path):
    with criterion("lesson parse, coverage 0.7, and stage mismatch sets"):
        start = time.perf_counter()
        doc = parse_document(lesson_path)
        cov = analyze_coverage(doc)
        trace = trace_layers(doc, load_pyramid(), load_stage_map(lesson_map_path))
        elapsed = time.perf_counter() - start

        assert cov.K_u == 14 and cov.K == 20
        assert cov.C_m == pytest.approx(0.7, rel=1e-12)
        by_stage = {t.stage: t for t in trace.stages}
        assert by_stage["Part I"].mismatch == frozenset()
        assert by_stage["Part II"].mismatch == {
            "classification", "contrast", "description", "effect"}
        assert by_stage["Part III"].mismatch == {"problem"}
        assert elapsed < 1.0


def test_numeric_and_round_trip_properties(lesson_path):
    with criterion("marginal-bit increments, path agreement, round-trips"):
        previous = capacity(10).K_RC
        for k in range(11, 121):
            current = capacity(k).K_RC
            assert abs((current - previous) - 1.0) < 0.01
            previous = current

        for k in range(100, 121):
            assert abs(subset_entropy_exact(k)
                       - subset_entropy_logspace(k)) <= 1e-9

        registry = default_registry()
        assert load_registry(serialize_registry(registry)) == registry
        graph = load_pyramid()
        assert load_pyramid(source=serialize_pyramid(graph)) == graph
        doc = parse_document(lesson_path)
        assert parse_document(serialize_document(doc)) == doc
        schedule = default_schedule()
        assert load_schedule(serialize_schedule(schedule)) == schedule
