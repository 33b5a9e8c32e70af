"""Core model: classification, trait defaults, compatibility registry,
pattern catalog and score-config validation."""

import pytest

from dbases import model
from dbases.model import (
    Capability,
    Category,
    Connector,
    ConnectorKind,
    CriteriaAnswers,
    ExpertiseRepresentation,
    ModelError,
    PatternDef,
    ScoreConfig,
    Structurability,
    SynergyForm,
    SynergyLevel,
    Tangibility,
    TraitPair,
    classify,
    classify_traits,
    compat_defaults,
    default_score_config,
    default_traits,
    pattern_by_id,
    pattern_catalog,
    validate_pattern,
    validate_score_config,
)

S = Structurability
T = Tangibility


class TestEnums:
    def test_exactly_five_capabilities(self):
        assert {c.value for c in Capability} == {
            "stimulus", "interaction", "time", "goal", "meta_self",
        }

    def test_levels_totally_ordered(self):
        assert SynergyLevel.L0 < SynergyLevel.L1 < SynergyLevel.L2 < SynergyLevel.L3

    def test_two_forms(self):
        assert {f.value for f in SynergyForm} == {"specific", "general"}

    def test_other_category_requires_name(self):
        with pytest.raises(ModelError):
            Category("   ")

    def test_builtin_category_normalizes(self):
        assert Category("Model").name == "model"
        assert Category("Model").is_builtin
        assert not Category("domain ontology").is_builtin


class TestClassify:
    def test_feature_model_matches_model(self):
        answers = CriteriaAnswers(categories={
            "model": [True, True, True, True],
            "concept": [False, True, False],
        })
        assert classify(answers) == {Category("model")}

    def test_all_false_matches_nothing(self):
        answers = CriteriaAnswers(categories={
            name: [False] * len(items)
            for name, items in model.CATEGORY_CRITERIA.items()
        })
        assert classify(answers) == set()

    def test_sla_matches_documentation(self):
        answers = CriteriaAnswers(categories={"documentation": [True, True, True]})
        assert classify(answers) == {Category("documentation")}

    def test_multi_match_returned_in_full(self):
        answers = CriteriaAnswers(categories={
            "documentation": [True, True, True],
            "program": [True],
        })
        assert classify(answers) == {Category("documentation"), Category("program")}

    def test_wrong_length_names_category(self):
        answers = CriteriaAnswers(categories={"model": [True, True]})
        with pytest.raises(ModelError, match="model"):
            classify(answers)

    def test_unknown_category_rejected(self):
        with pytest.raises(ModelError, match="nonsense"):
            classify(CriteriaAnswers(categories={"nonsense": [True]}))

    def test_criterion_counts(self):
        counts = {name: len(items) for name, items in model.CATEGORY_CRITERIA.items()}
        assert counts == {
            "methodology": 3, "concept": 3, "model": 4,
            "documentation": 3, "program": 1, "assumption": 2,
        }
        assert len(model.STRUCTURABILITY_CRITERIA) == 3
        assert len(model.TANGIBILITY_CRITERIA) == 2

    def test_trait_checklists(self):
        answers = CriteriaAnswers(
            structurability=[True, True, True], tangibility=[True, False],
        )
        traits = classify_traits(answers)
        assert traits.structurability is S.STRUCTURAL
        assert traits.tangibility is T.NON_TANGIBLE

    def test_trait_checklists_optional(self):
        traits = classify_traits(CriteriaAnswers())
        assert traits.structurability is None and traits.tangibility is None


class TestDefaultTraits:
    @pytest.mark.parametrize("category,expected", [
        ("model", TraitPair(S.STRUCTURAL, T.TANGIBLE)),
        ("program", TraitPair(S.STRUCTURAL, T.TANGIBLE)),
        ("concept", TraitPair(S.NON_STRUCTURAL, T.NON_TANGIBLE)),
        ("assumption", TraitPair(S.NON_STRUCTURAL, T.NON_TANGIBLE)),
        ("documentation", TraitPair(None, T.TANGIBLE)),
        ("methodology", TraitPair(None, T.NON_TANGIBLE)),
    ])
    def test_taxonomy_cells(self, category, expected):
        assert default_traits(category) == expected

    def test_other_category_fully_open(self):
        assert default_traits(Category("folk wisdom")) == TraitPair(None, None)


class TestCompatDefaults:
    def test_feature_model(self):
        assert compat_defaults("feature model") == {
            Capability.STIMULUS, Capability.TIME, Capability.GOAL,
        }

    def test_petri_net(self):
        assert compat_defaults("Petri net") == {
            Capability.STIMULUS, Capability.TIME,
            Capability.INTERACTION, Capability.GOAL,
        }

    def test_design_pattern(self):
        assert compat_defaults("design pattern") == {
            Capability.STIMULUS, Capability.GOAL,
        }

    def test_category_fallback_is_union(self):
        # concept entries: {time,goal} twice and {stimulus,time,goal} twice
        assert compat_defaults(Category("concept")) == {
            Capability.STIMULUS, Capability.TIME, Capability.GOAL,
        }

    def test_unknown_yields_empty(self):
        assert compat_defaults("blockchain vibes") == frozenset()

    def test_name_match_wins_over_category(self):
        # "technical debt" is narrower than the concept-category union
        assert compat_defaults("Technical Debt") == {
            Capability.TIME, Capability.GOAL,
        }


class TestRepresentation:
    def test_needs_a_capability(self):
        with pytest.raises(ModelError, match="at least one capability"):
            ExpertiseRepresentation(
                id="x", name="x", category=Category("model"),
                traits=TraitPair(S.STRUCTURAL, T.TANGIBLE),
                compatible_capabilities=frozenset(),
            )

    def test_category_trait_consistency(self):
        with pytest.raises(ModelError, match="structurability"):
            ExpertiseRepresentation(
                id="x", name="x", category=Category("model"),
                traits=TraitPair(S.NON_STRUCTURAL, T.TANGIBLE),
                compatible_capabilities=frozenset({Capability.GOAL}),
            )

    def test_documentation_structurability_free(self):
        rep = ExpertiseRepresentation(
            id="manual", name="user manual", category=Category("documentation"),
            traits=TraitPair(S.NON_STRUCTURAL, T.TANGIBLE),
            compatible_capabilities=frozenset({Capability.STIMULUS}),
        )
        assert rep.traits.structurability is S.NON_STRUCTURAL


class TestPatternCatalog:
    def test_eight_patterns(self):
        assert len(pattern_catalog()) == 8

    def test_capability_sets(self):
        expected = {
            "basic": {"stimulus"},
            "basic_information_sharing": {"stimulus", "interaction"},
            "coordinated_decision_making": {"stimulus", "interaction"},
            "temporal_knowledge_sharing": {"stimulus", "interaction", "time"},
            "temporal_knowledge_aware": {"stimulus", "time"},
            "goal_sharing": {"stimulus", "interaction", "goal"},
            "temporal_goal_aware": {"stimulus", "time", "goal"},
            "fully_self_aware": {"stimulus", "interaction", "time", "goal"},
        }
        for pattern in pattern_catalog():
            assert {c.value for c in pattern.capabilities} == expected[pattern.id]

    def test_temporal_goal_aware_lookup(self):
        pattern = pattern_by_id("temporal_goal_aware")
        assert pattern.capabilities == {
            Capability.STIMULUS, Capability.TIME, Capability.GOAL,
        }

    def test_basic_lookup(self):
        assert pattern_by_id("basic").capabilities == {Capability.STIMULUS}

    def test_meta_self_optional_everywhere(self):
        assert all(p.meta_self_optional for p in pattern_catalog())

    def test_twin_patterns_distinguished(self):
        sharing = pattern_by_id("basic_information_sharing")
        coordinated = pattern_by_id("coordinated_decision_making")
        assert sharing.capabilities == coordinated.capabilities
        assert not sharing.external_decision_links
        assert coordinated.external_decision_links
        assert sharing.connectors != coordinated.connectors

    def test_all_catalog_patterns_valid(self):
        for pattern in pattern_catalog():
            report = validate_pattern(pattern)
            assert report.ok, f"{pattern.id}: {report.findings}"

    def test_unknown_id_raises(self):
        with pytest.raises(ModelError):
            pattern_by_id("nope")


class TestValidatePattern:
    def test_missing_stimulus(self):
        pattern = PatternDef(
            id="x", name="x",
            capabilities=frozenset({Capability.TIME, Capability.GOAL}),
        )
        report = validate_pattern(pattern)
        assert any("stimulus missing" in f for f in report.findings)

    def test_stimulus_goal_alone_rejected(self):
        pattern = PatternDef(
            id="x", name="x",
            capabilities=frozenset({Capability.STIMULUS, Capability.GOAL}),
        )
        report = validate_pattern(pattern)
        assert any("goal cannot pair with stimulus alone" in f for f in report.findings)

    def test_connector_to_absent_capability(self):
        pattern = PatternDef(
            id="x", name="x",
            capabilities=frozenset({Capability.STIMULUS}),
            connectors=(
                Connector("stimulus", "goal", ConnectorKind.PHYSICAL_INTER_CAPABILITY),
            ),
        )
        report = validate_pattern(pattern)
        assert any("absent from the pattern" in f for f in report.findings)

    def test_same_capability_kind_must_join_same_capability(self):
        pattern = PatternDef(
            id="x", name="x",
            capabilities=frozenset({Capability.STIMULUS, Capability.TIME}),
            connectors=(
                Connector("stimulus", "time", ConnectorKind.PHYSICAL_SAME_CAPABILITY),
            ),
        )
        assert not validate_pattern(pattern).ok

    def test_catalog_entry_clean(self):
        assert validate_pattern(pattern_by_id("temporal_goal_aware")).ok


class TestScoreConfig:
    def test_default_is_valid(self):
        assert validate_score_config(default_score_config()).ok

    def test_default_tables(self):
        cfg = default_score_config()
        assert cfg.b[SynergyLevel.L0] == 1.25
        assert cfg.b[SynergyLevel.L3] == 2.0
        assert cfg.d0 == 1.0
        assert cfg.d[SynergyLevel.L3][(S.NON_STRUCTURAL, T.NON_TANGIBLE)] == 2.0

    def test_benefit_order_violation(self):
        cfg = default_score_config()
        bad = ScoreConfig(
            w=cfg.w,
            b={SynergyLevel.L0: 1.5, SynergyLevel.L1: 1.25,
               SynergyLevel.L2: 1.75, SynergyLevel.L3: 2.0},
            d=cfg.d, rung_labels=cfg.rung_labels,
        )
        report = validate_score_config(bad)
        assert any("benefit not increasing" in f for f in report.findings)

    def test_l3_order_violation(self):
        cfg = default_score_config()
        d = {level: dict(cells) for level, cells in cfg.d.items()}
        d[SynergyLevel.L3][(S.STRUCTURAL, T.TANGIBLE)] = 1.8
        d[SynergyLevel.L3][(S.NON_STRUCTURAL, T.NON_TANGIBLE)] = 1.4
        report = validate_score_config(ScoreConfig(w=cfg.w, b=cfg.b, d=d))
        assert any("L3 ordinal order broken" in f for f in report.findings)

    def test_l2_tangibility_must_not_matter(self):
        cfg = default_score_config()
        d = {level: dict(cells) for level, cells in cfg.d.items()}
        d[SynergyLevel.L2][(S.STRUCTURAL, T.TANGIBLE)] = 1.3
        report = validate_score_config(ScoreConfig(w=cfg.w, b=cfg.b, d=d))
        assert any("vary with tangibility" in f for f in report.findings)

    def test_w_order(self):
        cfg = default_score_config()
        bad = ScoreConfig(
            w={SynergyForm.SPECIFIC: 1.6, SynergyForm.GENERAL: 1.2},
            b=cfg.b, d=cfg.d,
        )
        report = validate_score_config(bad)
        assert any("w(general)" in f for f in report.findings)

    def test_d0_pinned_to_one(self):
        cfg = default_score_config()
        bad = ScoreConfig(w=cfg.w, b=cfg.b, d=cfg.d, d0=1.1)
        assert not validate_score_config(bad).ok

    def test_rung_label_nearest(self):
        cfg = default_score_config()
        assert cfg.rung_label(1.4) == "moderate"
        assert cfg.rung_label(1.45) == "moderate"
        assert cfg.rung_label(1.55) == "hard"
