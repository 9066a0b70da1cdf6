"""
Tests for catalog templates, golden values and the catalog repository.
"""

import math
from dataclasses import dataclass, replace

import pytest

from data_access.catalog.entry import FLAG_LAGRANGIAN, FLAG_MINIMAL, Constraint
from data_access.catalog.flat_families import PLANE
from data_access.catalog.golden_values import GOLDEN_VALUES, verify_golden_values
from data_access.catalog.projective_families import CP2_FLAT
from data_access.repositories.base_repository import BaseRepository
from data_access.repositories.catalog_repository import (
    CatalogRepository,
    build_c2,
    build_ch2_family,
    build_cp2_flat,
    list_catalog,
)
from infrastructure.errors import BadLift, BadParameter, ContractViolation, Unsupported
from infrastructure.geometry.ambient import AmbientKind, AmbientSpace

FAMILY_IDS = [
    "c2-plane",
    "c2-cylinder",
    "c2-torus",
    "cp2-flat",
    "ch2-family1",
    "ch2-family2",
    "ch2-family3",
    "ch2-family4",
    "ch2-family5",
    "ch2-family6",
]


class TestListing:
    def test_catalog_order(self):
        assert [t.id for t in list_catalog()] == FAMILY_IDS

    def test_controls_listed_separately(self, repository):
        assert [t.id for t in repository.list_controls()] == ["control-graph"]

    @pytest.mark.parametrize(
        "entry_id, line",
        [
            ("ch2-family1", "ch2-family1: a≠0, a²+b²<1"),
            ("c2-torus", "c2-torus: r1>0, r2>0"),
            ("c2-plane", "c2-plane: no parameters"),
            ("ch2-family4", "ch2-family4: a²>1"),
        ],
    )
    def test_schema_lines(self, repository, entry_id, line):
        assert repository.get_template(entry_id).schema_line() == line

    def test_every_family_builds_with_defaults(self, repository):
        for entry_id in FAMILY_IDS:
            entry = repository.build(entry_id)
            assert entry.id == entry_id
            assert FLAG_LAGRANGIAN in entry.expected
            assert not entry.control

    def test_ambients(self, repository):
        assert repository.build("c2-torus").ambient.kind is AmbientKind.FLAT_C2
        assert repository.build("cp2-flat").ambient.kind is AmbientKind.PROJ_CP2
        assert repository.build("ch2-family6").ambient.kind is AmbientKind.HYP_CH2

    def test_expected_closed_forms(self, repository):
        assert FLAG_MINIMAL in repository.build("c2-plane").expected
        cylinder = repository.build("c2-cylinder", {"r": 0.5})
        assert cylinder.expected.closed_form_abs_H == pytest.approx(2.0)
        torus = repository.build("c2-torus", {"r1": 1.0, "r2": 3.0})
        assert torus.expected.closed_form_abs_H == pytest.approx(math.sqrt(1.0 + 1.0 / 9.0))

    def test_periodicity(self, repository):
        assert repository.build("c2-torus").periodicity == (True, True)
        assert repository.build("c2-cylinder").periodicity == (True, False)
        assert repository.build("ch2-family1").periodicity == (False, False)


class TestGoldenValues:
    def test_every_family_has_golden_rows(self):
        assert set(GOLDEN_VALUES) == set(FAMILY_IDS)
        assert all(len(rows) >= 5 for rows in GOLDEN_VALUES.values())

    def test_formulas_match(self, repository):
        templates = {t.id: t for t in repository.get_all()}
        assert verify_golden_values(templates) == sum(len(rows) for rows in GOLDEN_VALUES.values())

    def test_corrupted_formula_detected(self, repository):
        original = CP2_FLAT.formula

        def corrupted(params):
            evaluate = original(params)

            def shifted(x, y):
                l1, l2, l3 = evaluate(x, y)
                return l1, l2 + 1e-3, l3

            return shifted

        templates = {t.id: t for t in repository.get_all()}
        templates["cp2-flat"] = replace(CP2_FLAT, formula=corrupted)
        with pytest.raises(ContractViolation):
            verify_golden_values(templates)


class TestValidation:
    @pytest.mark.parametrize(
        "entry_id, params, clause",
        [
            ("cp2-flat", {"a": 0.0}, "a≠0"),
            ("ch2-family1", {"a": 0.0, "b": 0.0}, "a≠0"),
            ("ch2-family1", {"a": 0.8, "b": 0.8}, "a²+b²<1"),
            ("ch2-family2", {"b": 1.0}, "0<b²<1"),
            ("ch2-family2", {"b": 0.0}, "0<b²<1"),
            ("ch2-family3", {"a": 0.5, "b": 0.5}, "a²+b²>1"),
            ("ch2-family4", {"a": 1.0}, "a²>1"),
            ("ch2-family5", {"b": 0.0}, "b≠0"),
            ("c2-cylinder", {"r": -1.0}, "r>0"),
            ("c2-torus", {"r1": 1.0, "r2": 0.0}, "r2>0"),
        ],
    )
    def test_violated_clause_named(self, repository, entry_id, params, clause):
        with pytest.raises(BadParameter) as info:
            repository.build(entry_id, params)
        assert info.value.clause == clause
        assert clause in info.value.message

    def test_message_quotes_theorem_clause(self, repository):
        with pytest.raises(BadParameter) as info:
            repository.build("ch2-family1", {"a": 0.0, "b": 0.0})
        assert "a ≠ 0" in info.value.message

    def test_unknown_entry_and_parameter(self, repository):
        with pytest.raises(BadParameter):
            repository.build("s3-sphere")
        with pytest.raises(BadParameter):
            repository.build("c2-cylinder", {"radius": 1.0})
        with pytest.raises(BadParameter):
            repository.build("c2-cylinder", {"r": float("nan")})

    def test_defaults_fill_missing_parameters(self, repository):
        template = repository.get_template("c2-torus")
        assert repository.resolve_params(template, {"r2": 5.0}) == {"r1": 1.0, "r2": 5.0}

    def test_near_degenerate_flag(self, repository):
        entry = repository.build("ch2-family1", {"a": 0.6, "b": 0.7999})
        assert entry.near_degenerate
        assert not repository.build("ch2-family1").near_degenerate

    def test_bad_lift_rejected(self):
        repository = CatalogRepository()
        broken = replace(
            CP2_FLAT, id="cp2-broken", formula=lambda p: (lambda x, y: (2.0 + 0.0 * x, 0.0 * y, 0.0))
        )
        repository.add(broken)
        with pytest.raises(BadLift):
            repository.build("cp2-broken")


class TestConvenienceBuilders:
    def test_build_c2(self):
        assert build_c2("torus", r1=1.0, r2=3.0).params == {"r1": 1.0, "r2": 3.0}
        assert build_c2("plane").params == {}
        with pytest.raises(Unsupported):
            build_c2("sphere")
        with pytest.raises(BadParameter):
            build_c2("cylinder", r=0.0)

    def test_build_cp2_flat(self):
        entry = build_cp2_flat(0.5, -0.8)
        assert entry.params == {"a": 0.5, "b": -0.8}
        with pytest.raises(BadParameter):
            build_cp2_flat(0.0)

    def test_build_ch2_family(self):
        assert build_ch2_family(6).id == "ch2-family6"
        assert build_ch2_family(3, a=0.9, b=0.9).params == {"a": 0.9, "b": 0.9}
        assert build_ch2_family(2, a=5.0, b=0.5).params == {"b": 0.5}
        with pytest.raises(Unsupported):
            build_ch2_family(7)
        with pytest.raises(Unsupported):
            build_ch2_family(2.0)


@dataclass(frozen=True)
class Record:
    id: str
    kind: str


class RecordRepository(BaseRepository[Record]):
    pass


class TestBaseRepository:
    def test_registry_operations(self):
        repo = RecordRepository([Record("a", "x"), Record("b", "y"), Record("c", "x")])
        assert repo.get_by_id("b").kind == "y"
        assert repo.get_by_id("d") is None
        assert [r.id for r in repo.get_all()] == ["a", "b", "c"]
        assert [r.id for r in repo.find_by_criteria({"kind": "x"})] == ["a", "c"]

    def test_duplicate_ids_rejected(self):
        repo = RecordRepository([Record("a", "x")])
        with pytest.raises(ContractViolation):
            repo.add(Record("a", "y"))

    def test_catalog_rejects_duplicate_template(self, repository):
        with pytest.raises(ContractViolation):
            CatalogRepository().add(PLANE)
