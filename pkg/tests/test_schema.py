"""Tests for module descriptions, presets and the random corpus."""

import json

import pytest

from fihom.corpus import corpus, random_module_spec
from fihom.errors import InputError
from fihom.linalg.rings import Ring
from fihom.presets import preset_spec, sharpness_elements
from fihom.schema import (
    FBGenerator,
    ModuleSpecFile,
    build_fb_module,
    build_module,
    parse_input,
    validate_spec,
)


def _description(**overrides):
    data = {
        "name": "example",
        "ring": "Z",
        "truncation": 4,
        "fb_generators": [{"degree": 1, "preset": "trivial"}],
        "elements": [{"degree": 2, "terms": [{"subset": [1]}, {"subset": [2]}]}],
    }
    data.update(overrides)
    return data


class TestValidation:
    """Tests for schema validation and field paths."""

    def test_valid_description(self):
        """Test that a well-formed description validates."""
        spec = validate_spec(_description())

        assert spec.fb_ranks() == {1: 1}
        assert spec.mode == "quotient"

    def test_repeated_subset_entry(self):
        """Test that [1, 1] is rejected at its field path."""
        data = _description(elements=[{"degree": 2, "terms": [{"subset": [1, 1]}]}])

        with pytest.raises(InputError) as exc_info:
            validate_spec(data)

        assert exc_info.value.field == "elements.0.terms.0.subset"

    def test_subset_outside_degree(self):
        """Test that a subset must lie inside [degree]."""
        data = _description(elements=[{"degree": 2, "terms": [{"subset": [3]}]}])

        with pytest.raises(InputError) as exc_info:
            validate_spec(data)

        assert exc_info.value.field == "elements.0.terms.0.subset"

    def test_index_beyond_rank(self):
        """Test that e_2 does not exist in a rank-1 representation."""
        data = _description(elements=[{"degree": 2, "terms": [{"subset": [1], "index": 2}]}])

        with pytest.raises(InputError) as exc_info:
            validate_spec(data)

        assert exc_info.value.field == "elements.0.terms.0.index"

    def test_rational_coefficient_over_z(self):
        """Test that 1/2 is rejected over Z and kept over Q."""
        terms = [{"subset": [1], "coefficient": "1/2"}]
        data = _description(elements=[{"degree": 1, "terms": terms}])

        with pytest.raises(InputError) as exc_info:
            validate_spec(data)
        assert exc_info.value.field == "elements.0.terms.0.coefficient"

        spec = validate_spec({**data, "ring": "Q"})
        assert spec.elements[0].terms[0].coefficient == "1/2"

    def test_fraction_normalized(self):
        """Test that fractions are reduced and integral ones become ints."""
        terms = [{"subset": [1], "coefficient": "2/4"}, {"subset": [1], "coefficient": "4/2"}]
        spec = validate_spec(_description(ring="Q", elements=[{"degree": 1, "terms": terms}]))

        assert [t.coefficient for t in spec.elements[0].terms] == ["1/2", 2]

    def test_coxeter_violation(self):
        """Test that a braid failure is reported on the transpositions."""
        gens = [{"degree": 3, "rank": 1, "transpositions": [[[1]], [[-1]]]}]

        with pytest.raises(InputError) as exc_info:
            validate_spec(_description(fb_generators=gens, elements=[]))

        assert exc_info.value.field == "fb_generators.0.transpositions"

    def test_preset_or_matrices(self):
        """Test that a generator needs exactly one of preset and transpositions."""
        with pytest.raises(InputError) as exc_info:
            validate_spec(_description(fb_generators=[{"degree": 1}]))

        assert exc_info.value.field.startswith("fb_generators.0")

    def test_unknown_field(self):
        """Test that unknown keys are rejected."""
        with pytest.raises(InputError):
            validate_spec(_description(colour="blue"))

    def test_schema_version(self):
        """Test that only version 1 is accepted."""
        with pytest.raises(InputError) as exc_info:
            validate_spec(_description(schema_version=2))

        assert exc_info.value.field == "schema_version"

    def test_canonical_json_round_trip(self):
        """Test that the canonical dump validates to the same description."""
        spec = validate_spec(_description(ring="Q"))

        assert validate_spec(json.loads(spec.canonical_json())) == spec


class TestParseInput:
    """Tests for reading description files."""

    def test_json_file(self, tmp_path):
        """Test reading a JSON description."""
        path = tmp_path / "module.json"
        path.write_text(json.dumps(_description()))

        assert parse_input(path).name == "example"

    def test_yaml_file(self, tmp_path):
        """Test reading a YAML description."""
        path = tmp_path / "module.yaml"
        path.write_text(
            "name: yaml-example\n"
            "ring: Q\n"
            "truncation: 3\n"
            "fb_generators:\n"
            "  - {degree: 1, preset: trivial}\n"
            "elements:\n"
            "  - degree: 2\n"
            "    terms:\n"
            "      - {subset: [1], coefficient: 1}\n"
            "      - {subset: [2], coefficient: -1}\n"
        )
        spec = parse_input(path)

        assert spec.ring is Ring.Q
        assert [t.coefficient for t in spec.elements[0].terms] == [1, -1]

    def test_missing_file(self, tmp_path):
        """Test that a missing file is an input error on 'input'."""
        with pytest.raises(InputError) as exc_info:
            parse_input(tmp_path / "absent.json")

        assert exc_info.value.field == "input"

    def test_malformed_json(self, tmp_path):
        """Test that undecodable JSON is an input error."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")

        with pytest.raises(InputError):
            parse_input(path)


class TestBuildModule:
    """Tests for constructing M(W), V and M(W)/V."""

    def test_direct_sum_order(self):
        """Test that W is the direct sum of its generators in file order."""
        spec = ModuleSpecFile(fb_generators=[FBGenerator(degree=1, preset="trivial"), FBGenerator(degree=1, preset="sign")])

        assert build_fb_module(spec).ranks == (0, 2)

    def test_submodule_mode(self):
        """Test that submodule mode studies the span itself."""
        built = build_module(validate_spec(_description(ring="Q", mode="submodule")))

        assert built.subject is built.sub.module
        assert built.subject.ranks == (0, 0, 1, 3, 4)

    def test_elements_above_truncation_skipped(self):
        """Test that elements above N leave the module free."""
        built = build_module(validate_spec(_description(truncation=1)))

        assert built.quotient.is_based
        assert built.quotient.ranks == (0, 1)

    def test_repeated_labels_summed(self):
        """Test that two terms on one label add up."""
        terms = [{"subset": [1], "coefficient": 1}, {"subset": [1], "coefficient": 1}]
        built = build_module(validate_spec(_description(elements=[{"degree": 1, "terms": terms}])))

        assert str(built.quotient.summary(1)) == "Z/2"


class TestPresets:
    """Tests for the built-in families."""

    def test_sharpness_elements(self):
        """Test v_[3] = e_1 + e_2 + e_3 for k = 1."""
        (element,) = sharpness_elements(1, 3)

        assert element.degree == 3
        assert [t.subset for t in element.terms] == [[1], [2], [3]]

    def test_principal(self):
        """Test that principal:2 is free on the regular representation."""
        built = build_module(preset_spec("principal:2", Ring.Z, 3))

        assert built.free.ranks == (0, 0, 2, 6)
        assert built.quotient.is_based

    def test_free_sign(self):
        """Test free:sign:2."""
        spec = preset_spec("free:sign:2")

        assert spec.fb_generators[0].preset == "sign"
        assert spec.truncation == 8

    def test_zero(self):
        """Test the zero preset."""
        built = build_module(preset_spec("zero", Ring.Q, 3))

        assert built.quotient.is_zero

    @pytest.mark.parametrize("name", ["sharpness:2,2", "sharpness:1", "principal:x", "free:odd:1", "bogus"])
    def test_invalid_presets(self, name):
        """Test that malformed preset names are input errors."""
        with pytest.raises(InputError) as exc_info:
            preset_spec(name)

        assert exc_info.value.field == "preset"


class TestCorpus:
    """Tests for the seeded random corpus."""

    def test_deterministic(self):
        """Test that a seed fixes the corpus."""
        assert list(corpus(6, seed=3)) == list(corpus(6, seed=3))

    def test_names_and_rings(self):
        """Test corpus names and ring alternation."""
        specs = list(corpus(4, seed=1))

        assert [s.name for s in specs] == [f"corpus-1-{i}" for i in range(4)]
        assert [s.ring for s in specs] == [Ring.Z, Ring.Q, Ring.Z, Ring.Q]

    def test_envelope(self):
        """Test the size limits of random descriptions."""
        import random

        rng = random.Random(11)
        for _ in range(20):
            spec = random_module_spec(rng, mode="submodule")
            assert 1 <= len(spec.fb_generators) <= 2
            assert all(g.degree <= 2 for g in spec.fb_generators)
            assert all(rank <= 2 for rank in spec.fb_ranks().values())
            assert all(e.degree <= 3 for e in spec.elements)
            assert validate_spec(spec.model_dump(mode="json")) == spec
