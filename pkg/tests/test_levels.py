"""Level files and the seeded generator."""

import json

import pytest

from ab_hybrid_planner.errors import GenerationError, LevelFormatError
from ab_hybrid_planner.levels.generator import (
    GeneratorParams,
    generate_level,
    is_exposed,
    make_params,
    pig_is_structured,
    sample_params,
)
from ab_hybrid_planner.levels.level_io import load_level, parse_level, save_level, serialize_level
from ab_hybrid_planner.models.level import Material


def document(**overrides):
    doc = {
        "slingshot": {"x": 0.0, "y": 5.0},
        "birds": [{"id": 0}, {"id": 1}],
        "pigs": [{"x": 120.0, "y": 0.5}],
        "blocks": [{"x": 120.0, "y": 1.0, "width": 2.0, "height": 2.0, "material": "wood"}],
    }
    doc.update(overrides)
    return doc


class TestLevelFiles:
    def test_parse_defaults(self):
        level = parse_level(json.dumps(document()))
        assert len(level.birds) == 2
        assert level.blocks[0].material is Material.WOOD
        assert level.physics.launch_speed == 70.0
        assert level.platforms == ()

    def test_round_trip(self, tmp_path):
        level = parse_level(document())
        path = save_level(level, tmp_path / "levels" / "one.json")
        assert load_level(path) == level
        assert serialize_level(level).endswith("}\n")

    def test_unknown_material_names_the_field(self):
        doc = document(blocks=[{"x": 1.0, "y": 1.0, "width": 2.0, "height": 2.0, "material": "glass"}])
        with pytest.raises(LevelFormatError) as excinfo:
            parse_level(doc)
        assert excinfo.value.path == "blocks[0].material"

    @pytest.mark.parametrize("part, field", [("blocks", "width"), ("blocks", "height"), ("platforms", "width")])
    def test_zero_size_names_the_field(self, part, field):
        item = {"x": 60.0, "y": 1.0, "width": 2.0, "height": 2.0}
        if part == "blocks":
            item["material"] = "ice"
        item[field] = 0.0
        with pytest.raises(LevelFormatError) as excinfo:
            parse_level(document(**{part: [item]}))
        assert excinfo.value.path == f"{part}[0].{field}"

    def test_no_birds(self):
        with pytest.raises(LevelFormatError) as excinfo:
            parse_level(document(birds=[]))
        assert excinfo.value.path == "birds"

    def test_bird_ids_out_of_order(self):
        with pytest.raises(LevelFormatError, match="bird ids"):
            parse_level(document(birds=[{"id": 1}, {"id": 0}]))

    def test_unknown_field(self):
        with pytest.raises(LevelFormatError) as excinfo:
            parse_level(document(wind=3.0))
        assert excinfo.value.path == "wind"

    def test_invalid_json(self):
        with pytest.raises(LevelFormatError, match="invalid JSON"):
            parse_level("{not json", source="broken.json")

    def test_not_an_object(self):
        with pytest.raises(LevelFormatError):
            parse_level("[1, 2]")

    def test_missing_file(self, tmp_path):
        with pytest.raises(LevelFormatError, match="file not found"):
            load_level(tmp_path / "absent.json")


class TestGenerator:
    def test_deterministic(self):
        params = GeneratorParams(n_pigs=3, n_blocks=6, n_platforms=2, tnt_prob=0.3)
        assert generate_level(11, params) == generate_level(11, params)
        assert generate_level(11, params) != generate_level(12, params)

    def test_block_budget_must_fit(self):
        with pytest.raises(GenerationError):
            generate_level(0, GeneratorParams(n_pigs=1, n_blocks=5))

    def test_invalid_params(self):
        with pytest.raises(GenerationError, match="n_pigs"):
            make_params(n_pigs=0)

    def test_no_structures_means_exposed(self):
        level = generate_level(3, GeneratorParams(n_pigs=3, n_blocks=6, structure_prob=0.0))
        assert level.blocks == ()
        assert is_exposed(level)
        assert all(p.y == p.radius for p in level.pigs)

    def test_full_structures_use_the_block_budget(self):
        level = generate_level(5, GeneratorParams(n_pigs=2, n_blocks=5, structure_prob=1.0))
        assert len(level.blocks) == 5
        assert not is_exposed(level)

    @pytest.mark.parametrize("n_pigs, n_blocks", [(3, 3), (5, 5), (4, 9), (2, 8)])
    def test_full_structures_cover_every_pig(self, n_pigs, n_blocks):
        params = GeneratorParams(n_pigs=n_pigs, n_blocks=n_blocks, structure_prob=1.0)
        for seed in range(100):
            level = generate_level(seed, params)
            assert all(pig_is_structured(level, j) for j in range(n_pigs)), f"seed {seed}"

    def test_full_structures_need_a_block_per_pig(self):
        with pytest.raises(GenerationError, match="5 pigs"):
            generate_level(0, GeneratorParams(n_pigs=5, n_blocks=3, structure_prob=1.0))

    def test_partial_structures_spend_the_whole_budget(self):
        params = GeneratorParams(n_pigs=5, n_blocks=2, structure_prob=0.5)
        for seed in range(100):
            level = generate_level(seed, params)
            structured = sum(pig_is_structured(level, j) for j in range(5))
            assert structured <= 2
            assert len(level.blocks) == (2 if structured else 0)

    def test_sampled_full_structures_cover_every_pig(self):
        for seed in range(100):
            params = sample_params(seed)
            level = generate_level(seed, params)
            if params.structure_prob == 1.0 and params.n_blocks:
                assert all(pig_is_structured(level, j) for j in range(len(level.pigs))), f"seed {seed}"

    def test_platforms_float_above_everything(self):
        level = generate_level(9, GeneratorParams(n_pigs=2, n_blocks=4, n_platforms=4, structure_prob=1.0))
        top = max([b.top for b in level.blocks] + [p.y + p.radius for p in level.pigs])
        assert len(level.platforms) == 4
        assert all(p.y - p.height / 2.0 >= top + 9.9 for p in level.platforms)

    @pytest.mark.parametrize("seed", range(10))
    def test_sampled_params_always_generate(self, seed):
        level = generate_level(seed, sample_params(seed))
        assert 1 <= len(level.pigs) <= 3
        assert len({p.x for p in level.pigs}) == len(level.pigs)


def test_bundled_example_levels_parse():
    from pathlib import Path

    paths = sorted((Path(__file__).parent.parent / "example_levels").glob("*.json"))
    assert paths
    for path in paths:
        assert load_level(path).birds
