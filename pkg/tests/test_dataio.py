import pytest

from pabi.config import config_from_dict, load_config
from pabi.core import LabelSet
from pabi.data import (
    Sentence,
    TagDataset,
    UNKNOWN_TAG,
    concat_datasets,
    read_conll,
    split,
    write_conll,
)
from pabi.errors import ConfigError, EmptyCorpus, OutOfRange, ParseError
from pabi.synth import generate_corpus


class TestReadConll:
    def test_minimal_file(self, tmp_path):
        path = tmp_path / "a.conll"
        path.write_text("dog\tO\n\n", encoding="utf-8")
        data = read_conll(path, label_set=LabelSet(("B", "O")))
        assert len(data) == 1
        assert data.sentences[0] == Sentence(("dog",), ("O",))

    def test_unknown_sentinel(self, tmp_path):
        path = tmp_path / "a.conll"
        path.write_text("dog\t_\ncat\tB\n\n", encoding="utf-8")
        data = read_conll(path)
        assert data.sentences[0].tags == (UNKNOWN_TAG, "B")
        assert UNKNOWN_TAG not in data.label_set

    def test_extra_columns_tolerated(self, tmp_path):
        path = tmp_path / "a.conll"
        path.write_text("dog\tNN\tO\ncat\tNN\tB\n\n", encoding="utf-8")
        data = read_conll(path)
        assert data.sentences[0].tokens == ("dog", "cat")
        assert data.sentences[0].tags == ("O", "B")

    def test_parse_error_carries_line_number(self, tmp_path):
        path = tmp_path / "bad.conll"
        path.write_text("dog\tO\nno-tab-here\n\n", encoding="utf-8")
        with pytest.raises(ParseError, match=":2:"):
            read_conll(path)

    def test_empty_corpus(self, tmp_path):
        path = tmp_path / "empty.conll"
        path.write_text("\n\n", encoding="utf-8")
        with pytest.raises(EmptyCorpus):
            read_conll(path)

    def test_missing_trailing_blank_line(self, tmp_path):
        path = tmp_path / "a.conll"
        path.write_text("dog\tO\n\ncat\tB", encoding="utf-8")
        assert len(read_conll(path)) == 2


class TestRoundTrip:
    def test_write_then_read_is_identity(self, tmp_path):
        data = generate_corpus(50, seed=3)
        masked = generate_corpus(50, seed=4)
        for idx, corpus in enumerate((data, masked)):
            path = tmp_path / f"rt{idx}.conll"
            write_conll(corpus, path)
            back = read_conll(path, label_set=corpus.label_set)
            assert back == corpus

    def test_unknown_round_trips(self, tmp_path):
        data = TagDataset.build(
            [(["a", "b"], ["B", UNKNOWN_TAG])], LabelSet(("B", "O"))
        )
        path = tmp_path / "u.conll"
        write_conll(data, path)
        assert "\t_" in path.read_text(encoding="utf-8")
        assert read_conll(path, label_set=data.label_set) == data

    def test_utf8_preserved_byte_exactly(self, tmp_path):
        data = TagDataset.build(
            [(["héllo", "wörld", "日本"], ["B", "O", "O"])], LabelSet(("B", "O"))
        )
        path = tmp_path / "utf8.conll"
        write_conll(data, path)
        assert path.read_bytes() == "héllo\tB\nwörld\tO\n日本\tO\n\n".encode()
        assert read_conll(path, label_set=data.label_set) == data

    def test_deterministic_bytes(self, tmp_path):
        data = generate_corpus(30, seed=8)
        p1, p2 = tmp_path / "a.conll", tmp_path / "b.conll"
        write_conll(data, p1)
        write_conll(data, p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestSplit:
    def test_single_part_is_permutation(self):
        data = generate_corpus(40, seed=1)
        (part,) = split(data, [1.0], seed=5)
        assert sorted(map(str, part.sentences)) == sorted(map(str, data.sentences))

    def test_ten_ninety(self):
        data = generate_corpus(100, seed=2)
        small, large = split(data, (0.1, 0.9), seed=0)
        assert len(small) == 10 and len(large) == 90

    def test_deterministic(self):
        data = generate_corpus(60, seed=3)
        assert split(data, (0.5, 0.5), seed=7)[0] == split(data, (0.5, 0.5), seed=7)[0]

    def test_parts_partition_the_multiset(self):
        data = generate_corpus(33, seed=4)
        parts = split(data, (0.3, 0.3, 0.4), seed=9)
        rebuilt = sorted(str(s) for p in parts for s in p.sentences)
        assert rebuilt == sorted(str(s) for s in data.sentences)

    def test_bad_fractions(self):
        data = generate_corpus(10, seed=5)
        with pytest.raises(OutOfRange):
            split(data, (0.5, 0.6), seed=0)
        with pytest.raises(OutOfRange):
            split(data, (), seed=0)


class TestConcat:
    def test_order_preserved(self):
        a = generate_corpus(5, seed=1)
        b = generate_corpus(7, seed=2)
        both = concat_datasets([a, b])
        assert both.sentences == a.sentences + b.sentences

    def test_label_sets_must_match(self):
        a = generate_corpus(5, seed=1)
        b = TagDataset.build([(["x"], ["Z"])], LabelSet(("Z", "O")))
        with pytest.raises(OutOfRange):
            concat_datasets([a, b])


class TestLoadConfig:
    def test_minimal_config_fills_defaults(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("grid:\n  partial: [0.5]\n", encoding="utf-8")
        cfg = load_config(path)
        assert cfg.tagger.window == 2
        assert cfg.iterations == 5
        assert cfg.seeds == (0, 1, 2)
        assert cfg.grid.partial == (0.5,)
        assert cfg.grid.noisy == (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7)

    def test_rate_out_of_range_names_field(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("grid:\n  noisy: [0.2, 1.3]\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="grid.noisy"):
            load_config(path)

    def test_all_violations_reported_at_once(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text(
            "grid:\n  partial: [2.0]\nworkers: 0\nreport_format: xml\n",
            encoding="utf-8",
        )
        with pytest.raises(ConfigError) as err:
            load_config(path)
        message = str(err.value)
        assert "grid.partial" in message
        assert "workers" in message
        assert "report_format" in message

    def test_grid_cardinality_is_product_of_lists(self):
        cfg = config_from_dict(
            {
                "grid": {
                    "partial": [0.2, 0.4],
                    "noisy": [0.1],
                    "mixed_partial": [0.2, 0.4, 0.6],
                    "mixed_noisy": [0.1, 0.3],
                    "partial_bio": [1.0],
                    "auxiliary": ["detection"],
                }
            }
        )
        assert cfg.grid.size == 2 + 1 + 3 * 2 + 1 + 1

    def test_default_grid_matches_reference_cardinality(self):
        cfg = config_from_dict({})
        assert cfg.grid.size == 4 + 7 + 12 + 5 + 2

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("gridd:\n  partial: [0.5]\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="gridd"):
            load_config(path)

    def test_scalar_seed_expands(self):
        cfg = config_from_dict({"seed": 5})
        assert cfg.seeds == (5, 6, 7)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.yaml")

    def test_not_yaml(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("grid: [unbalanced\n  ", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)
