import json

import pytest

from grfrob.formats.codec import dump_algebra, dump_corpus, load_algebra, load_corpus, read_algebra_file
from grfrob.utils.errors import InvalidInputError


def test_dump_is_stable(flagship, m3_c4):
    for A in (flagship, m3_c4):
        text = dump_algebra(A)
        again = load_algebra(text)
        assert dump_algebra(again) == text
        assert again.degrees == A.degrees


def test_degrees_are_written_as_labels(flagship):
    data = json.loads(dump_algebra(flagship, "flagship"))
    assert data["name"] == "flagship"
    assert [b["degree"] for b in data["basis"]] == ["e", "c"]
    assert data["field"] == {"p": 5}


def test_bare_integer_field(flagship):
    data = json.loads(dump_algebra(flagship))
    data["field"] = 5
    assert load_algebra(json.dumps(data)).p == 5


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(field={"p": 4}),
        lambda d: d["basis"][1].update(degree="z"),
        lambda d: d.update(unit=[1]),
        lambda d: d["structure"].append([0, 0, 7, 1]),
        lambda d: d["structure"].append([1, 1, 1, 1]),
        lambda d: d["group"].update(identity="z"),
        lambda d: d.pop("unit"),
    ],
)
def test_malformed_files_are_input_errors(flagship, mutate):
    data = json.loads(dump_algebra(flagship))
    mutate(data)
    with pytest.raises(InvalidInputError):
        load_algebra(json.dumps(data))


def test_corpus_file_and_directory(tmp_path, flagship, t2):
    path = tmp_path / "corpus.json"
    path.write_text(dump_corpus([("flagship", flagship), ("t2", t2)]), encoding="utf-8")
    assert [name for name, _ in load_corpus(str(path))] == ["flagship", "t2"]

    folder = tmp_path / "algebras"
    folder.mkdir()
    (folder / "b.json").write_text(dump_algebra(t2, "t2"), encoding="utf-8")
    (folder / "a.json").write_text(dump_algebra(flagship), encoding="utf-8")
    loaded = load_corpus(str(folder))
    assert [A.dim for _, A in loaded] == [2, 3]
    assert loaded[1][0] == "t2"


def test_corpus_must_be_a_list(tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps({"instances": 3}), encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_corpus(str(path))


def test_files_must_be_utf8(tmp_path, flagship):
    path = tmp_path / "latin1.json"
    text = dump_algebra(flagship, "flagship").replace('"flagship"', '"flagship-é"')
    path.write_bytes(text.encode("latin-1"))
    with pytest.raises(InvalidInputError, match="UTF-8"):
        read_algebra_file(str(path))

    folder = tmp_path / "algebras"
    folder.mkdir()
    (folder / "a.json").write_bytes(b"\xff\xfe{}")
    with pytest.raises(InvalidInputError):
        load_corpus(str(folder))
