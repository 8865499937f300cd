import pytest

from concordkit.errors import MatrixFileError
from concordkit.matrixfile import bundled_names, format_matrix, parse_matrix_file, parse_matrix_text
from concordkit.seifert import GRANNY, TREFOIL, UNKNOT, build_paper_matrix

from conftest import random_seifert


def test_unknot_text():
    assert parse_matrix_text("0\n").entries == UNKNOT.entries


def test_bundled_files_match_builders():
    assert bundled_names() == ["granny.mat", "paper_A.mat", "paper_B.mat", "paper_C.mat", "trefoil.mat"]
    for which in "ABC":
        assert parse_matrix_file(f"paper_{which}.mat").entries == build_paper_matrix(which).entries
    assert parse_matrix_file("trefoil.mat").entries == TREFOIL.entries
    assert parse_matrix_file("granny.mat").entries == GRANNY.entries
    assert parse_matrix_file("paper_C.mat").label == "paper_C"


def test_validation_error():
    with pytest.raises(MatrixFileError, match="not a Seifert matrix"):
        parse_matrix_text("2\n1 0\n0 1\n")
    with pytest.raises(MatrixFileError):
        parse_matrix_text("1\n0\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("x\n", 1),
        ("# c\n2\n1 a\n0 1\n", 3),
        ("2\n-1 1\n0\n", 3),
        ("2\n-1 1\n", 2),
        ("2\n-1 1\n0 -1\n5 5\n", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MatrixFileError) as info:
        parse_matrix_text(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_empty_and_missing():
    with pytest.raises(MatrixFileError):
        parse_matrix_text("# only a comment\n\n")
    with pytest.raises(MatrixFileError):
        parse_matrix_file("/nonexistent/dir/knot.mat")


def test_comments_and_blank_lines():
    s = parse_matrix_text("# trefoil\n\n2\n  -1 1\n# mid\n0 -1\n\n")
    assert s.entries == TREFOIL.entries


def test_round_trip(tmp_path):
    import random

    rng = random.Random(4)
    samples = [UNKNOT, TREFOIL, GRANNY, build_paper_matrix("C")]
    samples += [random_seifert(rng.randint(1, 3), rng, spread=5) for _ in range(10)]
    for s in samples:
        text = format_matrix(s, comment="round trip\nsecond line")
        back = parse_matrix_text(text)
        assert back.entries == s.entries
        assert format_matrix(back, comment="round trip\nsecond line") == text
    path = tmp_path / "k.mat"
    path.write_text(format_matrix(GRANNY))
    assert parse_matrix_file(path).entries == GRANNY.entries
    assert parse_matrix_file(str(path)).label == "k"
