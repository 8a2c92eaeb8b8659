import io
from fractions import Fraction

from mkpbound.fixtures import example
from mkpbound.lpfile import export_lp_with_cut, format_lp
from mkpbound.model import validate_mkp


def _rows(text):
    return [line.strip() for line in text.splitlines()]


def test_minimal_model():
    text = format_lp(validate_mkp([(7, 3)], [4]), z_seq=5)
    rows = _rows(text)
    assert "obj: 7 x_1_1" in rows
    assert "cap_1: 3 x_1_1 <= 4" in rows
    assert "assign_1: x_1_1 <= 1" in rows
    assert "seq_cut: 7 x_1_1 <= 5" in rows
    assert rows[-3:] == ["Binaries", "x_1_1", "End"]
    constraints = rows[rows.index("Subject To") + 1:rows.index("Binaries")]
    assert len(constraints) == 3


def test_cut_is_floor_of_exact_rational():
    text = format_lp(example(), Fraction(203331, 100))
    cut = text[text.index("seq_cut:"):text.index("Binaries")]
    assert cut.rstrip().endswith("<= 2033")
    assert format_lp(example(), 216).count("<= 216") == 1


def test_example_structure(tmp_path):
    path = tmp_path / "t1.lp"
    export_lp_with_cut(example(), Fraction(216), path)
    text = path.read_text()
    assert text.startswith("\\")
    for name in ("cap_1:", "cap_2:", "assign_5:", "seq_cut:"):
        assert name in text
    assert "x_2_5" in text and "x_3_1" not in text
    assert "+ 64 x_2_5 <= 216" in text


def test_without_cut_and_stream():
    buf = io.StringIO()
    export_lp_with_cut(example(), None, buf)
    assert "seq_cut" not in buf.getvalue()
    assert buf.getvalue() == format_lp(example())
