import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsk import transforms as T
from gsk.errors import SignalParseError
from gsk.io import format_coefficients, format_signal, parse_signal, read_coefficients, write_coefficients

finite = st.floats(-1e6, 1e6, allow_nan=False)


def test_parse_metadata_and_samples():
    s = parse_signal("# dt=0.5\n# t0=-1\n# comment\n1\n\n2.5\n-3e-1\n")
    assert (s.dt, s.t0) == (0.5, -1.0)
    np.testing.assert_array_equal(s.samples, [1, 2.5, -0.3])
    assert s.is_real


def test_parse_complex():
    s = parse_signal("1,2\n3,-4\n")
    np.testing.assert_array_equal(s.samples, [1 + 2j, 3 - 4j])


@pytest.mark.parametrize("text,line", [("1\n2\nabc\n", 3), ("1\n1,2,3\n", 2), ("# dt=x\n1\n2\n", 1),
                                       ("1\nnan\n", 2)])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(SignalParseError) as info:
        parse_signal(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


@pytest.mark.parametrize("text", ["", "# dt=1\n", "\n\n", "5\n", "# dt=-1\n1\n2\n"])
def test_empty_or_invalid(text):
    with pytest.raises(SignalParseError):
        parse_signal(text)


@given(st.lists(finite, min_size=2, max_size=40), st.floats(1e-4, 10), finite)
def test_signal_round_trip(xs, dt, t0):
    s = T.Signal1D(np.array(xs), dt, t0)
    back = parse_signal(format_signal(s))
    assert back.dt == s.dt and back.t0 == s.t0
    np.testing.assert_array_equal(back.samples, s.samples)


def test_coefficient_file_round_trip(tmp_path):
    c = T.stockwell(T.Signal1D(np.cos(np.arange(64) * 0.3), 0.1), n_freq=8)
    path = tmp_path / "c.csv"
    write_coefficients(c, str(path))
    text = path.read_text()
    assert text.startswith("# kind=STOCKWELL\n# axis1=frequency:")
    assert sum(1 for line in text.splitlines() if not line.startswith("#")) == 8
    back = read_coefficients(str(path))
    np.testing.assert_array_equal(back.values, c.values)
    np.testing.assert_array_equal(back.axis("time"), c.axis("time"))
    assert format_coefficients(back) == text
