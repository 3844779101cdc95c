import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photon_spinor import _accel
from photon_spinor.output import NonFiniteOutput, dumps_csv, dumps_json, format_float


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_format_round_trips(x):
    assert float(format_float(x)) == x


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_outputs_refused(bad):
    with pytest.raises(NonFiniteOutput):
        dumps_json({"x": bad})
    with pytest.raises(NonFiniteOutput):
        dumps_csv(["x"], [[bad]])


def test_complex_and_arrays_serialize_as_pairs():
    text = dumps_json({"z": 1 + 2j, "v": np.array([1j, 2.0])})
    assert '"z": [\n    1.0,\n    2.0\n  ]' in text


def test_csv_quoting_and_line_endings():
    text = dumps_csv(["a", "b"], [["x,y", 0.1]])
    assert text == 'a,b\r\n"x,y",0.10000000000000001\r\n'


@pytest.mark.parametrize("value, expected", [("numpy", "numpy"), ("", "numba"), ("NUMBA", "numba")])
def test_backend_selection(monkeypatch, value, expected):
    monkeypatch.setenv(_accel.BACKEND_ENV, value)
    assert _accel.requested_backend() == (expected if _accel.HAVE_NUMBA else "numpy")


def test_bad_backend_name(monkeypatch):
    monkeypatch.setenv(_accel.BACKEND_ENV, "fortran")
    with pytest.raises(ValueError):
        _accel.requested_backend()


@pytest.mark.parametrize("raw, expected", [(None, None), ("2", 2)])
def test_thread_cap(monkeypatch, raw, expected):
    if raw is None:
        monkeypatch.delenv(_accel.THREADS_ENV, raising=False)
    else:
        monkeypatch.setenv(_accel.THREADS_ENV, raw)
    assert _accel.thread_cap() == expected
    _accel.apply_thread_cap()


def test_thread_cap_must_be_positive(monkeypatch):
    monkeypatch.setenv(_accel.THREADS_ENV, "0")
    with pytest.raises(ValueError):
        _accel.thread_cap()
