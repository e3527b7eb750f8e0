import json
import math

import pytest

from diraclogic.algebra import DeltaNormalized, Finite
from diraclogic.operators import gaussian_state
from diraclogic.serialize import amplitude_json, document, dumps, fmt_float, state_json


def test_float_format():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(-0.0) == "0"
    assert fmt_float(2.0) == "2"
    assert fmt_float(math.inf) == "null"


def test_dumps_sorted_and_parseable():
    text = dumps({"b": [1, 2.5, None, True], "a": {"y": "é", "x": -1e-300}})
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": {"x": -1e-300, "y": "é"}, "b": [1, 2.5, None, True]}
    with pytest.raises(TypeError):
        dumps(object())


def test_amplitudes():
    assert amplitude_json(Finite(1 + 2j)) == {"kind": "amplitude", "variant": "finite", "re": 1.0, "im": 2.0}
    assert amplitude_json(DeltaNormalized(1))["variant"] == "delta_normalized"


def test_state_terms():
    doc = state_json(gaussian_state(0.5, 1.0, 0.2), ("x",))
    (term,) = doc["terms"]
    assert term["A"][0][0]["im"] == pytest.approx(0.5)
    assert doc["vars"] == ["x"] and doc["rigging"] == "Proper"


def test_document_shape():
    assert json.loads(document()) == {"version": 1, "results": [], "warnings": [], "errors": []}
