import json
from dataclasses import dataclass

import numpy as np

from heckesign.reports import csv_text, dumps, to_plain, write_csv, write_json


@dataclass
class _Result:
    value: float

    def as_dict(self):
        return {"value": self.value, "array": np.arange(3)}


def test_to_plain_converts_numpy_and_nested_objects():
    plain = to_plain({
        "int": np.int64(3),
        "float": np.float64(0.5),
        "bool": np.bool_(True),
        "tuple": (1, 2),
        "result": _Result(1.5),
        1: "key",
    })
    assert plain == {
        "int": 3,
        "float": 0.5,
        "bool": True,
        "tuple": [1, 2],
        "result": {"value": 1.5, "array": [0, 1, 2]},
        "1": "key",
    }
    assert type(plain["int"]) is int
    assert type(plain["bool"]) is bool


def test_dumps_is_sorted_and_newline_terminated():
    text = dumps({"b": 1, "a": [0.1, 2]})
    assert text == '{\n  "a": [\n    0.1,\n    2\n  ],\n  "b": 1\n}\n'
    assert json.loads(text) == {"a": [0.1, 2], "b": 1}


def test_dumps_is_deterministic():
    obj = {"z": {"y": 1.0 / 3, "x": np.float64(2.0) / 7}, "a": _Result(0.1)}
    assert dumps(obj) == dumps(obj)


def test_write_json(tmp_path):
    path = write_json(tmp_path / "sub" / "r.json", {"k": 1})
    assert path.read_bytes() == b'{\n  "k": 1\n}\n'


def test_csv_text_uses_repr_for_floats():
    text = csv_text(["p", "x"], [(2, 0.1), (3, np.float64(1 / 3)), (5, "")])
    assert text == "p,x\n2,0.1\n3,0.3333333333333333\n5,\n"


def test_write_csv(tmp_path):
    path = write_csv(tmp_path / "t.csv", ["a"], [(np.int64(1),), (2,)])
    assert path.read_bytes() == b"a\n1\n2\n"
