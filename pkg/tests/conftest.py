import random

import pytest

from concat_reach_core.concat import ConcatMachine
from concat_reach_core.dfa import Dfa

MASLOV_A = """\
dfa A
states 3
alphabet a b
initial 1
final 3
a: (1,2,3)
b: id
"""

MASLOV_B = """\
dfa B
states 3
alphabet a b
initial 1
final 3
a: (2,3)
b: [1..2:+1]
"""

MASLOV_CERT = """\
cert
focus 1'
base {}
target {1..n}
baseword ε
entry 1: a^3
entry 2: a^3b
entry 3: a^3b^2
"""


@pytest.fixture
def maslov_a() -> Dfa:
    return Dfa(3, "ab", {"a": "(1,2,3)", "b": "id"}, finals=[3], name="A")


@pytest.fixture
def maslov_b() -> Dfa:
    return Dfa(3, "ab", {"a": "(2,3)", "b": "[1..2:+1]"}, finals=[3], name="B")


@pytest.fixture
def maslov(maslov_a, maslov_b) -> ConcatMachine:
    return ConcatMachine(maslov_a, maslov_b)


@pytest.fixture
def maslov_files(tmp_path):
    a = tmp_path / "a.dfa"
    b = tmp_path / "b.dfa"
    cert = tmp_path / "maslov.cert"
    a.write_text(MASLOV_A, encoding="utf8")
    b.write_text(MASLOV_B, encoding="utf8")
    cert.write_text(MASLOV_CERT, encoding="utf8")
    return {"A": str(a), "B": str(b), "cert": str(cert), "dir": tmp_path}


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20170417)


@pytest.fixture(autouse=True)
def clean_settings_env(monkeypatch):
    for key in ("WORKERS", "MAX_ENUMERATE", "MAX_STATES", "LOG_LEVEL"):
        monkeypatch.delenv("CONCAT_REACH_" + key, raising=False)
