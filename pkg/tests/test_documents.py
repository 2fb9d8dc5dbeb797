from fractions import Fraction

from pvitau.documents import (DiskCache, dumps, make_cache, sequence_doc, sequence_dumps, sequence_loads)
from pvitau.poly import Poly
from pvitau.seeds import SeedParams
from pvitau.toda import CACHE, generate_sequence, scheduled


def test_sequence_round_trip_is_byte_exact():
    seq = generate_sequence("T", SeedParams(Fraction(7, 3), 2, Fraction(-1, 2)), 5, scheduled("k"))
    text = sequence_dumps(seq)
    back = sequence_loads(text)
    assert back.polys == seq.polys
    assert sequence_dumps(back) == text


def test_numbers_are_strings():
    doc = sequence_doc(generate_sequence("T", SeedParams(3, 2, 1), 3))
    assert doc["polys"][1] == ["3", "-15", "15"]
    assert doc["N"] == "3"
    assert '"15"' in dumps({"x": 15})
    assert dumps({"f": Fraction(1, 3)}).count('"1/3"') == 1


def test_disk_cache(tmp_path):
    cache = DiskCache(tmp_path)
    p = SeedParams(3, 2, 1)
    a = cache.get("T", p, 5)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    fresh = DiskCache(tmp_path)
    b = fresh.get("T", p, 4)
    assert b.polys == a.polys[:4]
    assert files[0].read_text() == sequence_dumps(a)


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("PVITAU_CACHE_DIR", str(tmp_path))
    assert isinstance(make_cache(), DiskCache)
    monkeypatch.delenv("PVITAU_CACHE_DIR")
    assert make_cache() is CACHE
