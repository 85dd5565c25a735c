import pytest

from syzlab.cache import HEADER_SIZE, ResolutionCache, cache_key, decode_resolution, encode_resolution
from syzlab.resolution import GradedFreeResolution, betti_table


@pytest.fixture
def M(H4):
    return H4.cyc(H4.x)


def test_roundtrip(M):
    res = GradedFreeResolution(M, 4)
    back = decode_resolution(encode_resolution(res), M)
    assert back.ranks == res.ranks
    assert back.diffs == res.diffs
    back.extend(6)
    assert betti_table(back) == betti_table(GradedFreeResolution(M, 6))


def test_hits_and_extension(M, tmp_path):
    c = ResolutionCache(tmp_path)
    a = c.resolve(M, 3)
    assert (c.hits, c.misses) == (0, 1)
    b = c.resolve(M, 2)
    assert c.hits == 1 and b.length >= 3
    c.resolve(M, 5)
    assert c.load(M, "grevlex", 40).length == 5
    # a shorter store never replaces a longer entry
    c.store(GradedFreeResolution(M, 1), "grevlex", 40)
    assert c.load(M, "grevlex", 40).length == 5
    assert a.ranks == c.load(M, "grevlex", 40).ranks[: len(a.ranks)]


def test_key_depends_on_order_and_cap(M):
    keys = {cache_key(M, "grevlex", 40), cache_key(M, "lex", 40), cache_key(M, "grevlex", 20)}
    assert len(keys) == 3


@pytest.mark.parametrize("damage", ["flip", "truncate", "version", "magic", "empty"])
def test_corrupt_entries_recompute(M, tmp_path, damage):
    c = ResolutionCache(tmp_path)
    good = c.resolve(M, 3)
    (path,) = tmp_path.glob("*.szl")
    blob = bytearray(path.read_bytes())
    if damage == "flip":
        blob[-3] ^= 0xFF
    elif damage == "truncate":
        blob = blob[: len(blob) // 2]
    elif damage == "version":
        blob[4] = 99
    elif damage == "magic":
        blob[:4] = b"XXXX"
    else:
        blob = bytearray()
    path.write_bytes(bytes(blob))
    assert c.load(M, "grevlex", 40) is None
    again = c.resolve(M, 3)
    assert again.ranks == good.ranks
    assert c.load(M, "grevlex", 40) is not None


def test_header_layout(M):
    blob = encode_resolution(GradedFreeResolution(M, 1))
    assert blob[:4] == b"SZLB" and blob[4] == 1
    assert int.from_bytes(blob[5:13], "little") == len(blob) - HEADER_SIZE
