import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotopos.comma import comma
from twotopos.core import functors, identity_nat, nattrans
from twotopos.corpus import cat, named_categories
from twotopos.errors import MissingCorpus
from twotopos.omega import build_omega
from twotopos.serialize import (
    category_from_json,
    category_to_json,
    decode_id,
    dump_json,
    encode_id,
    functor_from_json,
    functor_to_json,
    load_json,
    nattrans_from_json,
    nattrans_to_json,
)

ids = st.recursive(
    st.one_of(st.integers(), st.text(max_size=3)),
    lambda inner: st.lists(inner, max_size=3).map(tuple),
    max_leaves=8,
)


@given(ids)
def test_identifier_round_trip(x):
    assert decode_id(json.loads(json.dumps(encode_id(x)))) == x


@pytest.mark.parametrize("name", sorted(named_categories()))
def test_named_categories_round_trip(name):
    C = cat(name)
    doc = json.loads(dump_json(category_to_json(C)))
    assert category_from_json(doc) == C


def test_tuple_objects_survive():
    f = functors(cat("2"), cat("3"))[1]
    sq = comma(f, f)
    doc = json.loads(dump_json(category_to_json(sq.apex)))
    assert category_from_json(doc) == sq.apex
    assert category_from_json(json.loads(dump_json(category_to_json(build_omega(3).omega)))) == build_omega(3).omega


def test_functor_and_nattrans_round_trip():
    for F in functors(cat("span"), cat("3")):
        assert functor_from_json(json.loads(dump_json(functor_to_json(F)))) == F
    F, G = functors(cat("2"), cat("2"))[:2]
    for al in nattrans(F, G) + [identity_nat(F)]:
        back = nattrans_from_json(json.loads(dump_json(nattrans_to_json(al))))
        assert back.key == al.key


def test_files(tmp_path):
    path = tmp_path / "c.json"
    dump_json(category_to_json(cat("par")), path)
    assert category_from_json(load_json(path)) == cat("par")
    with pytest.raises(MissingCorpus):
        load_json(tmp_path / "nope.json")
