"""JSON documents for categories, functors and transformations.

Tuple identifiers are written as JSON arrays and read back as tuples, so any
identifier produced by a construction survives a round trip.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import FinCategory, FinFunctor, NatTrans
from .errors import MissingCorpus


def encode_id(x):
    if isinstance(x, tuple):
        return [encode_id(e) for e in x]
    return x


def decode_id(x):
    if isinstance(x, list):
        return tuple(decode_id(e) for e in x)
    return x


def category_to_json(C: FinCategory) -> dict:
    return {
        "objects": [encode_id(a) for a in C.objects],
        "morphisms": [{"id": encode_id(m), "src": encode_id(C.src[m]), "tgt": encode_id(C.tgt[m])} for m in C.morphisms],
        # JSON keys must be strings, so objects are keyed by their JSON text
        "identity": {json.dumps(encode_id(a)) if not isinstance(a, str) else a: encode_id(C.identity[a]) for a in C.objects},
        "compose": [[encode_id(g), encode_id(f), encode_id(h)] for (g, f), h in C.comp.items()],
    }


def _decode_key(k: str, objects):
    if k in objects:
        return k
    try:
        v = decode_id(json.loads(k))
    except ValueError:
        return k
    return v


def category_from_json(doc: dict, name: str = "") -> FinCategory:
    objects = [decode_id(a) for a in doc["objects"]]
    objset = set(objects)
    mors = [(decode_id(m["id"]), decode_id(m["src"]), decode_id(m["tgt"])) for m in doc["morphisms"]]
    ident = {_decode_key(k, objset): decode_id(v) for k, v in doc["identity"].items()}
    comp = {(decode_id(g), decode_id(f)): decode_id(h) for g, f, h in doc["compose"]}
    return FinCategory(objects, mors, ident, comp, name=name or doc.get("name", ""))


def functor_to_json(F: FinFunctor) -> dict:
    return {
        "dom": category_to_json(F.dom),
        "cod": category_to_json(F.cod),
        "obj_map": [[encode_id(a), encode_id(F.obj[a])] for a in F.dom.objects],
        "mor_map": [[encode_id(m), encode_id(F.mor[m])] for m in F.dom.morphisms],
    }


def functor_from_json(doc: dict) -> FinFunctor:
    dom = category_from_json(doc["dom"])
    cod = category_from_json(doc["cod"])
    return FinFunctor(
        dom, cod,
        {decode_id(a): decode_id(b) for a, b in doc["obj_map"]},
        {decode_id(a): decode_id(b) for a, b in doc["mor_map"]},
    )


def nattrans_to_json(alpha: NatTrans) -> dict:
    return {
        "dom": functor_to_json(alpha.dom),
        "cod": functor_to_json(alpha.cod),
        "components": [[encode_id(a), encode_id(c)] for a, c in alpha.comp.items()],
    }


def nattrans_from_json(doc: dict) -> NatTrans:
    return NatTrans(
        functor_from_json(doc["dom"]),
        functor_from_json(doc["cod"]),
        {decode_id(a): decode_id(c) for a, c in doc["components"]},
    )


def load_json(path) -> dict:
    p = Path(path)
    if not p.exists():
        raise MissingCorpus(str(p))
    return json.loads(p.read_text())


def dump_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
