"""JSON documents for actions and globalizations.

Action document::

    {"name": "...",
     "group": {"order": n, "table": [[...], ...]},
     "ring": {"blocks": [{"k": 1, "p": 5, "e": 1}, ...]},
     "domains": {"g": [blocks]},
     "alpha": {"g": {"block_map": [[src, tgt], ...], "conjugators": {"tgt": matrix}}},
     "twist": {"g,h": {"entries": {"block": matrix}}}}

Group elements are table indices with 0 the identity. Matrices are
row-major integer arrays. A missing conjugator means the identity matrix
and a missing twist entry means the zero matrix. Parsing checks structure
only; the axioms are left to the verifier.
"""

from __future__ import annotations

import json
from itertools import product

from .action import PartialIso, TwistedPartialAction
from .groups import GroupError, build_group
from .rings import BlockIso, BlockType, ProductRing, RingElement, is_prime, mat_identity, mat_zero


class SchemaError(ValueError):
    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


def _need(cond, path, reason):
    if not cond:
        raise SchemaError(path, reason)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _matrix(m, k, path):
    _need(isinstance(m, list) and len(m) == k, path, f"expected a {k}x{k} matrix")
    for i, row in enumerate(m):
        _need(isinstance(row, list) and len(row) == k, f"{path}[{i}]", f"expected {k} entries")
        for j, x in enumerate(row):
            _need(_is_int(x), f"{path}[{i}][{j}]", "not an integer")
    return tuple(tuple(row) for row in m)


def _parse_group(doc):
    _need(isinstance(doc, dict), "group", "expected an object")
    n = doc.get("order")
    _need(_is_int(n) and n >= 1, "group.order", "expected a positive integer")
    table = doc.get("table")
    _need(isinstance(table, list) and len(table) == n, "group.table", f"expected {n} rows")
    for i, row in enumerate(table):
        _need(isinstance(row, list) and len(row) == n, f"group.table[{i}]", f"expected {n} entries")
        for j, x in enumerate(row):
            _need(_is_int(x) and 0 <= x < n, f"group.table[{i}][{j}]", "not an element index")
    try:
        G = build_group(table)
    except GroupError as exc:
        raise SchemaError("group.table", str(exc)) from exc
    _need(G.identity == 0, "group.table", "element 0 must be the identity")
    return G


def _parse_ring(doc):
    _need(isinstance(doc, dict), "ring", "expected an object")
    blocks = doc.get("blocks")
    _need(isinstance(blocks, list) and blocks, "ring.blocks", "expected a non-empty list")
    out = []
    for i, b in enumerate(blocks):
        path = f"ring.blocks[{i}]"
        _need(isinstance(b, dict), path, "expected an object")
        k, p, e = b.get("k"), b.get("p"), b.get("e", 1)
        _need(_is_int(k) and k >= 1, f"{path}.k", "expected a positive integer")
        _need(_is_int(p), f"{path}.p", "expected an integer")
        _need(is_prime(p), f"{path}.p", "not prime")
        _need(_is_int(e) and e >= 1, f"{path}.e", "expected a positive integer")
        out.append(BlockType(k, p, e))
    return ProductRing(tuple(out))


def _parse_element(entries, ring, path):
    _need(isinstance(entries, dict), path, "expected an object of block -> matrix")
    mats = [mat_zero(b.k) for b in ring.blocks]
    for key, m in entries.items():
        _need(key.isdigit() and int(key) < len(ring), f"{path}.{key}", "not a block index")
        i = int(key)
        mats[i] = _matrix(m, ring.blocks[i].k, f"{path}.{key}")
    return ring.element(mats)


def _keyed(doc, key, n, path):
    val = doc.get(key)
    _need(isinstance(val, dict), path, "expected an object keyed by group element")
    out = {}
    for g in range(n):
        _need(str(g) in val, f"{path}.{g}", "missing")
        out[g] = val[str(g)]
    return out


def action_from_doc(doc) -> TwistedPartialAction:
    _need(isinstance(doc, dict), "$", "expected an object")
    G = _parse_group(doc.get("group"))
    ring = _parse_ring(doc.get("ring"))
    n, m = G.order, len(ring)

    D = []
    for g, blocks in _keyed(doc, "domains", n, "domains").items():
        _need(isinstance(blocks, list), f"domains.{g}", "expected a list of block indices")
        for j, b in enumerate(blocks):
            _need(_is_int(b) and 0 <= b < m, f"domains.{g}[{j}]", "not a block index")
        D.append(frozenset(blocks))

    alpha = []
    for g, item in _keyed(doc, "alpha", n, "alpha").items():
        path = f"alpha.{g}"
        _need(isinstance(item, dict), path, "expected an object")
        bm = item.get("block_map", [])
        _need(isinstance(bm, list), f"{path}.block_map", "expected a list of pairs")
        pairs = {}
        for j, pair in enumerate(bm):
            _need(isinstance(pair, list) and len(pair) == 2 and all(_is_int(x) and 0 <= x < m for x in pair),
                  f"{path}.block_map[{j}]", "expected [source, target] block indices")
            _need(pair[0] not in pairs, f"{path}.block_map[{j}]", "source block repeated")
            pairs[pair[0]] = pair[1]
        conj = item.get("conjugators", {})
        _need(isinstance(conj, dict), f"{path}.conjugators", "expected an object")
        isos = []
        for s, t in sorted(pairs.items()):
            k = ring.blocks[t].k
            if str(t) in conj:
                c = _matrix(conj[str(t)], k, f"{path}.conjugators.{t}")
                c = tuple(tuple(x % ring.modulus(t) for x in row) for row in c)
            else:
                c = mat_identity(k)
            isos.append(BlockIso(s, t, c))
        alpha.append(PartialIso(frozenset(pairs), frozenset(pairs.values()), tuple(isos)))

    tw = doc.get("twist", {})
    _need(isinstance(tw, dict), "twist", "expected an object keyed by \"g,h\"")
    w = {}
    for g, h in product(range(n), repeat=2):
        key = f"{g},{h}"
        if key in tw:
            item = tw[key]
            _need(isinstance(item, dict) and "entries" in item, f"twist.{key}", "expected {\"entries\": ...}")
            w[(g, h)] = _parse_element(item["entries"], ring, f"twist.{key}.entries")
        else:
            w[(g, h)] = ring.zero()
    name = doc.get("name", "")
    _need(isinstance(name, str), "name", "expected a string")
    return TwistedPartialAction(G, ring, tuple(D), tuple(alpha), w, name=name)


def _element_doc(x: RingElement):
    return {str(i): [list(r) for r in m] for i, m in enumerate(x.entries) if any(v for r in m for v in r)}


def action_to_doc(tpa: TwistedPartialAction) -> dict:
    G, ring = tpa.group, tpa.ring
    doc = {
        "group": {"order": G.order, "table": [list(r) for r in G.table]},
        "ring": {"blocks": [{"k": b.k, "p": b.p, "e": b.e} for b in ring.blocks]},
        "domains": {str(g): sorted(tpa.D[g]) for g in G.elements},
        "alpha": {},
        "twist": {},
    }
    if tpa.name:
        doc = {"name": tpa.name, **doc}
    for g in G.elements:
        al = tpa.alpha[g]
        conj = {str(i.target): [list(r) for r in i.conjugator] for i in al.isos
                if i.conjugator != mat_identity(len(i.conjugator))}
        entry = {"block_map": [[i.source, i.target] for i in al.isos]}
        if conj:
            entry["conjugators"] = conj
        doc["alpha"][str(g)] = entry
    for (g, h), v in sorted(tpa.w.items()):
        doc["twist"][f"{g},{h}"] = {"entries": _element_doc(v)}
    return doc


def parse(text) -> TwistedPartialAction:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg}") from exc
    return action_from_doc(doc)


def dumps(tpa: TwistedPartialAction) -> str:
    return json.dumps(action_to_doc(tpa), indent=1)


def load(path) -> TwistedPartialAction:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- globalizations -----------------------------------------------------------


def globalization_to_doc(res) -> dict:
    doc = {
        "kind": "globalization",
        "name": res.name,
        "action": action_to_doc(res.action),
        "ambient": action_to_doc(res.beta),
        "embedding": [[s, t, [list(r) for r in c]] for s, t, c in res.embedding.maps],
        "base_blocks": {str(k): v for k, v in res.base_blocks.items()},
        "reps": {str(k): list(v) for k, v in res.reps.items()},
    }
    if res.wt is not None:
        doc["extended_twist"] = {f"{g},{h}": {"entries": _element_doc(v)} for (g, h), v in sorted(res.wt.wt.items())}
    return doc


def globalization_from_doc(doc):
    from .globalization import BlockEmbedding, ExtendedTwist, GlobalizationResult

    _need(isinstance(doc, dict) and doc.get("kind") == "globalization", "kind",
          "expected \"globalization\"")
    tpa = action_from_doc(doc.get("action"))
    try:
        beta = action_from_doc(doc.get("ambient"))
    except SchemaError as exc:
        raise SchemaError(f"ambient.{exc.path}", exc.reason) from exc
    _need(beta.group == tpa.group, "ambient.group", "differs from the action's group")
    emb = doc.get("embedding")
    _need(isinstance(emb, list), "embedding", "expected a list of [source, target, conjugator]")
    maps = []
    for j, item in enumerate(emb):
        path = f"embedding[{j}]"
        _need(isinstance(item, list) and len(item) == 3, path, "expected [source, target, conjugator]")
        s, t, c = item
        _need(_is_int(s) and 0 <= s < len(tpa.ring), f"{path}[0]", "not a block of the action's ring")
        _need(_is_int(t) and 0 <= t < len(beta.ring), f"{path}[1]", "not a block of the ambient ring")
        _need(tpa.ring.blocks[s] == beta.ring.blocks[t], path, "block types differ")
        maps.append((s, t, _matrix(c, tpa.ring.blocks[s].k, f"{path}[2]")))
    wt = None
    if "extended_twist" in doc:
        vals = {}
        for key, item in doc["extended_twist"].items():
            g, h = (int(x) for x in key.split(","))
            vals[(g, h)] = _parse_element(item["entries"], tpa.ring, f"extended_twist.{key}.entries")
        wt = ExtendedTwist(tpa, vals)
    base_blocks = {int(k): v for k, v in doc.get("base_blocks", {}).items()}
    reps = {int(k): tuple(v) for k, v in doc.get("reps", {}).items()}
    res = GlobalizationResult(tpa, wt, beta.ring, beta, BlockEmbedding(tpa.ring, beta.ring, tuple(maps)),
                              base_blocks=base_blocks, reps=reps, name=doc.get("name", ""))
    return res.finish()


def load_document(path):
    """An action or a globalization, depending on the document's ``kind``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg}") from exc
    if isinstance(doc, dict) and doc.get("kind") == "globalization":
        return globalization_from_doc(doc)
    return action_from_doc(doc)
