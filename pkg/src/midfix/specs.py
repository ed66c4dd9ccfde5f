"""JSON spec files for lattices, signatures, (co)algebras, and relations.

One schema per domain object, with emitters that round-trip through
`parse_*` to an identical object.  Parsing separates shape errors
(ParseError, naming the offending key) from delegated law violations,
which surface as the owning module's exceptions.
"""

from __future__ import annotations

import json
from typing import Optional

from . import dagger, fixcat, lattice as lat
from .signature import Signature, Term, signature


class ParseError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(where, f"missing key {key!r}")
    return obj[key]


def load_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("<input>", f"not valid JSON: {exc}") from exc


# -- lattices -----------------------------------------------------------------


def parse_lattice(obj: dict) -> tuple[lat.FinLattice, Optional[lat.MonotoneMap]]:
    elements = _require(obj, "elements", "lattice")
    leq = [tuple(pair) for pair in _require(obj, "leq", "lattice")]
    lattice = lat.check_lattice(elements, leq)
    if "map" not in obj:
        return lattice, None
    return lattice, lat.check_monotone(obj["map"], lattice)


def lattice_to_json(lattice: lat.FinLattice, f: Optional[lat.MonotoneMap] = None) -> dict:
    out = {
        "elements": list(lattice.elements),
        "leq": sorted([list(p) for p in lattice.leq]),
    }
    if f is not None:
        out["map"] = dict(f.mapping)
    return out


# -- signatures and (co)algebras ----------------------------------------------


def parse_signature(obj: dict) -> Signature:
    ops = _require(obj, "ops", "signature")
    pairs = []
    for i, op in enumerate(ops):
        name = _require(op, "name", f"signature.ops[{i}]")
        arity = _require(op, "arity", f"signature.ops[{i}]")
        if not isinstance(arity, int) or arity < 0:
            raise ParseError(f"signature.ops[{i}]", f"bad arity {arity!r}")
        pairs.append((name, arity))
    return signature(pairs)


def signature_to_json(sig: Signature) -> dict:
    return {"ops": [{"name": name, "arity": arity} for name, arity in sig.ops]}


def _parse_flat_term(sig: Signature, obj: dict, where: str) -> Term:
    symbol = _require(obj, "op", where)
    args = _require(obj, "args", where)
    if symbol not in sig.symbols:
        raise ParseError(where, f"unknown operation symbol {symbol!r}")
    if len(args) != sig.arity(symbol):
        raise ParseError(where, f"{symbol!r} expects {sig.arity(symbol)} args")
    return Term(sig, 1, ("op", symbol, tuple(("var", x) for x in args)))


def parse_coalgebra(obj: dict) -> fixcat.Coalgebra:
    sig = parse_signature(_require(obj, "sig", "coalgebra"))
    carrier = _require(obj, "carrier", "coalgebra")
    structure_obj = _require(obj, "structure", "coalgebra")
    structure = {}
    for x, entry in structure_obj.items():
        if x not in carrier:
            raise ParseError("coalgebra.structure", f"unknown carrier element {x!r}")
        term = _parse_flat_term(sig, entry, f"coalgebra.structure[{x!r}]")
        for leaf in term.leaves():
            if leaf not in carrier:
                raise ParseError(
                    f"coalgebra.structure[{x!r}]", f"unknown generator {leaf!r}"
                )
        structure[x] = term
    return fixcat.coalgebra(sig, carrier, structure)


def coalgebra_to_json(b: fixcat.Coalgebra) -> dict:
    structure = {}
    for x, term in b.structure:
        _, symbol, children = term.tree
        structure[x] = {"op": symbol, "args": [c[1] for c in children]}
    return {
        "sig": signature_to_json(b.sig),
        "carrier": list(b.carrier),
        "structure": structure,
    }


def parse_algebra(obj: dict) -> fixcat.Algebra:
    sig = parse_signature(_require(obj, "sig", "algebra"))
    carrier = _require(obj, "carrier", "algebra")
    structure = {}
    for i, entry in enumerate(_require(obj, "structure", "algebra")):
        where = f"algebra.structure[{i}]"
        term = _parse_flat_term(sig, entry, where)
        for leaf in term.leaves():
            if leaf not in carrier:
                raise ParseError(where, f"unknown carrier element {leaf!r}")
        value = _require(entry, "value", where)
        if value not in carrier:
            raise ParseError(where, f"value {value!r} outside the carrier")
        structure[term] = value
    return fixcat.algebra(sig, carrier, structure)


def algebra_to_json(a: fixcat.Algebra) -> dict:
    structure = []
    for term, value in a.structure:
        _, symbol, children = term.tree
        structure.append(
            {"op": symbol, "args": [c[1] for c in children], "value": value}
        )
    return {
        "sig": signature_to_json(a.sig),
        "carrier": list(a.carrier),
        "structure": structure,
    }


# -- relations and functors ---------------------------------------------------


def parse_relation(obj: dict) -> dagger.FinRel:
    source = _require(obj, "source", "relation")
    target = _require(obj, "target", "relation")
    pairs = [tuple(p) for p in _require(obj, "pairs", "relation")]
    for x, y in pairs:
        if x not in source:
            raise ParseError("relation.pairs", f"{x!r} not in source")
        if y not in target:
            raise ParseError("relation.pairs", f"{y!r} not in target")
    return dagger.finrel(source, target, pairs)


def relation_to_json(r: dagger.FinRel) -> dict:
    return {
        "source": list(r.source),
        "target": list(r.target),
        "pairs": [list(p) for p in r.pairs],
    }


def parse_functor(obj: dict) -> dagger.RelEndo:
    kind = _require(obj, "kind", "functor")
    if kind == "identity":
        return dagger.identity_endofunctor()
    if kind == "constant":
        return dagger.constant_endofunctor(_require(obj, "constant", "functor"))
    if kind == "pad":
        return dagger.pad_endofunctor(_require(obj, "constant", "functor"))
    if kind == "table":
        object_table = {}
        for i, entry in enumerate(_require(obj, "objects", "functor")):
            where = f"functor.objects[{i}]"
            source = dagger._sorted_obj(_require(entry, "object", where))
            object_table[source] = dagger._sorted_obj(_require(entry, "image", where))
        rel_table = {}
        for i, entry in enumerate(_require(obj, "relations", "functor")):
            where = f"functor.relations[{i}]"
            rel = parse_relation(entry)
            rel_table[rel] = parse_relation(_require(entry, "image", where))
        return dagger.table_endofunctor(object_table, rel_table)
    raise ParseError("functor.kind", f"unknown kind {kind!r}")
