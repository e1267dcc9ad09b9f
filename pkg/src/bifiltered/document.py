"""JSON documents of named filtered objects.

A document has a default ring and a table of named objects: modules, complexes,
morphisms, chain maps and ring maps.  Objects may name another ring explicitly;
scalars are never converted between rings.  Modules and complexes can be given
inline or referenced by name.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

import jsonschema

from .derived import RingMap, RingMismatch
from .exactlin import GF, QQ, Matrix, Subspace
from .exactlin.fields import ExtensionField, Rationals
from .exactlin.matrix import DimensionMismatch
from .filtcomplex import ChainMap, FilteredComplex
from .filtmod import FilteredModule, FilteredMorphism, FiltrationChain, FiltrationError

VERSION = "1"


class DocumentError(ValueError):
    """An input document violates the schema or an invariant; `pointer` is the JSON
    pointer of the offending value."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.message = message


def schema() -> dict:
    return json.loads(resources.files("bifiltered").joinpath("data/schema.json").read_text())


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


# ------------------------------------------------------------------ rings and scalars

def ring_from_json(d: dict, where: str = ""):
    try:
        if d["kind"] == "QQ":
            return QQ
        return GF(d["p"], d.get("k", 1))
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def ring_to_json(f) -> dict:
    if isinstance(f, Rationals):
        return {"kind": "QQ"}
    if isinstance(f, ExtensionField):
        return {"kind": "GF", "p": f.p, "k": f.degree}
    return {"kind": "GF", "p": f.p}


def parse_entry(field, token, where: str):
    if isinstance(field, Rationals):
        if not isinstance(token, str):
            raise DocumentError(where, f"rational entries are strings 'p' or 'p/q', got {token!r}")
        try:
            return field.parse(token)
        except ValueError as exc:
            raise DocumentError(where, str(exc)) from None
    if isinstance(token, str):
        raise DocumentError(where, f"entries over {field} are integers, got the string {token!r}; "
                                   "rationals are not reduced into a finite field")
    if not 0 <= token < field.order:
        raise DocumentError(where, f"entries over {field} are least residues in 0..{field.order - 1}, got {token}")
    return token


def format_entry(field, x):
    if isinstance(field, Rationals):
        return field.format(Fraction(x))
    return int(x)


def matrix_from_json(field, rows, shape, where: str) -> Matrix:
    r, c = shape
    if len(rows) != r:
        raise DocumentError(where, f"expected {r} rows, got {len(rows)}")
    data = []
    for i, row in enumerate(rows):
        if len(row) != c:
            raise DocumentError(f"{where}/{i}", f"expected {c} columns, got {len(row)}")
        data.append([parse_entry(field, x, f"{where}/{i}/{j}") for j, x in enumerate(row)])
    return Matrix(field, data, shape=(r, c))


def matrix_to_json(m: Matrix):
    return [[format_entry(m.field, x) for x in row] for row in m.a.tolist()]


# ------------------------------------------------------------------ document

@dataclass
class Document:
    ring: object
    objects: dict = dc_field(default_factory=dict)
    meta: dict = dc_field(default_factory=dict)
    version: str = VERSION

    def get(self, name, kinds=None):
        if name not in self.objects:
            raise DocumentError(f"/objects/{name}", f"no object named {name!r}")
        obj = self.objects[name]
        if kinds is not None and not isinstance(obj, kinds):
            wanted = " or ".join(_KIND_NAMES[k] for k in kinds)
            raise DocumentError(f"/objects/{name}", f"{name!r} is a {_kind(obj)}, expected a {wanted}")
        return obj

    def complex(self, name) -> FilteredComplex:
        """A complex, or a module viewed as a complex in degree 0."""
        obj = self.get(name, (FilteredComplex, FilteredModule))
        return FilteredComplex.from_module(obj) if isinstance(obj, FilteredModule) else obj

    def chain_map(self, name) -> ChainMap:
        """A chain map, or a morphism viewed as a chain map in degree 0."""
        obj = self.get(name, (ChainMap, FilteredMorphism))
        return ChainMap.from_morphism(obj) if isinstance(obj, FilteredMorphism) else obj

    def to_json(self) -> dict:
        return _Writer(self).document()

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return _canonical(self) == _canonical(other)


_KIND_NAMES = {FilteredModule: "module", FilteredComplex: "complex", FilteredMorphism: "morphism",
               ChainMap: "chainmap", RingMap: "ringmap"}


def _kind(obj):
    for k, name in _KIND_NAMES.items():
        if isinstance(obj, k):
            return name
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _canonical(doc: Document) -> str:
    """Serialization with every module and complex written out in place."""
    return json.dumps(_Writer(doc, inline=True).document(), sort_keys=True)


class _Writer:
    def __init__(self, doc: Document, inline=False):
        self.doc = doc
        self.names = {} if inline else {id(o): n for n, o in doc.objects.items()
                                        if isinstance(o, (FilteredModule, FilteredComplex))}

    def document(self):
        out = {"version": self.doc.version, "ring": ring_to_json(self.doc.ring),
               "objects": {n: self.obj(o) for n, o in self.doc.objects.items()}}
        if self.doc.meta:
            out["meta"] = copy.deepcopy(self.doc.meta)
        return out

    def _ring(self, out, field):
        if field != self.doc.ring:
            out["ring"] = ring_to_json(field)
        return out

    def ref(self, obj):
        return self.names.get(id(obj)) or self.obj(obj)

    def obj(self, o):
        if isinstance(o, FilteredModule):
            return self._ring({"type": "module", "dim": o.dim, "filtrations": [
                {"lo": c.lo, "steps": [matrix_to_json(s.basis) for s in c.steps]} for c in o.chains]}, o.field)
        if isinstance(o, FilteredComplex):
            return self._ring({"type": "complex", "n": o.n, "deg_lo": o.deg_lo,
                               "terms": [self.ref(t) for t in o.terms],
                               "diffs": [matrix_to_json(d) for d in o.diffs]}, o.field)
        if isinstance(o, FilteredMorphism):
            return self._ring({"type": "morphism", "source": self.ref(o.source), "target": self.ref(o.target),
                               "matrix": matrix_to_json(o.map)}, o.source.field)
        if isinstance(o, ChainMap):
            return self._ring({"type": "chainmap", "source": self.ref(o.source), "target": self.ref(o.target),
                               "components": {str(q): matrix_to_json(o.components[q]) for q in o.degrees()}},
                              o.source.field)
        if isinstance(o, RingMap):
            out = {"type": "ringmap", "source": ring_to_json(o.source), "target": ring_to_json(o.target)}
            if o.embed is not None and not o.is_identity:
                out["embed"] = [int(x) for x in o.embed]
            return out
        raise TypeError(f"cannot serialize {type(o).__name__}")


class _Reader:
    def __init__(self, data: dict):
        self.data = data
        self.ring = ring_from_json(data["ring"], "/ring")
        self.done = {}
        self.active = set()

    def field(self, d, where, default):
        return ring_from_json(d["ring"], where + "/ring") if "ring" in d else default

    def named(self, name, where, kind):
        objs = self.data["objects"]
        if name not in objs:
            raise DocumentError(where, f"reference to unknown object {name!r}")
        if objs[name]["type"] != kind:
            raise DocumentError(where, f"{name!r} is a {objs[name]['type']}, expected a {kind}")
        if name in self.active:
            raise DocumentError(where, f"cyclic reference through {name!r}")
        if name not in self.done:
            self.active.add(name)
            self.done[name] = self.build(objs[name], f"/objects/{name}", self.ring)
            self.active.discard(name)
        return self.done[name]

    def ref(self, value, where, kind, field):
        obj = self.named(value, where, kind) if isinstance(value, str) else self.build(value, where, field)
        if obj.field != field:
            raise DocumentError(where, f"object is over {obj.field}, expected {field}")
        return obj

    def build(self, d, where, default):
        kind = d["type"]
        try:
            if kind == "ringmap":
                return self.ringmap(d, where)
            f = self.field(d, where, default)
            return getattr(self, kind)(d, where, f)
        except (FiltrationError, DimensionMismatch, RingMismatch) as exc:
            raise DocumentError(where, f"{type(exc).__name__}: {exc}") from None
        except ValueError as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentError(where, str(exc)) from None

    def module(self, d, where, f):
        dim = d["dim"]
        chains = []
        for i, c in enumerate(d["filtrations"]):
            steps = []
            for k, rows in enumerate(c["steps"]):
                at = f"{where}/filtrations/{i}/steps/{k}"
                m = matrix_from_json(f, rows, (len(rows), dim), at)
                steps.append(Subspace.span(f, dim, m))
            try:
                chains.append(FiltrationChain(c["lo"], c["lo"] + len(steps) - 1, tuple(steps)))
            except FiltrationError as exc:
                raise DocumentError(f"{where}/filtrations/{i}", f"FiltrationError: {exc}") from None
        return FilteredModule(f, dim, tuple(chains))

    def complex(self, d, where, f):
        terms = [self.ref(t, f"{where}/terms/{q}", "module", f) for q, t in enumerate(d["terms"])]
        ns = {t.n for t in terms}
        n = d.get("n", ns.pop() if len(ns) == 1 else 2)
        if len(d["diffs"]) != max(len(terms) - 1, 0):
            raise DocumentError(f"{where}/diffs", f"{len(terms)} terms need {max(len(terms) - 1, 0)} differentials")
        diffs = [matrix_from_json(f, m, (terms[q + 1].dim, terms[q].dim), f"{where}/diffs/{q}")
                 for q, m in enumerate(d["diffs"])]
        for q, dq in enumerate(diffs):
            if FilteredMorphism(terms[q], terms[q + 1], dq, check=False).filtration_violation() is not None:
                raise DocumentError(f"{where}/diffs/{q}", "FilteredMorphism: differential does not respect the filtrations")
            if q + 1 < len(diffs) and not (diffs[q + 1] @ dq).is_zero():
                raise DocumentError(f"{where}/diffs/{q + 1}", "FilteredComplex: d o d != 0")
        return FilteredComplex(f, n, d["deg_lo"], terms, diffs, check=False)

    def morphism(self, d, where, f):
        s = self.ref(d["source"], f"{where}/source", "module", f)
        t = self.ref(d["target"], f"{where}/target", "module", f)
        m = matrix_from_json(f, d["matrix"], (t.dim, s.dim), f"{where}/matrix")
        try:
            return FilteredMorphism(s, t, m)
        except FiltrationError as exc:
            raise DocumentError(f"{where}/matrix", f"FilteredMorphism: {exc}") from None

    def chainmap(self, d, where, f):
        s = self.ref(d["source"], f"{where}/source", "complex", f)
        t = self.ref(d["target"], f"{where}/target", "complex", f)
        comps = {}
        for key, rows in d["components"].items():
            q = int(key)
            comps[q] = matrix_from_json(f, rows, (t.term(q).dim, s.term(q).dim), f"{where}/components/{key}")
        try:
            return ChainMap(s, t, comps)
        except (ValueError, FiltrationError) as exc:
            raise DocumentError(f"{where}/components", f"ChainMap: {exc}") from None

    def ringmap(self, d, where):
        s = ring_from_json(d["source"], where + "/source")
        t = ring_from_json(d["target"], where + "/target")
        embed = d.get("embed")
        if embed is not None and s != t and len(embed) != s.order:
            raise DocumentError(f"{where}/embed", f"embedding table needs {s.order} entries")
        return RingMap(s, t, None if s == t else embed)


def from_json(data: dict) -> Document:
    validator = jsonschema.Draft202012Validator(schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise DocumentError(_pointer(err.absolute_path), f"schema violation: {err.message}")
    r = _Reader(data)
    objects = {}
    for name in data["objects"]:
        kind = data["objects"][name]["type"]
        objects[name] = r.named(name, f"/objects/{name}", kind) if kind != "ringmap" else \
            r.build(data["objects"][name], f"/objects/{name}", r.ring)
    return Document(r.ring, objects, copy.deepcopy(data.get("meta", {})), data["version"])


def parse(path) -> Document:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"not valid JSON: {exc}") from None
    return from_json(data)


def dumps(doc: Document) -> str:
    return json.dumps(doc.to_json(), indent=2, sort_keys=True) + "\n"


def serialize(doc: Document, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(doc))
