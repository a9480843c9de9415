"""Declarative model files.

A model is one JSON document::

    {"frame": ["1", "2", "3"],
     "priors": [{"name": "C", "contexts": ["Co1"], "extremes": [[1, 0, 0], ...]}],
     "evidence": [{"name": "O1", "likelihood": [1, 0.5, 0.2]},
                  {"name": "Ob", "lower": [0.1, 0, 0], "upper": [0.2, 0.5, 1]},
                  {"name": "Oc", "extremes": [[0.1, 0.2, 0.3], [0.4, 0.2, 0.3]]}],
     "queries": [{"op": "condition", "prior": "C", "evidence": ["O1"], "method": "both"}]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .errors import (
    ModelBoundsError,
    ModelSyntaxError,
    SchemaError,
    UnknownReference,
    VectorLengthMismatch,
)
from .frame import MAX_FRAME

SUM_TOL = 1e-9

OPS = ("envelope", "conjunction", "disjunction", "fuse-obs", "combine", "condition", "compare", "verify")
MODES = ("frechet", "independent")
METHODS = ("choquet", "upperlower", "both")
DEFAULT_TRIALS = 100_000


@dataclass(frozen=True)
class PriorDecl:
    name: str
    extremes: tuple[tuple[float, ...], ...]
    contexts: tuple[str, ...] = ()


@dataclass(frozen=True)
class EvidenceDecl:
    name: str
    likelihood: tuple[float, ...] | None = None
    lower: tuple[float, ...] | None = None
    upper: tuple[float, ...] | None = None
    extremes: tuple[tuple[float, ...], ...] | None = None


@dataclass(frozen=True)
class QueryRecord:
    op: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ModelFile:
    frame: tuple[str, ...]
    priors: tuple[PriorDecl, ...] = ()
    evidence: tuple[EvidenceDecl, ...] = ()
    queries: tuple[QueryRecord, ...] = ()

    def prior(self, name: str) -> PriorDecl:
        for p in self.priors:
            if p.name == name:
                return p
        raise UnknownReference(f"no prior named {name!r}")

    def evidence_decl(self, name: str) -> EvidenceDecl:
        for e in self.evidence:
            if e.name == name:
                return e
        raise UnknownReference(f"no evidence named {name!r}")


def parse_model(text: str) -> ModelFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return _Validator(doc).model()


def load_model(path) -> ModelFile:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


def dump_model(model: ModelFile) -> str:
    doc = {
        "frame": list(model.frame),
        "priors": [
            {"name": p.name, "contexts": list(p.contexts), "extremes": [list(v) for v in p.extremes]}
            for p in model.priors
        ],
        "evidence": [_dump_evidence(e) for e in model.evidence],
        "queries": [{"op": q.op, **q.params} for q in model.queries],
    }
    return json.dumps(doc, indent=2)


def _dump_evidence(e: EvidenceDecl) -> dict:
    out = {"name": e.name}
    if e.likelihood is not None:
        out["likelihood"] = list(e.likelihood)
    if e.lower is not None:
        out["lower"], out["upper"] = list(e.lower), list(e.upper)
    if e.extremes is not None:
        out["extremes"] = [list(v) for v in e.extremes]
    return out


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


class _Validator:
    def __init__(self, doc: Any):
        if not isinstance(doc, dict):
            raise SchemaError("the model must be a JSON object")
        self.doc = doc

    def model(self) -> ModelFile:
        doc = self.doc
        unknown = set(doc) - {"frame", "priors", "evidence", "queries"}
        if unknown:
            raise SchemaError(f"unknown top-level keys {sorted(unknown)}")
        frame = doc.get("frame")
        if not isinstance(frame, list) or not frame:
            raise SchemaError("'frame' must be a nonempty list of labels")
        self.frame = tuple(str(u) for u in frame)
        if len(set(self.frame)) != len(self.frame):
            raise SchemaError("frame labels must be distinct")
        if len(self.frame) > MAX_FRAME:
            raise SchemaError(f"frame larger than {MAX_FRAME} outcomes")
        priors = tuple(self._prior(i, p) for i, p in enumerate(self._list("priors")))
        evidence = tuple(self._evidence(i, e) for i, e in enumerate(self._list("evidence")))
        names = [p.name for p in priors] + [e.name for e in evidence]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise SchemaError(f"duplicate names {sorted(dup)}")
        self.prior_names = {p.name for p in priors}
        self.evidence_names = {e.name for e in evidence}
        queries = tuple(self._query(i, q) for i, q in enumerate(self._list("queries")))
        return ModelFile(self.frame, priors, evidence, queries)

    def _list(self, key):
        value = self.doc.get(key, [])
        if not isinstance(value, list):
            raise SchemaError(f"'{key}' must be a list")
        return value

    def _vector(self, raw, where) -> tuple[float, ...]:
        if not isinstance(raw, list) or not all(_is_number(x) for x in raw):
            raise SchemaError(f"{where}: expected a list of numbers")
        if len(raw) != len(self.frame):
            raise VectorLengthMismatch(
                f"{where}: vector of length {len(raw)} for a frame of size {len(self.frame)}"
            )
        return tuple(float(x) for x in raw)

    def _unit_vector(self, raw, where):
        v = self._vector(raw, where)
        if any(x < 0 or x > 1 for x in v):
            raise SchemaError(f"{where}: values must lie in [0, 1]")
        return v

    def _name(self, decl, where):
        if not isinstance(decl, dict):
            raise SchemaError(f"{where}: expected an object")
        name = decl.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaError(f"{where}: missing 'name'")
        return name

    def _prior(self, i, decl) -> PriorDecl:
        name = self._name(decl, f"priors[{i}]")
        where = f"prior {name!r}"
        raw = decl.get("extremes")
        if not isinstance(raw, list) or not raw:
            raise SchemaError(f"{where}: 'extremes' must be a nonempty list")
        extremes = tuple(self._unit_vector(v, where) for v in raw)
        for v in extremes:
            if abs(sum(v) - 1.0) > SUM_TOL:
                raise SchemaError(f"{where}: extreme {list(v)} does not sum to 1")
        contexts = decl.get("contexts", [])
        if not isinstance(contexts, list) or not all(isinstance(c, str) for c in contexts):
            raise SchemaError(f"{where}: 'contexts' must be a list of strings")
        return PriorDecl(name, extremes, tuple(contexts))

    def _evidence(self, i, decl) -> EvidenceDecl:
        name = self._name(decl, f"evidence[{i}]")
        where = f"evidence {name!r}"
        forms = [k for k in ("likelihood", "lower", "extremes") if k in decl]
        if "upper" in decl and "lower" not in decl:
            forms.append("upper")
        if len(forms) != 1:
            raise SchemaError(
                f"{where}: give exactly one of 'likelihood', 'lower'/'upper', 'extremes'"
            )
        if "likelihood" in decl:
            return EvidenceDecl(name, likelihood=self._unit_vector(decl["likelihood"], where))
        if "extremes" in decl:
            raw = decl["extremes"]
            if not isinstance(raw, list) or not raw:
                raise SchemaError(f"{where}: 'extremes' must be a nonempty list")
            return EvidenceDecl(name, extremes=tuple(self._unit_vector(v, where) for v in raw))
        if "upper" not in decl or "lower" not in decl:
            raise SchemaError(f"{where}: 'lower' and 'upper' go together")
        lower = self._unit_vector(decl["lower"], where)
        upper = self._unit_vector(decl["upper"], where)
        for label, lo, up in zip(self.frame, lower, upper):
            if lo > up:
                raise ModelBoundsError(f"{where}: lower {lo} > upper {up} at outcome {label!r}")
        return EvidenceDecl(name, lower=lower, upper=upper)

    # -- queries ----------------------------------------------------------

    def _query(self, i, q) -> QueryRecord:
        where = f"queries[{i}]"
        if not isinstance(q, dict):
            raise SchemaError(f"{where}: expected an object")
        op = q.get("op")
        if op not in OPS:
            raise SchemaError(f"{where}: unknown op {op!r}; expected one of {', '.join(OPS)}")
        params = {k: v for k, v in q.items() if k != "op"}
        getattr(self, "_check_" + op.replace("-", "_"))(params, f"{where} ({op})")
        if "events" in params:
            self._events(params["events"], where)
        return QueryRecord(op, params)

    def _events(self, events, where):
        if events == "all":
            return
        if not isinstance(events, list):
            raise SchemaError(f"{where}: 'events' must be \"all\" or a list of label lists")
        for ev in events:
            if not isinstance(ev, list):
                raise SchemaError(f"{where}: each event is a list of labels")
            for label in ev:
                if str(label) not in self.frame:
                    raise UnknownReference(f"{where}: unknown outcome {label!r}")

    def _ref(self, params, key, where, kinds):
        if key not in params:
            raise SchemaError(f"{where}: missing '{key}'")
        name = params[key]
        if not isinstance(name, str):
            raise SchemaError(f"{where}: '{key}' must be a name")
        pool = set()
        if "prior" in kinds:
            pool |= self.prior_names
        if "evidence" in kinds:
            pool |= self.evidence_names
        if name not in pool:
            raise UnknownReference(f"{where}: unknown {'/'.join(kinds)} {name!r}")

    def _evidence_refs(self, params, where, minimum=1):
        raw = params.get("evidence")
        if isinstance(raw, str):
            raw = [raw]
        if not isinstance(raw, list) or len(raw) < minimum:
            raise SchemaError(f"{where}: 'evidence' needs at least {minimum} name(s)")
        for name in raw:
            if name not in self.evidence_names:
                raise UnknownReference(f"{where}: unknown evidence {name!r}")
        self._choice(params, "mode", MODES, where)

    def _choice(self, params, key, allowed, where):
        if key in params and params[key] not in allowed:
            raise SchemaError(f"{where}: '{key}' must be one of {', '.join(allowed)}")

    def _pair(self, params, where):
        if ("priors" in params) == ("evidence" in params):
            raise SchemaError(f"{where}: give either 'priors' or 'evidence', a list of two names")
        key = "priors" if "priors" in params else "evidence"
        names = params[key]
        if not isinstance(names, list) or len(names) != 2:
            raise SchemaError(f"{where}: '{key}' must list exactly two names")
        pool = self.prior_names if key == "priors" else self.evidence_names
        for name in names:
            if name not in pool:
                raise UnknownReference(f"{where}: unknown {key} name {name!r}")

    def _check_envelope(self, params, where):
        if ("prior" in params) == ("evidence" in params):
            raise SchemaError(f"{where}: give exactly one of 'prior' or 'evidence'")
        if "prior" in params:
            self._ref(params, "prior", where, ("prior",))
        else:
            self._evidence_refs(params, where)

    def _check_conjunction(self, params, where):
        self._pair(params, where)
        if not isinstance(params.get("assume_no_interaction", False), bool):
            raise SchemaError(f"{where}: 'assume_no_interaction' must be a boolean")

    def _check_disjunction(self, params, where):
        self._pair(params, where)

    def _check_fuse_obs(self, params, where):
        self._evidence_refs(params, where, minimum=2)
        self._choice(params, "then", ("intervals", "possibility"), where)

    def _check_combine(self, params, where):
        self._ref(params, "prior", where, ("prior",))
        self._evidence_refs(params, where)

    def _check_condition(self, params, where):
        self._check_combine(params, where)
        self._choice(params, "method", METHODS, where)

    def _check_compare(self, params, where):
        self._ref(params, "left", where, ("prior", "evidence"))
        self._ref(params, "right", where, ("prior", "evidence"))

    def _check_verify(self, params, where):
        self._check_combine(params, where)
        for key in ("trials", "seed"):
            if key in params and (not isinstance(params[key], int) or isinstance(params[key], bool)):
                raise SchemaError(f"{where}: '{key}' must be an integer")
        if params.get("trials", 1) < 1:
            raise SchemaError(f"{where}: 'trials' must be positive")
