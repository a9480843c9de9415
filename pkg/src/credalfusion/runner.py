"""Execute the queries of a model file and render the results as tables."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import credal, evidential, fusion, oracle
from .errors import CredalError
from .frame import Frame, IntervalTable
from .model import DEFAULT_TRIALS, ModelFile

logger = logging.getLogger(__name__)

INTERVAL_HEADER = ("query", "event", "lower", "upper")


@dataclass
class Block:
    """One rendered table: a header and rows of already-typed cells."""

    header: tuple
    rows: list


class QueryFailed(Exception):
    def __init__(self, index: int, cause: CredalError):
        self.index = index
        self.cause = cause
        super().__init__(f"q{index}: {cause.code}: {cause}")


class Session:
    """Builds the declared objects of a model lazily and answers its queries."""

    def __init__(self, model: ModelFile, seed: int = 0):
        self.model = model
        self.seed = seed
        self.frame = Frame(model.frame)
        self._priors = {}
        self._evidence = {}

    def prior(self, name: str) -> credal.CredalSet:
        if name not in self._priors:
            decl = self.model.prior(name)
            self._priors[name] = credal.CredalSet.from_points(
                self.frame, decl.extremes, decl.contexts
            )
        return self._priors[name]

    def evidence(self, name: str) -> evidential.EvidenceSet:
        if name not in self._evidence:
            decl = self.model.evidence_decl(name)
            if decl.likelihood is not None:
                e = evidential.EvidenceSet.precise(self.frame, decl.likelihood)
            elif decl.extremes is not None:
                e = evidential.EvidenceSet.from_likelihoods(self.frame, decl.extremes)
            else:
                e = evidential.interval_evidence(self.frame, decl.lower, decl.upper)
            self._evidence[name] = evidential.canonicalize(e)
        return self._evidence[name]

    def fused_evidence(self, params) -> evidential.EvidenceSet:
        names = params["evidence"]
        if isinstance(names, str):
            names = [names]
        join = (
            evidential.observe_and_frechet
            if params.get("mode", "independent") == "frechet"
            else evidential.observe_and_independent
        )
        result = self.evidence(names[0])
        for name in names[1:]:
            result = join(result, self.evidence(name))
        return result

    def events(self, params) -> list[int]:
        wanted = params.get("events", "all")
        if wanted == "all":
            return self.frame.all_events()
        return [self.frame.event(ev) for ev in wanted]

    def run(self) -> list[Block]:
        blocks = []
        for i, q in enumerate(self.model.queries, start=1):
            logger.debug("running query %d (%s)", i, q.op)
            try:
                blocks.extend(getattr(self, "_" + q.op.replace("-", "_"))(f"q{i}", q.params))
            except CredalError as exc:
                raise QueryFailed(i, exc) from exc
        return blocks

    # -- one method per query op -----------------------------------------

    def _interval_block(self, qid, table: IntervalTable) -> Block:
        rows = [(qid, ",".join(labels), lo, up) for labels, lo, up in table.rows()]
        return Block(INTERVAL_HEADER, rows)

    def _named_table(self, name, events):
        if name in self.model_prior_names:
            return credal.envelope_of(self.prior(name)).restrict(events)
        pi = evidential.possibility_of(self.evidence(name))
        return evidential.consistency_table(pi).restrict(events)

    @property
    def model_prior_names(self):
        return {p.name for p in self.model.priors}

    def _envelope(self, qid, params):
        events = self.events(params)
        if "prior" in params:
            table = credal.envelope_of(self.prior(params["prior"])).restrict(events)
        else:
            pi = evidential.possibility_of(self.fused_evidence(params))
            table = evidential.consistency_table(pi).restrict(events)
        return [self._interval_block(qid, table)]

    def _conjunction(self, qid, params):
        events = self.events(params)
        if "priors" in params:
            a, b = (self.prior(n) for n in params["priors"])
            c = credal.conjunction(a, b, params.get("assume_no_interaction", False))
            return [self._interval_block(qid, credal.envelope_of(c).restrict(events))]
        a, b = (self.evidence(n) for n in params["evidence"])
        pi = evidential.possibility_of(evidential.evid_conjunction(a, b))
        return [self._interval_block(qid, evidential.consistency_table(pi).restrict(events))]

    def _disjunction(self, qid, params):
        events = self.events(params)
        if "priors" in params:
            a, b = (self.prior(n) for n in params["priors"])
            c = credal.disjunction(a, b)
            return [self._interval_block(qid, credal.envelope_of(c).restrict(events))]
        a, b = (self.evidence(n) for n in params["evidence"])
        pi = evidential.possibility_of(evidential.evid_disjunction(a, b))
        return [self._interval_block(qid, evidential.consistency_table(pi).restrict(events))]

    def _fuse_obs(self, qid, params):
        e = self.fused_evidence(params)
        pi = evidential.possibility_of(e)
        if params.get("then", "intervals") == "possibility":
            header = ("query", "outcome", "possibility")
            rows = [(qid, u, float(v)) for u, v in zip(self.frame.labels, pi.values)]
            return [Block(header, rows)]
        table = evidential.consistency_table(pi).restrict(self.events(params))
        return [self._interval_block(qid, table)]

    def _combine(self, qid, params):
        h = fusion.combine(self.prior(params["prior"]), self.fused_evidence(params))
        header = ("query", "member", *self.frame.labels, "weight")
        rows = [
            (qid, f"h{k}", *map(float, v), float(v.sum()))
            for k, v in enumerate(h.extremes, start=1)
        ]
        return [Block(header, rows)]

    def _condition(self, qid, params):
        ens = fusion.ensemble_of(
            fusion.combine(self.prior(params["prior"]), self.fused_evidence(params))
        )
        events = self.events(params)
        method = params.get("method", "choquet")
        blocks = []
        if method in ("choquet", "both"):
            table = fusion.conditional_intervals(ens, events)
            blocks.append(self._interval_block(qid if method != "both" else f"{qid}/choquet", table))
        if method in ("upperlower", "both"):
            table = fusion.upper_lower_conditioning(ens, events)
            blocks.append(
                self._interval_block(qid if method != "both" else f"{qid}/upperlower", table)
            )
        return blocks

    def _compare(self, qid, params):
        events = self.events(params)
        left = self._named_table(params["left"], events)
        right = self._named_table(params["right"], events)
        gap = float(
            max(np.max(np.abs(left.lower - right.lower)), np.max(np.abs(left.upper - right.upper)))
        )
        return [
            self._interval_block(f"{qid}/{params['left']}", left),
            self._interval_block(f"{qid}/{params['right']}", right),
            Block(("query", "max-difference"), [(qid, gap)]),
        ]

    def _verify(self, qid, params):
        c = self.prior(params["prior"])
        e = self.fused_evidence(params)
        trials = params.get("trials", DEFAULT_TRIALS)
        seed = params.get("seed", self.seed)
        reports = oracle.simulate(c, e, self.events(params), trials, seed)
        header = ("query", "event", "empirical", "bound", "violated")
        rows = [
            (qid, ",".join(self.frame.event_labels(r.event)), r.empirical_consistency, r.bound,
             "yes" if r.violated else "no")
            for r in reports
        ]
        return [Block(header, rows)]


def _cell(value, decimals: int) -> str:
    if isinstance(value, float):
        text = f"{value:.{decimals}f}"
        return text[1:] if text.startswith("-") and float(text) == 0 else text
    if value == "":
        return "{}"
    return str(value)


def render(blocks: list[Block], decimals: int = 4, pretty: bool = False) -> str:
    out = []
    for block in blocks:
        table = [list(block.header)] + [[_cell(v, decimals) for v in row] for row in block.rows]
        if pretty:
            widths = [max(len(r[j]) for r in table) for j in range(len(block.header))]
            for r in table:
                out.append("  ".join(c.rjust(w) if j >= 2 else c.ljust(w)
                                     for j, (c, w) in enumerate(zip(r, widths))).rstrip())
        else:
            out.extend("\t".join(r) for r in table)
        out.append("")
    return "\n".join(out)
