"""End-to-end pipelines: front-end reduction, gap composition, exact solve.

Both pipelines answer through the composed instance: YES when both sides
have value 1, NO when the input value is below 1 and the composed value
respects the 1 - delta soundness bound, VIOLATION otherwise.  The report
records the exact measured code distance and the formula-level distance
bound 1 - r/q so the achieved gap is parameter-honest; asymptotic parameter
choices are replaced by the smallest workable prime (recorded, overridable).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .codes import Code, is_prime, reed_solomon, relative_distance
from .errors import GapforgeError, NotPrimeError, RankRangeError
from .frontends import Cnf3, DecidedNo, Graph, PartitionedGraph, \
    clique_to_maxcover, colorful_lift, sat_to_maxcover
from .maxcover import compose_gap, maxcover_value
from .serialize import FORMAT_TAG

YES = "YES"
NO = "NO"
VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class Stage:
    name: str
    seconds: float
    sizes: dict


@dataclass(frozen=True)
class PipelineReport:
    """Verdict plus everything needed to re-check it.

    gap = 1 - value_after on sound NO verdicts (at least delta_exact by
    construction); vacuous_gap flags runs whose formula-level bound
    1 - r/q is not positive.
    """

    verdict: str
    decided_no: bool
    code_q: int | None
    code_r: int | None
    code_ell: int | None
    delta_exact: Fraction | None
    delta_bound: Fraction | None
    value_before: Fraction | None
    value_after: Fraction | None
    gap: Fraction | None
    vacuous_gap: bool
    stages: tuple[Stage, ...] = field(default=())

    def to_json(self) -> dict:
        frac = lambda x: None if x is None else str(x)
        return {
            "format": FORMAT_TAG,
            "verdict": self.verdict,
            "decided_no": self.decided_no,
            "code": None if self.code_q is None else {
                "q": self.code_q, "r": self.code_r, "ell": self.code_ell,
                "delta_exact": frac(self.delta_exact),
                "delta_bound": frac(self.delta_bound),
            },
            "value_before": frac(self.value_before),
            "value_after": frac(self.value_after),
            "gap": frac(self.gap),
            "vacuous_gap": self.vacuous_gap,
            "stages": [{"name": s.name, "seconds": round(s.seconds, 6),
                        "sizes": s.sizes} for s in self.stages],
        }

    @property
    def exit_code(self) -> int:
        return {YES: 0, NO: 1, VIOLATION: 2}[self.verdict]


def smallest_workable_prime(t: int, max_w: int) -> int:
    """Smallest prime q > t (so r = t <= q and 1 - t/q > 0) with q**t >= max_w."""
    q = t + 1
    while True:
        if is_prime(q) and q ** t >= max_w:
            return q
        q += 1


def _choose_code(t: int, max_w: int, q_override: int | None) -> Code:
    if q_override is None:
        q = smallest_workable_prime(t, max_w)
    else:
        q = q_override
        if not is_prime(q):
            raise NotPrimeError(f"q override {q} is not prime")
        if q < t:
            raise RankRangeError(f"q override {q} is below r = t = {t}")
        if q ** t < max_w:
            raise GapforgeError(
                f"q override {q} cannot match right super-nodes of size {max_w}")
    return reed_solomon(q, t)


def _run_gap_stages(frontend, q_override, stages, labeling_cap) -> PipelineReport:
    t = frontend.t
    max_w = max(frontend.w_parts)

    start = time.perf_counter()
    code = _choose_code(t, max_w, q_override)
    delta = relative_distance(code).delta
    delta_bound = 1 - Fraction(code.r, code.q)
    composed = compose_gap(frontend, code)
    stages.append(Stage("compose", time.perf_counter() - start, {
        "q": code.q, "r": code.r, "ell": code.ell,
        "a_parts": composed.t, "a_part_size": composed.w_parts[0]}))

    start = time.perf_counter()
    before = maxcover_value(frontend, labeling_cap)
    after = maxcover_value(composed, labeling_cap)
    stages.append(Stage("solve", time.perf_counter() - start, {
        "labelings": after.labelings_examined}))

    if before.value == 1 and after.value == 1:
        verdict, gap = YES, None
    elif before.value < 1 and after.value <= 1 - delta:
        verdict, gap = NO, 1 - after.value
    else:
        verdict, gap = VIOLATION, None
    return PipelineReport(
        verdict=verdict, decided_no=False,
        code_q=code.q, code_r=code.r, code_ell=code.ell,
        delta_exact=delta, delta_bound=delta_bound,
        value_before=before.value, value_after=after.value,
        gap=gap, vacuous_gap=delta_bound <= 0, stages=tuple(stages))


def wone_pipeline(graph: Graph | PartitionedGraph, t: int,
                  q_override: int | None = None, *,
                  labeling_cap: int = 1_000_000) -> PipelineReport:
    """Colorful t-clique skeleton: clique front-end, then RS(q, r=t) composition.

    Plain graphs are lifted to t parts first; partitioned inputs must
    already have t parts.
    """
    stages: list[Stage] = []
    if isinstance(graph, Graph):
        start = time.perf_counter()
        graph = colorful_lift(graph, t)
        stages.append(Stage("lift", time.perf_counter() - start,
                            {"vertices": graph.num_vertices}))
    if graph.t != t:
        raise GapforgeError(f"graph has {graph.t} parts, expected t={t}")

    start = time.perf_counter()
    frontend = clique_to_maxcover(graph)
    if isinstance(frontend, DecidedNo):
        stages.append(Stage("frontend", time.perf_counter() - start,
                            {"decided_no": True}))
        return PipelineReport(NO, True, None, None, None, None, None,
                              None, None, None, False, tuple(stages))
    stages.append(Stage("frontend", time.perf_counter() - start, {
        "k": frontend.k, "t": frontend.t,
        "v": frontend.num_v, "w": frontend.num_w, "edges": len(frontend.edges)}))
    return _run_gap_stages(frontend, q_override, stages, labeling_cap)


def eth_pipeline(cnf: Cnf3, k: int, q_override: int | None = None, *,
                 labeling_cap: int = 1_000_000) -> PipelineReport:
    """3-SAT skeleton: clause-split front-end, then RS(q, r=t) composition.

    t is the number of right super-nodes after empty occurrence patterns
    are omitted.
    """
    stages: list[Stage] = []
    start = time.perf_counter()
    frontend = sat_to_maxcover(cnf, k)
    stages.append(Stage("frontend", time.perf_counter() - start, {
        "k": frontend.k, "t": frontend.t,
        "v": frontend.num_v, "w": frontend.num_w, "edges": len(frontend.edges)}))
    return _run_gap_stages(frontend, q_override, stages, labeling_cap)
