"""Partitioned MaxCover instances, the exact solver, and gap compositions.

An instance is a bipartite graph with left super-nodes V_1..V_k and right
super-nodes W_1..W_t; its value is the maximal fraction of right
super-nodes that admit a joint neighbor of one chosen vertex per left
super-node.  Explicit instances carry an edge list; composed instances are
oracle-backed with an O(t) adjacency rule.  All values are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .codes import Code, relative_distance
from .errors import (
    DEFAULT_EDGE_CAP,
    DEFAULT_LABELING_CAP,
    CapExceededError,
    DegreeBoundError,
    EmptyPartError,
    GapforgeError,
    IndexRangeError,
    MatchingOverflowError,
    NotPseudoProjectionError,
    NotTwoPartsError,
)
from .serialize import FORMAT_TAG, check_format, require_keys

PROJECTION = "projection"
FULL = "full"
VIOLATION = "violation"

COMPLETENESS_OK = "completeness_ok"
SOUNDNESS_OK = "soundness_ok"
VERDICT_VIOLATION = "violation"


class MaxCoverInstance:
    """Explicit instance with global vertex ids.

    V-vertices are 0..|V|-1 in part order and W-vertices follow,
    |V|..|V|+|W|-1.  Per-vertex neighborhoods are kept as one int bitmask
    per right super-node.  Immutable after construction.
    """

    __slots__ = ("v_parts", "w_parts", "edges", "provenance",
                 "_v_offsets", "_w_offsets", "_masks")

    def __init__(self, v_parts, w_parts, edges, provenance: str = ""):
        self.v_parts = tuple(v_parts)
        self.w_parts = tuple(w_parts)
        if not self.v_parts or not self.w_parts:
            raise EmptyPartError("need at least one left and one right super-node")
        if any(s < 0 for s in self.v_parts):
            raise IndexRangeError("negative part size")
        if any(s < 1 for s in self.w_parts):
            raise EmptyPartError("right super-nodes must be non-empty")
        self._v_offsets = _offsets(self.v_parts)
        self._w_offsets = _offsets(self.w_parts)
        num_v, num_w = sum(self.v_parts), sum(self.w_parts)
        masks = [[0] * self.t for _ in range(num_v)]
        cleaned = set()
        for vg, wg in edges:
            if not 0 <= vg < num_v:
                raise IndexRangeError(f"V id {vg} outside [0, {num_v})")
            if not num_v <= wg < num_v + num_w:
                raise IndexRangeError(f"W id {wg} outside [{num_v}, {num_v + num_w})")
            j, local = self.w_part_of(wg)
            masks[vg][j] |= 1 << local
            cleaned.add((vg, wg))
        self.edges = tuple(sorted(cleaned))
        self._masks = masks
        self.provenance = provenance

    @property
    def k(self) -> int:
        return len(self.v_parts)

    @property
    def t(self) -> int:
        return len(self.w_parts)

    @property
    def num_v(self) -> int:
        return self._v_offsets[-1]

    @property
    def num_w(self) -> int:
        return self._w_offsets[-1]

    def v_global(self, i: int, rank: int) -> int:
        return self._v_offsets[i] + rank

    def w_global(self, j: int, rank: int) -> int:
        return self.num_v + self._w_offsets[j] + rank

    def w_part_of(self, wg: int) -> tuple[int, int]:
        local = wg - self.num_v
        for j, off in enumerate(self._w_offsets[1:]):
            if local < off:
                return j, local - self._w_offsets[j]
        raise IndexRangeError(f"W id {wg} out of range")

    def adjacent(self, vg: int, wg: int) -> bool:
        j, local = self.w_part_of(wg)
        return bool(self._masks[vg][j] >> local & 1)

    def neighbors_in_part(self, vg: int, j: int) -> tuple[int, ...]:
        mask = self._masks[vg][j]
        return tuple(p for p in range(self.w_parts[j]) if mask >> p & 1)

    def covered(self, labeling, j: int) -> bool:
        acc = -1
        for i, rank in enumerate(labeling):
            acc &= self._masks[self._v_offsets[i] + rank][j]
            if not acc:
                return False
        return True

    def covered_count(self, labeling) -> int:
        rows = [self._masks[self._v_offsets[i] + rank]
                for i, rank in enumerate(labeling)]
        count = 0
        for j in range(self.t):
            acc = rows[0][j]
            for row in rows[1:]:
                acc &= row[j]
                if not acc:
                    break
            if acc:
                count += 1
        return count

    def __repr__(self):
        return (f"MaxCoverInstance(k={self.k}, t={self.t}, "
                f"|V|={self.num_v}, |W|={self.num_w}, |E|={len(self.edges)})")


def _offsets(sizes) -> tuple[int, ...]:
    out = [0]
    for s in sizes:
        out.append(out[-1] + s)
    return tuple(out)


@dataclass(frozen=True)
class MaxCoverResult:
    """Exact optimum with the lexicographically-first optimal labeling."""

    value: Fraction
    labeling: tuple[int, ...] | None
    labelings_examined: int


def maxcover_value(instance, labeling_cap: int = DEFAULT_LABELING_CAP) -> MaxCoverResult:
    """Enumerate all labelings and return the exact MaxCover value.

    Labelings are scanned in lexicographic order and only strict
    improvements are kept, so the reported labeling is the
    lexicographically-first maximizer.  An instance with an empty left
    super-node has no labeling and value 0.
    """
    sizes = instance.v_parts
    t = instance.t
    total = math.prod(sizes)
    if total > labeling_cap:
        raise CapExceededError(f"{total} labelings exceed cap {labeling_cap}")
    if total == 0:
        return MaxCoverResult(Fraction(0), None, 0)
    best = -1
    best_labeling = None
    examined = 0
    for labeling in product(*(range(s) for s in sizes)):
        examined += 1
        covered = instance.covered_count(labeling)
        if covered > best:
            best, best_labeling = covered, labeling
            if best == t:
                break
    return MaxCoverResult(Fraction(best, t), best_labeling, examined)


# ---------------------------------------------------------------------------
# Pseudo-projection profile


@dataclass(frozen=True)
class ProjectionProfile:
    """Per-(left, right) classification; entries[i][j] for V_i vs W_j."""

    entries: tuple[tuple[str, ...], ...]

    def entry(self, i: int, j: int) -> str:
        return self.entries[i][j]

    @property
    def is_pseudo_projection(self) -> bool:
        return all(e != VIOLATION for row in self.entries for e in row)

    def violations(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, row in enumerate(self.entries)
                     for j, e in enumerate(row) if e == VIOLATION)


def projection_profile(instance, *, scan_cap: int = DEFAULT_EDGE_CAP) -> ProjectionProfile:
    """Classify every (V_i, W_j) pair as PROJECTION, FULL, or VIOLATION.

    PROJECTION (every vertex of V_i has exactly one W_j neighbor) is
    checked first; a 1 x 1 complete pair therefore reports PROJECTION.
    Entries with an empty V_i are vacuously FULL.  Oracle-backed instances
    are scanned only when |V| * |W| is within scan_cap.
    """
    if not isinstance(instance, MaxCoverInstance):
        num_w = sum(instance.w_parts)
        if sum(instance.v_parts) * num_w > scan_cap:
            raise CapExceededError("profile scan of an oracle instance exceeds cap")
    rows = []
    v_off = 0
    for i, vi in enumerate(instance.v_parts):
        row = []
        for j, wj in enumerate(instance.w_parts):
            degs = [_part_degree(instance, v_off + r, j, wj) for r in range(vi)]
            if vi == 0:
                row.append(FULL)
            elif all(d == 1 for d in degs):
                row.append(PROJECTION)
            elif all(d == wj for d in degs):
                row.append(FULL)
            else:
                row.append(VIOLATION)
        rows.append(tuple(row))
        v_off += vi
    return ProjectionProfile(tuple(rows))


def _part_degree(instance, vg: int, j: int, wj: int) -> int:
    if isinstance(instance, MaxCoverInstance):
        return instance._masks[vg][j].bit_count()
    w0 = sum(instance.v_parts) + sum(instance.w_parts[:j])
    return sum(1 for p in range(wj) if instance.adjacent(vg, w0 + p))


def _check_projection_order(profile: ProjectionProfile) -> None:
    if not profile.is_pseudo_projection:
        raise NotPseudoProjectionError(
            f"instance violates pseudo-projection at {profile.violations()}")


def _default_matching(instance, code: Code):
    matching = []
    for j, wj in enumerate(instance.w_parts):
        if wj > code.size:
            raise MatchingOverflowError(
                f"|W_{j}| = {wj} exceeds the code's {code.size} codewords")
        matching.append(tuple(range(wj)))
    return tuple(matching)


def _validate_matching(instance, code: Code, matching):
    matching = tuple(tuple(m) for m in matching)
    if len(matching) != instance.t:
        raise MatchingOverflowError("matching must give one injection per right super-node")
    for j, inj in enumerate(matching):
        if len(inj) != instance.w_parts[j]:
            raise MatchingOverflowError(f"matching for W_{j} has wrong length")
        if len(set(inj)) != len(inj) or any(not 0 <= m < code.size for m in inj):
            raise MatchingOverflowError(f"matching for W_{j} is not injective into the code")
    return matching


# ---------------------------------------------------------------------------
# Gap composition (pseudo-projection instances)


class ComposedMaxCover:
    """Oracle-backed composition of a pseudo-projection instance with a code.

    Left super-nodes are carried over; right super-nodes are the ell parts
    of the threshold graph, each a copy of [q]**t.  v is adjacent to
    a = (l, tuple) iff for every column j there is a W_j-neighbor of v whose
    matched codeword has symbol tuple[j] at coordinate l; under
    pseudo-projection this is one equality test per PROJECTION column and a
    symbol-presence test per FULL column, so adjacency costs O(t).
    """

    __slots__ = ("base", "code", "matching", "profile", "provenance",
                 "v_parts", "w_parts", "_v_offsets", "_a_size", "_tcols",
                 "_proj_cw", "_presence")

    def __init__(self, base: MaxCoverInstance, code: Code, matching, profile):
        self.base = base
        self.code = code
        self.matching = matching
        self.profile = profile
        self._tcols = base.t
        self._a_size = code.q ** base.t
        self._v_offsets = base._v_offsets
        self.v_parts = base.v_parts
        self.w_parts = (self._a_size,) * code.ell
        self.provenance = (f"compose_gap({base.provenance or 'instance'}; "
                           f"{code.kind} q={code.q} r={code.r} ell={code.ell})")

        words = {j: [code.codeword(m) for m in matching[j]] for j in range(base.t)}
        self._presence = [
            [frozenset(w[l] for w in words[j]) for l in range(code.ell)]
            for j in range(base.t)]
        proj_cw = []
        for i, vi in enumerate(base.v_parts):
            for r in range(vi):
                vg = base.v_global(i, r)
                row = []
                for j in range(base.t):
                    if profile.entry(i, j) == PROJECTION:
                        nbr = base.neighbors_in_part(vg, j)
                        row.append(words[j][nbr[0]])
                    else:
                        row.append(None)
                proj_cw.append(tuple(row))
        self._proj_cw = proj_cw

    @property
    def k(self) -> int:
        return len(self.v_parts)

    @property
    def t(self) -> int:
        return self.code.ell

    @property
    def num_v(self) -> int:
        return self.base.num_v

    @property
    def num_w(self) -> int:
        return self.code.ell * self._a_size

    def a_tuple(self, rank: int) -> tuple[int, ...]:
        q = self.code.q
        out = [0] * self._tcols
        for pos in range(self._tcols - 1, -1, -1):
            out[pos] = rank % q
            rank //= q
        return tuple(out)

    def adjacent_ref(self, vg: int, l: int, tup) -> bool:
        row = self._proj_cw[vg]
        for j in range(self._tcols):
            cw = row[j]
            if cw is not None:
                if cw[l] != tup[j]:
                    return False
            elif tup[j] not in self._presence[j][l]:
                return False
        return True

    def adjacent(self, vg: int, wg: int) -> bool:
        local = wg - self.num_v
        l, rank = divmod(local, self._a_size)
        return self.adjacent_ref(vg, l, self.a_tuple(rank))

    def covered(self, labeling, l: int) -> bool:
        rows = [self._proj_cw[self._v_offsets[i] + rank]
                for i, rank in enumerate(labeling)]
        for j in range(self._tcols):
            need = -1
            for row in rows:
                cw = row[j]
                if cw is None:
                    continue
                s = cw[l]
                if need < 0:
                    need = s
                elif s != need:
                    return False
        return True

    def covered_count(self, labeling) -> int:
        return sum(1 for l in range(self.code.ell) if self.covered(labeling, l))

    def materialize(self, *, cap: int = DEFAULT_EDGE_CAP) -> MaxCoverInstance:
        return _materialize(self, cap)

    def describe(self) -> dict:
        return {
            "k": self.k,
            "t": self.t,
            "v_parts": list(self.v_parts),
            "w_parts": list(self.w_parts),
            "oracle": True,
            "provenance": self.provenance,
        }


def _materialize(composed, cap: int) -> MaxCoverInstance:
    pairs = composed.num_v * composed.num_w
    if pairs > cap:
        raise CapExceededError(f"materializing {pairs} candidate edges exceeds cap {cap}")
    edges = []
    for vg in range(composed.num_v):
        for wg in range(composed.num_v, composed.num_v + composed.num_w):
            if composed.adjacent(vg, wg):
                edges.append((vg, wg))
    return MaxCoverInstance(composed.v_parts, composed.w_parts, edges,
                            provenance=composed.provenance + "; materialized")


def compose_gap(base: MaxCoverInstance, code: Code, matching=None) -> ComposedMaxCover:
    """Gap-creating composition with the threshold graph of (code, t=base.t).

    Requires the pseudo-projection property and an injective matching of
    every W_j into the codewords (default: lexicographic ranks).  Value 1
    is preserved; any value below 1 drops to at most 1 - delta.
    """
    profile = projection_profile(base)
    _check_projection_order(profile)
    matching = (_default_matching(base, code) if matching is None
                else _validate_matching(base, code, matching))
    return ComposedMaxCover(base, code, matching, profile)


# ---------------------------------------------------------------------------
# Degree-bounded composition for k = 2 (no projection requirement)


class ComposedMaxCoverK2:
    """Composition for k = 2 with per-part degree bound d.

    v is adjacent to a = (l, tuple) iff every column j has a W_j-neighbor
    of v whose matched codeword carries symbol tuple[j] at coordinate l.
    """

    __slots__ = ("base", "code", "matching", "d", "provenance",
                 "v_parts", "w_parts", "_v_offsets", "_a_size", "_tcols", "_nb_cw")

    def __init__(self, base: MaxCoverInstance, code: Code, matching, d: int):
        self.base = base
        self.code = code
        self.matching = matching
        self.d = d
        self._tcols = base.t
        self._a_size = code.q ** base.t
        self._v_offsets = base._v_offsets
        self.v_parts = base.v_parts
        self.w_parts = (self._a_size,) * code.ell
        self.provenance = (f"compose_gap_k2_bounded({base.provenance or 'instance'}; "
                           f"{code.kind} q={code.q} r={code.r} ell={code.ell}; d={d})")
        words = {j: [code.codeword(m) for m in matching[j]] for j in range(base.t)}
        nb_cw = []
        for vg in range(base.num_v):
            row = []
            for j in range(base.t):
                nbrs = base.neighbors_in_part(vg, j)
                row.append(tuple(words[j][p] for p in nbrs))
            nb_cw.append(tuple(row))
        self._nb_cw = nb_cw

    k = property(lambda self: 2)

    @property
    def t(self) -> int:
        return self.code.ell

    @property
    def num_v(self) -> int:
        return self.base.num_v

    @property
    def num_w(self) -> int:
        return self.code.ell * self._a_size

    a_tuple = ComposedMaxCover.a_tuple
    adjacent = ComposedMaxCover.adjacent
    materialize = ComposedMaxCover.materialize
    describe = ComposedMaxCover.describe

    def adjacent_ref(self, vg: int, l: int, tup) -> bool:
        row = self._nb_cw[vg]
        for j in range(self._tcols):
            if not any(cw[l] == tup[j] for cw in row[j]):
                return False
        return True

    def covered(self, labeling, l: int) -> bool:
        r1 = self._nb_cw[self._v_offsets[0] + labeling[0]]
        r2 = self._nb_cw[self._v_offsets[1] + labeling[1]]
        for j in range(self._tcols):
            s1 = {cw[l] for cw in r1[j]}
            if not s1 or not any(cw[l] in s1 for cw in r2[j]):
                return False
        return True

    def covered_count(self, labeling) -> int:
        return sum(1 for l in range(self.code.ell) if self.covered(labeling, l))


def compose_gap_k2_bounded(base: MaxCoverInstance, code: Code, d: int,
                           matching=None) -> ComposedMaxCoverK2:
    """Degree-bounded composition: completeness preserved, soundness d**2 * (1-delta)."""
    if base.k != 2:
        raise NotTwoPartsError(f"degree-bounded composition needs k=2, got k={base.k}")
    for vg in range(base.num_v):
        for j in range(base.t):
            deg = len(base.neighbors_in_part(vg, j))
            if deg > d:
                raise DegreeBoundError(
                    f"vertex {vg} has {deg} neighbors in W_{j}, bound d={d}")
    matching = (_default_matching(base, code) if matching is None
                else _validate_matching(base, code, matching))
    return ComposedMaxCoverK2(base, code, matching, d)


# ---------------------------------------------------------------------------
# Gap certificate


@dataclass(frozen=True)
class GapCertificate:
    """Pass/fail record for one composition against the gap guarantees.

    violation iff value 1 was not preserved, or a value-<1 input composed to
    something above bound_factor * (1 - delta).  The witness is the
    composed instance's optimal labeling.
    """

    value_before: Fraction
    value_after: Fraction
    delta: Fraction
    bound_factor: Fraction
    verdict: str
    witness: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "format": FORMAT_TAG,
            "value_before": str(self.value_before),
            "value_after": str(self.value_after),
            "delta": str(self.delta),
            "bound_factor": str(self.bound_factor),
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def gap_certificate(base, composed, delta: Fraction, bound_factor=1, *,
                    labeling_cap: int = DEFAULT_LABELING_CAP) -> GapCertificate:
    """Solve both sides exactly and check the composition guarantees."""
    bound_factor = Fraction(bound_factor)
    before = maxcover_value(base, labeling_cap)
    after = maxcover_value(composed, labeling_cap)
    if before.value == 1:
        verdict = COMPLETENESS_OK if after.value == 1 else VERDICT_VIOLATION
    else:
        bound = bound_factor * (1 - Fraction(delta))
        verdict = SOUNDNESS_OK if after.value <= bound else VERDICT_VIOLATION
    return GapCertificate(before.value, after.value, Fraction(delta),
                          bound_factor, verdict, after.labeling)


def certify_composition(base: MaxCoverInstance, code: Code, *, d: int | None = None,
                        labeling_cap: int = DEFAULT_LABELING_CAP) -> GapCertificate:
    """Compose and certify in one step; d switches to the k=2 bounded route."""
    delta = relative_distance(code).delta
    if d is None:
        composed = compose_gap(base, code)
        factor = 1
    else:
        composed = compose_gap_k2_bounded(base, code, d)
        factor = d * d
    return gap_certificate(base, composed, delta, factor, labeling_cap=labeling_cap)


# ---------------------------------------------------------------------------
# Serialization


def maxcover_to_json(instance: MaxCoverInstance) -> dict:
    return {
        "format": FORMAT_TAG,
        "k": instance.k,
        "t": instance.t,
        "v_parts": list(instance.v_parts),
        "w_parts": list(instance.w_parts),
        "edges": [list(e) for e in instance.edges],
        "provenance": instance.provenance,
    }


def maxcover_from_json(doc: dict) -> MaxCoverInstance:
    check_format(doc)
    require_keys(doc, ("k", "t", "v_parts", "w_parts", "edges"), "maxcover")
    if doc["k"] != len(doc["v_parts"]) or doc["t"] != len(doc["w_parts"]):
        raise GapforgeError("part counts disagree with k/t fields")
    return MaxCoverInstance(doc["v_parts"], doc["w_parts"],
                            [tuple(e) for e in doc["edges"]],
                            provenance=doc.get("provenance", ""))
