"""Independent brute-force oracles used to cross-check every reduction.

Each oracle recomputes an answer from first principles along a different
code path than the solver or composition it checks, so a bug in one side
cannot hide in the other.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .codes import Code
from .frontends import Cnf3, PartitionedGraph, _satisfies
from .maxcover import MaxCoverInstance


def has_colorful_clique(graph: PartitionedGraph) -> bool:
    """One vertex per part, pairwise adjacent, by full product enumeration."""
    for choice in product(*graph.parts):
        if all(graph.has_edge(u, v)
               for i, u in enumerate(choice) for v in choice[i + 1:]):
            return True
    return False


def cnf_satisfiable(cnf: Cnf3) -> bool:
    """2**n assignment enumeration."""
    for bits in product((0, 1), repeat=cnf.num_vars):
        assignment = {v: bits[v - 1] for v in range(1, cnf.num_vars + 1)}
        if all(_satisfies(clause, assignment) for clause in cnf.clauses):
            return True
    return False


def maxcover_value_recount(instance: MaxCoverInstance) -> Fraction:
    """Recompute the MaxCover value from the raw edge list.

    Builds neighbor sets per (vertex, right part) from scratch and counts
    coverage by set intersection, independently of the bitmask solver.
    """
    num_v = instance.num_v
    neighbor_sets: dict[tuple[int, int], set[int]] = {}
    for vg, wg in instance.edges:
        j, _ = instance.w_part_of(wg)
        neighbor_sets.setdefault((vg, j), set()).add(wg)
    sizes = instance.v_parts
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    best = 0
    if any(s == 0 for s in sizes):
        return Fraction(0)
    for labeling in product(*(range(s) for s in sizes)):
        covered = 0
        for j in range(instance.t):
            common = None
            for i, rank in enumerate(labeling):
                nbrs = neighbor_sets.get((offsets[i] + rank, j), set())
                common = set(nbrs) if common is None else common & nbrs
                if not common:
                    break
            if common:
                covered += 1
        best = max(best, covered)
    return Fraction(best, instance.t)


def composed_adjacent_bruteforce(base: MaxCoverInstance, code: Code, matching,
                                 vg: int, l: int, tup) -> bool:
    """The composed edge rule straight from its existential definition.

    v is adjacent to (l, tup) iff some tuple (w_1..w_t) in W_1 x..x W_t has
    v adjacent to every w_j in the base instance and the threshold-graph
    vertex (l, tup) adjacent to every matched codeword.
    """
    ranges = [range(s) for s in base.w_parts]
    for choice in product(*ranges):
        ok = True
        for j, wr in enumerate(choice):
            if not base.adjacent(vg, base.w_global(j, wr)):
                ok = False
                break
            word = code.codeword(matching[j][wr])
            if word[l] != tup[j]:
                ok = False
                break
        if ok:
            return True
    return False


def covered_by_scan(composed, labeling, l: int) -> bool:
    """Coverage of one composed part by scanning all its q**t vertices."""
    num_v = composed.num_v
    a_size = composed.w_parts[l]
    offsets = [0]
    for s in composed.v_parts:
        offsets.append(offsets[-1] + s)
    labels = [offsets[i] + r for i, r in enumerate(labeling)]
    base_w = num_v + sum(composed.w_parts[:l])
    return any(all(composed.adjacent(vg, base_w + rank) for vg in labels)
               for rank in range(a_size))


def setcover_covers_bruteforce(composed, refs) -> bool:
    """Cover check by iterating every composed universe element."""
    return all(any(composed.contains(ref, elem) for ref in refs)
               for elem in composed.iter_universe())
