"""Kernelization rules for the induced-weight hypergraph problem.

Four reduction rules shrink an instance or certify a yes:

1. delete vertices in no edge;
2. delete zero-weight edges;
3. if the vertex count reaches 2*alpha*d^3*Delta^2, a greedy self-induced
   packing yields a witness directly (degree rule);
4. if some subedge c has a large link while every strict superset has a small
   one, a sunflower with core c yields a witness (subedge rule).

``kernelize`` runs them in ascending order, restarting after every firing, in
one of three modes: ``degree`` (rules 1-3), ``subedge`` (rules 1-4), and
``edgecount`` (rules 1-2 plus a global edge-count certificate).  Every
trivial-yes witness is re-verified before being returned; a verification
failure raises, since the extraction arguments admit none.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolationError, InternalGuaranteeError
from .model import (
    VertexSet,
    WeightedHypergraph,
    induced_weight,
    iter_subsets_lex,
    link,
    max_degree,
)

MODE_DEGREE = "degree"
MODE_SUBEDGE = "subedge"
MODE_EDGECOUNT = "edgecount"
MODES = (MODE_DEGREE, MODE_SUBEDGE, MODE_EDGECOUNT)

STATUS_TRIVIAL_YES = "trivial-yes"
STATUS_REDUCED = "reduced"


def g(i: int, alpha: int, d: int) -> int:
    """Link-count threshold for cores missing i vertices; g(0) = 1.

    Grows doubly exponentially: g(i) = (i^i * 2*alpha * 2^(2^d))^(2^i - 1).
    """
    if i < 0:
        raise ContractViolationError(f"threshold index must be non-negative, got {i}")
    if alpha < 1 or d < 1:
        raise ContractViolationError("thresholds need alpha >= 1 and d >= 1")
    if i == 0:
        return 1
    return (i**i * 2 * alpha * 2 ** (2**d)) ** (2**i - 1)


@dataclass(frozen=True)
class GThreshold:
    """The g thresholds of one instance, fixed alpha and d."""

    alpha: int
    d: int

    def __call__(self, i: int) -> int:
        return g(i, self.alpha, self.d)

    def edge_count(self) -> int:
        """Global edge-count certificate threshold; equals g(d)."""
        return g(self.d, self.alpha, self.d)


@dataclass(frozen=True)
class KernelOutcome:
    """Result of kernelization: a verified trivial yes or a reduced instance.

    ``instance`` is the hypergraph as it stood when a rule certified yes (its
    witness embeds into the original, deletions being value-neutral), or the
    fully reduced instance.
    """

    status: str
    instance: WeightedHypergraph
    witness: VertexSet | None
    transcript: tuple[str, ...]


def _edge_key(e: VertexSet) -> tuple[int, ...]:
    return tuple(sorted(e))


def _fmt_edge(e: VertexSet) -> str:
    return "{" + ",".join(map(str, sorted(e))) + "}"


def rule1_isolated(h: WeightedHypergraph) -> tuple[WeightedHypergraph, VertexSet] | None:
    """Delete every vertex incident to no edge; None when there are none."""
    covered: set[int] = set()
    for e, _ in h.edges:
        covered |= e
    isolated = h.vertices - covered
    if not isolated:
        return None
    return (
        WeightedHypergraph(h.vertices - isolated, h.edges, h.alpha, h.d),
        frozenset(isolated),
    )


def rule2_zero_weight(h: WeightedHypergraph) -> tuple[WeightedHypergraph, tuple[VertexSet, ...]] | None:
    """Delete every edge of weight zero; None when there are none."""
    removed = tuple(e for e, wt in h.edges if wt == 0)
    if not removed:
        return None
    kept = tuple((e, wt) for e, wt in h.edges if wt != 0)
    return WeightedHypergraph(h.vertices, kept, h.alpha, h.d), removed


def extract_witness_packing(h: WeightedHypergraph) -> VertexSet:
    """Witness from a greedy self-induced packing of pairwise disjoint edges.

    Repeatedly takes the lexicographically smallest remaining nonempty edge
    that strictly contains no other remaining nonempty edge, then discards
    everything touching the vertices its neighborhood covers.  The picked
    edges are pairwise disjoint and induce only themselves (plus possibly the
    empty edge).  Splitting them by weight sign, the union of one of the two
    sides reaches |w[X]| >= alpha whenever the packing has at least 2*alpha
    members: the two unions' values differ by at least |M|, which the empty
    edge's weight cannot cancel.  Both sides are tried, larger first, ties
    preferring the positive side.
    """
    remaining = sorted((e for e, wt in h.edges if e), key=_edge_key)
    weight = dict(h.edges)
    m_plus: list[VertexSet] = []
    m_minus: list[VertexSet] = []
    while remaining:
        eligible = None
        for e in remaining:
            if not any(f < e for f in remaining if f != e):
                eligible = e
                break
        if eligible is None:  # cannot happen: a minimal edge always exists
            raise InternalGuaranteeError("packing greedy found no minimal edge")
        wt = weight[eligible]
        if wt > 0:
            m_plus.append(eligible)
        elif wt < 0:
            m_minus.append(eligible)
        neighborhood = [f for f in remaining if f & eligible]
        covered: set[int] = set()
        for f in neighborhood:
            covered |= f
        remaining = [f for f in remaining if not (f & covered)]
    sides = [m_plus, m_minus]
    if len(m_minus) > len(m_plus):
        sides = [m_minus, m_plus]
    for side in sides:
        x: set[int] = set()
        for e in side:
            x |= e
        if abs(induced_weight(h, x)) >= h.alpha:
            return frozenset(x)
    raise InternalGuaranteeError("packing extraction produced no verifying side")


def rule3_degree(h: WeightedHypergraph) -> KernelOutcome | None:
    """Certify yes when |V| >= 2*alpha*d^3*Delta^2 (V nonempty).

    With rules 1-2 exhausted, every vertex has degree >= 1, so the greedy
    packing reaches 2*alpha members and a witness exists.  The vacuous case
    V = empty is excluded: the threshold degenerates to 0 there while no
    packing member can be picked.
    """
    if h.alpha < 1 or not h.vertices:
        return None
    delta = max_degree(h)
    threshold = 2 * h.alpha * h.d**3 * delta**2
    if h.num_vertices < threshold:
        return None
    witness = extract_witness_packing(h)
    return KernelOutcome(
        STATUS_TRIVIAL_YES,
        h,
        witness,
        (f"rule3 |V|={h.num_vertices} threshold={threshold}",),
    )


def rule4_subedge(h: WeightedHypergraph) -> VertexSet | None:
    """Find a subedge c with |link(c)| >= g(d-|c|) and all strict supersets small.

    Scans candidate subedges by decreasing size (lexicographic within a
    size); the first candidate meeting its link threshold automatically
    satisfies the superset condition, every larger subedge having been
    rejected and non-subedge supersets having empty links.  Returns the core
    or None.  Size-d candidates are skipped: nothing strictly contains them.
    """
    if h.alpha < 1 or h.d < 1:
        return None
    thresholds = GThreshold(h.alpha, h.d)
    # One pass gives every candidate's link size: an edge strictly contains
    # exactly its proper subsets among the candidates.
    link_count: dict[VertexSet, int] = {}
    for e, _ in h.edges:
        for s in iter_subsets_lex(e):
            if len(s) >= h.d:
                continue
            if s not in link_count:
                link_count[s] = 0
            if s != e:
                link_count[s] += 1
    by_size: dict[int, list[VertexSet]] = {}
    for c in link_count:
        by_size.setdefault(len(c), []).append(c)
    for size in sorted(by_size, reverse=True):
        threshold = thresholds(h.d - size)
        for c in sorted(by_size[size], key=_edge_key):
            if link_count[c] >= threshold:
                return c
    return None


def extract_witness_sunflower(h: WeightedHypergraph, core: VertexSet) -> VertexSet:
    """Witness from a sunflower with the given core.

    Greedily collects edges strictly containing the core that (a) strictly
    contain no other such edge, (b) meet every picked edge in exactly the
    core, and (c) keep the picked set self-induced among the core's link.
    The candidates are every core subset joined with nothing, with the
    positive petals, or with the negative petals; at least one verifies when
    the rule's thresholds fired.
    """
    core = frozenset(core)
    e_c = sorted(link(h, core), key=_edge_key)
    e_c_set = set(e_c)
    weight = dict(h.edges)
    picked: list[VertexSet] = []
    picked_set: set[VertexSet] = set()
    union: set[int] = set()
    for e in e_c:
        if any(f < e for f in e_c_set if f != e):
            continue
        if any((e & m) != core for m in picked):
            continue
        candidate_union = union | e
        ok = True
        for f in e_c:
            if f != e and f not in picked_set and f <= candidate_union:
                ok = False
                break
        if not ok:
            continue
        picked.append(e)
        picked_set.add(e)
        union = candidate_union
    plus: set[int] = set()
    minus: set[int] = set()
    for e in picked:
        if weight[e] > 0:
            plus |= e
        elif weight[e] < 0:
            minus |= e
    petals = (frozenset(), frozenset(plus - core), frozenset(minus - core))
    for c_sub in iter_subsets_lex(core):
        for s in petals:
            x = c_sub | s
            if abs(induced_weight(h, x)) >= h.alpha:
                return frozenset(x)
    raise InternalGuaranteeError("sunflower extraction produced no verifying candidate")


def kernelize(
    h: WeightedHypergraph,
    mode: str = MODE_SUBEDGE,
    *,
    edge_threshold: int | None = None,
) -> KernelOutcome:
    """Exhaustively apply the mode's rules, smallest rule first after any firing.

    ``edge_threshold`` overrides the edge-count certificate threshold and
    exists for tests only (the true threshold is astronomically large).
    Returns a verified trivial yes or the reduced instance; reduction never
    changes the answer, and deleting isolated vertices or zero-weight edges
    never changes any subset's induced weight.
    """
    if mode not in MODES:
        raise ContractViolationError(f"unknown kernelization mode {mode!r}")
    transcript: list[str] = []
    if h.alpha == 0:
        # The empty set attains |w[X]| = 0 >= 0; no rule needs to run.
        return KernelOutcome(STATUS_TRIVIAL_YES, h, frozenset(), ("alpha0",))
    while True:
        r1 = rule1_isolated(h)
        if r1 is not None:
            h, removed = r1
            transcript.append("rule1 " + " ".join(map(str, sorted(removed))))
            continue
        r2 = rule2_zero_weight(h)
        if r2 is not None:
            h, removed_edges = r2
            transcript.append("rule2 " + " ".join(_fmt_edge(e) for e in removed_edges))
            continue
        if mode in (MODE_DEGREE, MODE_SUBEDGE):
            r3 = rule3_degree(h)
            if r3 is not None:
                return KernelOutcome(
                    STATUS_TRIVIAL_YES, h, r3.witness, tuple(transcript) + r3.transcript
                )
        if mode == MODE_SUBEDGE:
            core = rule4_subedge(h)
            if core is not None:
                witness = extract_witness_sunflower(h, core)
                transcript.append(
                    f"rule4 core={_fmt_edge(core)} link={len(link(h, core))}"
                )
                return KernelOutcome(STATUS_TRIVIAL_YES, h, witness, tuple(transcript))
        if mode == MODE_EDGECOUNT and h.d >= 1:
            threshold = (
                edge_threshold
                if edge_threshold is not None
                else GThreshold(h.alpha, h.d).edge_count()
            )
            if len(h.edges) >= threshold:
                transcript.append(f"edgecount |E|={len(h.edges)} threshold={threshold}")
                core = rule4_subedge(h)
                if core is not None:
                    witness = extract_witness_sunflower(h, core)
                else:
                    # Off-by-one corner: the empty edge keeps every link one
                    # short of its threshold; the packing argument still holds.
                    witness = extract_witness_packing(h)
                return KernelOutcome(STATUS_TRIVIAL_YES, h, witness, tuple(transcript))
        return KernelOutcome(STATUS_REDUCED, h, None, tuple(transcript))
