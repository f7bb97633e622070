"""Value-preserving formula transforms and graph-based instance generators.

Every transform preserves the signed value of every assignment exactly, so
decisions and optima carry over unchanged.  Each returns a receipt mapping
output clauses (or edges) to the input objects they came from; variables keep
their identities throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceededError, ContractViolationError, InvalidInstanceError
from .model import (
    CMP_ATLEAST,
    CMP_ATMOST,
    CMP_EXACT,
    KIND_CNF,
    KIND_DNF,
    OBJ_ABS,
    OBJ_SUM,
    WeightedFormula,
    WeightedHypergraph,
    iter_subsets_lex,
)

DEFAULT_WIDTH_CAP = 10


@dataclass(frozen=True)
class ReductionReceipt:
    """Provenance of a transform: per output clause/edge, the input indices."""

    transform: str
    source_kind: str
    target_kind: str
    origins: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are normalized to sorted pairs."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.num_vertices, int) or self.num_vertices < 0:
            raise InvalidInstanceError(f"bad vertex count {self.num_vertices!r}")
        seen = set()
        normalized = []
        for raw in self.edges:
            u, v = raw
            if u == v:
                raise InvalidInstanceError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise InvalidInstanceError(f"edge {raw!r} leaves 1..{self.num_vertices}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InvalidInstanceError(f"duplicate edge {e!r}")
            seen.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(normalized))

    def neighbors(self, v: int) -> frozenset[int]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return frozenset(out)


class _MergeList:
    """Ordered clause accumulator merging equal keys, tracking origins."""

    def __init__(self) -> None:
        self.order: list[frozenset] = []
        self.weights: dict[frozenset, int] = {}
        self.origins: dict[frozenset, set[int]] = {}

    def add(self, key: frozenset, weight: int, origins) -> None:
        if key in self.weights:
            self.weights[key] += weight
            self.origins[key].update(origins)
        else:
            self.order.append(key)
            self.weights[key] = weight
            self.origins[key] = set(origins)

    def items(self) -> list[tuple[frozenset, int]]:
        return [(k, self.weights[k]) for k in self.order]

    def origin_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(self.origins[k])) for k in self.order)


def monotonize_abs_dnf(
    phi: WeightedFormula, *, _elimination: str = "lowest"
) -> tuple[WeightedFormula, ReductionReceipt]:
    """Rewrite a DNF with negated variables into a monotone DNF.

    A clause with a negated variable x splits into the clause without the
    negation (same weight) and that clause extended by plain x (negated
    weight); iterating removes every negation.  Clauses with equal literal
    sets merge after each elimination step.  Clause width never grows, and
    every assignment keeps its exact signed value.

    ``_elimination`` is a testing hook: ``lowest`` (default) or ``highest``
    picks which negated variable of a clause is resolved first.  The merged
    result is the same either way.
    """
    if phi.kind != KIND_DNF:
        raise ContractViolationError("monotonization expects a DNF")
    if _elimination not in ("lowest", "highest"):
        raise ContractViolationError(f"unknown elimination order {_elimination!r}")
    work: list[list] = [[lits, wt, {i}] for i, (lits, wt) in enumerate(phi.clauses)]

    def merge(entries: list[list]) -> list[list]:
        acc = _MergeList()
        for lits, wt, org in entries:
            acc.add(lits, wt, org)
        return [[k, acc.weights[k], acc.origins[k]] for k in acc.order]

    while True:
        target = next((e for e in work if any(l < 0 for l in e[0])), None)
        if target is None:
            break
        lits, wt, org = target
        neg_vars = sorted(-l for l in lits if l < 0)
        x = neg_vars[0] if _elimination == "lowest" else neg_vars[-1]
        c_plus = lits - {-x}
        c_minus = c_plus | {x}
        pos = work.index(target)
        work[pos:pos + 1] = [[c_plus, wt, set(org)], [c_minus, -wt, set(org)]]
        work = merge(work)

    out = WeightedFormula(
        KIND_DNF, phi.num_vars, tuple((lits, wt) for lits, wt, _ in work),
        phi.alpha, phi.objective, phi.comparison,
    )
    receipt = ReductionReceipt(
        "monotonize", KIND_DNF, KIND_DNF,
        tuple(tuple(sorted(org)) for _, _, org in work),
    )
    return out, receipt


def encode_dnf_as_hypergraph(
    phi: WeightedFormula,
) -> tuple[WeightedHypergraph, ReductionReceipt]:
    """Monotone DNF to hypergraph: clause variable sets become edges.

    One vertex per variable (including variables in no clause); a clause's
    positive variable set becomes an edge with the clause weight, the empty
    clause becomes the empty edge.  An assignment and its true-variable set
    have identical values, so optima and witnesses transfer verbatim.
    """
    if phi.kind != KIND_DNF or not phi.monotone:
        raise ContractViolationError("hypergraph encoding expects a monotone DNF")
    acc = _MergeList()
    for i, (lits, wt) in enumerate(phi.clauses):
        acc.add(frozenset(lits), wt, (i,))
    h = WeightedHypergraph(
        phi.num_vars, tuple(acc.items()), phi.alpha, phi.width,
    )
    receipt = ReductionReceipt("encode-hypergraph", KIND_DNF, "hypergraph", acc.origin_tuples())
    return h, receipt


def abs_cnf_to_abs_dnf(
    phi: WeightedFormula, *, max_width: int | None = None
) -> tuple[WeightedFormula, ReductionReceipt]:
    """CNF to DNF by expanding each disjunction into its satisfying minterms.

    Every assignment satisfies exactly one minterm over a clause's variables,
    and the minterms keeping the clause true are exactly all but one, so
    replacing the clause by those conjunctions (each with the clause weight)
    preserves every assignment's value.  Width is preserved; the clause count
    grows by at most 2^width - 1 per clause, hence the width cap.
    """
    if phi.kind != KIND_CNF:
        raise ContractViolationError("minterm expansion expects a CNF")
    cap = DEFAULT_WIDTH_CAP if max_width is None else max_width
    if phi.width > cap:
        raise BudgetExceededError(f"clause width {phi.width} exceeds cap {cap}")
    acc = _MergeList()
    for i, (lits, wt) in enumerate(phi.clauses):
        variables = sorted(abs(l) for l in lits)
        signs = {abs(l): l > 0 for l in lits}
        for values in product((False, True), repeat=len(variables)):
            if not any(v == signs[var] for var, v in zip(variables, values)):
                continue  # the unique falsifying minterm
            minterm = frozenset(var if v else -var for var, v in zip(variables, values))
            acc.add(minterm, wt, (i,))
    out = WeightedFormula(
        KIND_DNF, phi.num_vars, tuple(acc.items()), phi.alpha, phi.objective, phi.comparison
    )
    receipt = ReductionReceipt("cnf-to-dnf", KIND_CNF, KIND_DNF, acc.origin_tuples())
    return out, receipt


def expand_conjunctions_to_disjunctions(
    phi: WeightedFormula, *, max_width: int | None = None
) -> tuple[WeightedFormula, ReductionReceipt]:
    """Monotone DNF to monotone CNF via inclusion-exclusion over clause subsets.

    A conjunction over set S equals the alternating sum over nonempty subsets
    X of S of the disjunction over X, so each clause becomes 2^|S| - 1
    disjunctions with weights (-1)^(|X|+1) times the clause weight.  Requires
    no empty clause (the identity has no empty-subset term).
    """
    if phi.kind != KIND_DNF or not phi.monotone:
        raise ContractViolationError("disjunction expansion expects a monotone DNF")
    if any(not lits for lits, _ in phi.clauses):
        raise ContractViolationError("disjunction expansion rejects the empty clause")
    cap = DEFAULT_WIDTH_CAP if max_width is None else max_width
    if phi.width > cap:
        raise BudgetExceededError(f"clause width {phi.width} exceeds cap {cap}")
    acc = _MergeList()
    for i, (lits, wt) in enumerate(phi.clauses):
        for subset in iter_subsets_lex(lits):
            if not subset:
                continue
            sign = 1 if len(subset) % 2 == 1 else -1
            acc.add(subset, sign * wt, (i,))
    out = WeightedFormula(
        KIND_CNF, phi.num_vars, tuple(acc.items()), phi.alpha, phi.objective, phi.comparison
    )
    receipt = ReductionReceipt("expand-disjunctions", KIND_DNF, KIND_CNF, acc.origin_tuples())
    return out, receipt


def _check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidInstanceError(f"solution size must be a non-negative integer, got {k!r}")


def gen_is_to_max_monotone_dnf(g: Graph, k: int) -> WeightedFormula:
    """Independent set as summed monotone DNF: vertices +1, edges -1.

    Any vertex set reaches signed value >= k iff the graph has an independent
    set of size k (dropping an endpoint of a violated edge never lowers the
    value).  Objective is the plain sum, target k.
    """
    _check_k(k)
    clauses: list[tuple[tuple[int, ...], int]] = []
    clauses += [((v,), 1) for v in range(1, g.num_vertices + 1)]
    clauses += [((u, v), -1) for u, v in g.edges]
    return WeightedFormula(KIND_DNF, g.num_vertices, tuple(clauses), k, OBJ_SUM, CMP_ATLEAST)


def gen_is_to_abs_monotone_dnf_np(g: Graph, k: int) -> WeightedFormula:
    """Independent set under the absolute-value objective, four variables per vertex.

    Each vertex v gets a positive pair (v1+, v2+) and a negative pair
    (v1-, v2-): picking a pair costs -1 or gains +1; each edge contributes +1
    on the positive side and -1 on the negative side.  Either sign of the
    balance reaching k + |E| forces an independent set of size k, and any
    independent set of size k attains it; target is k + |E|.
    """
    _check_k(k)

    def ids(v: int) -> tuple[int, int, int, int]:
        base = 4 * (v - 1)
        return base + 1, base + 2, base + 3, base + 4

    clauses: list[tuple[tuple[int, ...], int]] = []
    for v in range(1, g.num_vertices + 1):
        v1p, v2p, v1m, v2m = ids(v)
        clauses.append(((v1p, v2p), -1))
        clauses.append(((v1m, v2m), 1))
    for u, v in g.edges:
        u1p, _, u1m, _ = ids(u)
        v1p, _, v1m, _ = ids(v)
        clauses.append(((u1p, v1p), 1))
        clauses.append(((u1m, v1m), -1))
    return WeightedFormula(
        KIND_DNF, 4 * g.num_vertices, tuple(clauses), k + len(g.edges), OBJ_ABS, CMP_ATLEAST
    )


def gen_is_to_abs_monotone_dnf_w1(g: Graph, k: int) -> WeightedFormula:
    """Independent set under the absolute-value objective, neighborhood clauses.

    Each vertex v contributes its neighborhood conjunction with weight +1 and
    the same conjunction extended by v itself with weight -1; the two cancel
    unless v is picked without any neighbor.  A degree-0 vertex yields an
    always-true empty clause plus a unit negative clause.  Target k.  Twin
    vertices may produce equal literal sets, which merge by weight sum; the
    merged formula has the same value on every assignment.
    """
    _check_k(k)
    clauses: list[tuple[tuple[int, ...], int]] = []
    for v in range(1, g.num_vertices + 1):
        nb = tuple(sorted(g.neighbors(v)))
        clauses.append((nb, 1))
        clauses.append((tuple(sorted(set(nb) | {v})), -1))
    return WeightedFormula(KIND_DNF, g.num_vertices, tuple(clauses), k, OBJ_ABS, CMP_ATLEAST)


def _with_empty_clause(
    phi: WeightedFormula, name: str, comparison: str
) -> tuple[WeightedFormula, ReductionReceipt]:
    if phi.kind != KIND_DNF or not phi.monotone:
        raise ContractViolationError(f"{name} expects a monotone DNF")
    if phi.objective != OBJ_ABS:
        raise ContractViolationError(f"{name} expects the absolute-value objective")
    acc = _MergeList()
    for i, (lits, wt) in enumerate(phi.clauses):
        acc.add(lits, wt, (i,))
    acc.add(frozenset(), -phi.alpha, ())
    out = WeightedFormula(
        KIND_DNF, phi.num_vars, tuple(acc.items()), 0, OBJ_ABS, comparison
    )
    receipt = ReductionReceipt(name, KIND_DNF, KIND_DNF, acc.origin_tuples())
    return out, receipt


def gen_exact_variant(phi: WeightedFormula) -> tuple[WeightedFormula, ReductionReceipt]:
    """Shift by an empty clause of weight -alpha; ask for value exactly 0.

    An assignment hits absolute value exactly alpha in the input iff it hits
    exactly 0 here (the empty clause is satisfied by every assignment).
    """
    return _with_empty_clause(phi, "exact-variant", CMP_EXACT)


def gen_min_variant(phi: WeightedFormula) -> tuple[WeightedFormula, ReductionReceipt]:
    """Shift by an empty clause of weight -alpha; ask for absolute value <= 0."""
    return _with_empty_clause(phi, "min-variant", CMP_ATMOST)
