"""Core value types and exact brute-force references.

Two instance families share the same exact-integer evaluation semantics:

* ``WeightedFormula``: a weighted clause set over boolean variables 1..n.
  Clauses are conjunctions (kind ``dnf``) or disjunctions (kind ``cnf``) with
  integer weights of either sign.  The value of an assignment is the signed
  sum of the weights of the satisfied clauses.  The decision compares either
  the signed value or its absolute value against a non-negative target.
* ``WeightedHypergraph``: integer-weighted hyperedges over a vertex set.  A
  vertex subset X induces the weight sum of all edges fully inside X, the
  empty edge included.  The decision asks for |w[X]| >= alpha.

All arithmetic is arbitrary-precision; weights and targets are never clamped.
Brute-force solvers enumerate assignments (subsets) in lexicographic order,
variables ascending with false before true (absent before present), and
return the first qualifying witness.  Subtrees that provably contain no
qualifying assignment may be skipped, which does not change the reported
witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import engine
from .errors import BudgetExceededError, InvalidInstanceError

KIND_DNF = "dnf"
KIND_CNF = "cnf"
OBJ_ABS = "abs"
OBJ_SUM = "sum"
CMP_ATLEAST = "atleast"
CMP_EXACT = "exact"
CMP_ATMOST = "atmost"

DEFAULT_ENUM_CAP = 24

Clause = frozenset[int]
Weight = int
VertexSet = frozenset[int]


def _normalize_clause(lits: Iterable[int], num_vars: int) -> Clause:
    lit_list = list(lits)
    seen_vars = set()
    for lit in lit_list:
        if not isinstance(lit, int) or isinstance(lit, bool) or lit == 0:
            raise InvalidInstanceError(f"bad literal {lit!r}")
        v = abs(lit)
        if v > num_vars:
            raise InvalidInstanceError(f"literal {lit} exceeds {num_vars} variables")
        if v in seen_vars:
            raise InvalidInstanceError(f"variable {v} appears twice in one clause")
        seen_vars.add(v)
    return frozenset(lit_list)


def _merge_weighted(items: Iterable[tuple[frozenset, int]]) -> tuple[tuple[frozenset, int], ...]:
    # Duplicate keys merge by weight sum; first occurrence fixes the position.
    # A merged weight of zero is kept, not dropped.
    order: list[frozenset] = []
    weights: dict[frozenset, int] = {}
    for key, wt in items:
        if not isinstance(wt, int) or isinstance(wt, bool):
            raise InvalidInstanceError(f"weight {wt!r} is not an integer")
        if key in weights:
            weights[key] += wt
        else:
            weights[key] = wt
            order.append(key)
    return tuple((key, weights[key]) for key in order)


def _check_enums(kind: str, objective: str, comparison: str) -> None:
    if kind not in (KIND_DNF, KIND_CNF):
        raise InvalidInstanceError(f"unknown clause kind {kind!r}")
    if objective not in (OBJ_ABS, OBJ_SUM):
        raise InvalidInstanceError(f"unknown objective {objective!r}")
    if comparison not in (CMP_ATLEAST, CMP_EXACT, CMP_ATMOST):
        raise InvalidInstanceError(f"unknown comparison {comparison!r}")


@dataclass(frozen=True)
class WeightedFormula:
    """Weighted clause set with target alpha, objective, and comparison.

    ``clauses`` accepts any iterable of (literals, weight) pairs; literals are
    signed variable indices (positive plain, negative negated).  Clauses with
    equal literal sets are merged at construction by summing their weights.
    """

    kind: str
    num_vars: int
    clauses: tuple[tuple[Clause, Weight], ...]
    alpha: int
    objective: str = OBJ_ABS
    comparison: str = CMP_ATLEAST

    def __post_init__(self) -> None:
        _check_enums(self.kind, self.objective, self.comparison)
        if not isinstance(self.num_vars, int) or self.num_vars < 0:
            raise InvalidInstanceError(f"bad variable count {self.num_vars!r}")
        if not isinstance(self.alpha, int) or isinstance(self.alpha, bool) or self.alpha < 0:
            raise InvalidInstanceError(f"target must be a non-negative integer, got {self.alpha!r}")
        normalized = [
            (_normalize_clause(lits, self.num_vars), wt) for lits, wt in self.clauses
        ]
        object.__setattr__(self, "clauses", _merge_weighted(normalized))

    @property
    def monotone(self) -> bool:
        """True when no clause contains a negated variable."""
        return all(lit > 0 for lits, _ in self.clauses for lit in lits)

    @property
    def width(self) -> int:
        """Largest clause size (0 for an empty clause set)."""
        return max((len(lits) for lits, _ in self.clauses), default=0)


@dataclass(frozen=True)
class Assignment:
    """Total boolean assignment; ``values[i]`` is the value of variable i+1."""

    values: tuple[bool, ...]

    @classmethod
    def from_true_vars(cls, num_vars: int, true_vars: Iterable[int]) -> "Assignment":
        trues = set(true_vars)
        bad = [v for v in trues if v < 1 or v > num_vars]
        if bad:
            raise InvalidInstanceError(f"variable {bad[0]} out of range 1..{num_vars}")
        return cls(tuple(v in trues for v in range(1, num_vars + 1)))

    @classmethod
    def from_mask(cls, num_vars: int, mask: int) -> "Assignment":
        return cls(tuple(bool(mask >> i & 1) for i in range(num_vars)))

    def value(self, var: int) -> bool:
        if var < 1 or var > len(self.values):
            raise InvalidInstanceError(f"variable {var} out of range 1..{len(self.values)}")
        return self.values[var - 1]

    def true_vars(self) -> frozenset[int]:
        return frozenset(i + 1 for i, v in enumerate(self.values) if v)

    def mask(self) -> int:
        m = 0
        for i, v in enumerate(self.values):
            if v:
                m |= 1 << i
        return m


@dataclass(frozen=True)
class Verdict:
    """Decision result; a yes carries a witness and its achieved value."""

    decision: bool
    witness: object = None
    achieved: int | None = None
    transcript: tuple[str, ...] = ()


@dataclass(frozen=True)
class WeightedHypergraph:
    """Integer-weighted hypergraph with explicit vertex identities.

    ``vertices`` may be given as a count n (meaning {1..n}) or as an iterable
    of positive vertex ids; kernelization deletes vertices, so survivors keep
    their original ids.  ``d`` is the declared edge-size bound, at least the
    size of the largest edge (it may be larger); it defaults to the largest
    actual edge size.  Duplicate edges merge by weight sum; the empty edge is
    permitted and is contained in every vertex subset.
    """

    vertices: frozenset[int]
    edges: tuple[tuple[VertexSet, Weight], ...]
    alpha: int
    d: int = field(default=-1)

    def __post_init__(self) -> None:
        verts = self.vertices
        if isinstance(verts, int):
            if verts < 0:
                raise InvalidInstanceError(f"bad vertex count {verts!r}")
            verts = frozenset(range(1, verts + 1))
        else:
            verts = frozenset(verts)
        for v in verts:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InvalidInstanceError(f"bad vertex id {v!r}")
        object.__setattr__(self, "vertices", verts)
        if not isinstance(self.alpha, int) or isinstance(self.alpha, bool) or self.alpha < 0:
            raise InvalidInstanceError(f"target must be a non-negative integer, got {self.alpha!r}")
        normalized = []
        for raw, wt in self.edges:
            e = frozenset(raw)
            if not e <= verts:
                raise InvalidInstanceError(f"edge {sorted(e)} leaves the vertex set")
            normalized.append((e, wt))
        merged = _merge_weighted(normalized)
        object.__setattr__(self, "edges", merged)
        max_size = max((len(e) for e, _ in merged), default=0)
        d = self.d
        if d == -1:
            d = max_size
        if not isinstance(d, int) or d < max_size:
            raise InvalidInstanceError(f"edge size bound {d!r} below largest edge {max_size}")
        object.__setattr__(self, "d", d)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)


def eval_formula(phi: WeightedFormula, beta: Assignment) -> int:
    """Signed weight sum of the clauses satisfied by ``beta``."""
    if len(beta.values) != phi.num_vars:
        raise InvalidInstanceError(
            f"assignment over {len(beta.values)} variables, formula has {phi.num_vars}"
        )
    vals = beta.values
    dnf = phi.kind == KIND_DNF
    total = 0
    for lits, wt in phi.clauses:
        if dnf:
            sat = all(vals[l - 1] if l > 0 else not vals[-l - 1] for l in lits)
        else:
            sat = any(vals[l - 1] if l > 0 else not vals[-l - 1] for l in lits)
        if sat:
            total += wt
    return total


def induced_weight(h: WeightedHypergraph, x: Iterable[int]) -> int:
    """Weight sum of all edges contained in X (the empty edge always is)."""
    xs = frozenset(x)
    if not xs <= h.vertices:
        raise InvalidInstanceError("subset contains unknown vertices")
    return sum(wt for e, wt in h.edges if e <= xs)


def link(h: WeightedHypergraph, c: Iterable[int]) -> tuple[VertexSet, ...]:
    """Edges strictly containing c, in the hypergraph's edge order."""
    cs = frozenset(c)
    return tuple(e for e, _ in h.edges if cs < e)


def degree(h: WeightedHypergraph, v: int) -> int:
    if v not in h.vertices:
        raise InvalidInstanceError(f"vertex {v} not in the hypergraph")
    return sum(1 for e, _ in h.edges if v in e)


def max_degree(h: WeightedHypergraph) -> int:
    """Largest vertex degree; 0 when there are no vertices or no incidences."""
    counts: dict[int, int] = {}
    for e, _ in h.edges:
        for v in e:
            counts[v] = counts.get(v, 0) + 1
    return max(counts.values(), default=0)


def _formula_engine_clauses(phi: WeightedFormula) -> list[tuple[int, int, int]]:
    out = []
    for lits, wt in phi.clauses:
        pos = 0
        neg = 0
        for l in lits:
            if l > 0:
                pos |= 1 << (l - 1)
            else:
                neg |= 1 << (-l - 1)
        out.append((pos, neg, wt))
    return out


def _check_cap(size: int, cap: int | None, what: str) -> None:
    limit = DEFAULT_ENUM_CAP if cap is None else cap
    if size > limit:
        raise BudgetExceededError(f"{what} enumeration over {size} exceeds cap {limit}")


def brute_force_formula(phi: WeightedFormula, *, max_vars: int | None = None) -> Verdict:
    """Exact decision by lexicographic enumeration of all assignments.

    Returns the first qualifying assignment in lexicographic order (variables
    ascending, false before true) together with its signed value.
    """
    _check_cap(phi.num_vars, max_vars, "assignment")
    found, mask, value = engine.decide(
        phi.num_vars,
        _formula_engine_clauses(phi),
        dnf=phi.kind == KIND_DNF,
        alpha=phi.alpha,
        absolute=phi.objective == OBJ_ABS,
        comparison=phi.comparison,
    )
    if not found:
        return Verdict(False)
    return Verdict(True, Assignment.from_mask(phi.num_vars, mask), value)


def _hypergraph_engine_clauses(h: WeightedHypergraph, order: list[int]) -> list[tuple[int, int, int]]:
    idx = {v: i for i, v in enumerate(order)}
    out = []
    for e, wt in h.edges:
        pos = 0
        for v in e:
            pos |= 1 << idx[v]
        out.append((pos, 0, wt))
    return out


def _mask_to_subset(mask: int, order: list[int]) -> VertexSet:
    return frozenset(v for i, v in enumerate(order) if mask >> i & 1)


def brute_force_hypergraph(h: WeightedHypergraph, *, max_vertices: int | None = None) -> Verdict:
    """Exact decision of |w[X]| >= alpha by subset enumeration.

    Subsets are enumerated in lexicographic order of the membership vector
    over ascending vertex ids, absent before present; the first X with
    |w[X]| >= alpha is the witness.  An edge inside X behaves exactly like a
    monotone conjunction over its vertices, so the formula engine is reused.
    """
    _check_cap(h.num_vertices, max_vertices, "subset")
    order = sorted(h.vertices)
    found, mask, value = engine.decide(
        len(order),
        _hypergraph_engine_clauses(h, order),
        dnf=True,
        alpha=h.alpha,
        absolute=True,
        comparison=CMP_ATLEAST,
    )
    if not found:
        return Verdict(False)
    return Verdict(True, _mask_to_subset(mask, order), value)


def _lex_rank(mask: int, n: int) -> int:
    # Rank of an assignment mask in lexicographic enumeration order
    # (variable 1 is the most significant position).
    r = 0
    for i in range(n):
        if mask >> i & 1:
            r |= 1 << (n - 1 - i)
    return r


def _pick_abs_extreme(n: int, maxv: int, argmax: int, minv: int, argmin: int) -> tuple[int, int]:
    best = max(maxv, -minv)
    cands = []
    if maxv == best:
        cands.append(argmax)
    if -minv == best:
        cands.append(argmin)
    mask = min(cands, key=lambda m: _lex_rank(m, n))
    return best, mask


def max_abs_formula(phi: WeightedFormula, *, max_vars: int | None = None) -> tuple[int, Assignment]:
    """Largest |value| over all assignments, with its earliest witness."""
    _check_cap(phi.num_vars, max_vars, "assignment")
    maxv, argmax, minv, argmin = engine.extremes(
        phi.num_vars, _formula_engine_clauses(phi), dnf=phi.kind == KIND_DNF
    )
    best, mask = _pick_abs_extreme(phi.num_vars, maxv, argmax, minv, argmin)
    return best, Assignment.from_mask(phi.num_vars, mask)


def max_abs_hypergraph(h: WeightedHypergraph, *, max_vertices: int | None = None) -> tuple[int, VertexSet]:
    """Largest |w[X]| over all subsets, with its earliest witness."""
    _check_cap(h.num_vertices, max_vertices, "subset")
    order = sorted(h.vertices)
    maxv, argmax, minv, argmin = engine.extremes(
        len(order), _hypergraph_engine_clauses(h, order), dnf=True
    )
    best, mask = _pick_abs_extreme(len(order), maxv, argmax, minv, argmin)
    return best, _mask_to_subset(mask, order)


def iter_subsets_lex(vertices: Iterable[int]) -> Iterator[VertexSet]:
    """Subsets of a vertex set in lexicographic membership-vector order."""
    order = sorted(set(vertices))
    n = len(order)
    for rank in range(1 << n):
        yield frozenset(order[i] for i in range(n) if rank >> (n - 1 - i) & 1)
