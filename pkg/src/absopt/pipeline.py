"""End-to-end decision procedures gluing reductions, kernel, and enumeration.

Formula inputs are rewritten to a monotone conjunction form, encoded as a
weighted hypergraph, kernelized, and only if no rule certified the answer
handed to exact enumeration.  Witnesses always refer to the caller's original
instance and are re-checked against it before being returned; a witness that
fails its own re-check is a bug, not a "no".
"""

from __future__ import annotations

from .errors import ContractViolationError, InternalGuaranteeError
from .kernel import MODE_SUBEDGE, STATUS_TRIVIAL_YES, kernelize
from .model import (
    CMP_ATLEAST,
    CMP_ATMOST,
    CMP_EXACT,
    KIND_CNF,
    KIND_DNF,
    OBJ_ABS,
    Assignment,
    Verdict,
    WeightedFormula,
    WeightedHypergraph,
    brute_force_hypergraph,
    eval_formula,
    induced_weight,
)
from .reductions import (
    abs_cnf_to_abs_dnf,
    encode_dnf_as_hypergraph,
    monotonize_abs_dnf,
)


def qualifies(value: int, alpha: int, objective: str, comparison: str) -> bool:
    """Whether a signed value meets the target under objective/comparison."""
    measure = abs(value) if objective == OBJ_ABS else value
    if comparison == CMP_ATLEAST:
        return measure >= alpha
    if comparison == CMP_EXACT:
        return measure == alpha
    if comparison == CMP_ATMOST:
        return measure <= alpha
    raise ContractViolationError(f"unknown comparison {comparison!r}")


def verify_witness(instance, witness) -> tuple[bool, int]:
    """Check a claimed witness against its instance.

    Returns (qualifies, achieved value).  Accepts a ``WeightedFormula`` with
    an ``Assignment`` (or an iterable of true variables), a
    ``WeightedHypergraph`` with a vertex subset, or an ``AbsIoInstance`` with
    an integer point.
    """
    if isinstance(instance, WeightedFormula):
        if not isinstance(witness, Assignment):
            witness = Assignment.from_true_vars(instance.num_vars, witness)
        value = eval_formula(instance, witness)
        return (
            qualifies(value, instance.alpha, instance.objective, instance.comparison),
            value,
        )
    if isinstance(instance, WeightedHypergraph):
        value = induced_weight(instance, witness)
        return abs(value) >= instance.alpha, value
    from . import absio

    if isinstance(instance, absio.AbsIoInstance):
        return absio.verify_point(instance, witness)
    raise ContractViolationError(f"cannot verify against {type(instance).__name__}")


def solve_unbalanced(
    h: WeightedHypergraph,
    mode: str = MODE_SUBEDGE,
    *,
    max_vertices: int | None = None,
) -> Verdict:
    """Decide |w[X]| >= alpha for some vertex subset X.

    Kernelization runs first; when it certifies the answer the extracted
    subset is returned directly.  Otherwise the reduced instance is solved by
    exact enumeration.  Either way the witness is a subset of the original
    vertex set and its value is re-evaluated on the original hypergraph
    (deleted vertices touch no surviving edge and deleted edges weigh zero,
    so the value transfers).
    """
    outcome = kernelize(h, mode)
    transcript = outcome.transcript
    if outcome.status == STATUS_TRIVIAL_YES:
        ok, value = verify_witness(h, outcome.witness)
        if not ok:
            raise InternalGuaranteeError(
                f"kernel witness {sorted(outcome.witness)} scores {value} < {h.alpha}"
            )
        return Verdict(True, outcome.witness, value, transcript)
    reduced = outcome.instance
    transcript = transcript + (f"enumerate |V|={reduced.num_vertices}",)
    verdict = brute_force_hypergraph(reduced, max_vertices=max_vertices)
    if not verdict.decision:
        return Verdict(False, transcript=transcript)
    ok, value = verify_witness(h, verdict.witness)
    if not ok:
        raise InternalGuaranteeError(
            f"enumeration witness {sorted(verdict.witness)} scores {value} < {h.alpha}"
        )
    return Verdict(True, verdict.witness, value, transcript)


def _require_abs_atleast(phi: WeightedFormula, expected_kind: str) -> None:
    if phi.kind != expected_kind:
        raise ContractViolationError(f"expected {expected_kind} clauses, got {phi.kind}")
    if phi.objective != OBJ_ABS or phi.comparison != CMP_ATLEAST:
        raise ContractViolationError(
            "the kernel route decides |value| >= alpha only; "
            f"got objective={phi.objective} comparison={phi.comparison}"
        )


def solve_abs_dnf(
    phi: WeightedFormula,
    mode: str = MODE_SUBEDGE,
    *,
    max_vertices: int | None = None,
) -> Verdict:
    """Decide |value| >= alpha for a weighted conjunction-clause formula.

    The formula is monotonized (value preserved pointwise), its clause sets
    become hyperedges, and the hypergraph solver runs.  A yes answer carries
    an assignment re-checked on the input formula.
    """
    _require_abs_atleast(phi, KIND_DNF)
    mono, receipt = monotonize_abs_dnf(phi)
    transcript = ()
    if receipt.origins and mono.clauses != phi.clauses:
        transcript = (f"monotonize clauses={len(mono.clauses)}",)
    h, _ = encode_dnf_as_hypergraph(mono)
    transcript = transcript + (
        f"encode |V|={h.num_vertices} |E|={len(h.edges)} d={h.d}",
    )
    sub = solve_unbalanced(h, mode, max_vertices=max_vertices)
    transcript = transcript + sub.transcript
    if not sub.decision:
        return Verdict(False, transcript=transcript)
    beta = Assignment.from_true_vars(phi.num_vars, sub.witness)
    ok, value = verify_witness(phi, beta)
    if not ok:
        raise InternalGuaranteeError(
            f"assignment from subset {sorted(sub.witness)} scores {value}, "
            f"target {phi.alpha}"
        )
    return Verdict(True, beta, value, transcript)


def solve_abs_cnf(
    phi: WeightedFormula,
    mode: str = MODE_SUBEDGE,
    *,
    max_vertices: int | None = None,
    max_width: int | None = None,
) -> Verdict:
    """Decide |value| >= alpha for a weighted disjunction-clause formula."""
    _require_abs_atleast(phi, KIND_CNF)
    as_dnf, receipt = abs_cnf_to_abs_dnf(phi, max_width=max_width)
    verdict = solve_abs_dnf(as_dnf, mode, max_vertices=max_vertices)
    transcript = (f"minterms clauses={len(as_dnf.clauses)}",) + verdict.transcript
    if not verdict.decision:
        return Verdict(False, transcript=transcript)
    ok, value = verify_witness(phi, verdict.witness)
    if not ok:
        raise InternalGuaranteeError(
            f"assignment {verdict.witness.true_vars()} scores {value} on the "
            f"disjunction form, target {phi.alpha}"
        )
    return Verdict(True, verdict.witness, value, transcript)
