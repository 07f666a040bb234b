"""Two-pipeline comparison of assembly-map sides, with a verdict report.

The topological side is the K-homology of the presentation two-complex;
the analytic side is the crossed-product K-theory from the six-term
solver. The two are computed by disjoint pipelines and compared as
abstract groups together with the distinguished generators: the basepoint
class against the unit class, and each group generator against its
unitary class. Orders are computed independently on each side, never
copied across.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .abelian import FgAbGroup, element_order, generates, group_to_json, is_isomorphic
from .errors import DomainError, UnspecifiedTraceValue
from .ledger import order_to_json
from .presentation import bs_presentation, classifying_space_k
from .pv import PvSolution, bs_input, pv_solve

# Conclusions imported from the literature, not re-proved here: how the
# distinguished topological classes match the analytic ones.
MATCHING_ASSUMPTIONS = (
    "the basepoint class maps to the unit class in degree zero",
    "in degree one the assembly map restricts to g -> [unitary of g] on the abelianization",
)


@dataclass(frozen=True)
class MatchLine:
    lhs_symbol: str
    rhs_symbol: str
    order_lhs: int | float
    order_rhs: int | float
    matched: bool


@dataclass(frozen=True)
class BcReport:
    n: int
    lhs_k0: FgAbGroup
    lhs_k1: FgAbGroup
    rhs_k0: FgAbGroup
    rhs_k1: FgAbGroup
    generator_matches: tuple[MatchLine, ...]
    verdict: bool
    trace_image: str
    assumptions: tuple[str, ...] = MATCHING_ASSUMPTIONS


def trace_image(solution: PvSolution) -> str:
    """Image of degree-zero K-theory under the canonical trace.

    The trace is declared only on the unit class ([1] -> 1); torsion dies
    in the reals. If the unit class does not generate modulo torsion, the
    trace value of some generator is genuinely unspecified and inventing
    one would be unsound, so this raises instead.
    """
    k0 = solution.k0_crossed
    unit = solution.ledger_out.get("[1]")
    if unit is None or unit.vector is None:
        raise UnspecifiedTraceValue('the ledger does not locate "[1]" in the solved K0')
    if k0.free_rank == 0:
        return "0"
    if k0.free_rank == 1 and abs(unit.vector[0]) == 1:
        return "Z"
    raise UnspecifiedTraceValue(
        "the unit class does not generate K0 modulo torsion; trace values of "
        "the remaining generators are unspecified"
    )


def bc_compare(n: int) -> BcReport:
    """Build both sides for the parameter n and match the generators.

    The verdict is true exactly when both degrees are abstractly isomorphic
    and every distinguished generator has the same order on both sides
    (with the degree-zero classes also generating)."""
    if n in (0, 1):
        raise DomainError("the comparison requires n not in {0, 1}")

    lhs_k0, lhs_k1, lhs_ledger = classifying_space_k(bs_presentation(n))
    solution = pv_solve(bs_input(n))
    rhs_k0, rhs_k1 = solution.k0_crossed, solution.k1_crossed
    rhs_ledger = solution.ledger_out

    pt = lhs_ledger["[pt]"]
    unit = rhs_ledger["[1]"]
    ord_pt = element_order(lhs_k0, pt.vector)
    ord_unit = element_order(rhs_k0, unit.vector)
    base_match = MatchLine(
        "[pt]",
        "[1]",
        ord_pt,
        ord_unit,
        ord_pt == ord_unit and generates(lhs_k0, pt.vector) and generates(rhs_k0, unit.vector),
    )

    a_lhs = lhs_ledger["a"]
    a_rhs = rhs_ledger["[a]"]
    ord_a_l = element_order(lhs_k1, a_lhs.vector)
    ord_a_r = element_order(rhs_k1, a_rhs.vector) if a_rhs.vector is not None else None
    a_match = MatchLine("a", "[a]", ord_a_l, ord_a_r, ord_a_l == ord_a_r)

    b_lhs = lhs_ledger["b"]
    b_rhs = rhs_ledger["[b]"]
    ord_b_l = element_order(lhs_k1, b_lhs.vector)
    ord_b_r = element_order(rhs_k1, b_rhs.vector)
    b_match = MatchLine("b", "[b]", ord_b_l, ord_b_r, ord_b_l == ord_b_r)

    matches = (base_match, a_match, b_match)
    verdict = (
        is_isomorphic(lhs_k0, rhs_k0)
        and is_isomorphic(lhs_k1, rhs_k1)
        and all(m.matched for m in matches)
    )
    return BcReport(n, lhs_k0, lhs_k1, rhs_k0, rhs_k1, matches, verdict, trace_image(solution))


# ---------------------------------------------------------------------------
# rendering


def report_to_json(report: BcReport) -> dict:
    return {
        "n": report.n,
        "lhs": {"k0": group_to_json(report.lhs_k0), "k1": group_to_json(report.lhs_k1)},
        "rhs": {"k0": group_to_json(report.rhs_k0), "k1": group_to_json(report.rhs_k1)},
        "matches": [
            {
                "lhs": m.lhs_symbol,
                "rhs": m.rhs_symbol,
                "order_lhs": order_to_json(m.order_lhs),
                "order_rhs": order_to_json(m.order_rhs),
                "matched": m.matched,
            }
            for m in report.generator_matches
        ],
        "verdict": report.verdict,
        "trace_image": report.trace_image,
        "assumptions": list(report.assumptions),
    }


def _order_str(order: int | float | None) -> str:
    if order is None:
        return "?"
    if order == math.inf:
        return "inf"
    return str(order)


def render_report(report: BcReport) -> str:
    lines = [
        f"two-sided K-computation for parameter n = {report.n}",
        f"  classifying-space side:  K0 = {report.lhs_k0}, K1 = {report.lhs_k1}",
        f"  group-algebra side:      K0 = {report.rhs_k0}, K1 = {report.rhs_k1}",
        "  generator matches:",
    ]
    for m in report.generator_matches:
        status = "ok" if m.matched else "MISMATCH"
        lines.append(
            f"    {m.lhs_symbol:5} <-> {m.rhs_symbol:5} "
            f"order {_order_str(m.order_lhs):>4} | {_order_str(m.order_rhs):<4} {status}"
        )
    lines.append(f"  verdict: {'ISOMORPHIC' if report.verdict else 'MISMATCH'}")
    lines.append(f"  trace image on K0: {report.trace_image}")
    lines.append("  imported matching assumptions:")
    for a in report.assumptions:
        lines.append(f"    - {a}")
    return "\n".join(lines)
