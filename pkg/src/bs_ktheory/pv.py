"""Six-term exact sequence solver for crossed products by Z.

Given K0(A) and K1(A) with tracked generators and the induced automorphism,
the solver forms coinvariants C_i = coker(Id - alpha_*) and invariants
N_i = ker(Id - alpha_*) in each degree and assembles the two short exact
sequences

    0 -> C_0 -> K_0(A x Z) -> N_1 -> 0
    0 -> C_1 -> K_1(A x Z) -> N_0 -> 0

oriented with the coinvariants as the subobject. An extension is resolved
only when that is sound: a free (or trivial) quotient splits because free
modules are projective, and a trivial subobject identifies the middle with
the quotient. Anything else raises UnresolvedExtension rather than guessing.

Boundary convention (an axiom of this solver, not re-derived here): the
index map in degree one sends the class [u] of the implementing unitary to
-[1]. Installing it makes [u] a section generator over the invariants of
degree zero, which is what pins [u]'s infinite order; with the rule
disabled the solver still resolves the groups but leaves [u] undetermined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .abelian import (
    FgAbGroup,
    GroupHom,
    IntMatrix,
    _cokernel_ext,
    _kernel_ext,
    element_order,
    group_to_json,
    identity_minus,
    is_isomorphic,
    matrix_from_json,
    matrix_to_json,
    solve,
)
from .colimit import (
    AbObject,
    LadderMap,
    LocObject,
    LocalizedInt,
    ab_from_json,
    ab_to_json,
    coprime_part,
    ladder_cokernel,
    ladder_kernel,
)
from .errors import DomainError, UnresolvedExtension
from .ledger import KClass, KClassLedger, ledger_from_json, ledger_to_json

QUOTIENT_TAG = "‾"

SelfMap = Union[GroupHom, LadderMap]


@dataclass(frozen=True)
class KInput:
    """K-theory of the coefficient algebra, ready for the solver.

    The ledger must locate the unit class "[1]" in k0, and the degree-zero
    self-map must fix it (the automorphism is unital).
    """

    k0: AbObject
    k1: AbObject
    alpha0: SelfMap
    alpha1: SelfMap
    ledger: KClassLedger

    def __post_init__(self):
        _check_side(self.k0, self.alpha0, "alpha0")
        _check_side(self.k1, self.alpha1, "alpha1")
        for sym, entry in self.ledger.items():
            if entry.location in ("k0", "k1"):
                side = self.k0 if entry.location == "k0" else self.k1
                if entry.vector is None:
                    raise ValueError(f"ledger entry {sym!r} needs a coefficient vector")
                expected = side.gen_count if isinstance(side, FgAbGroup) else 1
                if len(entry.vector) != expected:
                    raise ValueError(f"ledger entry {sym!r} has the wrong vector length")
                if entry.order is not None:
                    if isinstance(side, FgAbGroup):
                        true_order = element_order(side, entry.vector)
                    else:
                        # nonzero elements of a localization are free
                        true_order = math.inf if entry.vector[0] else 1
                    if entry.order != true_order:
                        raise ValueError(
                            f"ledger entry {sym!r} annotates order {entry.order}, "
                            f"but the class has order {true_order}"
                        )
        unit = self.ledger.get("[1]")
        if unit is None or unit.location != "k0" or unit.vector is None:
            raise ValueError('the ledger must locate "[1]" in k0')
        if isinstance(self.k0, FgAbGroup):
            if len(unit.vector) != self.k0.gen_count:
                raise ValueError('"[1]" vector length does not match k0')
            if element_order(self.k0, unit.vector) != math.inf:
                raise ValueError('"[1]" must have infinite order (unital algebra)')
            if self.alpha0.apply(unit.vector) != self.k0.reduce(unit.vector):
                raise ValueError("alpha0 must fix the unit class")
        else:
            if len(unit.vector) != 1:
                raise ValueError('"[1]" vector over a localization has one coordinate')
            if unit.vector[0] == 0:
                raise ValueError('"[1]" must be nonzero')
            r = self.alpha0.rung.matrix.at(0, 0)
            if r != 1:
                raise ValueError("alpha0 must fix the unit class")


def _check_side(k: AbObject, alpha: SelfMap, label: str) -> None:
    if isinstance(k, FgAbGroup):
        if not isinstance(alpha, GroupHom):
            raise ValueError(f"{label} must be a GroupHom for a finitely generated side")
        if alpha.source != k or alpha.target != k:
            raise ValueError(f"{label} must be a self-map of its group")
    elif isinstance(k, LocObject):
        if not isinstance(alpha, LadderMap):
            raise ValueError(f"{label} must be a LadderMap for a localized side")
        if alpha.source != alpha.target:
            raise ValueError(f"{label} must be a self-map")
        if alpha.source.stage.gen_count != 1 or alpha.source.stage.free_rank != 1:
            raise ValueError(f"{label} must act on the rank-one stage of the localization")
        if alpha.source.bond.matrix.at(0, 0) != k.loc.n:
            raise ValueError(f"{label} bond must be multiplication by the inverted element")
        if not k.torsion.is_trivial:
            raise ValueError("localized sides with torsion are not supported as solver input")
    else:
        raise ValueError(f"unsupported representation for {label}")


@dataclass(frozen=True)
class SeqRecord:
    """One of the two short exact sequences, with how it was resolved."""

    sub: FgAbGroup
    middle: FgAbGroup
    quotient: FgAbGroup
    split: bool
    section: str


@dataclass(frozen=True)
class PvSolution:
    k0_crossed: FgAbGroup
    k1_crossed: FgAbGroup
    ledger_out: KClassLedger
    seq0: SeqRecord
    seq1: SeqRecord


class _Side:
    """Coinvariants and invariants of Id - alpha_* in one degree."""

    def __init__(
        self,
        coinv: FgAbGroup,
        push: Callable[[tuple[int, ...]], tuple[int, ...]],
        inv: FgAbGroup,
        inv_inclusion: GroupHom | None,
        in_invariants: Callable[[tuple[int, ...]], bool],
        express: Callable[[tuple[int, ...]], tuple[int, ...] | None],
        killed_note: str,
    ):
        self.coinv = coinv
        self.push = push
        self.inv = inv
        self.inv_inclusion = inv_inclusion
        self.in_invariants = in_invariants
        self.express = express
        self.killed_note = killed_note


def _fg_side(group: FgAbGroup, alpha: GroupHom) -> _Side:
    d = GroupHom(group, group, identity_minus(alpha.matrix))
    coker = _cokernel_ext(d)
    ker = _kernel_ext(d)
    return _Side(
        coinv=coker.group,
        push=lambda vec: coker.projection.apply(vec),
        inv=ker.group,
        inv_inclusion=ker.inclusion,
        in_invariants=lambda vec: not any(d.apply(vec)),
        express=lambda vec: solve(ker.inclusion, vec),
        killed_note="killed by the coinvariants projection",
    )


def _loc_side(obj: LocObject, alpha: LadderMap, degree: int) -> _Side:
    loc = obj.loc
    r = alpha.rung.matrix.at(0, 0)
    c = 1 - r
    if c == 0:
        raise UnresolvedExtension(
            f"Id - alpha vanishes on {loc.describe()}: coinvariants and "
            "invariants are the whole localization, which is not finitely generated",
            partial={"degree": degree, "group": ab_to_json(obj)},
        )
    cp = coprime_part(c, loc.n)
    if cp > 1:
        coinv = FgAbGroup(0, (cp,), (loc.symbol + QUOTIENT_TAG,))
        push = lambda vec: (vec[0] % cp,)
    else:
        coinv = FgAbGroup.trivial()
        push = lambda vec: ()

    # cross-check the closed form against the staged colimit computation
    d_ladder = LadderMap(
        alpha.source,
        alpha.target,
        GroupHom(alpha.source.stage, alpha.target.stage, IntMatrix(1, 1, (c,))),
    )
    staged = ladder_cokernel(d_ladder)
    assert isinstance(staged, FgAbGroup) and is_isomorphic(staged, coinv), (
        "staged cokernel disagrees with the coprime-part closed form"
    )
    staged_kernel = ladder_kernel(d_ladder)
    assert isinstance(staged_kernel, FgAbGroup) and staged_kernel.is_trivial

    inv = FgAbGroup.trivial()
    return _Side(
        coinv=coinv,
        push=push,
        inv=inv,
        inv_inclusion=None,
        in_invariants=lambda vec: vec[0] * c == 0,
        express=lambda vec: () if vec[0] == 0 else None,
        killed_note=f"order divides {abs(c)} (coinvariants of multiplication by {c})",
    )


def _make_side(k: AbObject, alpha: SelfMap, degree: int) -> _Side:
    if isinstance(k, LocObject) and k.loc.is_degenerate:
        # Z[1/(+-1)] is Z itself: fold into the finitely generated branch
        group = k.loc.as_group()
        r = alpha.rung.matrix.at(0, 0)
        return _fg_side(group, GroupHom(group, group, IntMatrix(1, 1, (r,))))
    if isinstance(k, FgAbGroup):
        return _fg_side(k, alpha)
    return _loc_side(k, alpha, degree)


class _Assembled:
    def __init__(
        self,
        record: SeqRecord,
        embed_sub: Callable[[tuple[int, ...]], tuple[int, ...]],
        embed_quot: Callable[[tuple[int, ...]], tuple[int, ...]],
        quot_free_at: int,
    ):
        self.record = record
        self.embed_sub = embed_sub
        self.embed_quot = embed_quot
        self.quot_free_at = quot_free_at  # index of the first quotient coordinate


def _unique_names(candidates: list[str]) -> tuple[str, ...]:
    seen: dict[str, int] = {}
    out = []
    for name in candidates:
        count = seen.get(name, 0)
        seen[name] = count + 1
        out.append(name if count == 0 else f"{name}{count + 1}")
    return tuple(out)


def _assemble(sub: FgAbGroup, quot: FgAbGroup, label: str) -> _Assembled:
    if quot.is_trivial:
        record = SeqRecord(sub, sub, quot, True, "trivial quotient: middle is the subobject")
        return _Assembled(record, lambda v: tuple(v), lambda v: sub.zero(), sub.free_rank)
    if sub.is_trivial:
        record = SeqRecord(sub, quot, quot, True, "trivial subobject: middle is the quotient")
        return _Assembled(record, lambda v: quot.zero(), lambda v: tuple(v), 0)
    if not quot.torsion:
        rs, rq, ts = sub.free_rank, quot.free_rank, len(sub.torsion)
        names = _unique_names(
            list(sub.gen_names[:rs]) + list(quot.gen_names) + list(sub.gen_names[rs:])
        )
        middle = FgAbGroup(rs + rq, sub.torsion, names)

        def embed_sub(v: tuple[int, ...]) -> tuple[int, ...]:
            return tuple(v[:rs]) + (0,) * rq + tuple(v[rs:])

        def embed_quot(v: tuple[int, ...]) -> tuple[int, ...]:
            return (0,) * rs + tuple(v) + (0,) * ts

        record = SeqRecord(sub, middle, quot, True, "free quotient: projective, so the sequence splits")
        return _Assembled(record, embed_sub, embed_quot, rs)
    raise UnresolvedExtension(
        f"{label}: quotient {quot.describe()} is neither trivial nor free; "
        "refusing to guess the extension",
        partial={"sequence": label, "sub": group_to_json(sub), "quotient": group_to_json(quot)},
    )


def _audit(record: SeqRecord) -> None:
    if record.split:
        assert record.middle.free_rank == record.sub.free_rank + record.quotient.free_rank
    if record.sub.free_rank == 0 and record.quotient.free_rank == 0:
        assert record.middle.order() == record.sub.order() * record.quotient.order()


def boundary_rule(ledger: KClassLedger) -> KClassLedger:
    """Record the boundary convention: the index map sends [u] to -[1].

    The consequence, drawn during a solve, is that [u] becomes a section
    generator over the degree-zero invariants whenever [1] lies there (it
    always does for a unital automorphism), with infinite order whenever
    [1] has infinite order.
    """
    unit = ledger.get("[1]")
    if unit is None or unit.location != "k0":
        raise ValueError('the boundary rule needs "[1]" located in k0')
    return ledger.with_entry(
        "[u]", KClass("unitary", None, None, "boundary image is -[1]; section over [1]")
    )


def pv_solve(kinput: KInput, apply_boundary_rule: bool = True) -> PvSolution:
    """Solve the six-term sequence for the crossed product by Z.

    Resolves both short exact sequences, pushes every tracked class of the
    coefficient algebra forward into the crossed-product groups through the
    coinvariants projection, and (with the boundary rule installed) adjoins
    the implementing unitary's class as a section generator in degree one.
    """
    ledger = kinput.ledger
    if apply_boundary_rule:
        ledger = boundary_rule(ledger)

    side0 = _make_side(kinput.k0, kinput.alpha0, 0)
    side1 = _make_side(kinput.k1, kinput.alpha1, 1)

    seq0 = _assemble(side0.coinv, side1.inv, "degree-0 sequence")
    seq1 = _assemble(side1.coinv, side0.inv, "degree-1 sequence")
    _audit(seq0.record)
    _audit(seq1.record)

    k0_crossed = seq0.record.middle
    k1_crossed = seq1.record.middle
    seq1_record = seq1.record

    unit = ledger["[1]"]
    unitary_symbols = sorted(sym for sym, e in ledger.items() if e.location == "unitary")

    out = KClassLedger()
    u_vector: tuple[int, ...] | None = None
    if apply_boundary_rule and unitary_symbols:
        # alpha is unital, so [1] is invariant; guarded rather than assumed
        assert side0.in_invariants(unit.vector), "unital automorphism must fix [1]"
        expressed = side0.express(unit.vector)
        assert expressed is not None
        u_vector = seq1.embed_quot(tuple(-x for x in expressed))
        quot = seq1.record.quotient
        if (
            quot.free_rank == 1
            and not quot.torsion
            and len(expressed) == 1
            and abs(expressed[0]) == 1
            and "u" not in k1_crossed.gen_names
        ):
            names = list(k1_crossed.gen_names)
            names[seq1.quot_free_at] = "u"
            k1_crossed = k1_crossed.renamed(names)
            seq1_record = SeqRecord(
                seq1.record.sub, k1_crossed, seq1.record.quotient, seq1.record.split, seq1.record.section
            )

    for symbol, entry in sorted(ledger.items()):
        if entry.location == "k0":
            vec = seq0.embed_sub(side0.push(entry.vector))
            note = side0.killed_note if (not any(vec) and any(entry.vector)) else ""
            out = out.with_entry(
                symbol, KClass("crossed0", vec, element_order(k0_crossed, vec), note)
            )
        elif entry.location == "k1":
            vec = seq1.embed_sub(side1.push(entry.vector))
            note = side1.killed_note if (not any(vec) and any(entry.vector)) else ""
            out = out.with_entry(
                symbol, KClass("crossed1", vec, element_order(k1_crossed, vec), note)
            )
        elif entry.location == "unitary":
            if u_vector is not None:
                out = out.with_entry(
                    symbol,
                    KClass(
                        "crossed1",
                        u_vector,
                        element_order(k1_crossed, u_vector),
                        "section generator over [1]; boundary image is -[1]",
                    ),
                )
            else:
                out = out.with_entry(
                    symbol,
                    KClass("crossed1", None, None, "boundary rule disabled: order undetermined"),
                )
        else:
            out = out.with_entry(symbol, entry)

    return PvSolution(k0_crossed, k1_crossed, out, seq0.record, seq1_record)


def bs_input(n: int) -> KInput:
    """Solver input for the group algebra of the solvable two-generator
    group with relator a b a^-1 b^-n, seen as a crossed product over the
    compact dual of Z[1/n].

    Degree zero is Z on the unit class with the identity action; degree one
    is Z[1/n] on the distinguished class "v" with the action multiplying
    by n. The ledger tracks [1], [b] (the class v) and [a] (the
    implementing unitary).
    """
    if n in (0, 1):
        raise DomainError("the construction requires n not in {0, 1}")
    k0 = FgAbGroup.free(1, ("1",))
    alpha0 = GroupHom.identity(k0)
    loc = LocalizedInt(n, "v")
    colim = loc.as_colim()
    alpha1 = LadderMap(colim, colim, GroupHom(colim.stage, colim.stage, IntMatrix(1, 1, (n,))))
    k1 = LocObject(loc)
    ledger = KClassLedger(
        {
            "[1]": KClass("k0", (1,), math.inf, "unit class"),
            "[b]": KClass("k1", (1,), math.inf, "distinguished class v of the localization"),
            "[a]": KClass("unitary", None, None, "implementing unitary"),
        }
    )
    return KInput(k0, k1, alpha0, alpha1, ledger)


# ---------------------------------------------------------------------------
# JSON forms


def _selfmap_to_json(k: AbObject, alpha: SelfMap) -> dict:
    if isinstance(alpha, GroupHom):
        return {"matrix": matrix_to_json(alpha.matrix)}
    return {"rung": alpha.rung.matrix.at(0, 0)}


def _selfmap_from_json(k: AbObject, data: dict, label: str) -> SelfMap:
    if isinstance(k, FgAbGroup):
        if "matrix" not in data:
            raise ValueError(f"{label} needs a matrix for a finitely generated side")
        m = matrix_from_json(data["matrix"], rows=k.gen_count, cols=k.gen_count)
        if m.rows == 0 and m.cols == 0:
            m = IntMatrix.zeros(k.gen_count, k.gen_count)
        return GroupHom(k, k, m)
    if "rung" not in data:
        raise ValueError(f"{label} needs a rung for a localized side")
    rung = data["rung"]
    r = int(rung[0][0]) if isinstance(rung, list) else int(rung)
    colim = k.loc.as_colim()
    return LadderMap(colim, colim, GroupHom(colim.stage, colim.stage, IntMatrix(1, 1, (r,))))


def kinput_to_json(kinput: KInput) -> dict:
    return {
        "k0": ab_to_json(kinput.k0),
        "k1": ab_to_json(kinput.k1),
        "alpha0": _selfmap_to_json(kinput.k0, kinput.alpha0),
        "alpha1": _selfmap_to_json(kinput.k1, kinput.alpha1),
        "ledger": ledger_to_json(kinput.ledger),
    }


def kinput_from_json(data: dict) -> KInput:
    if not isinstance(data, dict):
        raise ValueError("solver input must be a JSON object")
    for key in ("k0", "k1", "alpha0", "alpha1", "ledger"):
        if key not in data:
            raise ValueError(f"solver input is missing {key!r}")
    k0 = ab_from_json(data["k0"])
    k1 = ab_from_json(data["k1"])
    alpha0 = _selfmap_from_json(k0, data["alpha0"], "alpha0")
    alpha1 = _selfmap_from_json(k1, data["alpha1"], "alpha1")
    return KInput(k0, k1, alpha0, alpha1, ledger_from_json(data["ledger"]))


def _seq_to_json(record: SeqRecord) -> dict:
    return {
        "sub": group_to_json(record.sub),
        "middle": group_to_json(record.middle),
        "quotient": group_to_json(record.quotient),
        "split": record.split,
        "section": record.section,
    }


def solution_to_json(sol: PvSolution) -> dict:
    return {
        "k0_crossed": group_to_json(sol.k0_crossed),
        "k1_crossed": group_to_json(sol.k1_crossed),
        "seq0": _seq_to_json(sol.seq0),
        "seq1": _seq_to_json(sol.seq1),
        "ledger": ledger_to_json(sol.ledger_out),
    }
