"""Scripted re-execution of the deduction chains, case by case.

Each script is a sequence of stages.  A stage feeds the engine exactly the
equation instances that the corresponding prose step uses, propagates to a
fixed point, and then asserts that the engine's candidate sets match the
claimed intermediate results.  A mismatch raises ReplayMismatchError.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import List, Optional, Tuple

from .arith import represent_in_semigroup
from .constraints import Constraint, Multiplicative, SumOfSquares
from .gaussian import gauss
from .solver import (
    DEFAULT_BUDGET,
    DEFAULT_SET_CAP,
    SolverState,
    TraceStep,
    pin_by_induction,
)
from .squares import enumerate_representations, is_dubouis_exception


class ReplayMismatchError(AssertionError):
    """The engine's candidate set differs from the scripted claim."""

    def __init__(self, stage: str, variable: int, expected: str, got: str):
        self.stage = stage
        self.variable = variable
        self.expected = expected
        self.got = got
        super().__init__(
            f"stage {stage!r}: f({variable}) expected {expected}, got {got}"
        )


def _vset(*nums) -> frozenset:
    return frozenset(gauss(x) for x in nums)


def _pm(n: int) -> frozenset:
    return frozenset({gauss(n), gauss(-n)})


@dataclass(frozen=True)
class Expectation:
    """Claim about candidates(variable) at the end of a stage."""

    variable: int
    values: frozenset
    mode: str = "exact"  # "exact" or "within" (subset of the claim)

    def check(self, stage: str, state: SolverState) -> dict:
        got = state.candidates(self.variable)
        if self.mode == "exact":
            ok = got == self.values
        else:
            ok = got is not None and got <= self.values
        expected_s = "{" + ",".join(sorted(str(v) for v in self.values)) + "}"
        got_s = (
            "unknown"
            if got is None
            else "{" + ",".join(sorted(str(v) for v in got)) + "}"
        )
        if not ok:
            raise ReplayMismatchError(stage, self.variable, expected_s, got_s)
        return {
            "variable": self.variable,
            "mode": self.mode,
            "expected": expected_s,
            "got": got_s,
        }


@dataclass(frozen=True)
class ReplayStage:
    name: str
    constraints: Tuple[Constraint, ...] = ()
    expects: Tuple[Expectation, ...] = ()
    induction_range: Optional[Tuple[int, int]] = None
    joint_pair_check: bool = False  # the k >= 8 two-equation system check


@dataclass(frozen=True)
class StageOutcome:
    name: str
    claims: Tuple[dict, ...]
    steps: int

    def to_dict(self) -> dict:
        return {"name": self.name, "claims": list(self.claims), "steps": self.steps}


@dataclass(frozen=True)
class ReplayResult:
    k: int
    stages: Tuple[StageOutcome, ...]
    steps: Tuple[TraceStep, ...]
    state: SolverState

    def to_dict(self, include_trace: bool = True) -> dict:
        return {
            "k": self.k,
            "stages": [s.to_dict() for s in self.stages],
            "steps": [s.to_dict() for s in self.steps] if include_trace else [],
        }


def _sos(target: int, *parts: int) -> SumOfSquares:
    return SumOfSquares(target, tuple(sorted(parts, reverse=True)))


def _stages_k4() -> List[ReplayStage]:
    return [
        ReplayStage(
            "seed",
            (_sos(4, 1, 1, 1, 1),),
            (Expectation(4, _vset(4)),),
        ),
        ReplayStage(
            "chain-12",
            (_sos(12, 3, 1, 1, 1), Multiplicative(12, 3, 4)),
            (Expectation(3, _vset(1, 3)),),
        ),
        ReplayStage(
            "chain-20-28",
            (
                _sos(20, 3, 3, 1, 1),
                Multiplicative(20, 4, 5),
                _sos(28, 3, 3, 3, 1),
                Multiplicative(28, 4, 7),
            ),
            (Expectation(5, _vset(1, 5)), Expectation(7, _vset(1, 7))),
        ),
        ReplayStage(
            "chain-35",
            (_sos(35, 4, 3, 3, 1), Multiplicative(35, 5, 7)),
            (
                Expectation(3, _vset(3)),
                Expectation(5, _vset(5)),
                Expectation(7, _vset(7)),
            ),
        ),
        ReplayStage(
            "chain-10-7",
            (_sos(10, 2, 2, 1, 1), Multiplicative(10, 2, 5), _sos(7, 2, 1, 1, 1)),
            (Expectation(2, _vset(2)),),
        ),
        ReplayStage(
            "chain-18",
            (_sos(18, 3, 2, 2, 1), Multiplicative(18, 2, 9)),
            (Expectation(9, _vset(9)),),
        ),
        ReplayStage(
            "remaining-odd-exceptions",
            (
                _sos(22, 4, 2, 1, 1),
                Multiplicative(22, 2, 11),
                _sos(34, 5, 2, 2, 1),
                Multiplicative(34, 2, 17),
                _sos(58, 7, 2, 2, 1),
                Multiplicative(58, 2, 29),
                _sos(82, 7, 4, 4, 1),
                Multiplicative(82, 2, 41),
            ),
            (
                Expectation(11, _vset(11)),
                Expectation(17, _vset(17)),
                Expectation(29, _vset(29)),
                Expectation(41, _vset(41)),
            ),
        ),
        ReplayStage(
            "power-families",
            (
                _sos(40, 4, 4, 2, 2),
                Multiplicative(40, 5, 8),
                _sos(160, 8, 8, 4, 4),
                Multiplicative(160, 5, 32),
                Multiplicative(6, 2, 3),
                Multiplicative(24, 3, 8),
                Multiplicative(96, 3, 32),
                Multiplicative(14, 2, 7),
                Multiplicative(56, 7, 8),
                Multiplicative(224, 7, 32),
            ),
            (
                Expectation(8, _vset(8)),
                Expectation(32, _vset(32)),
                Expectation(6, _vset(6)),
                Expectation(24, _vset(24)),
                Expectation(96, _vset(96)),
                Expectation(14, _vset(14)),
                Expectation(56, _vset(56)),
                Expectation(224, _vset(224)),
            ),
        ),
    ]


def _stages_k5() -> List[ReplayStage]:
    return [
        ReplayStage(
            "seed",
            (_sos(5, 1, 1, 1, 1, 1),),
            (Expectation(5, _vset(5)),),
        ),
        ReplayStage(
            "chain-20",
            (
                _sos(20, 4, 1, 1, 1, 1),
                _sos(20, 2, 2, 2, 2, 2),
                Multiplicative(20, 4, 5),
            ),
            (Expectation(4, _vset(1, 4)),),
        ),
        ReplayStage(
            "chain-29",
            (
                _sos(29, 5, 1, 1, 1, 1),
                _sos(29, 3, 3, 3, 1, 1),
                _sos(29, 4, 2, 2, 2, 1),
            ),
            (
                Expectation(29, _vset(29)),
                Expectation(2, _pm(2)),
                Expectation(3, _pm(3)),
                Expectation(4, _vset(4)),
            ),
        ),
        ReplayStage(
            "sign-resolution",
            (
                _sos(13, 3, 1, 1, 1, 1),
                _sos(26, 4, 2, 2, 1, 1),
                Multiplicative(26, 2, 13),
                _sos(39, 4, 3, 3, 2, 1),
                Multiplicative(39, 3, 13),
                Multiplicative(6, 2, 3),
            ),
            (
                Expectation(2, _vset(2)),
                Expectation(3, _vset(3)),
                Expectation(6, _vset(6)),
            ),
        ),
        ReplayStage(
            "induction",
            (),
            tuple(Expectation(n, _vset(n)) for n in range(7, 21)),
            induction_range=(7, 20),
        ),
    ]


def _stages_k6() -> List[ReplayStage]:
    return [
        ReplayStage(
            "seed",
            (_sos(6, 1, 1, 1, 1, 1, 1),),
            (Expectation(6, _vset(6)),),
        ),
        ReplayStage(
            "block-30-41-21",
            (
                _sos(30, 5, 1, 1, 1, 1, 1),
                _sos(30, 3, 3, 3, 1, 1, 1),
                _sos(30, 4, 2, 2, 2, 1, 1),
                Multiplicative(30, 5, 6),
                _sos(41, 6, 1, 1, 1, 1, 1),
                _sos(41, 5, 3, 2, 1, 1, 1),
                _sos(21, 4, 1, 1, 1, 1, 1),
                _sos(21, 2, 2, 2, 2, 2, 1),
            ),
            (
                Expectation(2, _pm(2)),
                Expectation(3, _pm(3)),
                Expectation(4, _pm(4)),
                Expectation(5, _vset(5)),
            ),
        ),
        ReplayStage(
            "sign-resolution",
            (
                _sos(9, 2, 1, 1, 1, 1, 1),
                _sos(18, 2, 2, 2, 2, 1, 1),
                Multiplicative(18, 2, 9),
                _sos(36, 5, 2, 2, 1, 1, 1),
                Multiplicative(36, 4, 9),
                _sos(12, 2, 2, 1, 1, 1, 1),
                Multiplicative(12, 3, 4),
                Multiplicative(6, 2, 3),
            ),
            (
                Expectation(2, _vset(2)),
                Expectation(3, _vset(3)),
                Expectation(4, _vset(4)),
            ),
        ),
        ReplayStage(
            "induction",
            (),
            tuple(Expectation(n, _vset(n)) for n in range(7, 21)),
            induction_range=(7, 20),
        ),
    ]


def _stages_k7() -> List[ReplayStage]:
    return [
        ReplayStage(
            "seed",
            (_sos(7, 1, 1, 1, 1, 1, 1, 1),),
            (Expectation(7, _vset(7)),),
        ),
        ReplayStage(
            "chain-55",
            (_sos(55, 7, 1, 1, 1, 1, 1, 1), _sos(55, 5, 5, 1, 1, 1, 1, 1)),
            (Expectation(55, _vset(55)), Expectation(5, _pm(5))),
        ),
        ReplayStage(
            "block-31-42",
            (
                _sos(31, 3, 3, 3, 1, 1, 1, 1),
                _sos(31, 4, 2, 2, 2, 1, 1, 1),
                _sos(31, 5, 1, 1, 1, 1, 1, 1),
                # the 42 = 36 + 6 squares instance reads its largest part as
                # a single 6, tied to f(6) = f(2) f(3) by multiplicativity
                _sos(42, 6, 1, 1, 1, 1, 1, 1),
                _sos(42, 4, 3, 2, 2, 2, 2, 1),
                _sos(42, 5, 3, 2, 1, 1, 1, 1),
                Multiplicative(6, 2, 3),
            ),
            (
                Expectation(2, _pm(2)),
                Expectation(3, _pm(3)),
                Expectation(4, _pm(4)),
                Expectation(5, _pm(5)),
            ),
        ),
        ReplayStage(
            "sign-resolution",
            (
                _sos(13, 2, 2, 1, 1, 1, 1, 1),
                _sos(26, 3, 3, 2, 1, 1, 1, 1),
                Multiplicative(26, 2, 13),
                _sos(39, 5, 3, 1, 1, 1, 1, 1),
                Multiplicative(39, 3, 13),
                _sos(52, 4, 4, 4, 1, 1, 1, 1),
                Multiplicative(52, 4, 13),
                _sos(65, 6, 4, 3, 1, 1, 1, 1),
                Multiplicative(65, 5, 13),
                Multiplicative(6, 2, 3),
            ),
            (
                Expectation(2, _vset(2)),
                Expectation(3, _vset(3)),
                Expectation(4, _vset(4)),
                Expectation(5, _vset(5)),
                Expectation(6, _vset(6)),
            ),
        ),
        ReplayStage(
            "induction",
            (),
            tuple(Expectation(n, _vset(n)) for n in range(8, 21)),
            induction_range=(8, 20),
        ),
    ]


def _witness_rep(target: int, k: int, max_part: int) -> Optional[Tuple[int, ...]]:
    """One k-square representation of target with parts <= max_part."""
    enum = enumerate_representations(target, k, limit=1, max_part=max_part)
    if not enum.representations:
        return None
    return enum.representations[0].parts


def _sign_witness(k: int, q: int, max_part: int) -> int:
    """Smallest m > k with gcd(m, q) = 1 and m, q*m both k-representable
    with small parts."""
    m = k + 1
    while True:
        if (
            gcd(m, q) == 1
            and not is_dubouis_exception(m, k)
            and _witness_rep(m, k, max_part) is not None
            and _witness_rep(q * m, k, max_part) is not None
        ):
            return m
        m += 1


def _stages_general(k: int) -> List[ReplayStage]:
    pad = lambda core: tuple(sorted(core, reverse=True)) + (1,) * (k - len(core))
    stages = [
        ReplayStage(
            "seed",
            (SumOfSquares(k, (1,) * k),),
            (Expectation(k, _vset(k)),),
        ),
        ReplayStage(
            "growth-k(k-1)",
            (
                SumOfSquares(k * (k - 1), (k - 1,) + (1,) * (k - 1)),
                Multiplicative(k * (k - 1), k - 1, k),
            ),
            (Expectation(k - 1, _vset(1, k - 1)),),
        ),
        ReplayStage(
            "double-representations-40-32",
            (
                SumOfSquares(k + 35, pad((6,))),
                SumOfSquares(k + 35, pad((3, 3, 3, 3, 2))),
                SumOfSquares(k + 24, pad((3, 3, 3))),
                SumOfSquares(k + 24, (2,) * 8 + (1,) * (k - 8)),
                Multiplicative(6, 2, 3),
            ),
            (
                Expectation(2, _vset(1, -1, 2, -2), "within"),
                Expectation(3, _vset(1, -1, 3, -3), "within"),
            ),
            joint_pair_check=True,
        ),
    ]
    twos, threes = represent_in_semigroup(2 * k - 1, 3, 8)
    construction = (
        (k - 1,)
        + (3,) * threes
        + (2,) * twos
        + (1,) * (k - twos - threes - 1)
    )
    stages.append(
        ReplayStage(
            "construction-k^2+k-1",
            (
                SumOfSquares(k * k + k - 1, (k,) + (1,) * (k - 1)),
                SumOfSquares(k * k + k - 1, construction),
            ),
            (
                Expectation(2, _pm(2)),
                Expectation(3, _pm(3)),
                Expectation(k - 1, _vset(k - 1)),
            ),
        )
    )
    small = [
        SumOfSquares(28 + (k - 4), pad((4, 2, 2, 2))),
        SumOfSquares(28 + (k - 4), pad((3, 3, 3))),
        SumOfSquares(27 + (k - 3), pad((5,))),
        SumOfSquares(50 + (k - 2), pad((7,))),
        SumOfSquares(50 + (k - 2), pad((5, 5))),
        SumOfSquares(65 + (k - 2), pad((8,))),
        SumOfSquares(65 + (k - 2), pad((7, 4))),
        SumOfSquares(85 + (k - 2), pad((9, 2))),
        SumOfSquares(85 + (k - 2), pad((7, 6))),
        Multiplicative(10, 2, 5),
    ]
    stages.append(
        ReplayStage(
            "small-identities",
            tuple(small),
            tuple(
                Expectation(n, _pm(n), "within") for n in range(2, 11)
            ),
        )
    )
    grown = max(25, isqrt(10 * (k + 24)) + 2)
    parametric = []
    for n in range(11, grown + 1):
        if n % 2:
            l = (n - 1) // 2
            lhs, rhs = (2 * l + 1, l - 2), (2 * l - 1, l + 2)
        else:
            l = n // 2
            lhs, rhs = (2 * l, l - 5), (2 * l - 4, l + 3)
        target = lhs[0] ** 2 + lhs[1] ** 2 + (k - 2)
        parametric.append(SumOfSquares(target, pad(lhs)))
        parametric.append(SumOfSquares(target, pad(rhs)))
    stages.append(
        ReplayStage(
            "parametric-growth",
            tuple(parametric),
            tuple(Expectation(n, _pm(n), "within") for n in range(11, grown + 1)),
        )
    )
    sign_constraints: List[Constraint] = []
    sign_expects = []
    seen: set = set()
    for q in range(2, 11):
        m = _sign_witness(k, q, grown)
        for t in (m, q * m):
            c = SumOfSquares(t, _witness_rep(t, k, grown))
            if c not in seen:
                seen.add(c)
                sign_constraints.append(c)
        sign_constraints.append(Multiplicative(q * m, min(q, m), max(q, m)))
        sign_expects.append(Expectation(q, _vset(q)))
    stages.append(
        ReplayStage("positivity", tuple(sign_constraints), tuple(sign_expects))
    )
    return stages


def _joint_pair_solutions(state: SolverState) -> set:
    """Pairs (a, b) from candidates(2) x candidates(3) satisfying both
    double-representation equations exactly."""
    cand2 = state.candidates(2) or set()
    cand3 = state.candidates(3) or set()
    g4, g5, g8, g3 = gauss(4), gauss(5), gauss(8), gauss(3)
    out = set()
    for a in cand2:
        for b in cand3:
            ab = a * b
            eq40 = ab * ab + g4 == a * a + g4 * (b * b)
            eq32 = g5 + g3 * (b * b) == g8 * (a * a)
            if eq40 and eq32:
                out.add((a, b))
    return out


EXPECTED_PAIR_SOLUTIONS = frozenset(
    (gauss(sa * a), gauss(sb * b))
    for (a, b) in ((1, 1), (2, 3))
    for sa in (1, -1)
    for sb in (1, -1)
)


def replay_script(
    k: int,
    *,
    set_cap: int = DEFAULT_SET_CAP,
    budget: int = DEFAULT_BUDGET,
) -> ReplayResult:
    """Run the scripted deduction for k, asserting every claimed intermediate."""
    if k < 4:
        raise ValueError("replay scripts exist for k >= 4")
    if k == 4:
        stages = _stages_k4()
    elif k == 5:
        stages = _stages_k5()
    elif k == 6:
        stages = _stages_k6()
    elif k == 7:
        stages = _stages_k7()
    else:
        stages = _stages_general(k)
    bound = max(4 * k, 60)
    state = SolverState(k, bound, set_cap=set_cap, budget=budget)
    outcomes = []
    for stage in stages:
        before = len(state.trace)
        if stage.constraints:
            state.add_constraints(stage.constraints)
            state.propagate()
        if stage.induction_range:
            lo, hi = stage.induction_range
            for n in range(lo, hi + 1):
                if not state.is_pinned(n):
                    pin_by_induction(state, n)
        claims = [e.check(stage.name, state) for e in stage.expects]
        if stage.joint_pair_check:
            got = _joint_pair_solutions(state)
            if got != set(EXPECTED_PAIR_SOLUTIONS):
                raise ReplayMismatchError(
                    stage.name,
                    0,
                    "{(+-1,+-1),(+-2,+-3)}",
                    "{" + ",".join(sorted(f"({a},{b})" for a, b in got)) + "}",
                )
            claims.append(
                {
                    "variable": "(2,3)",
                    "mode": "joint",
                    "expected": "{(+-1,+-1),(+-2,+-3)}",
                    "got": "{(+-1,+-1),(+-2,+-3)}",
                }
            )
        outcomes.append(
            StageOutcome(stage.name, tuple(claims), len(state.trace) - before)
        )
    return ReplayResult(k, tuple(outcomes), tuple(state.trace), state)
