"""Sound candidate-set propagation for the unknowns f(2), f(3), ...

Each unknown carries a value view (a finite set of exact values, or
unknown) and a square view (a finite set of possible squares, or unknown).
The square view exists because many deductions determine f(n)^2 exactly
while f(n) itself stays ambiguous up to sign or is not even representable
in the value domain.

Narrowing is uniform: every constraint (and every derived equation) is an
integer-coefficient polynomial equation over the unknowns.  A candidate is
removed only when no assignment of the other variables, drawn from their
current views, satisfies the equation; pruning that would require an
irrational root is skipped, so sets stay supersets of every complex
solution of the tracked system.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .arith import factorize
from .constraints import (
    Constraint,
    Monomial,
    Multiplicative,
    Poly,
    SumOfSquares,
    defining_poly,
    generate_constraints,
    mult_rhs,
    poly_add,
    poly_key,
    poly_mul,
    poly_normalize,
    poly_sub,
    poly_vars,
    sos_rhs,
)
from .gaussian import ONE, ZERO, GaussianRational, gauss
from .squares import enumerate_representations

DEFAULT_BUDGET = 5_000_000
DEFAULT_SET_CAP = 64
DEFAULT_REP_CAP = 16
DEFAULT_PAIR_CAP = 6
COMBINATION_CAP = 4096
RESULTANT_CAP = 4096


class ContradictionError(Exception):
    """A candidate set became empty: the tracked constraints are unsatisfiable."""

    def __init__(self, variable: int, constraint: str):
        self.variable = variable
        self.constraint = constraint
        super().__init__(f"candidates for f({variable}) emptied by {constraint}")


class BudgetExceededError(Exception):
    """Propagation ran out of its step budget; carries the partial state."""

    def __init__(self, state: "SolverState"):
        self.state = state
        super().__init__("propagation budget exceeded")


class MissingValueError(Exception):
    """A prime-power value needed for evaluation was not supplied."""

    def __init__(self, prime_power: int):
        self.prime_power = prime_power
        super().__init__(f"no value supplied for f({prime_power})")


class NoSmallRepresentationError(Exception):
    """n(n-1) has no k-square representation with all parts below n."""

    def __init__(self, n: int, target: int):
        self.n = n
        self.target = target
        super().__init__(
            f"{target} has no representation with parts below {n}"
        )


@dataclass(frozen=True)
class TraceStep:
    """One narrowing event: a candidate set actually shrank."""

    constraint: str
    variable: int
    view: str  # "value" or "square"
    before: Optional[Tuple[str, ...]]  # None means unknown
    after: Tuple[str, ...]
    rule: str

    def to_dict(self) -> dict:
        return {
            "constraint": self.constraint,
            "variable": self.variable,
            "view": self.view,
            "before": "unknown" if self.before is None else list(self.before),
            "after": list(self.after),
            "rule": self.rule,
        }


@dataclass(frozen=True)
class Violation:
    """A constraint whose two sides evaluate to different exact values."""

    constraint: str
    target: int
    lhs: GaussianRational
    rhs: GaussianRational

    def to_dict(self) -> dict:
        return {
            "constraint": self.constraint,
            "target": self.target,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


def _fmt_set(values: Optional[FrozenSet[GaussianRational]]) -> Optional[Tuple[str, ...]]:
    if values is None:
        return None
    return tuple(str(v) for v in sorted(values, key=lambda g: g.sort_key()))


_INT_CACHE: Dict[int, GaussianRational] = {}


def _gint(c: int) -> GaussianRational:
    g = _INT_CACHE.get(c)
    if g is None:
        g = gauss(c)
        _INT_CACHE[c] = g
    return g


class _Equation:
    __slots__ = (
        "eq_id", "poly", "label", "rule", "target", "vars", "var_powers", "decomp"
    )

    def __init__(
        self, eq_id: int, poly: Poly, label: str, rule: str, target: int = 0
    ):
        self.eq_id = eq_id
        self.poly = poly
        self.label = label
        self.rule = rule
        self.target = target
        self.vars = poly_vars(poly)
        powers: Dict[int, set] = {v: set() for v in self.vars}
        decomp: Dict[int, List[Tuple[int, Monomial, int]]] = {
            v: [] for v in self.vars
        }
        for mono, coeff in sorted(poly.items()):
            present = dict(mono)
            for v in self.vars:
                d = present.get(v, 0)
                if d:
                    powers[v].add(d)
                residual = tuple((u, p) for u, p in mono if u != v)
                decomp[v].append((d, residual, coeff))
        self.var_powers = {v: tuple(sorted(ps)) for v, ps in powers.items()}
        self.decomp = decomp


def _quadratic_roots(
    a: GaussianRational, b: GaussianRational, c: GaussianRational
) -> Optional[Tuple[GaussianRational, ...]]:
    """Exact roots of a w^2 + b w + c with a != 0, or None if irrational."""
    disc = b * b - _gint(4) * a * c
    sqrts = disc.exact_sqrts()
    if sqrts is None:
        return None
    r = sqrts[0]
    two_a = _gint(2) * a
    w1 = (-b + r) / two_a
    w2 = (-b - r) / two_a
    return (w1,) if w1 == w2 else (w1, w2)


class SolverState:
    """Mutable solver state: candidate views, equations, queue, and trace."""

    def __init__(
        self,
        k: int,
        bound: int,
        *,
        set_cap: int = DEFAULT_SET_CAP,
        pair_cap: int = DEFAULT_PAIR_CAP,
        budget: int = DEFAULT_BUDGET,
    ):
        if k < 2:
            raise ValueError("k must be >= 2")
        self.k = k
        self.bound = bound
        self.set_cap = set_cap
        self.pair_cap = pair_cap
        self.budget = budget
        self.trace: List[TraceStep] = []
        self._values: Dict[int, Optional[FrozenSet[GaussianRational]]] = {
            1: frozenset({ONE})
        }
        self._squares: Dict[int, Optional[FrozenSet[GaussianRational]]] = {
            1: frozenset({ONE})
        }
        self._equations: List[_Equation] = []
        self._eq_keys: set = set()
        self._var_eqs: Dict[int, List[int]] = {}
        self._forms: Dict[int, List[Tuple[str, Poly]]] = {}
        self._sos_seen: Dict[int, int] = {}
        self._pending: List[int] = []
        self._in_pending: set = set()
        self._ops = 0
        self._resultants = 0
        self._elim_tried: set = set()

    # -- candidate accessors ----------------------------------------------

    def candidates(self, n: int) -> Optional[FrozenSet[GaussianRational]]:
        return self._values.get(n)

    def square_candidates(self, n: int) -> Optional[FrozenSet[GaussianRational]]:
        return self._squares.get(n)

    def is_pinned(self, n: int) -> bool:
        return self._values.get(n) == frozenset({_gint(n)})

    # -- construction -------------------------------------------------------

    def add_constraints(self, constraints: Iterable[Constraint]) -> None:
        for c in constraints:
            if isinstance(c, SumOfSquares):
                kind = "sum"
                rhs = sos_rhs(c, split=False)
                forms = [(c.label(), rhs)]
                split = sos_rhs(c, split=True)
                if split != rhs:
                    forms.append((c.label() + "[split]", split))
                seen = self._sos_seen.get(c.target, 0)
                self._sos_seen[c.target] = seen + 1
                pairable = seen < self.pair_cap
            elif isinstance(c, Multiplicative):
                kind = "product"
                forms = [(c.label(), mult_rhs(c))]
                pairable = True
            else:
                raise TypeError(f"not a constraint: {c!r}")
            for lbl, rhs in forms:
                self._add_equation(
                    defining_poly(rhs, c.target), lbl, kind, target=c.target
                )
            registry = self._forms.setdefault(c.target, [])
            if pairable:
                for old_lbl, old_rhs in registry:
                    for lbl, rhs in forms:
                        self._add_equation(
                            poly_sub(rhs, old_rhs),
                            f"pair({c.target}): {lbl} ~ {old_lbl}",
                            "paired",
                            target=c.target,
                        )
                registry.extend(forms)

    def _add_equation(
        self, poly: Poly, label: str, rule: str, target: int = 0
    ) -> bool:
        poly = poly_normalize(poly)
        if not poly:
            return False
        key = poly_key(poly)
        if key in self._eq_keys:
            return False
        if not poly_vars(poly):
            raise ContradictionError(0, label)
        self._eq_keys.add(key)
        eq = _Equation(len(self._equations), poly, label, rule, target)
        self._equations.append(eq)
        for v in eq.vars:
            self._var_eqs.setdefault(v, []).append(eq.eq_id)
            self._values.setdefault(v, None)
            self._squares.setdefault(v, None)
        self._push(eq.eq_id)
        return True

    def _push(self, eq_id: int) -> None:
        if eq_id not in self._in_pending:
            self._in_pending.add(eq_id)
            heapq.heappush(self._pending, eq_id)

    def _touch(self, var: int) -> None:
        for eq_id in self._var_eqs.get(var, ()):
            self._push(eq_id)

    # -- narrowing ----------------------------------------------------------

    def propagate(self) -> "SolverState":
        """Run to a fixed point, deriving elimination equations on stalls."""
        while True:
            self._drain()
            if not self._stall_round():
                return self

    def _drain(self) -> None:
        while self._pending:
            eq_id = heapq.heappop(self._pending)
            self._in_pending.discard(eq_id)
            self._ops += 1
            if self._ops > self.budget:
                raise BudgetExceededError(self)
            eq = self._equations[eq_id]
            for var in eq.vars:
                self._narrow_var(eq, var)

    def _assignments(
        self, eq: _Equation, var: int
    ) -> Optional[Tuple[Tuple[int, ...], List[List[Tuple[str, GaussianRational]]]]]:
        """Per-other-variable assignment options, or None if some view is missing."""
        others: List[int] = []
        options: List[List[Tuple[str, GaussianRational]]] = []
        total = 1
        for u in eq.vars:
            if u == var:
                continue
            vals = self._values.get(u)
            sqs = self._squares.get(u)
            if any(p % 2 for p in eq.var_powers[u]):
                if vals is None:
                    return None
                opts = [("v", x) for x in sorted(vals, key=lambda g: g.sort_key())]
            else:
                if vals is not None:
                    opts = [("v", x) for x in sorted(vals, key=lambda g: g.sort_key())]
                elif sqs is not None:
                    opts = [("s", x) for x in sorted(sqs, key=lambda g: g.sort_key())]
                else:
                    return None
            others.append(u)
            options.append(opts)
            total *= len(opts)
            if total > COMBINATION_CAP:
                return None
        return tuple(others), options

    @staticmethod
    def _combo_coeffs(
        eq: _Equation,
        var: int,
        others: Tuple[int, ...],
        combo: Tuple[Tuple[str, GaussianRational], ...],
        pow_cache: Dict[Tuple[GaussianRational, int], GaussianRational],
    ) -> Dict[int, GaussianRational]:
        assign = dict(zip(others, combo))
        coeffs: Dict[int, GaussianRational] = {}
        for d, residual, coeff in eq.decomp[var]:
            acc = _gint(coeff)
            for u, p in residual:
                kind, x = assign[u]
                if kind == "s":  # square assignment; p is even here
                    p //= 2
                if p == 1:
                    acc = acc * x
                else:
                    key = (x, p)
                    xp = pow_cache.get(key)
                    if xp is None:
                        xp = x**p
                        pow_cache[key] = xp
                    acc = acc * xp
            prev = coeffs.get(d)
            coeffs[d] = acc if prev is None else prev + acc
        return {d: c for d, c in coeffs.items() if not c.is_zero()}

    def _narrow_var(self, eq: _Equation, var: int) -> None:
        prepared = self._assignments(eq, var)
        if prepared is None:
            return
        others, options = prepared
        combos = list(product(*options)) if options else [()]
        vals = self._values.get(var)
        sqs = self._squares.get(var)
        if vals is not None:
            self._filter_values(eq, var, vals, others, combos)
        elif sqs is not None and all(p % 2 == 0 for p in eq.var_powers[var]):
            self._filter_squares(eq, var, sqs, others, combos)
        else:
            self._create_from_unknown(eq, var, sqs, others, combos)

    def _filter_values(self, eq, var, vals, others, combos) -> None:
        remaining = set(vals)
        survivors = set()
        pow_cache: Dict = {}
        for combo in combos:
            coeffs = self._combo_coeffs(eq, var, others, combo, pow_cache)
            moved = []
            for c in remaining:
                total = ZERO
                for d, coef in coeffs.items():
                    total = total + coef * c**d
                if total.is_zero():
                    survivors.add(c)
                    moved.append(c)
            for c in moved:
                remaining.remove(c)
            if not remaining:
                return
        self._set_values(var, frozenset(survivors), eq, self._value_rule(eq, var))

    def _filter_squares(self, eq, var, sqs, others, combos) -> None:
        remaining = set(sqs)
        survivors = set()
        pow_cache: Dict = {}
        for combo in combos:
            coeffs = self._combo_coeffs(eq, var, others, combo, pow_cache)
            moved = []
            for s in remaining:
                total = ZERO
                for d, coef in coeffs.items():
                    total = total + coef * s ** (d // 2)
                if total.is_zero():
                    survivors.add(s)
                    moved.append(s)
            for s in moved:
                remaining.remove(s)
            if not remaining:
                return
        self._set_squares(var, frozenset(survivors), eq, self._value_rule(eq, var))

    def _create_from_unknown(self, eq, var, sqs, others, combos) -> None:
        even_only = all(p % 2 == 0 for p in eq.var_powers[var])
        val_acc: set = set()
        sq_acc: set = set()
        val_ok = True
        sq_ok = True
        feasible = False
        pow_cache: Dict = {}
        for combo in combos:
            coeffs = self._combo_coeffs(eq, var, others, combo, pow_cache)
            degs = sorted(coeffs)
            if not degs or degs == [0]:
                if not degs or coeffs[0].is_zero():
                    return  # an unconstraining combination: no pruning at all
                continue  # infeasible combination contributes nothing
            feasible = True
            if not (val_ok or sq_ok):
                continue
            if even_only and max(degs) <= 4:
                # polynomial in u = var^2 of degree <= 2
                c4 = coeffs.get(4, ZERO)
                c2 = coeffs.get(2, ZERO)
                c0 = coeffs.get(0, ZERO)
                if c4.is_zero():
                    roots_u: Optional[Tuple[GaussianRational, ...]] = (-c0 / c2,)
                else:
                    roots_u = _quadratic_roots(c4, c2, c0)
                if roots_u is None:
                    val_ok = sq_ok = False
                    continue
                for u in roots_u:
                    sq_acc.add(u)
                    ws = u.exact_sqrts()
                    if ws is None:
                        val_ok = False
                    else:
                        val_acc.update(ws)
            elif max(degs) <= 2:
                c2 = coeffs.get(2, ZERO)
                c1 = coeffs.get(1, ZERO)
                c0 = coeffs.get(0, ZERO)
                if c2.is_zero():
                    roots: Optional[Tuple[GaussianRational, ...]] = (-c0 / c1,)
                else:
                    roots = _quadratic_roots(c2, c1, c0)
                if roots is None:
                    val_ok = sq_ok = False
                    continue
                for w in roots:
                    val_acc.add(w)
                    sq_acc.add(w.square())
            else:
                # degree 3+ with odd terms: roots exist but are not solvable here
                val_ok = sq_ok = False
        if not feasible:
            raise ContradictionError(var, eq.label)
        rule = self._value_rule(eq, var)
        if val_ok:
            if sqs is not None:
                val_acc = {w for w in val_acc if w.square() in sqs}
            if not val_acc:
                raise ContradictionError(var, eq.label)
            if len(val_acc) <= self.set_cap:
                self._set_values(var, frozenset(val_acc), eq, rule)
                return
        if sq_ok:
            allowed = frozenset(sq_acc)
            if sqs is not None:
                allowed = frozenset(s for s in sqs if s in sq_acc)
            if not allowed:
                raise ContradictionError(var, eq.label)
            if len(allowed) <= self.set_cap:
                self._set_squares(var, allowed, eq, rule)

    @staticmethod
    def _value_rule(eq: _Equation, var: int) -> str:
        if eq.rule == "sum":
            return "forward" if var == eq.target else "backward"
        if eq.rule == "product":
            return "product"
        return eq.rule

    # -- state updates -------------------------------------------------------

    def _set_values(
        self,
        var: int,
        new_vals: FrozenSet[GaussianRational],
        eq: Optional[_Equation],
        rule: str,
    ) -> None:
        old = self._values.get(var)
        if old is not None:
            if not new_vals < old:
                return
        if not new_vals:
            raise ContradictionError(var, eq.label if eq else rule)
        self.trace.append(
            TraceStep(
                eq.label if eq else rule,
                var,
                "value",
                _fmt_set(old),
                _fmt_set(new_vals),
                rule,
            )
        )
        self._values[var] = new_vals
        image = frozenset(v.square() for v in new_vals)
        self._squares[var] = image
        self._touch(var)

    def _set_squares(
        self,
        var: int,
        new_sqs: FrozenSet[GaussianRational],
        eq: Optional[_Equation],
        rule: str,
    ) -> None:
        old = self._squares.get(var)
        if old is not None:
            if not new_sqs < old:
                return
        if not new_sqs:
            raise ContradictionError(var, eq.label if eq else rule)
        self.trace.append(
            TraceStep(
                eq.label if eq else rule,
                var,
                "square",
                _fmt_set(old),
                _fmt_set(new_sqs),
                rule,
            )
        )
        self._squares[var] = new_sqs
        self._touch(var)
        if self._values.get(var) is None:
            roots: List[GaussianRational] = []
            for s in new_sqs:
                ws = s.exact_sqrts()
                if ws is None:
                    return
                roots.extend(ws)
            if len(roots) <= self.set_cap:
                self._set_values(var, frozenset(roots), eq, "square-root")

    # -- elimination on stalls ------------------------------------------------

    def _stall_round(self) -> bool:
        """Derive resultants between equations sharing two unresolved unknowns."""
        if self._resultants >= RESULTANT_CAP:
            return False
        groups: Dict[Tuple[int, int], List[int]] = {}
        for eq in self._equations:
            unresolved = [v for v in eq.vars if self._values.get(v) is None]
            if len(unresolved) == 2:
                groups.setdefault(tuple(unresolved), []).append(eq.eq_id)
        added = False
        for pair in sorted(groups):
            ids = groups[pair]
            for i in range(len(ids)):
                for j in range(i + 1, len(ids)):
                    for x in pair:
                        key = (ids[i], ids[j], x)
                        if key in self._elim_tried:
                            continue
                        self._elim_tried.add(key)
                        ei, ej = self._equations[ids[i]], self._equations[ids[j]]
                        res = _resultant(ei.poly, ej.poly, x)
                        if res is None:
                            continue
                        res = poly_normalize(res)
                        if not res or len(res) > 24:
                            continue
                        if any(p > 4 for mono in res for _, p in mono):
                            continue
                        label = f"elim(f({x})): {ei.label} ~ {ej.label}"
                        self._resultants += 1
                        if self._add_equation(res, label, "eliminated"):
                            added = True
                        if self._resultants >= RESULTANT_CAP:
                            return added
        return added

    # -- reporting -------------------------------------------------------------

    def report(self, include_trace: bool = True) -> "SolverReport":
        pinned = []
        unresolved = []
        for n in range(1, self.bound + 1):
            if self.is_pinned(n):
                pinned.append(n)
            else:
                unresolved.append((n, _fmt_set(self._values.get(n))))
        return SolverReport(
            k=self.k,
            bound=self.bound,
            pinned=tuple(pinned),
            unresolved=tuple(unresolved),
            steps=tuple(self.trace) if include_trace else (),
            state=self,
        )


def _coeffs_in(poly: Poly, x: int, scale: int) -> Optional[List[Poly]]:
    """Coefficients [A0, A1, A2] of poly viewed in x^scale; None if degree > 2."""
    out: List[Poly] = [{}, {}, {}]
    for mono, c in poly.items():
        d = 0
        residual = []
        for u, p in mono:
            if u == x:
                d = p
            else:
                residual.append((u, p))
        if d % scale:
            return None
        d //= scale
        if d > 2:
            return None
        out[d] = poly_add(out[d], {tuple(residual): c})
    return out


def _resultant(p: Poly, q: Poly, x: int) -> Optional[Poly]:
    """Resultant of p and q eliminating x; vanishes on every common root."""

    def x_powers(poly: Poly) -> List[int]:
        return [pw for mono in poly for v, pw in mono if v == x]

    powers = x_powers(p) + x_powers(q)
    if not powers:
        return None
    scale = 2 if all(pw % 2 == 0 for pw in powers) else 1
    a = _coeffs_in(p, x, scale)
    b = _coeffs_in(q, x, scale)
    if a is None or b is None:
        return None
    a0, a1, a2 = a
    b0, b1, b2 = b
    deg_p = 2 if a2 else (1 if a1 else 0)
    deg_q = 2 if b2 else (1 if b1 else 0)
    if deg_p == 0 or deg_q == 0:
        return None
    if deg_p < deg_q:
        a0, a1, a2, b0, b1, b2 = b0, b1, b2, a0, a1, a2
        deg_p, deg_q = deg_q, deg_p
    if deg_p == 1:  # both linear
        return poly_sub(poly_mul(a1, b0), poly_mul(a0, b1))
    if deg_q == 1:  # quadratic vs linear
        t = poly_sub(poly_mul(a2, poly_mul(b0, b0)), poly_mul(a1, poly_mul(b1, b0)))
        return poly_add(t, poly_mul(a0, poly_mul(b1, b1)))
    # two quadratics
    t1 = poly_sub(poly_mul(a2, b0), poly_mul(a0, b2))
    t2 = poly_sub(poly_mul(a2, b1), poly_mul(a1, b2))
    t3 = poly_sub(poly_mul(a1, b0), poly_mul(a0, b1))
    return poly_sub(poly_mul(t1, t1), poly_mul(t2, t3))


@dataclass(frozen=True)
class SolverReport:
    """Outcome of a run: which arguments are pinned to their own value."""

    k: int
    bound: int
    pinned: Tuple[int, ...]
    unresolved: Tuple[Tuple[int, Optional[Tuple[str, ...]]], ...]
    steps: Tuple[TraceStep, ...]
    state: SolverState = field(repr=False, compare=False)

    @property
    def all_pinned(self) -> bool:
        return not self.unresolved

    def to_dict(self, include_trace: bool = True) -> dict:
        return {
            "k": self.k,
            "bound": self.bound,
            "pinned": list(self.pinned),
            "unresolved": [
                {"n": n, "candidates": "unknown" if c is None else list(c)}
                for n, c in self.unresolved
            ],
            "steps": [s.to_dict() for s in self.steps] if include_trace else [],
        }


def propagate(state: SolverState) -> SolverState:
    """Public alias: run the state's propagation to its fixed point."""
    return state.propagate()


def pin_by_induction(state: SolverState, n: int) -> SolverState:
    """Inject the n(n-1) step for one n and propagate.

    Requires f(m) = m for all m < n to actually pin f(n); the injected
    constraints are valid instances regardless, so this is always sound.
    """
    if n < 3:
        raise NoSmallRepresentationError(n, n * (n - 1))
    target = n * (n - 1)
    enum = enumerate_representations(target, state.k, limit=1, max_part=n - 1)
    if not enum.representations:
        raise NoSmallRepresentationError(n, target)
    rep = enum.representations[0]
    state.add_constraints(
        [SumOfSquares(target, rep.parts), Multiplicative(target, n - 1, n)]
    )
    return state.propagate()


def solve(
    k: int,
    bound: int,
    budget: int = DEFAULT_BUDGET,
    *,
    rep_cap: int = DEFAULT_REP_CAP,
    set_cap: int = DEFAULT_SET_CAP,
    pair_cap: int = DEFAULT_PAIR_CAP,
    induction: bool = True,
) -> SolverReport:
    """Generate constraints up to bound, propagate, and sweep the induction."""
    state = SolverState(k, bound, set_cap=set_cap, pair_cap=pair_cap, budget=budget)
    state.add_constraints(generate_constraints(k, bound, rep_cap))
    state.propagate()
    if induction:
        prefix_ok = True
        for n in range(2, bound + 1):
            if state.is_pinned(n):
                continue
            if not prefix_ok:
                continue
            try:
                pin_by_induction(state, n)
            except NoSmallRepresentationError:
                prefix_ok = False
                continue
            if not state.is_pinned(n):
                prefix_ok = False
    return state.report()


def check_function(
    values_on_prime_powers: Dict[int, GaussianRational],
    k: int,
    bound: int,
    rep_cap: int = DEFAULT_REP_CAP,
) -> List[Violation]:
    """Evaluate every generated constraint against a multiplicative f.

    The map gives f on prime powers; f extends multiplicatively.  Returns
    the constraints whose sides differ, with both exact side values.
    """
    table: Dict[int, GaussianRational] = {1: ONE}

    def evaluate(n: int) -> GaussianRational:
        got = table.get(n)
        if got is not None:
            return got
        acc = ONE
        for p, e in factorize(n).factors:
            q = p**e
            if q not in values_on_prime_powers:
                raise MissingValueError(q)
            acc = acc * values_on_prime_powers[q]
        table[n] = acc
        return acc

    violations: List[Violation] = []
    for c in generate_constraints(k, bound, rep_cap):
        lhs = evaluate(c.target)
        if isinstance(c, SumOfSquares):
            rhs = ZERO
            for x in c.parts:
                rhs = rhs + evaluate(x).square()
        else:
            rhs = evaluate(c.m) * evaluate(c.l)
        if lhs != rhs:
            violations.append(Violation(c.label(), c.target, lhs, rhs))
    return violations
