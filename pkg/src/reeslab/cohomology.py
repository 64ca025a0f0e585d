"""Two-chart cohomology of truncated restriction windows, and the
multiplicative unit-factorization search.

For a window of levels [m, l) the global sections and the obstruction space
are computed from a finite matrix: one row per overlap position k*(theta,
sigma) in the window, obtained by reducing the difference z - x at that
position through the greedy two-cone decomposition and collecting the gap
residual.  With r the rank over the base field,

    h0 = #overlaps - r,        h1 = #gaps - r,

and h0 - h1 must equal the sum of per-level Euler characteristics, which is
checked on every call.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    AlgebraContext,
    AlgebraElement,
    multiply,
    invert_unit,
    one,
    subspace_decompose,
    x_basis,
    xi_power,
    z_element,
)
from .errors import (
    BudgetExceeded,
    ClaimViolation,
    InconsistencyError,
    TheoremViolation,
    WidthError,
)
from .fields import FieldSpec, coeff_str
from .geometry import (
    ConeTables,
    PeriodData,
    cone_tables,
    emu_check,
    overlaps_and_gaps,
    pa_member,
    pb_member,
    period_data,
)

DEFAULT_BRANCH_BUDGET = 10_000


def per_level_chi(ct: ConeTables, pd: PeriodData, n: int) -> int:
    """Overlap count minus gap count at a single level, exactly."""
    col_a = ct.min_pa_col(n)
    col_b = ct.max_pb_col(n)
    if col_a <= col_b:
        return col_b - col_a + 1
    return -(col_a - col_b - 1)


# ---------------------------------------------------------------------------
# Obstruction matrix


@dataclass
class ObstructionMatrix:
    m: int
    l: int
    overlaps: list
    gaps: list
    rows: list           # one gap-residual dict per overlap, in overlap order
    rank: int
    pivot_gaps: list


def _echelon_rank(rows, gaps, fld: FieldSpec):
    """Gaussian elimination over the field; gap order (level asc, column asc)
    fixes the pivot order.  Returns (rank, pivot positions)."""
    index = {pos: i for i, pos in enumerate(gaps)}
    pivots: dict[int, dict] = {}
    for row in rows:
        vec = {index[pos]: c for pos, c in row.items() if not fld.is_zero(c)}
        while vec:
            lead = min(vec)
            piv = pivots.get(lead)
            if piv is None:
                inv = fld.inv(vec[lead])
                pivots[lead] = {j: fld.mul(c, inv) for j, c in vec.items()}
                break
            factor = vec[lead]
            for j, c in piv.items():
                newc = fld.sub(vec.get(j, fld.of_int(0)), fld.mul(factor, c))
                if fld.is_zero(newc):
                    vec.pop(j, None)
                else:
                    vec[j] = newc
    return len(pivots), [gaps[i] for i in sorted(pivots)]


@dataclass
class CohomReport:
    m: int
    l: int
    characteristic: int
    h0: int
    h1: int
    chi: int
    chi_independent: int
    consistent: bool
    policy: str
    slack: int
    matrix: ObstructionMatrix

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "l": self.l,
            "char": self.characteristic,
            "overlaps": [list(p) for p in self.matrix.overlaps],
            "gaps": [list(p) for p in self.matrix.gaps],
            "rank": self.matrix.rank,
            "h0": self.h0,
            "h1": self.h1,
            "chi": self.chi,
            "chi_independent": self.chi_independent,
            "consistent": self.consistent,
            "pivot_gaps": [list(p) for p in self.matrix.pivot_gaps],
            "policy": self.policy,
            "slack": self.slack,
        }


def cohomology_dims(
    ctx: AlgebraContext,
    ct: ConeTables,
    pd: PeriodData,
    m: int,
    l: int,
    policy: str = "A",
    slack: Optional[int] = None,
) -> CohomReport:
    """Section and obstruction dimensions of the restriction window [m, l)."""
    if not 0 <= m < l:
        raise ValueError(f"need 0 <= m < l, got m={m}, l={l}")
    if slack is None:
        slack = pd.sigma
    overlaps, gaps = overlaps_and_gaps(ct, pd, m, l, slack=slack)
    rows = []
    for a0, n0 in overlaps:
        e = z_element(ctx, l, a0, n0) - x_basis(ctx, l, a0, n0)
        cert = subspace_decompose(e, m, ct, policy=policy)
        rows.append(cert.gap_residual)
    rank, pivot_gaps = _echelon_rank(rows, gaps, ctx.field)
    h0 = len(overlaps) - rank
    h1 = len(gaps) - rank
    chi = h0 - h1
    chi_independent = sum(per_level_chi(ct, pd, n) for n in range(m, l))
    if chi != chi_independent:
        raise InconsistencyError(
            f"window [{m}, {l}): h0-h1={chi} but per-level sum={chi_independent}")
    return CohomReport(
        m=m, l=l, characteristic=ctx.field.characteristic,
        h0=h0, h1=h1, chi=chi, chi_independent=chi_independent,
        consistent=True, policy=policy, slack=slack,
        matrix=ObstructionMatrix(
            m=m, l=l, overlaps=overlaps, gaps=gaps, rows=rows,
            rank=rank, pivot_gaps=pivot_gaps,
        ),
    )


# ---------------------------------------------------------------------------
# Vanishing-witness sets in characteristic p


@dataclass
class DSetReport:
    p: int
    r: int
    j: int
    d_positions: list
    count: int
    meets_bound: bool
    h0: int
    report: CohomReport


def d_set(
    ctx: AlgebraContext,
    ct: ConeTables,
    pd: PeriodData,
    p: int,
    r: int,
    j: int,
    policy: str = "A",
    slack: Optional[int] = None,
) -> DSetReport:
    """Pivot gap positions of the window [sigma*j*p^r, sigma*(j+1)*p^r).

    Requires width 1 (sigma = theta + theta_prime); the obstruction space
    vanishes in degree zero exactly when the pivot count reaches p^r.
    """
    if ctx.field.characteristic != p:
        raise ValueError(f"context characteristic {ctx.field.characteristic} != p={p}")
    if pd.theta + pd.theta_prime != pd.sigma:
        raise WidthError("window analysis requires a width-1 triangle")
    if r < 0 or j < 1:
        raise ValueError("need r >= 0 and j >= 1")
    import math

    if math.gcd(j, p) != 1:
        warnings.warn(f"j={j} is divisible by p={p}; the bound is uninformative")
    q = p**r
    rep = cohomology_dims(ctx, ct, pd, pd.sigma * j * q, pd.sigma * (j + 1) * q,
                          policy=policy, slack=slack)
    assert len(rep.matrix.overlaps) == q
    count = rep.matrix.rank
    return DSetReport(
        p=p, r=r, j=j,
        d_positions=rep.matrix.pivot_gaps,
        count=count,
        meets_bound=count >= q,
        h0=rep.h0,
        report=rep,
    )


# ---------------------------------------------------------------------------
# Unit factorization search


@dataclass
class FactorizationOutcome:
    success: bool
    m: int
    level: int
    unit_a: Optional[AlgebraElement] = None
    unit_b: Optional[AlgebraElement] = None
    obstruction: Optional[tuple] = None      # (level, {(alpha, n): coeff})
    branches_explored: int = 0

    def to_dict(self) -> dict:
        out = {
            "kind": "A4",
            "m": self.m,
            "l": self.level,
            "success": self.success,
            "branches_explored": self.branches_explored,
        }
        if self.obstruction is not None:
            lvl, res = self.obstruction
            out["obstruction"] = {
                "level": lvl,
                "residual": [[a, n, coeff_str(c)] for (a, n), c in sorted(res.items())],
            }
        return out


def _coefficient_splits(fld: FieldSpec, c):
    """Free-parameter grid for an overlap coefficient: the whole prime field
    in characteristic p, the two one-sided routings in characteristic 0."""
    if fld.is_modular:
        p = fld.characteristic
        return [(ca, (c - ca) % p) for ca in range(p)]
    return [(c, fld.of_int(0)), (fld.of_int(0), c)]


def factorization_search(
    ctx: AlgebraContext,
    ct: ConeTables,
    pd: PeriodData,
    m: int,
    branch_budget: int = DEFAULT_BRANCH_BUDGET,
) -> FactorizationOutcome:
    """Try to write the m-th transition-unit power as a product of units of
    the two chart subrings at truncation level m*u.

    Proceeds level by level on the residual; a nonzero gap coefficient is a
    definite obstruction for the current branch.  Overlap coefficients split
    into a free parameter searched over a finite grid, subject to the branch
    budget.  A successful factorization is re-verified by recomputing the
    product from scratch.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    l = m * ctx.u
    fld = ctx.field
    target = xi_power(ctx, l, m)
    state = {"branches": 0, "obstruction": None}

    def descend(u_a, u_b, rho, n):
        if n >= l:
            assert rho == one(ctx, l)
            return u_a, u_b
        row = rho.level_component(n)
        fa_terms: dict[int, object] = {}
        fb_terms: dict[int, object] = {}
        overlap_terms: list[tuple[int, object]] = []
        gap_terms: dict = {}
        for alpha in sorted(row):
            c = row[alpha]
            in_a = pa_member(ct, alpha, n)
            in_b = pb_member(ct, alpha, n)
            if in_a and in_b:
                if n % pd.sigma or alpha != (n // pd.sigma) * pd.theta:
                    raise ClaimViolation(
                        f"overlap at ({alpha}, {n}) off the "
                        f"({pd.theta}, {pd.sigma}) lattice")
                overlap_terms.append((alpha, c))
            elif in_a:
                fa_terms[alpha] = c
            elif in_b:
                fb_terms[alpha] = c
            else:
                gap_terms[(alpha, n)] = c
        if gap_terms:
            if state["obstruction"] is None:
                state["obstruction"] = (n, gap_terms)
            return None
        grids = [_coefficient_splits(fld, c) for _, c in overlap_terms]
        for choice in itertools.product(*grids) if grids else [()]:
            if grids:
                state["branches"] += 1
                if state["branches"] > branch_budget:
                    raise BudgetExceeded(
                        f"factorization search for m={m} exceeded "
                        f"{branch_budget} branches")
            fa = dict(fa_terms)
            fb = dict(fb_terms)
            for (alpha, _), (ca, cb) in zip(overlap_terms, choice):
                if not fld.is_zero(ca):
                    fa[alpha] = ca
                if not fld.is_zero(cb):
                    fb[alpha] = cb
            one_fa = one(ctx, l)
            for alpha, c in fa.items():
                one_fa = one_fa + x_basis(ctx, l, alpha, n).scaled(c)
            one_fb = one(ctx, l)
            for alpha, c in fb.items():
                one_fb = one_fb + z_element(ctx, l, alpha, n).scaled(c)
            new_rho = multiply(multiply(invert_unit(one_fa), rho), invert_unit(one_fb))
            got = descend(multiply(u_a, one_fa), multiply(one_fb, u_b), new_rho, n + 1)
            if got is not None:
                return got
        return None

    result = descend(one(ctx, l), one(ctx, l), target, 1)
    if result is None:
        return FactorizationOutcome(
            success=False, m=m, level=l,
            obstruction=state["obstruction"],
            branches_explored=state["branches"],
        )
    u_a, u_b = result
    # Independent verification of the certificate.
    if multiply(u_a, u_b) != xi_power(ctx, l, m):
        raise InconsistencyError("factorization certificate failed re-verification")
    for alpha, n in u_a.support():
        if (alpha, n) != (0, 0) and not pa_member(ct, alpha, n):
            raise InconsistencyError(
                f"first-chart unit has support outside its cone at ({alpha}, {n})")
    return FactorizationOutcome(
        success=True, m=m, level=l, unit_a=u_a, unit_b=u_b,
        branches_explored=state["branches"],
    )


def char0_b2_check(tri, branch_budget: int = DEFAULT_BRANCH_BUDGET) -> bool:
    """Characteristic-0 unit-factorization criterion at m=1, cross-checked
    against the column-count criterion; disagreement raises TheoremViolation.
    """
    from .fields import RATIONALS

    ctx = AlgebraContext(tri.u2, tri.u, RATIONALS)
    ct = cone_tables(tri)
    pd = period_data(tri)
    outcome = factorization_search(ctx, ct, pd, 1, branch_budget=branch_budget)
    emu = emu_check(tri)
    if outcome.success != emu.holds:
        raise TheoremViolation(
            f"unit factorization ({outcome.success}) disagrees with the "
            f"column-count criterion ({emu.holds}) for ubar=-{tri.u2}/{tri.u}, "
            f"x1={tri.x1}, x2={tri.x2}")
    return outcome.success
