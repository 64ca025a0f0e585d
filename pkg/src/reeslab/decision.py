"""Theorem-level decision procedures, the family scanner, and the
reference-example verification suite.

Decision logic:

* characteristic 0: the column-count criterion decides exactly, and is
  cross-validated at runtime against the unit-factorization criterion;
* characteristic p with width < 1: always finitely generated;
* characteristic p with width 1: a bounded search for a witness, first
  through unit factorizations at m = 1..m_max, then through vanishing
  degree-zero cohomology on the windows indexed by (r, j).  A failed search
  is reported as inconclusive, never as a negative.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraContext, multiply, xi_power
from .cohomology import (
    DEFAULT_BRANCH_BUDGET,
    char0_b2_check,
    cohomology_dims,
    factorization_search,
    per_level_chi,
)
from .errors import InconsistencyError, RangeError, ReesLabError
from .fields import FieldSpec
from .geometry import (
    NormalizedTriangle,
    cone_tables,
    emu_check,
    normalize_triangle,
    period_data,
    toric_data,
)

VERSION = "0.1.0"

FG_EXACT = "FG_EXACT"
FG_WITNESS = "FG_WITNESS"
NOT_FG_EXACT = "NOT_FG_EXACT"
NO_WITNESS_UP_TO_BOUNDS = "NO_WITNESS_UP_TO_BOUNDS"

SLACK_ENV_VAR = "REESLAB_SLACK"


@dataclass(frozen=True)
class SearchBounds:
    """Finite truncation of the existential searches in characteristic p."""

    r_max: int = 1
    j_max: Optional[int] = None      # default: p-1 in char p, 1 otherwise
    m_max: int = 6
    branch_budget: int = DEFAULT_BRANCH_BUDGET
    slack: Optional[int] = None
    policy: str = "A"

    def resolve_j_max(self, p: int) -> int:
        if self.j_max is not None:
            return self.j_max
        return max(p - 1, 1) if p else 1

    def to_dict(self, p: int) -> dict:
        return {
            "r_max": self.r_max,
            "j_max": self.resolve_j_max(p),
            "m_max": self.m_max,
            "branch_budget": self.branch_budget,
            "policy": self.policy,
        }


def resolve_slack(bounds: SearchBounds, sigma: int) -> int:
    """Explicit bound wins, then the environment override, then sigma."""
    if bounds.slack is not None:
        if bounds.slack < sigma:
            raise RangeError(f"slack {bounds.slack} is below sigma={sigma}")
        return bounds.slack
    env = os.environ.get(SLACK_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise RangeError(f"{SLACK_ENV_VAR}={env!r} is not an integer") from exc
        if value < sigma:
            raise RangeError(f"{SLACK_ENV_VAR}={value} is below sigma={sigma}")
        return value
    return sigma


@dataclass
class Verdict:
    status: str
    witness: Optional[dict]
    emu: Optional[dict]
    probes: list
    bounds: dict

    @property
    def finitely_generated(self) -> Optional[bool]:
        if self.status in (FG_EXACT, FG_WITNESS):
            return True
        if self.status == NOT_FG_EXACT:
            return False
        return None


def _emu_dict(rep) -> dict:
    return {
        "holds": rep.holds,
        "column_counts": list(rep.column_counts),
        "sorted_counts": list(rep.sorted_counts),
    }


def decide(tri: NormalizedTriangle, field: FieldSpec,
           bounds: SearchBounds = SearchBounds()) -> Verdict:
    """Decide finite generation, or search for a bounded witness."""
    p = field.characteristic
    pd = period_data(tri)
    slack = resolve_slack(bounds, pd.sigma)

    if p == 0:
        emu = emu_check(tri)
        b2 = char0_b2_check(tri, branch_budget=bounds.branch_budget)
        assert b2 == emu.holds  # char0_b2_check raises otherwise
        return Verdict(
            status=FG_EXACT if emu.holds else NOT_FG_EXACT,
            witness=None,
            emu=_emu_dict(emu),
            probes=[],
            bounds=bounds.to_dict(p),
        )

    if tri.width < 1:
        return Verdict(
            status=FG_EXACT,
            witness={"kind": "narrow-width", "width": str(tri.width)},
            emu=None,
            probes=[],
            bounds=bounds.to_dict(p),
        )

    ctx = AlgebraContext(tri.u2, tri.u, field)
    ct = cone_tables(tri)
    probes: list[dict] = []

    # Unit-factorization probes first: they are cheap and carry the most
    # explicit certificates (see the worked-example witnesses at m=2, 3).
    for m in range(1, bounds.m_max + 1):
        out = factorization_search(ctx, ct, pd, m,
                                   branch_budget=bounds.branch_budget)
        probes.append(out.to_dict())
        if out.success:
            if multiply(out.unit_a, out.unit_b) != xi_power(ctx, m * tri.u, m):
                raise InconsistencyError("witness failed emission re-check")
            return Verdict(
                status=FG_WITNESS,
                witness={"kind": "A4", "m": m},
                emu=None,
                probes=probes,
                bounds=bounds.to_dict(p),
            )

    j_values = [1] + [j for j in range(2, bounds.resolve_j_max(p) + 1) if j % p]
    for r in range(bounds.r_max + 1):
        q = p**r
        for j in j_values:
            rep = cohomology_dims(ctx, ct, pd, pd.sigma * j * q,
                                  pd.sigma * (j + 1) * q,
                                  policy=bounds.policy, slack=slack)
            probes.append(rep.to_dict())
            if rep.h0 > 0:
                # Emission re-check: doubled scan margin and the flipped
                # routing policy must reproduce the dimensions.
                recheck = cohomology_dims(
                    ctx, ct, pd, rep.m, rep.l,
                    policy="B" if bounds.policy == "A" else "A",
                    slack=2 * slack)
                if (recheck.h0, recheck.h1) != (rep.h0, rep.h1):
                    raise InconsistencyError("witness failed emission re-check")
                return Verdict(
                    status=FG_WITNESS,
                    witness={"kind": "C4" if j == 1 else "C3",
                             "r": r, "j": j, "h0": rep.h0},
                    emu=None,
                    probes=probes,
                    bounds=bounds.to_dict(p),
                )

    return Verdict(
        status=NO_WITNESS_UP_TO_BOUNDS,
        witness=None,
        emu=None,
        probes=probes,
        bounds=bounds.to_dict(p),
    )


# ---------------------------------------------------------------------------
# The one-parameter family scanner


def family_triangle(g) -> NormalizedTriangle:
    """Normalized triangle of the family member g in [2, 3]."""
    g = Fraction(g)
    if not 2 <= g <= 3:
        raise RangeError(f"family parameter g={g} outside [2, 3]")
    return normalize_triangle([(g - 3, (3 - g) / 2), (g - 2, (2 - g) / 2), (0, 1)])


@dataclass
class ScanRow:
    g: Fraction
    verdict: Optional[Verdict]
    error: Optional[str]

    @property
    def status(self) -> str:
        return self.verdict.status if self.verdict else f"ERROR({self.error})"


def scan_family(g_values, field: FieldSpec,
                bounds: SearchBounds = SearchBounds()) -> list[ScanRow]:
    """Run the decision procedure across family members.

    Rows where an internal invariant fires are reported as errors instead of
    aborting the table; callers inspect row.error.
    """
    rows = []
    for g in g_values:
        tri = family_triangle(g)
        try:
            rows.append(ScanRow(g=Fraction(g), verdict=decide(tri, field, bounds),
                                error=None))
        except ReesLabError as exc:
            rows.append(ScanRow(g=Fraction(g), verdict=None,
                                error=f"{type(exc).__name__}: {exc}"))
    return rows


# ---------------------------------------------------------------------------
# Reference example verification suite


def factorize_integer(n: int) -> dict[int, int]:
    """Prime factorization by trial division (independent of any library)."""
    if n < 1:
        raise ValueError("expected a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


WORKED_VERTICES = (
    (Fraction(-5, 6), Fraction(5, 12)),
    (Fraction(1, 6), Fraction(-1, 12)),
    (Fraction(0), Fraction(1)),
)


@dataclass
class SuiteItem:
    name: str
    passed: bool
    detail: str


def reference_example_suite() -> list[SuiteItem]:
    """Re-derive the reference example's known data, one check per item."""
    items: list[SuiteItem] = []

    def check(name: str, passed: bool, detail: str = ""):
        items.append(SuiteItem(name=name, passed=bool(passed), detail=detail))

    tri = normalize_triangle(WORKED_VERTICES)
    pd = period_data(tri)
    ct = cone_tables(tri)

    # (a) dilation period and split
    check("a: sigma/theta/theta'",
          (pd.sigma, pd.theta, pd.theta_prime) == (12, 10, 2),
          f"got {(pd.sigma, pd.theta, pd.theta_prime)}")

    # (b) cone-table prefixes and both periodicity laws
    a_prefix = [ct.a(i) for i in range(11)]
    b_prefix = [ct.b(0), ct.b(-1), ct.b(-2)]
    periodic = all(ct.a(i + 10) == ct.a(i) + 12 for i in range(51)) and \
        all(ct.b(-i - 2) == ct.b(-i) + 12 for i in range(51))
    check("b: cone tables",
          a_prefix == [1, 1, 3, 4, 5, 6, 8, 8, 10, 11, 13]
          and b_prefix == [1, 6, 13] and periodic,
          f"a={a_prefix}, b={b_prefix}")

    # (c) weights, torsion, presentation matrix
    td = toric_data(tri)
    check("c: toric data",
          td.weights == (1, 1, 6) and td.torsion_order == 24
          and not td.i_is_prime
          and td.ideal_matrix == ((7, 2, 1), (11, 1, 10)),
          f"weights={td.weights}, d={td.torsion_order}")

    # (d) per-level Euler characteristics
    pattern = [per_level_chi(ct, pd, n) for n in range(12)]
    sums_ok = True
    for p, rmax in [(2, 2), (3, 1), (5, 1), (7, 0)]:
        for r in range(rmax + 1):
            q = p**r
            total = sum(per_level_chi(ct, pd, n) for n in range(12 * q, 24 * q))
            sums_ok = sums_ok and total == -2 * q
    check("d: chi pattern",
          pattern == [1, -1, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0] and sums_ok,
          f"pattern={pattern}")

    # (e) small-characteristic factorization witnesses
    ok = True
    details = []
    for p, m in [(2, 2), (3, 3)]:
        ctx = AlgebraContext(tri.u2, tri.u, FieldSpec(p))
        out = factorization_search(ctx, ct, pd, m)
        ok = ok and out.success
        details.append(f"char {p}: m={m} success={out.success}")
        verdict = decide(tri, FieldSpec(p))
        ok = ok and verdict.status == FG_WITNESS and verdict.witness == {
            "kind": "A4", "m": m}
    check("e: char 2/3 witnesses", ok, "; ".join(details))

    # (f) characteristic 5: no degree-zero sections, pivot counts p^r
    ok = True
    details = []
    ctx5 = AlgebraContext(tri.u2, tri.u, FieldSpec(5))
    for r in (0, 1):
        q = 5**r
        rep = cohomology_dims(ctx5, ct, pd, 12 * q, 24 * q)
        ok = ok and rep.h0 == 0 and rep.matrix.rank == q
        details.append(f"r={r}: h0={rep.h0} pivots={rep.matrix.rank}")
    check("f: char 5 vanishing", ok, "; ".join(details))

    # (g) characteristic 7, first window: no sections; the obstruction row
    # leads at the level-13 gap and also carries the level-20 gap.
    ctx7 = AlgebraContext(tri.u2, tri.u, FieldSpec(7))
    rep7 = cohomology_dims(ctx7, ct, pd, 12, 24)
    row = rep7.matrix.rows[0] if rep7.matrix.rows else {}
    check("g: char 7 window",
          rep7.h0 == 0 and rep7.matrix.pivot_gaps == [(11, 13)]
          and set(row) == {(11, 13), (17, 20)},
          f"h0={rep7.h0}, pivots={rep7.matrix.pivot_gaps}")

    # (h) the two remainder constants
    check("h: remainder constants",
          factorize_integer(101757) == {3: 1, 107: 1, 317: 1}
          and factorize_integer(250258653) == {3: 5, 23: 1, 44777: 1}
          and factorize_integer(44777) == {44777: 1},
          "101757, 250258653")

    return items
