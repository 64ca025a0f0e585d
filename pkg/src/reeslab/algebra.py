"""Exact arithmetic in the truncated section algebra.

Elements live in the quotient of the section ring by the ideal of the
truncation level l and are stored in the canonical monomial basis, indexed by
(column alpha, level n): the basis element at (alpha, n) is
v^alpha * w^ceil(alpha*ubar) * x^n with w = 1 - x + v*x.  A second family,
z(alpha, n) = v^alpha * w^ceil((alpha-n)*ubar) * (x + x^2 + ...)^n, spans the
other affine chart; its expansion is unitriangular against the x-basis
(leading term at (alpha, n), tail strictly above level n).

Products reduce to the x-basis through the ceiling-defect rule
x(a,n)*x(a',n') = x(a+a', n+n') * w^delta with delta in {0, 1}; the
concrete Laurent-polynomial model (coefficients of v^alpha x^n) backs the
change of basis and serves as an independent multiplication oracle in tests.

Elements are immutable values by convention; all operations are pure.
Context caches are append-only dicts, safe for concurrent readers under the
GIL once a working window has been touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContextError, ContextMismatch, LevelError, NotAUnit, NotInF
from .fields import FieldSpec, coeff_str
from .geometry import ConeTables, pa_member, pb_member

Rows = dict  # level -> {column -> coefficient}


class AlgebraContext:
    """Slope data ubar = -u2/u plus the base field, with expansion caches."""

    def __init__(self, u2: int, u: int, field: FieldSpec):
        if u <= 0 or u2 < 0 or u2 > u or math.gcd(u2, u) != 1:
            raise ContextError(f"invalid slope pair ({u2}, {u})")
        self.u2 = u2
        self.u = u
        self.field = field
        self._wpow_cache: dict = {}
        self._z_cache: dict = {}
        self._laurent_w_cache: dict = {}
        self._series_cache: dict = {}

    def ceil_slope(self, alpha: int) -> int:
        """ceil(alpha * ubar) with exact integer semantics."""
        return -((alpha * self.u2) // self.u)

    @property
    def key(self):
        return (self.u2, self.u, self.field)

    def __repr__(self):
        return f"AlgebraContext(ubar=-{self.u2}/{self.u}, char={self.field.characteristic})"


def context_for(tri, field: FieldSpec) -> AlgebraContext:
    """Context for a normalized triangle's bottom slope."""
    return AlgebraContext(tri.u2, tri.u, field)


# ---------------------------------------------------------------------------
# Row-dict plumbing.  These are the hot paths; they stay free of abstraction.


def _radd(rows: Rows, n: int, alpha: int, c, p: int) -> None:
    if p:
        c %= p
    if not c:
        return
    row = rows.get(n)
    if row is None:
        rows[n] = {alpha: c}
        return
    v = row.get(alpha)
    if v is None:
        row[alpha] = c
        return
    v = v + c
    if p:
        v %= p
    if v:
        row[alpha] = v
    else:
        del row[alpha]
        if not row:
            del rows[n]


def _copy_rows(rows: Rows) -> Rows:
    return {n: dict(row) for n, row in rows.items()}


class AlgebraElement:
    """A finite x-basis combination in the level-l truncation."""

    __slots__ = ("ctx", "level", "rows")

    def __init__(self, ctx: AlgebraContext, level: int, rows: Rows):
        if level < 1:
            raise LevelError(f"truncation level must be >= 1, got {level}")
        self.ctx = ctx
        self.level = level
        self.rows = rows

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.rows

    def coeff(self, alpha: int, n: int):
        return self.rows.get(n, {}).get(alpha, self.ctx.field.of_int(0))

    def support(self) -> list[tuple[int, int]]:
        return [(a, n) for n in sorted(self.rows) for a in sorted(self.rows[n])]

    def level_component(self, n: int) -> dict:
        return dict(self.rows.get(n, {}))

    def min_level(self):
        return min(self.rows) if self.rows else None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self, other)
        p = self.ctx.field.characteristic
        rows = _copy_rows(self.rows)
        for n, row in other.rows.items():
            for a, c in row.items():
                _radd(rows, n, a, c, p)
        return AlgebraElement(self.ctx, self.level, rows)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        p = self.ctx.field.characteristic
        return AlgebraElement(self.ctx, self.level, {
            n: {a: (-c % p if p else -c) for a, c in row.items()}
            for n, row in self.rows.items()
        })

    def scaled(self, c) -> "AlgebraElement":
        fld = self.ctx.field
        if fld.is_zero(c):
            return AlgebraElement(self.ctx, self.level, {})
        p = fld.characteristic
        return AlgebraElement(self.ctx, self.level, {
            n: {a: (v * c % p if p else v * c) for a, v in row.items()}
            for n, row in self.rows.items()
        })

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.ctx.key == other.ctx.key and self.level == other.level
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ctx.key, self.level,
                     tuple((n, a, c) for (a, n) in self.support()
                           for c in [self.rows[n][a]])))

    def __repr__(self):
        terms = ", ".join(f"({a},{n}):{coeff_str(self.rows[n][a])}"
                          for (a, n) in self.support()[:8])
        more = "" if len(self.support()) <= 8 else ", ..."
        return f"<element l={self.level} {{{terms}{more}}}>"


def _check_same(e1: AlgebraElement, e2: AlgebraElement) -> None:
    if e1.ctx.key != e2.ctx.key or e1.level != e2.level:
        raise ContextMismatch(
            f"incompatible operands: {e1.ctx}@{e1.level} vs {e2.ctx}@{e2.level}")


# ---------------------------------------------------------------------------
# Basis elements and generic multiplication


def x_basis(ctx: AlgebraContext, l: int, alpha: int, n: int) -> AlgebraElement:
    if not 0 <= n < l:
        raise LevelError(f"basis level {n} outside [0, {l})")
    return AlgebraElement(ctx, l, {n: {alpha: ctx.field.of_int(1)}})


def one(ctx: AlgebraContext, l: int) -> AlgebraElement:
    return x_basis(ctx, l, 0, 0)


def zero(ctx: AlgebraContext, l: int) -> AlgebraElement:
    return AlgebraElement(ctx, l, {})


def _times_w_rows(ctx: AlgebraContext, l: int, rows: Rows) -> Rows:
    """rows * w, using w = 1 - x + vx and
    x(a,n)*vx = x(a+1,n+1)*w^d with d = ceil(a*ubar) - ceil((a+1)*ubar)."""
    u2, u, p = ctx.u2, ctx.u, ctx.field.characteristic
    out: Rows = {}
    pend = {n: dict(row) for n, row in rows.items()}
    for n in range(l):
        row = pend.pop(n, None)
        if not row:
            continue
        nxt = n + 1
        for a, c in row.items():
            _radd(out, n, a, c, p)
            if nxt >= l:
                continue
            _radd(out, nxt, a, -c, p)
            defect = ((a + 1) * u2) // u - (a * u2) // u  # in {0, 1}
            if defect == 0:
                _radd(out, nxt, a + 1, c, p)
            else:
                _radd(pend, nxt, a + 1, c, p)
    return out


def multiply(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    """Exact product in the truncation, canonical x-basis form."""
    _check_same(e1, e2)
    ctx, l = e1.ctx, e1.level
    u2, u, p = ctx.u2, ctx.u, ctx.field.characteristic
    direct: Rows = {}
    needw: Rows = {}
    rows2 = sorted(e2.rows.items())
    for n1, row1 in sorted(e1.rows.items()):
        for n2, row2 in rows2:
            n = n1 + n2
            if n >= l:
                break
            for a1, c1 in row1.items():
                k1 = -((a1 * u2) // u)
                for a2, c2 in row2.items():
                    a = a1 + a2
                    delta = k1 - ((a2 * u2) // u) + ((a * u2) // u)
                    c = c1 * c2
                    if delta == 0:
                        _radd(direct, n, a, c, p)
                    else:
                        _radd(needw, n, a, c, p)
    if needw:
        for n, row in _times_w_rows(ctx, l, needw).items():
            for a, c in row.items():
                _radd(direct, n, a, c, p)
    return AlgebraElement(ctx, l, direct)


def element_power(e: AlgebraElement, k: int) -> AlgebraElement:
    if k < 0:
        return element_power(invert_unit(e), -k)
    result = one(e.ctx, e.level)
    base = e
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base) if k > 1 else base
        k >>= 1
    return result


def w_element(ctx: AlgebraContext, l: int) -> AlgebraElement:
    """Canonical form of w = 1 - x + vx."""
    return AlgebraElement(ctx, l, _times_w_rows(ctx, l, {0: {0: ctx.field.of_int(1)}}))


# ---------------------------------------------------------------------------
# Powers of w against a basis element


def _binom_series(j: int, l: int) -> list[int]:
    """Integer coefficients of (1-x)^j mod x^l, j may be negative."""
    out = [1]
    c = 1
    if j >= 0:
        for i in range(min(j, l - 1)):
            c = -c * (j - i) // (i + 1)
            out.append(c)
    else:
        r = -j
        for i in range(l - 1):
            c = c * (r + i) // (i + 1)
            out.append(c)
    return out


def _comb_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient mod a prime via its base-p digits (Lucas)."""
    if k < 0 or k > n:
        return 0
    r = 1
    while k:
        r = r * math.comb(n % p, k % p) % p
        if not r:
            return 0
        n //= p
        k //= p
    return r


def _field_series(ctx: AlgebraContext, j: int, l: int) -> list:
    """Field-reduced coefficients of (1-x)^j mod x^l, cached per context."""
    key = (j, l)
    hit = ctx._series_cache.get(key)
    if hit is not None:
        return hit
    p = ctx.field.characteristic
    if p == 0:
        out = _binom_series(j, l)
    elif j >= 0:
        out = [(-_comb_mod(j, i, p) if i & 1 else _comb_mod(j, i, p)) % p
               for i in range(min(j, l - 1) + 1)]
    else:
        out = [_comb_mod(-j - 1 + i, i, p) for i in range(l)]
    ctx._series_cache[key] = out
    return out


def _mul_x_series_rows(rows: Rows, series: list[int], l: int, p: int) -> Rows:
    """rows * (sum_k series[k] x^k): pure level shifts, no column mixing."""
    out: Rows = {}
    for n, row in rows.items():
        for k, s in enumerate(series):
            if not s:
                continue
            nn = n + k
            if nn >= l:
                break
            for a, c in row.items():
                _radd(out, nn, a, c * s, p)
    return out


def _lemma_w_rows(ctx: AlgebraContext, l: int, alpha: int, k: int) -> Rows:
    """Closed-form x(alpha,0) * w^k for slope -1/2, by parity of alpha."""
    p = ctx.field.characteristic
    comb = (lambda n, r: _comb_mod(n, r, p)) if p else math.comb
    out: Rows = {}

    def emit(coef: int, j: int, col: int, lvl: int):
        # coef * (1-x)^j * x(col, lvl)
        if lvl >= l or not coef:
            return
        for i, s in enumerate(_field_series(ctx, j, l)):
            if lvl + i >= l:
                break
            if s:
                _radd(out, lvl + i, col, coef * s, p)

    if k == 0:
        _radd(out, 0, alpha, 1, p)
        return out
    if alpha % 2 == 0:
        for q in range(k):
            if 2 * q >= l:
                break
            emit(comb(k + q - 1, 2 * q), k - q, alpha + 2 * q, 2 * q)
            emit(comb(k + q, 2 * q + 1), k - q - 1, alpha + 2 * q + 1, 2 * q + 1)
    else:
        emit(1, k, alpha, 0)
        for q in range(k):
            if 2 * q + 1 >= l:
                break
            emit(comb(k + q, 2 * q + 1), k - q, alpha + 2 * q + 1, 2 * q + 1)
            emit(comb(k + q + 1, 2 * q + 2), k - q - 1, alpha + 2 * q + 2, 2 * q + 2)
    return out


def _w_power_rows(ctx: AlgebraContext, l: int, alpha: int, k: int) -> tuple[Rows, int]:
    """Cached rows of x(alpha0, 0) * w^k with alpha0 = alpha mod u, plus the
    column shift alpha - alpha0.  Shifting by multiples of u is exact because
    x(u*j, 0) multiplies through with defect 0."""
    if k < 0:
        raise ValueError("w power must be nonnegative here")
    alpha0 = alpha % ctx.u
    key = (alpha0, k, l)
    rows = ctx._wpow_cache.get(key)
    if rows is None:
        if ctx.u == 2 and ctx.u2 == 1:
            rows = _lemma_w_rows(ctx, l, alpha0, k)
        else:
            rows = {0: {alpha0: ctx.field.of_int(1)}}
            for _ in range(k):
                rows = _times_w_rows(ctx, l, rows)
        ctx._wpow_cache[key] = rows
    return rows, alpha - alpha0


def w_pow_expand(ctx: AlgebraContext, l: int, alpha: int, n: int, k: int) -> AlgebraElement:
    """Closed-form binomial expansion of x(alpha, n) * w^k (slope -1/2 only)."""
    if (ctx.u2, ctx.u) != (1, 2):
        raise ContextError("closed-form w powers require slope -1/2")
    if not 0 <= n < l:
        raise LevelError(f"basis level {n} outside [0, {l})")
    if k < 1:
        raise ValueError("k must be a positive integer")
    base = _lemma_w_rows(ctx, l, alpha % 2, k)
    shift = alpha - alpha % 2
    p = ctx.field.characteristic
    rows: Rows = {}
    for m, row in base.items():
        if m + n >= l:
            continue
        for a, c in row.items():
            _radd(rows, m + n, a + shift, c, p)
    return AlgebraElement(ctx, l, rows)


# ---------------------------------------------------------------------------
# Units


def invert_unit(e: AlgebraElement) -> AlgebraElement:
    """Two-sided inverse of a unit whose level-0 part is a nonzero constant."""
    ctx, l = e.ctx, e.level
    row0 = e.rows.get(0, {})
    if set(row0) != {0}:
        raise NotAUnit("level-0 component is not a nonzero multiple of the identity")
    c = row0[0]
    cinv = ctx.field.inv(c)
    # e = c(1 - g) with g supported on levels >= 1; inverse is c^-1 sum g^k.
    p = ctx.field.characteristic
    g_rows = {n: {a: (-(v * cinv) % p if p else -(v * cinv))
                  for a, v in row.items()}
              for n, row in e.rows.items() if n >= 1}
    g = AlgebraElement(ctx, l, g_rows)
    acc = one(ctx, l)
    term = one(ctx, l)
    for _ in range(1, l):
        term = multiply(term, g)
        if term.is_zero():
            break
        acc = acc + term
    return acc.scaled(cinv)


def xi_power(ctx: AlgebraContext, l: int, m: int) -> AlgebraElement:
    """m-th power of the chart transition unit (1-x)^u * w^(-u2)."""
    if l < 1:
        raise LevelError("truncation level must be >= 1")
    wexp = -ctx.u2 * m
    if wexp >= 0:
        rows, shift = _w_power_rows(ctx, l, 0, wexp)
        assert shift == 0
        base = AlgebraElement(ctx, l, _copy_rows(rows))
    else:
        base = element_power(invert_unit(w_element(ctx, l)), -wexp)
    series = _field_series(ctx, ctx.u * m, l)
    p = ctx.field.characteristic
    return AlgebraElement(ctx, l, _mul_x_series_rows(base.rows, series, l, p))


# ---------------------------------------------------------------------------
# The second basis


def _z_rows_base(ctx: AlgebraContext, l: int, alpha: int, n: int) -> tuple[Rows, int]:
    """Cached expansion rows of z(alpha0, n) with alpha0 = alpha mod u, and
    the column shift to apply."""
    alpha0 = alpha % ctx.u
    key = (alpha0, n, l)
    rows = ctx._z_cache.get(key)
    if rows is None:
        delta = ctx.ceil_slope(alpha0 - n) - ctx.ceil_slope(alpha0)
        assert delta >= 0
        wrows, shift0 = _w_power_rows(ctx, l, alpha0, delta)
        assert shift0 == 0
        p = ctx.field.characteristic
        shifted: Rows = {}
        for m, row in wrows.items():
            if m + n >= l:
                continue
            for a, c in row.items():
                _radd(shifted, m + n, a, c, p)
        rows = _mul_x_series_rows(shifted, _field_series(ctx, -n, l), l, p)
        assert rows.get(n, {}).get(alpha0) == ctx.field.of_int(1)
        tail_min = min((m for m in rows if m != n), default=None)
        assert tail_min is None or tail_min > n
        ctx._z_cache[key] = rows
    return rows, alpha - alpha0


def z_element(ctx: AlgebraContext, l: int, alpha: int, n: int) -> AlgebraElement:
    """Expansion of z(alpha, n) in the x-basis: leading coefficient 1 at
    (alpha, n), tail strictly above level n."""
    if not 0 <= n < l:
        raise LevelError(f"basis level {n} outside [0, {l})")
    rows, shift = _z_rows_base(ctx, l, alpha, n)
    if shift == 0:
        return AlgebraElement(ctx, l, _copy_rows(rows))
    return AlgebraElement(ctx, l, {
        m: {a + shift: c for a, c in row.items()} for m, row in rows.items()
    })


# ---------------------------------------------------------------------------
# Laurent-polynomial model (change of basis plus an independent oracle)


def _laurent_w_rows(ctx: AlgebraContext, l: int, k: int) -> Rows:
    """Rows of w^k in coordinates (level, v-degree), truncated."""
    cached = ctx._laurent_w_cache.get((k, l))
    if cached is not None:
        return cached
    p = ctx.field.characteristic
    comb = (lambda n, r: _comb_mod(n, r, p)) if p else math.comb
    rows: Rows = {}
    if k >= 0:
        # (1-x+vx)^k = sum_i C(k,i) (vx)^i (1-x)^(k-i)
        for i in range(min(k, l - 1) + 1):
            ci = comb(k, i)
            for j, s in enumerate(_field_series(ctx, k - i, l)):
                if i + j >= l:
                    break
                _radd(rows, i + j, i, ci * s, p)
    else:
        # w^-r = sum_j C(r-1+j, j) (x - vx)^j, and (x-vx)^j = x^j (1-v)^j.
        r = -k
        for j in range(l):
            cj = comb(r - 1 + j, j)
            for i in range(j + 1):
                _radd(rows, j, i, cj * comb(j, i) * (-1) ** i, p)
    ctx._laurent_w_cache[(k, l)] = rows
    return rows


def _laurent_basis_rows(ctx: AlgebraContext, l: int, alpha: int, n: int) -> Rows:
    """Laurent rows of the basis element at (alpha, n)."""
    base = _laurent_w_rows(ctx, l, ctx.ceil_slope(alpha))
    out: Rows = {}
    for m, row in base.items():
        if m + n >= l:
            continue
        out[m + n] = {a + alpha: c for a, c in row.items()}
    return out


def to_laurent(e: AlgebraElement) -> Rows:
    """Expand into coefficients of v^alpha x^n."""
    ctx, l = e.ctx, e.level
    p = ctx.field.characteristic
    out: Rows = {}
    for n, row in e.rows.items():
        for a, c in row.items():
            for m, lrow in _laurent_basis_rows(ctx, l, a, n).items():
                for col, v in lrow.items():
                    _radd(out, m, col, c * v, p)
    return out


def canonicalize_from_laurent(ctx: AlgebraContext, l: int, laurent: Rows) -> AlgebraElement:
    """Invert the triangular change of basis: ascending in level, the pure
    v^alpha x^n coefficient left after subtracting already-identified
    expansions is the coefficient at (alpha, n)."""
    p = ctx.field.characteristic
    residual: Rows = {}
    for n, row in laurent.items():
        if n >= l:
            raise LevelError(f"laurent level {n} outside [0, {l})")
        for a, c in row.items():
            _radd(residual, n, a, c, p)
    rows: Rows = {}
    for n in range(l):
        row = residual.get(n)
        if not row:
            continue
        picked = sorted(row.items())
        for a, c in picked:
            _radd(rows, n, a, c, p)
            for m, lrow in _laurent_basis_rows(ctx, l, a, n).items():
                for col, v in lrow.items():
                    _radd(residual, m, col, -(c * v), p)
        if residual.get(n):
            raise NotInF(f"level-{n} residual not consumed")
    if residual:
        raise NotInF("expansion left a nonzero residual")
    return AlgebraElement(ctx, l, rows)


def laurent_multiply(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    """Independent multiplication route through the Laurent model."""
    _check_same(e1, e2)
    ctx, l = e1.ctx, e1.level
    p = ctx.field.characteristic
    r1, r2 = to_laurent(e1), to_laurent(e2)
    prod: Rows = {}
    for n1, row1 in r1.items():
        for n2, row2 in r2.items():
            n = n1 + n2
            if n >= l:
                continue
            for a1, c1 in row1.items():
                for a2, c2 in row2.items():
                    _radd(prod, n, a1 + a2, c1 * c2, p)
    return canonicalize_from_laurent(ctx, l, prod)


# ---------------------------------------------------------------------------
# Decomposition into the two chart ideals


@dataclass
class DecompositionCertificate:
    """Routing of an element into chart pieces plus the unroutable residual.

    a_part holds x-basis coefficients at first-cone positions, b_part holds
    z-basis coefficients at second-cone positions, gap_residual the x-basis
    coefficients at positions covered by neither.  Re-expanding the three
    parts recovers the input exactly.
    """

    ctx: AlgebraContext
    level: int
    m: int
    overlap_policy: str
    a_part: dict
    b_part: dict
    gap_residual: dict

    def reexpand(self) -> AlgebraElement:
        out = zero(self.ctx, self.level)
        for (a, n), c in sorted(self.a_part.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            out = out + x_basis(self.ctx, self.level, a, n).scaled(c)
        for (a, n), c in sorted(self.b_part.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            out = out + z_element(self.ctx, self.level, a, n).scaled(c)
        for (a, n), c in sorted(self.gap_residual.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            out = out + x_basis(self.ctx, self.level, a, n).scaled(c)
        return out


def subspace_decompose(
    e: AlgebraElement, m: int, ct: ConeTables, policy: str = "A"
) -> DecompositionCertificate:
    """Greedy ascending-level reduction of e into A(m,l) + B(m,l) + gaps.

    At each level, coefficients at first-cone positions are absorbed as x-basis
    terms, second-cone positions as z-basis terms (subtracting the full z
    tail from the residual), overlap positions per the routing policy, and
    gap positions into the residual.
    """
    if policy not in ("A", "B"):
        raise ValueError(f"policy must be 'A' or 'B', got {policy!r}")
    ctx, l = e.ctx, e.level
    lead = e.min_level()
    if lead is not None and lead < m:
        raise LevelError(f"element has support at level {lead} below m={m}")
    p = ctx.field.characteristic
    residual = _copy_rows(e.rows)
    a_part: dict = {}
    b_part: dict = {}
    gaps: dict = {}
    for n in range(m, l):
        row = residual.get(n)
        if not row:
            continue
        for alpha in sorted(row):
            c = row[alpha]
            in_a = pa_member(ct, alpha, n)
            in_b = pb_member(ct, alpha, n)
            if in_a and (policy == "A" or not in_b):
                a_part[(alpha, n)] = c
                _radd(residual, n, alpha, -c, p)
            elif in_b:
                b_part[(alpha, n)] = c
                zrows, shift = _z_rows_base(ctx, l, alpha, n)
                for zn, zrow in zrows.items():
                    res_row = residual.get(zn)
                    if res_row is None:
                        res_row = residual[zn] = {}
                    for za, zc in zrow.items():
                        col = za + shift
                        v = res_row.get(col, 0) - c * zc
                        if p:
                            v %= p
                        if v:
                            res_row[col] = v
                        elif col in res_row:
                            del res_row[col]
                    if not res_row:
                        del residual[zn]
            else:
                gaps[(alpha, n)] = c
                _radd(residual, n, alpha, -c, p)
    assert not residual
    return DecompositionCertificate(
        ctx=ctx, level=l, m=m, overlap_policy=policy,
        a_part=a_part, b_part=b_part, gap_residual=gaps,
    )


# ---------------------------------------------------------------------------
# Debug dump


def dump_element(e: AlgebraElement) -> str:
    """Lines 'alpha n coeff' sorted by (n, alpha); coeff as integer or p/q."""
    lines = []
    for n in sorted(e.rows):
        row = e.rows[n]
        for a in sorted(row):
            lines.append(f"{a} {n} {coeff_str(row[a])}")
    return "\n".join(lines)
