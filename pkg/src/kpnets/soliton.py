"""Numeric kernel for multi-line KP solitons.

Soliton data is a set of ordered real phases together with a totally
nonnegative matrix of coefficients.  From it the module builds the heat
hierarchy generators, the tau function as a weighted sum over column
subsets, the KP field u = 2 (log tau)_xx with exact term-wise x
derivatives, the dressing operator whose kernel is spanned by the
generators, and the real simple roots of its characteristic polynomial
together with their phase-interval tags.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (NonGenericTime, NonPositiveTau, SingularWronskian,
                     ValidationFailure)

IMAG_TOL = 1e-9
ROOT_GAP_TOL = 1e-8
WAVE_FLOOR = 1e-8
COND_GUARD = 1e12

Entry = int | float | Fraction


def theta(kappa: float, times: Sequence[float]) -> float:
    """Phase exponent sum_l kappa**l * t_l with t_1 first in ``times``."""
    value = 0.0
    power = 1.0
    for t in times:
        power *= kappa
        value += power * float(t)
    return value


@dataclass(frozen=True)
class SolitonData:
    """Ordered phases, a full-rank coefficient matrix, an evaluation time.

    ``times`` holds (t_1, t_2, t_3, ...) = (x, y, t, ...) and may be any
    finite length; missing entries are zero.  ``base`` is optional: when
    given, the matrix columns at those 1-based positions must form the
    identity in row order (reduced row echelon shape).  Construction
    checks structure only; total nonnegativity of the maximal minors is
    checked separately by ``minor_scan`` so that matrices inherited from
    network boundary measurements can skip the scan.
    """
    phases: tuple[float, ...]
    matrix: tuple[tuple[Entry, ...], ...]
    times: tuple[float, ...] = ()
    base: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "phases", tuple(float(k) for k in self.phases))
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        if self.base is not None:
            object.__setattr__(self, "base", tuple(int(j) for j in self.base))
        n = len(self.phases)
        k = len(self.matrix)
        if not 1 <= k <= n:
            raise ValidationFailure(f"need 1 <= k <= n, got k={k}, n={n}")
        for kap in self.phases:
            if not math.isfinite(kap):
                raise ValidationFailure("phases must be finite")
        if any(a >= b for a, b in zip(self.phases, self.phases[1:])):
            raise ValidationFailure("phases must be strictly increasing")
        for row in self.matrix:
            if len(row) != n:
                raise ValidationFailure("matrix rows must have one entry per phase")
            if not all(math.isfinite(float(v)) for v in row):
                raise ValidationFailure("matrix entries must be finite")
        if not all(math.isfinite(t) for t in self.times):
            raise ValidationFailure("times must be finite")
        a = np.array([[float(v) for v in row] for row in self.matrix])
        if np.linalg.matrix_rank(a) != k:
            raise ValidationFailure("matrix must have full row rank")
        if self.base is not None:
            if len(self.base) != k or sorted(set(self.base)) != list(self.base):
                raise ValidationFailure("base must list k distinct increasing columns")
            if self.base[0] < 1 or self.base[-1] > n:
                raise ValidationFailure("base columns must lie in 1..n")
            sub = a[:, [j - 1 for j in self.base]]
            if not np.allclose(sub, np.eye(k), atol=1e-12):
                raise ValidationFailure("matrix is not reduced with respect to the base")

    @property
    def k(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.phases)

    def at(self, times: Sequence[float]) -> "SolitonData":
        """Copy of the data with the evaluation time replaced."""
        return replace(self, times=tuple(float(t) for t in times))

    def thetas(self, times: Sequence[float] | None = None) -> tuple[float, ...]:
        tt = self.times if times is None else tuple(times)
        return tuple(theta(kap, tt) for kap in self.phases)


def _is_rational(value) -> bool:
    return isinstance(value, (int, Fraction))


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    # Gaussian elimination without pivot scaling; sizes stay tiny here.
    m = [row[:] for row in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            factor = m[r][col] / m[col][col]
            for c in range(col, size):
                m[r][c] -= factor * m[col][c]
    return det


def maximal_minor(data: SolitonData, columns: Sequence[int]):
    """Minor of the coefficient matrix on 1-based ``columns``.

    Exact Fraction when every entry involved is rational, float otherwise.
    """
    cols = [j - 1 for j in columns]
    if len(cols) != data.k:
        raise ValidationFailure("a maximal minor needs exactly k columns")
    rows = [[row[c] for c in cols] for row in data.matrix]
    if all(_is_rational(v) for row in rows for v in row):
        return _fraction_det([[Fraction(v) for v in row] for row in rows])
    return float(np.linalg.det(np.array([[float(v) for v in row] for row in rows])))


def minor_scan(data: SolitonData) -> dict[tuple[int, ...], object]:
    """All maximal minors keyed by column set; fails on a negative one.

    Rational matrices are scanned exactly; float matrices get a relative
    tolerance so roundoff at the zero boundary is not misread as a sign.
    """
    scale = max(1.0, max(abs(float(v)) for row in data.matrix for v in row))
    tol = 1e-12 * scale ** data.k
    minors: dict[tuple[int, ...], object] = {}
    bad = []
    for cols in itertools.combinations(range(1, data.n + 1), data.k):
        value = maximal_minor(data, cols)
        minors[cols] = value
        exact = isinstance(value, Fraction)
        if (value < 0) if exact else (float(value) < -tol):
            bad.append(cols)
    if bad:
        shown = ", ".join(str(c) for c in bad[:4])
        raise ValidationFailure(f"negative maximal minors at columns {shown}")
    return minors


@lru_cache(maxsize=None)
def _tau_terms(phases: tuple[float, ...], matrix) -> tuple[tuple[float, tuple[int, ...]], ...]:
    """Per-subset coefficients minor * product of phase differences.

    Subsets with zero coefficient are dropped; members are 0-based phase
    indices.  Cached on the immutable (phases, matrix) pair since the
    evaluation time does not enter.
    """
    k = len(matrix)
    data = SolitonData(phases, matrix)
    terms = []
    for cols in itertools.combinations(range(1, len(phases) + 1), k):
        minor = float(maximal_minor(data, cols))
        if minor == 0.0:
            continue
        vandermonde = 1.0
        for a, b in itertools.combinations(cols, 2):
            vandermonde *= phases[b - 1] - phases[a - 1]
        terms.append((minor * vandermonde, tuple(j - 1 for j in cols)))
    return tuple(terms)


def _term_sums(data: SolitonData, times: Sequence[float] | None = None):
    """Shifted exponential sums S_p = sum_I c_I K_I**p exp(E_I - M), p = 0..2.

    K_I is the x-frequency of the subset (sum of its phases) and M the
    largest exponent, so S_0 > 0 certifies a positive tau.
    """
    terms = _tau_terms(data.phases, data.matrix)
    thetas = data.thetas(times)
    exps = []
    freqs = []
    coefs = []
    for coef, members in terms:
        exps.append(sum(thetas[j] for j in members))
        freqs.append(sum(data.phases[j] for j in members))
        coefs.append(coef)
    shift = max(exps)
    s0 = s1 = s2 = 0.0
    for coef, e, f in zip(coefs, exps, freqs):
        w = coef * math.exp(e - shift)
        s0 += w
        s1 += w * f
        s2 += w * f * f
    return s0, s1, s2, shift


def tau(data: SolitonData) -> float:
    """Tau function value at the data's evaluation time.

    Sum over k-column subsets of minor * Vandermonde * exp(theta sum);
    strictly positive whenever the matrix is totally nonnegative.
    """
    s0, _, _, shift = _term_sums(data)
    if s0 <= 0.0:
        raise NonPositiveTau("tau is not positive; the matrix is not TNN")
    return s0 * math.exp(shift)


def u(data: SolitonData) -> float:
    """KP field u = 2 (log tau)_xx via exact term-wise x derivatives."""
    s0, s1, s2, _ = _term_sums(data)
    if s0 <= 0.0:
        raise NonPositiveTau("tau is not positive; the matrix is not TNN")
    return 2.0 * (s2 * s0 - s1 * s1) / (s0 * s0)


def u_grid(data: SolitonData, xs: Sequence[float], ys: Sequence[float],
           ts: Sequence[float]) -> np.ndarray:
    """u sampled on the product grid xs x ys x ts, shape (|xs|,|ys|,|ts|).

    Grid axes replace t_1..t_3; any higher stored times stay fixed.
    Exponents are shifted per grid point before exponentiating.
    """
    terms = _tau_terms(data.phases, data.matrix)
    coefs = np.array([c for c, _ in terms])
    kap = np.array(data.phases)
    tail = data.times[3:]
    x = np.asarray(xs, dtype=float)[:, None, None]
    y = np.asarray(ys, dtype=float)[None, :, None]
    t = np.asarray(ts, dtype=float)[None, None, :]
    freq = np.empty((len(terms), 3))
    const = np.empty(len(terms))
    for i, (_, members) in enumerate(terms):
        sub = kap[list(members)]
        freq[i] = [sub.sum(), (sub ** 2).sum(), (sub ** 3).sum()]
        const[i] = sum(theta(k, (0.0, 0.0, 0.0) + tail) for k in sub)
    exps = (freq[:, 0, None, None, None] * x + freq[:, 1, None, None, None] * y
            + freq[:, 2, None, None, None] * t + const[:, None, None, None])
    exps -= exps.max(axis=0, keepdims=True)
    w = coefs[:, None, None, None] * np.exp(exps)
    s0 = w.sum(axis=0)
    if not (s0 > 0.0).all():
        raise NonPositiveTau("tau is not positive on the grid")
    s1 = (w * freq[:, 0, None, None, None]).sum(axis=0)
    s2 = (w * freq[:, 0, None, None, None] ** 2).sum(axis=0)
    return 2.0 * (s2 * s0 - s1 * s1) / (s0 * s0)


def heat_solutions(data: SolitonData, times: Sequence[float] | None = None) -> tuple[float, ...]:
    """Generator values f_r = sum_j A_rj exp(theta_j) at the given time."""
    thetas = np.array(data.thetas(times))
    shift = thetas.max()
    a = np.array([[float(v) for v in row] for row in data.matrix])
    vals = a @ np.exp(thetas - shift)
    return tuple(float(v) * math.exp(shift) for v in vals)


@dataclass(frozen=True)
class DarbouxOperator:
    """Order-k dressing operator d_x^k - w_1 d_x^(k-1) - ... - w_k.

    The coefficients solve the linear system annihilating every heat
    generator, so the operator's kernel is exactly their span.
    """
    coefficients: tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def char(self, zeta: float) -> float:
        """Characteristic polynomial zeta**k - sum_m w_m zeta**(k-m)."""
        value = 1.0
        for w in self.coefficients:
            value = value * zeta - w
        return value


def _derivative_moments(data: SolitonData, times: Sequence[float] | None):
    """Shifted x-derivative values F[r, p] = sum_j A_rj kappa_j**p e_j.

    e_j = exp(theta_j - max theta), a common positive factor that cancels
    in the dressing solve.
    """
    k = data.k
    thetas = np.array(data.thetas(times))
    weights = np.exp(thetas - thetas.max())
    a = np.array([[float(v) for v in row] for row in data.matrix])
    powers = np.vander(np.array(data.phases), k + 1, increasing=True)
    return (a * weights) @ powers


def darboux(data: SolitonData, times: Sequence[float] | None = None) -> DarbouxOperator:
    """Dressing operator at the given time (default: the stored time).

    Solves d_x^k f_r = w_1 d_x^(k-1) f_r + ... + w_k f_r for all k
    generators; the coefficient matrix is the x-Wronskian data of the
    generators, singular exactly at non-generic times.
    """
    k = data.k
    moments = _derivative_moments(data, times)
    lhs = moments[:, k - 1::-1]
    rhs = moments[:, k]
    if not np.isfinite(lhs).all():
        raise SingularWronskian("generator Wronskian is singular at this time")
    cond = np.linalg.cond(lhs)
    if not np.isfinite(cond) or cond > COND_GUARD:
        raise SingularWronskian("generator Wronskian is singular at this time")
    try:
        coeffs = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularWronskian("generator Wronskian is singular at this time") from exc
    residual = np.abs(lhs @ coeffs - rhs)
    scale = np.abs(lhs) @ np.abs(coeffs) + np.abs(rhs)
    if (residual > 1e-8 * np.maximum(scale, 1e-300)).any():
        raise SingularWronskian("dressing solve failed its own residual check")
    return DarbouxOperator(tuple(float(w) for w in coeffs))


def darboux_apply(op: DarbouxOperator, kappa: float,
                  times: Sequence[float]) -> float:
    """Operator applied to exp(theta(kappa, t)): char(kappa) * exp(theta)."""
    return op.char(kappa) * math.exp(theta(kappa, times))


class SatoRoot(NamedTuple):
    """One real dressing root with its phase interval tag.

    ``interval`` = j means the root lies strictly between the j-th and
    (j+1)-th phase, 1-based.
    """
    value: float
    interval: int


def sato_divisor(data: SolitonData, times: Sequence[float] | None = None) -> tuple[SatoRoot, ...]:
    """Real simple roots of the dressing characteristic polynomial.

    Companion-matrix eigenvalues polished by Newton steps; roots must be
    real within IMAG_TOL, lie inside the phase range, stay simple, and
    avoid the phases themselves, otherwise the time is not generic.
    """
    op = darboux(data, times)
    k = op.order
    scale = max(1.0, max(abs(kap) for kap in data.phases))
    poly = np.concatenate(([1.0], -np.array(op.coefficients)))
    dpoly = poly[:-1] * np.arange(k, 0, -1)
    if k == 1:
        roots = np.array([op.coefficients[0]])
    else:
        roots = np.roots(poly)
        if (np.abs(roots.imag) > IMAG_TOL * scale).any():
            raise NonGenericTime("dressing roots are not real at this time")
        roots = np.sort(roots.real)
    polished = []
    for z in roots:
        for _ in range(5):
            dp = np.polyval(dpoly, z)
            if dp == 0.0:
                break
            step = np.polyval(poly, z) / dp
            z -= step
            if abs(step) < 1e-14 * scale:
                break
        polished.append(float(z))
    polished.sort()
    tol = ROOT_GAP_TOL * scale
    lo, hi = data.phases[0], data.phases[-1]
    for z in polished:
        if z < lo - tol or z > hi + tol:
            raise NonGenericTime("a dressing root escaped the phase range")
        if any(abs(z - kap) <= tol for kap in data.phases):
            raise NonGenericTime("a dressing root collides with a phase")
    if any(b - a <= tol for a, b in zip(polished, polished[1:])):
        raise NonGenericTime("dressing roots are not simple at this time")
    return tuple(SatoRoot(z, bisect_left(data.phases, z)) for z in polished)


DEFAULT_TIME_GRID = (0.0, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0,
                     2.5, -2.5, 3.0, -3.0, 3.5, -3.5, 4.0, -4.0)


def select_initial_time(data: SolitonData,
                        waves: Sequence[Callable[[float], float]] = (),
                        grid: Sequence[float] = DEFAULT_TIME_GRID,
                        floor: float = WAVE_FLOOR) -> float:
    """First x0 on the grid where the time (x0, 0, ...) is generic.

    Generic means: the dressing solve succeeds, the roots are real,
    simple and clear of the phases, and every dressed phase value
    (plus every caller-supplied wave value) stays above ``floor``
    relative to the largest of them.
    """
    for x0 in grid:
        tt = (float(x0),)
        try:
            op = darboux(data, tt)
            sato_divisor(data, tt)
        except (SingularWronskian, NonGenericTime):
            continue
        values = [abs(darboux_apply(op, kap, tt)) for kap in data.phases]
        values.extend(abs(float(wave(float(x0)))) for wave in waves)
        top = max(values)
        if top > 0.0 and min(values) > floor * top:
            return float(x0)
    raise NonGenericTime("no generic initial time on the scan grid")


def _solve_fractions(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    size = len(rows)
    m = [row[:] + [rhs[r]] for r, row in enumerate(rows)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularWronskian("exact dressing system is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * p for v, p in zip(m[r], m[col])]
    return [m[r][size] for r in range(size)]


def dressing_exact(data: SolitonData) -> tuple[Fraction, ...]:
    """Exact dressing coefficients at the zero time for rational data.

    Requires every matrix entry rational, every phase a rational float,
    and all stored times zero, so every exp(theta) is exactly 1 and the
    solve stays in Fraction arithmetic.
    """
    if any(t != 0.0 for t in data.times):
        raise ValidationFailure("exact dressing needs an all-zero time")
    if not all(_is_rational(v) for row in data.matrix for v in row):
        raise ValidationFailure("exact dressing needs rational matrix entries")
    k = data.k
    kappas = [Fraction(kap).limit_denominator(10 ** 12) for kap in data.phases]
    if any(float(q) != kap for q, kap in zip(kappas, data.phases)):
        raise ValidationFailure("exact dressing needs rational phases")
    moments = [[sum(Fraction(row[j]) * kappas[j] ** p for j in range(data.n))
                for p in range(k + 1)] for row in data.matrix]
    lhs = [[moments[r][p] for p in range(k - 1, -1, -1)] for r in range(k)]
    rhs = [moments[r][k] for r in range(k)]
    return tuple(_solve_fractions(lhs, rhs))


def load_soliton(obj: Mapping) -> SolitonData:
    """Soliton data from a parsed JSON mapping, minor-scanned.

    Expected keys: 'phases' (numbers), 'matrix' (rows of numbers or
    fraction strings), optional 'base' (1-based columns) and 'times'.
    """
    if not isinstance(obj, Mapping):
        raise ValidationFailure("soliton input must be a JSON object")
    missing = [key for key in ("phases", "matrix") if key not in obj]
    if missing:
        raise ValidationFailure(f"soliton input lacks keys: {', '.join(missing)}")

    def entry(v):
        if isinstance(v, str):
            try:
                return Fraction(v)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValidationFailure(f"bad matrix entry {v!r}") from exc
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationFailure(f"bad matrix entry {v!r}")
        return v

    try:
        phases = tuple(float(v) for v in obj["phases"])
        matrix = tuple(tuple(entry(v) for v in row) for row in obj["matrix"])
        base = tuple(int(j) for j in obj["base"]) if obj.get("base") else None
        times = tuple(float(v) for v in obj.get("times", ()))
    except (TypeError, ValueError) as exc:
        raise ValidationFailure(f"malformed soliton input: {exc}") from exc
    data = SolitonData(phases, matrix, times, base)
    minor_scan(data)
    return data
