"""Empirical lattice sums over dilated regions and their comparison table.

sum_S walks the integer points of the dilated polygon row by row (rows are
cut by exact rational edge intersections, boundary included) and accumulates
r(L(x)) * r(C(x)) as an exact integer.  convergence_table pairs those sums
with the predicted constant and reports the ratio per dilation, together
with the reference decay exponent of the error term.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .arith import r_two_squares
from .errors import InstanceInvalidError, ScaleLimitError
from .euler import predicted_constant
from .forms import ProblemInstance, Region, ensure_validated

__all__ = [
    "SumResult",
    "ConvergenceRow",
    "lattice_points_in",
    "sum_S",
    "convergence_table",
    "eta_reference",
]

_COORD_LIMIT = 1 << 31
_VALUE_LIMIT = 1 << 63


def eta_reference() -> float:
    """Reference decay exponent 1 - (1 + log log 2) / log 2 of the error term."""
    return 1.0 - (1.0 + math.log(math.log(2.0))) / math.log(2.0)


def _row_spans(region: Region, X) -> list[tuple[int, int, int]]:
    """Rows (y, x_lo, x_hi) of integer points inside the closed dilated polygon."""
    scale = Fraction(X)
    if scale <= 0:
        raise ValueError(f"dilation must be positive, got {X}")
    verts = [(scale * x, scale * y) for x, y in region.vertices]
    if max(max(abs(x), abs(y)) for x, y in verts) > _COORD_LIMIT:
        raise ValueError("dilated coordinates exceed the 2**31 enumeration box")
    ys = [y for _, y in verts]
    y_lo, y_hi = math.ceil(min(ys)), math.floor(max(ys))
    m = len(verts)
    spans = []
    for y in range(y_lo, y_hi + 1):
        xs: list[Fraction] = []
        for i in range(m):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % m]
            if ay == by:
                if ay == y:
                    xs.append(ax)
                    xs.append(bx)
                continue
            if min(ay, by) <= y <= max(ay, by):
                t = (y - ay) / (by - ay)
                xs.append(ax + (bx - ax) * t)
        if not xs:
            continue
        x_lo, x_hi = math.ceil(min(xs)), math.floor(max(xs))
        if x_lo <= x_hi:
            spans.append((y, x_lo, x_hi))
    return spans


def lattice_points_in(region: Region, X):
    """Yield the integer points of the closed dilated region, row by row."""
    for y, x_lo, x_hi in _row_spans(region, X):
        for x in range(x_lo, x_hi + 1):
            yield (x, y)


@dataclass(frozen=True)
class SumResult:
    X: float
    lattice_points: int
    S: int
    S_over_X2: float


def _max_abs_on_box(coeffs, degree: int, big: Fraction) -> Fraction:
    return sum(abs(c) for c in coeffs) * big**degree


def sum_S(inst: ProblemInstance, X, threads: int = 1) -> SumResult:
    """Exact sum of r(L(x)) * r(C(x)) over integer points of the dilated region.

    Requires a validated instance and form values certified (by a coefficient
    bound over the dilated coordinates) to stay within 64 bits so that
    factorization remains in the fast path.  A nonpositive form value at any
    enumerated point means the positivity certificate was wrong and raises
    InstanceInvalidError.
    """
    ensure_validated(inst)
    scale = Fraction(X)
    verts = inst.region.vertices
    big = max(max(abs(x), abs(y)) for x, y in verts) * scale
    if _max_abs_on_box(inst.C.coeffs, 3, big) >= _VALUE_LIMIT or _max_abs_on_box(
        inst.L.coeffs, 1, big
    ) >= _VALUE_LIMIT:
        raise ScaleLimitError(
            f"form values over the dilation X={X} may exceed 64 bits; reduce X"
        )
    spans = _row_spans(inst.region, X)
    aL, bL = inst.L.coeffs
    c0, c1, c2, c3 = inst.C.coeffs
    r_linear_cache: dict[int, int] = {}

    def row_sum(span: tuple[int, int, int]) -> tuple[int, int]:
        y, x_lo, x_hi = span
        y2 = y * y
        cy1 = c1 * y
        cy2 = c2 * y2
        cy3 = c3 * y2 * y
        ly = bL * y
        total = 0
        for x in range(x_lo, x_hi + 1):
            lv = aL * x + ly
            cv = ((c0 * x + cy1) * x + cy2) * x + cy3
            if lv <= 0 or cv <= 0:
                raise InstanceInvalidError(
                    f"form value not positive at lattice point ({x}, {y}); "
                    "the positivity certificate was wrong"
                )
            rl = r_linear_cache.get(lv)
            if rl is None:
                rl = r_two_squares(lv)
                r_linear_cache[lv] = rl
            if rl:
                total += rl * r_two_squares(cv)
        return (x_hi - x_lo + 1, total)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(row_sum, spans))
    else:
        partials = [row_sum(span) for span in spans]
    npoints = sum(c for c, _ in partials)
    total = sum(s for _, s in partials)
    x_float = float(X)
    return SumResult(X=x_float, lattice_points=npoints, S=total, S_over_X2=total / x_float**2)


@dataclass(frozen=True)
class ConvergenceRow:
    X: float
    S: int
    predicted_main_term: float
    ratio: float
    log_X: float
    eta_reference: float
    error_scaled: float  # (1 - ratio) * (log X)^eta, descriptive only


def convergence_table(
    inst: ProblemInstance,
    X_list,
    P: int = 10**4,
    V: int = 6,
    threads: int = 1,
) -> list[ConvergenceRow]:
    """One row per dilation: empirical sum against predicted_constant * X^2."""
    xs = list(X_list)
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("X_list must be strictly increasing")
    report = predicted_constant(inst, P=P, V=V)
    constant = report.predicted_constant
    eta = eta_reference()
    rows = []
    for X in xs:
        res = sum_S(inst, X, threads=threads)
        main = constant * float(X) ** 2
        ratio = res.S / main
        log_x = math.log(float(X))
        rows.append(
            ConvergenceRow(
                X=float(X),
                S=res.S,
                predicted_main_term=main,
                ratio=ratio,
                log_X=log_x,
                eta_reference=eta,
                error_scaled=(1.0 - ratio) * log_x**eta,
            )
        )
    return rows
