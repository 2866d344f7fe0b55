"""Binary integer forms and convex rational polygons.

Houses the two forms entering the lattice sum (a linear and a cubic one), the
plane region that gets dilated, and the hypothesis checks that must pass
before any counting runs: irreducibility of the cubic over Q, strict
positivity of both forms on the region, and the boundary-length bound
relating the perimeter to the sup-norm radius.

All geometry is exact: vertices are rationals, areas come from the shoelace
formula over Fractions, and the boundary-length comparison is decided with
rational square-root enclosures rather than floating point.
"""

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors
from .errors import CertificationError, InstanceFormatError, InstanceInvalidError

__all__ = [
    "BinaryForm",
    "Region",
    "ProblemInstance",
    "BoundaryStats",
    "InstanceReport",
    "eval_form",
    "is_irreducible_cubic",
    "reducibility_witness",
    "region_area",
    "boundary_stats",
    "check_positivity",
    "validate_instance",
    "ensure_validated",
    "instance_from_dict",
    "load_instance",
    "instance_id",
]

_COEFF_LIMIT = 1 << 63
_EVAL_LIMIT = 1 << 127
_COORD_LIMIT = 1 << 31


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous integer form in two variables.

    coeffs[i] multiplies x1**(degree-i) * x2**i; coefficients are signed
    64-bit, and the zero form is rejected.
    """

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients, got {len(coeffs)}"
            )
        if all(c == 0 for c in coeffs):
            raise ValueError("the zero form is not allowed")
        for c in coeffs:
            if not -_COEFF_LIMIT <= c < _COEFF_LIMIT:
                raise ValueError(f"coefficient {c} does not fit in 64 bits")

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g


def eval_form(F: BinaryForm, x: tuple[int, int]) -> int:
    """Exact value of F at an integer point, guarded to the 128-bit range."""
    x1, x2 = int(x[0]), int(x[1])
    if abs(x1) > _COORD_LIMIT or abs(x2) > _COORD_LIMIT:
        raise ValueError(f"coordinates {x} exceed the 2**31 evaluation box")
    d = F.degree
    total = 0
    for i, c in enumerate(F.coeffs):
        term = c * x1 ** (d - i) * x2**i
        if abs(term) >= _EVAL_LIMIT:
            raise OverflowError(
                f"term {i} of form {F.coeffs} at x={x} leaves the 128-bit range"
            )
        total += term
    if abs(total) >= _EVAL_LIMIT:
        raise OverflowError(f"value of form {F.coeffs} at x={x} leaves the 128-bit range")
    return total


def reducibility_witness(C: BinaryForm) -> str | None:
    """A human-readable witness that the cubic form factors over Q, or None.

    A cubic form has a linear factor over Q exactly when either x2 divides it
    (vanishing leading coefficient) or the dehomogenized cubic has a rational
    root; candidate roots p/q are scanned over divisors of the constant and
    leading coefficients.
    """
    if C.degree != 3:
        raise ValueError(f"expected a cubic form, got degree {C.degree}")
    c0, c1, c2, c3 = C.coeffs
    if c0 == 0:
        return "factor x2"
    if c3 == 0:
        return "rational root 0"
    for num in divisors(abs(c3)):
        for den in divisors(abs(c0)):
            if math.gcd(num, den) != 1:
                continue
            for p in (num, -num):
                if c0 * p**3 + c1 * p**2 * den + c2 * p * den**2 + c3 * den**3 == 0:
                    return f"rational root {Fraction(p, den)}"
    return None


def is_irreducible_cubic(C: BinaryForm) -> bool:
    """Whether the cubic form is irreducible over Q (no linear factor)."""
    return reducibility_witness(C) is None


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise ValueError(f"vertex coordinates must be rational, got {v!r}")


@dataclass(frozen=True)
class Region:
    """Convex polygon with exact rational vertices in counter-clockwise order.

    c is the constant bounding the boundary length against the sup-norm
    radius; the bound itself is reported by boundary_stats, not enforced
    at construction.
    """

    vertices: tuple[tuple[Fraction, Fraction], ...]
    c: float

    def __post_init__(self):
        verts = tuple((_to_fraction(x), _to_fraction(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise ValueError(f"a polygon needs at least 3 vertices, got {len(verts)}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"boundary constant c must be positive and finite, got {self.c}")
        m = len(verts)
        twice_area = Fraction(0)
        for i in range(m):
            x1, y1 = verts[i]
            x2, y2 = verts[(i + 1) % m]
            if (x1, y1) == (x2, y2):
                raise ValueError("repeated vertex (zero-length edge)")
            twice_area += x1 * y2 - x2 * y1
        if twice_area <= 0:
            raise ValueError("vertices must be counter-clockwise and enclose positive area")
        for i in range(m):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % m]
            cx, cy = verts[(i + 2) % m]
            cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            if cross < 0:
                raise ValueError("polygon is not convex")


def region_area(R: Region) -> Fraction:
    """Exact area of the polygon (shoelace formula)."""
    verts = R.vertices
    m = len(verts)
    twice = Fraction(0)
    for i in range(m):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % m]
        twice += x1 * y2 - x2 * y1
    return twice / 2


def _sqrt_enclosure(sq: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(sq) <= hi with hi - lo <= 2**-bits (exact when sq is a square)."""
    num, den = sq.numerator, sq.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        v = Fraction(rn, rd)
        return v, v
    scale = 1 << bits
    t = num * den
    r = math.isqrt(t * scale * scale)
    return Fraction(r, den * scale), Fraction(r + 1, den * scale)


@dataclass(frozen=True)
class BoundaryStats:
    boundary_length: float
    r_infinity: float
    satisfies_bound: bool


def boundary_stats(R: Region) -> BoundaryStats:
    """Perimeter, sup-norm radius, and whether perimeter <= c * radius.

    The radius is attained at a vertex since the polygon is convex.  The
    inequality is decided with rational square-root enclosures so that ties
    (all-rational edge lengths) are resolved exactly.
    """
    verts = R.vertices
    m = len(verts)
    r_inf = max(max(abs(x), abs(y)) for x, y in verts)
    squares = []
    for i in range(m):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % m]
        squares.append((x2 - x1) ** 2 + (y2 - y1) ** 2)
    bound = Fraction(R.c) * r_inf
    for bits in (96, 512):
        lo = sum(_sqrt_enclosure(s, bits)[0] for s in squares)
        hi = sum(_sqrt_enclosure(s, bits)[1] for s in squares)
        if hi <= bound:
            ok = True
            break
        if lo > bound:
            ok = False
            break
    else:
        raise RuntimeError("boundary bound undecidable at 512-bit precision")
    length = math.fsum(math.sqrt(float(s)) for s in squares)
    return BoundaryStats(length, float(r_inf), ok)


def _point_in_polygon(verts, px: Fraction, py: Fraction) -> bool:
    m = len(verts)
    for i in range(m):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % m]
        if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
            return False
    return True


def _eval_fraction(F: BinaryForm, x: Fraction, y: Fraction) -> Fraction:
    d = F.degree
    total = Fraction(0)
    for i, c in enumerate(F.coeffs):
        total += c * x ** (d - i) * y**i
    return total


def _linear_positive_on(L: BinaryForm, region: Region) -> bool:
    # an affine-linear function on a convex polygon attains its minimum at a vertex
    return all(_eval_fraction(L, x, y) > 0 for x, y in region.vertices)


def _cubic_positive_on(C: BinaryForm, region: Region, max_refinements: int) -> bool:
    verts = region.vertices
    xmin = min(v[0] for v in verts)
    xmax = max(v[0] for v in verts)
    ymin = min(v[1] for v in verts)
    ymax = max(v[1] for v in verts)
    big = max(abs(xmin), abs(xmax), abs(ymin), abs(ymax))
    # |grad C|_1 <= 3 * big^2 * sum|c_i| on the bounding box, hence
    # |C(u) - C(v)| <= G * |u - v|_inf there
    grad_bound = 3 * big**2 * sum(abs(c) for c in C.coeffs)
    h = max(xmax - xmin, ymax - ymin) / 16
    for _ in range(max_refinements + 1):
        samples = list(verts)
        # boundary samples spaced at most h apart along each edge
        m = len(verts)
        for i in range(m):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % m]
            steps = max(1, math.ceil((abs(bx - ax) + abs(by - ay)) / h))
            for j in range(1, steps):
                samples.append((ax + (bx - ax) * j / steps, ay + (by - ay) * j / steps))
        # interior grid of step h clipped to the polygon; one extra row and
        # column past the far edges keep every box point within h/2 of the
        # lattice, which the 3h/2 certification margin below relies on
        nx = int((xmax - xmin) / h) + 1
        ny = int((ymax - ymin) / h) + 1
        for i in range(nx + 1):
            px = xmin + i * h
            for j in range(ny + 1):
                py = ymin + j * h
                if _point_in_polygon(verts, px, py):
                    samples.append((px, py))
        low = min(_eval_fraction(C, px, py) for px, py in samples)
        if low <= 0:
            return False
        # every region point lies within euclidean distance < 3h/2 of a sample
        if low > grad_bound * Fraction(3, 2) * h:
            return True
        h = h / 2
    raise CertificationError(
        "positivity certification inconclusive at maximum refinement: "
        "sampled minimum is positive but the Lipschitz margin is too small; "
        "refine the region or reject the instance"
    )


@dataclass(frozen=True)
class ProblemInstance:
    """A linear form, a cubic form, and the region they are summed over."""

    L: BinaryForm
    C: BinaryForm
    region: Region

    def __post_init__(self):
        if self.L.degree != 1:
            raise ValueError(f"L must be linear, got degree {self.L.degree}")
        if self.C.degree != 3:
            raise ValueError(f"C must be cubic, got degree {self.C.degree}")


def check_positivity(inst: ProblemInstance, max_refinements: int = 4) -> bool:
    """Certify that both forms are strictly positive on the closed region.

    The linear form is checked exactly at the vertices.  The cubic is sampled
    on a rational grid plus the boundary and certified through the gradient
    bound; an inconclusive certification raises CertificationError.
    """
    if not _linear_positive_on(inst.L, inst.region):
        return False
    return _cubic_positive_on(inst.C, inst.region, max_refinements)


@dataclass(frozen=True)
class InstanceReport:
    irreducible: bool
    positive: bool | None
    boundary_ok: bool
    messages: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.irreducible and self.positive is True and self.boundary_ok


def validate_instance(inst: ProblemInstance, max_refinements: int = 4) -> InstanceReport:
    """Run the three hypothesis checks and collect human-readable messages."""
    messages = []
    witness = reducibility_witness(inst.C)
    irreducible = witness is None
    if not irreducible:
        messages.append(f"cubic form is reducible: {witness}")
    positive: bool | None
    try:
        positive = check_positivity(inst, max_refinements)
        if not positive:
            messages.append("a form is not strictly positive on the region")
    except CertificationError as exc:
        positive = None
        messages.append(str(exc))
    stats = boundary_stats(inst.region)
    if not stats.satisfies_bound:
        messages.append(
            f"boundary length {stats.boundary_length:.6g} exceeds "
            f"c * r_infinity = {inst.region.c * stats.r_infinity:.6g}"
        )
    return InstanceReport(irreducible, positive, stats.satisfies_bound, tuple(messages))


def ensure_validated(inst: ProblemInstance) -> None:
    """Raise InstanceInvalidError unless all hypothesis checks pass."""
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceInvalidError("; ".join(report.messages) or "instance invalid")


def instance_from_dict(data: dict) -> ProblemInstance:
    """Build an instance from the JSON object layout (keys L, C, region, c)."""
    if not isinstance(data, dict):
        raise InstanceFormatError("instance file must contain a JSON object")
    for key in ("L", "C", "region", "c"):
        if key not in data:
            raise InstanceFormatError(f"missing key {key!r}")
    lc = data["L"]
    if not (isinstance(lc, list) and len(lc) == 2 and all(isinstance(v, int) for v in lc)):
        raise InstanceFormatError("key 'L' must be an array of 2 integers")
    cc = data["C"]
    if not (isinstance(cc, list) and len(cc) == 4 and all(isinstance(v, int) for v in cc)):
        raise InstanceFormatError("key 'C' must be an array of 4 integers")
    raw_region = data["region"]
    if not (isinstance(raw_region, list) and len(raw_region) >= 3):
        raise InstanceFormatError("key 'region' must be an array of at least 3 vertices")
    verts = []
    for vi, vertex in enumerate(raw_region):
        if not (isinstance(vertex, list) and len(vertex) == 2):
            raise InstanceFormatError(f"key 'region' vertex {vi} must have 2 coordinates")
        coords = []
        for pair in vertex:
            if not (
                isinstance(pair, list)
                and len(pair) == 2
                and all(isinstance(v, int) for v in pair)
                and pair[1] != 0
            ):
                raise InstanceFormatError(
                    f"key 'region' vertex {vi} coordinates must be [num, den] integer pairs"
                )
            coords.append(Fraction(pair[0], pair[1]))
        verts.append((coords[0], coords[1]))
    cval = data["c"]
    if not isinstance(cval, (int, float)) or isinstance(cval, bool):
        raise InstanceFormatError("key 'c' must be a number")
    try:
        L = BinaryForm(1, tuple(lc))
        C = BinaryForm(3, tuple(cc))
        region = Region(tuple(verts), float(cval))
        return ProblemInstance(L, C, region)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def load_instance(path) -> ProblemInstance:
    """Read an instance JSON file; malformed content raises InstanceFormatError."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    return instance_from_dict(data)


def instance_id(inst: ProblemInstance) -> str:
    """Short stable identifier derived from the instance contents."""
    payload = json.dumps(
        {
            "L": list(inst.L.coeffs),
            "C": list(inst.C.coeffs),
            "region": [
                [[x.numerator, x.denominator], [y.numerator, y.denominator]]
                for x, y in inst.region.vertices
            ],
            "c": inst.region.c,
        },
        separators=(",", ":"),
    )
    return hashlib.sha1(payload.encode()).hexdigest()[:12]
