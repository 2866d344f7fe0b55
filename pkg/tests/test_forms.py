import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import shifted_square, unit_square
from r2forms.errors import CertificationError, InstanceFormatError
from r2forms.forms import (
    BinaryForm,
    ProblemInstance,
    Region,
    boundary_stats,
    check_positivity,
    eval_form,
    instance_from_dict,
    is_irreducible_cubic,
    load_instance,
    reducibility_witness,
    region_area,
    validate_instance,
)

F = Fraction


# --- BinaryForm / eval_form -------------------------------------------------


def test_form_invariants():
    with pytest.raises(ValueError):
        BinaryForm(1, (0, 0))
    with pytest.raises(ValueError):
        BinaryForm(3, (1, 0, 1))
    with pytest.raises(ValueError):
        BinaryForm(1, (1 << 63, 0))
    with pytest.raises(ValueError):
        BinaryForm(0, (1,))


def test_eval_examples():
    assert eval_form(BinaryForm(1, (1, 0)), (7, 3)) == 7
    cubic = BinaryForm(3, (1, 0, 1, 1))
    assert eval_form(cubic, (1, 1)) == 3
    assert eval_form(cubic, (2, 3)) == 8 + 18 + 27


def test_eval_guards():
    cubic = BinaryForm(3, (1, 0, 1, 1))
    with pytest.raises(ValueError):
        eval_form(cubic, (1 << 32, 1))
    big = BinaryForm(3, ((1 << 62), 0, 0, 0))
    with pytest.raises(OverflowError):
        eval_form(big, (1 << 31, 1))


@given(
    st.tuples(*[st.integers(min_value=-(10**6), max_value=10**6) for _ in range(4)]),
    st.integers(min_value=-(2**31), max_value=2**31),
    st.integers(min_value=-(2**31), max_value=2**31),
)
def test_eval_matches_monomial_sum(coeffs, x1, x2):
    if all(c == 0 for c in coeffs):
        coeffs = (1,) + coeffs[1:]
    form = BinaryForm(3, coeffs)
    expected = sum(c * x1 ** (3 - i) * x2**i for i, c in enumerate(coeffs))
    if abs(expected) < (1 << 127) and all(
        abs(c * x1 ** (3 - i) * x2**i) < (1 << 127) for i, c in enumerate(coeffs)
    ):
        assert eval_form(form, (x1, x2)) == expected


def test_eval_matches_independent_evaluation_bulk():
    rng = random.Random(99)
    form = BinaryForm(3, (3, -7, 11, -13))
    for _ in range(10**4):
        x1 = rng.randint(-(2**31), 2**31)
        x2 = rng.randint(-(2**31), 2**31)
        expected = 3 * x1**3 - 7 * x1**2 * x2 + 11 * x1 * x2**2 - 13 * x2**3
        assert eval_form(form, (x1, x2)) == expected


# --- irreducibility ----------------------------------------------------------


def test_irreducibility_examples():
    assert is_irreducible_cubic(BinaryForm(3, (1, 0, 1, 1))) is True
    assert is_irreducible_cubic(BinaryForm(3, (1, 0, 0, 0))) is False
    assert is_irreducible_cubic(BinaryForm(3, (0, 1, 1, 1))) is False
    with pytest.raises(ValueError):
        is_irreducible_cubic(BinaryForm(1, (1, 0)))


def test_reducibility_witness_messages():
    assert reducibility_witness(BinaryForm(3, (0, 1, 1, 1))) == "factor x2"
    assert "rational root" in reducibility_witness(BinaryForm(3, (2, 3, -11, 6)))
    assert reducibility_witness(BinaryForm(3, (1, 0, 1, 1))) is None


@given(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-6, max_value=6),
    st.tuples(*[st.integers(min_value=-6, max_value=6) for _ in range(3)]),
)
def test_constructed_products_are_reducible(alpha, beta, quad):
    # C = (alpha*x1 + beta*x2) * (q0*x1^2 + q1*x1*x2 + q2*x2^2)
    if alpha == 0 and beta == 0:
        alpha = 1
    q0, q1, q2 = quad
    if q0 == 0 and q1 == 0 and q2 == 0:
        q0 = 1
    coeffs = (
        alpha * q0,
        alpha * q1 + beta * q0,
        alpha * q2 + beta * q1,
        beta * q2,
    )
    if all(c == 0 for c in coeffs):
        return
    assert is_irreducible_cubic(BinaryForm(3, coeffs)) is False


# --- Region ------------------------------------------------------------------


def test_region_examples():
    assert region_area(unit_square()) == 1
    assert region_area(shifted_square()) == 1
    tri = Region(((F(0), F(0)), (F(2), F(0)), (F(0), F(2))), 8.0)
    assert region_area(tri) == 2


def test_region_invariants():
    with pytest.raises(ValueError):
        Region(((F(0), F(0)), (F(1), F(0))), 8.0)  # too few vertices
    with pytest.raises(ValueError):
        Region(((F(0), F(0)), (F(0), F(1)), (F(1), F(0))), 8.0)  # clockwise
    with pytest.raises(ValueError):
        Region(
            ((F(0), F(0)), (F(2), F(0)), (F(1), F(1)), (F(2), F(2)), (F(0), F(2))),
            8.0,
        )  # reflex vertex
    with pytest.raises(ValueError):
        Region(((F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))), -1.0)


@given(
    st.fractions(min_value=F(1, 4), max_value=10),
    st.fractions(min_value=F(1, 4), max_value=10),
)
def test_rectangle_area_exact(w, h):
    rect = Region(((F(0), F(0)), (w, F(0)), (w, h), (F(0), h)), 8.0)
    assert region_area(rect) == w * h


def test_boundary_stats_examples():
    stats = boundary_stats(unit_square(8.0))
    assert (stats.boundary_length, stats.r_infinity, stats.satisfies_bound) == (4.0, 1.0, True)
    stats = boundary_stats(unit_square(3.0))
    assert (stats.boundary_length, stats.r_infinity) == (4.0, 1.0)
    assert stats.satisfies_bound is False


def test_boundary_bound_exact_tie():
    # perimeter 4 against c * r_inf = 4 exactly: ties resolve rationally
    assert boundary_stats(unit_square(4.0)).satisfies_bound is True


def test_r_infinity_matches_dense_boundary_sampling():
    rng = random.Random(3)
    for _ in range(20):
        w = F(rng.randint(1, 40), rng.randint(1, 7))
        h = F(rng.randint(1, 40), rng.randint(1, 7))
        x0 = F(rng.randint(-10, 10), rng.randint(1, 5))
        y0 = F(rng.randint(-10, 10), rng.randint(1, 5))
        region = Region(((x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)), 99.0)
        stats = boundary_stats(region)
        verts = region.vertices
        sampled = F(0)
        for i in range(len(verts)):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % len(verts)]
            for j in range(33):
                px = ax + (bx - ax) * j / 32
                py = ay + (by - ay) * j / 32
                sampled = max(sampled, abs(px), abs(py))
        assert math.isclose(stats.r_infinity, float(sampled), rel_tol=1e-12)


# --- positivity ---------------------------------------------------------------


def test_positivity_examples():
    C = BinaryForm(3, (1, 0, 1, 1))
    sq = shifted_square()
    assert check_positivity(ProblemInstance(BinaryForm(1, (1, 0)), C, sq)) is True
    assert check_positivity(ProblemInstance(BinaryForm(1, (1, -3)), C, sq)) is False
    # cubic negative somewhere inside
    neg = ProblemInstance(BinaryForm(1, (1, 0)), BinaryForm(3, (1, 0, 0, -2)), sq)
    assert check_positivity(neg) is False


def test_positivity_certification_failure():
    # x1^3 - 2*x2^3 is positive on the strip but its margin near the real
    # root of 2 is far below what four refinements can certify
    region = Region(
        (
            (F(12601, 10000), F(1)),
            (F(2), F(1)),
            (F(2), F(10001, 10000)),
            (F(12601, 10000), F(10001, 10000)),
        ),
        99.0,
    )
    inst = ProblemInstance(BinaryForm(1, (1, 0)), BinaryForm(3, (1, 0, 0, -2)), region)
    with pytest.raises(CertificationError):
        check_positivity(inst)


def test_validate_instance_reports(golden):
    report = validate_instance(golden)
    assert report.ok
    assert report.messages == ()


# --- instance files -----------------------------------------------------------


def test_load_golden_instance(golden_path, golden):
    inst = load_instance(golden_path)
    assert inst == golden


def test_instance_format_errors():
    with pytest.raises(InstanceFormatError, match="'region'"):
        instance_from_dict({"L": [1, 0], "C": [1, 0, 1, 1], "c": 8})
    with pytest.raises(InstanceFormatError, match="'L'"):
        instance_from_dict({"L": [1], "C": [1, 0, 1, 1], "region": [], "c": 8})
    with pytest.raises(InstanceFormatError, match="'C'"):
        instance_from_dict(
            {"L": [1, 0], "C": [1, 0, 1], "region": [[[0, 1], [0, 1]]] * 3, "c": 8}
        )
    with pytest.raises(InstanceFormatError):
        instance_from_dict(
            {
                "L": [1, 0],
                "C": [1, 0, 1, 1],
                "region": [[[0, 0], [0, 0]]] * 3,  # zero denominators
                "c": 8,
            }
        )
