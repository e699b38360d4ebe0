import itertools
import random

import numpy as np
import pytest

from pgrank.field import field_of_order, make_field
from pgrank.quadratic import PointClass, make_space, normalize, num_points


def values(xs):
    return tuple(x.value for x in xs)


def test_make_space_coefficients():
    assert values(make_space(2, make_field(7), 1).diag_coeffs) == (1, 6, 1)
    assert values(make_space(3, make_field(3), 1).diag_coeffs) == (1, 2, 1, 2)


@pytest.mark.parametrize("args", [(1, 5, 0, "diagonal"), (3, 7, 1, "conic"), (0, 3, 1, "diagonal"),
                                  (2, 3, 1, "hyperbolic")])
def test_make_space_errors(args):
    n, q, alpha, form = args
    with pytest.raises(ValueError):
        make_space(n, field_of_order(q), alpha, form)


def test_evaluate_form_examples():
    assert make_space(2, make_field(7), 1, "conic").evaluate((1, 1, 1)).value == 0
    assert make_space(2, make_field(3), 1).evaluate((1, 1, 1)).value == 1
    assert make_space(3, make_field(3), 1).evaluate((1, 0, 1, 1)).value == 1
    with pytest.raises(ValueError):
        make_space(2, make_field(3), 1).evaluate((1, 1))


def test_bilinear_examples():
    S = make_space(1, make_field(3), 1)
    # direct diagonal expansion x0*y0 - x1*y1 = 1 - 2 = -1 = 2
    assert S.bilinear((1, 1), (1, 2)).value == (1 * 1 - 1 * 2) % 3 == 2


@pytest.mark.parametrize("n,q,form", [(1, 5, "diagonal"), (2, 7, "conic"), (3, 9, "diagonal"),
                                      (2, 9, "conic"), (4, 3, "diagonal")])
def test_bilinear_properties(n, q, form):
    F = field_of_order(q)
    rnd = random.Random(n * 100 + q)
    for alpha in (F.canonical_alpha("square"), F.canonical_alpha("nonsquare")):
        S = make_space(n, F, alpha, form)
        for _ in range(30):
            x = [F.element(rnd.randrange(q)) for _ in range(n + 1)]
            y = [F.element(rnd.randrange(q)) for _ in range(n + 1)]
            assert S.bilinear(x, x) == S.evaluate(x)
            assert S.bilinear(x, y) == S.bilinear(y, x)
            if form == "diagonal":
                direct = sum((c * a * b for c, a, b in zip(S.diag_coeffs, x, y)), F.zero)
                assert S.bilinear(x, y) == direct
            # the Gram matrix route agrees with polarization
            gx = F.matmul(np.array([values(x)]), S.gram)
            assert F.matmul(gx, np.array([values(y)]).T)[0, 0] == S.bilinear(x, y).value


def test_enumerate_pg1_q3():
    # normalize all 8 nonzero vectors by hand
    F = make_field(3)
    reps = {values(normalize([F(a), F(b)])) for a, b in itertools.product(range(3), repeat=2) if (a, b) != (0, 0)}
    assert sorted(reps) == [(0, 1), (1, 0), (1, 1), (1, 2)]
    table = make_space(1, F, 1).points()
    assert [tuple(r) for r in table.coords] == [(0, 1), (1, 0), (1, 1), (1, 2)]


@pytest.mark.parametrize("n,q,expected", [(2, 3, 13), (3, 3, 40), (2, 9, 91), (1, 25, 26)])
def test_point_counts(n, q, expected):
    table = make_space(n, field_of_order(q), 1).points()
    assert len(table) == expected == num_points(n, q)
    coords = [tuple(r) for r in table.coords]
    assert coords == sorted(coords)
    assert len(set(coords)) == len(coords)
    for row in table.coords:
        assert row[np.flatnonzero(row)[0]] == 1


def test_point_bound():
    with pytest.raises(ValueError):
        make_space(3, make_field(7), 1).points(max_points=100)


def test_classify_examples():
    S = make_space(2, make_field(7), 1, "conic")
    assert S.classify((0, 1, 0)) is PointClass.SQUARE
    assert S.classify((1, 0, 0)) is PointClass.ISOTROPIC
    assert S.evaluate((1, 1, 3)).value == 5
    assert S.classify((1, 1, 3)) is PointClass.NONSQUARE


@pytest.mark.parametrize("n,q", [(1, 5), (2, 3), (2, 9), (3, 5)])
def test_classify_scalar_invariant(n, q):
    F = field_of_order(q)
    for alpha in ("square", "nonsquare"):
        S = make_space(n, F, F.canonical_alpha(alpha))
        table = S.points()
        for i, row in enumerate(table.coords):
            pt = [F.element(int(x)) for x in row]
            cls = S.classify(pt)
            assert cls is table.point_class(i)
            for lam in F.elements()[1:]:
                assert S.classify([lam * x for x in pt]) is cls


def test_class_counts_examples():
    F3 = make_field(3)
    assert make_space(3, F3, F3.canonical_alpha("square")).class_counts()[0] == 9 + 3 + 1 + 3
    assert make_space(3, F3, F3.canonical_alpha("nonsquare")).class_counts()[0] == 10
    assert make_space(2, make_field(5), 1).class_counts() == (6, 15, 10)
    assert make_space(2, make_field(5), 1, "conic").class_counts() == (6, 15, 10)
    F5 = make_field(5)
    assert make_space(1, F5, F5.canonical_alpha("nonsquare")).class_counts()[0] == 0


def _closed_form(n, q, alpha_class):
    base = sum(q**i for i in range(n))
    if n % 2 == 0:
        return base
    return base + (1 if alpha_class == "square" else -1) * q ** ((n - 1) // 2)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_class_counts_closed_form(n, q):
    F = field_of_order(q)
    for cls in ("square", "nonsquare"):
        iso, sq, ns = make_space(n, F, F.canonical_alpha(cls)).class_counts()
        assert iso == _closed_form(n, q, cls)
        assert iso + sq + ns == num_points(n, q)


def test_perp_contains_examples():
    S = make_space(1, make_field(3), 1)
    assert S.perp_contains((1, 1), (1, 1)) == 1
    assert S.perp_contains((1, 0), (0, 1)) == 1
    assert S.perp_contains((1, 0), (1, 0)) == 0


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_pg1_perp_preserves_isotropy(q):
    F = field_of_order(q)
    S = make_space(1, F, 1)
    pts = [[F.element(int(x)) for x in row] for row in S.points().coords]
    for P in pts:
        partners = [R for R in pts if S.perp_contains(P, R)]
        assert len(partners) == 1
        R = partners[0]
        if S.classify(P) is PointClass.ISOTROPIC:
            assert R == P
        else:
            assert S.classify(R) is not PointClass.ISOTROPIC


@pytest.mark.parametrize("n,q,form", [(1, 3, "diagonal"), (2, 5, "conic"), (3, 3, "diagonal")])
def test_nondegenerate(n, q, form):
    F = field_of_order(q)
    S = make_space(n, F, 1, form)
    pts = [[F.element(int(x)) for x in row] for row in S.points().coords]
    for P in pts:
        assert any(S.bilinear(P, R).value for R in pts)
