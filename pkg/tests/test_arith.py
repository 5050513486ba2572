import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from orbitcert.arith import (
    FloatCtx,
    RatMatrix,
    SingularMatrix,
    ctx,
    det_exact,
    invert_exact,
    rat,
    rat_from_str,
    rat_str,
    real_cbrt,
    solve_exact,
)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4).map(rat)


@given(rationals, rationals)
def test_add_sub_exact(x, y):
    assert (x + y) - y == x


@given(rationals, rationals.filter(lambda q: q != 0))
def test_mul_div_exact(x, y):
    assert (x * y) / y == x


def test_rational_normal_form():
    q = rat(6, -8)
    assert q.numerator == -3 and q.denominator == 4
    assert rat_str(q) == "-3/4"
    assert rat_from_str("-3/4") == q
    assert rat_str(rat(5)) == "5/1"


def test_cbrt_exact_cubes():
    fc = ctx(60)
    assert real_cbrt(8, fc) == 2
    assert real_cbrt(-8, fc) == -2


def test_cbrt_of_two_newton_oracle():
    # independent oracle: Newton iteration on y^3 - 2 at higher precision
    fc = FloatCtx(60)
    oracle_ctx = FloatCtx(80)
    y = oracle_ctx.mpf("1.3")
    for _ in range(60):
        y = y - (y**3 - 2) / (3 * y**2)
    got = real_cbrt(2, fc)
    assert abs(fc.mpf(str(y)) - got) < fc.mpf(10) ** -58
    # cross-check by cubing
    assert abs(got**3 - 2) < fc.mpf(10) ** -58
    assert str(got)[:18] == "1.2599210498948731"


@given(st.floats(min_value=1e-20, max_value=1e20, allow_nan=False))
def test_cbrt_cube_relative_error(x):
    fc = ctx(60)
    r = real_cbrt(x, fc)
    assert abs(r**3 - fc.mpf(x)) <= fc.mpf(x) * fc.mpf(10) ** (-fc.digits + 2)
    assert real_cbrt(-x, fc) == -r


def test_solve_identity():
    A = RatMatrix.identity(3)
    assert solve_exact(A, [1, 2, 3]) == [1, 2, 3]


def test_solve_diagonal():
    A = RatMatrix([[2, 0], [0, 4]])
    assert solve_exact(A, [1, 1]) == [mpq(1, 2), mpq(1, 4)]


def test_invert_examples():
    assert invert_exact(RatMatrix.identity(2)) == RatMatrix.identity(2)
    M = RatMatrix([[1, 1], [0, 1]])
    assert invert_exact(M) == RatMatrix([[1, -1], [0, 1]])


def test_singular_raises():
    with pytest.raises(SingularMatrix):
        invert_exact(RatMatrix([[1, 2], [2, 4]]))
    with pytest.raises(SingularMatrix):
        solve_exact(RatMatrix([[0, 0], [0, 0]]), [1, 1])


@given(st.lists(rationals, min_size=9, max_size=9))
def test_invert_times_self_is_identity(entries):
    M = RatMatrix([entries[0:3], entries[3:6], entries[6:9]])
    if det_exact(M) == 0:
        return
    assert invert_exact(M).mul(M) == RatMatrix.identity(3)


@given(st.lists(rationals, min_size=9, max_size=9), st.lists(rationals, min_size=3, max_size=3))
def test_solve_satisfies_system(entries, b):
    M = RatMatrix([entries[0:3], entries[3:6], entries[6:9]])
    if det_exact(M) == 0:
        return
    x = solve_exact(M, b)
    assert M.mul_vec(x) == [mpq(v) for v in b]


def test_bigfloat_serialization():
    fc = ctx(30)
    s = fc.to_str(real_cbrt(2, fc))
    assert s.endswith("@30")
    assert s.startswith("1.2599210498948731")


def test_contexts_are_independent():
    a, b = FloatCtx(30), FloatCtx(90)
    va = real_cbrt(2, a)
    vb = real_cbrt(2, b)
    assert a.mp.dps < b.mp.dps
    assert abs(a.mpf(str(vb)) - va) < a.mpf(10) ** -28
