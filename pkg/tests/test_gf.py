import itertools
from math import prod

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quiverfold.config import Config
from quiverfold.errors import DivisionByZero, SizeCapExceeded
from quiverfold.gf import (Matrix, embedding, enumerate_GL, extension, field, field_of_order,
                           gl_order, inverse, irreducible_polys, is_irreducible, is_prime_power,
                           matmul, matvec, nullspace, poly_divmod, poly_gcd, poly_mul,
                           prime_power, prime_powers, rank, smallest_irreducible, solve)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1)]


def test_gf4_on_t2_t_1():
    F = field(2, 2)
    assert F.modulus == (1, 1, 1)
    w = 2  # T
    assert F.mul(w, w) == F.add(w, 1) == 3
    assert F.frobenius(w, 1) == F.mul(w, w) == 3


def test_smallest_irreducible_is_lexicographic():
    # over GF(2): x^3 + x + 1 comes before x^3 + x^2 + 1
    assert smallest_irreducible(2, 3) == (1, 1, 0, 1)
    # over GF(3): x^2 + 1 is the first irreducible quadratic
    assert smallest_irreducible(3, 2) == (1, 0, 1)


def test_prime_powers():
    assert list(itertools.islice(prime_powers(), 10)) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    assert prime_power(27) == (3, 3)
    assert not is_prime_power(12) and not is_prime_power(1)
    with pytest.raises(ValueError):
        prime_power(6)


@pytest.mark.parametrize("p,n", FIELDS)
def test_frobenius_has_order_n(p, n):
    F = field(p, n)
    assert all(F.frobenius(x, n) == x for x in F.elements())
    fixed = [x for x in F.elements() if F.frobenius(x, 1) == x]
    assert fixed == list(range(p))


@pytest.mark.parametrize("p,n", FIELDS)
def test_generator_is_primitive(p, n):
    F = field(p, n)
    if F.order > 2:
        assert F.element_order(F.generator) == F.order - 1


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field(3, 2).inv(0)


@st.composite
def field_and_elements(draw, k=3):
    p, n = draw(st.sampled_from(FIELDS))
    F = field(p, n)
    xs = [draw(st.integers(0, F.order - 1)) for _ in range(k)]
    return F, xs


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@given(field_and_elements(), st.integers(0, 5))
def test_frobenius_semilinear(data, s):
    F, (a, b, _) = data
    fr = lambda x: F.frobenius(x, s)
    assert fr(F.add(a, b)) == F.add(fr(a), fr(b))
    assert fr(F.mul(a, b)) == F.mul(fr(a), fr(b))
    assert fr(a) == F.pow(a, F.p ** s)


@given(field_and_elements(k=8))
def test_numpy_arithmetic_matches_scalar(data):
    F, xs = data
    a, b = np.array(xs[:4]), np.array(xs[4:])
    assert F.np_add(a, b).tolist() == [F.add(x, y) for x, y in zip(xs[:4], xs[4:])]
    assert F.np_mul(a, b).tolist() == [F.mul(x, y) for x, y in zip(xs[:4], xs[4:])]


@pytest.mark.parametrize("m,q", [(m, q) for m in (1, 2, 3) for q in (2, 3, 4)])
def test_enumerate_gl_counts(m, q):
    F = field_of_order(q)
    mats = list(enumerate_GL(m, F))
    assert len(mats) == len(set(mats)) == prod(q ** m - q ** k for k in range(m)) == gl_order(m, q)
    assert all(rank(F, M) == m for M in mats)


def test_enumerate_gl_cap():
    with pytest.raises(SizeCapExceeded):
        next(enumerate_GL(3, field(2, 2), Config(max_points=1000)))


def test_small_gl_examples():
    assert len(list(enumerate_GL(2, field(2)))) == 6
    assert len(list(enumerate_GL(1, field(3)))) == 2
    assert rank(field(2), Matrix.zeros(3, 2)) == 0


@st.composite
def square_systems(draw):
    p, n = draw(st.sampled_from(FIELDS))
    F = field(p, n)
    m = draw(st.integers(1, 4))
    k = draw(st.integers(1, 4))
    entries = st.integers(0, F.order - 1)
    A = Matrix.from_rows([[draw(entries) for _ in range(k)] for _ in range(m)], k)
    x = tuple(draw(entries) for _ in range(k))
    return F, A, x


@given(square_systems())
def test_solve_reproduces_rhs(data):
    F, A, x = data
    b = matvec(F, A, x)
    y = solve(F, A, b)
    assert y is not None and matvec(F, A, y) == b
    assert rank(F, A) + len(nullspace(F, A)) == A.cols
    for v in nullspace(F, A):
        assert not any(matvec(F, A, v))


@given(square_systems())
def test_inverse(data):
    F, A, _ = data
    if A.rows != A.cols or rank(F, A) < A.rows:
        return
    I = Matrix.identity(A.rows)
    assert matmul(F, inverse(F, A), A) == I == matmul(F, A, inverse(F, A))


@pytest.mark.parametrize("small,big", [((2, 1), (2, 4)), ((2, 2), (2, 4)), ((3, 1), (3, 2)),
                                       ((2, 2), (2, 6)), ((2, 3), (2, 6))])
def test_embedding_is_a_field_homomorphism(small, big):
    S, B = field(*small), field(*big)
    e = embedding(S, B)
    assert len(set(e)) == S.order and e[0] == 0 and e[1] == 1
    for a, b in itertools.product(S.elements(), repeat=2):
        assert e[S.add(a, b)] == B.add(e[a], e[b])
        assert e[S.mul(a, b)] == B.mul(e[a], e[b])


def test_subfields_and_extension():
    F = extension(4, 3)
    assert F.order == 64
    assert F.subfield(2) == sorted(x for x in F.elements() if F.in_subfield(x, 2))
    assert len(F.subfield(3)) == 8


def test_polynomials_over_gf4():
    F = field(2, 2)
    w = 2
    # (T + w)(T + w^2) = T^2 + T + 1
    assert poly_mul(F, (w, 1), (F.mul(w, w), 1)) == (1, 1, 1)
    assert poly_gcd(F, (1, 1, 1), (w, 1)) == (w, 1)
    q, r = poly_divmod(F, (1, 1, 1), (w, 1))
    assert r == () and q == (F.mul(w, w), 1)
    assert is_irreducible(F, (w, 1, 1))  # T^2 + T + w over GF(4)
    assert not is_irreducible(F, (1, 1, 1))
    assert len(irreducible_polys(F, 1)) == 3  # T + c, c != 0
    # trial division restricted to GF(2) coefficients
    assert irreducible_polys(F, 2, coeffs=[0, 1]) == [(1, 1, 1)]
