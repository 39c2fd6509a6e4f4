import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from linksgould.ring import (
    ContextMismatch,
    MalformedEntry,
    Monomial,
    NotAPolynomial,
    RingContext,
    RingElem,
    UnsupportedInversion,
    bracket,
    delta,
    invert_vars,
    pack,
    to_int,
    to_li,
    to_rep,
    unpack,
)
from oracles import P, Q, sym_equal, to_sympy


def elem(ctx, *terms, dpow=0):
    return RingElem.from_terms(ctx, [((eQ, ep, sm), c) for eQ, ep, sm, c in terms], dpow)


# bracket


def test_bracket_m1():
    ctx = RingContext(1)
    assert bracket(ctx, 0) == elem(ctx, (0, 1, 0, 1), (0, -1, 0, -1), dpow=1)


def test_bracket_m2():
    ctx = RingContext(2)
    assert bracket(ctx, 0) == elem(ctx, (-1, 1, 0, 1), (1, -1, 0, -1), dpow=1)


def test_bracket_m4_offset3():
    ctx = RingContext(4)
    assert bracket(ctx, 3) == elem(ctx, (3, 1, 0, 1), (-3, -1, 0, -1), dpow=1)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("i", [-2, 0, 1, 3])
def test_bracket_matches_q_number(m, i):
    # [alpha+i] = (q^(alpha+i) - q^-(alpha+i)) / (q - 1/q), q^alpha = p q^(-(m-1)/2)
    ctx = RingContext(m)
    qa = P * Q ** (-(m - 1))
    want = (qa * Q ** (2 * i) - 1 / (qa * Q ** (2 * i))) / (Q ** 2 - Q ** -2)
    assert sym_equal(to_sympy(bracket(ctx, i)), want)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("i", range(-3, 5))
def test_bracket_times_delta_is_delta_free(m, i):
    ctx = RingContext(m)
    assert (bracket(ctx, i) * delta(ctx)).dpow == 0


# to_int / to_rep


def test_to_int_m2_minus_two_alpha():
    assert to_int(RingContext(2), -2, 0) == Monomial(2, -2, 0)


def test_to_int_m1_alpha():
    assert to_int(RingContext(1), 1, 0) == Monomial(0, 1, 0)


def test_to_int_m4():
    assert to_int(RingContext(4), 4, 12) == Monomial(12, 4, 0)


def test_to_int_rejects_fractional_q_exponent():
    with pytest.raises(MalformedEntry):
        to_int(RingContext(1), 1, sympy.Rational(1, 4))


@given(st.integers(1, 4), st.integers(-6, 6), st.integers(-40, 40))
def test_rep_int_round_trip(m, x, twice_y):
    ctx = RingContext(m)
    y = sympy.Rational(twice_y, 2)
    try:
        mono = to_int(ctx, x, y)
    except MalformedEntry:
        return
    assert to_rep(ctx, mono) == (x, y)


# multiplication


def test_root_squared_m1():
    ctx = RingContext(1)
    s0 = RingElem.root(ctx, 0)
    assert s0 * s0 == elem(ctx, (0, 1, 0, 1), (0, -1, 0, -1))


def test_delta_cancels():
    ctx = RingContext(1)
    x = elem(ctx, (1, 0, 0, 1), (-1, 0, 0, -1), dpow=1)   # (Q - 1/Q) / Delta
    y = elem(ctx, (1, 0, 0, 1), (-1, 0, 0, 1))            # Q + 1/Q
    assert (x * y).is_one()


def test_bracket_times_delta_m1():
    ctx = RingContext(1)
    assert bracket(ctx, 0) * delta(ctx) == elem(ctx, (0, 1, 0, 1), (0, -1, 0, -1))


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        RingElem.const(RingContext(1), 1) + RingElem.const(RingContext(2), 1)


def test_zero_has_no_denominator():
    ctx = RingContext(3)
    z = bracket(ctx, 1) - bracket(ctx, 1)
    assert z.is_zero() and z.dpow == 0 and z == 0


# randomized ring axioms

contexts = st.sampled_from([RingContext(m) for m in (1, 2, 3, 4)])
term = st.tuples(st.integers(-6, 6), st.integers(-3, 3), st.integers(0, 15), st.integers(-4, 4))


@st.composite
def elems_in(draw, ctx, roots=True):
    terms = draw(st.lists(term, max_size=5))
    if not roots:
        terms = [(a, b, 0, c) for a, b, _, c in terms]
    return elem(ctx, *terms, dpow=draw(st.integers(0, 2)))


@st.composite
def triples(draw, roots=True):
    ctx = draw(contexts)
    return tuple(draw(elems_in(ctx, roots)) for _ in range(3))


@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a and a + 0 == a


@given(triples())
def test_canonicalization_idempotent(t):
    for x in t:
        again = RingElem(x.ctx, dict(x.terms), x.dpow)
        assert again == x and again.dpow == x.dpow and again.terms == x.terms


@settings(max_examples=40)
@given(triples())
def test_product_agrees_with_sympy(t):
    a, b, _ = t
    assert sym_equal(to_sympy(a * b), to_sympy(a) * to_sympy(b))
    assert sym_equal(to_sympy(a + b), to_sympy(a) + to_sympy(b))


@settings(max_examples=40)
@given(triples())
def test_canonical_form_not_divisible_by_delta(t):
    # canonical: if dpow > 0 the numerator does not vanish at Q^2 = 1/Q^2
    x = t[0] * t[1]
    if x.dpow:
        num = sympy.expand(to_sympy(x) * (Q ** 2 - Q ** -2) ** x.dpow)
        for root in (1, -1, sympy.I, -sympy.I):
            if sympy.simplify(num.subs(Q, root)) != 0:
                break
        else:
            pytest.fail(f"numerator of {x!r} is still divisible by Delta")


# inversion


def test_invert_monomial():
    ctx = RingContext(2)
    assert invert_vars(elem(ctx, (2, 1, 0, 1))) == elem(ctx, (-2, -1, 0, 1))


def test_invert_bracket_alpha_is_fixed():
    ctx = RingContext(1)
    assert invert_vars(bracket(ctx, 0)) == bracket(ctx, 0)


def test_invert_constant():
    ctx = RingContext(3)
    assert invert_vars(RingElem.const(ctx, 7)) == RingElem.const(ctx, 7)


def test_invert_rejects_roots_by_default():
    with pytest.raises(UnsupportedInversion):
        invert_vars(RingElem.root(RingContext(2), 1) * RingElem.root(RingContext(2), 0))


def test_invert_never_accepts_odd_root_degree():
    with pytest.raises(UnsupportedInversion):
        invert_vars(RingElem.root(RingContext(2), 1), roots=True)


@given(triples(roots=False))
def test_invert_is_involution(t):
    for x in t:
        assert invert_vars(invert_vars(x)) == x


@given(triples(roots=False))
def test_invert_is_ring_map(t):
    a, b, _ = t
    assert invert_vars(a * b) == invert_vars(a) * invert_vars(b)
    assert invert_vars(a + b) == invert_vars(a) + invert_vars(b)


@settings(max_examples=40)
@given(triples(roots=False))
def test_invert_matches_substitution(t):
    x = t[0]
    assert sym_equal(to_sympy(invert_vars(x)), to_sympy(x).subs({Q: 1 / Q, P: 1 / P}, simultaneous=True))


@st.composite
def even_root_elems(draw):
    ctx = draw(contexts)
    terms = draw(st.lists(term, max_size=5))
    terms = [(a, b, sm, c) for a, b, sm, c in terms if bin(sm).count("1") % 2 == 0]
    return ctx, elem(ctx, *terms, dpow=draw(st.integers(0, 2)))


@given(even_root_elems(), even_root_elems())
def test_root_inversion_is_multiplicative_involution(x, y):
    (cx, a), (cy, b) = x, y
    if cx is not cy:
        b = RingElem(cx, b.terms, b.dpow)
    assert invert_vars(invert_vars(a, roots=True), roots=True) == a
    assert invert_vars(a * b, roots=True) == invert_vars(a, roots=True) * invert_vars(b, roots=True)


# to_li


def test_to_li_monomial():
    ctx = RingContext(2)
    assert to_li(elem(ctx, (4, 2, 0, 1))) == [(2, 2, 1)]


def test_to_li_sorted_by_p_then_q():
    ctx = RingContext(1)
    x = elem(ctx, (0, 2, 0, 1), (0, 0, 0, -1), (0, -2, 0, 1))
    assert to_li(x) == [(0, -2, 1), (0, 0, -1), (0, 2, 1)]


@pytest.mark.parametrize("bad", [
    lambda ctx: elem(ctx, (3, 0, 0, 1)),
    lambda ctx: elem(ctx, (2, 0, 1, 1)),
    lambda ctx: bracket(ctx, 0),
])
def test_to_li_rejects_non_polynomials(bad):
    with pytest.raises(NotAPolynomial):
        to_li(bad(RingContext(1)))


@given(st.integers(-1000, 1000), st.integers(-30000, 30000), st.integers(0, 15))
def test_pack_round_trip(eQ, ep, sm):
    assert unpack(pack(eQ, ep, sm)) == (eQ, ep, sm)


def test_big_coefficients_stay_exact():
    ctx = RingContext(3)
    x = elem(ctx, (1, 1, 3, 3 ** 50), (0, -1, 0, -(2 ** 70)))
    assert sym_equal(to_sympy(x * x * x), to_sympy(x) ** 3)
