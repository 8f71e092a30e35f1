from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from btcycles.errors import IngestError, NegativeValuation
from btcycles.scalars import (INF, PadicContext, fq_elements, scalar_from_tuple,
                              scalar_to_tuple, vp)

CTX = PadicContext(3)
CTX5 = PadicContext(5)

fractions = st.builds(Fraction,
                      st.integers(min_value=-3 ** 6, max_value=3 ** 6),
                      st.integers(min_value=1, max_value=3 ** 6))


def test_context_validation():
    with pytest.raises(IngestError):
        PadicContext(4)
    with pytest.raises(IngestError):
        PadicContext(2)
    # eps must be a non-residue mod p
    with pytest.raises(IngestError):
        PadicContext(3, eps=1)
    assert PadicContext(3).eps == 2
    assert PadicContext(5).eps == 2
    assert PadicContext(7).eps == 3


def test_vp():
    assert vp(Fraction(0), 3) is INF
    assert vp(Fraction(9), 3) == 2
    assert vp(Fraction(1, 3), 3) == -1
    assert vp(Fraction(5, 7), 3) == 0


def test_basic_arithmetic():
    x = CTX.scalar(Fraction(1, 3), 2)
    y = CTX.scalar(2, Fraction(1, 2))
    assert x + y - y == x
    assert (x * y) / y == x
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()


def test_norm_and_trace():
    x = CTX.scalar(2, 5)
    assert x.norm() == Fraction(4 - 2 * 25)
    assert x.trace() == 4
    assert x * x.conj() == CTX.scalar(x.norm())


def test_valuation_rules():
    assert CTX.scalar(0, 0).valuation() is INF
    assert CTX.scalar(9, 3).valuation() == 1
    assert CTX.scalar(Fraction(1, 3)).valuation() == -1
    assert CTX.scalar(1, 9).valuation() == 0


@given(x=st.tuples(fractions, fractions), y=st.tuples(fractions, fractions))
def test_valuation_additive_on_products(x, y):
    a = CTX.scalar(*x)
    b = CTX.scalar(*y)
    if a and b:
        assert (a * b).valuation() == a.valuation() + b.valuation()
    assert a.norm() == a.conj().norm()


@given(x=st.tuples(fractions, fractions))
def test_shift_roundtrip(x):
    a = CTX.scalar(*x)
    assert a.shifted(2).shifted(-2) == a
    if a:
        assert a.shifted(3).valuation() == a.valuation() + 3


@given(x=st.tuples(fractions, fractions))
def test_tuple_serialization_roundtrip(x):
    a = CTX.scalar(*x)
    assert scalar_from_tuple(CTX, scalar_to_tuple(a)) == a


def test_reduce():
    assert CTX.scalar(4, 3).reduce() == CTX.fq(1, 0)
    with pytest.raises(NegativeValuation):
        CTX.scalar(Fraction(1, 3)).reduce()


def test_fq_field_axioms():
    els = fq_elements(CTX)
    assert len(els) == 9
    one = CTX.fq(1)
    for x in els:
        assert x + (-x) == CTX.fq(0)
        assert x.frob().frob() == x
        if x:
            assert x * x.inv() == one
            # the norm lands in F_p and matches x * frob(x)
            assert x * x.frob() == CTX.fq(x.norm())


def test_fq_norm_surjective_onto_units():
    hit = {x.norm() for x in fq_elements(CTX5) if x}
    assert hit == {1, 2, 3, 4}


def test_fq_lift_reduce():
    for x in fq_elements(CTX):
        lifted = x.lift()
        assert lifted.is_integral()
        assert lifted.reduce() == x
