from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigchain.polycore import (
    IntPoly,
    NatPoly,
    PolyParseError,
    RatPoly,
    content_primitive,
    pos_neg_split,
    squarefree,
)
from rigchain.rigmodels import MODELS, CardElem, DegreeElem, ALEPH0

from conftest import P, Z, int_polys, nat_polys


def schoolbook(a: IntPoly, b: IntPoly) -> list[int]:
    # dense convolution, independent of the sparse product
    da = [a.coeff(e) for e in range(a.degree + 1)]
    db = [b.coeff(e) for e in range(b.degree + 1)]
    out = [0] * (len(da) + len(db) - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            out[i + j] += x * y
    return out


class TestArith:
    def test_monomial_shift(self):
        assert P("1 + x^2") * P("x") == P("x + x^3")

    def test_seven_trees_product(self):
        a, b = Z("x^2 - x + 1"), Z("x^5 + x^4 - x^2 - x")
        assert schoolbook(a, b) == [0, -1, 0, 0, 0, 0, 0, 1]
        assert a * b == Z("x^7 - x")

    def test_additive_identity(self):
        a = P("3 + 2x^3 + 4x^5")
        assert a + NatPoly.zero() == a

    def test_big_coefficients(self):
        big = NatPoly({3: 10**40})
        assert (big * big).coeff(6) == 10**80

    def test_promotion(self):
        assert isinstance(P("x") + Z("-1"), IntPoly)
        assert isinstance(P("x") - P("x"), IntPoly)
        assert isinstance(P("x") * RatPoly({0: Fraction(1, 2)}), RatPoly)

    def test_nat_rejects_negative(self):
        with pytest.raises(ValueError):
            NatPoly({0: -1})
        with pytest.raises(ValueError):
            NatPoly.parse("1 - x")


class TestSub:
    def test_termwise(self):
        assert Z("1 + x^2") - Z("x") == Z("x^2 - x + 1")

    def test_self(self):
        a = Z("7 - 3x + x^9")
        assert a - a == 0
        assert not (a - a).terms

    def test_implication_1_2(self):
        assert Z("2 + x + 2x^2") - Z("x") == Z("2x^2 + 2")


class TestDivrem:
    def test_seven_trees(self):
        q, r = RatPoly.convert(Z("x^7 - x")).divrem(Z("x^2 - x + 1"))
        assert q == Z("x^5 + x^4 - x^2 - x") and r == 0
        assert q * Z("x^2 - x + 1") + r == Z("x^7 - x")

    def test_trivial(self):
        assert RatPoly.convert(Z("x^2")).divrem(Z("x")) == (Z("x"), 0)

    def test_with_remainder(self):
        q, r = RatPoly.convert(Z("x^2 + 1")).divrem(Z("x + 1"))
        assert (q, r) == (Z("x - 1"), Z("2"))
        assert q * Z("x + 1") + r == Z("x^2 + 1")

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            RatPoly.convert(Z("x")).divrem(IntPoly.zero())

    @given(int_polys(6, 9), int_polys(3, 4).filter(bool))
    def test_multiply_back(self, a, d):
        q, r = RatPoly.convert(a).divrem(d)
        assert q * d + r == a
        assert r.degree < d.degree


class TestContent:
    @pytest.mark.parametrize(
        "text,content,primitive",
        [("2x^2 + 2", 2, False), ("x^2 - x + 1", 1, True), ("0", 0, False), ("-6 + 9x", 3, False)],
    )
    def test_examples(self, text, content, primitive):
        assert content_primitive(Z(text)) == (content, primitive)


class TestSquarefree:
    @pytest.mark.parametrize(
        "text,expected",
        [("x^2 - x + 1", True), ("x^2 + 2x + 1", False), ("x", True),
         ("(x-1)^2 (x+2)", False), ("x^3 - x", True), ("4(x^2+1)", True)],
    )
    def test_examples(self, text, expected):
        assert squarefree(Z(text)) is expected

    def test_zero(self):
        with pytest.raises(ValueError):
            squarefree(IntPoly.zero())

    @given(int_polys(3, 4).filter(lambda a: a.degree >= 1))
    @settings(max_examples=50)
    def test_square_is_never_squarefree(self, a):
        assert not squarefree(a * a)


class TestPosNegSplit:
    def test_examples(self):
        assert pos_neg_split(Z("x + x^2 - x^4 - x^5")) == (P("x + x^2"), P("x^4 + x^5"))
        assert pos_neg_split(IntPoly.zero()) == (0, 0)
        assert pos_neg_split(Z("-3")) == (0, P("3"))

    @given(int_polys(6, 9))
    def test_disjoint_and_exact(self, r):
        r1, r2 = pos_neg_split(r)
        assert r1 - r2 == r
        assert not set(r1.terms) & set(r2.terms)


class TestEval:
    def test_nat(self):
        assert P("1 + x^2")(2) == 5

    def test_degrees(self):
        m = MODELS["degrees"]
        assert m.evaluate(P("1 + x"), DegreeElem(1)) == DegreeElem(1)

    def test_cardinals(self):
        m = MODELS["cardinals"]
        assert m.evaluate(P("1 + x^2"), CardElem(ALEPH0)) == CardElem(ALEPH0)

    def test_int_poly_into_rig(self):
        with pytest.raises(ValueError):
            MODELS["degrees"].evaluate(Z("1 - x"), DegreeElem(1))

    @given(nat_polys(), nat_polys(), nat_polys(), st.integers(-5, 5))
    def test_homomorphism_integers(self, a, b, c, x0):
        assert (a * b + c)(x0) == a(x0) * b(x0) + c(x0)

    @pytest.mark.parametrize("name", ["degrees", "codegrees", "cardinals", "three"])
    @given(a=nat_polys(3), b=nat_polys(3), c=nat_polys(3), idx=st.integers(0, 6))
    @settings(max_examples=40)
    def test_homomorphism_models(self, name, a, b, c, idx):
        m = MODELS[name]
        elems = m.elements(4)
        x0 = elems[idx % len(elems)]
        assert m.evaluate(a * b + c, x0) == m.evaluate(a, x0) * m.evaluate(b, x0) + m.evaluate(c, x0)


class TestText:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("3 + 2x^3 + 4x^5", {0: 3, 3: 2, 5: 4}),
            ("x", {1: 1}),
            ("(1+x)^2", {0: 1, 1: 2, 2: 1}),
            ("16(1+x)", {0: 16, 1: 16}),
            ("2*x*x", {2: 2}),
            ("  1 +x ^ 2 ", {0: 1, 2: 1}),
            ("x^2 - x + 1", {0: 1, 1: -1, 2: 1}),
            ("-3", {0: -3}),
            ("x - x", {}),
        ],
    )
    def test_parse(self, text, expected):
        assert Z(text).terms == expected

    def test_binomial(self):
        assert Z("(1+x)^9").coeff(4) == 126

    @pytest.mark.parametrize("text", ["", "1 +", "x^", "(1+x", "2 3", "y", "x^-1", "1)"])
    def test_errors(self, text):
        with pytest.raises(PolyParseError) as info:
            Z(text)
        assert 0 <= info.value.pos <= len(text)

    @given(int_polys(8, 50))
    def test_print_parse_roundtrip(self, a):
        assert IntPoly.parse(str(a)) == a
        assert str(IntPoly.parse(str(a))) == str(a)

    @given(nat_polys(8, 10**30))
    def test_pairs_roundtrip(self, a):
        assert NatPoly.from_pairs(a.to_pairs()) == a
        assert all(c != "0" for _, c in a.to_pairs())

    def test_from_pairs_rejects_disorder(self):
        with pytest.raises(ValueError):
            NatPoly.from_pairs([[2, "1"], [1, "1"]])
        with pytest.raises(ValueError):
            NatPoly.from_pairs([[1, "0"]])


@given(int_polys(), int_polys(), int_polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    for r in (a + b, a * b, a - b):
        assert 0 not in r.terms.values()
