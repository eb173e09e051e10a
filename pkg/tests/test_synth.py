import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigchain import chain, synth
from rigchain.chain import CONTRACT, LinkStep, verify
from rigchain.polycore import IntPoly, NatPoly, RatPoly
from rigchain.synth import (
    HypothesisViolation,
    RingImplicationFails,
    SynthesisError,
    cancel_high,
    highness_oracle,
    inverse_witness,
    ladder_down,
    ladder_up,
    prop33,
    synthesize,
    unit_absorb,
    unit_element,
    witness_multiple,
    witness_power,
)

from conftest import P, Z, high_ps, nat_polys

p7 = P("1 + x^2")
pg = P("1 + x + x^2")


def assert_witness(w, b, a):
    assert (w.b, w.a) == (P(b) if isinstance(b, str) else b, P(a) if isinstance(a, str) else a)
    assert w.cert.start == w.b + w.c and w.cert.end == w.a
    assert verify(w.cert)


class TestLadders:
    def test_up_seven(self):
        w = ladder_up(p7, 0)
        assert_witness(w, "1", "x")
        assert w.c == P("x^2") and len(w.cert) == 1
        assert w.cert.steps == (LinkStep(0, NatPoly.zero(), CONTRACT),)

    def test_up_shifted(self):
        w = ladder_up(p7, 1)
        assert_witness(w, "x", "x^2")
        assert w.c == P("x^3") and w.cert.start == P("x + x^3")

    def test_up_gaussian(self):
        assert ladder_up(pg, 0).c == P("x + x^2")

    def test_up_needs_constant(self):
        with pytest.raises(HypothesisViolation):
            ladder_up(P("x + x^2"), 0)

    @pytest.mark.parametrize("p,c", [("1 + x^2", "1"), ("1 + x + x^2", "1 + x")])
    def test_down_one_step(self, p, c):
        w = ladder_down(P(p), 1)
        assert_witness(w, "x^2", "x")
        assert w.c == P(c) and len(w.cert) == 1

    def test_down_composed(self):
        w = ladder_down(P("1 + x^3"), 1)
        assert_witness(w, "x^2", "x")
        assert len(w.cert) == 2

    def test_down_general(self):
        assert_witness(ladder_down(p7, 4), "x^5", "x^4")

    def test_down_needs_degree(self):
        with pytest.raises(HypothesisViolation):
            ladder_down(P("1 + x"), 1)


class TestMultiplesAndPowers:
    def test_multiple_trivial(self):
        w = witness_multiple(p7, 1)
        assert w.c == 0 and len(w.cert) == 0

    def test_multiple_zero(self):
        w = witness_multiple(p7, 0)
        assert w.c == P("x") and len(w.cert) == 0

    @pytest.mark.parametrize("n", [2, 3, 7])
    def test_multiple(self, n):
        assert_witness(witness_multiple(p7, n), NatPoly({1: n}), "x")

    def test_power_trivial(self):
        w = witness_power(p7, 1)
        assert w.c == 0 and len(w.cert) == 0

    def test_power_zero(self):
        w = witness_power(p7, 0)
        assert w.c == P("x^2") and len(w.cert) == 1

    def test_power_four(self):
        assert_witness(witness_power(p7, 4), "x^4", "x")

    @given(high_ps(4), st.integers(0, 6), st.integers(0, 6))
    @settings(max_examples=40, deadline=None)
    def test_properties(self, p, n, m):
        assert_witness(witness_power(p, n), NatPoly.monomial(n), "x")
        assert_witness(witness_multiple(p, m), NatPoly({1: m}), "x")


class TestHighness:
    def test_zero(self):
        w = highness_oracle(p7, P("x^3"), NatPoly.zero())
        assert w.c == P("x^3") and len(w.cert) == 0

    def test_one_below_x(self):
        w = highness_oracle(p7, P("x"), P("1"))
        assert_witness(w, "1", "x")
        assert w.c == P("x^2")
        assert w.cert.start == P("1 + x^2")

    def test_x_below_x7(self):
        assert_witness(highness_oracle(p7, P("x^7"), P("x")), "x", "x^7")

    def test_constant_rejected(self):
        with pytest.raises(SynthesisError):
            highness_oracle(p7, P("3"), P("x"))

    @given(high_ps(3), nat_polys(3, 2, min_degree=1), nat_polys(3, 2))
    @settings(max_examples=60, deadline=None)
    def test_property(self, p, a, b):
        assert_witness(highness_oracle(p, a, b), b, a)


class TestUnits:
    @pytest.mark.parametrize("p,a1", [(p7, "x"), (pg, "x"), (p7, "x^7")])
    def test_unit_element(self, p, a1):
        u = unit_element(p, P(a1))
        assert u.z.degree >= 1
        assert u.cert.start == u.base + u.z and u.cert.end == u.base
        assert verify(u.cert)

    @pytest.mark.parametrize("b", ["x", "x^2", "1 + x"])
    def test_absorb(self, b):
        u = unit_element(p7, P("x"))
        c = unit_absorb(p7, u, P(b))
        assert (c.start, c.end) == (P(b) + u.z, P(b)) and verify(c)

    def test_absorb_base_is_cert(self):
        u = unit_element(p7, P("x"))
        assert unit_absorb(p7, u, P("x")) is u.cert

    @pytest.mark.parametrize("h", [None, "x + x^3", "x^2"])
    def test_inverse(self, h):
        u = unit_element(p7, P("x"))
        hh = u.z if h is None else P(h)
        w = inverse_witness(p7, u, hh)
        assert_witness(w, hh, u.z)


class TestProp33:
    def test_seven_trees(self):
        rt = Z("x^5 + x^4 - x^2 - x")
        s, cert = prop33(p7, P("x^7"), P("x"), rt)
        assert s == P("x^2 + x^3 + x^4 + x^5 + x^6 + x^7")
        assert (cert.start, cert.end) == (P("x^7") + s, P("x") + s)
        assert verify(cert) and len(cert) == 4

    def test_gaussian(self):
        rt = Z("x^3 - x")
        assert (Z("x^5") - Z("x")) == rt * (Z("1 + x + x^2") - Z("x"))
        s, cert = prop33(pg, P("x^5"), P("x"), rt)
        assert s == P("x^2 + x^3 + x^4 + x^5") and verify(cert)

    def test_equal(self):
        s, cert = prop33(p7, P("x^3"), P("x^3"), IntPoly.zero())
        assert s == 0 and len(cert) == 0

    def test_bad_cofactor(self):
        with pytest.raises(SynthesisError):
            prop33(p7, P("x^7"), P("x"), Z("x^5"))


class TestCancel:
    def test_degenerate(self):
        k = chain.generator(pg)
        k = chain.shift(k, P("x^3"))  # b = 0
        c = cancel_high(pg, k, P("x + x^3"), P("1 + x + x^2 + x^3"))
        assert (c.start, c.end) == (P("x + x^3"), P("1 + x + x^2 + x^3")) and verify(c)

    @pytest.mark.parametrize("p,q1,rt", [(p7, "x^7", "x^5 + x^4 - x^2 - x"), (pg, "x^5", "x^3 - x")])
    def test_from_prop33(self, p, q1, rt):
        s, k = prop33(p, P(q1), P("x"), Z(rt))
        c = cancel_high(p, k, P(q1), P("x"))
        assert (c.start, c.end) == (P(q1), P("x")) and verify(c)

    def test_rejects_constant(self):
        with pytest.raises(SynthesisError):
            cancel_high(p7, chain.identity(p7, P("1")), P("1"), P("1"))

    def test_rejects_wrong_endpoints(self):
        with pytest.raises(SynthesisError):
            cancel_high(p7, chain.generator(p7), P("x^2"), P("x"))


class TestSynthesize:
    @pytest.mark.parametrize(
        "p,q1,q2",
        [
            ("1 + x^2", "x^7", "x"),
            ("1 + x + x^2", "x^5", "x"),
            ("1 + x + x^2", "x^4", "2 + x^2"),
            ("1 + x + x^3", "x^7", "x"),
        ],
    )
    def test_examples(self, p, q1, q2):
        c = synthesize(P(p), P(q1), P(q2))
        assert (c.start, c.end) == (P(q1), P(q2)) and verify(c)

    def test_q2_constant(self):
        with pytest.raises(HypothesisViolation) as info:
            synthesize(p7, P("x^6"), P("1"))
        assert info.value.report.failures() == ["q2_nonconstant"]

    def test_ring_failure(self):
        with pytest.raises(RingImplicationFails) as info:
            synthesize(p7, P("x^6"), P("x"))
        assert not info.value.verdict.holds

    def test_deterministic(self):
        a = chain.serialize(synthesize(pg, P("x^5"), P("x")))
        b = chain.serialize(synthesize(pg, P("x^5"), P("x")))
        assert a == b

    @given(high_ps(3), nat_polys(4, 3, min_degree=1))
    @settings(max_examples=30, deadline=None)
    def test_reflexive(self, p, q):
        c = synthesize(p, q, q)
        assert verify(c) and c.start == c.end == q

    @given(high_ps(3), nat_polys(2, 2), nat_polys(3, 2, min_degree=1))
    @settings(max_examples=30, deadline=None)
    def test_lifted_instances(self, p, r, q2):
        # q1 - q2' = r (p - x) with both sides kept in N[x]
        q1, q2b = q2 + r * p, q2 + r * P("x")
        c = synthesize(p, q1, q2b)
        assert (c.start, c.end) == (q1, q2b) and verify(c)
        d = c.p - P("x")
        assert RatPoly.convert(q1).divrem(d)[1] == RatPoly.convert(q2b).divrem(d)[1]


def test_witness_algebra_checks_links():
    w = ladder_up(p7, 0)
    with pytest.raises(ValueError):
        synth.compose(p7, [w, w])
