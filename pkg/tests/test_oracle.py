from fractions import Fraction

import pytest
import sympy

from stieltjes.errors import CertificationError, InvalidInputError, NoReferenceError
from stieltjes.numerics import PrecisionContext, compare_digits, from_decimal, from_mpf, relative_error
from stieltjes.oracle import (
    SOURCES,
    EMConfig,
    LogPowerPolynomial,
    ReferenceRecord,
    bernoulli_numbers,
    certify_em,
    em_gamma,
    em_raw,
    format_fixture,
    log_power_polynomials,
    parse_fixtures,
    reference,
    references,
)


def test_bernoulli_values():
    B = bernoulli_numbers(5)
    assert B == (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66))


def test_bernoulli_against_sympy():
    for r, b in enumerate(bernoulli_numbers(30), start=1):
        assert b == Fraction(int(sympy.bernoulli(2 * r).p), int(sympy.bernoulli(2 * r).q))


def test_bernoulli_range():
    with pytest.raises(InvalidInputError):
        bernoulli_numbers(0)
    with pytest.raises(InvalidInputError):
        bernoulli_numbers(31)


@pytest.mark.parametrize("n", [0, 1, 3, 7])
def test_log_power_polynomials_match_sympy(n):
    x = sympy.symbols("x", positive=True)
    L = sympy.symbols("L")
    f = sympy.log(x) ** n / x
    polys = log_power_polynomials(n, 6)
    for q, P in enumerate(polys):
        assert P.q == q
        lhs = sympy.expand(P(sympy.log(x)) / x ** (q + 1))
        rhs = sympy.expand(sympy.diff(f, x, q))
        assert sympy.simplify(lhs - rhs) == 0
        assert all(isinstance(c, int) for c in P.coeffs)
    assert LogPowerPolynomial.base(n)(L) == L**n


def test_config_validation():
    with pytest.raises(InvalidInputError):
        EMConfig(5, 10)
    with pytest.raises(InvalidInputError):
        EMConfig(100, 0)
    cfg = EMConfig(1000, 29)
    assert cfg.refined().m == 2000 and cfg.refined().R == 30


def test_gamma0(ctx):
    g = em_gamma(0, 1, EMConfig(1000, 12, ctx))
    assert compare_digits(g, from_decimal(1, "577216", -1, ctx), 6)
    assert abs(g.to_mpf(ctx) - ctx.mp.euler) < 1e-60


def test_gamma10_table(ctx):
    g = em_gamma(10, 1, EMConfig.for_n(10, ctx), digits=25)
    # the printed exact column is truncated, not rounded (2.053328149...e-4)
    assert compare_digits(g, from_decimal(1, "205332814", -4, ctx), 9, mode="truncate")


def test_self_certification_n1(ctx):
    res = certify_em(1, 1, EMConfig(10000, 10, ctx))
    assert res.check_config.m == 20000 and res.check_config.R == 12
    assert res.achieved_digits >= 25
    assert abs(res.value.to_mpf(ctx) - ctx.mp.stieltjes(1)) < 1e-60


def test_certification_failure(ctx):
    with pytest.raises(CertificationError):
        certify_em(20, 1, EMConfig(10, 1, ctx), digits=30)


def test_error_shrinks_with_m(ctx):
    mp = ctx.mp
    exact = mp.stieltjes(5)
    errs = [abs(em_raw(5, 1, EMConfig(m, 3, ctx))[0] - exact) for m in (20, 40, 80, 160)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_alpha_offset_against_mpmath(ctx):
    mp = ctx.mp
    g = em_gamma(3, Fraction(1, 2), EMConfig(1000, 12, ctx), digits=40)
    assert abs(g.to_mpf(ctx) / mp.stieltjes(3, mp.mpf(1) / 2) - 1) < 1e-60


def test_alpha_must_be_positive(ctx):
    with pytest.raises(InvalidInputError):
        em_raw(2, 0, EMConfig(100, 4, ctx))


def test_fixture_roundtrip():
    text = "# comment\n10 1 +1 205332814 -4 table4\n\n137 1 -1 799522199 27 table4  # tail\n"
    recs = parse_fixtures(text)
    assert [r.n for r in recs] == [10, 137]
    assert recs[1].value.sign == -1
    assert format_fixture(recs[0]) == "10 1 +1 205332814 -4 table4"
    assert parse_fixtures("\n".join(format_fixture(r) for r in recs)) == recs


@pytest.mark.parametrize(
    "bad",
    ["10 1 +1 205332814 -4", "10 1 +1 205332814 -4 somewhere", "10 1 +1 0123 -4 derived"],
)
def test_fixture_rejects_bad_lines(bad):
    with pytest.raises(InvalidInputError):
        parse_fixtures(bad)


def test_reference_lookup():
    assert reference(137).source == "derived"
    assert reference(137, "table4").value.digits == "799522199"
    assert reference(100000).value.exponent10 == 83432
    assert reference(0).source == "printed_gamma0"
    assert {r.source for r in references(100)} <= set(SOURCES)
    with pytest.raises(NoReferenceError):
        reference(90)
    with pytest.raises(NoReferenceError):
        reference(137, "oracle")


def test_reference_falls_back_to_oracle():
    rec = reference(7)
    assert isinstance(rec, ReferenceRecord) and rec.source == "oracle"


@pytest.mark.parametrize("n", [25, 75, 100, 137, 1000])
def test_derived_fixtures_match_mpmath(n):
    ctx = PrecisionContext(256)
    mp = ctx.mp
    rec = reference(n, "derived")
    assert rec.digit_count >= 25
    exact = mp.stieltjes(n)
    assert abs(rec.value.to_mpf(ctx) / exact - 1) < mp.mpf(10) ** (1 - rec.digit_count)


@pytest.mark.parametrize("n", [10, 50, 80, 100, 137, 200, 500])
def test_printed_exact_column_vs_mpmath(n):
    ctx = PrecisionContext(256)
    printed = reference(n, "table4").value
    exact = ctx.mp.stieltjes(n)
    sign = 1 if exact > 0 else -1
    assert compare_digits(from_mpf(exact, 30, ctx), printed, 9, mode="truncate")
    assert sign == printed.sign


def test_printed_exact_column_vs_oracle():
    # only the oracle-range entry can be checked by brute force
    ctx = PrecisionContext(256)
    res = certify_em(10, 1, EMConfig.for_n(10, ctx), digits=30)
    assert compare_digits(res.value, reference(10, "table4").value, 9, mode="truncate")
    assert float(relative_error(res.value, from_decimal(1, "205332814", -4, ctx), ctx)) < 1e-8
