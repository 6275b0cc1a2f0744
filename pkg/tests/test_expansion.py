import math
from fractions import Fraction

import pytest

from stieltjes.errors import InvalidInputError, PrecisionError
from stieltjes.expansion import (
    ExpansionRequest,
    bounds,
    default_kmax,
    eval_hurwitz,
    eval_Jk,
    eval_leading,
    eval_multi,
    eval_theorem1,
    eval_theorem2,
    evaluate,
    run,
)
from stieltjes.numerics import PrecisionContext, compare_digits, from_decimal, relative_error
from stieltjes.oracle import EMConfig, certify_em, reference
from stieltjes.tables import TABLE4


def _rel(est, n, ctx, source="derived"):
    return float(relative_error(est.value, reference(n, source).value, ctx))


def test_request_validation(ctx):
    with pytest.raises(InvalidInputError):
        ExpansionRequest(0, ctx=ctx)
    with pytest.raises(InvalidInputError):
        ExpansionRequest(10, -1, ctx=ctx)
    with pytest.raises(InvalidInputError):
        ExpansionRequest(10, 2, 0, ctx=ctx)
    with pytest.raises(InvalidInputError):
        ExpansionRequest(10, mode="fourier", ctx=ctx)
    with pytest.raises(InvalidInputError):
        ExpansionRequest(10, hurwitz_alpha="-0.5", ctx=ctx)
    assert ExpansionRequest(10, mode="t2", ctx=ctx).mode == "theorem2"


def test_default_kmax():
    assert [default_kmax(n) for n in (5, 29, 30, 74, 75, 1000)] == [3, 3, 2, 2, 1, 1]


@pytest.mark.parametrize("n, printed", [(100, 1.982e-12), (1000, 2.743e-18)])
def test_theorem1_error(ctx, n, printed):
    err = _rel(eval_theorem1(ExpansionRequest(n, 6, 1, ctx=ctx)), n, ctx)
    assert printed / 2 <= err <= printed * 2


def test_n137_leading_wrong_sign(ctx):
    est = eval_theorem1(ExpansionRequest(137, 0, 1, ctx=ctx))
    assert est.value.sign == 1
    assert compare_digits(est.value, from_decimal(1, "3898740", 27, ctx), 7)
    assert reference(137).value.sign == -1


def test_estimate_shape(ctx):
    est = eval_theorem1(ExpansionRequest(100, 6, 1, ctx=ctx))
    assert len(est.terms) == 7
    assert est.per_k[0][1] == est.value
    assert est.terms[0][1] == 0  # no D_0 term
    assert not est.truncation_flag


@pytest.mark.parametrize("n, k, orders", [(75, 2, 11), (25, 2, 5), (25, 3, 8)])
def test_Jk_orders_of_magnitude(ctx, n, k, orders):
    one, other = eval_Jk(n, 1, 0, ctx), eval_Jk(n, k, 0, ctx)
    gap = float((one.ln_magnitude - other.ln_magnitude) / ctx.mp.ln10)
    assert abs(gap - orders) <= 1


def test_multi_table3_values(ctx):
    e2 = _rel(eval_multi(ExpansionRequest(25, 6, 2, ctx=ctx)), 25, ctx, "oracle")
    e1 = _rel(eval_multi(ExpansionRequest(25, 6, 1, ctx=ctx)), 25, ctx, "oracle")
    assert 1.189e-8 / 2 <= e2 <= 1.189e-8 * 2
    assert 1.482e-5 / 2 <= e1 <= 1.482e-5 * 2


def test_multi_kmax1_equals_theorem1(ctx):
    a = eval_multi(ExpansionRequest(60, 4, 1, ctx=ctx))
    b = eval_theorem1(ExpansionRequest(60, 4, 1, ctx=ctx))
    assert a.value == b.value and a.bracket == b.bracket


@pytest.mark.parametrize("n", sorted(TABLE4))
def test_table4_columns(ctx, n):
    lead, closed, exact = TABLE4[n]
    assert compare_digits(eval_leading(n, ctx).value, from_decimal(*lead, ctx), 7)
    t2 = eval_theorem2(n, ctx)
    assert compare_digits(t2.value, from_decimal(*closed, ctx), 9)
    # sign correctness against the exact column
    assert t2.value.sign == exact[0]


def test_theorem2_n500_nine_figures(ctx):
    t2 = eval_theorem2(500, ctx)
    assert compare_digits(t2.value, from_decimal(-1, "116550527", 204, ctx), 9)
    assert compare_digits(t2.value, reference(500, "table4").value, 9)


def test_leading_is_s0(ctx):
    a = eval_leading(80, ctx)
    b = eval_theorem1(ExpansionRequest(80, 0, 1, ctx=ctx))
    assert a.value == b.value


def test_small_cos_warning(ctx):
    assert any("sign is unreliable" in w for w in eval_leading(137, ctx).warnings)
    assert not any("sign is unreliable" in w for w in eval_leading(100, ctx).warnings)


def test_theorem_consistency_shrinks(ctx):
    gaps = []
    for n in (100, 300, 1000):
        t1 = eval_theorem1(ExpansionRequest(n, 2, 1, ctx=ctx))
        t2 = eval_theorem2(n, ctx)
        gaps.append(float(relative_error(t1.value, t2.value, ctx)))
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.parametrize("n", [75, 100, 137, 1000])
def test_error_nonincreasing_in_s(ctx, n):
    errs = [_rel(eval_theorem1(ExpansionRequest(n, s, 1, ctx=ctx)), n, ctx) for s in range(7)]
    assert all(b <= a for a, b in zip(errs, errs[1:])), errs


def test_n25_k1_plateau(ctx):
    errs = [_rel(eval_multi(ExpansionRequest(25, s, 1, ctx=ctx)), 25, ctx, "oracle") for s in (4, 5, 6)]
    assert max(errs) / min(errs) < 1.1
    assert all(1e-5 < e < 2e-5 for e in errs)


@pytest.mark.parametrize("n", [50, 100, 500])
def test_hurwitz_alpha1_identical(ctx, n):
    cn, g = eval_hurwitz(n, 1, 6, ctx)
    t1 = eval_theorem1(ExpansionRequest(n, 6, 1, ctx=ctx))
    assert g.value == t1.value and g.bracket == t1.bracket
    assert cn.value == t1.value


def test_hurwitz_alpha1_closed_form(ctx):
    _, g = eval_hurwitz(137, "1", None, ctx)
    assert g.value == eval_theorem2(137, ctx).value


def test_hurwitz_periodicity(ctx):
    a, _ = eval_hurwitz(80, Fraction(1, 3), 4, ctx)
    b, _ = eval_hurwitz(80, Fraction(4, 3), 4, ctx)
    assert a.value == b.value


def test_hurwitz_rejects_nonpositive(ctx):
    with pytest.raises(InvalidInputError):
        eval_hurwitz(50, 0, 4, ctx)


def test_hurwitz_half_vs_mpmath(ctx):
    # mpmath.stieltjes(n, a) as an independent check; it is slow but fine at n = 60
    mp = ctx.mp
    _, g = eval_hurwitz(60, "0.5", 6, ctx, k_max=2)
    exact = mp.stieltjes(60, mp.mpf(1) / 2)
    assert abs(g.value.to_mpf(ctx) / exact - 1) < 1e-7


def test_hurwitz_above_one_recurrence(ctx):
    # gamma_n(alpha + 1) = gamma_n(alpha) - log^n(alpha)/alpha
    mp = ctx.mp
    n = 40
    _, g1 = eval_hurwitz(n, "0.25", 6, ctx, k_max=2)
    _, g2 = eval_hurwitz(n, "1.25", 6, ctx, k_max=2)
    x = mp.mpf("0.25")
    diff = g1.value.to_mpf(ctx) - mp.log(x) ** n / x
    assert abs(g2.value.to_mpf(ctx) / diff - 1) < 1e-20


@pytest.mark.slow
def test_hurwitz_half_n100_vs_oracle(ctx):
    _, g = eval_hurwitz(100, "0.5", 6, ctx)
    res = certify_em(100, Fraction(1, 2), EMConfig.for_n(100, ctx), digits=15)
    assert float(relative_error(g.value, res.value, ctx)) <= 1e-10


def test_run_dispatch(ctx):
    assert run(ExpansionRequest(50, mode="t2", ctx=ctx)).value == eval_theorem2(50, ctx).value
    assert run(ExpansionRequest(50, 3, 2, ctx=ctx)).value == eval_multi(ExpansionRequest(50, 3, 2, ctx=ctx)).value
    assert run(ExpansionRequest(50, mode="t2", hurwitz_alpha=1, ctx=ctx)).value == eval_theorem2(50, ctx).value


def test_bounds_examples(ctx):
    mp = ctx.mp
    r1 = bounds(1, ctx)
    assert abs(r1.berndt.to_mpf(ctx) - 2 / mp.pi) < 1e-60
    assert f"{float(r1.berndt.to_mpf(ctx)):.5f}" == "0.63662"
    assert r1.matsuoka is None
    r10 = bounds(10, ctx)
    m10 = r10.matsuoka.to_mpf(ctx)
    assert abs(m10 - mp.mpf(10) ** -4 * mp.log(10) ** 10) < 1e-60
    assert f"{float(m10):.3f}" == "0.419"
    assert 2.05e-4 < m10


@pytest.mark.parametrize("n", [100, 1000])
def test_lambda_asymptote(ctx, n):
    lam = bounds(n, ctx).lambda_n
    ratio = lam / (math.sqrt(2) * (2 / ctx.mp.e) ** n)
    assert abs(ratio - 1) < 0.05


def test_bounds_overestimate_n100(ctx):
    g = reference(100).value
    r = bounds(100, ctx)
    for b in (r.berndt, r.zhang_williams, r.matsuoka):
        assert b.ln_magnitude > g.ln_magnitude


@pytest.mark.parametrize("n", [10, 25, 50, 100, 137, 200, 300, 500])
def test_bound_dominance(ctx, n):
    est = run(ExpansionRequest(n, 6, ctx=ctx))
    r = bounds(n, ctx)
    for b in (r.berndt, r.zhang_williams, r.matsuoka):
        assert est.value.ln_magnitude < b.ln_magnitude


def test_evaluate_certifies(ctx):
    est = evaluate(ExpansionRequest(500, 6, 1, ctx=ctx), digits=20)
    assert est.achieved_digits >= 20
    assert est.working_bits >= 256


def test_evaluate_precision_error(ctx):
    with pytest.raises(PrecisionError):
        evaluate(ExpansionRequest(500, 6, 1, ctx=ctx), digits=200, max_bits=256)


def test_n100000_auto_raise():
    est = evaluate(ExpansionRequest(100000, 6, 1, ctx=PrecisionContext(256)), digits=30)
    ref = reference(100000, "printed_large_n").value
    assert compare_digits(est.value, ref, 30, mode="truncate")
