from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isocharsum._numbers import euler_phi
from isocharsum.charsum import (
    LAMBDA_FORMS,
    char_exponent,
    char_exponent_coset,
    character,
    charsum_bruteforce,
    charsum_compact,
    charsum_lambda,
    compact_sum,
    distinct_values,
    lambda_sum,
    lambda_sum_general,
    lambdas,
    make_context,
)
from isocharsum.errors import NotExactOrder, UnsupportedM
from isocharsum.families import family_instance, search_instances
from isocharsum.finite_field import GF, embed
from isocharsum.velu import velu_from_kernel


def context(row, p, *params, zeta=None):
    inst = family_instance(row, GF(p), *params)
    return make_context(velu_from_kernel(inst.curve, inst.P, inst.m), zeta)


def test_m4_example():
    ctx = context("4", 7, 2)
    assert ctx.d == 2
    assert charsum_bruteforce(ctx).value == 5
    assert charsum_compact(ctx).value == 5
    assert charsum_lambda(ctx).value == 5


def test_m2_example():
    ctx = context("2", 13, 3, 5)
    assert ctx.zeta == -1 and ctx.d == 1
    assert charsum_bruteforce(ctx).value == 0


def test_m5_example():
    ctx = context("5", 11, 2)
    assert ctx.d == 1 and ctx.zeta == 3
    assert charsum_bruteforce(ctx).value == 6
    assert charsum_compact(ctx).value == 6
    lam = lambdas(ctx.zeta, 5)
    assert lam[2] == 3


def test_m5_over_f7_needs_degree_four():
    ctx = context("5", 7, 3)
    assert ctx.d == 4
    assert charsum_bruteforce(ctx).value == charsum_compact(ctx).value


def test_explicit_zeta():
    ctx = context("5", 11, 2, zeta=GF(11)(9))
    assert charsum_bruteforce(ctx).value == charsum_compact(ctx).value
    with pytest.raises(NotExactOrder):
        context("5", 11, 2, zeta=GF(11)(10))


def test_m3_kubert_type_is_zero():
    ctx = context("3", 13, 1, 3)
    assert [R.x for R in ctx.phi.kernel[1:]] == [0, 0]
    assert charsum_lambda(ctx).value == 0 == charsum_bruteforce(ctx).value


def test_q_maps_to_p():
    ctx = context("8", 17, 3)
    assert ctx.phi_c(ctx.Q) == ctx.P
    assert char_exponent(ctx, ctx.Q) == 1
    assert char_exponent(ctx, 2 * ctx.Q) == 2
    for R in ctx.image_set:
        assert char_exponent(ctx, R) == 0


@pytest.mark.parametrize("case", [("4", 7, 2), ("5", 11, 2), ("6", 13, 3), ("8", 17, 3), ("4'", 29, 3), ("2", 31, 1, 4)])
def test_character_properties(case):
    ctx = context(*case)
    pts = ctx.codomain_points
    m = ctx.m
    sizes = [0] * m
    for R in pts:
        j = char_exponent(ctx, R)
        sizes[j] += 1
        assert j == char_exponent_coset(ctx, R)
        assert character(ctx, R) == ctx.zeta**j
    assert len(set(sizes)) == 1
    for R in pts[::3]:
        for S in pts[1::5]:
            assert char_exponent(ctx, R + S) == (char_exponent(ctx, R) + char_exponent(ctx, S)) % m
    # independence of Q
    Qs = [R for R in pts if char_exponent(ctx, R) == 1]
    for R in pts:
        assert char_exponent_coset(ctx, R, Qs[-1]) == char_exponent_coset(ctx, R, Qs[0])


@pytest.mark.parametrize("case", [("5", 11, 2), ("8", 17, 3), ("10", 41, 22)])
def test_generator_change(case):
    row, p, alpha = case
    inst = family_instance(row, GF(p), alpha)
    m = inst.m
    phi = velu_from_kernel(inst.curve, inst.P, m)
    ctx = make_context(phi)
    for a in range(2, m):
        if gcd(a, m) != 1:
            continue
        ctx_a = make_context(velu_from_kernel(inst.curve, a * inst.P, m), ctx.zeta)
        assert ctx_a.phi.codomain == phi.codomain
        b = pow(a, -1, m)
        zeta_prime = ctx.zeta**b  # zeta'^a = zeta
        for R in ctx.codomain_points:
            assert ctx_a.zeta ** char_exponent(ctx_a, R) == zeta_prime ** char_exponent(ctx, R)


def test_conjugate_zeta_and_distinct_values():
    ctx = context("5", 11, 2)
    z = ctx.zeta
    assert compact_sum(ctx.phi.kernel, z) == compact_sum(ctx.phi.kernel, z.inverse())
    vals = distinct_values(ctx.phi)
    assert vals == {embed(GF(11)(3), ctx.target), embed(GF(11)(6), ctx.target)}
    assert len(distinct_values(context("3", 13, 1, 3).phi)) == 1


def test_lambda_forms_listed():
    assert LAMBDA_FORMS[8][0] == "l1*(x1 - x3) - x4"
    assert LAMBDA_FORMS[12][0] == "l1*(x1 - x5) + x2 - x4 - x6"
    with pytest.raises(UnsupportedM):
        lambda_sum([None] * 11, GF(23)(1))


def test_tabulated_m6_row_is_not_an_identity():
    # on E(b, c) the kernel has x_P = 0 and x_2P = b, so -x_3P misses -x_2P
    ctx = context("6", 11, 2)
    x = [R.x for R in ctx.phi.kernel]
    assert (x[1], x[2], x[3]) == (0, 6, 2)
    assert charsum_compact(ctx).value == 3
    assert lambda_sum_general(ctx.phi.kernel, ctx.zeta) == 3
    assert charsum_lambda(ctx).value == 9


@pytest.mark.parametrize("p", [11, 29, 41])
def test_general_rewrite_m6(p):
    for alpha in range(2, p):
        try:
            inst = family_instance("6", GF(p), alpha)
        except ValueError:
            continue
        ctx = make_context(velu_from_kernel(inst.curve, inst.P, 6))
        assert lambda_sum_general(ctx.phi.kernel, ctx.zeta) == charsum_bruteforce(ctx).value


@pytest.mark.parametrize("m", [7, 9, 12])
def test_searched_lambda_forms(m):
    p = {7: 29, 9: 37, 12: 47}[m]
    found = list(search_instances(GF(p), m, cap=2))
    assert found
    for inst in found:
        ctx = make_context(velu_from_kernel(inst.curve, inst.P, m))
        b = charsum_bruteforce(ctx).value
        assert b == charsum_compact(ctx).value == charsum_lambda(ctx).value
        assert b == lambda_sum_general(ctx.phi.kernel, ctx.zeta)


def test_extension_base_field():
    # E(alpha, alpha) with alpha outside F_7 still carries a point of order 5
    F = GF(7, 2)
    inst = family_instance("5", F, F.gen() + 2)
    ctx = make_context(velu_from_kernel(inst.curve, inst.P, 5))
    assert charsum_bruteforce(ctx).value == charsum_compact(ctx).value == charsum_lambda(ctx).value


@given(st.integers(2, 96))
def test_theorem_m5_sampled(alpha):
    try:
        ctx = context("5", 97, alpha)
    except ValueError:
        return
    assert charsum_bruteforce(ctx).value == charsum_compact(ctx).value == charsum_lambda(ctx).value
    assert len(distinct_values(ctx.phi)) <= euler_phi(5) // 2
