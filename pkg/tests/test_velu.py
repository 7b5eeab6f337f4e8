import pytest
from hypothesis import given
from hypothesis import strategies as st

from isocharsum.errors import CurveMismatch, NotExactOrder
from isocharsum.families import family_instance
from isocharsum.finite_field import GF
from isocharsum.velu import (
    complement_isogeny,
    velu_codomain_classical,
    velu_eval,
    velu_from_kernel,
    velu_from_subgroup,
    verify_exact_sequence,
    verify_frobenius_factorization,
)
from isocharsum.weierstrass import curve_make, enumerate_points


@pytest.fixture
def phi4():
    E = curve_make(GF(7), 1, -2, -2, 0, 0)
    return velu_from_kernel(E, E.point(0, 0), 4)


@pytest.mark.parametrize("p", [7, 11, 13, 29])
@pytest.mark.parametrize("a, b", [(0, 1), (1, 2), (3, -1), (5, 6)])
def test_two_isogeny_codomain(p, a, b):
    F = GF(p)
    if (b * (a * a - 4 * b)) % p == 0:
        pytest.skip("bad reduction")
    E = curve_make(F, 0, a, 0, b, 0)
    phi = velu_from_kernel(E, E.point(0, 0), 2)
    assert phi.codomain.a_invariants() == (0, a, 0, -4 * b, -4 * a * b)
    for R in enumerate_points(E)[2:]:
        if R.x == 0:
            continue
        img = phi(R)
        # the textbook 2-isogeny (y^2/x^2, y(b - x^2)/x^2), moved by x -> x - a
        # and composed with negation
        assert img.x == R.y**2 / R.x**2 - a
        assert img.y == -R.y * (b - R.x**2) / R.x**2


def test_coefficients_copied(phi4):
    c = phi4.codomain
    assert (c.a1, c.a2, c.a3) == (1, -2, -2)
    assert phi4.degree == 4


def test_kernel_to_infinity(phi4):
    E = phi4.domain
    assert velu_eval(phi4, E.point(0, 0)).is_infinity
    assert velu_eval(phi4, E.infinity).is_infinity


def test_not_exact_order(phi4):
    E = phi4.domain
    with pytest.raises(NotExactOrder):
        velu_from_kernel(E, E.point(0, 0), 2)
    with pytest.raises(NotExactOrder):
        velu_from_kernel(E, E.point(0, 0), 8)


def test_curve_mismatch(phi4):
    other = curve_make(GF(7), 0, 0, 0, 1, 0)
    with pytest.raises(CurveMismatch):
        velu_eval(phi4, other.point(0, 0))


def test_complement_example(phi4):
    psi = complement_isogeny(phi4)
    assert psi.degree == 3
    assert psi.codomain == phi4.domain
    assert psi.kernel[0].is_infinity


def test_exactness_examples(phi4):
    rep = verify_exact_sequence(phi4, complement_isogeny(phi4))
    assert rep.ok and rep.kernel_size == 4 and rep.image_size == 3
    E = curve_make(GF(5), 0, 0, 0, 1, 0)
    phi = velu_from_kernel(E, E.point(0, 0), 2)
    rep = verify_exact_sequence(phi, complement_isogeny(phi))
    assert rep.ok and rep.kernel_size == 2 and rep.image_size == 2
    assert rep.to_json()["n1"] == rep.to_json()["n2"] == 4


def test_factorization_examples(phi4):
    psi = complement_isogeny(phi4)
    assert verify_frobenius_factorization(phi4, psi, 1)
    assert verify_frobenius_factorization(phi4, psi, 2)
    E = curve_make(GF(5), 0, 0, 0, 1, 0)
    phi = velu_from_kernel(E, E.point(0, 0), 2)
    assert verify_frobenius_factorization(phi, complement_isogeny(phi), 2)


def _instances():
    return [
        ("5", 11, 2), ("5", 31, 7), ("6", 13, 3), ("8", 17, 3), ("4", 23, 5), ("4'", 19, 4),
        ("3", 37, 1, 2), ("2", 41, 3, 5),
    ]


@pytest.mark.parametrize("case", _instances())
def test_codomain_matches_classical(case):
    row, p, *params = case
    inst = family_instance(row, GF(p), *params)
    phi = velu_from_kernel(inst.curve, inst.P, inst.m)
    a4, a6 = velu_codomain_classical(inst.curve, phi.kernel)
    assert (phi.codomain.a4, phi.codomain.a6) == (a4, a6)
    psi = complement_isogeny(phi)
    assert velu_codomain_classical(psi.domain, psi.kernel) == (psi.codomain.a4, psi.codomain.a6)


@pytest.mark.parametrize("case", _instances())
def test_images_on_codomain_and_homomorphism(case):
    row, p, *params = case
    inst = family_instance(row, GF(p), *params)
    phi = velu_from_kernel(inst.curve, inst.P, inst.m)
    pts = enumerate_points(inst.curve)
    imgs = phi.eval_many(pts)
    for R, S in zip(pts, imgs):
        assert S == velu_eval(phi, R)
        assert S.is_infinity or phi.codomain.contains_raw(*S.raw)
    for R, S in zip(pts[::5], pts[1::7]):
        assert phi(R + S) == phi(R) + phi(S)
    assert inst.m * len(set(imgs)) == len(pts)


def test_images_over_extension(phi4):
    E2 = phi4.domain.base_change(GF(7, 2))
    for R in enumerate_points(E2)[::9]:
        S = velu_eval(phi4, R)
        assert S.is_infinity or S.curve.contains_raw(*S.raw)


def test_subgroup_kernel():
    E = curve_make(GF(7), 1, -2, -2, 0, 0)
    P = E.point(0, 0)
    phi = velu_from_subgroup(E, [P, 2 * P, 3 * P])
    assert phi == velu_from_kernel(E, P, 4)


def test_json(phi4):
    data = phi4.to_json()
    assert data["degree"] == 4
    assert data["kernel_x"] == [[0], [2], [0]]
    assert data["codomain"]["a"][:3] == [[1], [5], [5]]


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_homomorphism_sampled(i, j):
    inst = family_instance("8", GF(101), 7)
    phi = velu_from_kernel(inst.curve, inst.P, 8)
    pts = enumerate_points(inst.curve)
    R, S = pts[i % len(pts)], pts[j % len(pts)]
    assert phi(R + S) == phi(R) + phi(S)
    assert phi(R - S) == phi(R) - phi(S)


def test_codomain_when_quadratic_samples_are_too_few():
    # (0, 0) has order 9 on E(1, 3) over F_5 and #E(F_25) = 27: every image over
    # F_25 shares one x-coordinate, so interpolation needs a cubic extension
    from isocharsum.families import kubert_curve

    E = kubert_curve(GF(5), 1, 3)
    assert len(enumerate_points(E.base_change(GF(5, 2)))) == 27
    phi = velu_from_kernel(E, E.point(0, 0), 9)
    assert (phi.codomain.a4, phi.codomain.a6) == velu_codomain_classical(E, phi.kernel)
    assert complement_isogeny(phi).codomain == E
