import numpy as np
import pytest

from CV_Teleport_Fidelity.resource_state import SubtractionSpec, fock_coefficients
from CV_Teleport_Fidelity.analysis import gaussian_calculus as gc
from CV_Teleport_Fidelity.analysis.fock_oracle import chi12_numeric
from CV_Teleport_Fidelity.exceptions import DomainError

points = [(0.3 + 0.2j, -0.1 + 0.4j), (0.0j, 0.7 - 0.2j), (-0.5 + 0.5j, 0.25j), (1.1 + 0j, -0.9 + 0.3j)]


def test_tmsv_kernel():

    g = gc.tmsv_kernel(0.5)
    assert g.u == pytest.approx(-1.25 / 1.5)
    assert g.v == g.u
    assert g.w == pytest.approx(0.5 / 0.75)
    assert dict(g.terms) == {(0, 0, 0, 0): 1.0}

    with pytest.raises(DomainError):
        gc.tmsv_kernel(1.0)


def test_derivative():

    u, v, w = -0.7, -0.4, 0.3
    g = gc.GaussianPolynomial({(0, 0, 0, 0): 1.0}, (u, v, w))
    z = (0.3 + 0.1j, 0.2 - 0.5j, -0.4 + 0.2j, 0.6 + 0.3j)

    phi = u * z[0] * z[1] + v * z[2] * z[3] + w * (z[0] * z[2] + z[1] * z[3])
    value = g.derivative(gc.ALPHA).evaluate(z[0], z[2], z[1], z[3])
    assert value == pytest.approx((u * z[1] + w * z[2]) * np.exp(phi), rel=1e-13)

    value = g.derivative(gc.ALPHA_C).derivative(gc.ALPHA).evaluate(z[0], z[2], z[1], z[3])
    expected = (u + (u * z[0] + w * z[3]) * (u * z[1] + w * z[2])) * np.exp(phi)
    assert value == pytest.approx(expected, rel=1e-13)


def test_rebased():

    g = gc.GaussianPolynomial({(1, 0, 0, 0): 2.0, (0, 1, 1, 0): -0.5, (0, 0, 0, 2): 1.0},
                              (-0.6, -0.6, 0.2))
    basis = gc.kernel_matrix(0.4, -0.3, 0.2) + 0.1 * np.eye(4)
    h = g.rebased(basis)
    for alpha, beta in points:
        assert h.evaluate(alpha, beta) == pytest.approx(g.evaluate(alpha, beta), rel=1e-12)


def test_apply_lambda_ops():

    g = gc.tmsv_kernel(0.4)
    assert gc.apply_lambda_ops(g, 0, 0) is g

    with pytest.raises(DomainError):
        gc.apply_lambda_ops(g, -1, 0)

    for m, n in [(1, 0), (1, 1), (2, 3)]:
        poly = gc.lambda_polynomial(SubtractionSpec(m, n, 0.4))
        assert poly.is_conjugation_symmetric()
        assert poly.degree() <= 2 * (m + n)


def test_chi12_against_fock():

    for m, n in [(0, 0), (1, 0), (1, 1), (2, 1)]:
        spec = SubtractionSpec(m, n, 0.5)
        state = fock_coefficients(spec, tail_eps=1e-16)

        assert gc.chi12(spec, 0j, 0j) == pytest.approx(1.0, rel=1e-12)

        for alpha, beta in points:
            analytic = gc.chi12(spec, alpha, beta)
            numeric = chi12_numeric(state, alpha, beta)
            assert abs(analytic - numeric) < 1e-10


def test_coherent_input_product():

    assert gc._check_phase_cancellation()

    for alpha in [0.2 + 0.9j, -1.5 + 0j]:
        for mu in [0j, 2.0 - 1.0j]:
            assert gc.coherent_input_product(alpha, mu) == pytest.approx(np.exp(-abs(alpha)**2))


def test_gaussian_moments():

    moments = gc.GaussianMoments(0.0, 1.0, 0.0)
    for a in range(6):
        for b in range(6):
            expected = float(np.prod(np.arange(1, a + 1))) if a == b else 0.0
            assert moments.moment(a, b) == pytest.approx(expected)

    moments = gc.GaussianMoments(0.3, 1.0, 0.3)
    # E[alpha^2] and E[alpha^4] = 3 E[alpha^2]^2
    assert moments.moment(2, 0) == pytest.approx(0.3)
    assert moments.moment(4, 0) == pytest.approx(3 * 0.09)
    assert moments.moment(1, 0) == 0.0


def test_effective_quadratic_form():

    for m, n in [(0, 0), (1, 2), (3, 3)]:
        poly = gc.lambda_polynomial(SubtractionSpec(m, n, 0.7))
        q_matrix = gc.effective_quadratic_form(poly)
        assert np.all(np.linalg.eigvalsh(q_matrix.real) > 0)


def test_fidelity_general():

    for lam in [0.0, 0.05, 0.3, 0.5, 0.95]:
        assert gc.fidelity_engine(0, 0, lam) == pytest.approx((1 + lam) / 2, abs=1e-12)

    assert gc.fidelity_engine(1, 1, 0.5) == pytest.approx(0.84375, abs=1e-12)
    assert gc.fidelity_engine(0, 1, 0.5) == pytest.approx(0.5625, abs=1e-12)
    assert gc.fidelity_engine(1, 0, 0.5) == pytest.approx(0.5625, abs=1e-12)
    assert gc.fidelity_engine(0, 2, 0.5) == pytest.approx(0.421875, abs=1e-12)


def test_fidelity_general_large_orders():

    for m, n in [(6, 6), (6, 7)]:
        value = gc.fidelity_engine(m, n, 0.6)
        assert 0.0 < value <= 1.0


def _lifted(poly, z):
    # e^{(|alpha|^2 + |beta|^2)/2} times the polynomial x Gaussian
    return np.exp((z[0] * z[1] + z[2] * z[3]) / 2.0) * poly.evaluate(z[0], z[2], z[1], z[3])


def _lambda_difference(poly, z, i, j, h=1e-4):
    # e^{-s/2} (-d/dz_i)(d/dz_j) e^{s/2} poly by central differences
    total = 0j
    for si, sj, sign in [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]:
        shifted = list(z)
        shifted[i] += si * h
        shifted[j] += sj * h
        total += sign * _lifted(poly, shifted)
    return -total / (4.0 * h**2) * np.exp(-(z[0] * z[1] + z[2] * z[3]) / 2.0)


def test_apply_lambda_ops_finite_differences():

    g = gc.tmsv_kernel(0.5)
    z = (0.3 + 0.1j, 0.3 - 0.1j, -0.2 + 0.25j, -0.2 - 0.25j)

    for m in range(4):
        for n in range(4 - m):
            poly = gc.apply_lambda_ops(g, m, n)
            scale = abs(poly.evaluate(z[0], z[2], z[1], z[3]))

            step_a = gc.apply_lambda_ops(g, m + 1, n).evaluate(z[0], z[2], z[1], z[3])
            assert abs(_lambda_difference(poly, z, 0, 1) - step_a) <= \
                1e-6 * max(abs(step_a), scale)

            step_b = gc.apply_lambda_ops(g, m, n + 1).evaluate(z[0], z[2], z[1], z[3])
            assert abs(_lambda_difference(poly, z, 2, 3) - step_b) <= \
                1e-6 * max(abs(step_b), scale)


def test_chi12_hermiticity():

    for m, n in [(0, 1), (1, 1), (2, 3), (4, 1)]:
        spec = SubtractionSpec(m, n, 0.6)
        assert gc.chi12(spec, 0j, 0j) == pytest.approx(1.0, abs=1e-12)
        for alpha, beta in points:
            value = gc.chi12(spec, alpha, beta)
            assert gc.chi12(spec, -alpha, -beta) == pytest.approx(np.conj(value), abs=1e-12)
