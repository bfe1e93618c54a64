import numpy as np
import pytest
from math import log

from CV_Teleport_Fidelity import special_functions as sf
from CV_Teleport_Fidelity.exceptions import DomainError


def test_jacobi_p():

    assert sf.jacobi_p(0, 3, 0, 7.2) == 1.0
    assert sf.jacobi_p(1, 0, 0, 5.0 / 3.0) == pytest.approx(5.0 / 3.0, rel=1e-15)
    assert sf.jacobi_p(1, 1, 0, 3.0) == pytest.approx(5.0, rel=1e-15)

    with pytest.raises(DomainError):
        sf.jacobi_p(-1, 0, 0, 1.0)


def test_jacobi_p_at_one():

    for m in range(12):
        for alpha in range(6):
            assert sf.jacobi_p(m, alpha, 0, 1.0) == sf.binomial(m + alpha, m)
            assert sf.jacobi_p(m, alpha, 1, 1.0) == sf.binomial(m + alpha, m)


def test_jacobi_p_legendre_recurrence():

    xs = [-10.0, -3.3, -1.0, -0.4, 0.0, 0.7, 1.0, 2.5, 10.0]
    for x in xs:
        values = [sf.jacobi_p(m, 0, 0, x) for m in range(16)]
        for m in range(1, 15):
            lhs = (m + 1) * values[m + 1]
            rhs = (2 * m + 1) * x * values[m] - m * values[m - 1]
            scale = max(abs(lhs), abs(rhs), 1.0)
            assert abs(lhs - rhs) <= 1e-12 * scale


def test_jacobi_p_negative_alpha():

    # P_1^{(-1,0)}(x) = (x - 1) / 2
    assert sf.jacobi_p(1, -1, 0, 3.0) == pytest.approx(1.0)

    for m in range(21):
        for x in [-1e4, -10.0, 1.0, 10.0, 1e4]:
            assert np.isfinite(sf.jacobi_p(m, 0, 1, x))


def test_laguerre_assoc():

    assert sf.laguerre_assoc(0, 2, 3.7) == 1.0
    assert sf.laguerre_assoc(1, 0, 2.0) == -1.0
    # L_2^{(1)}(x) = 3 - 3x + x^2/2
    assert sf.laguerre_assoc(2, 1, 1.0) == pytest.approx(0.5, rel=1e-15)
    assert sf.laguerre_assoc(2, 1, 2.0) == pytest.approx(-1.0, rel=1e-15)

    x = np.array([0.0, 0.5, 4.0])
    np.testing.assert_allclose(sf.laguerre_assoc(3, 0, x),
                               (-x**3 + 9 * x**2 - 18 * x + 6) / 6, rtol=1e-13, atol=1e-14)

    for n, k in [(-1, 0), (2, -3)]:
        with pytest.raises(DomainError):
            sf.laguerre_assoc(n, k, 1.0)


def test_laguerre_table():

    table = sf.laguerre_table(4, np.arange(3), 1.5)
    assert table.shape == (5, 3)
    for q in range(5):
        for d in range(3):
            assert table[q, d] == pytest.approx(sf.laguerre_assoc(q, d, 1.5))


def test_h_entropy():

    assert sf.h_entropy(0.5) == 0.0
    assert sf.h_entropy(0.5 - 1e-11) == 0.0
    assert sf.h_entropy(1.5) == pytest.approx(2 * log(2), rel=1e-14)
    assert sf.h_entropy(0.574456) == pytest.approx(0.270565, abs=2e-5)

    with pytest.raises(DomainError):
        sf.h_entropy(0.49)

    xs = np.linspace(0.5, 50.0, 400)
    values = sf.h_entropy(xs)
    assert np.all(np.diff(values) > 0)


def test_factorials():

    assert sf.log_factorial(0) == 0.0
    assert sf.log_factorial(10) == pytest.approx(log(3628800), rel=1e-14)
    assert sf.log_factorial(30) == pytest.approx(sum(log(k) for k in range(1, 31)), rel=1e-13)
    assert sf.factorial(20) == 2432902008176640000.0

    assert sf.binomial(5, 2) == 10
    assert sf.binomial(5, -1) == 0
    assert sf.binomial(5, 6) == 0
    assert sf.binomial(30, 15) == 155117520

    with pytest.raises(DomainError):
        sf.log_factorial(-1)
