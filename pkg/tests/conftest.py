import numpy as np
import pytest
from hypothesis import strategies as st

from ecokit import ParametricHubModel, TransactionTerms

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for text in ACCEPTANCE_LINES:
            terminalreporter.write_line(text)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_terms(rng, size, feasible=None, v_p_zero=False):
    """Uniform [0, 100] terms; ``feasible`` conditions on the 2-actor test by rejection."""
    out = []
    while len(out) < size:
        v_p, v_c, t_p, t_c = rng.uniform(0, 100, 4)
        if v_p_zero:
            v_p = 0.0
        terms = TransactionTerms(float(v_p), float(v_c), float(t_p), float(t_c))
        if feasible is None or (terms.v_c + terms.v_p > terms.t_c + terms.t_p) == feasible:
            out.append(terms)
    return out


values = st.floats(min_value=0, max_value=100, allow_nan=False, allow_infinity=False)


@st.composite
def feasible_terms(draw):
    v_p, v_c, t_p, t_c = (draw(values) for _ in range(4))
    slack = draw(st.floats(min_value=1e-3, max_value=100))
    # lift v_c until the pair clears the feasibility line with some slack
    need = (t_c + t_p) - (v_c + v_p) + slack
    if need > 0:
        v_c += need
    return TransactionTerms(v_p, v_c, t_p, t_c)


def worked_model(analytic=True) -> ParametricHubModel:
    """V^C = 20n - 0.5n^2, T^C = 2n, n(X) = 2X, V^P = 0, T^P = 1."""
    kwargs = {}
    if analytic:
        kwargs = dict(dn_dx=lambda x: 2.0 + 0.0 * x, dvc_dn=lambda n: 20.0 - n, dtc_dn=lambda n: 2.0 + 0.0 * n)
    return ParametricHubModel(
        n_of_x=lambda x: 2.0 * x,
        v_c_of_n=lambda n: 20.0 * n - 0.5 * n * n,
        t_c_of_n=lambda n: 2.0 * n,
        v_p=0.0,
        t_p=1.0,
        **kwargs,
    )


def quadratic_hub(a, q, c, k, b, analytic=True) -> ParametricHubModel:
    """V^C = a n - q n^2, T^C = c n, n(X) = k + b X."""
    kwargs = {}
    if analytic:
        kwargs = dict(
            dn_dx=lambda x: b + 0.0 * x,
            dvc_dn=lambda n: a - 2 * q * n,
            dtc_dn=lambda n: c + 0.0 * n,
        )
    return ParametricHubModel(
        n_of_x=lambda x: k + b * x,
        v_c_of_n=lambda n: a * n - q * n * n,
        t_c_of_n=lambda n: c * n,
        **kwargs,
    )
