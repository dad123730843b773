"""q-Fourier expansions on the q-linear grid.

Thin wrapper over the C++ extension; analysis reports come back as dicts.
"""

import json

from ._qfourier import (  # noqa: F401
    DomainError,
    Error,
    FourierSeries,
    GridFunction,
    NonConvergenceError,
    OverflowError,
    PreconditionError,
    QContext,
    ZeroTable,
    alpha_k,
    beta0,
    closed_form_series,
    compute_series,
    cq,
    cq_complex,
    delta_quotient,
    exp_q,
    find_zeros,
    jackson_bessel3,
    lemma_bound_B,
    q_integral_sym,
    q_pochhammer,
    q_pochhammer_inf,
    rk_bound,
    sq,
    sq_complex,
    sq_prime,
    step_index,
    stock_grid,
    sup_error_on_grid,
    theorem_a_bracket,
    theorem_d_cq,
    theorem_d_sq,
)
from . import _qfourier as _ext


def check_holder(f, M, lam, n0=1):
    return json.loads(_ext._check_holder(f, M, lam, n0))


def estimate_holder(f):
    return json.loads(_ext._estimate_holder(f))


def decay_diagnostics(f, zt, K, ctx):
    return json.loads(_ext._decay_diagnostics(f, zt, K, ctx))


def verify_orthogonality(zt, kmax, ctx):
    return json.loads(_ext._verify_orthogonality(zt, kmax, ctx))
