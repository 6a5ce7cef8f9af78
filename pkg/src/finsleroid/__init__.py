"""Finsleroid metric functions, their Hamiltonians, the spherical map, and a
verification battery for the identities they satisfy."""

from .errors import ConeError, ConvergenceError, DomainError, FinsleroidError, NonFiniteEvaluation
from .hamiltonian import (
    CoLandmarks,
    b_hat,
    co_landmarks,
    contravariant_from_momenta,
    dual_normalization,
    hamiltonian_h,
    inverse_legendre,
    legendre_h,
    p_to_w,
    w_to_p,
)
from .pd_metric import (
    PdLandmarks,
    PdParams,
    b_form,
    covariant_momenta,
    event,
    indicatrix_point,
    j_factor,
    make_pd_params,
    metric_k,
    metric_tensor,
    pd_landmarks,
    profile_derivatives,
)
from .spherical_map import lambda_inv, pullback_metric, quasi_euclidean, tau, tau_jacobian
from .sr_metric import SrLandmarks, SrParams, f_sr, h_sr, hyperboloid_point, make_sr_params, sr_landmarks

__version__ = "0.1.0"
