"""Numerical laboratory for the outer billiard around gamma(t) = e^{it} + eps e^{int}."""
from ._backend import available as available_backends
from ._backend import use as use_backend
from .billiard_map import (
    Orbit,
    TangencyPair,
    TangencySolverConfig,
    jacobian_det,
    lambda_mu,
    orbit,
    step,
    step_inverse,
    symplectic_p,
    tangency_params,
)
from .curve import CurveParams, Point2, bracket, curvature_bracket, derivative, evaluate, is_convex, offset_point
from .errors import (
    BilliardError,
    InteriorPoint,
    InvalidAnnulus,
    NoConvergence,
    NonConvexCurve,
    OnCurve,
    ParallelTangents,
)
from .generating_function import cap_area, first_derivs, second_derivs, twist_check
from .gutkin import GutkinRoot, identity_eps_coefficients, identity_residual, solve_gutkin, verify_invariant_curve
from .integrability import QuadratureResult, Verdict, integrability_integral, verdict

__version__ = "0.1.0"
