"""Every numerical threshold used by the verification battery, in one place."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # identities evaluated in closed form
    closed_form: float = 1e-12
    # composed maps: roundtrips, sphere identity, determinants
    composed: float = 1e-10
    # finite-difference comparisons of tensors and traced profiles
    finite_difference: float = 1e-6
    # Richardson-extrapolated first/second derivatives of scalar functions
    derivative_fd: float = 1e-8
    # gradient duality H(grad 1/2 K^2) = K
    duality: float = 1e-8
    sr_duality: float = 1e-6
    # g = 0 collapse onto the Euclidean / Minkowski norms (relative)
    reduction: float = 1e-14
    sr_params: float = 1e-14
    # smallest admissible eigenvalue of a metric tensor at unit norm
    min_eigenvalue: float = 1e-8
    asymmetry_witness: float = 1e-6
    profile_unit: float = 1e-10
    mesh_vertex: float = 1e-8
    mesh_extent: float = 1e-6
    # resampling radii around singular sets
    pole_exclusion: float = 1e-3
    cone_exclusion: float = 1e-3
    # angular distance from the T-axis below which finite-difference Hessians
    # are not trusted (K is only C^2 across the axis)
    axis_exclusion: float = 0.05
    # base step of the second-derivative oracles (two Richardson levels)
    fd_step_second: float = 1e-2


DEFAULT = Tolerances()
