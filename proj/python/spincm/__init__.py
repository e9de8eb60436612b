"""Spin Calogero-Moser systems as symplectic reductions of T*Herm(n)."""

from ._core import (
    Engine,
    OrbitSpec,
    PhasePoint,
    ReducedPoint,
    RMatrixFamily,
    SpinSign,
    Trajectory,
    casimirs,
    cdybe_residual,
    check_connection_identities,
    connection_dual,
    connection_form,
    conserved_drifts,
    embed_reduced,
    gauge_fix_spin,
    kks_form,
    lax_matrix,
    momentum_map,
    orbit_spectrum,
    project_point,
    project_to_ann_m,
    rational_r_dense,
    reduced_hamiltonian,
    simulate,
    trig_r_dense,
)

__all__ = [
    "Engine",
    "OrbitSpec",
    "PhasePoint",
    "ReducedPoint",
    "RMatrixFamily",
    "SpinSign",
    "Trajectory",
    "casimirs",
    "cdybe_residual",
    "check_connection_identities",
    "connection_dual",
    "connection_form",
    "conserved_drifts",
    "embed_reduced",
    "gauge_fix_spin",
    "kks_form",
    "lax_matrix",
    "momentum_map",
    "orbit_spectrum",
    "project_point",
    "project_to_ann_m",
    "rational_r_dense",
    "reduced_hamiltonian",
    "simulate",
    "trig_r_dense",
]
