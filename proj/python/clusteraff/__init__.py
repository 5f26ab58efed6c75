"""Exact computations for cluster algebras of acyclic affine type."""

import json

from ._clusteraff import (
    ClusterError,
    ThetaEngine,
    identity_names,
    mutate_matrix,
    mutate_matrix_word,
    symmetrizer,
)
from . import _clusteraff

__all__ = [
    "ClusterError",
    "ThetaEngine",
    "cluster_variable",
    "identity_names",
    "mutate_matrix",
    "mutate_matrix_word",
    "poly_terms",
    "scatter2",
    "symmetrizer",
    "theta",
    "theta2",
]


def poly_terms(poly):
    """Map a polynomial document to {exponent tuple: int coefficient}."""
    return {tuple(t["e"]): int(t["c"]) for t in poly["terms"]}


def cluster_variable(matrix, g, depth=8):
    return json.loads(_clusteraff.cluster_variable_json(matrix, g, depth))


def scatter2(matrix, order=8):
    return json.loads(_clusteraff.scatter2_json(matrix, order))


def theta2(matrix, lam, order=8):
    return json.loads(_clusteraff.theta2_json(matrix, lam, order))


def theta(engine, target):
    """Theta function of an engine for "delta", an integer multiple k of delta, or a weight label."""
    if target == "delta":
        return json.loads(engine.theta_delta_json())
    if isinstance(target, int):
        return json.loads(engine.theta_k_delta_json(target))
    return json.loads(engine.theta_label_json(list(target)))
