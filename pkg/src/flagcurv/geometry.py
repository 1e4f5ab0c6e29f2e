"""Bundles one problem setup: algebra, reductive split, and metric data."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import LieAlgebraSpec, ReductivePair
from .errors import InputError
from .metrics import (
    BiInvariantForm,
    InnerProduct,
    MetricEndomorphism,
    inner_from_phi,
)


@dataclass(frozen=True)
class HomogeneousGeometry:
    """A homogeneous space G/H at the Lie-algebra level.

    The inner product on m is derived from (g0, phi) at construction.
    """

    algebra: LieAlgebraSpec
    pair: ReductivePair
    g0: BiInvariantForm
    phi: MetricEndomorphism
    inner: InnerProduct = field(init=False)

    def __post_init__(self):
        if self.pair.dim != self.algebra.dim:
            raise InputError("reductive pair dimension does not match algebra")
        if self.g0.dim != self.algebra.dim:
            raise InputError("g0 dimension does not match algebra")
        if self.phi.h_dim != self.pair.h_dim:
            raise InputError("phi h_dim does not match the reductive pair")
        object.__setattr__(self, "inner", inner_from_phi(self.g0, self.phi))

    @property
    def m_dim(self) -> int:
        return self.pair.m_dim


def make_geometry(
    algebra: LieAlgebraSpec,
    h_dim: int = 0,
    g0: np.ndarray | None = None,
    phi: np.ndarray | None = None,
) -> HomogeneousGeometry:
    """Convenience constructor with identity defaults for g0 and phi."""
    n = algebra.dim
    pair = ReductivePair(dim=n, h_dim=h_dim)
    form = BiInvariantForm(np.eye(n) if g0 is None else np.asarray(g0, dtype=float))
    endo = MetricEndomorphism(
        phi=np.eye(pair.m_dim) if phi is None else np.asarray(phi, dtype=float),
        g0=form,
        h_dim=h_dim,
    )
    return HomogeneousGeometry(algebra=algebra, pair=pair, g0=form, phi=endo)
