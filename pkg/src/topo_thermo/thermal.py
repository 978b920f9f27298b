"""Dense diagonalization and thermal ensembles in spectral form.

Temperatures are in hopping units with k_B = 1. The thermal state is the
canonical Gibbs mixture exp(-H/T)/Z over the single-particle spectrum;
Fermi occupations at fixed chemical potential back the determinant
polarization route.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import expit

SYMMETRY_TOL = 1e-12

# Ground-cluster detection scale for T = 0 and the underflow floor below
# which weights are flushed to exactly zero.
DEGENERACY_SCALE = 1e-9
WEIGHT_FLOOR = 1e-300


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with orthonormal eigenvectors (column n <-> E_n)."""

    energies: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.energies.shape[0]


@dataclass(frozen=True)
class GibbsEnsemble:
    """Normalized spectral weights lambda_n attached to a Spectrum."""

    temperature: float
    weights: np.ndarray = field(repr=False)
    spectrum: Spectrum = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class OccupationVector:
    """Fermi-Dirac occupations f_n aligned with a Spectrum."""

    occupations: np.ndarray = field(repr=False)
    chemical_potential: float
    temperature: float


class EnsembleDiagnostics(NamedTuple):
    purity: float
    entropy: float


def diagonalize(h: np.ndarray, symmetry_tol: float = SYMMETRY_TOL) -> Spectrum:
    """Full spectrum of a real symmetric matrix.

    Rejects non-square or non-symmetric input. Convergence failures inside
    LAPACK surface as numpy.linalg.LinAlgError rather than being truncated.
    Output is deterministic for identical input bits.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    asym = np.abs(h - h.T).max() if h.size else 0.0
    if asym > symmetry_tol:
        raise ValueError(f"matrix is not symmetric: max |H - H^T| = {asym:.3e}")
    energies, vectors = np.linalg.eigh(h)
    return Spectrum(energies=energies, vectors=vectors)


def gibbs_weights(spectrum: Spectrum, temperature: float) -> GibbsEnsemble:
    """Canonical weights exp(-(E_n - E_0)/T) / Z.

    The ground energy is subtracted before exponentiating for overflow
    safety; weights below 1e-300 are flushed to exactly zero. At T = 0 the
    weight is spread uniformly over the ground-degenerate cluster
    {n : E_n - E_0 <= 1e-9 * max(1, |E_0|)}.
    """
    if temperature < 0.0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    energies = spectrum.energies
    if temperature == 0.0:
        eps = DEGENERACY_SCALE * max(1.0, abs(energies[0]))
        cluster = (energies - energies[0]) <= eps
        weights = cluster.astype(float) / cluster.sum()
    else:
        weights = np.exp(-(energies - energies[0]) / temperature)
        weights[weights < WEIGHT_FLOOR] = 0.0
        weights = weights / weights.sum()
    return GibbsEnsemble(temperature=float(temperature), weights=weights, spectrum=spectrum)


def fermi_occupations(
    spectrum: Spectrum, temperature: float, chemical_potential: float = 0.0
) -> OccupationVector:
    """Fermi-Dirac occupations 1 / (1 + exp((E_n - mu)/T)).

    T = 0 degrades to the step function with occupation exactly 1/2 at
    E_n == mu.
    """
    if temperature < 0.0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    energies = spectrum.energies
    if temperature == 0.0:
        occupations = np.where(
            energies < chemical_potential,
            1.0,
            np.where(energies > chemical_potential, 0.0, 0.5),
        )
    else:
        occupations = expit(-(energies - chemical_potential) / temperature)
    return OccupationVector(
        occupations=occupations,
        chemical_potential=float(chemical_potential),
        temperature=float(temperature),
    )


def ensemble_diagnostics(ensemble: GibbsEnsemble) -> EnsembleDiagnostics:
    """Purity sum(lambda^2) and von Neumann entropy -sum(lambda ln lambda)."""
    weights = ensemble.weights
    positive = weights[weights > 0.0]
    return EnsembleDiagnostics(
        purity=float(np.sum(weights * weights)),
        entropy=float(-np.sum(positive * np.log(positive))),
    )
