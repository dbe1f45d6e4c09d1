"""Displaced number states |n, alpha> of the quantum harmonic oscillator.

Closed-form wavefunctions, photon/field statistics, beamsplitter output
decompositions, and classically driven generation, backed by an independent
truncated Fock-space oracle and runtime verify suites.  The `gcs` console
script exposes everything as deterministic CSV/JSON emitters.
"""

__version__ = "0.1.0"

from .beamsplitter import DEFAULT_SPLITTER, BeamsplitterSpec, OutputTerm, split_gcs
from .drive import (
    DrivePulse,
    QuadratureError,
    drive_number_state,
    gaussian_pulse,
    rectangular_pulse,
    sine_burst_pulse,
    table_pulse,
    time_development,
)
from .fock import FockVector, TruncationError, displacement_matrix, gcs_vector
from .states import (
    GcsLabel,
    PhotonDistribution,
    SpatialGrid,
    density_grid,
    g2,
    mean_photon,
    number_expansion,
    overlap,
    photon_distribution,
    wavefunction,
)

__all__ = [
    "__version__",
    "BeamsplitterSpec",
    "DEFAULT_SPLITTER",
    "DrivePulse",
    "FockVector",
    "GcsLabel",
    "OutputTerm",
    "PhotonDistribution",
    "QuadratureError",
    "SpatialGrid",
    "TruncationError",
    "density_grid",
    "displacement_matrix",
    "drive_number_state",
    "g2",
    "gaussian_pulse",
    "gcs_vector",
    "mean_photon",
    "number_expansion",
    "overlap",
    "photon_distribution",
    "rectangular_pulse",
    "sine_burst_pulse",
    "split_gcs",
    "table_pulse",
    "time_development",
    "wavefunction",
]
