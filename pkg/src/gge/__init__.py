"""Generalized global entanglement of multipartite pure states.

The measure family averages the linear entropy of every n-site reduction of
a pure state, organized by the inter-site distances of the subset.  The
package bundles exact factories for the usual benchmark states, the
correlation-function route to the same purities for qubits, closed-form
results for the infinite transverse-field Ising chain, and a finite-chain
diagonalization oracle, all behind the ``gge`` command-line tool.
"""

from .states import (PureState, SitePermutation, StateFileError, basis_state,
                     make_named_state, permute_sites, read_state_file,
                     tensor_product, write_state_file)
from .rdm import DensityMatrix, linear_entropy, purity, reduce_state, \
    subset_linear_entropy, subset_purity
from .measures import (GapVector, MeasureReport, block_entanglement,
                       closed_form_measures, compute_report, gap_classes,
                       gap_entanglement, global_entanglement, mes_check_def1,
                       mes_check_def2, uniform_global_entanglement)
from .pauli import (CorrelationSet, g1_translation, g2_translation,
                    pair_purity, pauli_expectation, single_site_purity)
from .ising import (EdResult, Interval, IsingParams, IsingPoint,
                    QuadratureError, concurrence, corr_xx, corr_yy, corr_zz,
                    ed_ground_state, g1_ising, g2_ising, g_element,
                    ising_point, magnetization_x, magnetization_z,
                    pxz_interval, sweep, write_sweep_csv)

__version__ = "0.1.0"

__all__ = [
    "PureState", "SitePermutation", "StateFileError", "basis_state",
    "make_named_state", "permute_sites", "read_state_file", "tensor_product",
    "write_state_file",
    "DensityMatrix", "linear_entropy", "purity", "reduce_state",
    "subset_linear_entropy", "subset_purity",
    "GapVector", "MeasureReport", "block_entanglement",
    "closed_form_measures", "compute_report", "gap_classes",
    "gap_entanglement", "global_entanglement", "mes_check_def1",
    "mes_check_def2", "uniform_global_entanglement",
    "CorrelationSet", "g1_translation", "g2_translation", "pair_purity",
    "pauli_expectation", "single_site_purity",
    "EdResult", "Interval", "IsingParams", "IsingPoint", "QuadratureError",
    "concurrence", "corr_xx", "corr_yy", "corr_zz", "ed_ground_state",
    "g1_ising", "g2_ising", "g_element", "ising_point", "magnetization_x",
    "magnetization_z", "pxz_interval", "sweep", "write_sweep_csv",
]
