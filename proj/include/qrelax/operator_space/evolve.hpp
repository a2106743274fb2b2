#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qrelax/operator_space/density_matrix.hpp"
#include "qrelax/operator_space/master_equation.hpp"
#include "qrelax/operator_space/operators.hpp"

namespace qrelax::opspace {

/// −Σ λ ln λ over eigenvalues above `floor` (units of k_B).
double von_neumann_entropy(const DensityMatrix& rho, double floor = kDefaultLogFloor);

/// ½ Σ |eig(ρ1 − ρ2)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct TrajectorySample {
    double t;
    double trace;
    double min_eigenvalue;
    double energy;
    double entropy;
    double distance_to_gibbs;
};

struct EvolveOptions {
    std::size_t stride = 10;          // record every `stride` steps (plus t = 0 and the end)
    double trace_tolerance = 1e-6;    // |tr ρ − 1| above this aborts
    double positivity_tolerance = 1e-6;
    /// Eigenvalue floor for ln ρ in NL7. Levels clamped at the floor lose
    /// their entropic restoring force, so long runs on a basis whose top
    /// levels sit below 1e-14 need a lower floor (and a smaller step, see
    /// stiff_step_limit).
    double log_floor = kDefaultLogFloor;
    /// Reference state for distance_to_gibbs; Gibbs at the bath temperature
    /// (ground state at T = 0) when left empty.
    std::optional<DensityMatrix> reference;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    DensityMatrix final_state;
};

/// Fixed-step RK4 integration of one master-equation kernel. Kernels are
/// evaluated at the bath temperature of `ops.params` (LIN8 uses β = 1/k_BT).
///
/// Throws ArgumentError when dt (b/m + ω0) ≥ 0.1 and InstabilityError
/// (naming the step) when the trace drifts by more than 1e-6 or an
/// eigenvalue drops below −1e-6.
Trajectory evolve(const DensityMatrix& rho0, const OperatorSet& ops, Kernel kernel, double t_end, double dt,
                  const EvolveOptions& options = {});

/// CSV with header t,trace,min_eigenvalue,energy,entropy,trace_distance_to_gibbs.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace qrelax::opspace
