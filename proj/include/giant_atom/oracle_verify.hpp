#pragma once

// Independent ground truths: a dense solve of the wavefunction matching
// conditions for discrete couplings, continuum amplitudes with their phases,
// and a discretization convergence driver.

#include "giant_atom/continuum_scatter.hpp"
#include "giant_atom/core_model.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace giant_atom {

class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

using cdouble = std::complex<double>;

struct ScatterSolution {
    cdouble t{1.0, 0.0};
    cdouble r{0.0, 0.0};
    cdouble f_a{0.0, 0.0};  ///< in units of sqrt(v_g)
    /// Right/left-moving envelopes on the N - 1 interior segments, left to right.
    std::vector<cdouble> t_segments;
    std::vector<cdouble> r_segments;
    /// Phase of r relative to the real line-shape numerator (continuum only).
    double alpha = 0.0;
    double condition_estimate = 1.0;
    std::vector<std::string> warnings;
};

inline constexpr double kConditionWarnAbove = 1e10;

/// Dense LU solve of the 2N + 1 jump and closure conditions. The field at a
/// coupling point is the mean of its one-sided limits.
ScatterSolution solve_matching(const SystemParams& params, const DiscreteCoupling& coupling, Detuning delta);

/// t, r, f_a of a continuous coupling from the transform int v e^{i s phi}
/// and the shift integral, both by quadrature.
ScatterSolution amplitude_phase_continuum(const SystemParams& params, const CouplingDistribution& dist,
                                          Detuning delta, const ContinuumQuadratureOptions& opts = {});

struct ConvergenceRow {
    int m_points = 0;
    double max_abs_dR = 0.0;
    double local_order = 0.0;  ///< log(e_prev / e) / log(M / M_prev); 0 on the first row
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double observed_order = 0.0;  ///< least-squares slope of -log e against log M
    bool monotone = false;
};

/// Discretized spectra (cell masses, M points) against the quadrature
/// spectrum on a detuning grid.
ConvergenceStudy convergence_study(const SystemParams& params, const CouplingDistribution& dist,
                                   const std::vector<int>& m_schedule, const std::vector<double>& grid,
                                   const ContinuumQuadratureOptions& opts = {});

}  // namespace giant_atom
