#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "mazer/errors.hpp"
#include "mazer/mode_profile.hpp"

namespace mazer {

using Complex = std::complex<double>;

/// Dressed-channel label. Channel (n, +) sees the barrier sqrt(n+1)*u(z),
/// channel (n, -) the corresponding well (dimensionless units, k in units of
/// kappa, z in units of 1/kappa).
enum class Branch { Plus, Minus };

struct ScatterChannel {
    int n = 0;
    Branch branch = Branch::Plus;

    bool operator==(const ScatterChannel&) const = default;
};

std::string to_string(const ScatterChannel& ch);

/// kappa_n / kappa = (n+1)^(1/4).
double kappa_n_ratio(int n);

/// Signed channel potential prefactor: +-sqrt(n+1), so that the local wave
/// number obeys q^2 = k^2 - strength * u(z).
double channel_strength(const ScatterChannel& ch);

/// Complex reflection/transmission pair for one channel at one wave number,
/// in the convention r e^{-ikz} (z < 0), t e^{ik(z-L)} (z > L): a vanishing
/// potential gives r = 0, t = e^{ikL}.
struct Amplitudes {
    Complex r{};
    Complex t{};
    double k = 0.0; // k / kappa
    ScatterChannel channel{};
    /// Richardson step-doubling bound on |r| and |t| (0 for analytic paths).
    double err_estimate = 0.0;
};

/// | |r|^2 + |t|^2 - 1 |, the flux conservation defect.
double unitarity_defect(const Amplitudes& a);

struct SolverConfig {
    int segments = 4096;          // piecewise-constant slices over the support
    double support_epsilon = 1e-10;
    double unitarity_tol = 1e-6;

    void validate() const;
};

/// Closed-form amplitudes for a constant potential of strength v on [0, L]
/// (barrier for v > 0, well for v < 0, free propagation for v = 0). Continuous
/// across the branch point k^2 = v, evanescent-safe for arbitrarily thick
/// barriers.
Amplitudes square_step_amplitudes(double k, double length, double v);

/// Analytic mesa-mode amplitudes for a dressed channel.
Amplitudes scatter_mesa_analytic(const ScatterChannel& ch, double k, double kappa_L);

/// Transfer-matrix solve over `config.segments` piecewise-constant slices of
/// the profile's effective support, with per-slice exponential scaling in
/// evanescent regions. The returned amplitudes come from the step-doubled
/// (2 x segments) pass; err_estimate is the difference against the coarse
/// pass. Throws SolverError if the flux defect exceeds config.unitarity_tol.
Amplitudes scatter_transfer_matrix(const ModeProfile& profile, const ScatterChannel& ch,
                                   double k, const SolverConfig& config = {});

/// Dispatch: analytic path for Mesa, transfer matrix otherwise.
Amplitudes scatter(const ModeProfile& profile, const ScatterChannel& ch, double k,
                   const SolverConfig& config = {});

namespace detail {

/// Profile samples shared by every channel and wave number: slice midpoint
/// values of u on the effective support, at `segments` and 2 x `segments`
/// resolution.
struct SlicedProfile {
    double z0 = 0.0;
    double z1 = 0.0;
    double paper_length = 0.0; // kappa L, for the t phase reference
    std::vector<double> u_coarse;
    std::vector<double> u_fine;
};

SlicedProfile slice_profile(const ModeProfile& profile, const SolverConfig& config);

Amplitudes scatter_sliced(const SlicedProfile& sliced, const ScatterChannel& ch, double k,
                          const SolverConfig& config);

} // namespace detail

} // namespace mazer
