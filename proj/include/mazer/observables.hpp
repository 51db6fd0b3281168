#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "mazer/batch.hpp"
#include "mazer/dressed.hpp"
#include "mazer/scattering.hpp"

namespace mazer {

/// Monochromatic incident atom with momentum k (in units of kappa).
struct DeltaPacket {
    double k0 = 0.0;
};

/// Gaussian momentum distribution |A(k)|^2 around k0 with spread sigma_k.
struct GaussianPacket {
    double k0 = 0.0;
    double sigma_k = 0.0;
    int nodes = 64; // quadrature nodes over the +-6 sigma window
};

/// Tabulated |A(k)|^2 samples; integrated with trapezoidal weights.
struct TabulatedPacket {
    std::vector<std::pair<double, double>> samples; // (k, |A(k)|^2), k ascending
};

using WavePacketSpec = std::variant<DeltaPacket, GaussianPacket, TabulatedPacket>;

/// Discrete quadrature for a packet: (k, weight) pairs with ascending k and
/// weights normalized to sum to 1. Throws ValidationError if any node lands
/// at k <= 0 after clipping.
std::vector<std::pair<double, double>> packet_nodes(const WavePacketSpec& spec);

/// Average a scalar function of k over |A(k)|^2.
double wavepacket_average(const WavePacketSpec& spec,
                          const std::function<double(double)>& f);

/// Interference kernel K_n = r+ conj(r-) + t+ conj(t-) for one photon level.
/// Both amplitude sets must belong to the same (n, k) with opposite branches.
Complex kernel_K(const Amplitudes& a_plus, const Amplitudes& a_minus);

/// Population change carried by dressed level n:
/// Delta_n = (w_n^2 / 2) sin(theta_n) [Re(e^{i phi_n} K_n) - cos(phi_n)].
double delta_n(const DressedEntry& entry, Complex K);

/// sigma_aa(0) = (1 - w_-1^2 + sum w_n^2 sin(theta_n) cos(phi_n)) / 2.
double sigma_aa_initial(const DressedCoordinates& coords);

/// delta sigma_aa = sum of Delta_n over occupied levels. K_by_n[n] must
/// cover every occupied n.
double delta_sigma_aa(const DressedCoordinates& coords, std::span<const Complex> K_by_n);

/// Photon distribution change: delta P_n = Delta_n - Delta_{n-1} (n >= 1),
/// Delta_0 at n = 0. Levels above the occupied range contribute 0.
double delta_P(const DressedCoordinates& coords, std::span<const Complex> K_by_n, int n);

struct RT {
    double R = 0.0;
    double T = 0.0;
};

/// Reflection/transmission probabilities
///   R = sum w_n^2 (cos^2(theta_n/2) |r_n+|^2 + sin^2(theta_n/2) |r_n-|^2),
///   T = sum w_n^2 (cos^2(theta_n/2) |t_n+|^2 + sin^2(theta_n/2) |t_n-|^2) + w_-1^2.
RT reflection_transmission(const DressedCoordinates& coords, const AmplitudeTable& table,
                           double k);

/// Same sums with amplitudes obtained on demand; a branch whose selector is
/// exactly zero is never requested, so trapping states consult only their
/// own potential family.
RT reflection_transmission_lazy(
    const DressedCoordinates& coords, double k,
    const std::function<Amplitudes(const ScatterChannel&, double)>& provider);

/// R/T of a perfect trapping state. Only the branch named in `p` is solved.
RT trapping_RT(const TrappingParam& p, const ModeProfile& profile, double k,
               const SolverConfig& config = {}, double epsilon_tail = 1e-10);

/// Ultracold closed form for |gamma+>: R = 2|g|^2/(1+|g|^2),
/// T = (1-|g|^2)/(1+|g|^2); R + T = 1 exactly.
RT ultracold_RT_plus(double gamma_abs);

struct PerLevel {
    int n = 0;
    Complex K{};      // packet-weighted average for wave packets
    double Delta = 0.0;
    double delta_P = 0.0;
};

/// Everything the theory predicts for one configuration. per_n runs one
/// level past the highest occupied n so the emission-conservation row
/// delta sigma_aa + delta P_{n+1} = 0 is visible.
struct ObservablesReport {
    double sigma_aa_initial = 0.0;
    double delta_sigma_aa = 0.0;
    std::vector<PerLevel> per_n;
    double R = 0.0;
    double T = 0.0;
    std::optional<double> k;             // monochromatic
    std::optional<WavePacketSpec> packet; // wave packet
};

/// One-pass pipeline: dressed coordinates, amplitude table over the occupied
/// levels, then every observable. For wave packets the k-linear quantities
/// (K_n, |r|^2, |t|^2 sums) are averaged over the packet nodes in ascending-k
/// order.
ObservablesReport full_report(const PureStateSpec& state, const ModeProfile& profile,
                              const WavePacketSpec& momentum, const SolverConfig& config = {},
                              Exec exec = Exec::Parallel);

ObservablesReport full_report(const PureStateSpec& state, const ModeProfile& profile,
                              double k, const SolverConfig& config = {},
                              Exec exec = Exec::Parallel);

ObservablesReport full_report(const TrappingParam& p, const ModeProfile& profile,
                              double k, const SolverConfig& config = {},
                              double epsilon_tail = 1e-10, Exec exec = Exec::Parallel);

/// Shared implementation over prebuilt coordinates.
ObservablesReport report_from_coords(const DressedCoordinates& coords,
                                     const ModeProfile& profile,
                                     const WavePacketSpec& momentum,
                                     const SolverConfig& config, Exec exec);

} // namespace mazer
