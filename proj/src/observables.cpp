#include "mazer/observables.hpp"

#include <algorithm>
#include <cmath>

#include "mazer/quadrature.hpp"

namespace mazer {

namespace {

void check_kernel_inputs(const Amplitudes& a_plus, const Amplitudes& a_minus) {
    if (a_plus.channel.branch != Branch::Plus || a_minus.channel.branch != Branch::Minus)
        throw ValidationError("kernel_K needs a (+, -) amplitude pair, got "
                              + to_string(a_plus.channel) + " and " + to_string(a_minus.channel));
    if (a_plus.channel.n != a_minus.channel.n)
        throw ValidationError("kernel_K photon index mismatch: " + to_string(a_plus.channel)
                              + " vs " + to_string(a_minus.channel));
    if (a_plus.k != a_minus.k)
        throw ValidationError("kernel_K wave number mismatch: k=" + std::to_string(a_plus.k)
                              + " vs k=" + std::to_string(a_minus.k));
}

Complex kernel_at(const DressedCoordinates& coords, std::span<const Complex> K_by_n, int n) {
    if (n < static_cast<int>(K_by_n.size()))
        return K_by_n[static_cast<std::size_t>(n)];
    const double w = n < static_cast<int>(coords.entries.size())
                         ? coords.entries[static_cast<std::size_t>(n)].w
                         : 0.0;
    if (w > 1e-14)
        throw ValidationError("kernel map does not cover occupied level n="
                              + std::to_string(n));
    return Complex(0.0, 0.0);
}

double delta_at(const DressedCoordinates& coords, std::span<const Complex> K_by_n, int n) {
    if (n < 0 || n >= static_cast<int>(coords.entries.size()))
        return 0.0;
    return delta_n(coords.entries[static_cast<std::size_t>(n)],
                   kernel_at(coords, K_by_n, n));
}

} // namespace

std::vector<std::pair<double, double>> packet_nodes(const WavePacketSpec& spec) {
    std::vector<std::pair<double, double>> nodes;

    if (const auto* d = std::get_if<DeltaPacket>(&spec)) {
        if (!(d->k0 > 0.0))
            throw ValidationError("packet k0 must be positive, got " + std::to_string(d->k0));
        nodes.emplace_back(d->k0, 1.0);
        return nodes;
    }

    if (const auto* g = std::get_if<GaussianPacket>(&spec)) {
        if (!(g->k0 > 0.0) || !(g->sigma_k > 0.0))
            throw ValidationError("Gaussian packet needs k0 > 0 and sigma_k > 0");
        if (g->nodes < 2)
            throw ValidationError("Gaussian packet needs at least 2 quadrature nodes");
        const double lo = std::max(0.0, g->k0 - 6.0 * g->sigma_k);
        const double hi = g->k0 + 6.0 * g->sigma_k;
        if (!(hi > lo))
            throw ValidationError("Gaussian packet window is empty after clipping to k > 0");
        const GaussRule& rule = gauss_legendre(g->nodes);
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double total = 0.0;
        for (int i = 0; i < g->nodes; ++i) {
            const double k = mid + half * rule.nodes[static_cast<std::size_t>(i)];
            if (!(k > 0.0))
                throw ValidationError("quadrature node at k <= 0 after clipping");
            const double u = (k - g->k0) / g->sigma_k;
            const double weight =
                rule.weights[static_cast<std::size_t>(i)] * std::exp(-0.5 * u * u);
            nodes.emplace_back(k, weight);
            total += weight;
        }
        for (auto& [k, w] : nodes)
            w /= total;
        return nodes;
    }

    const auto& t = std::get<TabulatedPacket>(spec);
    if (t.samples.empty())
        throw ValidationError("tabulated packet must contain at least one sample");
    double total = 0.0;
    const std::size_t m = t.samples.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto [k, a2] = t.samples[i];
        if (!(k > 0.0))
            throw ValidationError("tabulated packet k values must be positive, got "
                                  + std::to_string(k));
        if (i > 0 && !(k > t.samples[i - 1].first))
            throw ValidationError("tabulated packet k values must be strictly ascending");
        if (a2 < 0.0)
            throw ValidationError("tabulated packet weights must be nonnegative");
        double dk = 1.0; // single sample degenerates to a delta
        if (m > 1) {
            const double left = i > 0 ? t.samples[i].first - t.samples[i - 1].first : 0.0;
            const double right = i + 1 < m ? t.samples[i + 1].first - t.samples[i].first : 0.0;
            dk = 0.5 * (left + right);
        }
        nodes.emplace_back(k, a2 * dk);
        total += a2 * dk;
    }
    if (!(total > 0.0))
        throw ValidationError("tabulated packet has zero total weight");
    for (auto& [k, w] : nodes)
        w /= total;
    return nodes;
}

double wavepacket_average(const WavePacketSpec& spec,
                          const std::function<double(double)>& f) {
    double sum = 0.0;
    for (const auto& [k, w] : packet_nodes(spec))
        sum += w * f(k);
    return sum;
}

Complex kernel_K(const Amplitudes& a_plus, const Amplitudes& a_minus) {
    check_kernel_inputs(a_plus, a_minus);
    return a_plus.r * std::conj(a_minus.r) + a_plus.t * std::conj(a_minus.t);
}

double delta_n(const DressedEntry& entry, Complex K) {
    const double s = sin_theta(entry.theta);
    if (s == 0.0)
        return 0.0;
    const double bracket =
        (std::cos(entry.phi) * K.real() - std::sin(entry.phi) * K.imag()) - std::cos(entry.phi);
    return 0.5 * entry.w * entry.w * s * bracket;
}

double sigma_aa_initial(const DressedCoordinates& coords) {
    double sum = 1.0 - coords.w_minus1 * coords.w_minus1;
    for (const DressedEntry& e : coords.entries)
        sum += e.w * e.w * sin_theta(e.theta) * std::cos(e.phi);
    return 0.5 * sum;
}

double delta_sigma_aa(const DressedCoordinates& coords, std::span<const Complex> K_by_n) {
    double sum = 0.0;
    const int top = coords.highest_occupied();
    for (int n = 0; n <= top; ++n)
        sum += delta_at(coords, K_by_n, n);
    return sum;
}

double delta_P(const DressedCoordinates& coords, std::span<const Complex> K_by_n, int n) {
    if (n < 0)
        throw ValidationError("photon level must be >= 0, got " + std::to_string(n));
    if (n == 0)
        return delta_at(coords, K_by_n, 0);
    return delta_at(coords, K_by_n, n) - delta_at(coords, K_by_n, n - 1);
}

RT reflection_transmission_lazy(
    const DressedCoordinates& coords, double k,
    const std::function<Amplitudes(const ScatterChannel&, double)>& provider) {
    RT rt;
    const int top = coords.highest_occupied();
    for (int n = 0; n <= top; ++n) {
        const DressedEntry& e = coords.entries[static_cast<std::size_t>(n)];
        if (e.w == 0.0)
            continue;
        const double cw = half_angle_cos(e.theta);
        const double sw = half_angle_sin(e.theta);
        const double w2 = e.w * e.w;
        if (cw != 0.0) {
            const Amplitudes a = provider({n, Branch::Plus}, k);
            rt.R += w2 * cw * cw * std::norm(a.r);
            rt.T += w2 * cw * cw * std::norm(a.t);
        }
        if (sw != 0.0) {
            const Amplitudes a = provider({n, Branch::Minus}, k);
            rt.R += w2 * sw * sw * std::norm(a.r);
            rt.T += w2 * sw * sw * std::norm(a.t);
        }
    }
    rt.T += coords.w_minus1 * coords.w_minus1;
    return rt;
}

RT reflection_transmission(const DressedCoordinates& coords, const AmplitudeTable& table,
                           double k) {
    return reflection_transmission_lazy(
        coords, k,
        [&table](const ScatterChannel& ch, double kk) { return table.at(ch.n, ch.branch, kk); });
}

RT trapping_RT(const TrappingParam& p, const ModeProfile& profile, double k,
               const SolverConfig& config, double epsilon_tail) {
    const DressedCoordinates coords = trapping_state(p, epsilon_tail);
    // theta is exactly 0 or pi in every entry; the lazy sums therefore solve
    // only the branch named in p.
    detail::SlicedProfile sliced;
    const bool is_mesa = profile.kind() == ModeProfile::Kind::Mesa;
    if (!is_mesa)
        sliced = detail::slice_profile(profile, config);
    return reflection_transmission_lazy(
        coords, k, [&](const ScatterChannel& ch, double kk) {
            return is_mesa ? scatter_mesa_analytic(ch, kk, profile.length())
                           : detail::scatter_sliced(sliced, ch, kk, config);
        });
}

RT ultracold_RT_plus(double gamma_abs) {
    if (!(gamma_abs >= 0.0 && gamma_abs < 1.0))
        throw ValidationError("|gamma| must lie in [0, 1), got " + std::to_string(gamma_abs));
    const double g2 = gamma_abs * gamma_abs;
    RT rt;
    rt.R = 2.0 * g2 / (1.0 + g2);
    rt.T = (1.0 - g2) / (1.0 + g2);
    return rt;
}

ObservablesReport report_from_coords(const DressedCoordinates& coords,
                                     const ModeProfile& profile,
                                     const WavePacketSpec& momentum,
                                     const SolverConfig& config, Exec exec) {
    const auto nodes = packet_nodes(momentum);
    const int top = coords.highest_occupied();

    // Packet-average the k-dependent linear ingredients: K_n enters Delta_n
    // linearly and |r|^2, |t|^2 enter R/T linearly, so averaging them first
    // equals averaging the observables themselves. Accumulation runs in
    // ascending-k order for reproducibility.
    std::vector<Complex> K_avg(static_cast<std::size_t>(top + 1), Complex(0.0, 0.0));
    RT rt_sum;
    if (top >= 0) {
        std::vector<double> ks;
        ks.reserve(nodes.size());
        for (const auto& [k, weight] : nodes)
            ks.push_back(k);
        const AmplitudeTable table = [&] {
            try {
                return amplitude_table(profile, top, ks, config, exec);
            } catch (const SolverError& e) {
                throw SolverError(std::string("report amplitude stage: ") + e.what(),
                                  e.defect());
            }
        }();
        for (const auto& [k, weight] : nodes) {
            for (int n = 0; n <= top; ++n)
                K_avg[static_cast<std::size_t>(n)] +=
                    weight * kernel_K(table.at(n, Branch::Plus, k), table.at(n, Branch::Minus, k));
            const RT rt = reflection_transmission(coords, table, k);
            rt_sum.R += weight * rt.R;
            rt_sum.T += weight * rt.T;
        }
    } else {
        rt_sum.T = coords.w_minus1 * coords.w_minus1; // only |b,0>: free propagation
    }

    ObservablesReport report;
    report.sigma_aa_initial = sigma_aa_initial(coords);
    report.delta_sigma_aa = delta_sigma_aa(coords, K_avg);
    report.R = rt_sum.R;
    report.T = rt_sum.T;
    report.per_n.resize(static_cast<std::size_t>(top + 2));
    for (int n = 0; n <= top + 1; ++n) {
        PerLevel& row = report.per_n[static_cast<std::size_t>(n)];
        row.n = n;
        row.K = n <= top ? K_avg[static_cast<std::size_t>(n)] : Complex(0.0, 0.0);
        row.Delta = delta_at(coords, K_avg, n);
        row.delta_P = delta_P(coords, K_avg, n);
    }
    if (const auto* d = std::get_if<DeltaPacket>(&momentum))
        report.k = d->k0;
    else
        report.packet = momentum;
    return report;
}

ObservablesReport full_report(const PureStateSpec& state, const ModeProfile& profile,
                              const WavePacketSpec& momentum, const SolverConfig& config,
                              Exec exec) {
    return report_from_coords(to_dressed_coordinates(state), profile, momentum, config, exec);
}

ObservablesReport full_report(const PureStateSpec& state, const ModeProfile& profile,
                              double k, const SolverConfig& config, Exec exec) {
    return full_report(state, profile, WavePacketSpec(DeltaPacket{k}), config, exec);
}

ObservablesReport full_report(const TrappingParam& p, const ModeProfile& profile, double k,
                              const SolverConfig& config, double epsilon_tail, Exec exec) {
    return report_from_coords(trapping_state(p, epsilon_tail), profile,
                              WavePacketSpec(DeltaPacket{k}), config, exec);
}

} // namespace mazer
