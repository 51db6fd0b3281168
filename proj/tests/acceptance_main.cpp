// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the checks themselves.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mazer/datasets.hpp"
#include "mazer/io.hpp"
#include "mazer/observables.hpp"

using namespace mazer;

namespace {

const double kPi = std::numbers::pi;

int g_failures = 0;

void criterion(int index, const std::string& label, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", index, label.c_str(),
                detail.c_str());
    if (!ok)
        ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<ModeProfile> bundled_profiles(double kappa_L) {
    return {ModeProfile::mesa(kappa_L), ModeProfile::sech2(1.0, kappa_L),
            ModeProfile::gaussian(1.0, kappa_L), ModeProfile::sinusoidal(1, kappa_L)};
}

JointState basis_a(int n) {
    JointState s;
    s.a.assign(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
    s.a[static_cast<std::size_t>(n)] = 1.0;
    return s;
}

const std::vector<double> kAcceptanceK{0.05, 0.1, 0.5, 1.0, 2.0, 5.0};

void check_flux_and_agreement() {
    double worst_tm_defect = 0.0;
    double worst_mesa_defect = 0.0;
    double worst_agreement = 0.0;
    for (double kappa_L : {1.0, 10.0}) {
        for (const ModeProfile& profile : bundled_profiles(kappa_L)) {
            const AmplitudeTable table = amplitude_table(profile, 5, kAcceptanceK);
            for (const Amplitudes& a : table.entries()) {
                if (profile.kind() == ModeProfile::Kind::Mesa)
                    worst_mesa_defect = std::max(worst_mesa_defect, unitarity_defect(a));
                else
                    worst_tm_defect = std::max(worst_tm_defect, unitarity_defect(a));
            }
        }
        // mesa through the transfer matrix vs the closed forms
        const ModeProfile mesa = ModeProfile::mesa(kappa_L);
        for (int n = 0; n <= 5; ++n)
            for (Branch b : {Branch::Plus, Branch::Minus})
                for (double k : kAcceptanceK) {
                    const Amplitudes exact = scatter_mesa_analytic({n, b}, k, kappa_L);
                    const Amplitudes tm = scatter_transfer_matrix(mesa, {n, b}, k);
                    worst_tm_defect = std::max(worst_tm_defect, unitarity_defect(tm));
                    worst_agreement = std::max({worst_agreement, std::abs(exact.r - tm.r),
                                                std::abs(exact.t - tm.t)});
                }
    }
    criterion(1, "flux conservation over the full grid",
              worst_tm_defect <= 1e-6 && worst_mesa_defect <= 1e-10,
              "max defect: transfer-matrix " + fmt(worst_tm_defect) + ", analytic mesa "
                  + fmt(worst_mesa_defect));
    criterion(2, "analytic mesa vs transfer matrix", worst_agreement <= 1e-6,
              "max |amplitude difference| " + fmt(worst_agreement));
}

void check_perfect_trapping() {
    const std::vector<Complex> gammas = {
        {0.1, 0.0}, {0.5, 0.0}, {0.9, 0.0},
        std::polar(0.1, kPi / 3), std::polar(0.5, kPi / 3), std::polar(0.9, kPi / 3)};
    const std::vector<double> ks{0.05, 0.1, 1.0};
    const int n_top = truncation_level(0.9, 1e-10);

    double worst_ds = 0.0;
    double worst_dp = 0.0;
    for (double kappa_L : {1.0, 10.0}) {
        for (const ModeProfile& profile : bundled_profiles(kappa_L)) {
            const AmplitudeTable table = amplitude_table(profile, n_top, ks);
            for (const Complex& gamma : gammas)
                for (Branch branch : {Branch::Plus, Branch::Minus}) {
                    const DressedCoordinates coords = trapping_state({gamma, branch}, 1e-10);
                    for (double k : ks) {
                        std::vector<Complex> K(coords.entries.size());
                        for (std::size_t n = 0; n < K.size(); ++n)
                            K[n] = kernel_K(table.at(static_cast<int>(n), Branch::Plus, k),
                                            table.at(static_cast<int>(n), Branch::Minus, k));
                        worst_ds = std::max(worst_ds, std::fabs(delta_sigma_aa(coords, K)));
                        for (int n = 0; n <= coords.highest_occupied() + 1; ++n)
                            worst_dp = std::max(worst_dp, std::fabs(delta_P(coords, K, n)));
                    }
                }
        }
    }
    criterion(3, "perfect trapping freezes populations at every k",
              worst_ds < 1e-12 && worst_dp < 1e-12,
              "max |delta sigma_aa| " + fmt(worst_ds) + ", max |delta P_n| " + fmt(worst_dp));
}

void check_ultracold_closed_form() {
    const ModeProfile mesa = ModeProfile::mesa(10.0);
    double worst_01 = 0.0, worst_001 = 0.0;
    for (int i = 0; i <= 19; ++i) {
        const double g = 0.95 * i / 19.0;
        const RT closed = ultracold_RT_plus(g);
        const RT at01 = g == 0.0 ? RT{0.0, 1.0}
                                 : trapping_RT({Complex(g, 0.0), Branch::Plus}, mesa, 0.1);
        const RT at001 = g == 0.0 ? RT{0.0, 1.0}
                                  : trapping_RT({Complex(g, 0.0), Branch::Plus}, mesa, 0.01);
        worst_01 = std::max(worst_01, std::fabs(at01.R - closed.R));
        worst_001 = std::max(worst_001, std::fabs(at001.R - closed.R));
    }
    criterion(4, "ultracold closed form R = 2|g|^2/(1+|g|^2)",
              worst_01 <= 1e-2 && worst_001 <= 1e-3,
              "max deviation " + fmt(worst_01) + " at k=0.1, " + fmt(worst_001)
                  + " at k=0.01");
}

void check_figure1() {
    const ModeProfile mesa = ModeProfile::mesa(10.0);
    const double r_plus_small = trapping_RT({Complex(1e-3, 0.0), Branch::Plus}, mesa, 0.1).R;
    const double r_minus_small = trapping_RT({Complex(1e-3, 0.0), Branch::Minus}, mesa, 0.1).R;
    const double r_plus_big = trapping_RT({Complex(0.99, 0.0), Branch::Plus}, mesa, 0.1).R;

    bool ok = r_plus_small < 1e-4 && r_minus_small < 1e-4 && r_plus_big > 0.95;

    // interior R-: probability bounds, R + T = 1, and the frozen fixture
    const auto rows = figure1_dataset(mesa, 0.1);
    double worst_fixture = 0.0;
    double worst_unitarity = 0.0;
    {
        std::ifstream in(std::string(MAZER_GOLDEN_DIR) + "/figure1_rminus.csv");
        std::string line;
        std::getline(in, line);
        std::size_t i = 0;
        while (std::getline(in, line) && i < rows.size()) {
            const auto comma = line.find(',');
            worst_fixture = std::max(
                worst_fixture, std::fabs(rows[i].R_minus - std::stod(line.substr(comma + 1))));
            ++i;
        }
        ok = ok && i == rows.size();
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ok = ok && rows[i].R_minus >= 0.0 && rows[i].R_minus <= 1.0;
        if (i % 10 == 0 && rows[i].gamma_abs > 0.0) {
            const RT rt = trapping_RT({Complex(rows[i].gamma_abs, 0.0), Branch::Minus}, mesa, 0.1);
            worst_unitarity = std::max(worst_unitarity, std::fabs(rt.R + rt.T - 1.0));
        }
    }
    ok = ok && worst_fixture <= 1e-8 && worst_unitarity <= 1e-9;
    criterion(5, "figure-1 endpoints and frozen R- column", ok,
              "R+(1e-3)=" + fmt(r_plus_small) + ", R+(0.99)=" + fmt(r_plus_big)
                  + ", fixture dev " + fmt(worst_fixture));
}

void check_special_cases() {
    const ModeProfile mesa = ModeProfile::mesa(10.0);
    std::vector<double> k{0.1};
    const AmplitudeTable table = amplitude_table(mesa, 3, k);
    double worst = 0.0;
    for (int n : {0, 1, 2}) {
        const RT rt =
            reflection_transmission(to_dressed_coordinates(basis_a(n)), table, 0.1);
        const double half = 0.5
                            * (std::norm(table.at(n, Branch::Plus, 0.1).r)
                               + std::norm(table.at(n, Branch::Minus, 0.1).r));
        worst = std::max(worst, std::fabs(rt.R - half));
    }
    criterion(6, "initial |a,n>: R equals the half-sum identity", worst < 1e-15,
              "max difference " + fmt(worst));
}

void check_conservation() {
    double worst = 0.0;
    for (const ModeProfile& profile : bundled_profiles(10.0))
        for (int n : {0, 1, 2}) {
            const ObservablesReport rep =
                full_report(PureStateSpec(basis_a(n)), profile, 0.1);
            worst = std::max(worst, std::fabs(rep.delta_sigma_aa
                                              + rep.per_n[static_cast<std::size_t>(n) + 1]
                                                    .delta_P));
        }
    criterion(7, "emission conservation delta sigma_aa + delta P_{n+1} = 0", worst < 1e-12,
              "max residual " + fmt(worst));
}

void check_free_channel() {
    JointState b0;
    b0.b.push_back(Complex(1.0, 0.0));
    const ObservablesReport mesa_rep =
        full_report(PureStateSpec(b0), ModeProfile::mesa(10.0), 0.1);
    const ObservablesReport gauss_rep =
        full_report(PureStateSpec(b0), ModeProfile::gaussian(1.0, 10.0), 0.5);
    const bool ok = mesa_rep.T == 1.0 && mesa_rep.delta_sigma_aa == 0.0 && mesa_rep.R == 0.0
                    && gauss_rep.T == 1.0 && gauss_rep.delta_sigma_aa == 0.0;
    criterion(8, "initial |b,0>: T = 1 and frozen populations, exactly", ok,
              "T=" + fmt(mesa_rep.T) + ", delta sigma_aa=" + fmt(mesa_rep.delta_sigma_aa));
}

void check_barrier_opacity() {
    const Amplitudes a = scatter_mesa_analytic({0, Branch::Plus}, 0.01, 10.0);
    criterion(9, "ultracold barrier opacity |t_0^+|^2 < 1e-8", std::norm(a.t) < 1e-8,
              "|t|^2 = " + fmt(std::norm(a.t)));
}

void check_wavepacket() {
    const ModeProfile mesa = ModeProfile::mesa(10.0);
    const ObservablesReport mono = full_report(PureStateSpec(basis_a(0)), mesa, 0.1);
    const ObservablesReport packet = full_report(
        PureStateSpec(basis_a(0)), mesa, WavePacketSpec(GaussianPacket{0.1, 1e-4}));
    const double dev = std::fabs(packet.delta_sigma_aa - mono.delta_sigma_aa);
    criterion(10, "narrow wave packet reproduces the monochromatic change", dev <= 1e-6,
              "|difference| " + fmt(dev));
}

void check_chi_invariance() {
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const ModeProfile profile = ModeProfile::sech2(1.0, 10.0);

    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        DressedCoordinates coords;
        coords.w_minus1 = 0.2 + 0.2 * u(rng);
        double norm = coords.w_minus1 * coords.w_minus1;
        for (int n = 0; n < 4; ++n) {
            DressedEntry e;
            e.w = 0.1 + u(rng);
            e.theta = u(rng) * kPi;
            e.chi = u(rng) * 6.2;
            e.phi = u(rng) * 6.2;
            norm += e.w * e.w;
            coords.entries.push_back(e);
        }
        const double scale = 1.0 / std::sqrt(norm);
        coords.w_minus1 *= scale;
        for (DressedEntry& e : coords.entries)
            e.w *= scale;

        DressedCoordinates randomized = coords;
        for (DressedEntry& e : randomized.entries)
            e.chi = u(rng) * 6.2;

        const ObservablesReport a =
            full_report(from_dressed_coordinates(coords), profile, 0.1);
        const ObservablesReport b =
            full_report(from_dressed_coordinates(randomized), profile, 0.1);
        worst = std::max({worst, std::fabs(a.delta_sigma_aa - b.delta_sigma_aa),
                          std::fabs(a.R - b.R), std::fabs(a.T - b.T),
                          std::fabs(a.sigma_aa_initial - b.sigma_aa_initial)});
        for (std::size_t n = 0; n < a.per_n.size(); ++n)
            worst = std::max(worst, std::fabs(a.per_n[n].delta_P - b.per_n[n].delta_P));
    }
    criterion(11, "observables are invariant under chi randomization", worst <= 1e-12,
              "max change " + fmt(worst));
}

} // namespace

int main() {
    check_flux_and_agreement();
    check_perfect_trapping();
    check_ultracold_closed_form();
    check_figure1();
    check_special_cases();
    check_conservation();
    check_free_channel();
    check_barrier_opacity();
    check_wavepacket();
    check_chi_invariance();

    if (g_failures == 0)
        std::printf("all 11 acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
