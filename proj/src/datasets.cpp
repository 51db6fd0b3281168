#include "mazer/datasets.hpp"

#include <exception>

#include "mazer/io.hpp"

namespace mazer {

namespace {

// Run `count` independent jobs, collect per-job exceptions, rethrow the
// first (by index) after the loop so diagnostics are deterministic.
template <typename Fn>
void for_each_point(long long count, Exec exec, Fn&& body) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (const std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

std::vector<Figure1Row> figure1_dataset(const ModeProfile& profile, double k,
                                        const SolverConfig& config, double epsilon_tail,
                                        int points, double gamma_max, Exec exec) {
    if (points < 2)
        throw ValidationError("figure1 needs at least 2 grid points");
    if (!(gamma_max > 0.0 && gamma_max < 1.0))
        throw ValidationError("gamma_max must lie in (0, 1)");

    std::vector<Figure1Row> rows(static_cast<std::size_t>(points));
    for_each_point(points, exec, [&](std::size_t i) {
        const double g = gamma_max * static_cast<double>(i) / (points - 1);
        Figure1Row& row = rows[i];
        row.gamma_abs = g;
        if (g == 0.0) {
            // |gamma| = 0 is |b,0>: free propagation, nothing reflects.
            row.R_plus = 0.0;
            row.R_minus = 0.0;
        } else {
            row.R_plus = trapping_RT({g, Branch::Plus}, profile, k, config, epsilon_tail).R;
            row.R_minus = trapping_RT({g, Branch::Minus}, profile, k, config, epsilon_tail).R;
        }
        row.R_plus_closed_form = ultracold_RT_plus(g).R;
    });
    return rows;
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
    std::string out = "gamma_abs,R_plus,R_minus,R_plus_closed_form\n";
    for (const Figure1Row& row : rows)
        out += fmt17(row.gamma_abs) + ',' + fmt17(row.R_plus) + ',' + fmt17(row.R_minus) + ','
               + fmt17(row.R_plus_closed_form) + '\n';
    return out;
}

const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::GammaAbs: return "gamma_abs";
        case SweepAxis::KOverKappa: return "k_over_kappa";
        case SweepAxis::KappaL: return "kappa_L";
    }
    return "?";
}

ModeProfile with_length(const ModeProfile& profile, double kappa_L) {
    switch (profile.kind()) {
        case ModeProfile::Kind::Mesa: return ModeProfile::mesa(kappa_L);
        case ModeProfile::Kind::Sech2: return ModeProfile::sech2(profile.width(), kappa_L);
        case ModeProfile::Kind::Gaussian: return ModeProfile::gaussian(profile.width(), kappa_L);
        case ModeProfile::Kind::Sinusoidal:
            return ModeProfile::sinusoidal(profile.lobes(), kappa_L);
        case ModeProfile::Kind::Custom:
            return ModeProfile::custom(profile.expression(), kappa_L);
    }
    throw ValidationError("corrupt profile kind");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, Exec exec) {
    if (spec.points < 1)
        throw ValidationError("sweep needs at least 1 point");
    if (!(spec.lo <= spec.hi))
        throw ValidationError("sweep range must be ordered low to high");
    if (spec.state.has_value() == spec.trapping.has_value())
        throw ValidationError("sweep needs exactly one state source (state or trapping)");
    if (spec.axis == SweepAxis::GammaAbs) {
        if (!spec.trapping)
            throw ValidationError("gamma_abs sweeps require a trapping-state source");
        if (!(spec.lo >= 0.0 && spec.hi < 1.0))
            throw ValidationError("gamma_abs sweep range must lie in [0, 1)");
    }
    if (spec.axis == SweepAxis::KOverKappa && !(spec.lo > 0.0))
        throw ValidationError("k_over_kappa sweep range must be positive");
    if (spec.axis == SweepAxis::KappaL && !(spec.lo > 0.0))
        throw ValidationError("kappa_L sweep range must be positive");

    std::vector<SweepRow> rows(static_cast<std::size_t>(spec.points));
    for_each_point(spec.points, exec, [&](std::size_t i) {
        const double value =
            spec.points == 1
                ? spec.lo
                : spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) / (spec.points - 1);
        try {
            ModeProfile profile =
                spec.axis == SweepAxis::KappaL ? with_length(spec.profile, value) : spec.profile;
            const double k = spec.axis == SweepAxis::KOverKappa ? value : spec.k;

            ObservablesReport report;
            if (spec.trapping) {
                TrappingParam p = *spec.trapping;
                if (spec.axis == SweepAxis::GammaAbs) {
                    // keep the configured phase, sweep the modulus
                    const double phase = std::arg(p.gamma);
                    p.gamma = std::polar(value, value == 0.0 ? 0.0 : phase);
                }
                report = full_report(p, profile, k, spec.solver, spec.epsilon_tail,
                                     Exec::Serial);
            } else {
                report = full_report(*spec.state, profile, k, spec.solver, Exec::Serial);
            }

            SweepRow& row = rows[i];
            row.axis_value = value;
            row.sigma_aa_initial = report.sigma_aa_initial;
            row.delta_sigma_aa = report.delta_sigma_aa;
            row.emission_prob = -report.delta_sigma_aa;
            row.R = report.R;
            row.T = report.T;
        } catch (const SolverError& e) {
            throw SolverError("sweep point " + std::string(sweep_axis_name(spec.axis)) + "="
                                  + fmt17(value) + " failed: " + e.what(),
                              e.defect());
        } catch (const Error& e) {
            throw Error("sweep point " + std::string(sweep_axis_name(spec.axis)) + "="
                        + fmt17(value) + " failed: " + e.what());
        }
    });
    return rows;
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
    std::string out = std::string(sweep_axis_name(axis))
                      + ",sigma_aa_initial,delta_sigma_aa,emission_prob,R,T\n";
    for (const SweepRow& row : rows)
        out += fmt17(row.axis_value) + ',' + fmt17(row.sigma_aa_initial) + ','
               + fmt17(row.delta_sigma_aa) + ',' + fmt17(row.emission_prob) + ','
               + fmt17(row.R) + ',' + fmt17(row.T) + '\n';
    return out;
}

} // namespace mazer
