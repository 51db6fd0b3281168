#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mazer/batch.hpp"
#include "mazer/dressed.hpp"
#include "mazer/mode_profile.hpp"
#include "mazer/observables.hpp"

namespace mazer {

/// One row of the trapping-state reflection dataset: both branch curves plus
/// the ultracold closed form for the + branch.
struct Figure1Row {
    double gamma_abs = 0.0;
    double R_plus = 0.0;
    double R_minus = 0.0;
    double R_plus_closed_form = 0.0;
};

/// R(|gamma|) for |gamma+-> over an even grid of `points` values spanning
/// [0, gamma_max]. Rows are computed independently (parallel under
/// Exec::Parallel) and assembled in ascending grid order.
std::vector<Figure1Row> figure1_dataset(const ModeProfile& profile, double k,
                                        const SolverConfig& config = {},
                                        double epsilon_tail = 1e-10, int points = 100,
                                        double gamma_max = 0.99, Exec exec = Exec::Parallel);

std::string figure1_csv(const std::vector<Figure1Row>& rows);

enum class SweepAxis { GammaAbs, KOverKappa, KappaL };

/// What a sweep varies and over which state. Exactly one of `state` /
/// `trapping` is set; GammaAbs sweeps require the trapping form.
struct SweepSpec {
    SweepAxis axis = SweepAxis::KOverKappa;
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;

    ModeProfile profile = ModeProfile::mesa(10.0); // length overridden on a KappaL sweep
    double k = 0.1;                                // overridden on a KOverKappa sweep
    std::optional<PureStateSpec> state;
    std::optional<TrappingParam> trapping;
    double epsilon_tail = 1e-10;
    SolverConfig solver{};
};

struct SweepRow {
    double axis_value = 0.0;
    double sigma_aa_initial = 0.0;
    double delta_sigma_aa = 0.0;
    double emission_prob = 0.0; // -delta_sigma_aa
    double R = 0.0;
    double T = 0.0;
};

const char* sweep_axis_name(SweepAxis axis);

/// Evaluate a full report per sweep point. Points are independent (parallel
/// under Exec::Parallel); output order is ascending along the axis. A failed
/// point aborts the sweep with its parameter value in the diagnostic.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, Exec exec = Exec::Parallel);

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

/// Rebuild a profile with a different cavity length, keeping the shape.
ModeProfile with_length(const ModeProfile& profile, double kappa_L);

} // namespace mazer
