#include "mazer/batch.hpp"

#include <algorithm>
#include <exception>

namespace mazer {

const Amplitudes& AmplitudeTable::at(int n, Branch branch, double k) const {
    // Entries are sorted (n, +/-, k); index arithmetic avoids a comparator.
    auto kit = std::lower_bound(k_values_.begin(), k_values_.end(), k);
    if (n < 0 || n > n_max_ || kit == k_values_.end() || *kit != k)
        throw ValidationError("amplitude table has no entry for channel "
                              + to_string({n, branch}) + " at k=" + std::to_string(k));
    const std::size_t nk = k_values_.size();
    const std::size_t ki = static_cast<std::size_t>(kit - k_values_.begin());
    const std::size_t bi = branch == Branch::Plus ? 0 : 1;
    return entries_[(static_cast<std::size_t>(n) * 2 + bi) * nk + ki];
}

AmplitudeTable amplitude_table(const ModeProfile& profile, int n_max,
                               std::span<const double> k_list, const SolverConfig& config,
                               Exec exec) {
    if (n_max < 0)
        throw ValidationError("n_max must be >= 0, got " + std::to_string(n_max));
    if (k_list.empty())
        throw ValidationError("k_list must not be empty");
    for (double k : k_list)
        if (!(k > 0.0))
            throw ValidationError("all wave numbers must be positive, got "
                                  + std::to_string(k));
    config.validate();

    AmplitudeTable table;
    table.n_max_ = n_max;
    table.k_values_.assign(k_list.begin(), k_list.end());
    std::sort(table.k_values_.begin(), table.k_values_.end());
    table.k_values_.erase(std::unique(table.k_values_.begin(), table.k_values_.end()),
                          table.k_values_.end());

    const std::size_t nk = table.k_values_.size();
    const std::size_t jobs = static_cast<std::size_t>(n_max + 1) * 2 * nk;
    table.entries_.resize(jobs);
    std::vector<std::exception_ptr> errors(jobs);

    const bool is_mesa = profile.kind() == ModeProfile::Kind::Mesa;
    detail::SlicedProfile sliced;
    if (!is_mesa)
        sliced = detail::slice_profile(profile, config);

    auto solve_job = [&](std::size_t idx) {
        const std::size_t ki = idx % nk;
        const std::size_t bi = (idx / nk) % 2;
        const int n = static_cast<int>(idx / (2 * nk));
        const ScatterChannel ch{n, bi == 0 ? Branch::Plus : Branch::Minus};
        const double k = table.k_values_[ki];
        try {
            table.entries_[idx] = is_mesa ? scatter_mesa_analytic(ch, k, profile.length())
                                          : detail::scatter_sliced(sliced, ch, k, config);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(jobs); ++i)
            solve_job(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < jobs; ++i)
            solve_job(i);
    }

    // Rethrow the first failure in table order so diagnostics are
    // deterministic regardless of thread scheduling.
    for (std::size_t i = 0; i < jobs; ++i)
        if (errors[i])
            std::rethrow_exception(errors[i]);

    return table;
}

} // namespace mazer
