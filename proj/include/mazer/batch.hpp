#pragma once

#include <span>
#include <vector>

#include "mazer/scattering.hpp"

namespace mazer {

/// Execution policy for batch kernels. Serial is the reference
/// implementation; Parallel distributes independent solves over OpenMP
/// threads and must produce bit-identical tables.
enum class Exec { Serial, Parallel };

/// Complete amplitude set for n in [0, n_max], both branches, every wave
/// number, stored in deterministic order: n ascending, '+' before '-',
/// k ascending.
class AmplitudeTable {
public:
    const std::vector<Amplitudes>& entries() const { return entries_; }

    /// Exact-match lookup; throws ValidationError naming the channel if the
    /// entry is absent.
    const Amplitudes& at(int n, Branch branch, double k) const;

    int n_max() const { return n_max_; }
    const std::vector<double>& k_values() const { return k_values_; }

private:
    friend AmplitudeTable amplitude_table(const ModeProfile&, int,
                                          std::span<const double>, const SolverConfig&,
                                          Exec);

    std::vector<Amplitudes> entries_;
    std::vector<double> k_values_; // sorted ascending, deduplicated
    int n_max_ = -1;
};

/// Solve every (n, branch, k) combination. Channels are independent pure
/// solves; under Exec::Parallel they are distributed over threads and
/// assembled in the deterministic order above. The first failing channel
/// (in that order) aborts the batch with its context.
AmplitudeTable amplitude_table(const ModeProfile& profile, int n_max,
                               std::span<const double> k_list,
                               const SolverConfig& config = {},
                               Exec exec = Exec::Parallel);

} // namespace mazer
