#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eclc/dsl.hpp"
#include "eclc/metrics.hpp"

namespace eclc {

enum class Direction { Forward, Reverse };

std::string_view to_string(Direction d) noexcept;

struct TrialRecord {
    unsigned trial_index = 0;
    Direction direction = Direction::Forward;
    bool success = false;
    unsigned proof_depth = 0;
    std::optional<std::string> failure_reason;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct WorldReport {
    WorldId world;
    double kappa = 0.0;
    double pi = 0.0;
    double access_fraction = 0.0;
    double entropy = 0.0;
    double mean_proof_depth = 0.0;

    friend bool operator==(const WorldReport&, const WorldReport&) = default;
};

struct ScenarioReport {
    ScenarioKind kind = ScenarioKind::Coherence;
    /// Chain order.
    std::vector<WorldReport> per_world;
    std::optional<FitResult> fit;
    std::optional<double> fisher_p;
    std::vector<TrialRecord> trials;
    std::uint64_t seed = 0;

    friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

/// splitmix64(master ^ (trial_index + 1) · 0x9E3779B97F4A7C15).
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept;

/// SplitMix64 stream with a portable bounded draw.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next() noexcept;
    /// Uniform integer in [0, bound], by rejection.
    std::uint64_t uniform(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// Worlds of a forward chain in order: one start without incoming edges,
/// exactly one edge from each world to the next. Throws
/// PreconditionViolation otherwise.
std::vector<WorldId> chain_order(const Frame& frame);

/// The first world's props (or E ⊗ Entangled(A,B) when it has none),
/// replicated `width` times, are carried hop by hop along the chain. At
/// each hop a coherent formula stays coherent when its carry proof fits
/// the source λ and its curvature cost at the destination fits the hop
/// budget, min(E(source), Σ base cost of the coherent formulas carried).
/// The rest are decohered. Fits exp(−rate·κ) over the worlds with π > 0.
ScenarioReport run_coherence(const ScenarioConfig& config);

/// Two worlds with an edge each way. Each trial measures the first two
/// !Quantum(ψ) states of the first world from it to the second (forward)
/// and, on a fresh copy of the frame, in the opposite order from the
/// second world back (reverse). Every measurement needs extra depth drawn
/// uniformly from [0, ⌊noise·λ(source)⌋]. One record per trial and
/// direction; fisher_p tests forward against reverse successes.
ScenarioReport run_reciprocity(const ScenarioConfig& config);

/// The first world's props are propagated down the chain while the edge is
/// accessible and the cumulative curvature-scaled cost of carrying them
/// fits the receiving world's energy. Each observer then values φ at every
/// world. φ is the succedent of the first declared sequent, else the first
/// prop of the first world. Without declared observers, 30 observers at the
/// first world with horizons 1, 2, 3, 4, 1, ... are used.
ScenarioReport run_accessibility(const ScenarioConfig& config);

/// Dispatches on config.scenario_kind.
ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace eclc
