#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eclc/calculus.hpp"
#include "eclc/frame.hpp"
#include "eclc/observer.hpp"
#include "eclc/syntax.hpp"

namespace eclc {

enum class ScenarioKind { Coherence, Reciprocity, Accessibility };

std::string_view to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> scenario_kind_from(std::string_view text) noexcept;

struct NamedSequent {
    std::string name;
    WorldId source;
    WorldId target;
    Sequent sequent;

    friend bool operator==(const NamedSequent&, const NamedSequent&) = default;
};

/// Everything a scenario file declares.
struct ScenarioConfig {
    Frame frame;
    CostModel cost_model;
    std::vector<Observer> observers;
    std::vector<NamedSequent> sequents;
    ScenarioKind scenario_kind = ScenarioKind::Coherence;
    unsigned trials = 1;
    /// Unset when the file does not declare one.
    std::optional<std::uint64_t> seed;
    double kappa0 = 0.0;
    double noise = 0.0;
    /// Replication factor for the first world's resources (coherence).
    unsigned width = 1;

    const NamedSequent* find_sequent(std::string_view name) const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Line-oriented scenario format. One directive per line, `#` comments:
///
///     scenario coherence|reciprocity|accessibility
///     world <id> { energy=<r>, kappa=<r>, lambda=<n> }
///     edge <id> -> <id> { deltaE=<r> }
///     prop <id> : <formula>
///     law <formula>
///     cost <atom> = <r>
///     alpha = <r>
///     default_cost = <r>
///     observer <id> home=<id> horizon=<n>
///     sequent <name> <id> -> <id> : <formulas> |- <formulas>
///     trials=<n>   seed=<n>   noise=<r>   kappa0=<r>   width=<n>
///
/// A world without `kappa` gets (declaration index) × kappa0. Declarations
/// may refer to worlds declared further down.
ScenarioConfig parse_scenario(std::string_view text, const FormulaSyntax& syntax = {});

/// Canonical text; parse_scenario reads it back to an equal config.
std::string serialize_scenario(const ScenarioConfig& config, const FormulaSyntax& syntax = {});

}  // namespace eclc
