#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eclc/formula.hpp"
#include "eclc/frame.hpp"

namespace eclc {

/// Γ ⊢ Δ over multisets. The succedent is read multiplicatively: several
/// formulas on the right must all be produced, and an empty succedent is
/// the unit (nothing left over).
struct Sequent {
    std::vector<Formula> gamma;
    std::vector<Formula> delta;

    friend bool operator==(const Sequent&, const Sequent&) = default;
};

enum class FailureReason { DepthExceeded, NoRuleApplies, CostInvalid };

std::string_view to_string(FailureReason reason) noexcept;

struct Derivation {
    std::string rule;
    Sequent conclusion;
    std::vector<Derivation> premises;

    unsigned height() const noexcept;
};

struct ProofResult {
    bool proved = false;
    unsigned depth = 0;
    std::optional<Derivation> tree;
    double consumed_cost = 0.0;
    std::optional<FailureReason> failure_reason;
};

/// Σ c_κ(Γ) ≥ Σ c_κ(Δ).
bool cost_valid(const Sequent& seq, const CostModel& model, double kappa);

/// Bounded backward proof search.
///
/// Rules, tried in this order at every node: identity (atoms and diamonds),
/// one-right (∅ ⊢ ∅), tensor-right, tensor-left, lolli-right, lolli-left,
/// with-right, with-left-1, with-left-2, dereliction, contraction,
/// weakening, promotion. Iterative deepening returns a proof of minimal
/// height, and among those the first in rule order.
///
/// Each law is added to Γ as a banged hypothesis; laws do not count towards
/// the cost check, which runs once at the root.
ProofResult prove(const Sequent& seq, unsigned depth_bound, const CostModel& model, double kappa,
                  std::span<const Formula> laws = {});

struct TransitionOutcome {
    bool valid = false;
    bool accessible = false;
    ProofResult proof;
    /// Minimal proof depth plus the requested extra depth.
    unsigned required_depth = 0;
    std::vector<Formula> source_remainder;
    std::vector<Formula> target_additions;
    double energy_spent = 0.0;
};

/// Γ_w ⊢_{w→w'} Δ_{w'}.
///
/// Valid iff w' is accessible from w, the cost check holds at κ(w) and the
/// sequent is provable with depth + extra_depth ≤ λ(w). A valid transition
/// removes Γ from w, adds Δ to w' and spends the edge ΔE from E(w). An
/// invalid one leaves the frame untouched.
///
/// Throws UnknownWorld, or PreconditionViolation when Γ is not a
/// sub-multiset of props(w).
TransitionOutcome transition(Frame& frame, const WorldId& w, const WorldId& w_prime, const Sequent& seq,
                             const CostModel& model, unsigned extra_depth = 0);

/// Measurement collapse !Quantum(ψ) ⊢_{w→w'} Classical(o), proved with the
/// collapse law Quantum(ψ) ⊸ Classical(o) in addition to the frame's laws.
/// Throws PreconditionViolation when !Quantum(ψ) is not in props(w).
TransitionOutcome measure(Frame& frame, const WorldId& w, const WorldId& w_prime, const std::string& psi,
                          const std::string& outcome, const CostModel& model, unsigned extra_depth = 0);

Formula quantum_state(const std::string& psi);
Formula classical_outcome(const std::string& outcome);

/// True when `sub` is contained in `whole` with multiplicity.
bool is_submultiset(std::span<const Formula> sub, std::span<const Formula> whole);

/// `Γ |- Δ` with comma-separated sides, in the scenario-file syntax.
std::string format_sequent(const Sequent& seq);

/// Indented plain-text rendering: one line per node, `rule  Γ |- Δ`,
/// children indented by two spaces.
std::string render_derivation(const Derivation& tree);

}  // namespace eclc
