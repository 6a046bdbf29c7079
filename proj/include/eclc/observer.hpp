#pragma once

#include <optional>
#include <string>

#include "eclc/calculus.hpp"
#include "eclc/frame.hpp"

namespace eclc {

/// An observer anchored at `home` who sees worlds within `horizon` hops.
struct Observer {
    std::string id;
    WorldId home;
    unsigned horizon = 0;

    friend bool operator==(const Observer&, const Observer&) = default;
};

enum class Persistence { Preserved, Violated, NotEstablished };

std::string_view to_string(Persistence p) noexcept;

/// Largest antecedent sub-multiset tried by observer_valuation.
inline constexpr std::size_t kMaxObserverAntecedent = 3;

bool observer_sees(const Frame& frame, const Observer& o, const WorldId& w);

/// Minimal depth at which φ is established at w: 0 when φ ∈ props(w),
/// otherwise the smallest proof depth (≤ λ(w), at κ(w), with the frame's
/// laws) of Γ' ⊢ φ over sub-multisets Γ' of props(w) with |Γ'| ≤ 3.
/// nullopt when no such derivation fits.
std::optional<unsigned> establishing_depth(const Frame& frame, const WorldId& w, const Formula& phi,
                                           const CostModel& model);

/// V_o(w, φ): w is within o's horizon and φ is established at w.
int observer_valuation(const Frame& frame, const Observer& o, const WorldId& w, const Formula& phi,
                       const CostModel& model);

/// Truth persistence across w → w'. Throws PreconditionViolation when w'
/// is not accessible from w.
Persistence persistence_check(const Frame& frame, const Observer& o, const WorldId& w, const WorldId& w_prime,
                              const Formula& phi, const CostModel& model);

}  // namespace eclc
