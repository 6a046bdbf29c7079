#include "eclc/observer.hpp"

#include <algorithm>
#include <set>

#include "eclc/errors.hpp"

namespace eclc {

std::string_view to_string(Persistence p) noexcept {
    switch (p) {
    case Persistence::Preserved: return "preserved";
    case Persistence::Violated: return "violated";
    case Persistence::NotEstablished: return "not_established";
    }
    return "unknown";
}

bool observer_sees(const Frame& frame, const Observer& o, const WorldId& w) {
    auto d = hop_distance(frame, o.home, w);
    return d && *d <= o.horizon;
}

std::optional<unsigned> establishing_depth(const Frame& frame, const WorldId& w, const Formula& phi,
                                           const CostModel& model) {
    const World& world = frame.world(w);
    if (std::find(world.props.begin(), world.props.end(), phi) != world.props.end()) return 0u;

    std::vector<Formula> pool = world.props;
    std::sort(pool.begin(), pool.end());
    const std::size_t limit = std::min(kMaxObserverAntecedent, pool.size());

    // Distinct sub-multisets by size, smallest first.
    std::set<std::vector<Formula>> tried;
    std::optional<unsigned> best;
    std::vector<std::size_t> pick;
    auto visit = [&](auto&& self, std::size_t start, std::size_t size) -> void {
        if (pick.size() == size) {
            std::vector<Formula> gamma;
            for (auto i : pick) gamma.push_back(pool[i]);
            if (!tried.insert(gamma).second) return;
            ProofResult r = prove(Sequent{gamma, {phi}}, world.lambda, model, world.kappa, frame.laws());
            if (r.proved && (!best || r.depth < *best)) best = r.depth;
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            pick.push_back(i);
            self(self, i + 1, size);
            pick.pop_back();
        }
    };
    for (std::size_t size = 0; size <= limit; ++size) visit(visit, 0, size);
    return best;
}

int observer_valuation(const Frame& frame, const Observer& o, const WorldId& w, const Formula& phi,
                       const CostModel& model) {
    if (!observer_sees(frame, o, w)) return 0;
    return establishing_depth(frame, w, phi, model) ? 1 : 0;
}

Persistence persistence_check(const Frame& frame, const Observer& o, const WorldId& w, const WorldId& w_prime,
                              const Formula& phi, const CostModel& model) {
    if (!accessible(frame, w, w_prime))
        throw PreconditionViolation("persistence check needs " + w + " -> " + w_prime + " to be accessible");
    if (observer_valuation(frame, o, w, phi, model) == 0) return Persistence::NotEstablished;
    return observer_valuation(frame, o, w_prime, phi, model) == 1 ? Persistence::Preserved : Persistence::Violated;
}

}  // namespace eclc
