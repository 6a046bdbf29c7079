#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eclc/formula.hpp"

namespace eclc {

using WorldId = std::string;

/// A logical context: proposition multiset Σ/V(w), energy budget E,
/// curvature κ and inference capacity λ (maximum proof depth).
struct World {
    WorldId id;
    std::vector<Formula> props;
    double energy = 0.0;
    double kappa = 0.0;
    unsigned lambda = 1;

    friend bool operator==(const World&, const World&) = default;
};

struct Edge {
    WorldId from;
    WorldId to;
    double delta_e = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct PathCost {
    unsigned hops = 0;
    double total_delta_e = 0.0;
};

/// Kripke frame with energy-weighted directed edges.
///
/// Worlds and edges keep declaration order, which is also the order used
/// by serialization and reports. At most one edge per ordered pair.
/// `laws` are reusable transformation rules; the prover sees each of them
/// as a banged hypothesis.
class Frame {
public:
    Frame() = default;

    /// Throws std::invalid_argument on duplicate ids or out-of-range
    /// attributes (negative energy or κ, λ = 0).
    void add_world(World world);
    /// Throws UnknownWorld for a missing endpoint, std::invalid_argument for
    /// a duplicate ordered pair or negative ΔE.
    void add_edge(Edge edge);
    void add_law(Formula law) { laws_.push_back(std::move(law)); }

    bool contains(const WorldId& id) const { return index_.count(id) != 0; }
    const World& world(const WorldId& id) const;
    World& world(const WorldId& id);

    const std::vector<World>& worlds() const noexcept { return worlds_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Formula>& laws() const noexcept { return laws_; }

    const Edge* find_edge(const WorldId& from, const WorldId& to) const;
    std::vector<const Edge*> out_edges(const WorldId& from) const;

    friend bool operator==(const Frame& a, const Frame& b) {
        return a.worlds_ == b.worlds_ && a.edges_ == b.edges_ && a.laws_ == b.laws_;
    }

private:
    std::vector<World> worlds_;
    std::unordered_map<WorldId, std::size_t> index_;
    std::vector<Edge> edges_;
    std::vector<Formula> laws_;
};

/// R(w, w'): an edge w → w' exists and its ΔE fits the current E(w).
bool accessible(const Frame& frame, const WorldId& w, const WorldId& w_prime);

/// V(w, <r>φ): some accessible successor holds φ and its edge costs at most r.
bool eval_diamond(const Frame& frame, const WorldId& w, const Formula& phi, double budget,
                  const CostModel& model);

/// V(w, φ). Diamonds dispatch to eval_diamond, everything else is membership.
int eval_prop(const Frame& frame, const WorldId& w, const Formula& phi, const CostModel& model);

/// Fewest accessible hops from w to w'; nullopt when unreachable.
std::optional<unsigned> hop_distance(const Frame& frame, const WorldId& w, const WorldId& w_prime);

/// Like hop_distance, also reporting the ΔE accumulated along the shortest
/// path found (first-found among equal hop counts, in edge declaration order).
std::optional<PathCost> shortest_path(const Frame& frame, const WorldId& w, const WorldId& w_prime);

}  // namespace eclc
