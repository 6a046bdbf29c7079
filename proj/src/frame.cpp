#include "eclc/frame.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "eclc/errors.hpp"

namespace eclc {

void Frame::add_world(World world) {
    if (!is_identifier(world.id)) throw std::invalid_argument("world id must be an identifier: '" + world.id + "'");
    if (contains(world.id)) throw std::invalid_argument("duplicate world id '" + world.id + "'");
    if (!(world.energy >= 0.0) || !std::isfinite(world.energy))
        throw std::invalid_argument("world '" + world.id + "': energy must be a finite nonnegative real");
    if (!(world.kappa >= 0.0) || !std::isfinite(world.kappa))
        throw std::invalid_argument("world '" + world.id + "': kappa must be a finite nonnegative real");
    if (world.lambda < 1) throw std::invalid_argument("world '" + world.id + "': lambda must be at least 1");
    index_.emplace(world.id, worlds_.size());
    worlds_.push_back(std::move(world));
}

void Frame::add_edge(Edge edge) {
    if (!contains(edge.from)) throw UnknownWorld(edge.from);
    if (!contains(edge.to)) throw UnknownWorld(edge.to);
    if (!(edge.delta_e >= 0.0) || !std::isfinite(edge.delta_e))
        throw std::invalid_argument("edge " + edge.from + " -> " + edge.to + ": deltaE must be a finite nonnegative real");
    if (find_edge(edge.from, edge.to))
        throw std::invalid_argument("duplicate edge " + edge.from + " -> " + edge.to);
    edges_.push_back(std::move(edge));
}

const World& Frame::world(const WorldId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownWorld(id);
    return worlds_[it->second];
}

World& Frame::world(const WorldId& id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownWorld(id);
    return worlds_[it->second];
}

const Edge* Frame::find_edge(const WorldId& from, const WorldId& to) const {
    for (const auto& e : edges_)
        if (e.from == from && e.to == to) return &e;
    return nullptr;
}

std::vector<const Edge*> Frame::out_edges(const WorldId& from) const {
    std::vector<const Edge*> out;
    for (const auto& e : edges_)
        if (e.from == from) out.push_back(&e);
    return out;
}

bool accessible(const Frame& frame, const WorldId& w, const WorldId& w_prime) {
    const World& source = frame.world(w);
    (void)frame.world(w_prime);
    const Edge* edge = frame.find_edge(w, w_prime);
    return edge != nullptr && edge->delta_e <= source.energy;
}

bool eval_diamond(const Frame& frame, const WorldId& w, const Formula& phi, double budget,
                  const CostModel& model) {
    const World& source = frame.world(w);
    for (const Edge* edge : frame.out_edges(w)) {
        if (edge->delta_e > source.energy || edge->delta_e > budget) continue;
        const auto& props = frame.world(edge->to).props;
        if (std::find(props.begin(), props.end(), phi) != props.end()) return true;
    }
    (void)model;
    return false;
}

int eval_prop(const Frame& frame, const WorldId& w, const Formula& phi, const CostModel& model) {
    if (phi.kind() == Formula::Kind::Diamond)
        return eval_diamond(frame, w, phi.inner(), phi.budget(), model) ? 1 : 0;
    const auto& props = frame.world(w).props;
    return std::find(props.begin(), props.end(), phi) != props.end() ? 1 : 0;
}

std::optional<PathCost> shortest_path(const Frame& frame, const WorldId& w, const WorldId& w_prime) {
    (void)frame.world(w);
    (void)frame.world(w_prime);
    std::unordered_map<WorldId, PathCost> seen{{w, PathCost{}}};
    std::deque<WorldId> queue{w};
    while (!queue.empty()) {
        WorldId current = std::move(queue.front());
        queue.pop_front();
        const PathCost here = seen.at(current);
        if (current == w_prime) return here;
        const double energy = frame.world(current).energy;
        for (const Edge* edge : frame.out_edges(current)) {
            if (edge->delta_e > energy || seen.count(edge->to)) continue;
            seen.emplace(edge->to, PathCost{here.hops + 1, here.total_delta_e + edge->delta_e});
            queue.push_back(edge->to);
        }
    }
    return std::nullopt;
}

std::optional<unsigned> hop_distance(const Frame& frame, const WorldId& w, const WorldId& w_prime) {
    auto path = shortest_path(frame, w, w_prime);
    if (!path) return std::nullopt;
    return path->hops;
}

}  // namespace eclc
