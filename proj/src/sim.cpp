#include "eclc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "eclc/errors.hpp"

namespace eclc {

std::string_view to_string(Direction d) noexcept { return d == Direction::Forward ? "forward" : "reverse"; }

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void require_kind(const ScenarioConfig& config, ScenarioKind kind) {
    if (config.scenario_kind != kind)
        throw PreconditionViolation("scenario kind is " + std::string(to_string(config.scenario_kind)) +
                                    ", expected " + std::string(to_string(kind)));
}

double entropy_of(const std::vector<int>& bits) { return bits.empty() ? 0.0 : shannon_entropy(bits); }

double mean_of(double sum, std::size_t count) { return count == 0 ? 0.0 : sum / static_cast<double>(count); }

std::vector<int> coherence_bits(const std::vector<Formula>& props) {
    std::vector<int> bits;
    bits.reserve(props.size());
    for (const auto& f : props) bits.push_back(coherence(f));
    return bits;
}

}  // namespace

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    return splitmix64(master_seed ^ ((trial_index + 1) * 0x9E3779B97F4A7C15ULL));
}

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t out = splitmix64(state_);
    state_ += 0x9E3779B97F4A7C15ULL;
    return out;
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) noexcept {
    if (bound == ~0ULL) return next();
    const std::uint64_t range = bound + 1;
    // 2^64 mod range
    const std::uint64_t reject_below = (0 - range) % range;
    for (;;) {
        const std::uint64_t x = next();
        if (x >= reject_below) return x % range;
    }
}

std::vector<WorldId> chain_order(const Frame& frame) {
    const auto& worlds = frame.worlds();
    if (worlds.empty()) throw PreconditionViolation("frame has no worlds");
    if (frame.edges().size() != worlds.size() - 1)
        throw PreconditionViolation("frame is not a forward chain: expected " + std::to_string(worlds.size() - 1) +
                                    " edges");
    std::set<WorldId> has_incoming;
    for (const auto& e : frame.edges()) has_incoming.insert(e.to);
    std::vector<WorldId> order;
    for (const auto& w : worlds)
        if (!has_incoming.count(w.id)) order.push_back(w.id);
    if (order.size() != 1) throw PreconditionViolation("frame is not a forward chain: no unique start world");
    std::set<WorldId> visited{order.front()};
    while (order.size() < worlds.size()) {
        auto out = frame.out_edges(order.back());
        if (out.size() != 1 || !visited.insert(out.front()->to).second)
            throw PreconditionViolation("frame is not a forward chain at world '" + order.back() + "'");
        order.push_back(out.front()->to);
    }
    return order;
}

ScenarioReport run_coherence(const ScenarioConfig& config) {
    require_kind(config, ScenarioKind::Coherence);
    const auto chain = chain_order(config.frame);
    const CostModel& model = config.cost_model;
    Frame frame = config.frame;

    std::vector<Formula> seed_props = frame.world(chain.front()).props;
    if (seed_props.empty())
        seed_props.push_back(Formula::tensor(Formula::atom("E"), Formula::atom("Entangled", {"A", "B"})));
    std::vector<Formula> carried;
    for (unsigned i = 0; i < config.width; ++i) carried.insert(carried.end(), seed_props.begin(), seed_props.end());
    frame.world(chain.front()).props = carried;

    ScenarioReport report;
    report.kind = ScenarioKind::Coherence;
    report.seed = config.seed.value_or(0);

    std::vector<std::vector<Formula>> held(chain.size());
    std::vector<double> mean_depth(chain.size(), 0.0);
    std::vector<bool> reached(chain.size(), false);
    held[0] = frame.world(chain[0]).props;
    reached[0] = true;

    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        World& source = frame.world(chain[i]);
        const double target_kappa = frame.world(chain[i + 1]).kappa;
        const bool open = reached[i] && accessible(frame, chain[i], chain[i + 1]);

        std::vector<Formula> coherent;
        for (const auto& f : carried)
            if (coherence(f)) coherent.push_back(f);
        const double budget = open ? std::min(source.energy, base_cost_sum(coherent, model)) : 0.0;

        std::map<Formula, std::optional<unsigned>> carry_depth;
        double spent = 0.0, depth_sum = 0.0;
        std::size_t depth_count = 0;
        std::vector<Formula> next;
        next.reserve(carried.size());
        for (const auto& f : carried) {
            if (!coherence(f)) {
                next.push_back(f);
                continue;
            }
            auto it = carry_depth.find(f);
            if (it == carry_depth.end()) {
                ProofResult r = prove(Sequent{{f}, {f}}, source.lambda, model, source.kappa, frame.laws());
                it = carry_depth.emplace(f, r.proved ? std::optional<unsigned>(r.depth) : std::nullopt).first;
            }
            if (it->second) {
                depth_sum += *it->second;
                ++depth_count;
            }
            const double cost = curvature_cost(f, model, target_kappa);
            if (open && it->second && spent + cost <= budget) {
                spent += cost;
                next.push_back(f);
            } else {
                next.push_back(decohere(f));
            }
        }
        mean_depth[i] = mean_of(depth_sum, depth_count);

        source.props.clear();
        if (open) source.energy -= frame.find_edge(chain[i], chain[i + 1])->delta_e;
        World& target = frame.world(chain[i + 1]);
        target.props.insert(target.props.end(), next.begin(), next.end());
        held[i + 1] = target.props;
        reached[i + 1] = open;
        carried = std::move(next);
    }

    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        WorldReport row;
        row.world = chain[i];
        row.kappa = config.frame.world(chain[i]).kappa;
        row.pi = persistence_score(held[i]);
        row.access_fraction = reached[i] ? 1.0 : 0.0;
        row.entropy = entropy_of(coherence_bits(held[i]));
        row.mean_proof_depth = mean_depth[i];
        if (row.pi > 0.0) points.emplace_back(row.kappa, row.pi);
        report.per_world.push_back(std::move(row));
    }
    try {
        report.fit = fit_exponential(points);
    } catch (const DegenerateInput&) {
        report.fit.reset();
    }
    return report;
}

ScenarioReport run_reciprocity(const ScenarioConfig& config) {
    require_kind(config, ScenarioKind::Reciprocity);
    const Frame& base = config.frame;
    if (base.worlds().size() != 2 || base.edges().size() != 2)
        throw PreconditionViolation("reciprocity needs exactly two worlds and one edge each way");
    const WorldId first = base.worlds()[0].id;
    const WorldId second = base.worlds()[1].id;
    if (!base.find_edge(first, second) || !base.find_edge(second, first))
        throw PreconditionViolation("reciprocity needs an edge in each direction");

    std::vector<std::string> qubits;
    for (const auto& f : base.world(first).props) {
        if (f.kind() != Formula::Kind::Bang) continue;
        const Formula& inner = f.inner();
        if (inner.is_atom() && inner.name() == "Quantum" && inner.args().size() == 1) qubits.push_back(inner.args()[0]);
    }
    if (qubits.size() < 2)
        throw PreconditionViolation("reciprocity needs two !Quantum(psi) states in world '" + first + "'");
    qubits.resize(2);

    struct Tally {
        std::vector<int> outcomes;
        double depth_sum = 0.0;
        std::size_t depth_count = 0;
    };
    std::map<WorldId, Tally> tally;

    ScenarioReport report;
    report.kind = ScenarioKind::Reciprocity;
    report.seed = config.seed.value_or(0);
    ContingencyTable table;

    for (unsigned trial = 0; trial < config.trials; ++trial) {
        SplitMix64 rng(derive_trial_seed(report.seed, trial));
        for (Direction dir : {Direction::Forward, Direction::Reverse}) {
            const bool forward = dir == Direction::Forward;
            const WorldId& src = forward ? first : second;
            const WorldId& dst = forward ? second : first;
            const std::vector<std::string> order =
                forward ? qubits : std::vector<std::string>{qubits[1], qubits[0]};

            Frame frame = base;
            TrialRecord rec;
            rec.trial_index = trial;
            rec.direction = dir;
            rec.success = true;
            const double amplitude = std::floor(config.noise * static_cast<double>(frame.world(src).lambda));
            const auto max_jitter = static_cast<std::uint64_t>(std::min(amplitude, 1e9));
            for (const auto& psi : order) {
                const auto jitter = static_cast<unsigned>(rng.uniform(max_jitter));
                const std::string outcome = (rng.next() & 1) ? "up" : "down";
                TransitionOutcome out = measure(frame, src, dst, psi, outcome, config.cost_model, jitter);
                Tally& t = tally[src];
                t.outcomes.push_back(out.valid ? 1 : 0);
                if (out.required_depth > 0) {
                    t.depth_sum += out.required_depth;
                    ++t.depth_count;
                }
                rec.proof_depth = std::max(rec.proof_depth, out.required_depth);
                if (!out.valid) {
                    rec.success = false;
                    rec.failure_reason = !out.accessible ? std::string("inaccessible")
                                                         : std::string(to_string(*out.proof.failure_reason));
                    break;
                }
            }
            if (forward)
                (rec.success ? table.a : table.b) += 1;
            else
                (rec.success ? table.c : table.d) += 1;
            report.trials.push_back(std::move(rec));
        }
    }

    for (const auto& w : base.worlds()) {
        const Tally& t = tally[w.id];
        WorldReport row;
        row.world = w.id;
        row.kappa = w.kappa;
        row.pi = persistence_score(w.props);
        std::size_t ones = 0;
        for (int b : t.outcomes) ones += static_cast<std::size_t>(b);
        row.access_fraction = mean_of(static_cast<double>(ones), t.outcomes.size());
        row.entropy = entropy_of(t.outcomes);
        row.mean_proof_depth = mean_of(t.depth_sum, t.depth_count);
        report.per_world.push_back(std::move(row));
    }
    report.fisher_p = fisher_exact_two_tailed(table);
    return report;
}

ScenarioReport run_accessibility(const ScenarioConfig& config) {
    require_kind(config, ScenarioKind::Accessibility);
    const auto chain = chain_order(config.frame);
    const CostModel& model = config.cost_model;
    Frame frame = config.frame;

    const std::vector<Formula> support = frame.world(chain.front()).props;
    std::optional<Formula> phi;
    if (!config.sequents.empty() && config.sequents.front().sequent.delta.size() == 1)
        phi = config.sequents.front().sequent.delta.front();
    else if (!support.empty())
        phi = support.front();
    if (!phi) throw PreconditionViolation("accessibility needs a sequent or a prop in the first world");

    std::vector<Observer> observers = config.observers;
    if (observers.empty())
        for (unsigned i = 0; i < 30; ++i) observers.push_back({"o" + std::to_string(i + 1), chain.front(), i % 4 + 1});

    double cumulative = 0.0;
    for (const auto& f : support) cumulative += curvature_cost(f, model, frame.world(chain.front()).kappa);
    bool delivered = true;
    for (std::size_t k = 1; k < chain.size(); ++k) {
        for (const auto& f : support) cumulative += curvature_cost(f, model, frame.world(chain[k]).kappa);
        delivered = delivered && accessible(frame, chain[k - 1], chain[k]) && cumulative <= frame.world(chain[k]).energy;
        if (!delivered) continue;
        auto& props = frame.world(chain[k]).props;
        props.insert(props.end(), support.begin(), support.end());
    }

    ScenarioReport report;
    report.kind = ScenarioKind::Accessibility;
    report.seed = config.seed.value_or(0);
    for (const auto& id : chain) {
        const World& w = frame.world(id);
        const auto depth = establishing_depth(frame, id, *phi, model);
        std::vector<int> valuation;
        double depth_sum = 0.0;
        std::size_t depth_count = 0;
        for (const auto& o : observers) {
            const int v = depth && observer_sees(frame, o, id) ? 1 : 0;
            valuation.push_back(v);
            if (v) {
                depth_sum += *depth;
                ++depth_count;
            }
        }
        WorldReport row;
        row.world = id;
        row.kappa = w.kappa;
        row.pi = persistence_score(w.props);
        std::size_t ones = static_cast<std::size_t>(std::count(valuation.begin(), valuation.end(), 1));
        row.access_fraction = mean_of(static_cast<double>(ones), valuation.size());
        row.entropy = entropy_of(valuation);
        row.mean_proof_depth = mean_of(depth_sum, depth_count);
        report.per_world.push_back(std::move(row));
    }
    return report;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
    switch (config.scenario_kind) {
    case ScenarioKind::Coherence: return run_coherence(config);
    case ScenarioKind::Reciprocity: return run_reciprocity(config);
    case ScenarioKind::Accessibility: return run_accessibility(config);
    }
    throw PreconditionViolation("unknown scenario kind");
}

}  // namespace eclc
