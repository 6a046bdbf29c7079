#include "eclc/calculus.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <unordered_map>

#include "eclc/errors.hpp"
#include "eclc/syntax.hpp"

namespace eclc {

std::string_view to_string(FailureReason reason) noexcept {
    switch (reason) {
    case FailureReason::DepthExceeded: return "depth_exceeded";
    case FailureReason::NoRuleApplies: return "no_rule_applies";
    case FailureReason::CostInvalid: return "cost_invalid";
    }
    return "unknown";
}

unsigned Derivation::height() const noexcept {
    unsigned tallest = 0;
    for (const auto& p : premises) tallest = std::max(tallest, p.height());
    return tallest + 1;
}

bool cost_valid(const Sequent& seq, const CostModel& model, double kappa) {
    if (!(kappa >= 0.0)) throw std::invalid_argument("curvature must be nonnegative");
    return base_cost_sum(seq.gamma, model) >= base_cost_sum(seq.delta, model);
}

namespace {

using Multiset = std::vector<Formula>;

bool is_atomic(const Formula& f) {
    return f.kind() == Formula::Kind::Atom || f.kind() == Formula::Kind::Diamond;
}

Multiset without(const Multiset& m, std::size_t index) {
    Multiset out;
    out.reserve(m.size() - 1);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (i != index) out.push_back(m[i]);
    return out;
}

Multiset with_added(Multiset m, std::initializer_list<Formula> extra) {
    for (const auto& f : extra) m.insert(std::upper_bound(m.begin(), m.end(), f), f);
    return m;
}

struct Node {
    std::string_view rule;
    Multiset gamma;
    Multiset delta;
    std::vector<std::shared_ptr<const Node>> premises;
    unsigned height = 1;
};
using NodePtr = std::shared_ptr<const Node>;

struct SequentKey {
    Multiset gamma;
    Multiset delta;
    friend bool operator==(const SequentKey&, const SequentKey&) = default;
};

struct SequentKeyHash {
    std::size_t operator()(const SequentKey& k) const noexcept {
        std::size_t h = k.gamma.size() * 31 + k.delta.size();
        for (const auto& f : k.gamma) h = h * 1000003u ^ f.hash();
        h ^= 0x51ed270b;
        for (const auto& f : k.delta) h = h * 1000003u ^ f.hash();
        return h;
    }
};

struct MemoEntry {
    unsigned failed_upto = 0;  // unprovable with any budget ≤ this
    bool exhausted = false;    // unprovable with any budget at all
    NodePtr proof;
};

/// Enumerates every split of a sorted multiset into (first, second), taking
/// 0..count copies of each distinct element from left to right.
class Splits {
public:
    explicit Splits(const Multiset& m) {
        for (std::size_t i = 0; i < m.size();) {
            std::size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            groups_.push_back({i, j - i});
            i = j;
        }
        taken_.assign(groups_.size(), 0);
    }

    // Returns false once every split has been visited.
    template <typename Fn>
    bool for_each(const Multiset& m, Fn&& fn) {
        return visit(m, 0, fn);
    }

private:
    struct Group {
        std::size_t start;
        std::size_t count;
    };

    template <typename Fn>
    bool visit(const Multiset& m, std::size_t g, Fn& fn) {
        if (g == groups_.size()) {
            Multiset first, second;
            for (std::size_t k = 0; k < groups_.size(); ++k) {
                for (std::size_t c = 0; c < groups_[k].count; ++c)
                    (c < taken_[k] ? first : second).push_back(m[groups_[k].start]);
            }
            return fn(first, second);
        }
        for (std::size_t take = 0; take <= groups_[g].count; ++take) {
            taken_[g] = take;
            if (!visit(m, g + 1, fn)) return false;
        }
        return true;
    }

    std::vector<Group> groups_;
    std::vector<std::size_t> taken_;
};

class Search {
public:
    explicit Search(unsigned contraction_cap) : contraction_cap_(contraction_cap) {}

    NodePtr solve(const Multiset& g, const Multiset& d, unsigned budget, unsigned contractions) {
        SequentKey key{g, d};
        auto& entry = memo_[key];
        if (entry.proof && entry.proof->height <= budget) return entry.proof;
        if (entry.exhausted) return nullptr;
        if (entry.failed_upto >= budget) {
            hit_bound_ = true;
            return nullptr;
        }

        const bool outer_hit = hit_bound_;
        hit_bound_ = false;
        NodePtr found = expand(g, d, budget, contractions);
        const bool local_hit = hit_bound_;
        hit_bound_ = outer_hit || local_hit;

        auto& slot = memo_[key];
        if (found) {
            slot.proof = found;
        } else if (!local_hit) {
            slot.exhausted = true;
        } else {
            slot.failed_upto = std::max(slot.failed_upto, budget);
        }
        return found;
    }

    bool hit_bound() const noexcept { return hit_bound_; }
    void clear_hit_bound() noexcept { hit_bound_ = false; }

private:
    static NodePtr leaf(std::string_view rule, const Multiset& g, const Multiset& d) {
        return std::make_shared<Node>(Node{rule, g, d, {}, 1});
    }

    static NodePtr join(std::string_view rule, const Multiset& g, const Multiset& d, std::vector<NodePtr> premises) {
        unsigned tallest = 0;
        for (const auto& p : premises) tallest = std::max(tallest, p->height);
        return std::make_shared<Node>(Node{rule, g, d, std::move(premises), tallest + 1});
    }

    static bool has_structural_move(const Multiset& g, const Multiset& d) {
        if (d.size() >= 2) return true;
        if (d.size() == 1) {
            auto k = d[0].kind();
            if (k == Formula::Kind::Tensor || k == Formula::Kind::Lolli || k == Formula::Kind::With) return true;
            if (k == Formula::Kind::Bang &&
                std::all_of(g.begin(), g.end(), [](const Formula& f) { return f.kind() == Formula::Kind::Bang; }))
                return true;
        }
        return std::any_of(g.begin(), g.end(), [](const Formula& f) { return !is_atomic(f); });
    }

    NodePtr expand(const Multiset& g, const Multiset& d, unsigned budget, unsigned contractions) {
        if (budget == 0) {
            hit_bound_ = true;
            return nullptr;
        }
        // identity
        if (g.size() == 1 && d.size() == 1 && is_atomic(g[0]) && g[0] == d[0]) return leaf("identity", g, d);
        // one-right
        if (g.empty() && d.empty()) return leaf("one-right", g, d);

        if (budget == 1) {
            if (has_structural_move(g, d)) hit_bound_ = true;
            return nullptr;
        }
        const unsigned below = budget - 1;

        // tensor-right: split Γ between the two halves of a single tensor
        // goal, or between the first goal and the rest of a multi-goal Δ.
        if (d.size() >= 2 || (d.size() == 1 && d[0].kind() == Formula::Kind::Tensor)) {
            Multiset d1, d2;
            if (d.size() >= 2) {
                d1 = {d[0]};
                d2.assign(d.begin() + 1, d.end());
            } else {
                d1 = {d[0].left()};
                d2 = {d[0].right()};
            }
            NodePtr result;
            Splits(g).for_each(g, [&](const Multiset& g1, const Multiset& g2) {
                NodePtr a = solve(g1, d1, below, contractions);
                if (!a) return true;
                NodePtr b = solve(g2, d2, below, contractions);
                if (!b) return true;
                result = join("tensor-right", g, d, {a, b});
                return false;
            });
            if (result) return result;
        }

        // tensor-left
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].kind() != Formula::Kind::Tensor || (i > 0 && g[i] == g[i - 1])) continue;
            auto rest = with_added(without(g, i), {g[i].left(), g[i].right()});
            if (auto p = solve(rest, d, below, contractions)) return join("tensor-left", g, d, {p});
        }

        // lolli-right
        if (d.size() == 1 && d[0].kind() == Formula::Kind::Lolli) {
            auto extended = with_added(g, {d[0].left()});
            if (auto p = solve(extended, {d[0].right()}, below, contractions)) return join("lolli-right", g, d, {p});
        }

        // lolli-left: Γ1 ⊢ A and Γ2, B ⊢ Δ
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].kind() != Formula::Kind::Lolli || (i > 0 && g[i] == g[i - 1])) continue;
            const Formula& lolli = g[i];
            Multiset rest = without(g, i);
            NodePtr result;
            Splits(rest).for_each(rest, [&](const Multiset& g1, const Multiset& g2) {
                NodePtr a = solve(g1, {lolli.left()}, below, contractions);
                if (!a) return true;
                NodePtr b = solve(with_added(g2, {lolli.right()}), d, below, contractions);
                if (!b) return true;
                result = join("lolli-left", g, d, {a, b});
                return false;
            });
            if (result) return result;
        }

        // with-right
        if (d.size() == 1 && d[0].kind() == Formula::Kind::With) {
            if (auto a = solve(g, {d[0].left()}, below, contractions))
                if (auto b = solve(g, {d[0].right()}, below, contractions)) return join("with-right", g, d, {a, b});
        }

        // with-left-1, with-left-2
        for (int side = 0; side < 2; ++side) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g[i].kind() != Formula::Kind::With || (i > 0 && g[i] == g[i - 1])) continue;
                const Formula& pick = side == 0 ? g[i].left() : g[i].right();
                if (auto p = solve(with_added(without(g, i), {pick}), d, below, contractions))
                    return join(side == 0 ? "with-left-1" : "with-left-2", g, d, {p});
            }
        }

        // dereliction
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].kind() != Formula::Kind::Bang || (i > 0 && g[i] == g[i - 1])) continue;
            if (auto p = solve(with_added(without(g, i), {g[i].inner()}), d, below, contractions))
                return join("dereliction", g, d, {p});
        }

        // contraction
        if (contractions < contraction_cap_) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g[i].kind() != Formula::Kind::Bang || (i > 0 && g[i] == g[i - 1])) continue;
                if (auto p = solve(with_added(g, {g[i]}), d, below, contractions + 1))
                    return join("contraction", g, d, {p});
            }
        }

        // weakening
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].kind() != Formula::Kind::Bang || (i > 0 && g[i] == g[i - 1])) continue;
            if (auto p = solve(without(g, i), d, below, contractions)) return join("weakening", g, d, {p});
        }

        // promotion: !Γ ⊢ !A from !Γ ⊢ A
        if (d.size() == 1 && d[0].kind() == Formula::Kind::Bang &&
            std::all_of(g.begin(), g.end(), [](const Formula& f) { return f.kind() == Formula::Kind::Bang; })) {
            if (auto p = solve(g, {d[0].inner()}, below, contractions)) return join("promotion", g, d, {p});
        }
        return nullptr;
    }

    unsigned contraction_cap_;
    bool hit_bound_ = false;
    std::unordered_map<SequentKey, MemoEntry, SequentKeyHash> memo_;
};

Derivation to_derivation(const Node& node) {
    Derivation out{std::string(node.rule), Sequent{node.gamma, node.delta}, {}};
    out.premises.reserve(node.premises.size());
    for (const auto& p : node.premises) out.premises.push_back(to_derivation(*p));
    return out;
}

}  // namespace

ProofResult prove(const Sequent& seq, unsigned depth_bound, const CostModel& model, double kappa,
                  std::span<const Formula> laws) {
    if (depth_bound < 1) throw std::invalid_argument("depth bound must be at least 1");
    ProofResult result;
    if (!cost_valid(seq, model, kappa)) {
        result.failure_reason = FailureReason::CostInvalid;
        return result;
    }

    Multiset gamma = seq.gamma;
    for (const auto& law : laws) gamma.push_back(Formula::bang(law));
    std::sort(gamma.begin(), gamma.end());
    Multiset delta = seq.delta;
    std::sort(delta.begin(), delta.end());

    Search search(static_cast<unsigned>(gamma.size()) + depth_bound);
    for (unsigned bound = 1; bound <= depth_bound; ++bound) {
        search.clear_hit_bound();
        if (NodePtr proof = search.solve(gamma, delta, bound, 0)) {
            result.proved = true;
            result.depth = proof->height;
            result.tree = to_derivation(*proof);
            double consumed = 0.0;
            for (const auto& f : seq.gamma) consumed += curvature_cost(f, model, kappa);
            result.consumed_cost = consumed;
            return result;
        }
        if (!search.hit_bound()) break;  // exhausted: deeper bounds cannot help
    }
    result.failure_reason = search.hit_bound() ? FailureReason::DepthExceeded : FailureReason::NoRuleApplies;
    return result;
}

bool is_submultiset(std::span<const Formula> sub, std::span<const Formula> whole) {
    std::vector<bool> used(whole.size(), false);
    for (const auto& f : sub) {
        bool matched = false;
        for (std::size_t i = 0; i < whole.size(); ++i) {
            if (!used[i] && whole[i] == f) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

namespace {

TransitionOutcome run_transition(Frame& frame, const WorldId& w, const WorldId& w_prime, const Sequent& seq,
                                 const CostModel& model, unsigned extra_depth, std::span<const Formula> laws) {
    World& source = frame.world(w);
    (void)frame.world(w_prime);
    if (!is_submultiset(seq.gamma, source.props))
        throw PreconditionViolation("transition " + w + " -> " + w_prime +
                                    ": antecedent is not available in the source world");

    TransitionOutcome out;
    out.accessible = accessible(frame, w, w_prime);
    out.proof = prove(seq, source.lambda, model, source.kappa, laws);
    out.source_remainder = source.props;
    if (out.proof.proved) {
        out.required_depth = out.proof.depth + extra_depth;
        if (out.required_depth > source.lambda) {
            out.proof.proved = false;
            out.proof.tree.reset();
            out.proof.consumed_cost = 0.0;
            out.proof.failure_reason = FailureReason::DepthExceeded;
        }
    }
    out.valid = out.accessible && out.proof.proved;
    if (!out.valid) return out;

    // Commit: consume Γ at w, deliver Δ to w', spend ΔE.
    for (const auto& f : seq.gamma) {
        auto it = std::find(source.props.begin(), source.props.end(), f);
        source.props.erase(it);
    }
    out.source_remainder = source.props;
    out.energy_spent = frame.find_edge(w, w_prime)->delta_e;
    source.energy -= out.energy_spent;
    World& target = frame.world(w_prime);
    target.props.insert(target.props.end(), seq.delta.begin(), seq.delta.end());
    out.target_additions = seq.delta;
    return out;
}

}  // namespace

TransitionOutcome transition(Frame& frame, const WorldId& w, const WorldId& w_prime, const Sequent& seq,
                             const CostModel& model, unsigned extra_depth) {
    return run_transition(frame, w, w_prime, seq, model, extra_depth, frame.laws());
}

Formula quantum_state(const std::string& psi) { return Formula::atom("Quantum", {psi}, true); }

Formula classical_outcome(const std::string& outcome) { return Formula::atom("Classical", {outcome}, false); }

TransitionOutcome measure(Frame& frame, const WorldId& w, const WorldId& w_prime, const std::string& psi,
                          const std::string& outcome, const CostModel& model, unsigned extra_depth) {
    const Formula banged = Formula::bang(quantum_state(psi));
    const auto& props = frame.world(w).props;
    (void)frame.world(w_prime);
    if (std::find(props.begin(), props.end(), banged) == props.end())
        throw PreconditionViolation("measure: !Quantum(" + psi + ") is not present in world '" + w + "'");
    std::vector<Formula> laws = frame.laws();
    laws.push_back(Formula::lolli(quantum_state(psi), classical_outcome(outcome)));
    Sequent seq{{banged}, {classical_outcome(outcome)}};
    return run_transition(frame, w, w_prime, seq, model, extra_depth, laws);
}

std::string format_sequent(const Sequent& seq) {
    auto side = [](const std::vector<Formula>& formulas) {
        std::string out;
        for (std::size_t i = 0; i < formulas.size(); ++i) {
            if (i) out += ", ";
            out += format_formula(formulas[i]);
        }
        return out;
    };
    std::string lhs = side(seq.gamma);
    std::string rhs = side(seq.delta);
    return lhs + (lhs.empty() ? "|-" : " |-") + (rhs.empty() ? "" : " " + rhs);
}

std::string render_derivation(const Derivation& tree) {
    std::string out;
    std::function<void(const Derivation&, int)> walk = [&](const Derivation& node, int level) {
        out.append(static_cast<std::size_t>(level) * 2, ' ');
        out += node.rule;
        out += "  ";
        out += format_sequent(node.conclusion);
        out += '\n';
        for (const auto& p : node.premises) walk(p, level + 1);
    };
    walk(tree, 0);
    return out;
}

}  // namespace eclc
