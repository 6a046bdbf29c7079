#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eclc {

/// Immutable linear-logic formula tree.
///
/// Connectives: atoms (with a coherence flag), tensor (⊗), linear
/// implication (⊸), additive conjunction (&), the exponential (!) and the
/// resource-bounded diamond <r>. Nodes are shared, so copies are cheap and
/// a Formula can be handed across threads freely.
///
/// Equality and ordering are structural. The coherence flag and the diamond
/// budget take part in both.
class Formula {
public:
    enum class Kind { Atom, Tensor, Lolli, With, Bang, Diamond };

    static Formula atom(std::string name, std::vector<std::string> args = {}, bool coherent = true);
    static Formula tensor(Formula left, Formula right);
    static Formula lolli(Formula left, Formula right);
    static Formula with(Formula left, Formula right);
    static Formula bang(Formula inner);
    static Formula diamond(double budget, Formula inner);

    Kind kind() const noexcept;
    bool is_atom() const noexcept { return kind() == Kind::Atom; }
    bool is_binary() const noexcept;

    // Atom accessors. Empty/false for non-atoms.
    const std::string& name() const noexcept;
    const std::vector<std::string>& args() const noexcept;
    bool coherent_flag() const noexcept;

    // Binary connectives.
    const Formula& left() const;
    const Formula& right() const;
    // Bang and Diamond.
    const Formula& inner() const;
    double budget() const noexcept;

    /// Number of connectives on the longest root-to-leaf path (atoms are 0).
    int height() const noexcept;
    std::size_t hash() const noexcept;

    friend bool operator==(const Formula& a, const Formula& b) noexcept;
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Per-atom base costs plus the curvature coupling α.
struct CostModel {
    std::map<std::string, double> atom_costs;
    double default_cost = 0.0;
    double alpha = 0.75;

    /// Throws std::invalid_argument on negative costs or alpha.
    void validate() const;

    friend bool operator==(const CostModel&, const CostModel&) = default;
};

/// 1 iff every atomic leaf of `phi` is flagged coherent.
int coherence(const Formula& phi) noexcept;

/// Atom: table lookup (default_cost when absent); ⊗ and ⊸ add their
/// subcosts; & takes the larger branch; ! and <r> pass the inner cost through.
double base_cost(const Formula& phi, const CostModel& model);

/// c(φ)·(1 + α·κ). Throws std::invalid_argument for κ < 0.
double curvature_cost(const Formula& phi, const CostModel& model, double kappa);

double base_cost_sum(std::span<const Formula> formulas, const CostModel& model);

/// Copy of `phi` with every atom renamed `Decohered_<name>` and flagged
/// non-coherent. Atoms that are already non-coherent are left unchanged.
Formula decohere(const Formula& phi);

bool is_identifier(std::string_view text) noexcept;

}  // namespace eclc
