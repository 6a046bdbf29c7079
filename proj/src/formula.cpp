#include "eclc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace eclc {

struct Formula::Node {
    Kind kind = Kind::Atom;
    std::string name;
    std::vector<std::string> args;
    bool coherent = false;
    double budget = 0.0;
    std::vector<Formula> children;  // 2 for binary, 1 for ! and <r>
    int height = 0;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string kEmptyName;
const std::vector<std::string> kNoArgs;

}  // namespace

bool is_identifier(std::string_view text) noexcept {
    if (text.empty()) return false;
    auto head = static_cast<unsigned char>(text.front());
    if (!std::isalpha(head) && head != '_') return false;
    return std::all_of(text.begin() + 1, text.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

Formula Formula::atom(std::string name, std::vector<std::string> args, bool coherent) {
    if (!is_identifier(name)) throw std::invalid_argument("atom name must be an identifier: '" + name + "'");
    for (const auto& arg : args)
        if (!is_identifier(arg)) throw std::invalid_argument("atom argument must be an identifier: '" + arg + "'");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Atom;
    std::size_t h = mix(std::hash<std::string>{}(name), coherent ? 1 : 2);
    for (const auto& arg : args) h = mix(h, std::hash<std::string>{}(arg));
    node->hash = h;
    node->name = std::move(name);
    node->args = std::move(args);
    node->coherent = coherent;
    return Formula(std::move(node));
}

Formula Formula::tensor(Formula left, Formula right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Tensor;
    node->height = std::max(left.height(), right.height()) + 1;
    node->hash = mix(mix(11, left.hash()), right.hash());
    node->children = {std::move(left), std::move(right)};
    return Formula(std::move(node));
}

Formula Formula::lolli(Formula left, Formula right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Lolli;
    node->height = std::max(left.height(), right.height()) + 1;
    node->hash = mix(mix(13, left.hash()), right.hash());
    node->children = {std::move(left), std::move(right)};
    return Formula(std::move(node));
}

Formula Formula::with(Formula left, Formula right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::With;
    node->height = std::max(left.height(), right.height()) + 1;
    node->hash = mix(mix(17, left.hash()), right.hash());
    node->children = {std::move(left), std::move(right)};
    return Formula(std::move(node));
}

Formula Formula::bang(Formula inner) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Bang;
    node->height = inner.height() + 1;
    node->hash = mix(19, inner.hash());
    node->children = {std::move(inner)};
    return Formula(std::move(node));
}

Formula Formula::diamond(double budget, Formula inner) {
    if (!std::isfinite(budget) || budget < 0.0)
        throw std::invalid_argument("diamond budget must be a finite nonnegative real");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Diamond;
    node->budget = budget;
    node->height = inner.height() + 1;
    node->hash = mix(mix(23, inner.hash()), std::hash<double>{}(budget));
    node->children = {std::move(inner)};
    return Formula(std::move(node));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_binary() const noexcept {
    auto k = kind();
    return k == Kind::Tensor || k == Kind::Lolli || k == Kind::With;
}

const std::string& Formula::name() const noexcept { return is_atom() ? node_->name : kEmptyName; }
const std::vector<std::string>& Formula::args() const noexcept { return is_atom() ? node_->args : kNoArgs; }
bool Formula::coherent_flag() const noexcept { return is_atom() && node_->coherent; }
double Formula::budget() const noexcept { return node_->budget; }
int Formula::height() const noexcept { return node_->height; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

const Formula& Formula::left() const {
    if (!is_binary()) throw std::logic_error("left() on a non-binary formula");
    return node_->children[0];
}

const Formula& Formula::right() const {
    if (!is_binary()) throw std::logic_error("right() on a non-binary formula");
    return node_->children[1];
}

const Formula& Formula::inner() const {
    if (kind() != Kind::Bang && kind() != Kind::Diamond)
        throw std::logic_error("inner() on a formula without a body");
    return node_->children[0];
}

bool operator==(const Formula& a, const Formula& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (&x == &y) return std::strong_ordering::equal;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    switch (x.kind) {
    case Formula::Kind::Atom:
        if (auto c = x.name <=> y.name; c != 0) return c;
        if (auto c = x.args <=> y.args; c != 0) return c;
        return x.coherent <=> y.coherent;
    case Formula::Kind::Diamond:
        if (x.budget < y.budget) return std::strong_ordering::less;
        if (x.budget > y.budget) return std::strong_ordering::greater;
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

void CostModel::validate() const {
    if (!(default_cost >= 0.0)) throw std::invalid_argument("default cost must be nonnegative");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be a finite nonnegative real");
    for (const auto& [atom, cost] : atom_costs)
        if (!(cost >= 0.0)) throw std::invalid_argument("cost of '" + atom + "' must be nonnegative");
}

int coherence(const Formula& phi) noexcept {
    switch (phi.kind()) {
    case Formula::Kind::Atom:
        return phi.coherent_flag() ? 1 : 0;
    case Formula::Kind::Bang:
    case Formula::Kind::Diamond:
        return coherence(phi.inner());
    default:
        return coherence(phi.left()) & coherence(phi.right());
    }
}

double base_cost(const Formula& phi, const CostModel& model) {
    switch (phi.kind()) {
    case Formula::Kind::Atom: {
        auto it = model.atom_costs.find(phi.name());
        return it == model.atom_costs.end() ? model.default_cost : it->second;
    }
    case Formula::Kind::Tensor:
    case Formula::Kind::Lolli:
        return base_cost(phi.left(), model) + base_cost(phi.right(), model);
    case Formula::Kind::With:
        return std::max(base_cost(phi.left(), model), base_cost(phi.right(), model));
    case Formula::Kind::Bang:
    case Formula::Kind::Diamond:
        return base_cost(phi.inner(), model);
    }
    return 0.0;
}

double curvature_cost(const Formula& phi, const CostModel& model, double kappa) {
    if (!(kappa >= 0.0)) throw std::invalid_argument("curvature must be nonnegative");
    return base_cost(phi, model) * (1.0 + model.alpha * kappa);
}

double base_cost_sum(std::span<const Formula> formulas, const CostModel& model) {
    double total = 0.0;
    for (const auto& f : formulas) total += base_cost(f, model);
    return total;
}

Formula decohere(const Formula& phi) {
    switch (phi.kind()) {
    case Formula::Kind::Atom:
        if (!phi.coherent_flag()) return phi;
        return Formula::atom("Decohered_" + phi.name(), phi.args(), false);
    case Formula::Kind::Tensor:
        return Formula::tensor(decohere(phi.left()), decohere(phi.right()));
    case Formula::Kind::Lolli:
        return Formula::lolli(decohere(phi.left()), decohere(phi.right()));
    case Formula::Kind::With:
        return Formula::with(decohere(phi.left()), decohere(phi.right()));
    case Formula::Kind::Bang:
        return Formula::bang(decohere(phi.inner()));
    case Formula::Kind::Diamond:
        return Formula::diamond(phi.budget(), decohere(phi.inner()));
    }
    return phi;
}

}  // namespace eclc
