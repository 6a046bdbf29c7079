#include "eclc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eclc/errors.hpp"

namespace eclc {

double persistence_score(std::span<const Formula> gamma) {
    if (gamma.empty()) return 1.0;
    std::size_t coherent = 0;
    for (const auto& f : gamma) coherent += static_cast<std::size_t>(coherence(f));
    return static_cast<double>(coherent) / static_cast<double>(gamma.size());
}

double shannon_entropy(std::span<const int> bits) {
    if (bits.empty()) throw std::invalid_argument("entropy of an empty valuation vector");
    std::size_t ones = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("valuation vector entries must be 0 or 1");
        ones += static_cast<std::size_t>(b);
    }
    const double p = static_cast<double>(ones) / static_cast<double>(bits.size());
    auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
    return term(p) + term(1.0 - p);
}

FitResult fit_exponential(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw DegenerateInput("exponential fit needs at least two points");
    double sxy = 0.0, sxx = 0.0, mean_log = 0.0;
    for (const auto& [kappa, pi] : points) {
        if (!(pi > 0.0)) throw DegenerateInput("exponential fit needs pi > 0");
        const double y = std::log(pi);
        sxy += kappa * y;
        sxx += kappa * kappa;
        mean_log += y;
    }
    if (sxx == 0.0) throw DegenerateInput("exponential fit needs at least one nonzero kappa");
    mean_log /= static_cast<double>(points.size());

    FitResult fit;
    fit.rate = -sxy / sxx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& [kappa, pi] : points) {
        const double y = std::log(pi);
        const double r = y + fit.rate * kappa;
        ss_res += r * r;
        ss_tot += (y - mean_log) * (y - mean_log);
    }
    if (ss_tot == 0.0)
        fit.r_squared = ss_res == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
    else
        fit.r_squared = 1.0 - ss_res / ss_tot;
    return fit;
}

namespace {

double log_choose(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

double fisher_exact_two_tailed(const ContingencyTable& t) {
    const std::uint64_t row1 = t.a + t.b;
    const std::uint64_t row2 = t.c + t.d;
    const std::uint64_t col1 = t.a + t.c;
    const std::uint64_t n = row1 + row2;
    if (n == 0) throw std::invalid_argument("Fisher test on an empty table");

    // P(a = x) under fixed margins: C(row1, x) C(row2, col1 - x) / C(n, col1).
    const double log_denominator = log_choose(n, col1);
    auto log_p = [&](std::uint64_t x) {
        return log_choose(row1, x) + log_choose(row2, col1 - x) - log_denominator;
    };

    const std::uint64_t lo = col1 > row2 ? col1 - row2 : 0;
    const std::uint64_t hi = std::min(row1, col1);
    const double observed = log_p(t.a);
    const double threshold = observed + std::log1p(1e-9);

    double total = 0.0;
    for (std::uint64_t x = lo; x <= hi; ++x) {
        const double lp = log_p(x);
        if (lp <= threshold) total += std::exp(lp);
    }
    return std::min(1.0, total);
}

}  // namespace eclc
