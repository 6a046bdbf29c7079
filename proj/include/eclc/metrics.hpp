#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eclc/formula.hpp"

namespace eclc {

struct FitResult {
    double rate = 0.0;
    double r_squared = 0.0;

    friend bool operator==(const FitResult&, const FitResult&) = default;
};

/// 2×2 table [[a, b], [c, d]].
struct ContingencyTable {
    std::uint64_t a = 0, b = 0, c = 0, d = 0;
};

/// Fraction of coherent formulas; 1.0 for an empty multiset.
double persistence_score(std::span<const Formula> gamma);

/// Binary Shannon entropy (bits) of the fraction of ones.
/// Throws std::invalid_argument on empty input.
double shannon_entropy(std::span<const int> bits);

/// Least squares for ln π = −rate·κ (no intercept), R² in log space.
/// Throws DegenerateInput for fewer than two points, Σκ² = 0 or any π ≤ 0.
FitResult fit_exponential(std::span<const std::pair<double, double>> points);

/// Two-tailed Fisher exact test: sums the probabilities of all tables with
/// the observed margins that are no more likely than the observed one
/// (relative tie tolerance 1e-9). Throws std::invalid_argument for an
/// all-zero table.
double fisher_exact_two_tailed(const ContingencyTable& t);

}  // namespace eclc
