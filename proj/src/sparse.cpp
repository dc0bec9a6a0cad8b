#include "hazardscan/sparse.hpp"
#include "hazardscan/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace hazard {

bool SparseVector::is_binary() const {
    return std::all_of(entries.begin(), entries.end(), [](const SparseEntry& e) { return e.value == 1.0; });
}

void check_invariants(const SparseVector& x) {
    for (std::size_t i = 0; i < x.entries.size(); ++i) {
        const auto& e = x.entries[i];
        if (e.index >= x.dimension)
            throw Error(fmt::format("sparse vector: index {} outside dimension {}", e.index, x.dimension));
        if (i > 0 && x.entries[i - 1].index >= e.index)
            throw Error("sparse vector: indices are not strictly increasing");
        if (!std::isfinite(e.value) || e.value < 0.0)
            throw Error(fmt::format("sparse vector: invalid value {} at index {}", e.value, e.index));
    }
}

double dot(std::span<const double> theta, const SparseVector& x) {
    if (theta.size() != x.dimension)
        throw Error(fmt::format("dimension mismatch: model has {} features, vector has {}", theta.size(), x.dimension));
    double sum = 0.0;
    for (const auto& e : x.entries) sum += theta[e.index] * e.value;
    return sum;
}

} // namespace hazard
