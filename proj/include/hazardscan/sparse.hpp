#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hazard {

using FeatureIndex = std::uint32_t;

struct SparseEntry {
    FeatureIndex index;
    double value;

    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Feature vector over a fixed vocabulary. Entries are sorted by index with no
/// repeats; values are finite and non-negative.
struct SparseVector {
    std::vector<SparseEntry> entries;
    std::size_t dimension = 0;

    std::size_t nnz() const { return entries.size(); }
    bool empty() const { return entries.empty(); }

    /// True when every stored value is exactly 1.
    bool is_binary() const;

    friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Throws hazard::Error when the sorted/finite/non-negative invariants fail.
void check_invariants(const SparseVector& x);

/// theta . x; theta.size() must equal x.dimension.
double dot(std::span<const double> theta, const SparseVector& x);

} // namespace hazard
