#pragma once

#include "hazardscan/corpus.hpp"
#include "hazardscan/linmodel.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hazard {

class Vocabulary;

struct PUConfig {
    /// Minimum star rating for a review to be sampled as a negative; nullopt
    /// disables the filter.
    std::optional<int> tau = 5;
    /// Number of negatives to sample.
    std::size_t num_negatives = 20000;
    std::uint64_t seed = 0;
};

void validate(const PUConfig& cfg);

/// All complaints as label-1 rows followed by the sampled reviews as label-0
/// rows, weighted by inverse class frequency.
struct TrainingSet {
    WeightedDataset data;
    std::size_t positives = 0;
    /// Ids of the reviews drawn as negatives, in draw order.
    std::vector<std::string> sampled_ids;
    /// Positions in the unlabeled corpus, parallel to sampled_ids.
    std::vector<std::size_t> sampled_rows;
};

/// Indices of reviews eligible as negatives under `tau`. Reviews without a
/// rating are ineligible whenever a threshold is set.
std::vector<std::size_t> eligible_negatives(const Corpus& unlabeled, std::optional<int> tau);

/// Uniform sample of min(count, pool.size()) elements without replacement.
std::vector<std::size_t> sample_without_replacement(std::span<const std::size_t> pool, std::size_t count,
                                                    std::uint64_t seed);

TrainingSet build_training_set(const Corpus& positives, const Corpus& unlabeled, const Vocabulary& vocab,
                               const PUConfig& cfg);

/// Same as above with both corpora already vectorized (rows parallel to the
/// corpus documents).
TrainingSet build_training_set(const Corpus& positives, std::span<const SparseVector> positive_rows,
                               const Corpus& unlabeled, std::span<const SparseVector> unlabeled_rows,
                               const PUConfig& cfg);

/// One sampled review id per line.
void write_sampled_ids(std::ostream& out, const TrainingSet& set);

} // namespace hazard
