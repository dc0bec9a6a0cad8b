#include "hazardscan/pu_train.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/log.hpp"
#include "hazardscan/vocabulary.hpp"

#include <ostream>
#include <random>

#include <fmt/format.h>

namespace hazard {

void validate(const PUConfig& cfg) {
    if (cfg.tau && (*cfg.tau < 1 || *cfg.tau > 5)) throw Error(fmt::format("tau: {} is outside 1..5", *cfg.tau));
}

std::vector<std::size_t> eligible_negatives(const Corpus& unlabeled, std::optional<int> tau) {
    std::vector<std::size_t> pool;
    pool.reserve(unlabeled.size());
    for (std::size_t i = 0; i < unlabeled.size(); ++i) {
        const auto& rating = unlabeled.documents[i].star_rating;
        if (!tau || (rating && *rating >= *tau)) pool.push_back(i);
    }
    return pool;
}

std::vector<std::size_t> sample_without_replacement(std::span<const std::size_t> pool, std::size_t count,
                                                    std::uint64_t seed) {
    std::vector<std::size_t> items(pool.begin(), pool.end());
    count = std::min(count, items.size());
    std::mt19937_64 rng(seed);
    // partial Fisher-Yates
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, items.size() - 1);
        std::swap(items[i], items[pick(rng)]);
    }
    items.resize(count);
    return items;
}

TrainingSet build_training_set(const Corpus& positives, std::span<const SparseVector> positive_rows,
                               const Corpus& unlabeled, std::span<const SparseVector> unlabeled_rows,
                               const PUConfig& cfg) {
    validate(cfg);
    if (positives.kind != CorpusKind::positive_labeled)
        throw Error("build_training_set: first corpus must be positive-labeled");
    if (unlabeled.kind != CorpusKind::unlabeled) throw Error("build_training_set: second corpus must be unlabeled");
    if (positives.empty()) throw Error("build_training_set: positive corpus is empty");
    if (positive_rows.size() != positives.size() || unlabeled_rows.size() != unlabeled.size())
        throw Error("build_training_set: vectorized rows do not match the corpora");

    const auto pool = eligible_negatives(unlabeled, cfg.tau);
    if (pool.size() < cfg.num_negatives)
        warn(fmt::format("only {} reviews are eligible as negatives (requested {}); using all of them", pool.size(),
                         cfg.num_negatives));
    const auto picked = sample_without_replacement(pool, cfg.num_negatives, cfg.seed);

    const std::size_t p = positives.size();
    const std::size_t n = picked.size();
    const ClassWeights w = n > 0 ? class_weights(p, n) : ClassWeights{1.0, 1.0};

    TrainingSet set;
    set.positives = p;
    set.data.dimension = positive_rows.empty() ? 0 : positive_rows.front().dimension;
    for (const auto& x : positive_rows) set.data.add(x, 1, w.positive);
    set.sampled_ids.reserve(n);
    for (auto i : picked) {
        set.data.add(unlabeled_rows[i], 0, w.negative);
        set.sampled_ids.push_back(unlabeled.documents[i].id);
    }
    set.sampled_rows = picked;
    return set;
}

TrainingSet build_training_set(const Corpus& positives, const Corpus& unlabeled, const Vocabulary& vocab,
                               const PUConfig& cfg) {
    const auto prows = vectorize_corpus(positives, vocab);
    const auto urows = vectorize_corpus(unlabeled, vocab);
    return build_training_set(positives, prows, unlabeled, urows, cfg);
}

void write_sampled_ids(std::ostream& out, const TrainingSet& set) {
    for (const auto& id : set.sampled_ids) out << id << '\n';
}

} // namespace hazard
