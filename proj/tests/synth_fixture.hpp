#pragma once

// Default-size synthetic corpora and their fitted pipelines, built once per
// seed and shared by every test that needs them.

#include "hazardscan/evalharness.hpp"
#include "hazardscan/informed_prior.hpp"
#include "hazardscan/synthgen.hpp"
#include "hazardscan/vocabulary.hpp"

#include <map>
#include <memory>

namespace fixture {

struct Pipeline {
    hazard::SynthCorpus corpus;
    hazard::Vocabulary vocab;
    hazard::ExperimentData data;
    hazard::InformedFit fit;
};

inline const Pipeline& default_pipeline(std::uint64_t seed) {
    static std::map<std::uint64_t, std::unique_ptr<Pipeline>> cache;
    auto& slot = cache[seed];
    if (!slot) {
        hazard::SynthConfig cfg;
        cfg.seed = seed;
        auto p = std::make_unique<Pipeline>();
        p->corpus = hazard::generate(cfg);
        p->vocab = hazard::build_vocabulary(p->corpus.reviews, {});
        p->data = hazard::ExperimentData::prepare(p->corpus.complaints, p->corpus.reviews, p->corpus.eval, p->vocab);
        p->fit = hazard::fit_informed(p->corpus.complaints, p->data.positive_rows, p->corpus.reviews,
                                      p->data.unlabeled_rows, {5, 20000, seed}, {});
        slot = std::move(p);
    }
    return *slot;
}

} // namespace fixture
