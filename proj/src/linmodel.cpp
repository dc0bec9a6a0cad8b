#include "hazardscan/linmodel.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace hazard {

namespace {

void check_dataset(const WeightedDataset& data) {
    if (data.empty()) throw Error("training data is empty");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.rows[i].dimension != data.dimension)
            throw Error(fmt::format("row {}: dimension {} differs from dataset dimension {}", i,
                                    data.rows[i].dimension, data.dimension));
        if (data.labels[i] != 0 && data.labels[i] != 1) throw Error(fmt::format("row {}: label must be 0 or 1", i));
        if (!(data.weights[i] > 0.0) || !std::isfinite(data.weights[i]))
            throw Error(fmt::format("row {}: weight must be positive and finite", i));
    }
}

kernels::LossGradient evaluate(std::span<const double> theta, double intercept, double lambda,
                               const WeightedDataset& data) {
    return kernels::parallel::loss_and_gradient({theta, intercept, lambda}, data.view());
}

} // namespace

void WeightedDataset::add(SparseVector x, int label, double weight) {
    if (rows.empty() && dimension == 0) dimension = x.dimension;
    if (x.dimension != dimension)
        throw Error(fmt::format("dataset: row dimension {} differs from {}", x.dimension, dimension));
    if (label != 0 && label != 1) throw Error("dataset: label must be 0 or 1");
    if (!(weight > 0.0) || !std::isfinite(weight)) throw Error("dataset: weight must be positive and finite");
    rows.push_back(std::move(x));
    labels.push_back(label);
    weights.push_back(weight);
}

std::size_t WeightedDataset::count(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

ClassWeights class_weights(std::size_t positives, std::size_t negatives) {
    if (positives == 0 || negatives == 0)
        throw Error(fmt::format("class_weights: need at least one example per class (p={}, n={})", positives, negatives));
    const double total = static_cast<double>(positives + negatives);
    return {total / (2.0 * static_cast<double>(positives)), total / (2.0 * static_cast<double>(negatives))};
}

LinearModel fit(const WeightedDataset& data, const FitParams& params, std::vector<double>* objective_trace) {
    check_dataset(data);
    if (data.count(1) == 0 || data.count(0) == 0)
        throw Error(fmt::format("fit: training data has a single class ({} positive, {} negative)", data.count(1),
                                data.count(0)));
    if (!(params.learning_rate > 0.0)) throw Error("fit: learning rate must be positive");
    if (params.epochs < 1) throw Error("fit: epochs must be at least 1");
    if (!(params.lambda >= 0.0)) throw Error("fit: lambda must be non-negative");

    const std::size_t k = data.dimension;
    std::vector<double> theta(k, 0.0), candidate(k, 0.0);
    double intercept = 0.0;

    auto current = evaluate(theta, intercept, params.lambda, data);
    if (!std::isfinite(current.loss)) throw Error("fit: non-finite loss at epoch 0");
    if (objective_trace) objective_trace->assign(1, current.loss);

    constexpr int max_halvings = 60;
    double step = params.learning_rate;
    for (int epoch = 1; epoch <= params.epochs; ++epoch) {
        kernels::LossGradient next;
        double next_intercept = intercept;
        int halvings = 0;
        for (;;) {
            for (std::size_t j = 0; j < k; ++j) candidate[j] = theta[j] - step * current.grad[j];
            next_intercept = intercept - step * current.grad[k];
            next = evaluate(candidate, next_intercept, params.lambda, data);
            if (next.loss <= current.loss) break;
            if (++halvings > max_halvings) {
                if (!std::isfinite(next.loss)) throw Error(fmt::format("fit: non-finite loss at epoch {}", epoch));
                next = current;  // no descent direction left at machine precision
                candidate = theta;
                next_intercept = intercept;
                break;
            }
            step *= 0.5;
        }
        const double improvement = current.loss - next.loss;
        theta.swap(candidate);
        intercept = next_intercept;
        current = std::move(next);
        if (objective_trace) objective_trace->push_back(current.loss);
        if (improvement < params.tolerance) break;
    }

    LinearModel model;
    model.theta = std::move(theta);
    model.intercept = intercept;
    model.lambda = params.lambda;
    model.trained = true;
    return model;
}

double predict_proba(const LinearModel& model, const SparseVector& x) {
    return sigmoid(dot(model.theta, x) + model.intercept);
}

std::vector<double> predict_proba(const LinearModel& model, std::span<const SparseVector> rows) {
    for (const auto& x : rows)
        if (x.dimension != model.dimension())
            throw Error(fmt::format("dimension mismatch: model has {} features, vector has {}", model.dimension(),
                                    x.dimension));
    auto scores = kernels::parallel::linear_scores(model.theta, model.intercept, rows);
    for (auto& s : scores) s = sigmoid(s);
    return scores;
}

kernels::LossGradient loss_and_gradient(const LinearModel& model, const WeightedDataset& data) {
    check_dataset(data);
    if (data.dimension != model.dimension())
        throw Error(fmt::format("dimension mismatch: model has {} features, data has {}", model.dimension(),
                                data.dimension));
    return evaluate(model.theta, model.intercept, model.lambda, data);
}

// Format: "#model k=K lambda=L intercept=B", then "j<TAB>theta_j" for each
// nonzero coefficient in index order.
void write_model(std::ostream& out, const LinearModel& model) {
    out << fmt::format("#model k={} lambda={:.17g} intercept={:.17g}\n", model.dimension(), model.lambda,
                       model.intercept);
    for (std::size_t j = 0; j < model.theta.size(); ++j)
        if (model.theta[j] != 0.0) out << fmt::format("{}\t{:.17g}\n", j, model.theta[j]);
}

LinearModel read_model(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("#model ", 0) != 0) throw Error("model: missing header line");
    LinearModel model;
    std::size_t k = 0;
    int seen = 0;
    std::istringstream hs(header.substr(7));
    std::string kv;
    while (hs >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(fmt::format("model: bad header field '{}'", kv));
        auto key = kv.substr(0, eq);
        auto value = kv.substr(eq + 1);
        try {
            if (key == "k") k = std::stoull(value), ++seen;
            else if (key == "lambda") model.lambda = std::stod(value), ++seen;
            else if (key == "intercept") model.intercept = std::stod(value), ++seen;
        } catch (const std::exception&) {
            throw Error(fmt::format("model: bad header value '{}'", kv));
        }
    }
    if (seen != 3) throw Error("model: header needs k, lambda and intercept");
    model.theta.assign(k, 0.0);
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t j = 0;
        std::string value;
        if (!(ls >> j >> value) || j >= k) throw Error(fmt::format("model line {}: bad coefficient", lineno));
        try {
            model.theta[j] = std::stod(value);
        } catch (const std::exception&) {
            throw Error(fmt::format("model line {}: bad coefficient value", lineno));
        }
        if (!std::isfinite(model.theta[j])) throw Error(fmt::format("model line {}: non-finite coefficient", lineno));
    }
    model.trained = true;
    return model;
}

void save_model(const std::filesystem::path& path, const LinearModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    write_model(out, model);
}

LinearModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
    return read_model(in);
}

std::vector<TermCoefficient> top_terms(const LinearModel& model, const Vocabulary& vocab, std::size_t count) {
    if (vocab.size() != model.dimension()) throw Error("top_terms: vocabulary and model dimensions differ");
    std::vector<std::size_t> order(model.dimension());
    std::iota(order.begin(), order.end(), 0);
    count = std::min(count, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (model.theta[a] != model.theta[b]) return model.theta[a] > model.theta[b];
                          return a < b;
                      });
    std::vector<TermCoefficient> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({vocab.term(static_cast<FeatureIndex>(order[i])), model.theta[order[i]]});
    return out;
}

void write_top_terms_csv(std::ostream& out, const std::vector<TermCoefficient>& terms) {
    out << "term,coefficient\n";
    for (const auto& t : terms) out << fmt::format("{},{:.6f}\n", t.term, t.coefficient);
}

} // namespace hazard
