#include "intent/classifiers.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace intent {

namespace {

using nlohmann::json;

std::vector<int> encode_labels(const std::vector<std::string>& y,
                               std::array<std::string, 2>& names) {
    std::set<std::string> distinct(y.begin(), y.end());
    if (distinct.size() != 2) {
        throw std::runtime_error("training requires exactly two classes, got " +
                                 std::to_string(distinct.size()));
    }
    names[0] = *distinct.begin();
    names[1] = *std::next(distinct.begin());
    std::vector<int> encoded;
    encoded.reserve(y.size());
    for (const auto& l : y) encoded.push_back(l == names[1] ? 1 : 0);
    return encoded;
}

// ---- SVM: SGD on the regularized hinge loss, averaged iterate ----

SvmModel train_svm(const ClassifierSpec& spec, ConstMatrixRef X,
                   const std::vector<int>& y) {
    const Eigen::Index n = X.rows(), d = X.cols();
    const double lambda = spec.svm_lambda;
    std::vector<int> y_signed(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y_signed[i] = y[i] == 1 ? 1 : -1;

    VectorXs w = VectorXs::Zero(d);
    double b = 0.0;
    VectorXs w_sum = VectorXs::Zero(d);
    double b_sum = 0.0;
    std::size_t steps = 0;

    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(spec.seed);

    SvmModel model;
    for (int epoch = 0; epoch < spec.svm_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            ++steps;
            const double eta = 1.0 / (lambda * static_cast<double>(steps));
            // the bias is unregularized, so 1/(lambda*t) is far too hot for
            // it early on; give it a plain 1/t schedule instead
            const double eta_b = 1.0 / static_cast<double>(steps);
            const double yi = static_cast<double>(y_signed[i]);
            const auto xi = X.row(static_cast<Eigen::Index>(i)).transpose();
            const double margin = yi * (w.dot(xi) + b);
            w *= (1.0 - eta * lambda);
            if (margin < 1.0) {
                w += eta * yi * xi;
                b += eta_b * yi;
            }
            w_sum += w;
            b_sum += b;
        }
        const VectorXs w_avg = w_sum / static_cast<double>(steps);
        const double b_avg = b_sum / static_cast<double>(steps);
        model.objective_curve.push_back(svm_objective(w_avg, b_avg, lambda, X, y_signed));
    }
    model.weights = w_sum / static_cast<double>(steps);
    model.bias = b_sum / static_cast<double>(steps);
    return model;
}

double svm_decision(const SvmModel& m, ConstVectorRef x) {
    return m.weights.dot(x) + m.bias;
}

// ---- Naive Bayes ----

NbModel train_nb(const ClassifierSpec& spec, ConstMatrixRef X,
                 const std::vector<int>& y) {
    const Eigen::Index n = X.rows(), d = X.cols();
    NbModel model;
    model.variant = spec.nb_variant;
    Eigen::Vector2d counts = Eigen::Vector2d::Zero();
    for (int yi : y) counts[yi] += 1.0;
    model.log_prior = (counts / static_cast<double>(n)).array().log();

    if (spec.nb_variant == NbVariant::gaussian) {
        model.mean = MatrixXs::Zero(2, d);
        model.variance = MatrixXs::Zero(2, d);
        for (Eigen::Index i = 0; i < n; ++i) {
            model.mean.row(y[static_cast<std::size_t>(i)]) += X.row(i);
        }
        for (int c = 0; c < 2; ++c) model.mean.row(c) /= counts[c];
        for (Eigen::Index i = 0; i < n; ++i) {
            const int c = y[static_cast<std::size_t>(i)];
            model.variance.row(c) +=
                (X.row(i) - model.mean.row(c)).array().square().matrix();
        }
        for (int c = 0; c < 2; ++c) {
            model.variance.row(c) /= counts[c];
            model.variance.row(c) =
                model.variance.row(c).cwiseMax(spec.nb_var_floor);
        }
    } else {
        if ((X.array() < 0.0).any()) {
            throw std::runtime_error("multinomial naive Bayes requires non-negative features");
        }
        MatrixXs term_counts = MatrixXs::Zero(2, d);
        for (Eigen::Index i = 0; i < n; ++i) {
            term_counts.row(y[static_cast<std::size_t>(i)]) += X.row(i);
        }
        model.log_prob.resize(2, d);
        for (int c = 0; c < 2; ++c) {
            const double total = term_counts.row(c).sum() +
                                 spec.nb_alpha * static_cast<double>(d);
            model.log_prob.row(c) =
                ((term_counts.row(c).array() + spec.nb_alpha) / total).log();
        }
    }
    return model;
}

Eigen::Vector2d nb_scores(const NbModel& m, ConstVectorRef x) {
    Eigen::Vector2d scores = m.log_prior;
    if (m.variant == NbVariant::gaussian) {
        for (int c = 0; c < 2; ++c) {
            const auto diff = x.transpose().array() - m.mean.row(c).array();
            const auto var = m.variance.row(c).array();
            scores[c] += (-0.5 * (diff.square() / var) -
                          0.5 * (2.0 * M_PI * var).log())
                             .sum();
        }
    } else {
        for (int c = 0; c < 2; ++c) {
            scores[c] += (x.transpose().array() * m.log_prob.row(c).array()).sum();
        }
    }
    return scores;
}

// ---- Decision tree: CART with Gini impurity ----

double gini(const std::array<double, 2>& counts) {
    const double total = counts[0] + counts[1];
    if (total == 0.0) return 0.0;
    const double p0 = counts[0] / total, p1 = counts[1] / total;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct DtBuilder {
    ConstMatrixRef X;
    const std::vector<int>& y;
    int max_depth;
    int min_leaf;
    std::vector<DtNode> nodes;

    int make_leaf(const std::vector<std::size_t>& idx) {
        std::array<double, 2> counts{0.0, 0.0};
        for (std::size_t i : idx) counts[static_cast<std::size_t>(y[i])] += 1.0;
        DtNode node;
        node.leaf_class = counts[1] > counts[0] ? 1 : 0;
        nodes.push_back(node);
        return static_cast<int>(nodes.size()) - 1;
    }

    int build(const std::vector<std::size_t>& idx, int depth) {
        std::array<double, 2> counts{0.0, 0.0};
        for (std::size_t i : idx) counts[static_cast<std::size_t>(y[i])] += 1.0;
        const double node_gini = gini(counts);
        if (node_gini == 0.0 || depth >= max_depth ||
            idx.size() < 2 * static_cast<std::size_t>(min_leaf)) {
            return make_leaf(idx);
        }

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_impurity = node_gini;
        const double n = static_cast<double>(idx.size());

        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            std::vector<std::size_t> sorted = idx;
            std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                return X(static_cast<Eigen::Index>(a), j) < X(static_cast<Eigen::Index>(b), j);
            });
            std::array<double, 2> left{0.0, 0.0};
            std::array<double, 2> right = counts;
            for (std::size_t r = 0; r + 1 < sorted.size(); ++r) {
                const int cls = y[sorted[r]];
                left[static_cast<std::size_t>(cls)] += 1.0;
                right[static_cast<std::size_t>(cls)] -= 1.0;
                const double lo = X(static_cast<Eigen::Index>(sorted[r]), j);
                const double hi = X(static_cast<Eigen::Index>(sorted[r + 1]), j);
                if (lo == hi) continue;
                const std::size_t n_left = r + 1;
                const std::size_t n_right = sorted.size() - n_left;
                if (n_left < static_cast<std::size_t>(min_leaf) ||
                    n_right < static_cast<std::size_t>(min_leaf)) {
                    continue;
                }
                const double impurity =
                    (static_cast<double>(n_left) * gini(left) +
                     static_cast<double>(n_right) * gini(right)) /
                    n;
                if (impurity < best_impurity - 1e-12) {
                    best_impurity = impurity;
                    best_feature = static_cast<int>(j);
                    best_threshold = lo + 0.5 * (hi - lo);
                }
            }
        }
        if (best_feature < 0) return make_leaf(idx);

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx) {
            if (X(static_cast<Eigen::Index>(i), best_feature) <= best_threshold) {
                left_idx.push_back(i);
            } else {
                right_idx.push_back(i);
            }
        }
        const int self = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[static_cast<std::size_t>(self)].feature = best_feature;
        nodes[static_cast<std::size_t>(self)].threshold = best_threshold;
        const int left_id = build(left_idx, depth + 1);
        const int right_id = build(right_idx, depth + 1);
        nodes[static_cast<std::size_t>(self)].left = left_id;
        nodes[static_cast<std::size_t>(self)].right = right_id;
        return self;
    }
};

DtModel train_dt(const ClassifierSpec& spec, ConstMatrixRef X,
                 const std::vector<int>& y) {
    DtBuilder builder{X, y, spec.dt_max_depth, spec.dt_min_leaf, {}};
    std::vector<std::size_t> idx(static_cast<std::size_t>(X.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    builder.build(idx, 0);
    DtModel model;
    model.nodes = std::move(builder.nodes);
    return model;
}

int dt_classify(const DtModel& m, ConstVectorRef x) {
    int node = 0;
    while (m.nodes[static_cast<std::size_t>(node)].feature >= 0) {
        const auto& n = m.nodes[static_cast<std::size_t>(node)];
        node = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return m.nodes[static_cast<std::size_t>(node)].leaf_class;
}

// ---- kNN ----

double knn_distance(const KnnModel& m, ConstVectorRef a, ConstVectorRef b) {
    if (m.metric == KnnMetric::euclidean) return (a - b).norm();
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - a.dot(b) / (na * nb);
}

int knn_classify(const KnnModel& m, ConstVectorRef x) {
    const Eigen::Index n = m.train_x.rows();
    std::vector<std::pair<double, Eigen::Index>> dist;
    dist.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        dist.emplace_back(knn_distance(m, m.train_x.row(i).transpose(), x), i);
    }
    std::sort(dist.begin(), dist.end());
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(m.k),
                                                dist.size());
    int votes[2] = {0, 0};
    for (std::size_t i = 0; i < k; ++i) {
        votes[m.train_y[static_cast<std::size_t>(dist[i].second)]]++;
    }
    if (votes[0] == votes[1]) {
        return m.train_y[static_cast<std::size_t>(dist[0].second)];
    }
    return votes[1] > votes[0] ? 1 : 0;
}

// ---- serialization helpers ----

json vec_to_json(ConstVectorRef v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

VectorXs vec_from_json(const json& a) {
    VectorXs v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i];
    return v;
}

json mat_to_json(ConstMatrixRef m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        rows.push_back(vec_to_json(m.row(i).transpose()));
    }
    return rows;
}

MatrixXs mat_from_json(const json& rows) {
    if (rows.empty()) return MatrixXs(0, 0);
    MatrixXs m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.row(static_cast<Eigen::Index>(i)) =
            vec_from_json(rows[i]).transpose();
    }
    return m;
}

} // namespace

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::svm: return "svm";
        case ClassifierKind::nb: return "nb";
        case ClassifierKind::dt: return "dt";
        case ClassifierKind::knn: return "knn";
    }
    return "?";
}

ClassifierKind classifier_kind_from_string(const std::string& s) {
    if (s == "svm") return ClassifierKind::svm;
    if (s == "nb") return ClassifierKind::nb;
    if (s == "dt") return ClassifierKind::dt;
    if (s == "knn") return ClassifierKind::knn;
    throw std::runtime_error("unknown classifier kind: " + s);
}

Eigen::Index ClassifierModel::dim() const {
    if (const auto* m = std::get_if<SvmModel>(&params)) return m->weights.size();
    if (const auto* m = std::get_if<NbModel>(&params)) {
        return m->variant == NbVariant::gaussian ? m->mean.cols() : m->log_prob.cols();
    }
    if (const auto* m = std::get_if<KnnModel>(&params)) return m->train_x.cols();
    return -1; // decision trees accept any dimension covering their split features
}

ClassifierModel train(const ClassifierSpec& spec, ConstMatrixRef X,
                      const std::vector<std::string>& y) {
    if (static_cast<std::size_t>(X.rows()) != y.size()) {
        throw std::runtime_error("feature rows do not match label count");
    }
    if (!X.allFinite()) throw std::runtime_error("training matrix contains non-finite values");

    ClassifierModel model;
    model.kind = spec.kind;
    const std::vector<int> encoded = encode_labels(y, model.labels);
    switch (spec.kind) {
        case ClassifierKind::svm: model.params = train_svm(spec, X, encoded); break;
        case ClassifierKind::nb: model.params = train_nb(spec, X, encoded); break;
        case ClassifierKind::dt: model.params = train_dt(spec, X, encoded); break;
        case ClassifierKind::knn: {
            KnnModel m;
            m.k = spec.knn_k;
            m.metric = spec.knn_metric;
            m.train_x = X;
            m.train_y = encoded;
            model.params = std::move(m);
            break;
        }
    }
    return model;
}

std::string predict(const ClassifierModel& model, ConstVectorRef x) {
    const Eigen::Index d = model.dim();
    if (d >= 0 && x.size() != d) {
        throw std::runtime_error("predict: dimension mismatch (got " +
                                 std::to_string(x.size()) + ", model expects " +
                                 std::to_string(d) + ")");
    }
    int cls = 0;
    if (const auto* m = std::get_if<SvmModel>(&model.params)) {
        cls = svm_decision(*m, x) >= 0.0 ? 1 : 0;
    } else if (const auto* m = std::get_if<NbModel>(&model.params)) {
        const Eigen::Vector2d s = nb_scores(*m, x);
        cls = s[1] > s[0] ? 1 : 0;
    } else if (const auto* m = std::get_if<DtModel>(&model.params)) {
        cls = dt_classify(*m, x);
    } else if (const auto* m = std::get_if<KnnModel>(&model.params)) {
        cls = knn_classify(*m, x);
    }
    return model.labels[static_cast<std::size_t>(cls)];
}

std::vector<std::string> predict_batch(const ClassifierModel& model, ConstMatrixRef X) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        out.push_back(predict(model, X.row(i).transpose()));
    }
    return out;
}

Eigen::Vector2d nb_log_joint(const ClassifierModel& model, ConstVectorRef x) {
    const auto* m = std::get_if<NbModel>(&model.params);
    if (!m) throw std::runtime_error("nb_log_joint called on a non-NB model");
    return nb_scores(*m, x);
}

double svm_objective(ConstVectorRef w, double b, double lambda, ConstMatrixRef X,
                     const std::vector<int>& y_signed) {
    double hinge = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double yi = static_cast<double>(y_signed[static_cast<std::size_t>(i)]);
        hinge += std::max(0.0, 1.0 - yi * (w.dot(X.row(i).transpose()) + b));
    }
    return 0.5 * lambda * w.squaredNorm() + hinge / static_cast<double>(X.rows());
}

std::string save_model(const ClassifierModel& model) {
    json j;
    j["format_version"] = 1;
    j["kind"] = to_string(model.kind);
    j["labels"] = {model.labels[0], model.labels[1]};
    json p;
    if (const auto* m = std::get_if<SvmModel>(&model.params)) {
        p["weights"] = vec_to_json(m->weights);
        p["bias"] = m->bias;
        p["objective_curve"] = m->objective_curve;
    } else if (const auto* m = std::get_if<NbModel>(&model.params)) {
        p["variant"] = m->variant == NbVariant::gaussian ? "gaussian" : "multinomial";
        p["log_prior"] = {m->log_prior[0], m->log_prior[1]};
        if (m->variant == NbVariant::gaussian) {
            p["mean"] = mat_to_json(m->mean);
            p["variance"] = mat_to_json(m->variance);
        } else {
            p["log_prob"] = mat_to_json(m->log_prob);
        }
    } else if (const auto* m = std::get_if<DtModel>(&model.params)) {
        json nodes = json::array();
        for (const auto& n : m->nodes) {
            nodes.push_back({{"feature", n.feature},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"leaf_class", n.leaf_class}});
        }
        p["nodes"] = std::move(nodes);
    } else if (const auto* m = std::get_if<KnnModel>(&model.params)) {
        p["k"] = m->k;
        p["metric"] = m->metric == KnnMetric::euclidean ? "euclidean" : "cosine";
        p["train_x"] = mat_to_json(m->train_x);
        p["train_y"] = m->train_y;
    }
    j["params"] = std::move(p);
    return j.dump();
}

ClassifierModel load_model(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("corrupt model payload: ") + e.what());
    }
    if (!j.is_object() || j.value("format_version", -1) != 1) {
        throw std::runtime_error("unsupported model format version");
    }
    ClassifierModel model;
    try {
        model.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
        model.labels = {j.at("labels").at(0).get<std::string>(),
                        j.at("labels").at(1).get<std::string>()};
        const json& p = j.at("params");
        switch (model.kind) {
            case ClassifierKind::svm: {
                SvmModel m;
                m.weights = vec_from_json(p.at("weights"));
                m.bias = p.at("bias").get<double>();
                m.objective_curve = p.at("objective_curve").get<std::vector<double>>();
                model.params = std::move(m);
                break;
            }
            case ClassifierKind::nb: {
                NbModel m;
                m.variant = p.at("variant").get<std::string>() == "gaussian"
                                ? NbVariant::gaussian
                                : NbVariant::multinomial;
                m.log_prior[0] = p.at("log_prior").at(0).get<double>();
                m.log_prior[1] = p.at("log_prior").at(1).get<double>();
                if (m.variant == NbVariant::gaussian) {
                    m.mean = mat_from_json(p.at("mean"));
                    m.variance = mat_from_json(p.at("variance"));
                } else {
                    m.log_prob = mat_from_json(p.at("log_prob"));
                }
                model.params = std::move(m);
                break;
            }
            case ClassifierKind::dt: {
                DtModel m;
                for (const auto& n : p.at("nodes")) {
                    DtNode node;
                    node.feature = n.at("feature").get<int>();
                    node.threshold = n.at("threshold").get<double>();
                    node.left = n.at("left").get<int>();
                    node.right = n.at("right").get<int>();
                    node.leaf_class = n.at("leaf_class").get<int>();
                    m.nodes.push_back(node);
                }
                model.params = std::move(m);
                break;
            }
            case ClassifierKind::knn: {
                KnnModel m;
                m.k = p.at("k").get<int>();
                m.metric = p.at("metric").get<std::string>() == "cosine"
                               ? KnnMetric::cosine
                               : KnnMetric::euclidean;
                m.train_x = mat_from_json(p.at("train_x"));
                m.train_y = p.at("train_y").get<std::vector<int>>();
                model.params = std::move(m);
                break;
            }
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("corrupt model payload: ") + e.what());
    }
    return model;
}

} // namespace intent
