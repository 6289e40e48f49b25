#include "intent/corpus.hpp"
#include "intent/csv.hpp"
#include "intent/evaluate.hpp"
#include "intent/pipeline.hpp"
#include "intent/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string pct1(double v) { return fmt(100.0 * v, "%.1f"); }

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

intent::CorpusFormat format_from_string(const std::string& s) {
    if (s == "jsonl") return intent::CorpusFormat::jsonl;
    if (s == "csv") return intent::CorpusFormat::csv;
    throw std::runtime_error("unknown corpus format: " + s);
}

// ---- experiment configuration: declarative file plus flag overrides ----

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> folds;
    bool loo = false;
    std::optional<std::string> featurizer;
    std::optional<std::string> classifier;
    std::optional<std::string> pca; // "off" or a variance target / "k:<n>"
    std::optional<std::string> positive_class;
    std::optional<std::string> out_dir;
    int threads = 1;
    bool force = false;
};

struct Experiment {
    std::string corpus_path;
    intent::CorpusFormat corpus_format = intent::CorpusFormat::jsonl;
    std::string stopwords_path;
    std::string lemmas_path;
    std::string lexicon_path;
    intent::PipelineConfig pipeline;
    bool explicit_nb_variant = false;
    bool explicit_knn_metric = false;
    bool pca_configured = false;
    int folds = 10;
    bool loo = false;
    std::uint64_t seed = 42;
    std::string eval_mode = "cv"; // "cv" or "train-only"
    std::string out_dir;
    json canonical; // effective settings, hashed into output headers

    std::uint64_t config_hash() const { return fnv1a(canonical.dump()); }
};

void apply_branch_defaults(Experiment& exp) {
    auto& p = exp.pipeline;
    if (!exp.explicit_nb_variant) {
        p.classifier.nb_variant = p.featurizer == intent::FeaturizerKind::terms
                                      ? intent::NbVariant::multinomial
                                      : intent::NbVariant::gaussian;
    }
    if (!exp.explicit_knn_metric) {
        p.classifier.knn_metric = p.featurizer == intent::FeaturizerKind::terms
                                      ? intent::KnnMetric::cosine
                                      : intent::KnnMetric::euclidean;
    }
    if (!exp.pca_configured) {
        // lexicon percentages get PCA by default; the sparse term pipeline
        // does not
        if (p.featurizer == intent::FeaturizerKind::lexicon) {
            p.pca_variance = 0.95;
        } else {
            p.pca_variance.reset();
            p.pca_k.reset();
        }
    }
}

void parse_pca_setting(Experiment& exp, const std::string& value) {
    exp.pca_configured = true;
    exp.pipeline.pca_variance.reset();
    exp.pipeline.pca_k.reset();
    if (value == "off") return;
    if (value.rfind("k:", 0) == 0) {
        exp.pipeline.pca_k = std::stoi(value.substr(2));
        return;
    }
    exp.pipeline.pca_variance = std::stod(value);
}

Experiment load_experiment(const std::string& config_path, const Overrides& ov) {
    json j;
    try {
        j = json::parse(read_file(config_path));
    } catch (const json::exception& e) {
        throw std::runtime_error("config " + config_path + ": " + e.what());
    }
    const fs::path base = fs::path(config_path).parent_path();
    auto resolve = [&](const std::string& p) {
        return (fs::path(p).is_absolute() ? fs::path(p) : base / p).string();
    };

    Experiment exp;
    const json& corpus = j.at("corpus");
    exp.corpus_path = resolve(corpus.at("path").get<std::string>());
    exp.corpus_format = format_from_string(corpus.value("format", "jsonl"));

    if (j.contains("preprocess")) {
        const json& prep = j["preprocess"];
        if (prep.contains("stopwords")) {
            exp.stopwords_path = resolve(prep["stopwords"].get<std::string>());
        }
        if (prep.contains("lemmas")) {
            exp.lemmas_path = resolve(prep["lemmas"].get<std::string>());
        }
    }

    auto& p = exp.pipeline;
    const json& feat = j.at("featurizer");
    if (feat.contains("lexicon") && feat.contains("terms")) {
        throw std::runtime_error(
            "config error: featurizer sets both 'lexicon' and 'terms' branches");
    }
    if (feat.contains("lexicon")) {
        p.featurizer = intent::FeaturizerKind::lexicon;
        const json& lx = feat["lexicon"];
        exp.lexicon_path = resolve(lx.at("path").get<std::string>());
        p.lexicon_top_k = lx.value("top_k", 15);
    } else if (feat.contains("terms")) {
        p.featurizer = intent::FeaturizerKind::terms;
        const json& tm = feat["terms"];
        p.min_df = tm.value("min_df", 2u);
        p.tfidf_top = tm.value("tfidf_top", 300u);
        p.chi_top = tm.value("chi_top", 250u);
        p.idf_mode = tm.value("idf", std::string("ratio")) == "log"
                         ? intent::IdfMode::log
                         : intent::IdfMode::ratio;
        p.chi_weighting = tm.value("chi_weighting", true);
    } else {
        throw std::runtime_error(
            "config error: featurizer must set exactly one of 'lexicon'/'terms'");
    }

    if (j.contains("pca")) {
        exp.pca_configured = true;
        const json& pca = j["pca"];
        if (pca.is_string()) {
            parse_pca_setting(exp, pca.get<std::string>());
        } else if (pca.contains("k")) {
            p.pca_k = pca["k"].get<int>();
        } else if (pca.contains("variance")) {
            p.pca_variance = pca["variance"].get<double>();
        }
    }

    if (j.contains("classifier")) {
        const json& cl = j["classifier"];
        p.classifier.kind =
            intent::classifier_kind_from_string(cl.value("kind", "svm"));
        p.classifier.svm_lambda = cl.value("svm_lambda", p.classifier.svm_lambda);
        p.classifier.svm_epochs = cl.value("svm_epochs", p.classifier.svm_epochs);
        p.classifier.nb_alpha = cl.value("nb_alpha", p.classifier.nb_alpha);
        p.classifier.nb_var_floor = cl.value("nb_var_floor", p.classifier.nb_var_floor);
        p.classifier.dt_max_depth = cl.value("dt_max_depth", p.classifier.dt_max_depth);
        p.classifier.dt_min_leaf = cl.value("dt_min_leaf", p.classifier.dt_min_leaf);
        p.classifier.knn_k = cl.value("knn_k", p.classifier.knn_k);
        if (cl.contains("nb_variant")) {
            exp.explicit_nb_variant = true;
            p.classifier.nb_variant = cl["nb_variant"].get<std::string>() == "multinomial"
                                          ? intent::NbVariant::multinomial
                                          : intent::NbVariant::gaussian;
        }
        if (cl.contains("knn_metric")) {
            exp.explicit_knn_metric = true;
            p.classifier.knn_metric = cl["knn_metric"].get<std::string>() == "cosine"
                                          ? intent::KnnMetric::cosine
                                          : intent::KnnMetric::euclidean;
        }
    }

    if (j.contains("eval")) {
        const json& ev = j["eval"];
        exp.folds = ev.value("folds", 10);
        exp.loo = ev.value("loo", false);
        exp.seed = ev.value("seed", 42u);
        exp.eval_mode = ev.value("mode", "cv");
    }
    p.positive_class = j.value("positive_class", "abuse");

    exp.out_dir = j.value("output", "");
    if (exp.out_dir.empty()) {
        const char* env = std::getenv("INTENT_OUT_DIR");
        exp.out_dir = env ? env : "out";
    } else {
        exp.out_dir = resolve(exp.out_dir);
    }

    // flags win over the file
    if (ov.seed) exp.seed = *ov.seed;
    if (ov.folds) exp.folds = *ov.folds;
    if (ov.loo) exp.loo = true;
    if (ov.featurizer) {
        if (*ov.featurizer == "lexicon" && exp.lexicon_path.empty()) {
            throw std::runtime_error("--featurizer lexicon requires a lexicon path in the config");
        }
        p.featurizer = *ov.featurizer == "lexicon" ? intent::FeaturizerKind::lexicon
                                                   : intent::FeaturizerKind::terms;
    }
    if (ov.classifier) p.classifier.kind = intent::classifier_kind_from_string(*ov.classifier);
    if (ov.pca) parse_pca_setting(exp, *ov.pca);
    if (ov.positive_class) p.positive_class = *ov.positive_class;
    if (ov.out_dir) exp.out_dir = *ov.out_dir;

    apply_branch_defaults(exp);
    p.classifier.seed = exp.seed;

    // load preprocess resources
    p.prep = intent::PreprocessConfig::defaults();
    if (!exp.stopwords_path.empty()) {
        p.prep.stopwords = intent::load_stopwords(exp.stopwords_path);
    }
    if (!exp.lemmas_path.empty()) {
        intent::load_lemmas(exp.lemmas_path, p.prep);
    }
    if (!exp.lexicon_path.empty()) {
        p.lexicon = intent::load_lexicon(exp.lexicon_path);
    }

    json canon;
    canon["corpus"] = exp.corpus_path;
    canon["featurizer"] = p.descriptor();
    canon["positive_class"] = p.positive_class;
    canon["eval"] = {{"folds", exp.folds}, {"loo", exp.loo}, {"seed", exp.seed},
                     {"mode", exp.eval_mode}};
    exp.canonical = std::move(canon);
    return exp;
}

// ---- report writers ----

std::string header_comment(const Experiment& exp) {
    return "# config=" + hex64(exp.config_hash()) + " seed=" +
           std::to_string(exp.seed) + "\n";
}

std::string report_csv(const Experiment& exp, const intent::EvalReport& report) {
    std::string out = header_comment(exp);
    out += "pipeline,fold,precision,recall,f_measure,accuracy,tp,fp,fn,tn\n";
    auto row = [&](const std::string& fold, const intent::MetricSet& m,
                   const intent::ConfusionMatrix& cm) {
        out += intent::csv::join_row(
                   {report.pipeline_descriptor, fold, pct1(m.precision),
                    pct1(m.recall), pct1(m.f_measure), pct1(m.accuracy),
                    std::to_string(cm.tp), std::to_string(cm.fp),
                    std::to_string(cm.fn), std::to_string(cm.tn)}) +
               "\n";
    };
    for (const auto& fr : report.folds) {
        row(std::to_string(fr.fold), fr.metrics, fr.cm);
    }
    if (!report.folds.empty()) {
        row("ALL", report.micro, report.pooled);
        intent::ConfusionMatrix empty;
        out += intent::csv::join_row(
                   {report.pipeline_descriptor, "MACRO", pct1(report.macro.precision),
                    pct1(report.macro.recall), pct1(report.macro.f_measure),
                    pct1(report.macro.accuracy), "", "", "", ""}) +
               "\n";
        (void)empty;
    }
    return out;
}

json metrics_json(const intent::MetricSet& m) {
    return {{"precision", m.precision},
            {"recall", m.recall},
            {"f_measure", m.f_measure},
            {"accuracy", m.accuracy},
            {"degenerate_precision", m.degenerate_precision},
            {"degenerate_recall", m.degenerate_recall},
            {"degenerate_f", m.degenerate_f}};
}

json cm_json(const intent::ConfusionMatrix& cm) {
    return {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

std::string report_json(const Experiment& exp, const intent::EvalReport& report) {
    json j;
    j["config_hash"] = hex64(exp.config_hash());
    j["pipeline"] = report.pipeline_descriptor;
    j["positive_class"] = report.positive_class;
    j["seed"] = report.seed;
    json folds = json::array();
    for (const auto& fr : report.folds) {
        folds.push_back({{"fold", fr.fold},
                         {"confusion", cm_json(fr.cm)},
                         {"metrics", metrics_json(fr.metrics)},
                         {"post_ids", fr.post_ids},
                         {"y_true", fr.y_true},
                         {"y_pred", fr.y_pred},
                         {"features", fr.features},
                         {"seconds", fr.seconds}});
    }
    j["folds"] = std::move(folds);
    j["pooled_confusion"] = cm_json(report.pooled);
    j["micro"] = metrics_json(report.micro);
    j["macro"] = metrics_json(report.macro);
    j["total_seconds"] = report.total_seconds;
    return j.dump(2) + "\n";
}

std::string ranking_csv(const Experiment& exp, const intent::FittedPipeline& fp,
                        const std::array<std::string, 2>& labels) {
    std::string out = header_comment(exp);
    out += "feature,mean_" + labels[0] + ",mean_" + labels[1] + ",abs_gap\n";
    for (const auto& g : fp.ranking) {
        out += intent::csv::join_row({g.feature, fmt(g.mean_a), fmt(g.mean_b),
                                      fmt(g.abs_gap)}) +
               "\n";
    }
    return out;
}

std::string selection_csv(const Experiment& exp, const intent::FittedPipeline& fp) {
    std::string out = header_comment(exp);
    out += "term,chi_squared,predicted_class\n";
    for (const auto& s : fp.selection) {
        out += intent::csv::join_row({s.term, fmt(s.chi2), s.predicted_class}) + "\n";
    }
    return out;
}

std::string parallel_coords_csv(const Experiment& exp, const intent::FittedPipeline& fp,
                                const intent::Corpus& corpus) {
    const intent::FeatureMatrix m = fp.feature_rows(corpus.posts);
    std::string out = header_comment(exp);
    std::vector<std::string> header{"post_id"};
    header.insert(header.end(), m.feature_names.begin(), m.feature_names.end());
    header.push_back("label");
    out += intent::csv::join_row(header) + "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row{m.post_ids[static_cast<std::size_t>(i)]};
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(fmt(m.values(i, c)));
        }
        row.push_back(corpus.posts[static_cast<std::size_t>(i)].label.value_or(""));
        out += intent::csv::join_row(row) + "\n";
    }
    return out;
}

fs::path prepare_out_dir(const std::string& dir, bool force) {
    fs::path out(dir);
    if (fs::exists(out)) {
        if (!force && !fs::is_empty(out)) {
            throw std::runtime_error("output directory '" + dir +
                                     "' exists; pass --force to overwrite");
        }
    } else {
        fs::create_directories(out);
    }
    return out;
}

intent::EvalReport run_cv(const Experiment& exp, const intent::Corpus& corpus,
                          int threads) {
    const int k = exp.loo ? static_cast<int>(corpus.size()) : exp.folds;
    const intent::FoldPlan plan = intent::split_stratified(corpus, k, exp.seed);
    return intent::cross_validate(exp.pipeline, corpus, plan, threads);
}

// ---- subcommands ----

int cmd_run(const std::string& config_path, const Overrides& ov) {
    const Experiment exp = load_experiment(config_path, ov);
    const intent::Corpus corpus = intent::load_corpus(exp.corpus_path, exp.corpus_format);
    const fs::path out = prepare_out_dir(exp.out_dir, ov.force);

    intent::EvalReport report;
    report.pipeline_descriptor = exp.pipeline.descriptor();
    report.positive_class = exp.pipeline.positive_class;
    report.seed = exp.seed;
    if (exp.eval_mode == "cv") {
        report = run_cv(exp, corpus, ov.threads);
    }

    const intent::FittedPipeline fp = intent::fit_pipeline(exp.pipeline, corpus);
    write_file(out / "report.csv", report_csv(exp, report));
    write_file(out / "report.json", report_json(exp, report));
    write_file(out / "ranking.csv", ranking_csv(exp, fp, fp.model.labels));
    write_file(out / "selection.csv", selection_csv(exp, fp));
    write_file(out / "parallel_coords.csv", parallel_coords_csv(exp, fp, corpus));
    write_file(out / "model.json", fp.save());

    if (!report.folds.empty()) {
        std::cout << report.pipeline_descriptor
                  << ": pooled accuracy=" << pct1(report.micro.accuracy)
                  << "% precision=" << pct1(report.micro.precision)
                  << "% recall=" << pct1(report.micro.recall)
                  << "% f=" << pct1(report.micro.f_measure) << "%\n";
    }
    std::cout << "wrote " << out.string() << "/{report.csv,report.json,ranking.csv,"
              << "selection.csv,parallel_coords.csv,model.json}\n";
    return 0;
}

int cmd_synth(const intent::SynthSpec& spec, const std::string& out_path) {
    const intent::Corpus corpus = intent::synth_corpus(spec);
    write_file(out_path, intent::corpus_to_jsonl(corpus));
    const auto dist = intent::label_distribution(corpus);
    std::cout << "wrote " << out_path << " (" << corpus.size() << " posts";
    for (const auto& [label, stat] : dist) {
        std::cout << ", " << stat.count << " " << label;
    }
    std::cout << ")\n";
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input_path,
                const std::string& format) {
    const intent::FittedPipeline fp = intent::FittedPipeline::load(read_file(model_path));
    std::string content;
    if (input_path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        content = buf.str();
    } else {
        content = read_file(input_path);
    }
    if (content.find_first_not_of(" \t\r\n") == std::string::npos) {
        return 0; // empty input stream, empty output
    }
    const intent::Corpus corpus =
        intent::parse_corpus(content, format_from_string(format));
    for (const auto& post : corpus.posts) {
        json j;
        j["id"] = post.id;
        j["text"] = post.text;
        if (post.label) j["label"] = *post.label;
        if (!post.meta.empty()) j["meta"] = post.meta;
        j["predicted"] = fp.predict_post(post);
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int cmd_compare(const std::vector<std::string>& config_paths, const Overrides& ov,
                const std::string& out_path) {
    if (config_paths.size() < 2) {
        throw std::runtime_error("compare needs at least 2 configs");
    }
    struct Row {
        std::string pipeline;
        std::string classifier;
        intent::MetricSet micro;
    };
    std::vector<Row> rows;
    std::string corpus_path;
    std::uint64_t hash = 0;
    std::uint64_t seed = 0;
    for (const auto& path : config_paths) {
        const Experiment exp = load_experiment(path, ov);
        if (corpus_path.empty()) {
            corpus_path = exp.corpus_path;
            seed = exp.seed;
        } else if (corpus_path != exp.corpus_path) {
            throw std::runtime_error("compare: configs use different corpora ('" +
                                     corpus_path + "' vs '" + exp.corpus_path + "')");
        }
        hash ^= exp.config_hash();
        const intent::Corpus corpus =
            intent::load_corpus(exp.corpus_path, exp.corpus_format);
        const intent::EvalReport report = run_cv(exp, corpus, ov.threads);
        rows.push_back({report.pipeline_descriptor,
                        intent::to_string(exp.pipeline.classifier.kind), report.micro});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.micro.accuracy > b.micro.accuracy;
    });
    std::string out = "# config=" + hex64(hash) + " seed=" + std::to_string(seed) + "\n";
    out += "pipeline,classifier,precision,recall,f_measure,accuracy\n";
    for (const auto& r : rows) {
        out += intent::csv::join_row({r.pipeline, r.classifier, pct1(r.micro.precision),
                                      pct1(r.micro.recall), pct1(r.micro.f_measure),
                                      pct1(r.micro.accuracy)}) +
               "\n";
    }
    write_file(out_path, out);
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

std::vector<std::string> read_label_file(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        if (!line.empty()) labels.push_back(line);
    }
    return labels;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary text-intent classification toolkit"};
    app.require_subcommand(1);

    Overrides ov;

    // run
    auto* run = app.add_subcommand("run", "Run a full pipeline from a config file");
    std::string run_config;
    run->add_option("--config", run_config, "JSON experiment config")->required();
    std::string ov_seed, ov_folds, ov_featurizer, ov_classifier, ov_pca, ov_pos, ov_out;
    run->add_option("--seed", ov_seed, "RNG seed override");
    run->add_option("--folds", ov_folds, "CV fold count override");
    run->add_flag("--loo", ov.loo, "leave-one-out CV");
    run->add_option("--featurizer", ov_featurizer, "lexicon|terms")
        ->check(CLI::IsMember({"lexicon", "terms"}));
    run->add_option("--classifier", ov_classifier, "svm|nb|dt|knn")
        ->check(CLI::IsMember({"svm", "nb", "dt", "knn"}));
    run->add_option("--pca", ov_pca, "variance target in (0,1], k:<n>, or 'off'");
    run->add_option("--positive-class", ov_pos, "positive class for precision/recall");
    run->add_option("--out", ov_out, "output directory");
    run->add_option("--threads", ov.threads, "parallel folds");
    run->add_flag("--force", ov.force, "overwrite a non-empty output directory");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
    intent::SynthSpec spec = intent::SynthSpec::defaults();
    std::string synth_out = "synth_corpus.jsonl";
    synth->add_option("--out", synth_out, "output JSONL path");
    synth->add_option("--n", spec.n_posts, "number of posts");
    synth->add_option("--balance", spec.class_balance, "fraction of first-class posts");
    synth->add_option("--signal", spec.signal_fraction, "per-token keyword probability");
    synth->add_option("--noise-vocab", spec.noise_vocab_size, "shared noise vocabulary size");
    synth->add_option("--min-tokens", spec.min_tokens, "minimum tokens per post");
    synth->add_option("--max-tokens", spec.max_tokens, "maximum tokens per post");
    synth->add_option("--seed", spec.seed, "RNG seed");
    synth->add_option("--label-a", spec.label_a, "first class name");
    synth->add_option("--label-b", spec.label_b, "second class name");

    // predict
    auto* predict = app.add_subcommand("predict", "Label posts with a saved model");
    std::string model_path, input_path = "-", input_format = "jsonl";
    predict->add_option("--model", model_path, "model.json from a run")->required();
    predict->add_option("--input", input_path, "posts file, '-' for stdin");
    predict->add_option("--format", input_format, "jsonl|csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    // compare
    auto* compare = app.add_subcommand("compare", "Cross-validate several configs");
    std::vector<std::string> compare_configs;
    std::string compare_out = "comparison.csv";
    compare->add_option("--configs", compare_configs, "config files")->required();
    compare->add_option("--out", compare_out, "output CSV path");
    compare->add_option("--threads", ov.threads, "parallel folds");
    std::string cmp_seed;
    compare->add_option("--seed", cmp_seed, "RNG seed override");

    // kappa
    auto* kappa = app.add_subcommand("kappa", "Cohen's kappa between two label files");
    std::string labels_a_path, labels_b_path;
    kappa->add_option("file_a", labels_a_path, "labels, one per line")->required();
    kappa->add_option("file_b", labels_b_path, "labels, one per line")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!ov_seed.empty()) ov.seed = std::stoull(ov_seed);
        if (!cmp_seed.empty()) ov.seed = std::stoull(cmp_seed);
        if (!ov_folds.empty()) ov.folds = std::stoi(ov_folds);
        if (!ov_featurizer.empty()) ov.featurizer = ov_featurizer;
        if (!ov_classifier.empty()) ov.classifier = ov_classifier;
        if (!ov_pca.empty()) ov.pca = ov_pca;
        if (!ov_pos.empty()) ov.positive_class = ov_pos;
        if (!ov_out.empty()) ov.out_dir = ov_out;

        if (run->parsed()) return cmd_run(run_config, ov);
        if (synth->parsed()) return cmd_synth(spec, synth_out);
        if (predict->parsed()) return cmd_predict(model_path, input_path, input_format);
        if (compare->parsed()) return cmd_compare(compare_configs, ov, compare_out);
        if (kappa->parsed()) {
            const double k = intent::cohen_kappa(read_label_file(labels_a_path),
                                                 read_label_file(labels_b_path));
            std::cout << fmt(k, "%.6f") << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
