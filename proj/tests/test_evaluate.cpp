#include "intent/evaluate.hpp"
#include "intent/synth.hpp"

#include <doctest.h>

using namespace intent;

namespace {

PipelineConfig terms_nb_config() {
    PipelineConfig config;
    config.featurizer = FeaturizerKind::terms;
    config.min_df = 2;
    config.tfidf_top = 60;
    config.chi_top = 40;
    config.classifier.kind = ClassifierKind::nb;
    config.classifier.nb_variant = NbVariant::multinomial;
    return config;
}

Corpus small_synth(std::size_t n, std::uint64_t seed) {
    SynthSpec spec = SynthSpec::defaults();
    spec.n_posts = n;
    spec.seed = seed;
    return synth_corpus(spec);
}

} // namespace

TEST_CASE("confusion counts a hand-checked case") {
    const std::vector<std::string> y_true{"abuse", "abuse", "abuse", "advice",
                                          "advice", "advice", "advice"};
    const std::vector<std::string> y_pred{"abuse", "abuse", "advice", "advice",
                                          "advice", "abuse", "advice"};
    const ConfusionMatrix cm = confusion(y_true, y_pred, "abuse");
    CHECK(cm.tp == 2);
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 3);
    CHECK(cm.total() == 7);

    SUBCASE("swapping the positive class swaps the corners") {
        const ConfusionMatrix flipped = confusion(y_true, y_pred, "advice");
        CHECK(flipped.tp == cm.tn);
        CHECK(flipped.fp == cm.fn);
        CHECK(flipped.fn == cm.fp);
        CHECK(flipped.tn == cm.tp);
    }
    SUBCASE("input validation") {
        CHECK_THROWS(confusion(y_true, {"abuse"}, "abuse"));
        CHECK_THROWS(confusion({}, {}, "abuse"));
    }
}

TEST_CASE("metrics match hand arithmetic") {
    // tp=40 fp=10 fn=20 tn=30
    const MetricSet m = metrics(ConfusionMatrix{40, 10, 20, 30});
    CHECK(m.precision == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(m.recall == doctest::Approx(40.0 / 60.0).epsilon(1e-15));
    CHECK(m.f_measure ==
          doctest::Approx(2.0 * 0.8 * (2.0 / 3.0) / (0.8 + 2.0 / 3.0)).epsilon(1e-12));
    CHECK(m.accuracy == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(!m.degenerate_precision);

    SUBCASE("f-measure is the harmonic mean identity") {
        const double harmonic = 2.0 / (1.0 / m.precision + 1.0 / m.recall);
        CHECK(m.f_measure == doctest::Approx(harmonic).epsilon(1e-12));
    }
}

TEST_CASE("degenerate metric denominators report zero with a flag") {
    SUBCASE("no positive predictions") {
        const MetricSet m = metrics(ConfusionMatrix{0, 0, 3, 7});
        CHECK(m.precision == 0.0);
        CHECK(m.degenerate_precision);
        CHECK(m.degenerate_f);
        CHECK(m.accuracy == 0.7);
    }
    SUBCASE("no actual positives") {
        const MetricSet m = metrics(ConfusionMatrix{0, 2, 0, 8});
        CHECK(m.recall == 0.0);
        CHECK(m.degenerate_recall);
    }
    SUBCASE("empty matrix is an error") {
        CHECK_THROWS(metrics(ConfusionMatrix{}));
    }
}

TEST_CASE("cohen_kappa fixtures") {
    SUBCASE("perfect agreement") {
        CHECK(cohen_kappa({"a", "b", "a"}, {"a", "b", "a"}) == 1.0);
    }
    SUBCASE("chance-level agreement is zero") {
        CHECK(cohen_kappa({"a", "a", "b", "b"}, {"a", "b", "a", "b"}) ==
              doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("hand-computed 0.5") {
        // p_o = 0.75, p_e = 0.75*0.5 + 0.25*0.5 = 0.5
        CHECK(cohen_kappa({"a", "a", "a", "b"}, {"a", "a", "b", "b"}) ==
              doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("identical constant annotators score 1 by convention") {
        CHECK(cohen_kappa({"x", "x"}, {"x", "x"}) == 1.0);
    }
    SUBCASE("disjoint label sets: p_e = 0, kappa = p_o") {
        CHECK(cohen_kappa({"a", "a"}, {"b", "b"}) == 0.0);
    }
    SUBCASE("validation") {
        CHECK_THROWS(cohen_kappa({"a"}, {"a", "b"}));
        CHECK_THROWS(cohen_kappa({}, {}));
    }
}

TEST_CASE("cross_validate pools folds consistently") {
    const Corpus corpus = small_synth(80, 5);
    const FoldPlan plan = split_stratified(corpus, 5, 17);
    const PipelineConfig config = terms_nb_config();
    const EvalReport report = cross_validate(config, corpus, plan);

    REQUIRE(report.folds.size() == 5);
    ConfusionMatrix pooled;
    std::size_t covered = 0;
    double acc_sum = 0.0;
    for (const auto& fr : report.folds) {
        pooled += fr.cm;
        covered += fr.post_ids.size();
        acc_sum += fr.metrics.accuracy;
        CHECK(fr.y_true.size() == fr.y_pred.size());
    }
    CHECK(covered == corpus.size());
    CHECK(pooled.total() == report.pooled.total());
    CHECK(pooled.tp == report.pooled.tp);
    const MetricSet micro = metrics(report.pooled);
    CHECK(report.micro.accuracy == micro.accuracy);
    CHECK(report.macro.accuracy == doctest::Approx(acc_sum / 5.0).epsilon(1e-15));
    CHECK(report.positive_class == "abuse");
    CHECK(report.seed == 17);
}

TEST_CASE("cross_validate is deterministic and thread-count invariant") {
    const Corpus corpus = small_synth(60, 9);
    const FoldPlan plan = split_stratified(corpus, 4, 3);
    const PipelineConfig config = terms_nb_config();
    const EvalReport serial = cross_validate(config, corpus, plan, 1);
    const EvalReport again = cross_validate(config, corpus, plan, 1);
    const EvalReport parallel = cross_validate(config, corpus, plan, 4);
    for (std::size_t f = 0; f < serial.folds.size(); ++f) {
        CHECK(serial.folds[f].y_pred == again.folds[f].y_pred);
        CHECK(serial.folds[f].y_pred == parallel.folds[f].y_pred);
        CHECK(serial.folds[f].post_ids == parallel.folds[f].post_ids);
    }
    CHECK(serial.micro.accuracy == parallel.micro.accuracy);
}

TEST_CASE("an absent positive class falls back to the first corpus label") {
    const Corpus corpus = small_synth(60, 13);
    const FoldPlan plan = split_stratified(corpus, 3, 1);
    PipelineConfig config = terms_nb_config();
    config.positive_class = "no-such-class";
    const EvalReport report = cross_validate(config, corpus, plan);
    CHECK(report.positive_class == corpus.labels.front());
}

TEST_CASE("a single-class training split is an error naming the fold") {
    Corpus corpus;
    const char* texts[] = {"he hit her hard", "she was hurt badly",
                           "please share this now"};
    const char* labels[] = {"abuse", "abuse", "advice"};
    for (int i = 0; i < 3; ++i) {
        Post p;
        p.id = "p" + std::to_string(i);
        p.text = texts[i];
        p.label = labels[i];
        corpus.posts.push_back(std::move(p));
    }
    corpus.labels = {"abuse", "advice"};
    const FoldPlan plan = split_stratified(corpus, 2, 0);
    const PipelineConfig config = terms_nb_config();
    CHECK_THROWS_WITH(cross_validate(config, corpus, plan),
                      doctest::Contains("single class"));
}

TEST_CASE("fold plan must cover the corpus") {
    const Corpus corpus = small_synth(20, 2);
    FoldPlan plan = split_stratified(corpus, 2, 0);
    plan.assignments.pop_back();
    CHECK_THROWS(cross_validate(terms_nb_config(), corpus, plan));
}
