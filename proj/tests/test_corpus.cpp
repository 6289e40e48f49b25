#include "intent/corpus.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace intent;

namespace {

Corpus synthetic_corpus(std::size_t n_a, std::size_t n_b) {
    Corpus corpus;
    for (std::size_t i = 0; i < n_a + n_b; ++i) {
        Post p;
        p.id = "p" + std::to_string(i);
        p.text = "token";
        p.label = i < n_a ? "abuse" : "advice";
        corpus.posts.push_back(std::move(p));
    }
    corpus.labels = {"abuse", "advice"};
    return corpus;
}

} // namespace

TEST_CASE("jsonl corpus parses records in order") {
    const std::string jsonl =
        R"({"id":"1","text":"he hit me","label":"abuse"})" "\n"
        R"({"id":"2","text":"please share","label":"advice"})" "\n"
        R"({"id":"3","text":"she was hurt","label":"abuse"})" "\n"
        R"({"id":"4","text":"stay safe","label":"advice"})" "\n";
    const Corpus c = parse_corpus(jsonl, CorpusFormat::jsonl);
    CHECK(c.size() == 4);
    CHECK(c.labels == std::vector<std::string>{"abuse", "advice"});
    CHECK(c.posts[0].id == "1");
    CHECK(c.posts[3].text == "stay safe");
}

TEST_CASE("empty text is rejected with the record number") {
    const std::string jsonl =
        R"({"id":"1","text":"ok"})" "\n"
        R"({"id":"2","text":"fine"})" "\n"
        R"({"id":"3","text":"   "})" "\n";
    CHECK_THROWS_WITH(parse_corpus(jsonl, CorpusFormat::jsonl),
                      doctest::Contains("empty text at record 3"));
}

TEST_CASE("more than two labels is an error listing them") {
    const std::string jsonl =
        R"({"id":"1","text":"a","label":"x"})" "\n"
        R"({"id":"2","text":"b","label":"y"})" "\n"
        R"({"id":"3","text":"c","label":"z"})" "\n";
    CHECK_THROWS_WITH(parse_corpus(jsonl, CorpusFormat::jsonl),
                      doctest::Contains("'z'"));
}

TEST_CASE("duplicate ids are rejected") {
    const std::string jsonl =
        R"({"id":"1","text":"a"})" "\n"
        R"({"id":"1","text":"b"})" "\n";
    CHECK_THROWS(parse_corpus(jsonl, CorpusFormat::jsonl));
}

TEST_CASE("csv corpus honours RFC-4180 quoting") {
    const std::string csv =
        "id,text,label\n"
        "1,\"hello, \"\"world\"\"\",abuse\n"
        "2,plain,advice\n";
    const Corpus c = parse_corpus(csv, CorpusFormat::csv);
    REQUIRE(c.size() == 2);
    CHECK(c.posts[0].text == "hello, \"world\"");
    CHECK(*c.posts[1].label == "advice");
}

TEST_CASE("bundled demo corpus has 40 posts, 18 abuse / 22 advice") {
    const Corpus c = load_corpus(std::string(DATA_DIR) + "/demo_corpus.jsonl",
                                 CorpusFormat::jsonl);
    CHECK(c.size() == 40);
    const auto dist = label_distribution(c);
    CHECK(dist.at("abuse").count == 18);
    CHECK(dist.at("advice").count == 22);
}

TEST_CASE("label distribution matches hand arithmetic") {
    SUBCASE("paper-scale 510/625") {
        const Corpus c = synthetic_corpus(510, 625);
        const auto dist = label_distribution(c);
        CHECK(dist.at("abuse").count == 510);
        CHECK(dist.at("abuse").fraction == doctest::Approx(0.449).epsilon(1e-3));
        CHECK(dist.at("advice").fraction == doctest::Approx(0.551).epsilon(1e-3));
        CHECK(dist.at("abuse").fraction + dist.at("advice").fraction ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("3/1") {
        const Corpus c = synthetic_corpus(3, 1);
        const auto dist = label_distribution(c);
        CHECK(dist.at("abuse").count == 3);
        CHECK(dist.at("abuse").fraction == 0.75);
        CHECK(dist.at("advice").fraction == 0.25);
    }
    SUBCASE("unlabeled post is an error naming the post") {
        Corpus c = synthetic_corpus(2, 2);
        c.posts[1].label.reset();
        CHECK_THROWS_WITH(label_distribution(c), doctest::Contains("p1"));
    }
}

TEST_CASE("stratified split") {
    SUBCASE("5/5 corpus, k=5: one of each class per fold") {
        const Corpus c = synthetic_corpus(5, 5);
        const FoldPlan plan = split_stratified(c, 5, 7);
        std::map<int, std::map<std::string, int>> per_fold;
        for (std::size_t i = 0; i < c.size(); ++i) {
            per_fold[plan.assignments[i]][*c.posts[i].label]++;
        }
        REQUIRE(per_fold.size() == 5);
        for (const auto& [fold, counts] : per_fold) {
            CHECK(counts.at("abuse") == 1);
            CHECK(counts.at("advice") == 1);
        }
    }
    SUBCASE("k = n is leave-one-out: singleton folds") {
        const Corpus c = synthetic_corpus(4, 4);
        const FoldPlan plan = split_stratified(c, 8, 1);
        std::set<int> folds(plan.assignments.begin(), plan.assignments.end());
        CHECK(folds.size() == 8);
    }
    SUBCASE("510/625 corpus, k=10: per-fold abuse count in {51, 52}") {
        const Corpus c = synthetic_corpus(510, 625);
        const FoldPlan plan = split_stratified(c, 10, 42);
        std::map<int, int> abuse_per_fold;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (*c.posts[i].label == "abuse") abuse_per_fold[plan.assignments[i]]++;
        }
        for (const auto& [fold, count] : abuse_per_fold) {
            CHECK(count >= 51);
            CHECK(count <= 52);
        }
    }
    SUBCASE("deterministic for fixed (corpus, k, seed)") {
        const Corpus c = synthetic_corpus(20, 30);
        CHECK(split_stratified(c, 5, 9).assignments ==
              split_stratified(c, 5, 9).assignments);
        CHECK(split_stratified(c, 5, 9).assignments !=
              split_stratified(c, 5, 10).assignments);
    }
    SUBCASE("partition: folds are disjoint and cover the corpus") {
        const Corpus c = synthetic_corpus(13, 17);
        const FoldPlan plan = split_stratified(c, 4, 3);
        std::size_t total = 0;
        for (int fold = 0; fold < 4; ++fold) {
            const auto test = plan.test_indices(fold);
            const auto train = plan.train_indices(fold);
            CHECK(test.size() + train.size() == c.size());
            total += test.size();
        }
        CHECK(total == c.size());
    }
    SUBCASE("stratification bound holds for every k") {
        const Corpus c = synthetic_corpus(23, 41);
        for (int k = 2; k <= 12; ++k) {
            const FoldPlan plan = split_stratified(c, k, 5);
            std::map<int, int> abuse;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (*c.posts[i].label == "abuse") abuse[plan.assignments[i]]++;
            }
            const double ideal = 23.0 / k;
            for (const auto& [fold, count] : abuse) {
                CHECK(std::abs(count - ideal) <= 1.0);
            }
        }
    }
    SUBCASE("rejects k < 2 and k > n") {
        const Corpus c = synthetic_corpus(3, 3);
        CHECK_THROWS(split_stratified(c, 1, 0));
        CHECK_THROWS(split_stratified(c, 7, 0));
    }
}
