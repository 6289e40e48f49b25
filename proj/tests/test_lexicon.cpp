#include "intent/lexicon.hpp"

#include <doctest.h>

using namespace intent;

namespace {

const char* kSmallLexicon = R"(# toy lexicon
category affective
category posemo parent affective
  please
  share
  donat*
  appreciat*
category negemo parent affective
  hate*
  evil
category anger parent negemo
  hate*
)";

} // namespace

TEST_CASE("parse_lexicon reads categories, parents and patterns") {
    const CategoryLexicon lex = parse_lexicon(kSmallLexicon);
    REQUIRE(lex.categories.size() == 4);
    CHECK(lex.categories[0].name == "affective");
    CHECK(!lex.categories[0].parent.has_value());
    CHECK(lex.categories[1].name == "posemo");
    CHECK(*lex.categories[1].parent == "affective");
    CHECK(lex.categories[1].patterns ==
          std::vector<std::string>{"please", "share", "donat*", "appreciat*"});
    CHECK(lex.ancestors("anger") ==
          std::vector<std::string>{"negemo", "affective"});
}

TEST_CASE("parse_lexicon rejects malformed input with line numbers") {
    CHECK_THROWS_WITH(parse_lexicon("category a\ncategory a\n"),
                      doctest::Contains("line 2"));
    CHECK_THROWS_WITH(parse_lexicon("category a\nbad pattern\n"),
                      doctest::Contains("line 2"));
    CHECK_THROWS_WITH(parse_lexicon("category a\nw*ord\n"),
                      doctest::Contains("line 2"));
    CHECK_THROWS(parse_lexicon("category a parent missing\nword\n"));
}

TEST_CASE("match_token: literals, prefix wildcards, hierarchy closure") {
    const CategoryLexicon lex = parse_lexicon(kSmallLexicon);
    CHECK(match_token(lex, "please") ==
          std::set<std::string>{"posemo", "affective"});
    CHECK(match_token(lex, "donated") ==
          std::set<std::string>{"posemo", "affective"});
    CHECK(match_token(lex, "donat") ==
          std::set<std::string>{"posemo", "affective"});
    CHECK(match_token(lex, "hated") ==
          std::set<std::string>{"negemo", "anger", "affective"});
    CHECK(match_token(lex, "dona").empty());
    CHECK(match_token(lex, "unrelated").empty());
}

TEST_CASE("wildcard requires the full prefix; bare literal does not match longer") {
    const CategoryLexicon lex = parse_lexicon("category x\n  evil\n");
    CHECK(match_token(lex, "evil") == std::set<std::string>{"x"});
    CHECK(match_token(lex, "evildoer").empty());
}

TEST_CASE("featurize_lexicon produces percentage-of-tokens values") {
    const CategoryLexicon lex =
        load_lexicon(std::string(DATA_DIR) + "/demo.lex");
    const auto seq =
        tokenize("Please view, share and if possible donate. We appreciate your support!");
    REQUIRE(seq.tokens.size() == 11);
    const auto fv = featurize_lexicon(seq, lex);
    CHECK(fv.token_count == 11);
    CHECK(fv.values.at("posemo") == doctest::Approx(100.0 * 4 / 11).epsilon(1e-12));
    CHECK(fv.values.at("posemo") == doctest::Approx(36.36).epsilon(1e-3));
    CHECK(fv.values.at("death") == 0.0);
    // every category appears, matched or not
    CHECK(fv.values.size() == lex.categories.size());
}

TEST_CASE("featurize_lexicon counts multi-category tokens once per category") {
    const CategoryLexicon lex = parse_lexicon(kSmallLexicon);
    TokenSequence seq;
    seq.tokens = {"hateful", "hates"};
    const auto fv = featurize_lexicon(seq, lex);
    CHECK(fv.values.at("negemo") == 100.0);
    CHECK(fv.values.at("anger") == 100.0);
    CHECK(fv.values.at("affective") == 100.0);
    CHECK(fv.values.at("posemo") == 0.0);
}

TEST_CASE("featurize_lexicon rejects an empty post") {
    const CategoryLexicon lex = parse_lexicon(kSmallLexicon);
    TokenSequence seq;
    CHECK_THROWS_WITH(featurize_lexicon(seq, lex),
                      doctest::Contains("cannot featurize empty post"));
}

TEST_CASE("lexicon_matrix stacks rows in post order, columns in lexicon order") {
    const CategoryLexicon lex = parse_lexicon(kSmallLexicon);
    TokenSequence a;
    a.source_post_id = "a";
    a.tokens = {"please", "share"};
    TokenSequence b;
    b.source_post_id = "b";
    b.tokens = {"evil", "word"};
    const FeatureMatrix m = lexicon_matrix({a, b}, lex);
    CHECK(m.post_ids == std::vector<std::string>{"a", "b"});
    CHECK(m.feature_names ==
          std::vector<std::string>{"affective", "posemo", "negemo", "anger"});
    CHECK(m.values(0, 1) == 100.0); // posemo for post a
    CHECK(m.values(1, 2) == 50.0);  // negemo for post b
    CHECK(m.values(1, 1) == 0.0);
}

TEST_CASE("rank_by_mean_gap orders by |gap| then name, with exact means") {
    FeatureMatrix m;
    m.post_ids = {"p0", "p1", "p2", "p3"};
    m.feature_names = {"alpha", "beta", "gamma"};
    m.values.resize(4, 3);
    // class "abuse" rows 0-1, "advice" rows 2-3
    m.values << 10.0, 4.0, 1.0,
                20.0, 6.0, 3.0,
                 2.0, 5.0, 1.0,
                 4.0, 5.0, 3.0;
    const std::vector<std::string> labels{"abuse", "abuse", "advice", "advice"};
    const auto ranking = rank_by_mean_gap(m, labels);
    REQUIRE(ranking.size() == 3);
    CHECK(ranking[0].feature == "alpha");
    CHECK(ranking[0].mean_a == 15.0);
    CHECK(ranking[0].mean_b == 3.0);
    CHECK(ranking[0].abs_gap == 12.0);
    // beta: |5 - 5| = 0, gamma: |2 - 2| = 0 -> tie broken by name
    CHECK(ranking[1].feature == "beta");
    CHECK(ranking[2].feature == "gamma");
    CHECK(ranking[1].abs_gap == 0.0);
}

TEST_CASE("rank_by_mean_gap validates its inputs") {
    FeatureMatrix m;
    m.post_ids = {"p0", "p1"};
    m.feature_names = {"f"};
    m.values = MatrixXs::Zero(2, 1);
    CHECK_THROWS(rank_by_mean_gap(m, {"abuse"}));          // row misalignment
    CHECK_THROWS(rank_by_mean_gap(m, {"abuse", "abuse"})); // one class
}

TEST_CASE("select_features keeps the top-k ranked columns") {
    FeatureMatrix m;
    m.post_ids = {"p0", "p1"};
    m.feature_names = {"a", "b", "c"};
    m.values.resize(2, 3);
    m.values << 1.0, 2.0, 3.0,
                4.0, 5.0, 6.0;
    std::vector<FeatureGap> ranking(3);
    ranking[0].feature = "c";
    ranking[1].feature = "a";
    ranking[2].feature = "b";
    const FeatureMatrix kept = select_features(m, ranking, 2);
    CHECK(kept.feature_names == std::vector<std::string>{"c", "a"});
    CHECK(kept.values(0, 0) == 3.0);
    CHECK(kept.values(1, 1) == 4.0);
    CHECK_THROWS(select_features(m, ranking, 0));
    CHECK_THROWS(select_features(m, ranking, 4));
}

TEST_CASE("bundled demo lexicon ranks emotion features apart on the demo corpus") {
    const CategoryLexicon lex = load_lexicon(std::string(DATA_DIR) + "/demo.lex");
    CHECK(lex.categories.size() == 20);
    CHECK(lex.ancestors("anger") == std::vector<std::string>{"negemo", "affective"});
}
