#include "intent/synth.hpp"

#include <json.hpp>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace intent {

SynthSpec SynthSpec::defaults() {
    SynthSpec spec;
    spec.pool_a = {
        "he",      "she",      "his",       "her",       "him",       "was",
        "were",    "hit",      "punched",   "kicked",    "attacked",  "abused",
        "hurt",    "screamed", "yelled",    "threatened", "afraid",   "scared",
        "terrified", "worried", "hate",     "angry",     "furious",   "miserable",
        "sad",     "crying",   "suffering", "pain",      "bruises",   "blood",
        "injury",  "sick",     "hospital",  "pregnant",  "died",      "killed",
        "murder",  "death",    "funeral",   "escaped",   "husband",   "monster",
        "violent", "fear",     "broke",     "grabbed",
    };
    spec.pool_b = {
        "you",     "your",      "please",    "share",     "support",  "help",
        "hope",    "donate",    "appreciate", "love",     "thank",    "thanks",
        "happy",   "peace",     "safe",      "care",      "trust",    "smile",
        "bless",   "good",      "great",     "wonderful", "advice",   "plan",
        "wish",    "will",      "future",    "tomorrow",  "today",    "believe",
        "encourage", "inspire", "strong",    "community", "awareness", "together",
        "join",    "visit",     "learn",     "grow",
    };
    return spec;
}

Corpus synth_corpus(const SynthSpec& spec) {
    if (spec.pool_a.empty() || spec.pool_b.empty()) {
        throw std::runtime_error("synth: both keyword pools must be non-empty");
    }
    std::set<std::string> a(spec.pool_a.begin(), spec.pool_a.end());
    for (const auto& w : spec.pool_b) {
        if (a.count(w)) {
            throw std::runtime_error("synth: keyword pools overlap on '" + w + "'");
        }
    }
    if (spec.n_posts == 0) throw std::runtime_error("synth: n_posts must be positive");
    if (spec.min_tokens < 1 || spec.max_tokens < spec.min_tokens) {
        throw std::runtime_error("synth: invalid tokens-per-post range");
    }
    if (spec.signal_fraction < 0.0 || spec.signal_fraction > 1.0) {
        throw std::runtime_error("synth: signal fraction must be in [0, 1]");
    }

    std::vector<std::string> noise;
    noise.reserve(spec.noise_vocab_size);
    for (std::size_t i = 0; i < spec.noise_vocab_size; ++i) {
        noise.push_back("w" + std::to_string(i));
    }

    const auto n_a = static_cast<std::size_t>(
        std::llround(static_cast<double>(spec.n_posts) * spec.class_balance));

    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::size_t> len_dist(spec.min_tokens, spec.max_tokens);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Corpus corpus;
    for (std::size_t i = 0; i < spec.n_posts; ++i) {
        const bool is_a = i < n_a;
        const auto& pool = is_a ? spec.pool_a : spec.pool_b;
        std::uniform_int_distribution<std::size_t> pool_dist(0, pool.size() - 1);
        std::uniform_int_distribution<std::size_t> noise_dist(0, noise.size() - 1);

        Post post;
        post.id = "p" + std::to_string(i + 1);
        post.label = is_a ? spec.label_a : spec.label_b;
        const std::size_t len = len_dist(rng);
        for (std::size_t t = 0; t < len; ++t) {
            if (t) post.text += ' ';
            if (noise.empty() || unit(rng) < spec.signal_fraction) {
                post.text += pool[pool_dist(rng)];
            } else {
                post.text += noise[noise_dist(rng)];
            }
        }
        corpus.posts.push_back(std::move(post));
    }
    corpus.labels = {std::min(spec.label_a, spec.label_b),
                     std::max(spec.label_a, spec.label_b)};
    return corpus;
}

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& post : corpus.posts) {
        nlohmann::json j;
        j["id"] = post.id;
        j["text"] = post.text;
        if (post.label) j["label"] = *post.label;
        if (!post.meta.empty()) j["meta"] = post.meta;
        out += j.dump();
        out += '\n';
    }
    return out;
}

} // namespace intent
