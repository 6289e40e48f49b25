#pragma once

#include "intent/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace intent {

/// Synthetic labeled corpus generator: class-c posts draw `signal_fraction`
/// of their tokens from the class keyword pool and the rest from a shared
/// noise vocabulary.
struct SynthSpec {
    std::size_t n_posts = 400;
    double class_balance = 0.45; // fraction of posts with label_a
    std::string label_a = "abuse";
    std::string label_b = "advice";
    std::vector<std::string> pool_a;
    std::vector<std::string> pool_b;
    double signal_fraction = 0.6;
    std::size_t noise_vocab_size = 500;
    std::size_t min_tokens = 8;
    std::size_t max_tokens = 20;
    std::uint64_t seed = 42;

    static SynthSpec defaults();
};

Corpus synth_corpus(const SynthSpec& spec);

/// JSONL serialization, one post per line.
std::string corpus_to_jsonl(const Corpus& corpus);

} // namespace intent
