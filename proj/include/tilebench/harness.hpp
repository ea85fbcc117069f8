#pragma once

#include <functional>
#include <string>

#include "tilebench/outcome.hpp"

namespace tilebench {

struct ExperimentConfig {
    std::string ruleset_path;
    std::string lexicon_path;  // serialized lexicon file
    int n_orders = 200;
    int replicates_per_order = 20;
    uint64_t master_seed = 0;
    BotConfig bot1;
    BotConfig bot2;
    int workers = 1;
    std::string output_path;
    bool classic_bag = false;  // validation mode: uniform bag draws
};

struct ExperimentResult {
    OutcomeTable table;
    int aborted = 0;
    std::vector<std::string> abort_diagnostics;
};

// Stable published seed derivation: per-game and per-order seeds depend only
// on these integers, never on scheduling.
uint64_t order_seed(uint64_t master_seed, uint64_t order_id);
uint64_t game_seed(uint64_t master_seed, uint64_t order_id, uint64_t replicate_id);

TileSequence sequence_for_order(const RuleSet& rs, uint64_t master_seed, uint64_t order_id);

// Runs n_orders x replicates_per_order games over a bounded worker pool.
// Rows are flushed to output_path as games finish; an interrupted run resumes
// from the rows already on disk. The final file is rewritten sorted by
// (order_id, replicate_id) with a metadata sidecar at <output>.meta.json.
// The progress callback, when set, is invoked with (done, total).
ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::function<void(int, int)> progress = nullptr);

// Single-game helper shared by the harness and the CLI replay path.
GameRecord run_single_game(const RuleSet& rs, const Lexicon& lex, const ExperimentConfig& config,
                           uint64_t order_id, uint64_t replicate_id);

}  // namespace tilebench
