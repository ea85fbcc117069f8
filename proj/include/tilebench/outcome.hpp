#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tilebench/game.hpp"

namespace tilebench {

// One CSV row: everything the analysis module needs, derived from a
// GameRecord plus its order's TileSequence.
struct GameOutcome {
    uint64_t order_id = 0;
    uint64_t replicate_id = 0;
    int p1_score = 0;
    int p2_score = 0;
    int diff = 0;  // p1 - p2
    int winner = 0;  // 1, 2, or 0 for a tie
    int p1_bingos = 0;
    int p2_bingos = 0;
    int tiles_available_p1 = 0;  // tiles drawn over the game
    int tiles_available_p2 = 0;
    int audit_violations = 0;
    std::array<int, 2> blank_positions{};       // 1-based positions, sorted
    std::vector<int> s_positions;               // 1-based positions, sorted
    std::array<int, kNumTileKinds> drawn_p1{};  // exposure counts (tiles drawn)
    std::array<int, kNumTileKinds> played_p1{};  // tiles-played proxy

    static GameOutcome from_record(const GameRecord& rec, const TileSequence& seq);
};

struct OutcomeTable {
    std::string ruleset_name;
    std::vector<GameOutcome> rows;

    // rows grouped by order, each group sorted by replicate
    std::map<uint64_t, std::vector<const GameOutcome*>> by_order() const;
    void sort_rows();
};

struct OrderSummary {
    uint64_t order_id = 0;
    int replicates = 0;
    double mean_p1 = 0, var_p1 = 0, sd_p1 = 0;
    double mean_diff = 0, var_diff = 0, sd_diff = 0;
    bool variance_defined = false;  // needs >= 2 replicates
};

// Unbiased per-order sample statistics for p1_score and diff.
std::vector<OrderSummary> summarize_orders(const OutcomeTable& table);

// CSV schema, versioned via a comment-style first line.
std::string outcome_csv_header();
std::string outcome_csv_row(const GameOutcome& o);
GameOutcome parse_outcome_csv_row(const std::string& line);

void write_outcome_csv(const OutcomeTable& table, const std::string& path);
OutcomeTable read_outcome_csv(const std::string& path);

}  // namespace tilebench
