#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tilebench/board.hpp"
#include "tilebench/lexicon.hpp"
#include "tilebench/reservoir.hpp"
#include "tilebench/rng.hpp"

namespace tilebench {

// Static rack-remainder valuation: per-letter base values, a penalty per
// duplicate copy, and a vowel/consonant balance adjustment. A pure function
// of the tile multiset; leave(empty) = 0.
struct LeaveTable {
    std::array<double, kNumTileKinds> letter_value{};
    double duplicate_penalty = 2.5;  // per copy beyond the first of a letter
    double balance_penalty = 1.5;    // per unit of |vowels - consonants| beyond 1
    double exchange_adjustment = 0.0;

    double value(const Rack& kept) const;

    static LeaveTable parse(const std::string& text);
    static LeaveTable load(const std::string& path);
};

struct BotConfig {
    LeaveTable leave_table;
    double perturbation_half_width = 1.0;
    double openness_weight = 0.0;
    double exchange_threshold = 2.0;
};

struct SelectionAudit {
    double max_raw_utility = 0.0;
    double chosen_raw_utility = 0.0;
    int candidates = 0;
};

struct GameView {
    const Board& board;
    const Rack& rack;
    const RuleSet& rs;
    int reservoir_remaining;
};

class Bot {
public:
    virtual ~Bot() = default;
    virtual MoveChoice choose(const GameView& view, const std::vector<Placement>& legal,
                              Rng& game_rng) = 0;
    virtual const SelectionAudit* last_audit() const { return nullptr; }
};

// Move score plus leave of the kept tiles (plus the optional openness term);
// no randomness. Exchanges value the kept tiles plus the table's exchange
// adjustment; a pass values the unchanged rack.
double move_utility(const MoveChoice& move, const GameView& view, const BotConfig& config);

// Count of empty premium squares adjacent to tiles after the move; the hook
// behind openness_weight. Zero weight disables it.
int board_openness(const Board& board, const Placement& placement, const RuleSet& rs);

// Static evaluator: picks the candidate maximizing utility plus an
// independent Uniform(-w, w) perturbation per candidate. With w = 0 selection
// is deterministic under the documented lexicographic tie-break.
class SpeedyBot : public Bot {
public:
    explicit SpeedyBot(BotConfig config) : config_(std::move(config)) {}

    MoveChoice choose(const GameView& view, const std::vector<Placement>& legal,
                      Rng& game_rng) override;
    const SelectionAudit* last_audit() const override { return &audit_; }
    const BotConfig& config() const { return config_; }

private:
    BotConfig config_;
    SelectionAudit audit_;
};

// Best tiles to discard: the subset whose kept remainder maximizes the leave
// value. Returns nullopt for an empty rack.
std::optional<std::vector<TileId>> best_exchange_subset(const Rack& rack, const LeaveTable& table);

}  // namespace tilebench
