#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "tilebench/bot.hpp"
#include "tilebench/movegen.hpp"
#include "tilebench/reservoir.hpp"

namespace tilebench {

// An illegal bot move signals a bot bug; the game aborts loudly rather than
// skipping the move, so a simulation dataset never silently absorbs one.
struct GameAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GameState {
    Board board;
    std::array<Rack, 2> racks;
    std::array<int, 2> scores{};
    int to_move = 0;
    int consecutive_scoreless = 0;
};

struct MoveRecord {
    int player = 0;
    MoveChoice move;
    int score = 0;
};

struct GameRecord {
    std::string ruleset_name;
    uint64_t order_id = 0;
    uint64_t replicate_id = 0;
    std::string initial_sequence;  // tile characters, front to back
    std::string end_assignment = "p1=front,p2=back";
    std::vector<MoveRecord> moves;
    std::array<int, 2> final_scores{};
    std::array<int, 2> end_adjustments{};
    std::array<std::vector<TileId>, 2> drawn;  // tiles in draw order per player
    std::array<int, 2> bingos{};
    std::array<int, kNumTileKinds> played_counts_p1{};
    int audit_violations = 0;
    double worst_margin = 1e300;

    std::array<int, kNumTileKinds> exposure_counts_p1() const {
        std::array<int, kNumTileKinds> out{};
        for (TileId t : drawn[0]) ++out[t];
        return out;
    }

    void serialize(std::ostream& out) const;
    static GameRecord parse(std::istream& in);
    void save(const std::string& path) const;
    static GameRecord load(const std::string& path);
};

// Applies a move for state.to_move: board/scores/racks updated, rack refilled
// from the player's reservoir end (player 0 front, player 1 back), scoreless
// counter maintained, turn passed. Throws GameAbort on an illegal move.
// Tiles drawn are appended to record->drawn when record is non-null.
void apply_move(GameState& state, const MoveChoice& move, Reservoir& res, const RuleSet& rs,
                const Lexicon& lex, Rng& game_rng, GameRecord* record = nullptr);

// Plays a full game between two bots on a fresh reservoir. Fully determined
// by (reservoir sequence, bot configs, game_rng seed).
GameRecord play_game(const RuleSet& rs, const Lexicon& lex, Reservoir& res, Bot& bot1, Bot& bot2,
                     Rng& game_rng);

// Re-derives every placement score against a reconstructed board and checks
// the stored final scores. Throws GameAbort on any disagreement; returns the
// replayed final scores. When out is non-null, prints board evolution.
std::array<int, 2> replay_record(const GameRecord& record, const RuleSet& rs,
                                 std::ostream* out = nullptr);

}  // namespace tilebench
