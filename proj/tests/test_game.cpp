#include <doctest.h>

#include <sstream>

#include "test_util.hpp"
#include "tilebench/game.hpp"
#include "tilebench/harness.hpp"

using namespace tilebench;
using tbtest::board_from;
using tbtest::data_path;
using tbtest::make_placement;
using tbtest::rack_from;
using tbtest::scrabble_rules;

namespace {

using tbtest::english_lexicon;

struct PassBot : Bot {
    MoveChoice choose(const GameView&, const std::vector<Placement>&, Rng&) override {
        return MoveChoice::make_pass();
    }
};

// Plays an illegal word unconditionally; exercises the abort path.
struct RogueBot : Bot {
    MoveChoice choose(const GameView& view, const std::vector<Placement>&, Rng&) override {
        Placement p = make_placement(view.board, 7, 7, true, "QQ");
        p.score = 4;
        return MoveChoice::make_place(p);
    }
};

BotConfig default_bot() {
    BotConfig cfg;
    cfg.leave_table = LeaveTable::load(data_path("leaves/default.leaves"));
    return cfg;
}

GameRecord play_one(uint64_t seq_seed, uint64_t game_seed_v) {
    Rng order_rng(seq_seed);
    TileSequence seq = generate_sequence(scrabble_rules(), order_rng);
    Reservoir res(seq, scrabble_rules().exchange_min_reserve);
    SpeedyBot b1(default_bot()), b2(default_bot());
    Rng game_rng(game_seed_v);
    return play_game(scrabble_rules(), english_lexicon(), res, b1, b2, game_rng);
}

}  // namespace

TEST_CASE("apply_move: pass flips the turn and counts scoreless") {
    Lexicon lex = Lexicon::build({"CAB"});
    GameState state;
    state.racks[0] = rack_from("CAB");
    Reservoir res(TileSequence::from_line("ABCDEFGH"), 7);
    Rng rng(1);
    apply_move(state, MoveChoice::make_pass(), res, scrabble_rules(), lex, rng);
    CHECK(state.board.tiles_on_board() == 0);
    CHECK(state.to_move == 1);
    CHECK(state.consecutive_scoreless == 1);
    CHECK(state.racks[0].total == 3);
    CHECK(res.remaining() == 8);
}

TEST_CASE("apply_move: placement refills the rack from the player's end") {
    Lexicon lex = Lexicon::build({"CAB"});
    GameState state;
    state.racks[0] = rack_from("CABQQXZ");
    Reservoir res(TileSequence::from_line("DEFGHIJKLM"), 7);
    Rng rng(1);

    Placement p = make_placement(state.board, 7, 7, true, "CAB");
    p.score = score_move(state.board, p, scrabble_rules());
    apply_move(state, MoveChoice::make_place(p), res, scrabble_rules(), lex, rng);
    CHECK(state.racks[0].total == 7);  // 3 played, 3 redrawn
    CHECK(state.board.tiles_on_board() == 3);
    CHECK(state.scores[0] == 14);
    CHECK(state.consecutive_scoreless == 0);
    CHECK(res.remaining() == 7);
    // front draws: D, E, F joined the rack
    CHECK(state.racks[0].counts[tile_from_char('D')] == 1);
    CHECK(state.racks[0].counts[tile_from_char('F')] == 1);
}

TEST_CASE("apply_move: exchange keeps rack and reservoir sizes") {
    Lexicon lex = Lexicon::build({"CAB"});
    GameState state;
    state.to_move = 1;
    state.racks[1] = rack_from("CABQQXZ");
    Reservoir res(TileSequence::from_line("DEFGHIJKLM"), 7);
    Rng rng(1);
    auto ex = MoveChoice::make_exchange({TileId(tile_from_char('Q')), TileId(tile_from_char('X'))});
    apply_move(state, ex, res, scrabble_rules(), lex, rng);
    CHECK(state.racks[1].total == 7);
    CHECK(res.remaining() == 10);
    CHECK(state.consecutive_scoreless == 1);
    CHECK(state.to_move == 0);
    // player 1 draws from the back: M and L arrived
    CHECK(state.racks[1].counts[tile_from_char('M')] == 1);
    CHECK(state.racks[1].counts[tile_from_char('L')] == 1);
    CHECK(state.racks[1].counts[tile_from_char('X')] == 0);
}

TEST_CASE("apply_move rejects illegal moves loudly") {
    Lexicon lex = Lexicon::build({"CAB"});
    GameState state;
    state.racks[0] = rack_from("CAB");
    Reservoir res(TileSequence::from_line("DEFGH"), 7);
    Rng rng(1);

    SUBCASE("word not in lexicon") {
        Placement p = make_placement(state.board, 7, 7, true, "BAC");
        p.score = score_move(state.board, p, scrabble_rules());
        CHECK_THROWS_AS(apply_move(state, MoveChoice::make_place(p), res, scrabble_rules(), lex, rng),
                        GameAbort);
    }
    SUBCASE("exchanging tiles not held") {
        auto ex = MoveChoice::make_exchange({TileId(tile_from_char('Z'))});
        CHECK_THROWS_AS(apply_move(state, ex, res, scrabble_rules(), lex, rng), GameAbort);
    }
    SUBCASE("exchange below the reserve floor") {
        Rng drain(2);
        res.draw(End::front, 3, drain);  // 2 left < 7
        auto ex = MoveChoice::make_exchange({TileId(tile_from_char('C'))});
        CHECK_THROWS_AS(apply_move(state, ex, res, scrabble_rules(), lex, rng), GameAbort);
    }
}

TEST_CASE("two always-pass bots end at the scoreless turn limit") {
    Rng order_rng(3);
    TileSequence seq = generate_sequence(scrabble_rules(), order_rng);
    Reservoir res(seq, scrabble_rules().exchange_min_reserve);
    PassBot a, b;
    Rng rng(3);
    GameRecord rec = play_game(scrabble_rules(), english_lexicon(), res, a, b, rng);
    CHECK(int(rec.moves.size()) == scrabble_rules().scoreless_turn_limit);
    // 0-0 before deductions: each side only loses its own rack value
    int rack_value[2] = {0, 0};
    for (int p = 0; p < 2; ++p)
        for (TileId t : rec.drawn[p]) rack_value[p] += scrabble_rules().tile_values[t];
    CHECK(rec.end_adjustments[0] == -rack_value[0]);
    CHECK(rec.end_adjustments[1] == -rack_value[1]);
    CHECK(rec.final_scores[0] == -rack_value[0]);
    CHECK(rec.final_scores[1] == -rack_value[1]);
}

TEST_CASE("a rogue bot aborts the game instead of corrupting it") {
    Rng order_rng(4);
    TileSequence seq = generate_sequence(scrabble_rules(), order_rng);
    Reservoir res(seq, scrabble_rules().exchange_min_reserve);
    RogueBot a;
    PassBot b;
    Rng rng(4);
    CHECK_THROWS_AS(play_game(scrabble_rules(), english_lexicon(), res, a, b, rng), GameAbort);
}

TEST_CASE("full games conserve tiles and replay exactly") {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        Rng order_rng(seed);
        TileSequence seq = generate_sequence(scrabble_rules(), order_rng);
        std::array<int, kNumTileKinds> initial{};
        for (TileId t : seq.tiles) ++initial[t];

        Reservoir res(seq, scrabble_rules().exchange_min_reserve);
        SpeedyBot b1(default_bot()), b2(default_bot());
        Rng game_rng(seed + 100);
        GameRecord rec = play_game(scrabble_rules(), english_lexicon(), res, b1, b2, game_rng);

        // exchanges recycle tiles, so drawn-counts can overlap the reserve;
        // conservation is judged on the final partition: tiles on the board,
        // tiles on racks (drawn minus played), and tiles still in reserve
        std::array<int, kNumTileKinds> final_count{};
        for (TileId t : res.remaining_tiles()) ++final_count[t];
        std::array<int, 2> rack_totals{};
        for (int p = 0; p < 2; ++p) {
            std::array<int, kNumTileKinds> held{};
            for (TileId t : rec.drawn[p]) ++held[t];
            for (const auto& m : rec.moves) {
                if (m.player != p) continue;
                if (m.move.kind == MoveChoice::Kind::placement)
                    for (const auto& t : m.move.place.tiles_used) --held[t.tile];
                else if (m.move.kind == MoveChoice::Kind::exchange)
                    for (TileId t : m.move.exchange_tiles) --held[t];
            }
            for (int k = 0; k < kNumTileKinds; ++k) {
                REQUIRE(held[k] >= 0);
                final_count[k] += held[k];
                rack_totals[p] += held[k];
            }
        }
        for (const auto& m : rec.moves)
            if (m.move.kind == MoveChoice::Kind::placement)
                for (const auto& t : m.move.place.tiles_used) ++final_count[t.tile];
        CHECK(final_count == initial);
        if (rack_totals[0] == 0 || rack_totals[1] == 0) {
            // played out: the finisher collects the loser's remaining values
            int fin = rack_totals[0] == 0 ? 0 : 1;
            CHECK(rec.end_adjustments[fin] >= 0);
            CHECK(rec.end_adjustments[1 - fin] == -rec.end_adjustments[fin]);
        }

        auto replayed = replay_record(rec, scrabble_rules());
        CHECK(replayed == rec.final_scores);
        CHECK(rec.audit_violations == 0);
    }
}

TEST_CASE("play_game is deterministic and records round-trip") {
    GameRecord a = play_one(11, 22);
    GameRecord b = play_one(11, 22);
    std::ostringstream sa, sb;
    a.serialize(sa);
    b.serialize(sb);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("tilebench-record 1\n", 0) == 0);

    GameRecord c = play_one(11, 23);  // different game seed, same order
    std::ostringstream sc;
    c.serialize(sc);
    CHECK(sa.str() != sc.str());

    std::istringstream in(sa.str());
    GameRecord parsed = GameRecord::parse(in);
    std::ostringstream round;
    parsed.serialize(round);
    CHECK(round.str() == sa.str());
    CHECK(replay_record(parsed, scrabble_rules()) == a.final_scores);
}

TEST_CASE("truncated records are rejected") {
    GameRecord a = play_one(5, 6);
    std::ostringstream sa;
    a.serialize(sa);
    std::string text = sa.str();
    std::istringstream in(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(GameRecord::parse(in), GameAbort);
}
