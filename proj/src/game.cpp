#include "tilebench/game.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tilebench {

namespace {

End player_end(int player) { return player == 0 ? End::front : End::back; }

int remaining_tile_value(const Rack& rack, const RuleSet& rs) {
    int v = 0;
    for (int t = 0; t < kNumTileKinds; ++t) v += rack.counts[t] * rs.tile_values[t];
    return v;
}

}  // namespace

void apply_move(GameState& state, const MoveChoice& move, Reservoir& res, const RuleSet& rs,
                const Lexicon& lex, Rng& game_rng, GameRecord* record) {
    const int p = state.to_move;
    Rack& rack = state.racks[p];
    switch (move.kind) {
        case MoveChoice::Kind::placement: {
            if (auto err = check_placement(state.board, rack, move.place, rs, lex))
                throw GameAbort("illegal placement by player " + std::to_string(p + 1) + ": " +
                                *err);
            for (const auto& t : move.place.tiles_used) {
                rack.remove(t.tile);
                state.board.place(t.row, t.col, t.letter, t.is_blank());
                if (record && p == 0) ++record->played_counts_p1[t.tile];
            }
            state.scores[p] += move.place.score;
            auto drawn = res.draw(player_end(p), rs.rack_size - rack.total, game_rng);
            for (TileId t : drawn) {
                rack.add(t);
                if (record) record->drawn[p].push_back(t);
            }
            if (move.place.score == 0)
                ++state.consecutive_scoreless;
            else
                state.consecutive_scoreless = 0;
            break;
        }
        case MoveChoice::Kind::exchange: {
            if (move.exchange_tiles.empty())
                throw GameAbort("empty exchange by player " + std::to_string(p + 1));
            Rack discard;
            for (TileId t : move.exchange_tiles) discard.add(t);
            if (!rack.contains(discard))
                throw GameAbort("exchange of tiles not on rack by player " + std::to_string(p + 1));
            if (res.remaining() < rs.exchange_min_reserve)
                throw GameAbort("exchange with fewer than " +
                                std::to_string(rs.exchange_min_reserve) + " tiles in reserve");
            auto replacements = res.exchange(player_end(p), move.exchange_tiles, game_rng);
            for (TileId t : move.exchange_tiles) rack.remove(t);
            for (TileId t : replacements) {
                rack.add(t);
                if (record) record->drawn[p].push_back(t);
            }
            ++state.consecutive_scoreless;
            break;
        }
        case MoveChoice::Kind::pass:
            ++state.consecutive_scoreless;
            break;
    }
    state.to_move = 1 - p;
}

GameRecord play_game(const RuleSet& rs, const Lexicon& lex, Reservoir& res, Bot& bot1, Bot& bot2,
                     Rng& game_rng) {
    GameRecord record;
    record.ruleset_name = rs.name;
    {
        TileSequence seq;
        seq.tiles = res.remaining_tiles();
        record.initial_sequence = seq.to_line();
    }

    GameState state;
    for (int p = 0; p < 2; ++p) {
        auto drawn = res.draw(player_end(p), rs.rack_size, game_rng);
        for (TileId t : drawn) {
            state.racks[p].add(t);
            record.drawn[p].push_back(t);
        }
    }

    MoveGenerator gen(lex);
    Bot* bots[2] = {&bot1, &bot2};
    bool played_out = false;
    int playing_out_player = 0;

    // Hard cap as a stuck-game safeguard; normal games run ~30 moves.
    for (int turn = 0; turn < 1000; ++turn) {
        const int p = state.to_move;
        auto legal = gen.legal_moves(state.board, state.racks[p], rs);
        GameView view{state.board, state.racks[p], rs, res.remaining()};
        MoveChoice choice = bots[p]->choose(view, legal, game_rng);
        if (const SelectionAudit* audit = bots[p]->last_audit()) {
            // the two-point rule: a candidate at or below max - 2 is unreachable
            double margin = audit->chosen_raw_utility - (audit->max_raw_utility - 2.0);
            record.worst_margin = std::min(record.worst_margin, margin);
            if (margin <= 1e-9 && audit->candidates > 1) ++record.audit_violations;
        }

        MoveRecord mr;
        mr.player = p;
        mr.move = choice;
        mr.score = choice.kind == MoveChoice::Kind::placement ? choice.place.score : 0;
        apply_move(state, choice, res, rs, lex, game_rng, &record);
        if (choice.kind == MoveChoice::Kind::placement &&
            int(choice.place.tiles_used.size()) == rs.rack_size)
            ++record.bingos[p];
        record.moves.push_back(std::move(mr));

        if (state.racks[p].total == 0 && res.remaining() == 0) {
            played_out = true;
            playing_out_player = p;
            break;
        }
        if (state.consecutive_scoreless >= rs.scoreless_turn_limit) break;
    }

    if (played_out) {
        int opp = 1 - playing_out_player;
        int v = remaining_tile_value(state.racks[opp], rs);
        record.end_adjustments[playing_out_player] = v;
        record.end_adjustments[opp] = -v;
    } else {
        for (int p = 0; p < 2; ++p)
            record.end_adjustments[p] = -remaining_tile_value(state.racks[p], rs);
    }
    for (int p = 0; p < 2; ++p) record.final_scores[p] = state.scores[p] + record.end_adjustments[p];
    return record;
}

// --- record serialization -------------------------------------------------

void GameRecord::serialize(std::ostream& out) const {
    out << "tilebench-record 1\n";
    out << "ruleset " << ruleset_name << "\n";
    out << "ids " << order_id << " " << replicate_id << "\n";
    out << "ends " << end_assignment << "\n";
    out << "sequence " << initial_sequence << "\n";
    for (const auto& m : moves) {
        out << "move " << m.player + 1 << " ";
        switch (m.move.kind) {
            case MoveChoice::Kind::placement: {
                const Placement& p = m.move.place;
                out << "place " << int(p.row) << " " << int(p.col) << " "
                    << (p.across ? 'A' : 'D') << " " << p.word_formed << " " << p.score << " ";
                for (size_t i = 0; i < p.tiles_used.size(); ++i) {
                    const auto& t = p.tiles_used[i];
                    if (i) out << ";";
                    out << int(t.row) << "," << int(t.col) << "," << tile_char(t.tile) << ","
                        << char('A' + t.letter);
                }
                break;
            }
            case MoveChoice::Kind::exchange: {
                out << "exchange ";
                for (TileId t : m.move.exchange_tiles) out << tile_char(t);
                break;
            }
            case MoveChoice::Kind::pass:
                out << "pass";
                break;
        }
        out << "\n";
    }
    out << "bingos " << bingos[0] << " " << bingos[1] << "\n";
    out << "adjust " << end_adjustments[0] << " " << end_adjustments[1] << "\n";
    out << "final " << final_scores[0] << " " << final_scores[1] << "\n";
    for (int p = 0; p < 2; ++p) {
        out << "drawn " << p + 1 << " ";
        for (TileId t : drawn[p]) out << tile_char(t);
        out << "\n";
    }
    out << "end\n";
}

GameRecord GameRecord::parse(std::istream& in) {
    GameRecord rec;
    std::string line;
    auto fail = [](const std::string& why) -> GameRecord {
        throw GameAbort("bad game record: " + why);
    };
    if (!std::getline(in, line) || line != "tilebench-record 1")
        return fail("missing or unsupported header");
    while (std::getline(in, line)) {
        if (line == "end") return rec;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "ruleset") {
            ls >> rec.ruleset_name;
        } else if (key == "ids") {
            ls >> rec.order_id >> rec.replicate_id;
        } else if (key == "ends") {
            ls >> rec.end_assignment;
        } else if (key == "sequence") {
            ls >> rec.initial_sequence;
        } else if (key == "move") {
            int player;
            std::string kind;
            ls >> player >> kind;
            MoveRecord mr;
            mr.player = player - 1;
            if (kind == "place") {
                Placement p;
                int row, col, score;
                char dir;
                std::string word, tiles;
                ls >> row >> col >> dir >> word >> score >> tiles;
                p.row = uint8_t(row);
                p.col = uint8_t(col);
                p.across = dir == 'A';
                p.word_formed = word;
                p.score = score;
                std::istringstream ts(tiles);
                std::string item;
                while (std::getline(ts, item, ';')) {
                    PlacedTile t;
                    int r, c;
                    char tc, lc;
                    if (std::sscanf(item.c_str(), "%d,%d,%c,%c", &r, &c, &tc, &lc) != 4)
                        return fail("bad placed-tile entry: " + item);
                    t.row = uint8_t(r);
                    t.col = uint8_t(c);
                    t.tile = TileId(tile_from_char(tc));
                    t.letter = uint8_t(lc - 'A');
                    p.tiles_used.push_back(t);
                }
                mr.move = MoveChoice::make_place(std::move(p));
                mr.score = score;
            } else if (kind == "exchange") {
                std::string tiles;
                ls >> tiles;
                std::vector<TileId> ts;
                for (char c : tiles) ts.push_back(TileId(tile_from_char(c)));
                mr.move = MoveChoice::make_exchange(std::move(ts));
            } else if (kind == "pass") {
                mr.move = MoveChoice::make_pass();
            } else {
                return fail("unknown move kind: " + kind);
            }
            rec.moves.push_back(std::move(mr));
        } else if (key == "bingos") {
            ls >> rec.bingos[0] >> rec.bingos[1];
        } else if (key == "adjust") {
            ls >> rec.end_adjustments[0] >> rec.end_adjustments[1];
        } else if (key == "final") {
            ls >> rec.final_scores[0] >> rec.final_scores[1];
        } else if (key == "drawn") {
            int player;
            std::string tiles;
            ls >> player >> tiles;
            auto& v = rec.drawn[player - 1];
            v.clear();
            for (char c : tiles) v.push_back(TileId(tile_from_char(c)));
        } else {
            return fail("unknown record key: " + key);
        }
    }
    return fail("missing end marker");
}

void GameRecord::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw GameAbort("cannot open record for write: " + path);
    serialize(f);
}

GameRecord GameRecord::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw GameAbort("cannot open record for read: " + path);
    return parse(f);
}

namespace {

void print_board(const Board& b, std::ostream& out) {
    out << "   ";
    for (int c = 0; c < kBoardSize; ++c) out << char('a' + c);
    out << "\n";
    for (int r = 0; r < kBoardSize; ++r) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%2d ", r + 1);
        out << buf;
        for (int c = 0; c < kBoardSize; ++c) {
            if (!b.occupied(r, c))
                out << '.';
            else if (b.blank_at(r, c))
                out << char('a' + b.letter(r, c));  // lowercase marks a blank
            else
                out << char('A' + b.letter(r, c));
        }
        out << "\n";
    }
}

}  // namespace

std::array<int, 2> replay_record(const GameRecord& record, const RuleSet& rs, std::ostream* out) {
    Board board;
    std::array<int, 2> scores{};
    for (const auto& m : record.moves) {
        if (m.move.kind == MoveChoice::Kind::placement) {
            const Placement& p = m.move.place;
            int rescore = score_move(board, p, rs);
            if (rescore != p.score)
                throw GameAbort("replay score mismatch for " + p.word_formed + ": stored " +
                                std::to_string(p.score) + ", replayed " + std::to_string(rescore));
            for (const auto& t : p.tiles_used) board.place(t.row, t.col, t.letter, t.is_blank());
            scores[m.player] += p.score;
            if (out) {
                *out << "player " << m.player + 1 << " plays " << p.word_formed << " at "
                     << char('a' + p.col) << p.row + 1 << (p.across ? " across" : " down")
                     << " for " << p.score << " (" << scores[0] << "-" << scores[1] << ")\n";
                print_board(board, *out);
            }
        } else if (out) {
            *out << "player " << m.player + 1
                 << (m.move.kind == MoveChoice::Kind::pass ? " passes" : " exchanges ");
            if (m.move.kind == MoveChoice::Kind::exchange)
                *out << m.move.exchange_tiles.size() << " tiles";
            *out << "\n";
        }
    }
    for (int p = 0; p < 2; ++p) scores[p] += record.end_adjustments[p];
    if (scores != record.final_scores)
        throw GameAbort("replayed final scores (" + std::to_string(scores[0]) + "," +
                        std::to_string(scores[1]) + ") disagree with record (" +
                        std::to_string(record.final_scores[0]) + "," +
                        std::to_string(record.final_scores[1]) + ")");
    if (out)
        *out << "final " << scores[0] << "-" << scores[1] << " (adjustments "
             << record.end_adjustments[0] << "," << record.end_adjustments[1] << ")\n";
    return scores;
}

}  // namespace tilebench
