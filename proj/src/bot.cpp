#include "tilebench/bot.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tilebench {

namespace {

std::string tie_key(const MoveChoice& m) {
    switch (m.kind) {
        case MoveChoice::Kind::placement:
            return "P" + m.place.sort_key();
        case MoveChoice::Kind::exchange: {
            std::string s = "X";
            for (TileId t : m.exchange_tiles) s.push_back(tile_char(t));
            return s;
        }
        case MoveChoice::Kind::pass:
            return "Z";
    }
    return "Z";
}

constexpr uint32_t kVowelMask =
    (1u << ('A' - 'A')) | (1u << ('E' - 'A')) | (1u << ('I' - 'A')) | (1u << ('O' - 'A')) |
    (1u << ('U' - 'A'));
}

double LeaveTable::value(const Rack& kept) const {
    if (kept.total == 0) return 0.0;
    double v = 0.0;
    int vowels = 0, consonants = 0;
    for (int t = 0; t < kNumTileKinds; ++t) {
        int n = kept.counts[t];
        if (n == 0) continue;
        v += n * letter_value[t];
        if (n > 1) v -= duplicate_penalty * (n - 1);
        if (t < kNumLetters) {
            if (kVowelMask & (1u << t))
                vowels += n;
            else
                consonants += n;
        }
    }
    int imbalance = std::abs(vowels - consonants);
    if (imbalance > 1) v -= balance_penalty * (imbalance - 1);
    return v;
}

LeaveTable LeaveTable::parse(const std::string& text) {
    LeaveTable t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "letter") {
            std::string sym;
            double v;
            if (!(ls >> sym >> v) || sym.size() != 1 || tile_from_char(sym[0]) < 0)
                throw std::runtime_error("bad leave-table letter line: " + line);
            t.letter_value[tile_from_char(sym[0])] = v;
        } else if (key == "duplicate_penalty") {
            ls >> t.duplicate_penalty;
        } else if (key == "balance_penalty") {
            ls >> t.balance_penalty;
        } else if (key == "exchange_adjustment") {
            ls >> t.exchange_adjustment;
        } else {
            throw std::runtime_error("unknown leave-table key: " + key);
        }
    }
    return t;
}

LeaveTable LeaveTable::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open leave table: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

int board_openness(const Board& board, const Placement& placement, const RuleSet& rs) {
    Board after = board;
    for (const auto& t : placement.tiles_used) after.place(t.row, t.col, t.letter, t.is_blank());
    int open = 0;
    for (int r = 0; r < kBoardSize; ++r)
        for (int c = 0; c < kBoardSize; ++c) {
            if (after.occupied(r, c) || effective_premium(rs, r, c) == PremiumKind::none) continue;
            bool adj = (r > 0 && after.occupied(r - 1, c)) ||
                       (r + 1 < kBoardSize && after.occupied(r + 1, c)) ||
                       (c > 0 && after.occupied(r, c - 1)) ||
                       (c + 1 < kBoardSize && after.occupied(r, c + 1));
            if (adj) ++open;
        }
    return open;
}

double move_utility(const MoveChoice& move, const GameView& view, const BotConfig& config) {
    switch (move.kind) {
        case MoveChoice::Kind::placement: {
            Rack kept = view.rack;
            for (const auto& t : move.place.tiles_used) kept.remove(t.tile);
            double u = move.place.score + config.leave_table.value(kept);
            if (config.openness_weight != 0.0)
                u += config.openness_weight * board_openness(view.board, move.place, view.rs);
            return u;
        }
        case MoveChoice::Kind::exchange: {
            Rack kept = view.rack;
            for (TileId t : move.exchange_tiles) kept.remove(t);
            return config.leave_table.value(kept) + config.leave_table.exchange_adjustment;
        }
        case MoveChoice::Kind::pass:
            return config.leave_table.value(view.rack);
    }
    return 0.0;
}

std::optional<std::vector<TileId>> best_exchange_subset(const Rack& rack, const LeaveTable& table) {
    std::vector<TileId> tiles = rack.to_tiles();
    if (tiles.empty()) return std::nullopt;
    double best = -1e300;
    uint32_t best_mask = 0;
    const uint32_t limit = 1u << tiles.size();
    for (uint32_t mask = 1; mask < limit; ++mask) {
        Rack kept = rack;
        for (size_t i = 0; i < tiles.size(); ++i)
            if (mask & (1u << i)) kept.remove(tiles[i]);
        double v = table.value(kept);
        if (v > best + 1e-12) {
            best = v;
            best_mask = mask;
        }
    }
    std::vector<TileId> discard;
    for (size_t i = 0; i < tiles.size(); ++i)
        if (best_mask & (1u << i)) discard.push_back(tiles[i]);
    return discard;
}

MoveChoice SpeedyBot::choose(const GameView& view, const std::vector<Placement>& legal,
                             Rng& game_rng) {
    std::vector<MoveChoice> candidates;
    candidates.reserve(legal.size() + 2);
    for (const auto& p : legal) candidates.push_back(MoveChoice::make_place(p));

    // Raw utilities first; the exchange/pass policy depends on the best play.
    std::vector<double> raw(candidates.size());
    double best_raw = -1e300;
    for (size_t i = 0; i < candidates.size(); ++i) {
        raw[i] = move_utility(candidates[i], view, config_);
        best_raw = std::max(best_raw, raw[i]);
    }

    const bool exchange_legal = view.reservoir_remaining >= view.rs.exchange_min_reserve &&
                                view.rack.total > 0;
    if (exchange_legal && (candidates.empty() || best_raw < config_.exchange_threshold)) {
        if (auto discard = best_exchange_subset(view.rack, config_.leave_table)) {
            candidates.push_back(MoveChoice::make_exchange(*discard));
            raw.push_back(move_utility(candidates.back(), view, config_));
        }
    }
    if (candidates.empty()) {
        candidates.push_back(MoveChoice::make_pass());
        raw.push_back(move_utility(candidates.back(), view, config_));
    }

    size_t chosen = 0;
    double best_perturbed = -1e300;
    double max_raw = -1e300;
    for (size_t i = 0; i < candidates.size(); ++i) {
        max_raw = std::max(max_raw, raw[i]);
        double u = raw[i];
        if (config_.perturbation_half_width > 0.0)
            u += game_rng.symmetric(config_.perturbation_half_width);
        bool better;
        if (u > best_perturbed) {
            better = true;
        } else if (u == best_perturbed) {
            // lexicographic tie-break keeps zero-perturbation play deterministic
            better = tie_key(candidates[i]) < tie_key(candidates[chosen]);
        } else {
            better = false;
        }
        if (i == 0 || better) {
            best_perturbed = u;
            chosen = i;
        }
    }

    audit_.max_raw_utility = max_raw;
    audit_.chosen_raw_utility = raw[chosen];
    audit_.candidates = int(candidates.size());
    return candidates[chosen];
}

}  // namespace tilebench
