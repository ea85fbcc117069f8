#include "tilebench/board.hpp"

#include <sstream>

namespace tilebench {

std::string Placement::sort_key() const {
    std::ostringstream k;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06d", 100000 - score);  // higher score first
    k << buf << '|' << word_formed << '|' << int(row) << '|' << int(col) << '|'
      << (across ? 'A' : 'D');
    for (const auto& t : tiles_used) k << '|' << int(t.row) << ',' << int(t.col) << ',' << tile_char(t.tile) << ',' << char('A' + t.letter);
    return k.str();
}

int score_move(const Board& board, const Placement& placement, const RuleSet& rs) {
    const int dr = placement.across ? 0 : 1;
    const int dc = placement.across ? 1 : 0;

    auto tile_value = [&](const PlacedTile& t) {
        return t.is_blank() ? 0 : rs.tile_values[t.tile];
    };

    // Main word.
    int word_score = 0;
    int word_multiplier = 1;
    {
        size_t next_placed = 0;
        int r = placement.row, c = placement.col;
        for (size_t i = 0; i < placement.word_formed.size(); ++i, r += dr, c += dc) {
            if (board.occupied(r, c)) {
                word_score += board.blank_at(r, c) ? 0 : rs.tile_values[board.letter(r, c)];
            } else {
                const PlacedTile& t = placement.tiles_used[next_placed++];
                int v = tile_value(t);
                switch (effective_premium(rs, r, c)) {
                    case PremiumKind::double_letter: v *= 2; break;
                    case PremiumKind::triple_letter: v *= 3; break;
                    case PremiumKind::double_word: word_multiplier *= 2; break;
                    case PremiumKind::triple_word: word_multiplier *= 3; break;
                    case PremiumKind::none: break;
                }
                word_score += v;
            }
        }
    }
    int total = word_score * word_multiplier;

    // Cross words formed by each newly placed tile.
    const int xr = placement.across ? 1 : 0;  // perpendicular step
    const int xc = placement.across ? 0 : 1;
    for (const auto& t : placement.tiles_used) {
        int before = 0, after = 0;
        int cross_score = 0;
        for (int r = t.row - xr, c = t.col - xc; r >= 0 && c >= 0 && board.occupied(r, c);
             r -= xr, c -= xc) {
            cross_score += board.blank_at(r, c) ? 0 : rs.tile_values[board.letter(r, c)];
            ++before;
        }
        for (int r = t.row + xr, c = t.col + xc;
             r < kBoardSize && c < kBoardSize && board.occupied(r, c); r += xr, c += xc) {
            cross_score += board.blank_at(r, c) ? 0 : rs.tile_values[board.letter(r, c)];
            ++after;
        }
        if (before + after == 0) continue;  // no cross word here
        int v = tile_value(t);
        int mult = 1;
        switch (effective_premium(rs, t.row, t.col)) {
            case PremiumKind::double_letter: v *= 2; break;
            case PremiumKind::triple_letter: v *= 3; break;
            case PremiumKind::double_word: mult = 2; break;
            case PremiumKind::triple_word: mult = 3; break;
            case PremiumKind::none: break;
        }
        total += (cross_score + v) * mult;
    }

    if (int(placement.tiles_used.size()) == rs.rack_size) total += rs.bingo_bonus;
    return total;
}

}  // namespace tilebench
