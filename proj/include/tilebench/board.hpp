#pragma once

#include <array>
#include <string>
#include <vector>

#include "tilebench/ruleset.hpp"

namespace tilebench {

// A tile on a rack or in a move: its bag identity (kBlank for a blank) plus
// the letter it plays as. For ordinary tiles letter == tile.
struct PlacedTile {
    uint8_t row = 0;
    uint8_t col = 0;
    TileId tile = 0;     // rack identity; kBlank for a blank
    uint8_t letter = 0;  // effective letter 0..25
    bool is_blank() const { return tile == kBlank; }
};

class Board {
public:
    bool occupied(int r, int c) const { return occ_[r * kBoardSize + c]; }
    uint8_t letter(int r, int c) const { return letter_[r * kBoardSize + c]; }
    bool blank_at(int r, int c) const { return blank_[r * kBoardSize + c]; }
    bool empty() const { return placed_ == 0; }
    int tiles_on_board() const { return placed_; }

    void place(int r, int c, uint8_t letter, bool is_blank) {
        int i = r * kBoardSize + c;
        occ_[i] = true;
        letter_[i] = letter;
        blank_[i] = is_blank;
        ++placed_;
    }

private:
    std::array<bool, kBoardSize * kBoardSize> occ_{};
    std::array<uint8_t, kBoardSize * kBoardSize> letter_{};
    std::array<bool, kBoardSize * kBoardSize> blank_{};
    int placed_ = 0;
};

// Tile multiset with O(1) add/remove; racks and exchange sets.
struct Rack {
    std::array<uint8_t, kNumTileKinds> counts{};
    int total = 0;

    void add(TileId t) {
        ++counts[t];
        ++total;
    }
    bool remove(TileId t) {
        if (counts[t] == 0) return false;
        --counts[t];
        --total;
        return true;
    }
    bool contains(const Rack& other) const {
        for (int i = 0; i < kNumTileKinds; ++i)
            if (other.counts[i] > counts[i]) return false;
        return true;
    }
    std::vector<TileId> to_tiles() const {
        std::vector<TileId> out;
        out.reserve(total);
        for (int t = 0; t < kNumTileKinds; ++t)
            for (int k = 0; k < counts[t]; ++k) out.push_back(TileId(t));
        return out;
    }
    bool operator==(const Rack&) const = default;
};

struct Placement {
    uint8_t row = 0;  // start of the main word, existing tiles included
    uint8_t col = 0;
    bool across = true;
    std::vector<PlacedTile> tiles_used;  // in main-word order
    std::string word_formed;
    int score = 0;

    // Stable ordering for deterministic tie-breaks.
    std::string sort_key() const;
};

struct MoveChoice {
    enum class Kind { placement, exchange, pass };
    Kind kind = Kind::pass;
    Placement place;
    std::vector<TileId> exchange_tiles;

    static MoveChoice make_pass() { return {}; }
    static MoveChoice make_place(Placement p) {
        MoveChoice m;
        m.kind = Kind::placement;
        m.place = std::move(p);
        return m;
    }
    static MoveChoice make_exchange(std::vector<TileId> tiles) {
        MoveChoice m;
        m.kind = Kind::exchange;
        m.exchange_tiles = std::move(tiles);
        return m;
    }
};

// Premium of a square as seen by scoring; the WWF center carries none.
inline PremiumKind effective_premium(const RuleSet& rs, int r, int c) {
    if (r == kBoardSize / 2 && c == kBoardSize / 2 && !rs.center_premium_applies)
        return PremiumKind::none;
    return rs.premium(r, c);
}

// Score of a legal placement on the given board: main word plus all cross
// words, premiums counting only on newly covered squares, plus the bingo
// bonus when a full rack is used. Does not mutate the board.
int score_move(const Board& board, const Placement& placement, const RuleSet& rs);

}  // namespace tilebench
