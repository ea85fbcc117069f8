#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilebench {

constexpr int kBoardSize = 15;
constexpr int kNumLetters = 26;
constexpr int kBlank = 26;      // tile index for the blank
constexpr int kNumTileKinds = 27;

// Tile identity: 0..25 = A..Z, 26 = blank.
using TileId = uint8_t;

inline char tile_char(TileId t) { return t == kBlank ? '?' : char('A' + t); }
inline int tile_from_char(char c) {
    if (c == '?') return kBlank;
    if (c >= 'A' && c <= 'Z') return c - 'A';
    return -1;
}

enum class PremiumKind : uint8_t {
    none,
    double_letter,
    triple_letter,
    double_word,
    triple_word,
};

struct RulesetError : std::runtime_error {
    std::string code;
    RulesetError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

struct RuleSet {
    std::string name;
    std::array<PremiumKind, kBoardSize * kBoardSize> board{};
    std::array<int, kNumTileKinds> tile_counts{};
    std::array<int, kNumTileKinds> tile_values{};
    int bingo_bonus = 50;
    int rack_size = 7;
    int exchange_min_reserve = 7;
    int scoreless_turn_limit = 6;
    bool center_premium_applies = true;

    PremiumKind premium(int row, int col) const { return board[row * kBoardSize + col]; }
    int total_tiles() const {
        int n = 0;
        for (int c : tile_counts) n += c;
        return n;
    }
};

struct ValidationFinding {
    std::string code;
    std::string detail;
};

// Parses the documented ruleset text format. Throws RulesetError with a
// machine-readable code on parse failure or invariant violation.
RuleSet load_ruleset(const std::string& path);
RuleSet parse_ruleset(const std::string& text);

// Empty report iff all RuleSet invariants hold.
std::vector<ValidationFinding> validate_ruleset(const RuleSet& rs);

std::string serialize_ruleset(const RuleSet& rs);

}  // namespace tilebench
