#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tilebench/bot.hpp"
#include "tilebench/lexicon.hpp"
#include "tilebench/movegen.hpp"
#include "tilebench/outcome.hpp"
#include "tilebench/ruleset.hpp"

namespace tbtest {

using namespace tilebench;

inline std::string data_path(const std::string& rel) {
    return std::string(TILEBENCH_DATA_DIR) + "/" + rel;
}

inline const RuleSet& scrabble_rules() {
    static RuleSet rs = load_ruleset(data_path("rulesets/scrabble.rules"));
    return rs;
}

inline const RuleSet& wwf_rules() {
    static RuleSet rs = load_ruleset(data_path("rulesets/wwf.rules"));
    return rs;
}

inline const Lexicon& english_lexicon() {
    static Lexicon lex = Lexicon::build(read_word_list(data_path("words/english_2to8.txt")));
    return lex;
}

inline std::string temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "tilebench_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

// '?' for a blank, letters otherwise.
inline Rack rack_from(const std::string& s) {
    Rack r;
    for (char c : s) r.add(TileId(tile_from_char(c)));
    return r;
}

// Rows of 15 chars: '.' empty, 'A'-'Z' a tile, lowercase a blank playing
// that letter. Fewer than 15 rows are padded with empty rows.
inline Board board_from(const std::vector<std::string>& rows) {
    Board b;
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c) {
            char ch = rows[r][c];
            if (ch == '.') continue;
            if (ch >= 'a' && ch <= 'z')
                b.place(int(r), int(c), uint8_t(ch - 'a'), true);
            else
                b.place(int(r), int(c), uint8_t(ch - 'A'), false);
        }
    return b;
}

// Placement of `word_spec` starting at (r,c): occupied cells are skipped
// (their letters must already match), empty cells get new tiles. Lowercase
// in the spec marks a tile played as a blank. The score field is left 0.
inline Placement make_placement(const Board& board, int r, int c, bool across,
                                const std::string& word_spec) {
    Placement p;
    p.row = uint8_t(r);
    p.col = uint8_t(c);
    p.across = across;
    int dr = across ? 0 : 1, dc = across ? 1 : 0;
    for (size_t i = 0; i < word_spec.size(); ++i) {
        char ch = word_spec[i];
        bool blank = ch >= 'a' && ch <= 'z';
        uint8_t letter = blank ? uint8_t(ch - 'a') : uint8_t(ch - 'A');
        p.word_formed.push_back(char('A' + letter));
        int rr = r + dr * int(i), cc = c + dc * int(i);
        if (!board.occupied(rr, cc)) {
            PlacedTile t;
            t.row = uint8_t(rr);
            t.col = uint8_t(cc);
            t.letter = letter;
            t.tile = blank ? TileId(kBlank) : TileId(letter);
            p.tiles_used.push_back(t);
        }
    }
    return p;
}

inline GameOutcome make_outcome(uint64_t order, uint64_t rep, int p1, int p2) {
    GameOutcome o;
    o.order_id = order;
    o.replicate_id = rep;
    o.p1_score = p1;
    o.p2_score = p2;
    o.diff = p1 - p2;
    o.winner = p1 > p2 ? 1 : (p2 > p1 ? 2 : 0);
    o.blank_positions = {1, 2};
    o.s_positions = {3, 4, 5, 6};
    return o;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Serialized bundled lexicon, built and saved once per test binary.
inline std::string english_lexicon_path() {
    static std::string path = [] {
        std::string p = temp_path("english_unit.lex");
        english_lexicon().save(p);
        return p;
    }();
    return path;
}

}  // namespace tbtest
