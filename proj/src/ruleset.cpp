#include "tilebench/ruleset.hpp"

#include <fstream>
#include <sstream>

namespace tilebench {

namespace {

const char* kFormatVersion = "1";

char premium_char(PremiumKind k) {
    switch (k) {
        case PremiumKind::none: return '.';
        case PremiumKind::double_letter: return 'd';
        case PremiumKind::triple_letter: return 't';
        case PremiumKind::double_word: return 'D';
        case PremiumKind::triple_word: return 'T';
    }
    return '.';
}

bool premium_from_char(char c, PremiumKind& out) {
    switch (c) {
        case '.': out = PremiumKind::none; return true;
        case 'd': out = PremiumKind::double_letter; return true;
        case 't': out = PremiumKind::triple_letter; return true;
        case 'D': out = PremiumKind::double_word; return true;
        case 'T': out = PremiumKind::triple_word; return true;
    }
    return false;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

RuleSet parse_ruleset(const std::string& text) {
    RuleSet rs;
    int declared_total = -1;
    bool saw_board = false, saw_tiles = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            out = strip(line);
            if (out.empty() || out[0] == '#') continue;
            return true;
        }
        return false;
    };

    std::string cur;
    while (next_line(cur)) {
        std::istringstream ls(cur);
        std::string key;
        ls >> key;
        if (key == "board") {
            std::array<PremiumKind, kBoardSize * kBoardSize> grid{};
            for (int r = 0; r < kBoardSize; ++r) {
                std::string row;
                if (!next_line(row) || row == "end")
                    throw RulesetError("invalid_board_shape", "board section has fewer than 15 rows");
                if ((int)row.size() != kBoardSize)
                    throw RulesetError("invalid_board_shape",
                                       "board row " + std::to_string(r) + " has length " +
                                           std::to_string(row.size()) + ", expected 15");
                for (int c = 0; c < kBoardSize; ++c) {
                    PremiumKind k;
                    if (!premium_from_char(row[c], k))
                        throw RulesetError("parse_error",
                                           std::string("unknown premium character '") + row[c] + "'");
                    grid[r * kBoardSize + c] = k;
                }
            }
            std::string endline;
            if (!next_line(endline) || endline != "end")
                throw RulesetError("invalid_board_shape", "board section has more than 15 rows");
            rs.board = grid;
            saw_board = true;
        } else if (key == "tiles") {
            std::array<bool, kNumTileKinds> seen{};
            std::string tl;
            while (true) {
                if (!next_line(tl)) throw RulesetError("parse_error", "tiles section missing 'end'");
                if (tl == "end") break;
                std::istringstream ts(tl);
                std::string sym;
                int count, value;
                if (!(ts >> sym >> count >> value) || sym.size() != 1)
                    throw RulesetError("parse_error", "bad tile line: " + tl);
                int id = tile_from_char(sym[0]);
                if (id < 0) throw RulesetError("parse_error", "bad tile symbol: " + sym);
                if (seen[id]) throw RulesetError("parse_error", "duplicate tile line: " + sym);
                seen[id] = true;
                rs.tile_counts[id] = count;
                rs.tile_values[id] = value;
            }
            saw_tiles = true;
        } else {
            std::string val;
            if (!(ls >> val)) throw RulesetError("parse_error", "missing value for key: " + key);
            auto as_int = [&]() {
                try {
                    return std::stoi(val);
                } catch (...) {
                    throw RulesetError("parse_error", "bad integer for " + key + ": " + val);
                }
            };
            if (key == "format_version") {
                if (val != kFormatVersion)
                    throw RulesetError("version_mismatch", "unsupported ruleset format version " + val);
            } else if (key == "name") {
                rs.name = val;
            } else if (key == "tile_total") {
                declared_total = as_int();
            } else if (key == "bingo_bonus") {
                rs.bingo_bonus = as_int();
            } else if (key == "rack_size") {
                rs.rack_size = as_int();
            } else if (key == "exchange_min_reserve") {
                rs.exchange_min_reserve = as_int();
            } else if (key == "scoreless_turn_limit") {
                rs.scoreless_turn_limit = as_int();
            } else if (key == "center_premium_applies") {
                if (val != "true" && val != "false")
                    throw RulesetError("parse_error", "bad flag for " + key + ": " + val);
                rs.center_premium_applies = (val == "true");
            } else {
                throw RulesetError("parse_error", "unknown key: " + key);
            }
        }
    }

    if (!saw_board) throw RulesetError("parse_error", "missing board section");
    if (!saw_tiles) throw RulesetError("parse_error", "missing tiles section");
    if (declared_total >= 0 && declared_total != rs.total_tiles())
        throw RulesetError("tile_count_mismatch",
                           "tile_total " + std::to_string(declared_total) + " but counts sum to " +
                               std::to_string(rs.total_tiles()));

    auto findings = validate_ruleset(rs);
    if (!findings.empty())
        throw RulesetError(findings.front().code, findings.front().detail);
    return rs;
}

RuleSet load_ruleset(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw RulesetError("file_not_found", "cannot open ruleset file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_ruleset(ss.str());
}

std::vector<ValidationFinding> validate_ruleset(const RuleSet& rs) {
    std::vector<ValidationFinding> out;
    if (rs.rack_size < 1 || rs.rack_size > 7)
        out.push_back({"bad_rack_size", "rack_size must be in [1,7], got " + std::to_string(rs.rack_size)});
    if (rs.exchange_min_reserve < 0)
        out.push_back({"bad_exchange_reserve", "exchange_min_reserve must be >= 0"});
    if (rs.scoreless_turn_limit < 1)
        out.push_back({"bad_scoreless_limit", "scoreless_turn_limit must be >= 1"});
    if (rs.bingo_bonus < 0)
        out.push_back({"bad_bingo_bonus", "bingo_bonus must be >= 0"});
    for (int t = 0; t < kNumTileKinds; ++t) {
        if (rs.tile_counts[t] < 0)
            out.push_back({"bad_tile_count", std::string("negative count for ") + tile_char(TileId(t))});
        if (rs.tile_values[t] < 0)
            out.push_back({"bad_tile_value", std::string("negative value for ") + tile_char(TileId(t))});
    }
    if (rs.tile_values[kBlank] != 0)
        out.push_back({"blank_value_nonzero", "blank tile must be worth 0 points"});
    if (rs.total_tiles() < 2 * rs.rack_size)
        out.push_back({"tile_count_mismatch",
                       "tile set too small to deal two racks: " + std::to_string(rs.total_tiles())});
    // 180-degree rotational symmetry of the premium layout.
    for (int r = 0; r < kBoardSize; ++r)
        for (int c = 0; c < kBoardSize; ++c) {
            int rr = kBoardSize - 1 - r, cc = kBoardSize - 1 - c;
            if (rs.premium(r, c) != rs.premium(rr, cc)) {
                out.push_back({"board_asymmetry",
                               "premium at (" + std::to_string(r) + "," + std::to_string(c) +
                                   ") differs from its 180-degree image"});
                r = kBoardSize;  // one finding is enough
                break;
            }
        }
    return out;
}

std::string serialize_ruleset(const RuleSet& rs) {
    std::ostringstream out;
    out << "format_version " << kFormatVersion << "\n";
    out << "name " << rs.name << "\n";
    out << "tile_total " << rs.total_tiles() << "\n";
    out << "bingo_bonus " << rs.bingo_bonus << "\n";
    out << "rack_size " << rs.rack_size << "\n";
    out << "exchange_min_reserve " << rs.exchange_min_reserve << "\n";
    out << "scoreless_turn_limit " << rs.scoreless_turn_limit << "\n";
    out << "center_premium_applies " << (rs.center_premium_applies ? "true" : "false") << "\n";
    out << "board\n";
    for (int r = 0; r < kBoardSize; ++r) {
        for (int c = 0; c < kBoardSize; ++c) out << premium_char(rs.premium(r, c));
        out << "\n";
    }
    out << "end\n";
    out << "tiles\n";
    for (int t = 0; t < kNumTileKinds; ++t)
        if (rs.tile_counts[t] > 0)
            out << tile_char(TileId(t)) << " " << rs.tile_counts[t] << " " << rs.tile_values[t] << "\n";
    out << "end\n";
    return out.str();
}

}  // namespace tilebench
