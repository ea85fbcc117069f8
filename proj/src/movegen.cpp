#include "tilebench/movegen.hpp"

#include <algorithm>
#include <unordered_map>

namespace tilebench {

namespace {

constexpr uint32_t kAllLetters = 0x03ffffffu;

// Board view in generation space: for down moves the board is transposed so
// the generator always works along rows.
struct Grid {
    std::array<uint8_t, kBoardSize * kBoardSize> letter{};
    std::array<bool, kBoardSize * kBoardSize> occ{};
    bool board_empty = true;

    static Grid from(const Board& b, bool transpose) {
        Grid g;
        g.board_empty = b.empty();
        for (int r = 0; r < kBoardSize; ++r)
            for (int c = 0; c < kBoardSize; ++c) {
                int rr = transpose ? c : r, cc = transpose ? r : c;
                int i = r * kBoardSize + c;
                g.occ[i] = b.occupied(rr, cc);
                g.letter[i] = b.letter(rr, cc);
            }
        return g;
    }
    bool occupied(int r, int c) const { return occ[r * kBoardSize + c]; }
    uint8_t at(int r, int c) const { return letter[r * kBoardSize + c]; }
};

struct GenContext {
    const Lexicon& lex;
    const Grid& grid;
    bool transpose;
    std::array<uint32_t, kBoardSize * kBoardSize> cross_mask{};
    std::array<bool, kBoardSize * kBoardSize> anchor{};

    // DFS state for the current row
    int row = 0;
    int anchor_col = 0;
    std::array<uint8_t, kBoardSize> placed_letter{};
    std::array<bool, kBoardSize> placed_here{};
    std::array<bool, kBoardSize> placed_blank{};
    std::array<uint8_t, kNumTileKinds> rack{};
    int rack_total = 0;

    std::vector<Placement>* out = nullptr;

    void compute_cross_masks() {
        for (int r = 0; r < kBoardSize; ++r)
            for (int c = 0; c < kBoardSize; ++c) {
                int i = r * kBoardSize + c;
                if (grid.occupied(r, c)) continue;
                bool up = r > 0 && grid.occupied(r - 1, c);
                bool down = r + 1 < kBoardSize && grid.occupied(r + 1, c);
                if (!up && !down) {
                    cross_mask[i] = kAllLetters;
                    continue;
                }
                // Feed the GADDAG the reversed cross word: below chain
                // bottom-up, candidate letter, then above chain upward.
                uint32_t below_node = lex.root();
                int rb = r + 1;
                while (rb < kBoardSize && grid.occupied(rb, c)) ++rb;
                for (int rr = rb - 1; rr > r && below_node != Lexicon::npos; --rr)
                    below_node = lex.child(below_node, grid.at(rr, c));
                uint32_t mask = 0;
                if (below_node != Lexicon::npos) {
                    for (uint8_t L = 0; L < kNumLetters; ++L) {
                        uint32_t node = lex.child(below_node, L);
                        for (int rr = r - 1; rr >= 0 && grid.occupied(rr, c) && node != Lexicon::npos;
                             --rr)
                            node = lex.child(node, grid.at(rr, c));
                        if (node != Lexicon::npos && lex.accepting(node)) mask |= 1u << L;
                    }
                }
                cross_mask[i] = mask;
            }
    }

    void compute_anchors() {
        if (grid.board_empty) {
            anchor[(kBoardSize / 2) * kBoardSize + kBoardSize / 2] = true;
            return;
        }
        for (int r = 0; r < kBoardSize; ++r)
            for (int c = 0; c < kBoardSize; ++c) {
                if (grid.occupied(r, c)) continue;
                bool adj = (r > 0 && grid.occupied(r - 1, c)) ||
                           (r + 1 < kBoardSize && grid.occupied(r + 1, c)) ||
                           (c > 0 && grid.occupied(r, c - 1)) ||
                           (c + 1 < kBoardSize && grid.occupied(r, c + 1));
                if (adj) anchor[r * kBoardSize + c] = true;
            }
    }

    void record(int left_col, int right_col) {
        if (right_col - left_col + 1 < 2) return;
        Placement p;
        p.across = !transpose;
        if (transpose) {
            p.row = uint8_t(left_col);
            p.col = uint8_t(row);
        } else {
            p.row = uint8_t(row);
            p.col = uint8_t(left_col);
        }
        p.word_formed.reserve(size_t(right_col - left_col + 1));
        for (int c = left_col; c <= right_col; ++c) {
            uint8_t L = grid.occupied(row, c) ? grid.at(row, c) : placed_letter[c];
            p.word_formed.push_back(char('A' + L));
            if (!grid.occupied(row, c)) {
                PlacedTile t;
                if (transpose) {
                    t.row = uint8_t(c);
                    t.col = uint8_t(row);
                } else {
                    t.row = uint8_t(row);
                    t.col = uint8_t(c);
                }
                t.letter = L;
                t.tile = placed_blank[c] ? TileId(kBlank) : TileId(L);
                p.tiles_used.push_back(t);
            }
        }
        out->push_back(std::move(p));
    }

    // Examine square (row, col) while extending leftward from the anchor.
    void gen_left(int col, uint32_t node) {
        if (col < 0) return;
        const int idx = row * kBoardSize + col;
        if (grid.occupied(row, col)) {
            uint32_t next = lex.child(node, grid.at(row, col));
            if (next != Lexicon::npos) go_on_left(col, next);
            return;
        }
        // Tiles may be placed on the anchor itself or on empty non-anchor
        // squares to its left; another anchor's moves are its own business.
        if (col != anchor_col && anchor[idx]) return;
        if (rack_total == 0) return;
        const uint32_t allowed = cross_mask[idx];
        lex.for_each_arc(node, [&](uint8_t letter, uint32_t target) {
            if (letter >= kNumLetters || !(allowed & (1u << letter))) return;
            if (rack[letter] > 0) {
                --rack[letter];
                --rack_total;
                placed_letter[col] = letter;
                placed_here[col] = true;
                placed_blank[col] = false;
                go_on_left(col, target);
                placed_here[col] = false;
                ++rack[letter];
                ++rack_total;
            }
            if (rack[kBlank] > 0) {
                --rack[kBlank];
                --rack_total;
                placed_letter[col] = letter;
                placed_here[col] = true;
                placed_blank[col] = true;
                go_on_left(col, target);
                placed_here[col] = false;
                ++rack[kBlank];
                ++rack_total;
            }
        });
    }

    void go_on_left(int col, uint32_t node) {
        const bool left_boundary = col == 0 || !grid.occupied(row, col - 1);
        const bool right_boundary =
            anchor_col + 1 >= kBoardSize || !grid.occupied(row, anchor_col + 1);
        if (lex.accepting(node) && left_boundary && right_boundary && any_placed(col, anchor_col))
            record(col, anchor_col);
        if (left_boundary) {
            uint32_t sep = lex.child(node, Lexicon::kSeparator);
            if (sep != Lexicon::npos) extend_right(col, anchor_col + 1, sep);
        }
        gen_left(col - 1, node);
    }

    bool any_placed(int from, int to) const {
        for (int c = from; c <= to; ++c)
            if (!grid.occupied(row, c) && placed_here[c]) return true;
        return false;
    }

    // Fill squares rightward starting at col; left part spans [left_col, col).
    void extend_right(int left_col, int col, uint32_t node) {
        if (col >= kBoardSize) return;
        const int idx = row * kBoardSize + col;
        if (grid.occupied(row, col)) {
            uint32_t next = lex.child(node, grid.at(row, col));
            if (next == Lexicon::npos) return;
            const bool boundary = col + 1 >= kBoardSize || !grid.occupied(row, col + 1);
            if (lex.accepting(next) && boundary && any_placed(left_col, col))
                record(left_col, col);
            extend_right(left_col, col + 1, next);
            return;
        }
        if (rack_total == 0) return;
        const uint32_t allowed = cross_mask[idx];
        lex.for_each_arc(node, [&](uint8_t letter, uint32_t target) {
            if (letter >= kNumLetters || !(allowed & (1u << letter))) return;
            auto try_place = [&](bool as_blank) {
                placed_letter[col] = letter;
                placed_here[col] = true;
                placed_blank[col] = as_blank;
                const bool boundary = col + 1 >= kBoardSize || !grid.occupied(row, col + 1);
                if (lex.accepting(target) && boundary) record(left_col, col);
                extend_right(left_col, col + 1, target);
                placed_here[col] = false;
            };
            if (rack[letter] > 0) {
                --rack[letter];
                --rack_total;
                try_place(false);
                ++rack[letter];
                ++rack_total;
            }
            if (rack[kBlank] > 0) {
                --rack[kBlank];
                --rack_total;
                try_place(true);
                ++rack[kBlank];
                ++rack_total;
            }
        });
    }

    void run() {
        compute_cross_masks();
        compute_anchors();
        for (int r = 0; r < kBoardSize; ++r) {
            row = r;
            placed_here.fill(false);
            for (int c = 0; c < kBoardSize; ++c) {
                if (!anchor[r * kBoardSize + c]) continue;
                anchor_col = c;
                gen_left(c, lex.root());
            }
        }
    }
};

// Identity of a move for de-duplication: the set of placed tiles. A one-tile
// play can be produced by both orientations; they are the same move.
std::string cell_key(const Placement& p) {
    std::vector<const PlacedTile*> ts;
    ts.reserve(p.tiles_used.size());
    for (const auto& t : p.tiles_used) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const PlacedTile* a, const PlacedTile* b) {
        return std::tie(a->row, a->col) < std::tie(b->row, b->col);
    });
    std::string k;
    for (const auto* t : ts) {
        k.push_back(char('0' + t->row / 10));
        k.push_back(char('0' + t->row % 10));
        k.push_back(char('0' + t->col / 10));
        k.push_back(char('0' + t->col % 10));
        k.push_back(char('A' + t->letter));
        k.push_back(t->is_blank() ? '?' : '.');
    }
    return k;
}

}  // namespace

std::vector<Placement> MoveGenerator::legal_moves(const Board& board, const Rack& rack,
                                                  const RuleSet& rs) const {
    std::vector<Placement> all;
    for (bool transpose : {false, true}) {
        Grid grid = Grid::from(board, transpose);
        GenContext ctx{lex_, grid, transpose};
        ctx.rack = rack.counts;
        ctx.rack_total = rack.total;
        ctx.out = &all;
        ctx.run();
    }
    for (auto& p : all) p.score = score_move(board, p, rs);

    std::unordered_map<std::string, size_t> seen;
    std::vector<Placement> result;
    result.reserve(all.size());
    for (auto& p : all) {
        auto [it, inserted] = seen.try_emplace(cell_key(p), result.size());
        if (inserted) {
            result.push_back(std::move(p));
        } else if (p.sort_key() < result[it->second].sort_key()) {
            result[it->second] = std::move(p);
        }
    }
    return result;
}

std::optional<std::string> check_placement(const Board& board, const Rack& rack,
                                           const Placement& placement, const RuleSet& rs,
                                           const Lexicon& lex) {
    const int dr = placement.across ? 0 : 1;
    const int dc = placement.across ? 1 : 0;
    const int len = int(placement.word_formed.size());
    if (len < 2) return "word shorter than 2 letters";
    if (placement.tiles_used.empty()) return "no tiles placed";
    int endr = placement.row + dr * (len - 1), endc = placement.col + dc * (len - 1);
    if (endr >= kBoardSize || endc >= kBoardSize) return "word runs off the board";
    int pr = int(placement.row) - dr, pc = int(placement.col) - dc;
    if (pr >= 0 && pc >= 0 && board.occupied(pr, pc)) return "word start abuts an existing tile";
    int nr = endr + dr, nc = endc + dc;
    if (nr < kBoardSize && nc < kBoardSize && board.occupied(nr, nc))
        return "word end abuts an existing tile";

    Rack used;
    size_t next_placed = 0;
    bool touches_existing = false, covers_center = false;
    for (int i = 0, r = placement.row, c = placement.col; i < len; ++i, r += dr, c += dc) {
        if (r == kBoardSize / 2 && c == kBoardSize / 2) covers_center = true;
        if (board.occupied(r, c)) {
            touches_existing = true;
            if (char('A' + board.letter(r, c)) != placement.word_formed[i])
                return "existing tile disagrees with word";
        } else {
            if (next_placed >= placement.tiles_used.size()) return "placed tiles do not cover gaps";
            const PlacedTile& t = placement.tiles_used[next_placed++];
            if (t.row != r || t.col != c) return "placed tile out of position";
            if (char('A' + t.letter) != placement.word_formed[i])
                return "placed tile disagrees with word";
            if (!t.is_blank() && t.tile != t.letter) return "tile identity mismatch";
            used.add(t.tile);
        }
    }
    if (next_placed != placement.tiles_used.size()) return "extra placed tiles";
    if (!rack.contains(used)) return "tiles not on rack";

    if (board.empty()) {
        if (!covers_center) return "first move must cover the center square";
    } else if (!touches_existing) {
        // adjacency through cross words also counts
        bool adjacent = false;
        for (const auto& t : placement.tiles_used) {
            if ((t.row > 0 && board.occupied(t.row - 1, t.col)) ||
                (t.row + 1 < kBoardSize && board.occupied(t.row + 1, t.col)) ||
                (t.col > 0 && board.occupied(t.row, t.col - 1)) ||
                (t.col + 1 < kBoardSize && board.occupied(t.row, t.col + 1)))
                adjacent = true;
        }
        if (!adjacent) return "placement does not connect to existing tiles";
    }

    if (!lex.contains(placement.word_formed)) return "main word not in lexicon: " + placement.word_formed;
    const int xr = placement.across ? 1 : 0, xc = placement.across ? 0 : 1;
    for (const auto& t : placement.tiles_used) {
        std::string cross;
        int r = t.row, c = t.col;
        while (r - xr >= 0 && c - xc >= 0 && board.occupied(r - xr, c - xc)) {
            r -= xr;
            c -= xc;
        }
        for (; r < kBoardSize && c < kBoardSize; r += xr, c += xc) {
            if (r == t.row && c == t.col)
                cross.push_back(char('A' + t.letter));
            else if (board.occupied(r, c))
                cross.push_back(char('A' + board.letter(r, c)));
            else
                break;
        }
        if (cross.size() >= 2 && !lex.contains(cross))
            return "cross word not in lexicon: " + cross;
    }

    if (placement.score != score_move(board, placement, rs)) return "score mismatch";
    return std::nullopt;
}

}  // namespace tilebench
