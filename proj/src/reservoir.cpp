#include "tilebench/reservoir.hpp"

#include <algorithm>

namespace tilebench {

std::string TileSequence::to_line() const {
    std::string s;
    s.reserve(tiles.size());
    for (TileId t : tiles) s.push_back(tile_char(t));
    return s;
}

TileSequence TileSequence::from_line(const std::string& line, uint64_t order_id) {
    TileSequence seq;
    seq.order_id = order_id;
    seq.tiles.reserve(line.size());
    for (char c : line) {
        int t = tile_from_char(c);
        if (t < 0) throw ReservoirError("bad_sequence", std::string("bad tile character '") + c + "'");
        seq.tiles.push_back(TileId(t));
    }
    return seq;
}

TileSequence generate_sequence(const RuleSet& rs, Rng& order_rng) {
    TileSequence seq;
    seq.tiles.reserve(size_t(rs.total_tiles()));
    for (int t = 0; t < kNumTileKinds; ++t)
        for (int k = 0; k < rs.tile_counts[t]; ++k) seq.tiles.push_back(TileId(t));
    order_rng.shuffle(seq.tiles);
    return seq;
}

std::vector<TileId> Reservoir::draw(End end, int n, Rng& rng) {
    std::vector<TileId> out;
    n = std::min(n, remaining());
    out.reserve(size_t(std::max(n, 0)));
    for (int i = 0; i < n; ++i) {
        if (classic_) {
            // uniform pick among the remaining region, moved to the drawn end
            int j = front_ + int(rng.below(uint64_t(remaining())));
            std::swap(seq_[j], end == End::front ? seq_[front_] : seq_[back_]);
        }
        if (end == End::front)
            out.push_back(seq_[front_++]);
        else
            out.push_back(seq_[back_--]);
    }
    return out;
}

std::vector<TileId> Reservoir::exchange(End end, const std::vector<TileId>& discarded, Rng& rng) {
    if (remaining() < min_reserve_)
        throw ReservoirError("exchange_not_allowed",
                             "exchange requires at least " + std::to_string(min_reserve_) +
                                 " tiles in reserve, have " + std::to_string(remaining()));
    if (int(discarded.size()) > remaining())
        throw ReservoirError("exchange_not_allowed", "cannot discard more tiles than remain");

    std::vector<TileId> replacements = draw(end, int(discarded.size()), rng);
    for (TileId t : discarded) {
        // gap slots: before seq_[front_] .. after seq_[back_]
        int slot = front_ + int(rng.below(uint64_t(remaining() + 1)));
        seq_.insert(seq_.begin() + slot, t);
        ++back_;
    }
    return replacements;
}

}  // namespace tilebench
