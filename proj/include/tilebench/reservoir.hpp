#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tilebench/rng.hpp"
#include "tilebench/ruleset.hpp"

namespace tilebench {

struct ReservoirError : std::runtime_error {
    std::string code;
    ReservoirError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

// One fixed permutation of the full tile set: the experimental treatment unit.
struct TileSequence {
    std::vector<TileId> tiles;
    uint64_t order_id = 0;

    std::string to_line() const;
    static TileSequence from_line(const std::string& line, uint64_t order_id = 0);
};

// Uniformly random permutation of the ruleset's tile multiset; deterministic
// given the generator state.
TileSequence generate_sequence(const RuleSet& rs, Rng& order_rng);

enum class End : uint8_t { front, back };

// Ordered tile reserve drawn from opposite ends by the two players. Exchanged
// tiles are reinserted uniformly at random between the cursors. In
// classic-bag mode the same interface draws uniformly from the remaining
// tiles instead (validation plumbing, not the replicated-draw mechanism).
class Reservoir {
public:
    Reservoir(TileSequence seq, int exchange_min_reserve, bool classic_bag = false)
        : seq_(std::move(seq.tiles)),
          front_(0),
          back_(int(seq_.size()) - 1),
          min_reserve_(exchange_min_reserve),
          classic_(classic_bag) {}

    int remaining() const { return back_ - front_ + 1; }

    // Returns min(n, remaining()) tiles; a short draw at game end is legal.
    // The rng is used only in classic-bag mode.
    std::vector<TileId> draw(End end, int n, Rng& rng);

    // Replacements are drawn from the caller's end first, then each discarded
    // tile is inserted at a uniformly random gap between the cursors.
    std::vector<TileId> exchange(End end, const std::vector<TileId>& discarded, Rng& rng);

    // Live remaining subsequence, front to back (test and audit hook).
    std::vector<TileId> remaining_tiles() const {
        return {seq_.begin() + front_, seq_.begin() + back_ + 1};
    }

private:
    std::vector<TileId> seq_;
    int front_;
    int back_;
    int min_reserve_;
    bool classic_;
};

}  // namespace tilebench
