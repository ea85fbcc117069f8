#pragma once

#include <optional>
#include <vector>

#include "tilebench/board.hpp"
#include "tilebench/lexicon.hpp"

namespace tilebench {

// Anchored single-pass move generation over the GADDAG. Exhaustive: returns
// every legal placement (blanks expanded to all viable letters), with scores
// filled in. Single-tile plays are emitted once, in the direction of their
// longer main word.
class MoveGenerator {
public:
    explicit MoveGenerator(const Lexicon& lex) : lex_(lex) {}

    std::vector<Placement> legal_moves(const Board& board, const Rack& rack,
                                       const RuleSet& rs) const;

private:
    const Lexicon& lex_;
};

// Full legality check for a placement proposed against this board: cell
// coverage, contiguity, rack availability, connectivity, first-move center
// rule, every formed word in the lexicon, and score agreement. Returns an
// error description for illegal placements, nullopt when legal.
std::optional<std::string> check_placement(const Board& board, const Rack& rack,
                                           const Placement& placement, const RuleSet& rs,
                                           const Lexicon& lex);

}  // namespace tilebench
