#pragma once

#include <set>
#include <string>
#include <vector>

#include "tilebench/board.hpp"
#include "tilebench/rng.hpp"

namespace tbtest {

// Canonical identity of a move: its placed cells with letters and blank
// flags, sorted. Two placements with the same key have the same effect on
// the board and rack, so direction duplicates collapse.
std::string placement_cell_key(const tilebench::Placement& p);

// Reference enumeration of every legal placement, written with no shared
// machinery: all start squares x all orderings of rack tiles (blanks
// expanded) x dictionary checks against a plain word set.
std::set<std::string> brute_force_move_keys(const tilebench::Board& board,
                                            const tilebench::Rack& rack,
                                            const tilebench::RuleSet& rs,
                                            const std::vector<std::string>& dict);

// Randomized small instances for the generator-vs-reference comparison:
// dictionary <= 200 words over a narrow alphabet, rack <= 5 tiles (possibly
// with a blank), board <= 7 tiles seeded from dictionary words.
struct MovegenInstance {
    tilebench::Board board;
    tilebench::Rack rack;
    std::vector<std::string> dict;
};
MovegenInstance random_movegen_instance(tilebench::Rng& rng);

// Empty string when the generator's move set equals the reference
// enumeration; otherwise a description of the first difference.
std::string compare_movegen_to_brute_force(const MovegenInstance& inst,
                                           const tilebench::RuleSet& rs);

}  // namespace tbtest
