#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tilebench {

struct LexiconError : std::runtime_error {
    std::string code;
    LexiconError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

struct LexiconBuildReport {
    size_t accepted = 0;
    size_t rejected_length = 0;  // outside [2,15]
    size_t duplicates = 0;
};

// Compressed GADDAG: for a word w of length n it stores the paths
// rev(w[0..i]) (+ separator + w[i..n] when i < n) for i = 1..n, minimized by
// merging equivalent suffix subgraphs. Membership is the reversed-word path;
// the separator arcs support anchored bidirectional extension. Letters only,
// A-Z; blanks are the move generator's concern.
class Lexicon {
public:
    static constexpr uint8_t kSeparator = 26;
    static constexpr uint32_t npos = 0xffffffffu;

    // Words must be uppercase A-Z; lengths outside [2,15] are counted in the
    // report and skipped. Throws on empty effective input or bad characters.
    static Lexicon build(const std::vector<std::string>& words, LexiconBuildReport* report = nullptr);

    bool contains(std::string_view word) const;

    // Bitmask of letters L (bit L-'A') such that prefix+L / L+suffix is a word.
    uint32_t hooks_after(std::string_view prefix) const;
    uint32_t hooks_before(std::string_view suffix) const;

    // Raw traversal for the move generator. Arc letters are 0..25 plus
    // kSeparator; child() returns npos when no such arc exists.
    uint32_t root() const { return root_; }
    uint32_t child(uint32_t node, uint8_t letter) const;
    bool accepting(uint32_t node) const { return nodes_[node].accepting; }

    struct Arc {
        uint8_t letter;
        uint32_t target;
    };
    template <typename Fn>
    void for_each_arc(uint32_t node, Fn&& fn) const {
        const Node& n = nodes_[node];
        for (uint32_t i = n.first_arc; i < n.first_arc + n.arc_count; ++i)
            fn(uint8_t(arcs_[i] >> 27), arcs_[i] & 0x07ffffffu);
    }

    size_t node_count() const { return nodes_.size(); }
    size_t arc_count() const { return arcs_.size(); }
    size_t word_count() const { return word_count_; }

    void save(const std::string& path) const;
    static Lexicon load(const std::string& path);

private:
    struct Node {
        uint32_t first_arc = 0;
        uint16_t arc_count = 0;
        bool accepting = false;
    };
    std::vector<Node> nodes_;
    std::vector<uint32_t> arcs_;  // (letter << 27) | target
    uint32_t root_ = 0;
    uint64_t word_count_ = 0;

    uint32_t walk(std::string_view reversed_part) const;
};

// Reads one word per line, uppercases, ignores blank lines.
std::vector<std::string> read_word_list(const std::string& path);

}  // namespace tilebench
