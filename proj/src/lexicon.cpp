#include "tilebench/lexicon.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <unordered_map>

namespace tilebench {

namespace {

// Build-time trie in child/sibling form to keep the footprint small; the
// GADDAG path set for a full dictionary runs to millions of insertions.
struct TrieNode {
    uint32_t first_child = 0;  // 0 = none (node 0 is the root, never a child)
    uint32_t next_sibling = 0;
    uint8_t letter = 0;
    bool accepting = false;
};

class TrieBuilder {
public:
    TrieBuilder() { nodes_.emplace_back(); }

    void insert(std::span<const uint8_t> path) {
        uint32_t cur = 0;
        for (uint8_t letter : path) {
            uint32_t child = nodes_[cur].first_child;
            uint32_t found = 0;
            while (child != 0) {
                if (nodes_[child].letter == letter) {
                    found = child;
                    break;
                }
                child = nodes_[child].next_sibling;
            }
            if (!found) {
                found = uint32_t(nodes_.size());
                TrieNode n;
                n.letter = letter;
                n.next_sibling = nodes_[cur].first_child;
                nodes_.push_back(n);
                nodes_[cur].first_child = found;
            }
            cur = found;
        }
        nodes_[cur].accepting = true;
    }

    std::vector<TrieNode> nodes_;
};

uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
    const uint8_t* p = static_cast<const uint8_t*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr char kMagic[8] = {'T', 'B', 'L', 'X', 'G', 'D', 'G', '1'};

}  // namespace

Lexicon Lexicon::build(const std::vector<std::string>& words, LexiconBuildReport* report) {
    LexiconBuildReport rep;
    std::vector<std::string> accepted;
    accepted.reserve(words.size());
    for (const auto& w : words) {
        for (char c : w)
            if (c < 'A' || c > 'Z')
                throw LexiconError("bad_character",
                                   "word contains non A-Z character: " + w);
        if (w.size() < 2 || w.size() > 15) {
            ++rep.rejected_length;
            continue;
        }
        accepted.push_back(w);
    }
    if (accepted.empty()) throw LexiconError("empty_input", "no usable words in input");
    std::sort(accepted.begin(), accepted.end());
    rep.duplicates = accepted.size();
    accepted.erase(std::unique(accepted.begin(), accepted.end()), accepted.end());
    rep.duplicates -= accepted.size();
    rep.accepted = accepted.size();

    TrieBuilder trie;
    std::vector<uint8_t> path;
    for (const auto& w : accepted) {
        const size_t n = w.size();
        for (size_t i = 1; i <= n; ++i) {
            path.clear();
            for (size_t j = i; j-- > 0;) path.push_back(uint8_t(w[j] - 'A'));
            if (i < n) {
                path.push_back(kSeparator);
                for (size_t j = i; j < n; ++j) path.push_back(uint8_t(w[j] - 'A'));
            }
            trie.insert(path);
        }
    }

    // Minimize: merge trie nodes with identical (accepting, outgoing-arc)
    // signatures, bottom-up over an explicit post-order stack.
    auto& tn = trie.nodes_;
    std::vector<uint32_t> cls(tn.size(), 0);
    std::unordered_map<std::string, uint32_t> sig_to_class;
    sig_to_class.reserve(tn.size() / 2);
    // class records for final emission: accepting flag + sorted child arcs
    std::vector<std::pair<bool, std::vector<Arc>>> classes;

    std::vector<std::pair<uint32_t, bool>> stack;  // (node, children_done)
    stack.push_back({0, false});
    std::string sig;
    std::vector<Arc> child_arcs;
    while (!stack.empty()) {
        auto [node, done] = stack.back();
        stack.pop_back();
        if (!done) {
            stack.push_back({node, true});
            for (uint32_t c = tn[node].first_child; c != 0; c = tn[c].next_sibling)
                stack.push_back({c, false});
        } else {
            child_arcs.clear();
            for (uint32_t c = tn[node].first_child; c != 0; c = tn[c].next_sibling)
                child_arcs.push_back({tn[c].letter, cls[c]});
            std::sort(child_arcs.begin(), child_arcs.end(),
                      [](const Arc& a, const Arc& b) { return a.letter < b.letter; });
            sig.clear();
            sig.push_back(tn[node].accepting ? 1 : 0);
            for (const Arc& a : child_arcs) {
                sig.push_back(char(a.letter));
                sig.append(reinterpret_cast<const char*>(&a.target), 4);
            }
            auto [it, inserted] = sig_to_class.try_emplace(sig, uint32_t(classes.size()));
            if (inserted) classes.push_back({tn[node].accepting, child_arcs});
            cls[node] = it->second;
        }
    }
    const uint32_t root_class = cls[0];

    Lexicon lex;
    lex.word_count_ = rep.accepted;
    lex.nodes_.resize(classes.size());
    // Emit in a stable order (class discovery order); record arcs flat.
    size_t total_arcs = 0;
    for (const auto& c : classes) total_arcs += c.second.size();
    lex.arcs_.reserve(total_arcs);
    for (size_t i = 0; i < classes.size(); ++i) {
        lex.nodes_[i].accepting = classes[i].first;
        lex.nodes_[i].first_arc = uint32_t(lex.arcs_.size());
        lex.nodes_[i].arc_count = uint16_t(classes[i].second.size());
        for (const Arc& a : classes[i].second)
            lex.arcs_.push_back((uint32_t(a.letter) << 27) | a.target);
    }
    lex.root_ = root_class;
    if (report) *report = rep;
    return lex;
}

uint32_t Lexicon::child(uint32_t node, uint8_t letter) const {
    const Node& n = nodes_[node];
    for (uint32_t i = n.first_arc; i < n.first_arc + n.arc_count; ++i)
        if (uint8_t(arcs_[i] >> 27) == letter) return arcs_[i] & 0x07ffffffu;
    return npos;
}

uint32_t Lexicon::walk(std::string_view reversed_part) const {
    uint32_t node = root_;
    for (size_t i = reversed_part.size(); i-- > 0;) {
        char c = reversed_part[i];
        if (c < 'A' || c > 'Z') return npos;
        node = child(node, uint8_t(c - 'A'));
        if (node == npos) return npos;
    }
    return node;
}

bool Lexicon::contains(std::string_view word) const {
    if (word.empty()) return false;
    uint32_t node = walk(word);
    return node != npos && nodes_[node].accepting;
}

uint32_t Lexicon::hooks_after(std::string_view prefix) const {
    uint32_t node = walk(prefix);
    if (node == npos) return 0;
    uint32_t sep = child(node, kSeparator);
    if (sep == npos) return 0;
    uint32_t mask = 0;
    for_each_arc(sep, [&](uint8_t letter, uint32_t target) {
        if (letter != kSeparator && nodes_[target].accepting) mask |= 1u << letter;
    });
    return mask;
}

uint32_t Lexicon::hooks_before(std::string_view suffix) const {
    uint32_t node = walk(suffix);
    if (node == npos) return 0;
    uint32_t mask = 0;
    for_each_arc(node, [&](uint8_t letter, uint32_t target) {
        if (letter != kSeparator && nodes_[target].accepting) mask |= 1u << letter;
    });
    return mask;
}

void Lexicon::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw LexiconError("io_error", "cannot open for write: " + path);
    f.write(kMagic, 8);
    uint64_t counts[3] = {nodes_.size(), arcs_.size(), word_count_};
    f.write(reinterpret_cast<const char*>(counts), sizeof(counts));
    uint32_t root = root_;
    f.write(reinterpret_cast<const char*>(&root), 4);
    uint64_t hash = fnv1a(counts, sizeof(counts));
    hash = fnv1a(&root, 4, hash);
    for (const Node& n : nodes_) {
        uint8_t rec[7];
        std::memcpy(rec, &n.first_arc, 4);
        std::memcpy(rec + 4, &n.arc_count, 2);
        rec[6] = n.accepting ? 1 : 0;
        f.write(reinterpret_cast<const char*>(rec), 7);
        hash = fnv1a(rec, 7, hash);
    }
    f.write(reinterpret_cast<const char*>(arcs_.data()), std::streamsize(arcs_.size() * 4));
    hash = fnv1a(arcs_.data(), arcs_.size() * 4, hash);
    f.write(reinterpret_cast<const char*>(&hash), 8);
    if (!f) throw LexiconError("io_error", "write failed: " + path);
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw LexiconError("io_error", "cannot open for read: " + path);
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, kMagic, 8) != 0)
        throw LexiconError("corrupt_lexicon", "bad magic in " + path);
    uint64_t counts[3];
    f.read(reinterpret_cast<char*>(counts), sizeof(counts));
    uint32_t root;
    f.read(reinterpret_cast<char*>(&root), 4);
    if (!f) throw LexiconError("corrupt_lexicon", "truncated header in " + path);
    uint64_t hash = fnv1a(counts, sizeof(counts));
    hash = fnv1a(&root, 4, hash);
    Lexicon lex;
    lex.root_ = root;
    lex.word_count_ = counts[2];
    lex.nodes_.resize(counts[0]);
    for (Node& n : lex.nodes_) {
        uint8_t rec[7];
        f.read(reinterpret_cast<char*>(rec), 7);
        if (!f) throw LexiconError("corrupt_lexicon", "truncated node table in " + path);
        std::memcpy(&n.first_arc, rec, 4);
        std::memcpy(&n.arc_count, rec + 4, 2);
        n.accepting = rec[6] != 0;
        hash = fnv1a(rec, 7, hash);
    }
    lex.arcs_.resize(counts[1]);
    f.read(reinterpret_cast<char*>(lex.arcs_.data()), std::streamsize(counts[1] * 4));
    if (!f) throw LexiconError("corrupt_lexicon", "truncated arc table in " + path);
    hash = fnv1a(lex.arcs_.data(), counts[1] * 4, hash);
    uint64_t stored;
    f.read(reinterpret_cast<char*>(&stored), 8);
    if (!f || stored != hash)
        throw LexiconError("corrupt_lexicon", "checksum mismatch in " + path);
    return lex;
}

std::vector<std::string> read_word_list(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw LexiconError("io_error", "cannot open word list: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(f, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        for (char& c : line)
            if (c >= 'a' && c <= 'z') c = char(c - 'a' + 'A');
        words.push_back(line);
    }
    return words;
}

}  // namespace tilebench
