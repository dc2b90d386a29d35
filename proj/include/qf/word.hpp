#pragma once

#include <string>
#include <vector>

#include "qf/errors.hpp"
#include "qf/quandle.hpp"

namespace qf {

// One letter of a word in the enveloping group's generators: generator index
// and sign (+1 for the generator, -1 for its inverse).
struct GenLetter {
    int gen;
    int sign;
    bool operator==(const GenLetter&) const = default;
};

using GroupWord = std::vector<GenLetter>;

inline GroupWord word_inverse(const GroupWord& w) {
    GroupWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->sign});
    return out;
}

inline GroupWord word_concat(GroupWord a, const GroupWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Exponent-sum homomorphism to Z (all generators to 1).
inline long degree(const GroupWord& w) {
    long d = 0;
    for (const GenLetter& l : w) d += l.sign;
    return d;
}

inline void check_word(const GroupWord& w, int n) {
    for (const GenLetter& l : w) {
        if (l.gen < 0 || l.gen >= n) throw DomainError("word letter out of range");
        if (l.sign != 1 && l.sign != -1) throw DomainError("word letter sign must be +-1");
    }
}

inline std::string word_to_string(const GroupWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const GenLetter& l : w) {
        if (!s.empty()) s += " ";
        s += "x" + std::to_string(l.gen);
        if (l.sign < 0) s += "^-1";
    }
    return s;
}

// Defining relators of the enveloping group: for every ordered pair (x, y),
//   x y x^{-1} (x>y)^{-1}.
inline std::vector<GroupWord> presentation(const FiniteQuandle& q) {
    std::vector<GroupWord> rels;
    rels.reserve(static_cast<std::size_t>(q.size()) * q.size());
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < q.size(); ++y)
            rels.push_back(GroupWord{{x, 1}, {y, 1}, {x, -1}, {q.op(x, y), -1}});
    return rels;
}

// Image of a word under the projection to Inn(Q): the product of L_x^{±1}.
inline Permutation inn_projection(const FiniteQuandle& q, const GroupWord& w) {
    check_word(w, q.size());
    Permutation p(static_cast<std::size_t>(q.size()));
    for (const GenLetter& l : w) {
        Permutation lx = q.left_translation(l.gen);
        p = p.compose(l.sign > 0 ? lx : lx.inverse());
    }
    return p;
}

}  // namespace qf
