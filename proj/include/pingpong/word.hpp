// Words over a generating alphabet, in run-length (syllable) normal form.
//
// A syllable (gen, exp) is a nonzero power of one generator.  Generator
// orders drive reduction: order 0 means infinite order (free group letter,
// exponent any nonzero integer), order p >= 2 means Z/p (exponent kept in
// [1, p-1]).  Adjacent syllables of a normal form always have distinct
// generators, which for free products is exactly the alternating form.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "pingpong/errors.hpp"

namespace pingpong {

struct Syllable {
    int gen = 0;        // generator index, >= 0
    long long exp = 0;  // never 0 in a normal form

    friend bool operator==(const Syllable& a, const Syllable& b) {
        return a.gen == b.gen && a.exp == b.exp;
    }
    friend bool operator!=(const Syllable& a, const Syllable& b) { return !(a == b); }
};

using Word = std::vector<Syllable>;

inline long long mod_exp(long long e, long long order) {
    if (order == 0) return e;
    long long m = e % order;
    if (m < 0) m += order;
    return m;  // in [0, order)
}

// Append one syllable to a word kept in normal form.
inline void push_reduced(Word& w, Syllable s, const std::vector<long long>& orders) {
    s.exp = mod_exp(s.exp, orders[s.gen]);
    while (s.exp != 0) {
        if (w.empty() || w.back().gen != s.gen) { w.push_back(s); return; }
        long long e = mod_exp(w.back().exp + s.exp, orders[s.gen]);
        w.pop_back();
        if (e == 0) return;
        s.exp = e;
    }
}

inline Word reduce_word(const Word& raw, const std::vector<long long>& orders) {
    Word out;
    out.reserve(raw.size());
    for (const Syllable& s : raw) {
        if (s.gen < 0 || s.gen >= static_cast<int>(orders.size()))
            throw domain_violation("letter outside the model's alphabet");
        push_reduced(out, s, orders);
    }
    return out;
}

inline Word inverse_word(const Word& w, const std::vector<long long>& orders) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        push_reduced(out, Syllable{it->gen, -it->exp}, orders);
    return out;
}

inline Word mul_words(const Word& a, const Word& b, const std::vector<long long>& orders) {
    Word out = a;
    for (const Syllable& s : b) push_reduced(out, s, orders);
    return out;
}

// Step count: single letters for infinite-order generators, whole syllables
// for finite ones.  This is the tree-geometric length (edge steps).
inline long long word_step_length(const Word& w, const std::vector<long long>& orders) {
    long long n = 0;
    for (const Syllable& s : w)
        n += orders[s.gen] == 0 ? std::llabs(s.exp) : 1;
    return n;
}

// Expansion into unit steps: (gen, +-1) for free letters, (gen, exp) as-is
// for finite-order ones.
inline std::vector<Syllable> word_steps(const Word& w, const std::vector<long long>& orders) {
    std::vector<Syllable> steps;
    for (const Syllable& s : w) {
        if (orders[s.gen] == 0) {
            long long n = std::llabs(s.exp), sgn = s.exp > 0 ? 1 : -1;
            for (long long i = 0; i < n; ++i) steps.push_back(Syllable{s.gen, sgn});
        } else {
            steps.push_back(s);
        }
    }
    return steps;
}

inline Word word_from_steps(const std::vector<Syllable>& steps,
                            const std::vector<long long>& orders) {
    return reduce_word(Word(steps.begin(), steps.end()), orders);
}

// Total order used for deterministic tie-breaking: generator index first,
// then exponent by (magnitude, sign) so e.g. a < a^-1 < a^2 < a^-2.
inline bool syllable_less(const Syllable& a, const Syllable& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    long long ma = std::llabs(a.exp), mb = std::llabs(b.exp);
    if (ma != mb) return ma < mb;
    return a.exp > b.exp;  // positive first
}

inline bool word_lex_less(const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), syllable_less);
}

// Shorter first, then lexicographic: the document-wide candidate order.
inline bool word_shortlex_less(const Word& a, const Word& b,
                               const std::vector<long long>& orders) {
    long long la = word_step_length(a, orders), lb = word_step_length(b, orders);
    if (la != lb) return la < lb;
    return word_lex_less(a, b);
}

}  // namespace pingpong
