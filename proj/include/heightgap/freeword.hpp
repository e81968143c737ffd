#ifndef HEIGHTGAP_FREEWORD_HPP
#define HEIGHTGAP_FREEWORD_HPP

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "heightgap/qrat.hpp"

namespace heightgap {

/// One letter of a free-group word: generator index in 1..rank with a sign.
/// Encoded as +g for x_g and -g for x_g^{-1}.
struct Letter {
    int generator; // 1-based
    int sign;      // +1 or -1
    int code() const { return sign * generator; }
};

/// A reduced word in the free group of the given rank. Instances are always
/// stored in reduced normal form; unreduced letter sequences exist only as
/// inputs to reduce().
class Word {
public:
    Word() : rank_(2) {}
    explicit Word(int rank) : rank_(rank) {
        if (rank < 1) throw error("word rank must be >= 1");
    }

    static Word reduce(int rank, const std::vector<int>& letters) {
        Word w(rank);
        for (int c : letters) w.push(c);
        return w;
    }

    int rank() const { return rank_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const std::vector<std::int32_t>& letters() const { return letters_; }

    Word inverse() const {
        Word w(rank_);
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back(-*it);
        return w;
    }

    Word operator*(const Word& o) const {
        if (rank_ != o.rank_) throw error("rank mismatch in word product");
        Word w = *this;
        for (int c : o.letters_) w.push(c);
        return w;
    }

    bool operator==(const Word& o) const {
        return rank_ == o.rank_ && letters_ == o.letters_;
    }

    Word conjugate_by(const Word& c) const { return c * *this * c.inverse(); }

    /// Letters as x,X,y,Y text (rank <= 2 naming per the CLI format; higher
    /// generators fall back to a,A,b,B,...).
    std::string str() const {
        static const char* lower = "xyabcdefgh";
        static const char* upper = "XYABCDEFGH";
        std::string s;
        s.reserve(letters_.size());
        for (int c : letters_) {
            int g = std::abs(c) - 1;
            if (g >= 10) throw error("word rank too large for text form");
            s.push_back(c > 0 ? lower[g] : upper[g]);
        }
        return s;
    }

    static Word parse(const std::string& text, int rank = 2) {
        Word w(rank);
        for (char ch : text) {
            int g, sign;
            if (ch == 'x') { g = 1; sign = 1; }
            else if (ch == 'X') { g = 1; sign = -1; }
            else if (ch == 'y') { g = 2; sign = 1; }
            else if (ch == 'Y') { g = 2; sign = -1; }
            else throw error(std::string("malformed word character '") + ch + "'");
            if (g > rank) throw error("generator out of range for word rank");
            w.push(sign * g);
        }
        return w;
    }

private:
    void push(int code) {
        int g = std::abs(code);
        if (g < 1 || g > rank_) throw error("letter generator out of range");
        if (!letters_.empty() && letters_.back() == -code)
            letters_.pop_back();
        else
            letters_.push_back(code);
    }

    int rank_;
    std::vector<std::int32_t> letters_;
    friend Word substitute(const Word&, const std::vector<Word>&);
};

inline Word commutator(const Word& u, const Word& v) {
    return u * v * u.inverse() * v.inverse();
}

/// Image of w under the homomorphism x_i -> images[i-1].
inline Word substitute(const Word& w, const std::vector<Word>& images) {
    if (images.size() != std::size_t(w.rank()))
        throw error("substitute: image count must equal word rank");
    int out_rank = images.empty() ? 1 : images[0].rank();
    for (auto& im : images)
        if (im.rank() != out_rank) throw error("substitute: mixed image ranks");
    Word out(out_rank);
    for (int c : w.letters()) {
        const Word& im = images[std::size_t(std::abs(c)) - 1];
        if (c > 0)
            for (int d : im.letters()) out.push(d);
        else {
            auto& ls = im.letters();
            for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push(-*it);
        }
    }
    return out;
}

/// Evaluate the word map at group elements, via an ops object providing
///   T identity(); T mul(const T&, const T&); T inv(const T&);
template <typename T, typename Ops>
T evaluate(const Word& w, const std::vector<T>& elements, const Ops& ops) {
    if (elements.size() != std::size_t(w.rank()))
        throw error("evaluate: element count must equal word rank");
    std::vector<T> inverses;
    inverses.reserve(elements.size());
    for (auto& e : elements) inverses.push_back(ops.inv(e));
    T acc = ops.identity();
    for (int c : w.letters()) {
        const T& g = c > 0 ? elements[std::size_t(c) - 1]
                           : inverses[std::size_t(-c) - 1];
        acc = ops.mul(acc, g);
    }
    return acc;
}

/// w' = w([x,y],[x^{-1},y]); the two images generate a free subgroup, so w'
/// is nontrivial whenever w is.
inline Word sl_promotion_word(const Word& w) {
    Word x = Word::parse("x"), y = Word::parse("y");
    return substitute(w, {commutator(x, y), commutator(x.inverse(), y)});
}

} // namespace heightgap

#endif
