#pragma once

// Exact combinatorics of the free group F2 = <x, y>.
//
// Letters are 2-bit symbols ordered x < x^-1 < y < y^-1; a letter's inverse
// differs from it only in the low bit. ASCII rendering uses lowercase for the
// generators and uppercase for their inverses ("xyXY" is the commutator).

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "margulis/error.hpp"

namespace margulis::freegroup {

enum class Letter : std::uint8_t { x = 0, x_inv = 1, y = 2, y_inv = 3 };

inline constexpr std::array<Letter, 4> kAlphabet = {Letter::x, Letter::x_inv, Letter::y,
                                                    Letter::y_inv};

constexpr Letter inverse(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1u); }

constexpr std::uint8_t rank(Letter l) { return static_cast<std::uint8_t>(l); }

constexpr char to_char(Letter l) {
  constexpr char kChars[] = {'x', 'X', 'y', 'Y'};
  return kChars[rank(l)];
}

inline Letter letter_from_char(char c) {
  switch (c) {
    case 'x': return Letter::x;
    case 'X': return Letter::x_inv;
    case 'y': return Letter::y;
    case 'Y': return Letter::y_inv;
    default:
      throw DomainError(std::string("not a letter of F2: '") + c + "' (use x, X, y, Y)");
  }
}

/// A word in x, y and their inverses with no adjacent cancelling pair.
/// The only way to build one is through reduction, so the invariant always holds.
class ReducedWord {
 public:
  ReducedWord() = default;

  /// Free reduction of an arbitrary letter sequence.
  static ReducedWord reduce(std::span<const Letter> raw) {
    ReducedWord w;
    w.letters_.reserve(raw.size());
    for (Letter l : raw) w.push(l);
    return w;
  }

  /// Parses "xyXY"-style text; "1" and "" denote the identity.
  static ReducedWord parse(std::string_view text) {
    std::vector<Letter> raw;
    if (text == "1") return {};
    for (char c : text) raw.push_back(letter_from_char(c));
    return reduce(raw);
  }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(to_char(l));
    return s;
  }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

  /// Shortlex: by length, then lexicographically by letter rank.
  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

 private:
  void push(Letter l) {
    if (!letters_.empty() && letters_.back() == inverse(l)) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  friend ReducedWord concat(const ReducedWord& a, const ReducedWord& b);

  std::vector<Letter> letters_;
};

inline ReducedWord reduce(std::span<const Letter> raw) { return ReducedWord::reduce(raw); }

inline ReducedWord concat(const ReducedWord& a, const ReducedWord& b) {
  ReducedWord out = a;
  out.letters_.reserve(a.length() + b.length());
  for (Letter l : b.letters_) out.push(l);
  return out;
}

inline ReducedWord invert(const ReducedWord& a) {
  std::vector<Letter> raw;
  raw.reserve(a.length());
  for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) raw.push_back(inverse(*it));
  return ReducedWord::reduce(raw);
}

/// t^n for any integer n.
inline ReducedWord power(const ReducedWord& t, long n) {
  const ReducedWord base = n < 0 ? invert(t) : t;
  ReducedWord out;
  for (long i = 0; i < std::labs(n); ++i) out = concat(out, base);
  return out;
}

/// t = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicDecomposition {
  ReducedWord conjugator;
  ReducedWord core;
};

inline CyclicDecomposition cyclic_reduce(const ReducedWord& t) {
  const auto letters = t.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == inverse(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return {ReducedWord::reduce(letters.subspan(0, lo)),
          ReducedWord::reduce(letters.subspan(lo, hi - lo))};
}

inline bool is_cyclically_reduced(const ReducedWord& w) {
  return w.length() < 2 || w.front() != inverse(w.back());
}

/// Number of integers n with |reduced(t^n)| <= k. Uses
/// |t^n| = 2|conjugator| + |n| |core| for n != 0.
inline std::uint64_t count_cyclic_powers(const ReducedWord& t, std::uint64_t k) {
  if (t.empty()) return 1;
  const auto [conj, core] = cyclic_reduce(t);
  const std::uint64_t shell = 2 * conj.length();
  if (k < shell + core.length()) return 1;
  return 1 + 2 * ((k - shell) / core.length());
}

/// Same count by explicit reduction of t^n for n in [-k, k]. Only valid as a
/// cross-check: it leans on |t^n| >= |n| to bound the search window.
inline std::uint64_t count_cyclic_powers_by_reduction(const ReducedWord& t, std::uint64_t k) {
  if (t.empty()) return 1;
  std::uint64_t count = 0;
  const long kk = static_cast<long>(k);
  for (long n = -kk; n <= kk; ++n) {
    if (power(t, n).length() <= k) ++count;
  }
  return count;
}

/// Reduced word of length <= 29 packed into 64 bits: letters in the low
/// 2*length bits (first letter highest), length in the top 6 bits.
class PackedWord {
 public:
  static constexpr std::size_t kMaxLength = 29;

  PackedWord() = default;

  static PackedWord pack(const ReducedWord& w) {
    if (w.length() > kMaxLength) throw CapExceeded("word too long to pack");
    PackedWord p;
    for (Letter l : w.letters()) p = p.extended(l);
    return p;
  }

  std::size_t length() const { return static_cast<std::size_t>(bits_ >> 58); }

  Letter letter(std::size_t i) const {
    const auto shift = 2 * (length() - 1 - i);
    return static_cast<Letter>((bits_ >> shift) & 3u);
  }

  Letter last() const { return static_cast<Letter>(bits_ & 3u); }

  /// Appends a letter; caller guarantees it does not cancel.
  PackedWord extended(Letter l) const {
    const std::uint64_t n = length() + 1;
    const std::uint64_t body = bits_ & ((std::uint64_t{1} << 58) - 1);
    return PackedWord((n << 58) | (body << 2) | rank(l));
  }

  ReducedWord unpack() const {
    std::vector<Letter> raw(length());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = letter(i);
    return ReducedWord::reduce(raw);
  }

  std::uint64_t bits() const { return bits_; }

  friend bool operator==(PackedWord, PackedWord) = default;
  // Equal lengths compare lexicographically via the letter bits; the length
  // field sits on top, so the raw ordering is shortlex.
  friend auto operator<=>(PackedWord a, PackedWord b) { return a.bits_ <=> b.bits_; }

 private:
  explicit PackedWord(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Default memory guard: V_14 has 2(3^14 - 1) + 1 = 9,565,937 words.
inline constexpr std::size_t kDefaultBallCap = 14;

/// The set V_n of all reduced words of length <= n, in shortlex order.
class WordBall {
 public:
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<PackedWord>& packed() const { return words_; }
  ReducedWord operator[](std::size_t i) const { return words_[i].unpack(); }

  friend WordBall enumerate_ball(std::size_t n, std::size_t cap);

 private:
  std::size_t radius_ = 0;
  std::vector<PackedWord> words_;
};

/// #V_n from the closed form 2(3^n - 1) + 1.
constexpr std::uint64_t ball_size_formula(std::size_t n) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 3;
  return 2 * (p - 1) + 1;
}

inline WordBall enumerate_ball(std::size_t n, std::size_t cap = kDefaultBallCap) {
  if (n > cap) {
    throw CapExceeded("word ball radius " + std::to_string(n) + " exceeds enumeration cap " +
                      std::to_string(cap) + " (" + std::to_string(ball_size_formula(cap)) +
                      " words)");
  }
  if (n > PackedWord::kMaxLength) throw CapExceeded("word ball radius exceeds packed word length");
  WordBall ball;
  ball.radius_ = n;
  ball.words_.reserve(ball_size_formula(n));
  ball.words_.push_back(PackedWord{});
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t level_end = ball.words_.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const PackedWord w = ball.words_[i];
      for (Letter l : kAlphabet) {
        if (w.length() > 0 && l == inverse(w.last())) continue;
        ball.words_.push_back(w.extended(l));
      }
    }
    level_begin = level_end;
  }
  return ball;
}

}  // namespace margulis::freegroup
