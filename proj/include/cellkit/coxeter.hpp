#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cellkit {

// Domain errors (bad spec strings, unknown labels, size policy) throw this;
// the CLI maps it to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family : std::uint8_t { A, B, D, F4, H3, H4, I2 };

// One of the supported finite Coxeter types.  Parsed from strings such as
// "A3", "B4", "D5", "F4", "H3", "H4", "I2(7)".
struct CoxeterSpec {
  Family family = Family::A;
  int rank = 1;
  int dihedral_order = 0;  // m(1,2) for I2 only, >= 3

  static CoxeterSpec parse(std::string_view text);
  std::string str() const;

  // Classical order of the corresponding finite group.
  std::uint64_t group_order() const;
  // Degrees of the fundamental invariants, ascending.
  std::vector<int> invariant_degrees() const;
};

using Elt = std::uint32_t;
using Gen = std::uint32_t;

enum class Side : std::uint8_t { Left, Right };

// A finite Coxeter group with every element enumerated.  Elements are
// identified by their index in ShortLex order of canonical reduced words
// (index 0 is the identity, the last index is the longest element).  The
// object is immutable after construction and safe for concurrent reads.
class CoxeterSystem {
 public:
  explicit CoxeterSystem(const CoxeterSpec& spec);
  explicit CoxeterSystem(std::string_view spec_text)
      : CoxeterSystem(CoxeterSpec::parse(spec_text)) {}

  const CoxeterSpec& spec() const { return spec_; }
  int rank() const { return rank_; }
  std::uint32_t size() const { return size_; }
  int coxeter_m(Gen s, Gen t) const { return cox_m_[s * rank_ + t]; }

  Elt right_mul(Elt x, Gen s) const { return right_[x * rank_ + s]; }
  Elt left_mul(Gen s, Elt x) const { return left_[x * rank_ + s]; }
  Elt multiply(Elt x, Elt y) const;
  Elt inverse(Elt x) const { return inv_[x]; }
  int length(Elt x) const { return len_[x]; }

  bool is_descent(Elt x, Gen s, Side side) const {
    std::uint32_t m = side == Side::Left ? ldesc_[x] : rdesc_[x];
    return (m >> s) & 1u;
  }
  std::uint32_t descent_mask(Elt x, Side side) const {
    return side == Side::Left ? ldesc_[x] : rdesc_[x];
  }
  std::vector<Gen> descents(Elt x, Side side) const;

  // ShortLex-least reduced word, letters in 0..rank-1.
  std::vector<Gen> reduced_word(Elt x) const;
  // Canonical label: the reduced word as 1-based digits, "e" for identity.
  std::string label(Elt x) const;
  Elt element_from_word(std::span<const Gen> word) const;
  // Parses a digit label ("121", "e").  Throws DomainError on bad input.
  Elt element_from_label(std::string_view label) const;

  bool bruhat_leq(Elt x, Elt y) const;

  // Longest element of the standard parabolic subgroup generated by
  // `subset` (bitmask over generators); the empty set gives the identity.
  Elt longest_element(std::uint32_t subset_mask) const;
  Elt longest_element(std::span<const Gen> subset) const;
  Elt w0() const { return size_ - 1; }

  // Bitmatrix row of Bruhat order: bit x of row y is set iff x <= y.
  // Built lazily for groups above the guaranteed size policy.
  const std::uint64_t* bruhat_row(Elt y) const;
  std::size_t bruhat_words_per_row() const { return (size_ + 63) / 64; }

  // Identifying hash of the element indexing (spec string, order and all
  // canonical words); cache files refuse to load when it disagrees.
  std::uint64_t indexing_checksum() const;

 private:
  void build_matrix_model();
  void build_dihedral_model();
  void finish_tables(std::vector<Elt>&& right);
  void ensure_bruhat() const;

  CoxeterSpec spec_;
  int rank_ = 0;
  std::uint32_t size_ = 0;
  std::vector<int> cox_m_;
  std::vector<Elt> right_;   // size_ * rank_
  std::vector<Elt> left_;    // size_ * rank_
  std::vector<Elt> inv_;
  std::vector<std::uint16_t> len_;
  std::vector<Elt> parent_;        // x * last_letter(x) chain for words
  std::vector<std::uint8_t> last_;
  std::vector<std::uint32_t> ldesc_, rdesc_;

  mutable std::once_flag bruhat_once_;
  mutable std::vector<std::uint64_t> bruhat_;
};

}  // namespace cellkit
