#include "cellkit/coxeter.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace cellkit {

namespace {

constexpr std::uint64_t kMaxGroupOrder = 50000;

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Entries of the geometric representation live in Z[x] with a single
// quadratic relation x^2 = d + e*x fixed per group (x = sqrt(2), sqrt(3) or
// the golden ratio; d = e = 0 when every bond is crystallographic of order
// <= 3 and the x-component stays zero throughout).
struct QuadRing {
  long long d = 0, e = 0;
};

struct QInt {
  long long a = 0, b = 0;
  friend bool operator==(const QInt& x, const QInt& y) {
    return x.a == y.a && x.b == y.b;
  }
};

QInt mul(const QInt& x, const QInt& y, const QuadRing& ring) {
  QInt r;
  long long bb = x.b * y.b;
  r.a = x.a * y.a + ring.d * bb;
  r.b = x.a * y.b + x.b * y.a + ring.e * bb;
  return r;
}

void add_scaled(QInt& acc, const QInt& x, const QInt& c, const QuadRing& ring) {
  QInt p = mul(x, c, ring);
  acc.a += p.a;
  acc.b += p.b;
}

struct Matrix {
  std::vector<QInt> m;  // row-major, n x n
};

struct MatrixHash {
  std::size_t operator()(const Matrix& mat) const {
    std::size_t h = 1469598103934665603ull;
    for (const QInt& q : mat.m) {
      h ^= static_cast<std::size_t>(q.a);
      h *= 1099511628211ull;
      h ^= static_cast<std::size_t>(q.b);
      h *= 1099511628211ull;
    }
    return h;
  }
};
struct MatrixEq {
  bool operator()(const Matrix& x, const Matrix& y) const {
    return x.m == y.m;
  }
};

// Element of a dihedral group of order 2n: rotations r^k and reflections
// s r^k, with s = generator 0, t = s r.
struct DihedralElt {
  std::uint8_t refl = 0;
  std::uint32_t k = 0;
  friend bool operator==(const DihedralElt& x, const DihedralElt& y) {
    return x.refl == y.refl && x.k == y.k;
  }
};

struct DihedralHash {
  std::size_t operator()(const DihedralElt& e) const {
    return (static_cast<std::size_t>(e.refl) << 32) | e.k;
  }
};

int bond_entry_kind(int m) {
  // 0: integer 2cos(pi/m); 2: sqrt2; 3: sqrt3; 5: golden ratio
  switch (m) {
    case 2:
    case 3:
      return 0;
    case 4:
      return 2;
    case 6:
      return 3;
    case 5:
      return 5;
    default:
      return -1;
  }
}

}  // namespace

CoxeterSpec CoxeterSpec::parse(std::string_view text) {
  auto fail = [&]() -> CoxeterSpec {
    throw DomainError("unrecognized Coxeter type \"" + std::string(text) +
                      "\"; expected A<n>, B<n>, D<n>, F4, H3, H4 or I2(<n>)");
  };
  if (text.empty()) return fail();
  CoxeterSpec spec;
  auto parse_int = [&](std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
  };
  char f = text[0];
  std::string_view rest = text.substr(1);
  switch (f) {
    case 'A':
      spec.family = Family::A;
      if (!parse_int(rest, spec.rank) || spec.rank < 1) return fail();
      break;
    case 'B':
      spec.family = Family::B;
      if (!parse_int(rest, spec.rank) || spec.rank < 2) return fail();
      break;
    case 'D':
      spec.family = Family::D;
      if (!parse_int(rest, spec.rank) || spec.rank < 4) return fail();
      break;
    case 'F':
      spec.family = Family::F4;
      spec.rank = 4;
      if (rest != "4") return fail();
      break;
    case 'H':
      if (rest == "3") {
        spec.family = Family::H3;
        spec.rank = 3;
      } else if (rest == "4") {
        spec.family = Family::H4;
        spec.rank = 4;
      } else {
        return fail();
      }
      break;
    case 'I': {
      spec.family = Family::I2;
      spec.rank = 2;
      if (rest.size() < 4 || rest[0] != '2' || rest[1] != '(' ||
          rest.back() != ')')
        return fail();
      if (!parse_int(rest.substr(2, rest.size() - 3), spec.dihedral_order) ||
          spec.dihedral_order < 3)
        return fail();
      break;
    }
    default:
      return fail();
  }
  if (spec.rank > 9)
    throw DomainError("rank " + std::to_string(spec.rank) +
                      " not supported (element labels are single digits)");
  return spec;
}

std::string CoxeterSpec::str() const {
  switch (family) {
    case Family::A:
      return "A" + std::to_string(rank);
    case Family::B:
      return "B" + std::to_string(rank);
    case Family::D:
      return "D" + std::to_string(rank);
    case Family::F4:
      return "F4";
    case Family::H3:
      return "H3";
    case Family::H4:
      return "H4";
    case Family::I2:
      return "I2(" + std::to_string(dihedral_order) + ")";
  }
  return "?";
}

std::uint64_t CoxeterSpec::group_order() const {
  switch (family) {
    case Family::A:
      return factorial(rank + 1);
    case Family::B:
      return factorial(rank) << rank;
    case Family::D:
      return factorial(rank) << (rank - 1);
    case Family::F4:
      return 1152;
    case Family::H3:
      return 120;
    case Family::H4:
      return 14400;
    case Family::I2:
      return 2ull * static_cast<std::uint64_t>(dihedral_order);
  }
  return 0;
}

std::vector<int> CoxeterSpec::invariant_degrees() const {
  std::vector<int> d;
  switch (family) {
    case Family::A:
      for (int i = 2; i <= rank + 1; ++i) d.push_back(i);
      break;
    case Family::B:
      for (int i = 1; i <= rank; ++i) d.push_back(2 * i);
      break;
    case Family::D:
      for (int i = 1; i < rank; ++i) d.push_back(2 * i);
      d.push_back(rank);
      std::sort(d.begin(), d.end());
      break;
    case Family::F4:
      d = {2, 6, 8, 12};
      break;
    case Family::H3:
      d = {2, 6, 10};
      break;
    case Family::H4:
      d = {2, 12, 20, 30};
      break;
    case Family::I2:
      d = {2, dihedral_order};
      break;
  }
  return d;
}

CoxeterSystem::CoxeterSystem(const CoxeterSpec& spec) : spec_(spec) {
  rank_ = spec_.rank;
  std::uint64_t order = spec_.group_order();
  if (order > kMaxGroupOrder)
    throw DomainError(spec_.str() + " has " + std::to_string(order) +
                      " elements; enumeration is capped at " +
                      std::to_string(kMaxGroupOrder));

  // Coxeter matrix.
  cox_m_.assign(static_cast<std::size_t>(rank_) * rank_, 2);
  for (int i = 0; i < rank_; ++i) cox_m_[i * rank_ + i] = 1;
  auto set_m = [&](int i, int j, int m) {
    cox_m_[i * rank_ + j] = m;
    cox_m_[j * rank_ + i] = m;
  };
  switch (spec_.family) {
    case Family::A:
      for (int i = 0; i + 1 < rank_; ++i) set_m(i, i + 1, 3);
      break;
    case Family::B:
      set_m(0, 1, 4);
      for (int i = 1; i + 1 < rank_; ++i) set_m(i, i + 1, 3);
      break;
    case Family::D:
      set_m(0, 2, 3);
      set_m(1, 2, 3);
      for (int i = 2; i + 1 < rank_; ++i) set_m(i, i + 1, 3);
      break;
    case Family::F4:
      set_m(0, 1, 3);
      set_m(1, 2, 4);
      set_m(2, 3, 3);
      break;
    case Family::H3:
    case Family::H4:
      set_m(0, 1, 5);
      for (int i = 1; i + 1 < rank_; ++i) set_m(i, i + 1, 3);
      break;
    case Family::I2:
      set_m(0, 1, spec_.dihedral_order);
      break;
  }

  bool generic_dihedral =
      spec_.family == Family::I2 &&
      bond_entry_kind(spec_.dihedral_order) < 0;
  if (generic_dihedral)
    build_dihedral_model();
  else
    build_matrix_model();

  if (size_ != order)
    throw DomainError("internal error: enumerated " + std::to_string(size_) +
                      " elements of " + spec_.str() + ", expected " +
                      std::to_string(order));
  if (static_cast<std::size_t>(len_[size_ - 1]) == 0 && size_ > 1)
    throw DomainError("internal error: longest element missing");

  if (order <= 4000) ensure_bruhat();
}

void CoxeterSystem::build_matrix_model() {
  // Determine the quadratic ring from the bonds present.
  QuadRing ring;
  int kind = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = i + 1; j < rank_; ++j) {
      int k = bond_entry_kind(cox_m_[i * rank_ + j]);
      if (k < 0)
        throw DomainError("internal error: no exact model for bond order " +
                          std::to_string(cox_m_[i * rank_ + j]));
      if (k != 0) {
        if (kind != 0 && kind != k)
          throw DomainError("internal error: mixed irrational bond entries");
        kind = k;
      }
    }
  if (kind == 2) ring = {2, 0};        // x = sqrt(2)
  else if (kind == 3) ring = {3, 0};   // x = sqrt(3)
  else if (kind == 5) ring = {1, 1};   // x = golden ratio

  int n = rank_;
  // Bond coefficients 2cos(pi/m(s,t)) for the rows of the generator action.
  std::vector<QInt> bond(static_cast<std::size_t>(n) * n, QInt{});
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int m = cox_m_[s * n + t];
      QInt c{};
      if (m == 1)
        c = {-2, 0};
      else if (m == 3)
        c = {1, 0};
      else if (m >= 4)
        c = {0, 1};  // sqrt2, sqrt3 or golden ratio, per the ring
      bond[static_cast<std::size_t>(s) * n + t] = c;
    }

  // Each element w is keyed by the matrix of w^{-1} in the geometric
  // representation; then w -> w*s is a single row operation M_s * key(w).
  std::vector<Matrix> elements;
  std::unordered_map<Matrix, Elt, MatrixHash, MatrixEq> index;
  Matrix id;
  id.m.assign(static_cast<std::size_t>(n) * n, QInt{});
  for (int i = 0; i < n; ++i) id.m[i * n + i] = {1, 0};
  elements.push_back(id);
  index.emplace(id, 0);
  len_.push_back(0);
  parent_.push_back(0);
  last_.push_back(0);

  std::vector<Elt> right;
  right.resize(static_cast<std::size_t>(rank_), 0);

  std::uint64_t expected = spec_.group_order();
  for (Elt i = 0; i < elements.size(); ++i) {
    for (int s = 0; s < n; ++s) {
      // M_s * A replaces row s by -row_s + sum_{t != s} c_{st} row_t.
      Matrix y = elements[i];
      for (int c = 0; c < n; ++c) {
        QInt acc = y.m[s * n + c];
        acc.a = -acc.a;
        acc.b = -acc.b;
        for (int t = 0; t < n; ++t) {
          if (t == s) continue;
          const QInt& ct = bond[static_cast<std::size_t>(s) * n + t];
          if (ct.a == 0 && ct.b == 0) continue;
          add_scaled(acc, elements[i].m[t * n + c], ct, ring);
        }
        y.m[s * n + c] = acc;
      }
      auto it = index.find(y);
      Elt yi;
      if (it == index.end()) {
        yi = static_cast<Elt>(elements.size());
        if (elements.size() >= expected)
          throw DomainError("internal error: enumeration exceeded the " +
                            std::to_string(expected) + " expected elements");
        index.emplace(y, yi);
        elements.push_back(std::move(y));
        len_.push_back(static_cast<std::uint16_t>(len_[i] + 1));
        parent_.push_back(i);
        last_.push_back(static_cast<std::uint8_t>(s));
        right.resize(static_cast<std::size_t>(yi + 1) * rank_, 0);
      } else {
        yi = it->second;
      }
      right[static_cast<std::size_t>(i) * rank_ + static_cast<std::size_t>(s)] =
          yi;
    }
  }
  size_ = static_cast<std::uint32_t>(elements.size());
  finish_tables(std::move(right));
}

void CoxeterSystem::build_dihedral_model() {
  int n = spec_.dihedral_order;
  auto rmul = [n](const DihedralElt& x, int s) -> DihedralElt {
    // s0 = s r^0, s1 = s r^1; (st = r)
    std::uint32_t b = static_cast<std::uint32_t>(s);
    auto modn = [n](long long v) {
      long long m = v % n;
      return static_cast<std::uint32_t>(m < 0 ? m + n : m);
    };
    if (!x.refl) return {1, modn(static_cast<long long>(b) - x.k)};
    return {0, modn(static_cast<long long>(b) - x.k)};
  };

  std::vector<DihedralElt> elements;
  std::unordered_map<DihedralElt, Elt, DihedralHash> index;
  elements.push_back({0, 0});
  index.emplace(elements[0], 0);
  len_.push_back(0);
  parent_.push_back(0);
  last_.push_back(0);

  std::vector<Elt> right;
  right.resize(static_cast<std::size_t>(rank_), 0);

  for (Elt i = 0; i < elements.size(); ++i) {
    for (int s = 0; s < 2; ++s) {
      DihedralElt y = rmul(elements[i], s);
      auto it = index.find(y);
      Elt yi;
      if (it == index.end()) {
        yi = static_cast<Elt>(elements.size());
        index.emplace(y, yi);
        elements.push_back(y);
        len_.push_back(static_cast<std::uint16_t>(len_[i] + 1));
        parent_.push_back(i);
        last_.push_back(static_cast<std::uint8_t>(s));
        right.resize(static_cast<std::size_t>(yi + 1) * rank_, 0);
      } else {
        yi = it->second;
      }
      right[static_cast<std::size_t>(i) * rank_ + static_cast<std::size_t>(s)] =
          yi;
    }
  }
  size_ = static_cast<std::uint32_t>(elements.size());
  finish_tables(std::move(right));
}

void CoxeterSystem::finish_tables(std::vector<Elt>&& right) {
  right_ = std::move(right);

  // Inverses: apply the reversed canonical word to the identity.
  inv_.assign(size_, 0);
  std::vector<Gen> word;
  for (Elt x = 0; x < size_; ++x) {
    word.clear();
    for (Elt c = x; c != 0; c = parent_[c]) word.push_back(last_[c]);
    // word now holds the canonical word reversed, which is what we apply.
    Elt acc = 0;
    for (Gen g : word) acc = right_[acc * rank_ + g];
    inv_[x] = acc;
  }

  // s * x == (x^{-1} * s)^{-1}
  left_.assign(static_cast<std::size_t>(size_) * rank_, 0);
  for (Elt x = 0; x < size_; ++x)
    for (int s = 0; s < rank_; ++s)
      left_[x * rank_ + s] = inv_[right_[inv_[x] * rank_ + s]];

  ldesc_.assign(size_, 0);
  rdesc_.assign(size_, 0);
  for (Elt x = 0; x < size_; ++x)
    for (int s = 0; s < rank_; ++s) {
      if (len_[left_[x * rank_ + s]] < len_[x]) ldesc_[x] |= 1u << s;
      if (len_[right_[x * rank_ + s]] < len_[x]) rdesc_[x] |= 1u << s;
    }
}

Elt CoxeterSystem::multiply(Elt x, Elt y) const {
  Elt acc = x;
  for (Gen g : reduced_word(y)) acc = right_[acc * rank_ + g];
  return acc;
}

std::vector<Gen> CoxeterSystem::descents(Elt x, Side side) const {
  std::vector<Gen> out;
  std::uint32_t m = descent_mask(x, side);
  for (int s = 0; s < rank_; ++s)
    if ((m >> s) & 1u) out.push_back(static_cast<Gen>(s));
  return out;
}

std::vector<Gen> CoxeterSystem::reduced_word(Elt x) const {
  std::vector<Gen> w;
  w.reserve(len_[x]);
  for (Elt c = x; c != 0; c = parent_[c]) w.push_back(last_[c]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::string CoxeterSystem::label(Elt x) const {
  if (x == 0) return "e";
  std::string s;
  for (Gen g : reduced_word(x)) s.push_back(static_cast<char>('1' + g));
  return s;
}

Elt CoxeterSystem::element_from_word(std::span<const Gen> word) const {
  Elt acc = 0;
  for (Gen g : word) {
    if (static_cast<int>(g) >= rank_)
      throw DomainError("generator index out of range");
    acc = right_[acc * rank_ + g];
  }
  return acc;
}

Elt CoxeterSystem::element_from_label(std::string_view label) const {
  if (label == "e" || label.empty()) return 0;
  Elt acc = 0;
  for (char c : label) {
    if (c < '1' || c >= '1' + rank_)
      throw DomainError("bad element label \"" + std::string(label) +
                        "\" for " + spec_.str());
    acc = right_[acc * rank_ + static_cast<Gen>(c - '1')];
  }
  return acc;
}

void CoxeterSystem::ensure_bruhat() const {
  std::call_once(bruhat_once_, [this]() {
    std::size_t wpr = bruhat_words_per_row();
    std::vector<std::uint64_t> bm(wpr * size_, 0);
    bm[0] |= 1ull;  // e <= e
    for (Elt y = 1; y < size_; ++y) {
      Gen s = static_cast<Gen>(__builtin_ctz(ldesc_[y]));
      Elt sy = left_[y * rank_ + s];
      const std::uint64_t* rsy = bm.data() + wpr * sy;
      std::uint64_t* ry = bm.data() + wpr * y;
      for (Elt x = 0; x <= y; ++x) {
        Elt sx = left_[x * rank_ + s];
        Elt probe = len_[sx] < len_[x] ? sx : x;
        if ((rsy[probe >> 6] >> (probe & 63)) & 1ull)
          ry[x >> 6] |= 1ull << (x & 63);
      }
    }
    bruhat_ = std::move(bm);
  });
}

bool CoxeterSystem::bruhat_leq(Elt x, Elt y) const {
  if (x == y) return true;
  if (len_[x] >= len_[y]) return false;
  ensure_bruhat();
  const std::uint64_t* row = bruhat_.data() + bruhat_words_per_row() * y;
  return (row[x >> 6] >> (x & 63)) & 1ull;
}

const std::uint64_t* CoxeterSystem::bruhat_row(Elt y) const {
  ensure_bruhat();
  return bruhat_.data() + bruhat_words_per_row() * y;
}

Elt CoxeterSystem::longest_element(std::uint32_t subset_mask) const {
  Elt x = 0;
  for (;;) {
    std::uint32_t ascents = ~rdesc_[x] & subset_mask;
    if (!ascents) return x;
    Gen s = static_cast<Gen>(__builtin_ctz(ascents));
    x = right_[x * rank_ + s];
  }
}

Elt CoxeterSystem::longest_element(std::span<const Gen> subset) const {
  std::uint32_t mask = 0;
  for (Gen g : subset) {
    if (static_cast<int>(g) >= rank_)
      throw DomainError("generator index out of range");
    mask |= 1u << g;
  }
  return longest_element(mask);
}

std::uint64_t CoxeterSystem::indexing_checksum() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (char c : spec_.str()) mix(static_cast<std::uint64_t>(c));
  mix(size_);
  for (Elt x = 0; x < size_; ++x) {
    mix(len_[x]);
    mix(parent_[x]);
    mix(last_[x]);
  }
  return h;
}

}  // namespace cellkit
