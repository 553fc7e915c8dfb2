// The graded free Lie ring L(H) on a free abelian group H of rank n, in
// Lyndon-basis coordinates, and the bracket map H (x) L_{k+1} -> L_{k+2}.
#pragma once

#include "qlie/memo.hpp"
#include "qlie/presented.hpp"
#include "qlie/rooted_tree.hpp"

#include <map>
#include <tuple>

namespace qlie {

class NotALieElement : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Word = std::vector<int>;  // letters 1..n

/// Homogeneous element of the tensor algebra T(H).
using TensorPoly = std::map<Word, Integer>;

inline Integer witt_dim(unsigned n, unsigned k) {
  if (k == 0) throw std::invalid_argument("witt_dim: degree must be >= 1");
  auto mobius = [](unsigned d) {
    int mu = 1;
    for (unsigned p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      mu = -mu;
    }
    if (d > 1) mu = -mu;
    return mu;
  };
  Integer sum = 0;
  for (unsigned d = 1; d <= k; ++d) {
    if (k % d) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, k / d);
    sum += mobius(d) * p;
  }
  return sum / k;
}

inline bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t r = 1; r < w.size(); ++r) {
    Word rot(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
    if (!(w < rot)) return false;
  }
  return true;
}

/// Lyndon words of length k over {1..n} in lexicographic order (Duval).
inline std::vector<Word> lyndon_words(unsigned n, unsigned k) {
  if (k == 0) throw std::invalid_argument("lyndon_words: degree must be >= 1");
  std::vector<Word> out;
  if (n == 0) return out;
  Word w{1};
  const int top = static_cast<int>(n);
  while (!w.empty()) {
    if (w.size() == k) out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < k) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == top) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

/// w = uv with v the longest proper suffix that is Lyndon.
inline std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2) throw std::invalid_argument("standard_factorization: word too short");
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    if (is_lyndon(v)) return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)), v};
  }
  throw std::logic_error("standard_factorization: no Lyndon suffix");
}

inline RootedTree lyndon_bracketing(const Word& w) {
  if (w.size() == 1) return RootedTree::leaf(w[0]);
  auto [u, v] = standard_factorization(w);
  return RootedTree::join(lyndon_bracketing(u), lyndon_bracketing(v));
}

/// Image of an iterated bracket in the tensor algebra, [x,y] = xy - yx.
inline TensorPoly expand_to_tensor(const RootedTree& t) {
  if (t.is_leaf()) return {{Word{t.label()}, 1}};
  TensorPoly a = expand_to_tensor(t.left());
  TensorPoly b = expand_to_tensor(t.right());
  TensorPoly out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) {
      Word xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      Word yx = y;
      yx.insert(yx.end(), x.begin(), x.end());
      out[xy] += cx * cy;
      out[yx] -= cx * cy;
    }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

inline std::string lyndon_code(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

/// Lyndon basis of L_k with the tensor expansions of the standard bracketings.
struct LyndonBasis {
  unsigned n = 0, k = 0;
  std::vector<Word> words;
  std::map<Word, std::size_t> index;
  std::vector<TensorPoly> expansions;
};

inline const LyndonBasis& lyndon_basis(unsigned n, unsigned k) {
  static detail::Memo<std::pair<unsigned, unsigned>, std::shared_ptr<const LyndonBasis>> memo;
  return *memo.get({n, k}, [&] {
    auto b = std::make_shared<LyndonBasis>();
    b->n = n;
    b->k = k;
    b->words = lyndon_words(n, k);
    for (std::size_t i = 0; i < b->words.size(); ++i) {
      b->index.emplace(b->words[i], i);
      b->expansions.push_back(expand_to_tensor(lyndon_bracketing(b->words[i])));
    }
    return std::shared_ptr<const LyndonBasis>(std::move(b));
  });
}

struct LieElement {
  unsigned degree = 0;
  std::vector<Integer> coords;  // indexed by lyndon_words(n, degree)

  friend bool operator==(const LieElement&, const LieElement&) = default;
};

/// Lyndon coordinates of a Lie polynomial. The least word in the support of
/// a nonzero Lie element is Lyndon and appears in exactly one basis
/// expansion, with coefficient 1, so the back-substitution is integral.
inline LieElement lie_coords(const TensorPoly& p, unsigned n, unsigned k) {
  const LyndonBasis& basis = lyndon_basis(n, k);
  LieElement e{k, std::vector<Integer>(basis.words.size())};
  TensorPoly rest = p;
  std::erase_if(rest, [](const auto& t) { return t.second == 0; });
  while (!rest.empty()) {
    const Word w = rest.begin()->first;
    const Integer coef = rest.begin()->second;
    if (w.size() != k) throw NotALieElement("word of wrong degree in Lie polynomial");
    auto it = basis.index.find(w);
    if (it == basis.index.end())
      throw NotALieElement("residual leading word " + lyndon_code(w) + " is not Lyndon");
    e.coords[it->second] += coef;
    for (const auto& [u, cu] : basis.expansions[it->second]) {
      Integer& slot = rest[u];
      slot -= coef * cu;
      if (slot == 0) rest.erase(u);
    }
  }
  return e;
}

/// Bracket map H (x) L_{k+1} -> L_{k+2}; column (i, w) in i-major order.
inline Matrix beta_matrix(unsigned n, unsigned k) {
  const LyndonBasis& src = lyndon_basis(n, k + 1);
  const std::size_t rows = lyndon_basis(n, k + 2).words.size();
  Matrix m(rows, n * src.words.size());
  std::size_t col = 0;
  for (unsigned i = 1; i <= n; ++i)
    for (const auto& w : src.words) {
      RootedTree t = RootedTree::join(RootedTree::leaf(static_cast<int>(i)), lyndon_bracketing(w));
      LieElement e = lie_coords(expand_to_tensor(t), n, k + 2);
      for (std::size_t r = 0; r < rows; ++r)
        if (e.coords[r] != 0) m.set(r, col, e.coords[r]);
      ++col;
    }
  return m;
}

/// D_k(H) = ker beta_k: its structure and a lattice basis (columns in the
/// coordinates of beta_matrix).
inline std::pair<AbelianStructure, Matrix> d_group(unsigned n, unsigned k) {
  Matrix b = beta_matrix(n, k);
  Matrix ker = kernel_lattice(b);
  AbelianStructure s;
  s.free_rank = ker.cols();
  return {s, ker};
}

/// Free presentation of L_k on Lyndon codes.
inline Presentation lie_presentation(unsigned n, unsigned k) {
  std::vector<std::string> codes;
  for (const auto& w : lyndon_basis(n, k).words) codes.push_back(lyndon_code(w));
  return Presentation::free(std::move(codes));
}

/// Free presentation of H (x) L_k on codes i@w.
inline Presentation tensor_lie_presentation(unsigned n, unsigned k) {
  return tensor_with_free(lie_presentation(n, k), n);
}

/// beta_k as a hom of free presentations.
inline PresentedHom beta_hom(unsigned n, unsigned k) {
  Presentation src = tensor_lie_presentation(n, k + 1);
  Presentation tgt = lie_presentation(n, k + 2);
  const LyndonBasis& sb = lyndon_basis(n, k + 1);
  const LyndonBasis& tb = lyndon_basis(n, k + 2);
  std::vector<std::size_t> row_of(tb.words.size());
  for (std::size_t r = 0; r < tb.words.size(); ++r) row_of[r] = tgt.require_index(lyndon_code(tb.words[r]));
  Matrix lift(tgt.size(), src.size());
  for (unsigned i = 1; i <= n; ++i)
    for (const auto& w : sb.words) {
      std::size_t c = src.require_index(std::to_string(i) + "@" + lyndon_code(w));
      RootedTree t = RootedTree::join(RootedTree::leaf(static_cast<int>(i)), lyndon_bracketing(w));
      LieElement e = lie_coords(expand_to_tensor(t), n, k + 2);
      for (std::size_t r = 0; r < e.coords.size(); ++r)
        if (e.coords[r] != 0) lift.set(row_of[r], c, e.coords[r]);
    }
  return {src, tgt, lift};
}

}  // namespace qlie
