// The graded free quasi-Lie ring L'(H): planar binary trees modulo
// antisymmetry [x,y] + [y,x] = 0 and the Jacobi identity, with no [x,x] = 0.
//
// Also the comparison map gamma_k : L'_k -> L_k, its kernel K_k, the
// squaring map, the primed bracket map and its kernel D'_k, and the two
// exact sequences relating D'_k to D_k.
#pragma once

#include "qlie/freelie.hpp"

namespace qlie {

namespace detail {

/// Memoized presentation, consulting the persistent store if one is set.
inline Presentation cached_presentation(const std::string& key, const std::function<Presentation()>& build) {
  static Memo<std::string, Presentation> memo;
  return memo.get(key, [&] {
    auto store = presentation_store();
    if (store)
      if (auto p = store->load(key)) return *p;
    Presentation p = build();
    if (store) {
      p.canonical();
      store->save(key, p);
    }
    return p;
  });
}

inline std::string key(const char* object, unsigned n, unsigned k) {
  return std::string(object) + "_n" + std::to_string(n) + "_k" + std::to_string(k);
}

}  // namespace detail

/// Presentation of L'_k(H): generators are the Catalan(k-1) * n^k tree codes
/// with k leaves; relations are AS at every internal vertex and Jacobi at
/// every internal edge.
inline Presentation lprime_presentation(unsigned n, unsigned k) {
  if (k == 0) throw std::invalid_argument("lprime_presentation: degree must be >= 1");
  return detail::cached_presentation(detail::key("Lq", n, k), [n, k] {
    auto trees = all_trees(n, k);
    std::vector<std::string> codes;
    codes.reserve(trees.size());
    for (const auto& t : trees) codes.push_back(t.code());
    PresentationBuilder b(codes);
    for (const auto& t : trees)
      for (const auto& rel : tree_relations(t)) {
        std::vector<std::pair<std::string, Integer>> terms;
        for (const auto& [x, v] : rel) terms.emplace_back(x.code(), v);
        b.add_relation(terms);
      }
    return std::move(b).build();
  });
}

/// H (x) L'_k, generators i@T.
inline Presentation tensor_lprime_presentation(unsigned n, unsigned k) {
  return detail::cached_presentation(detail::key("HLq", n, k),
                                     [n, k] { return tensor_with_free(lprime_presentation(n, k), n); });
}

/// gamma_k : L'_k -> L_k, T |-> Lyndon coordinates of its tensor expansion.
inline PresentedHom gamma_hom(unsigned n, unsigned k) {
  Presentation src = lprime_presentation(n, k);
  Presentation tgt = lie_presentation(n, k);
  const LyndonBasis& basis = lyndon_basis(n, k);
  std::vector<std::size_t> row_of(basis.words.size());
  for (std::size_t r = 0; r < row_of.size(); ++r) row_of[r] = tgt.require_index(lyndon_code(basis.words[r]));
  std::vector<SparseColumn> cols(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    LieElement e = lie_coords(expand_to_tensor(RootedTree::parse(src.generators()[j])), n, k);
    for (std::size_t r = 0; r < e.coords.size(); ++r)
      if (e.coords[r] != 0) cols[j].emplace_back(row_of[r], e.coords[r]);
  }
  return {src, tgt, Matrix::from_columns(tgt.size(), std::move(cols))};
}

/// 1 (x) gamma_k : H (x) L'_k -> H (x) L_k.
inline PresentedHom tensor_gamma_hom(unsigned n, unsigned k) {
  PresentedHom g = gamma_hom(n, k);
  Presentation src = tensor_lprime_presentation(n, k);
  Presentation tgt = tensor_lie_presentation(n, k);
  std::vector<SparseColumn> cols(src.size());
  for (unsigned i = 1; i <= n; ++i) {
    std::string prefix = std::to_string(i) + "@";
    for (std::size_t j = 0; j < g.source.size(); ++j) {
      std::size_t c = src.require_index(prefix + g.source.generators()[j]);
      for (const auto& [r, v] : g.lift.column(j))
        cols[c].emplace_back(tgt.require_index(prefix + g.target.generators()[r]), v);
    }
  }
  return {src, tgt, Matrix::from_columns(tgt.size(), std::move(cols))};
}

/// K_k = ker gamma_k.
inline KernelResult kernel_gamma(unsigned n, unsigned k) { return hom_kernel(gamma_hom(n, k)); }

/// L_l / 2 L_l, presented on Lyndon codes with relations 2g.
inline Presentation lie_mod2_presentation(unsigned n, unsigned l) {
  Presentation free = lie_presentation(n, l);
  std::vector<SparseColumn> rel;
  for (std::size_t i = 0; i < free.size(); ++i) rel.push_back({{i, 2}});
  return Presentation(free.generators(), Matrix::from_columns(free.size(), std::move(rel)));
}

/// Squaring map L_l / 2L_l -> L'_{2l}, w |-> (B_w, B_w) for the standard
/// bracketing B_w of each Lyndon word.
inline PresentedHom square_hom(unsigned n, unsigned l) {
  Presentation src = lie_mod2_presentation(n, l);
  Presentation tgt = lprime_presentation(n, 2 * l);
  Matrix lift(tgt.size(), src.size());
  for (const auto& w : lyndon_basis(n, l).words) {
    RootedTree b = lyndon_bracketing(w);
    lift.set(tgt.require_index(RootedTree::join(b, b).code()), src.require_index(lyndon_code(w)), 1);
  }
  return {src, tgt, lift};
}

/// beta'_k : H (x) L'_{k+1} -> L'_{k+2}, i@T |-> (i, T).
inline PresentedHom betaprime_hom(unsigned n, unsigned k) {
  Presentation src = tensor_lprime_presentation(n, k + 1);
  Presentation tgt = lprime_presentation(n, k + 2);
  std::vector<SparseColumn> cols(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    RootLabeledTree t = RootLabeledTree::parse(src.generators()[j]);
    cols[j].emplace_back(tgt.require_index(RootedTree::join(RootedTree::leaf(t.root), t.body).code()), 1);
  }
  return {src, tgt, Matrix::from_columns(tgt.size(), std::move(cols))};
}

/// D'_k = ker beta'_k.
inline KernelResult dprime_group(unsigned n, unsigned k) { return hom_kernel(betaprime_hom(n, k)); }

/// D_k = ker beta_k as a subgroup of the free group H (x) L_{k+1}.
inline KernelResult d_group_presented(unsigned n, unsigned k) { return hom_kernel(beta_hom(n, k)); }

struct VerificationReport {
  std::string check;
  unsigned n = 0, k = 0;
  std::vector<Joint> joints;
  std::map<std::string, AbelianStructure> groups;

  bool passed() const {
    return std::all_of(joints.begin(), joints.end(), [](const Joint& j) { return j.passed; });
  }
};

namespace detail {

inline SparseColumn to_sparse(const std::vector<Integer>& v) {
  SparseColumn c;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) c.emplace_back(i, v[i]);
  return c;
}

/// Hom between two subquotients whose generator images are known in a
/// common ambient cover: column j of `images` is the image of source
/// generator j, to be expressed through `target.embedding` in `ambient`.
inline PresentedHom induced_hom(const Presentation& source, const KernelResult& target, const Presentation& ambient,
                                const Matrix& images, std::string_view what) {
  std::vector<SparseColumn> cols;
  for (std::size_t j = 0; j < images.cols(); ++j) {
    auto y = express_in_subgroup(ambient, target.embedding, images.column(j));
    if (!y)
      throw IllDefinedHom(std::string(what) + ": image of " + source.generators()[j] + " (" +
                          ambient.format(images.column(j)) + ") is outside the target subgroup");
    cols.push_back(to_sparse(*y));
  }
  return {source, target.group, Matrix::from_columns(target.group.size(), std::move(cols))};
}

}  // namespace detail

/// Natural map D'_k -> D_k, the restriction of 1 (x) gamma_{k+1}.
inline PresentedHom dprime_to_d_hom(unsigned n, unsigned k, const KernelResult& dprime, const KernelResult& d) {
  PresentedHom tg = tensor_gamma_hom(n, k + 1);
  Matrix images = tg.lift * dprime.embedding;
  return detail::induced_hom(dprime.group, d, tg.target, images, "D'->D");
}

/// Section of 1 (x) gamma_{k+1}: i@w |-> i@B_w.
inline Matrix tensor_gamma_section(unsigned n, unsigned k) {
  Presentation lie = tensor_lie_presentation(n, k);
  Presentation quasi = tensor_lprime_presentation(n, k);
  std::vector<SparseColumn> cols(lie.size());
  for (std::size_t j = 0; j < lie.size(); ++j) {
    const std::string& code = lie.generators()[j];
    auto at = code.find('@');
    Word w;
    std::string letters = code.substr(at + 1);
    std::size_t pos = 0;
    while (pos < letters.size()) {
      std::size_t dot = letters.find('.', pos);
      if (dot == std::string::npos) dot = letters.size();
      w.push_back(std::stoi(letters.substr(pos, dot - pos)));
      pos = dot + 1;
    }
    cols[j].emplace_back(quasi.require_index(code.substr(0, at + 1) + lyndon_bracketing(w).code()), 1);
  }
  return Matrix::from_columns(quasi.size(), std::move(cols));
}

/// Connecting map D_k -> K_{k+2} for even k: lift through 1 (x) gamma_{k+1},
/// apply beta'_k, land in ker gamma_{k+2}.
inline PresentedHom connecting_hom(unsigned n, unsigned k, const KernelResult& d, const KernelResult& kgamma) {
  Matrix section = tensor_gamma_section(n, k + 1);
  PresentedHom bp = betaprime_hom(n, k);
  Matrix images = bp.lift * (section * d.embedding);
  return detail::induced_hom(d.group, kgamma, bp.target, images, "D->K");
}

/// H (x) K_{k+1} -> D'_k for odd k, h (x) kappa |-> h (x) kappa.
inline PresentedHom tensor_k_to_dprime_hom(unsigned n, unsigned k, const KernelResult& kgamma,
                                           const KernelResult& dprime) {
  Presentation src = tensor_with_free(kgamma.group, n);
  Presentation amb = tensor_lprime_presentation(n, k + 1);
  const Presentation& lq = lprime_presentation(n, k + 1);
  std::vector<SparseColumn> cols(src.size());
  for (unsigned i = 1; i <= n; ++i) {
    std::string prefix = std::to_string(i) + "@";
    for (std::size_t j = 0; j < kgamma.group.size(); ++j) {
      std::size_t c = src.require_index(prefix + kgamma.group.generators()[j]);
      for (const auto& [t, v] : kgamma.embedding.column(j))
        cols[c].emplace_back(amb.require_index(prefix + lq.generators()[t]), v);
      std::sort(cols[c].begin(), cols[c].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  }
  Matrix images = Matrix::from_columns(amb.size(), std::move(cols));
  return detail::induced_hom(src, dprime, amb, images, "H(x)K->D'");
}

/// Checks the exact sequences
///   k even:  0 -> D'_k -> D_k -> K_{k+2} -> 0
///   k odd:   0 -> H (x) K_{k+1} -> D'_k -> D_k -> 0
/// joint by joint.
inline VerificationReport snake_verify(unsigned n, unsigned k) {
  if (k == 0) throw std::invalid_argument("snake_verify: degree must be >= 1");
  VerificationReport rep{"cor-dd", n, k, {}, {}};
  KernelResult dprime = dprime_group(n, k);
  KernelResult d = d_group_presented(n, k);
  rep.groups["D"] = group_structure(d.group);
  rep.groups["Dq"] = group_structure(dprime.group);
  PresentedHom to_d = dprime_to_d_hom(n, k, dprime, d);
  if (k % 2 == 0) {
    KernelResult kg = kernel_gamma(n, k + 2);
    rep.groups["K" + std::to_string(k + 2)] = group_structure(kg.group);
    PresentedHom delta = connecting_hom(n, k, d, kg);
    rep.joints.push_back(well_defined_joint(to_d, "D'->D well-defined"));
    rep.joints.push_back(well_defined_joint(delta, "D->K well-defined"));
    rep.joints.push_back(injectivity_joint(to_d, "0->D' injective"));
    rep.joints.push_back(exactness_joint(to_d, delta, "exact at D"));
    rep.joints.push_back(surjectivity_joint(delta, "D->K surjective"));
  } else {
    KernelResult kg = kernel_gamma(n, k + 1);
    rep.groups["K" + std::to_string(k + 1)] = group_structure(kg.group);
    PresentedHom incl = tensor_k_to_dprime_hom(n, k, kg, dprime);
    rep.joints.push_back(well_defined_joint(incl, "HK->D' well-defined"));
    rep.joints.push_back(well_defined_joint(to_d, "D'->D well-defined"));
    rep.joints.push_back(injectivity_joint(incl, "0->HK injective"));
    rep.joints.push_back(exactness_joint(incl, to_d, "exact at D'"));
    rep.joints.push_back(surjectivity_joint(to_d, "D'->D surjective"));
  }
  return rep;
}

/// gamma_k onto; K_k trivial for odd k; for even k, K_k = image of the
/// squaring map and 2 K_k = 0.
inline VerificationReport lemma_quasi_verify(unsigned n, unsigned k) {
  VerificationReport rep{"lemma-quasi", n, k, {}, {}};
  PresentedHom g = gamma_hom(n, k);
  KernelResult kg = hom_kernel(g);
  AbelianStructure ks = group_structure(kg.group);
  rep.groups["L"] = group_structure(g.target);
  rep.groups["Lq"] = group_structure(g.source);
  rep.groups["K"] = ks;
  rep.joints.push_back(well_defined_joint(g, "gamma well-defined"));
  rep.joints.push_back(surjectivity_joint(g, "gamma onto"));
  if (k % 2 == 1) {
    rep.joints.push_back(injectivity_joint(g, "gamma injective (odd k)"));
  } else {
    PresentedHom sq = square_hom(n, k / 2);
    rep.joints.push_back(well_defined_joint(sq, "squaring map well-defined"));
    rep.joints.push_back(exactness_joint(sq, g, "image of squaring = K"));
    bool two = ks.free_rank == 0 && std::all_of(ks.torsion.begin(), ks.torsion.end(),
                                                 [](const Integer& d) { return d == 2; });
    rep.joints.push_back({"2K = 0", two, two ? "" : "K = " + ks.to_string()});
  }
  return rep;
}

}  // namespace qlie
