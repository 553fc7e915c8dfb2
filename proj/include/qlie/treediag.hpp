// Tree diagram groups A^t_k(H): labelled unitrivalent trees with k trivalent
// vertices modulo AS and IHX, presented on rooted generators i@T (the free
// cover of H (x) L'_{k+1}) plus rerooting relations.
#pragma once

#include "qlie/quasilie.hpp"

namespace qlie {

/// The same oriented tree with body leaf number `leaf` (left to right,
/// 0-based) as the new root. The old root becomes a leaf.
inline RootLabeledTree reroot(const RootLabeledTree& t, std::size_t leaf) {
  if (leaf >= t.body.leaf_count())
    throw std::out_of_range("reroot: leaf index " + std::to_string(leaf) + " out of range");
  TreeGraph g = TreeGraph::from_rooted(t);
  std::vector<int> leaves = g.leaves();  // vertex 0 (root) first, then body leaves in order
  return g.rooted_at(leaves[leaf + 1]);
}

/// All k+2 rootings of the underlying tree, starting with t itself.
inline std::vector<RootLabeledTree> all_rootings(const RootLabeledTree& t) {
  TreeGraph g = TreeGraph::from_rooted(t);
  std::vector<RootLabeledTree> out;
  for (int l : g.leaves()) out.push_back(g.rooted_at(l));
  return out;
}

inline std::string unrooted_certificate(const RootLabeledTree& t) { return TreeGraph::from_rooted(t).certificate(); }

/// Presentation of A^t_k(H).
inline Presentation at_presentation(unsigned n, unsigned k) {
  if (k == 0) throw std::invalid_argument("at_presentation: degree must be >= 1");
  return detail::cached_presentation(detail::key("At", n, k), [n, k] {
    Presentation cover = tensor_lprime_presentation(n, k + 1);
    PresentationBuilder b(cover.generators());
    for (const auto& code : cover.generators()) {
      RootLabeledTree t = RootLabeledTree::parse(code);
      std::string prefix = std::to_string(t.root) + "@";
      for (const auto& rel : tree_relations(t.body)) {
        std::vector<std::pair<std::string, Integer>> terms;
        for (const auto& [x, v] : rel) terms.emplace_back(prefix + x.code(), v);
        b.add_relation(terms);
      }
      for (std::size_t w = 0; w < t.body.leaf_count(); ++w)
        b.add_relation({{reroot(t, w).code(), 1}, {code, -1}});
    }
    return std::move(b).build();
  });
}

/// eta'_k : A^t_k -> H (x) L'_{k+1}, sum over all leaves of the rerooted tree.
inline PresentedHom etaprime_hom(unsigned n, unsigned k) {
  Presentation src = at_presentation(n, k);
  Presentation tgt = tensor_lprime_presentation(n, k + 1);
  std::vector<SparseColumn> cols(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    for (const auto& r : all_rootings(RootLabeledTree::parse(src.generators()[j])))
      cols[j].emplace_back(tgt.require_index(r.code()), 1);
  }
  return {src, tgt, Matrix::from_columns(tgt.size(), std::move(cols))};
}

/// rho_k : H (x) L'_{k+1} -> A^t_k, forget the root.
inline PresentedHom rho_hom(unsigned n, unsigned k) {
  Presentation src = tensor_lprime_presentation(n, k + 1);
  Presentation tgt = at_presentation(n, k);
  std::vector<SparseColumn> cols(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) cols[j].emplace_back(tgt.require_index(src.generators()[j]), 1);
  return {src, tgt, Matrix::from_columns(tgt.size(), std::move(cols))};
}

/// eta_k = (1 (x) gamma_{k+1}) o eta'_k : A^t_k -> H (x) L_{k+1}.
inline PresentedHom eta_hom(unsigned n, unsigned k) { return compose(tensor_gamma_hom(n, k + 1), etaprime_hom(n, k)); }

inline KernelResult ker_etaprime_presented(unsigned n, unsigned k) { return hom_kernel(etaprime_hom(n, k)); }

inline AbelianStructure ker_etaprime(unsigned n, unsigned k) { return group_structure(ker_etaprime_presented(n, k).group); }

/// A^t_k, eta' and beta' contained in one verification: inclusion of the
/// image in D'_k.
inline VerificationReport lemma_root_verify(unsigned n, unsigned k) {
  VerificationReport rep{"lemma-root", n, k, {}, {}};
  PresentedHom ep = etaprime_hom(n, k);
  PresentedHom bp = betaprime_hom(n, k);
  rep.groups["At"] = group_structure(ep.source);
  rep.joints.push_back(well_defined_joint(ep, "eta' well-defined"));
  PresentedHom zero{ep.source, bp.target, Matrix(bp.target.size(), ep.source.size())};
  rep.joints.push_back(equality_joint(compose(bp, ep), zero, "beta' o eta' = 0"));
  return rep;
}

inline VerificationReport rho_eta_verify(unsigned n, unsigned k) {
  VerificationReport rep{"rho-eta", n, k, {}, {}};
  PresentedHom ep = etaprime_hom(n, k);
  PresentedHom rho = rho_hom(n, k);
  rep.joints.push_back(well_defined_joint(rho, "rho well-defined"));
  rep.joints.push_back(well_defined_joint(ep, "eta' well-defined"));
  PresentedHom mult{ep.source, ep.source, Matrix::identity(ep.source.size()).scaled(k + 2)};
  rep.joints.push_back(equality_joint(compose(rho, ep), mult, "rho o eta' = " + std::to_string(k + 2)));
  return rep;
}

/// eta'_k is a split surjection onto D'_k, its kernel is killed by k+2 and
/// is the (odd, for odd k) torsion of A^t_k; rational ranks agree with D_k.
inline VerificationReport thm_tree_verify(unsigned n, unsigned k) {
  VerificationReport rep{"thm-tree", n, k, {}, {}};
  PresentedHom ep = etaprime_hom(n, k);
  PresentedHom bp = betaprime_hom(n, k);
  AbelianStructure at = group_structure(ep.source);
  KernelResult ker = hom_kernel(ep);
  AbelianStructure ks = group_structure(ker.group);
  AbelianStructure dq = group_structure(dprime_group(n, k).group);
  AbelianStructure d = d_group(n, k).first;
  rep.groups["At"] = at;
  rep.groups["KerEta"] = ks;
  rep.groups["Dq"] = dq;
  rep.groups["D"] = d;

  rep.joints.push_back(well_defined_joint(ep, "eta' well-defined"));
  rep.joints.push_back(surjectivity_joint(bp, "beta' onto"));
  rep.joints.push_back(exactness_joint(ep, bp, "Im eta' = ker beta'"));

  const Integer m = k + 2;
  bool divides = ks.free_rank == 0;
  for (const auto& t : ks.torsion) divides = divides && mpz_divisible_p(m.get_mpz_t(), t.get_mpz_t());
  rep.joints.push_back({"(k+2) ker eta' = 0", divides, divides ? "" : "ker eta' = " + ks.to_string()});

  Integer expected = at.torsion_order();
  if (k % 2 == 1) {
    bool odd = std::all_of(ks.torsion.begin(), ks.torsion.end(), [](const Integer& t) { return t % 2 != 0; });
    rep.joints.push_back({"ker eta' odd (k odd)", odd, odd ? "" : "ker eta' = " + ks.to_string()});
    while (expected % 2 == 0) expected /= 2;
  }
  bool order = ks.torsion_order() == expected;
  rep.joints.push_back({k % 2 == 0 ? "ker eta' = torsion of At" : "ker eta' = odd torsion of At", order,
                        order ? "" : "|ker| = " + ks.torsion_order().get_str() + ", expected " + expected.get_str()});

  bool split = direct_sum(ks, dq) == at;
  rep.joints.push_back({"At = ker eta' + D'", split,
                        split ? "" : "At = " + at.to_string() + ", ker + D' = " + direct_sum(ks, dq).to_string()});

  bool ranks = at.free_rank == dq.free_rank && dq.free_rank == d.free_rank;
  rep.joints.push_back({"rank At = rank D' = rank D", ranks,
                        ranks ? ""
                              : std::to_string(at.free_rank) + ", " + std::to_string(dq.free_rank) + ", " +
                                    std::to_string(d.free_rank)});
  return rep;
}

/// tau_k on a generator T = (A, B) of L'_{k+2}: join A and B by an edge
/// through the old root vertex, reroot at every leaf of A, and sum.
inline std::vector<RootLabeledTree> tau_terms(const RootedTree& t) {
  if (t.is_leaf() || t.leaf_count() < 3) throw std::invalid_argument("tau: tree needs at least 3 leaves");
  TreeGraph g = TreeGraph::from_rooted({0, t});
  auto& v = g.vertices();
  // vertex 0 is the unlabelled root, vertex 1 its trivalent neighbour v
  const int top_a = v[1].nbrs[1];
  const int top_b = v[1].nbrs[2];
  for (auto& x : v[static_cast<std::size_t>(top_a)].nbrs)
    if (x == 1) x = top_b;
  for (auto& x : v[static_cast<std::size_t>(top_b)].nbrs)
    if (x == 1) x = top_a;
  v[0].nbrs.clear();
  v[1].nbrs.clear();
  // leaves of A carry vertex ids in [top_a, top_b)
  std::vector<RootLabeledTree> out;
  for (int id = top_a; id < top_b; ++id)
    if (v[static_cast<std::size_t>(id)].nbrs.size() == 1) out.push_back(g.rooted_at(id));
  return out;
}

/// Checks that tau_k is well defined modulo Im eta'_k, that tau o beta' is
/// the canonical projection, and that ker beta' = Im eta'.
inline VerificationReport tau_check(unsigned n, unsigned k) {
  VerificationReport rep{"tau", n, k, {}, {}};
  PresentedHom ep = etaprime_hom(n, k);
  PresentedHom bp = betaprime_hom(n, k);
  const Presentation& hl = ep.target;

  // H (x) L'_{k+1} / Im eta'
  Matrix qrel = Matrix::hconcat(hl.relations(), ep.lift);
  Presentation quotient(hl.generators(), qrel);

  const Presentation& lq = bp.target;
  std::vector<SparseColumn> cols(lq.size());
  for (std::size_t j = 0; j < lq.size(); ++j) {
    for (const auto& r : tau_terms(RootedTree::parse(lq.generators()[j])))
      detail::axpy(cols[j], 1, {{quotient.require_index(r.code()), 1}});
  }
  PresentedHom tau{lq, quotient, Matrix::from_columns(quotient.size(), std::move(cols))};
  PresentedHom proj{hl, quotient, Matrix::identity(hl.size())};

  rep.joints.push_back(well_defined_joint(tau, "tau well-defined mod Im eta'"));
  rep.joints.push_back(equality_joint(compose(tau, bp), proj, "tau o beta' = projection"));
  rep.joints.push_back(exactness_joint(ep, bp, "ker beta' = Im eta'"));
  return rep;
}

}  // namespace qlie
