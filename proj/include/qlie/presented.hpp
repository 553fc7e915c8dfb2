// Finitely presented abelian groups and homomorphisms between them.
//
// A presentation is a sorted list of generator codes plus a relation matrix
// whose columns live in the free group on those generators. Every
// presentation reduces (once, lazily) to a canonical form
//
//     Z^g / R  ~=  Z/d_1 + ... + Z/d_t + Z^f
//
// with an explicit coordinate map and section. Kernels, cokernels and
// exactness are then computed on the small standard coordinates.
#pragma once

#include "qlie/zlinalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace qlie {

class IllDefinedHom : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Canonical coordinates of a presented group.
///
/// `orders[i]` is d_i > 1 for a torsion coordinate and 0 for a free one.
/// coord * section = I, and x - section * coord * x lies in the relation
/// lattice for every x in the free cover.
struct CanonicalForm {
  AbelianStructure structure;
  std::vector<Integer> orders;
  Matrix coord;    // m x g
  Matrix section;  // g x m

  std::size_t dim() const { return orders.size(); }

  /// Standard coordinates of a cover vector, torsion entries reduced into [0, d).
  std::vector<Integer> coordinates(const SparseColumn& x) const {
    std::vector<Integer> y(dim());
    for (const auto& [j, v] : x)
      for (const auto& [i, c] : coord.column(j)) y[i] += c * v;
    reduce(y);
    return y;
  }

  void reduce(std::vector<Integer>& y) const {
    for (std::size_t i = 0; i < y.size(); ++i)
      if (orders[i] != 0) mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), orders[i].get_mpz_t());
  }

  static bool is_zero(const std::vector<Integer>& y) {
    return std::all_of(y.begin(), y.end(), [](const Integer& v) { return v == 0; });
  }

  /// Relation matrix of the standard group: diag(d_i) on torsion coordinates.
  Matrix standard_relations() const {
    std::vector<SparseColumn> cols;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] != 0) cols.push_back({{i, orders[i]}});
    return Matrix::from_columns(dim(), std::move(cols));
  }
};

inline CanonicalForm compute_canonical(const Matrix& relations) {
  const std::size_t g = relations.rows();
  detail::SparseReduction red = detail::sparse_reduce(relations, true);
  const std::size_t s = red.survivors.size();
  detail::Dense a = red.residual.to_dense();
  detail::SmithReducer sr(a, red.residual.cols(), true, true, false, false);
  sr.run();
  detail::Dense u = sr.take_u();
  detail::Dense uinv = sr.take_uinv();

  CanonicalForm cf;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s; ++i) {
    Integer d = i < red.residual.cols() ? a[i][i] : Integer(0);
    if (d == 1) continue;
    keep.push_back(i);
    cf.orders.push_back(d);
  }
  // torsion coordinates first, then free ones
  std::vector<std::size_t> order(keep.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return cf.orders[i] != 0; });
  std::vector<std::size_t> kept;
  std::vector<Integer> orders;
  for (std::size_t i : order) {
    kept.push_back(keep[i]);
    orders.push_back(cf.orders[i]);
  }
  cf.orders = std::move(orders);
  const std::size_t m = kept.size();

  Matrix urows(m, s);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < s; ++c)
      if (u[kept[r]][c] != 0) urows.set(r, c, u[kept[r]][c]);
  Matrix coord = urows * red.substitution;
  std::vector<SparseColumn> ccols(g);
  for (std::size_t j = 0; j < g; ++j) {
    SparseColumn c;
    for (const auto& [i, v] : coord.column(j)) {
      Integer x = v;
      if (cf.orders[i] != 0) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), cf.orders[i].get_mpz_t());
      if (x != 0) c.emplace_back(i, x);
    }
    ccols[j] = std::move(c);
  }
  cf.coord = Matrix::from_columns(m, std::move(ccols));

  std::vector<SparseColumn> scols(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < s; ++t)
      if (uinv[t][kept[i]] != 0) scols[i].emplace_back(red.survivors[t], uinv[t][kept[i]]);
  cf.section = Matrix::from_columns(g, std::move(scols));

  for (const auto& d : cf.orders) {
    if (d == 0)
      ++cf.structure.free_rank;
    else
      cf.structure.torsion.push_back(d);
  }
  return cf;
}

/// A finitely presented abelian group: free group on sorted, distinct
/// generator codes modulo the column lattice of `relations`.
///
/// Cheap to copy; the data is shared and immutable.
class Presentation {
 public:
  Presentation() : Presentation(std::vector<std::string>{}, Matrix(0, 0)) {}

  Presentation(std::vector<std::string> generators, Matrix relations)
      : data_(std::make_shared<Data>()) {
    if (relations.rows() != generators.size())
      throw DimensionMismatch("relation matrix rows != generator count");
    for (std::size_t i = 1; i < generators.size(); ++i)
      if (!(generators[i - 1] < generators[i]))
        throw std::invalid_argument("generator codes must be sorted and distinct: '" + generators[i - 1] +
                                    "', '" + generators[i] + "'");
    data_->generators = std::move(generators);
    data_->relations = std::move(relations);
    for (std::size_t i = 0; i < data_->generators.size(); ++i) data_->index.emplace(data_->generators[i], i);
  }

  Presentation(std::vector<std::string> generators, Matrix relations, CanonicalForm canonical)
      : Presentation(std::move(generators), std::move(relations)) {
    if (canonical.coord.cols() != size() || canonical.section.rows() != size())
      throw DimensionMismatch("canonical form does not match presentation");
    std::call_once(data_->once, [&] { data_->canonical = std::make_shared<CanonicalForm>(std::move(canonical)); });
  }

  static Presentation free(std::vector<std::string> generators) {
    std::sort(generators.begin(), generators.end());
    std::size_t g = generators.size();
    return Presentation(std::move(generators), Matrix(g, 0));
  }

  const std::vector<std::string>& generators() const { return data_->generators; }
  const Matrix& relations() const { return data_->relations; }
  std::size_t size() const { return data_->generators.size(); }

  std::optional<std::size_t> index_of(std::string_view code) const {
    auto it = data_->index.find(std::string(code));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(std::string_view code) const {
    auto i = index_of(code);
    if (!i) throw std::out_of_range("unknown generator code '" + std::string(code) + "'");
    return *i;
  }

  /// Computed on first use; safe to call concurrently.
  const CanonicalForm& canonical() const {
    std::call_once(data_->once,
                   [&] { data_->canonical = std::make_shared<CanonicalForm>(compute_canonical(data_->relations)); });
    return *data_->canonical;
  }

  bool same_as(const Presentation& o) const {
    return data_ == o.data_ || (generators() == o.generators() && relations() == o.relations());
  }

  /// Renders a cover vector as a formal combination of generator codes.
  std::string format(const SparseColumn& x) const {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [i, v] : x) {
      bool neg = v < 0;
      Integer a = abs(v);
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (a != 1) out += a.get_str() + "*";
      out += generators()[i];
    }
    return out;
  }

 private:
  struct Data {
    std::vector<std::string> generators;
    std::unordered_map<std::string, std::size_t> index;
    Matrix relations;
    std::once_flag once;
    std::shared_ptr<const CanonicalForm> canonical;
  };
  std::shared_ptr<Data> data_;
};

/// Collects relations as formal combinations of generator codes, merging
/// repeated terms and dropping duplicate columns (up to sign).
class PresentationBuilder {
 public:
  explicit PresentationBuilder(std::vector<std::string> generators) {
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    generators_ = std::move(generators);
    for (std::size_t i = 0; i < generators_.size(); ++i) index_.emplace(generators_[i], i);
  }

  std::size_t index(const std::string& code) const {
    auto it = index_.find(code);
    if (it == index_.end()) throw std::out_of_range("relation term '" + code + "' is not a generator");
    return it->second;
  }

  void add_relation(const std::vector<std::pair<std::string, Integer>>& terms) {
    std::map<std::size_t, Integer> acc;
    for (const auto& [code, v] : terms) acc[index(code)] += v;
    SparseColumn c;
    for (auto& [i, v] : acc)
      if (v != 0) c.emplace_back(i, v);
    add_column(std::move(c));
  }

  void add_column(SparseColumn c) {
    if (c.empty()) return;
    if (c.front().second < 0)
      for (auto& e : c) e.second = -e.second;
    if (seen_.insert(c).second) columns_.push_back(std::move(c));
  }

  std::size_t relation_count() const { return columns_.size(); }

  Presentation build() && {
    std::size_t g = generators_.size();
    return Presentation(std::move(generators_), Matrix::from_columns(g, std::move(columns_)));
  }

 private:
  std::vector<std::string> generators_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<SparseColumn> seen_;
  std::vector<SparseColumn> columns_;
};

/// Homomorphism given by images of source generators in the free cover of the target.
struct PresentedHom {
  Presentation source;
  Presentation target;
  Matrix lift;  // target generators x source generators
};

inline void check_shape(const PresentedHom& f) {
  if (f.lift.rows() != f.target.size() || f.lift.cols() != f.source.size())
    throw DimensionMismatch("lift is " + std::to_string(f.lift.rows()) + "x" + std::to_string(f.lift.cols()) +
                            ", expected " + std::to_string(f.target.size()) + "x" + std::to_string(f.source.size()));
}

inline AbelianStructure group_structure(const Presentation& p) { return p.canonical().structure; }

/// Index of a source relation whose image is not a target relation.
inline std::optional<std::size_t> find_ill_defined_relation(const PresentedHom& f) {
  check_shape(f);
  const CanonicalForm& ct = f.target.canonical();
  const Matrix& rel = f.source.relations();
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    SparseColumn image = f.lift.apply(rel.column(j));
    if (!CanonicalForm::is_zero(ct.coordinates(image))) return j;
  }
  return std::nullopt;
}

inline bool check_induced_hom(const PresentedHom& f) { return !find_ill_defined_relation(f).has_value(); }

inline void require_well_defined(const PresentedHom& f, std::string_view what) {
  if (auto bad = find_ill_defined_relation(f))
    throw IllDefinedHom(std::string(what) + ": relation " + f.source.format(f.source.relations().column(*bad)) +
                        " maps outside the target relations");
}

/// f in standard coordinates: coord_target * lift * section_source.
inline Matrix standard_matrix(const PresentedHom& f) {
  check_shape(f);
  const CanonicalForm& cs = f.source.canonical();
  const CanonicalForm& ct = f.target.canonical();
  Matrix images = f.lift * cs.section;
  Matrix a(ct.dim(), cs.dim());
  for (std::size_t j = 0; j < cs.dim(); ++j) {
    auto y = ct.coordinates(images.column(j));
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] != 0) a.set(i, j, y[i]);
  }
  return a;
}

namespace detail {

/// Basis of { x : A x in colspan(rel) }.
inline Matrix preimage_lattice(const Matrix& a, const Matrix& rel) {
  Matrix block = Matrix::hconcat(a, rel);
  Matrix ker = kernel_lattice(block);
  Matrix proj = ker.select_rows(0, a.cols());
  return lattice_basis(proj);
}

inline std::string padded_code(char prefix, std::size_t i, std::size_t total) {
  std::string digits = std::to_string(i);
  std::size_t width = std::to_string(total > 0 ? total - 1 : 0).size();
  return std::string(1, prefix) + std::string(width - digits.size(), '0') + digits;
}

}  // namespace detail

struct KernelResult {
  Presentation group;  // generators k0, k1, ... in invariant-factor form
  Matrix embedding;    // source generators x group generators
};

/// Presentation of the subquotient colspan(basis) / colspan(relations) of a
/// standard group with coordinates `cf`, where relations lie in the span
/// of basis. The result is in invariant-factor form and `embedding` maps
/// its generators into the source cover.
inline KernelResult subquotient(const CanonicalForm& cf, const Matrix& basis, const Matrix& relations) {
  // express relations in the basis
  std::vector<SparseColumn> ycols;
  for (std::size_t j = 0; j < relations.cols(); ++j) {
    std::vector<Integer> v(relations.rows());
    for (const auto& [i, x] : relations.column(j)) v[i] = x;
    auto y = lattice_member(basis, v);
    if (!y) throw std::logic_error("subquotient: relation outside the lattice");
    SparseColumn c;
    for (std::size_t i = 0; i < y->size(); ++i)
      if ((*y)[i] != 0) c.emplace_back(i, (*y)[i]);
    ycols.push_back(std::move(c));
  }
  Matrix y = Matrix::from_columns(basis.cols(), std::move(ycols));
  CanonicalForm sub = compute_canonical(y);
  const std::size_t m = sub.dim();
  std::vector<std::string> codes;
  for (std::size_t i = 0; i < m; ++i) codes.push_back(detail::padded_code('k', i, m));
  std::vector<SparseColumn> rel;
  for (std::size_t i = 0; i < m; ++i)
    if (sub.orders[i] != 0) rel.push_back({{i, sub.orders[i]}});
  CanonicalForm trivial_cf;
  trivial_cf.structure = sub.structure;
  trivial_cf.orders = sub.orders;
  trivial_cf.coord = Matrix::identity(m);
  trivial_cf.section = Matrix::identity(m);
  Presentation group(std::move(codes), Matrix::from_columns(m, std::move(rel)), std::move(trivial_cf));
  Matrix standard = basis * sub.section;  // in standard coordinates of the ambient group
  return {std::move(group), cf.section * standard};
}

/// Kernel of a well-defined hom, via the preimage lattice in the source's
/// standard coordinates.
inline KernelResult hom_kernel(const PresentedHom& f) {
  require_well_defined(f, "hom_kernel");
  const CanonicalForm& cs = f.source.canonical();
  const CanonicalForm& ct = f.target.canonical();
  Matrix a = standard_matrix(f);
  Matrix p = detail::preimage_lattice(a, ct.standard_relations());
  return subquotient(cs, p, cs.standard_relations());
}

inline AbelianStructure hom_cokernel(const PresentedHom& f) {
  require_well_defined(f, "hom_cokernel");
  Matrix a = standard_matrix(f);
  return cokernel_structure(Matrix::hconcat(a, f.target.canonical().standard_relations()));
}

inline bool is_injective(const PresentedHom& f) { return hom_kernel(f).group.canonical().structure.trivial(); }
inline bool is_surjective(const PresentedHom& f) { return hom_cokernel(f).trivial(); }

/// Outcome of a single verified statement.
struct Joint {
  std::string name;
  bool passed = false;
  std::string witness;  // empty on success
};

/// Exactness of  . --f--> M --g--> .  at M, as equality of lattices in the
/// standard coordinates of M. On failure the witness names an element of
/// one lattice missing from the other.
inline Joint exactness_joint(const PresentedHom& f, const PresentedHom& g, std::string name) {
  if (!f.target.same_as(g.source)) throw DimensionMismatch("check_exact: f.target differs from g.source");
  require_well_defined(f, "check_exact (f)");
  require_well_defined(g, "check_exact (g)");
  const Presentation& mid = f.target;
  const CanonicalForm& cm = mid.canonical();
  const CanonicalForm& ct = g.target.canonical();
  Matrix af = standard_matrix(f);
  Matrix ag = standard_matrix(g);
  Joint j{std::move(name), true, {}};

  Matrix comp = ag * af;
  for (std::size_t c = 0; c < comp.cols(); ++c) {
    if (!CanonicalForm::is_zero(ct.coordinates(comp.column(c)))) {
      j.passed = false;
      j.witness = "image element " + mid.format((cm.section * af).column(c)) + " is not in the kernel";
      return j;
    }
  }
  Matrix ker = detail::preimage_lattice(ag, ct.standard_relations());
  Matrix image = Matrix::hconcat(af, cm.standard_relations());
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    std::vector<Integer> v(cm.dim());
    for (const auto& [i, x] : ker.column(c)) v[i] = x;
    if (!lattice_member(image, v)) {
      j.passed = false;
      j.witness = "kernel element " + mid.format(cm.section.apply(ker.column(c))) + " is not in the image";
      return j;
    }
  }
  return j;
}

inline bool check_exact(const PresentedHom& f, const PresentedHom& g) {
  return exactness_joint(f, g, "exact").passed;
}

inline Joint injectivity_joint(const PresentedHom& f, std::string name) {
  KernelResult k = hom_kernel(f);
  Joint j{std::move(name), k.group.canonical().structure.trivial(), {}};
  if (!j.passed)
    j.witness = "kernel " + k.group.canonical().structure.to_string() + " generated by " +
                f.source.format(k.embedding.column(0));
  return j;
}

inline Joint surjectivity_joint(const PresentedHom& f, std::string name) {
  AbelianStructure c = hom_cokernel(f);
  Joint j{std::move(name), c.trivial(), {}};
  if (!j.passed) j.witness = "cokernel " + c.to_string();
  return j;
}

inline Joint well_defined_joint(const PresentedHom& f, std::string name) {
  auto bad = find_ill_defined_relation(f);
  Joint j{std::move(name), !bad.has_value(), {}};
  if (bad) j.witness = "relation " + f.source.format(f.source.relations().column(*bad)) + " is not preserved";
  return j;
}

/// Two homs with the same source and target agree as maps of presented groups.
inline Joint equality_joint(const PresentedHom& f, const PresentedHom& g, std::string name) {
  if (!f.source.same_as(g.source) || !f.target.same_as(g.target))
    throw DimensionMismatch("equality_joint: homs have different source or target");
  Matrix diff = f.lift - g.lift;
  const CanonicalForm& ct = f.target.canonical();
  for (std::size_t c = 0; c < diff.cols(); ++c)
    if (!CanonicalForm::is_zero(ct.coordinates(diff.column(c))))
      return {std::move(name), false,
              "maps differ on " + f.source.generators()[c] + " by " + f.target.format(diff.column(c))};
  return {std::move(name), true, {}};
}

inline PresentedHom compose(const PresentedHom& g, const PresentedHom& f) {
  if (!f.target.same_as(g.source)) throw DimensionMismatch("compose: f.target differs from g.source");
  return {f.source, g.target, g.lift * f.lift};
}

/// Coefficients y with sum_j y_j gens_j = x in the group presented by p,
/// where gens and x are cover vectors; nothing if x is outside the subgroup.
inline std::optional<std::vector<Integer>> express_in_subgroup(const Presentation& p, const Matrix& gens,
                                                               const SparseColumn& x) {
  const CanonicalForm& cf = p.canonical();
  Matrix g(cf.dim(), gens.cols());
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    auto y = cf.coordinates(gens.column(j));
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] != 0) g.set(i, j, y[i]);
  }
  Matrix block = Matrix::hconcat(g, cf.standard_relations());
  auto sol = lattice_member(block, cf.coordinates(x));
  if (!sol) return std::nullopt;
  sol->resize(gens.cols());
  return sol;
}

/// Generators i@c for i = 1..n and every generator c of p; relations i@r.
inline Presentation tensor_with_free(const Presentation& p, unsigned n) {
  std::vector<std::string> codes;
  codes.reserve(p.size() * n);
  for (unsigned i = 1; i <= n; ++i)
    for (const auto& c : p.generators()) codes.push_back(std::to_string(i) + "@" + c);
  PresentationBuilder b(codes);
  std::vector<std::size_t> remap(p.size());
  const Matrix& rel = p.relations();
  for (unsigned i = 1; i <= n; ++i) {
    std::string prefix = std::to_string(i) + "@";
    for (std::size_t j = 0; j < p.size(); ++j) remap[j] = b.index(prefix + p.generators()[j]);
    for (std::size_t r = 0; r < rel.cols(); ++r) {
      SparseColumn c;
      for (const auto& [j, v] : rel.column(r)) c.emplace_back(remap[j], v);
      std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      b.add_column(std::move(c));
    }
  }
  return std::move(b).build();
}

/// Structure of A + B.
inline AbelianStructure direct_sum(const AbelianStructure& a, const AbelianStructure& b) {
  std::vector<Integer> d = a.torsion;
  d.insert(d.end(), b.torsion.begin(), b.torsion.end());
  AbelianStructure t = cokernel_structure(Matrix::diagonal(d));
  t.free_rank += a.free_rank + b.free_rank;
  return t;
}

// ZPRES serialization:
//   ZPRES 1
//   <generator count>
//   <one code per line>
//   <relation matrix in ZMAT format>
inline void write_zpres(std::ostream& os, const Presentation& p) {
  os << "ZPRES 1\n" << p.size() << '\n';
  for (const auto& c : p.generators()) os << c << '\n';
  write_zmat(os, p.relations());
}

inline std::pair<std::vector<std::string>, Matrix> read_zpres_parts(std::istream& is) {
  std::string tag;
  int version = 0;
  long long count = -1;
  if (!(is >> tag >> version) || tag != "ZPRES") throw FormatError("ZPRES: bad header");
  if (version != 1) throw FormatError("ZPRES: unsupported version " + std::to_string(version));
  if (!(is >> count) || count < 0) throw FormatError("ZPRES: bad generator count");
  std::vector<std::string> gens(static_cast<std::size_t>(count));
  for (auto& g : gens)
    if (!(is >> g)) throw FormatError("ZPRES: truncated generator list");
  Matrix rel = read_zmat(is);
  if (rel.rows() != gens.size()) throw FormatError("ZPRES: relation rows != generator count");
  return {std::move(gens), std::move(rel)};
}

inline Presentation read_zpres(std::istream& is) {
  auto [gens, rel] = read_zpres_parts(is);
  try {
    return Presentation(std::move(gens), std::move(rel));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("ZPRES: ") + e.what());
  }
}

// Canonical form serialization, appended after a ZPRES block by the cache:
//   ZCAN 1 <m>
//   <orders...>
//   <coord ZMAT> <section ZMAT>
inline void write_canonical(std::ostream& os, const CanonicalForm& cf) {
  os << "ZCAN 1 " << cf.dim() << '\n';
  for (const auto& d : cf.orders) os << d.get_str() << '\n';
  write_zmat(os, cf.coord);
  write_zmat(os, cf.section);
}

inline CanonicalForm read_canonical(std::istream& is) {
  std::string tag;
  int version = 0;
  long long m = -1;
  if (!(is >> tag >> version >> m) || tag != "ZCAN" || version != 1 || m < 0) throw FormatError("ZCAN: bad header");
  CanonicalForm cf;
  for (long long i = 0; i < m; ++i) {
    std::string s;
    Integer d;
    if (!(is >> s) || d.set_str(s, 10) != 0 || d < 0 || d == 1) throw FormatError("ZCAN: bad order");
    cf.orders.push_back(d);
    if (d == 0)
      ++cf.structure.free_rank;
    else
      cf.structure.torsion.push_back(d);
  }
  cf.coord = read_zmat(is);
  cf.section = read_zmat(is);
  if (cf.coord.rows() != cf.orders.size() || cf.section.cols() != cf.orders.size())
    throw FormatError("ZCAN: matrix shape mismatch");
  return cf;
}

/// Optional persistent store consulted by the memoized constructors.
class PresentationStore {
 public:
  virtual ~PresentationStore() = default;
  virtual std::optional<Presentation> load(const std::string& key) = 0;
  virtual void save(const std::string& key, const Presentation& p) = 0;
};

namespace detail {

inline std::shared_ptr<PresentationStore>& store_slot() {
  static std::shared_ptr<PresentationStore> slot;
  return slot;
}

inline std::mutex& store_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

inline void set_presentation_store(std::shared_ptr<PresentationStore> store) {
  std::lock_guard lock(detail::store_mutex());
  detail::store_slot() = std::move(store);
}

inline std::shared_ptr<PresentationStore> presentation_store() {
  std::lock_guard lock(detail::store_mutex());
  return detail::store_slot();
}

}  // namespace qlie
