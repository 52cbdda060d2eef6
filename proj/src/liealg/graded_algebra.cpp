#include "bggkit/liealg/graded_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

#include "bggkit/exactla/linalg.hpp"

namespace bggkit::liealg {

using exactla::QMatrix;
using rootsys::Series;

namespace {

using Accum = std::map<std::pair<int, int>, Rational>;

SparseMatrix from_accum(int size, const Accum& acc) {
  SparseMatrix m;
  m.size = size;
  for (const auto& [pos, v] : acc)
    if (sgn(v) != 0) m.entries.push_back({pos.first, pos.second, v});
  return m;
}

SparseMatrix commutator(const SparseMatrix& x, const SparseMatrix& y) {
  Accum acc;
  for (const auto& a : x.entries)
    for (const auto& b : y.entries) {
      if (a.col == b.row) acc[{a.row, b.col}] += a.value * b.value;
      if (b.col == a.row) acc[{b.row, a.col}] -= a.value * b.value;
    }
  return from_accum(x.size, acc);
}

SparseMatrix transposed(const SparseMatrix& m) {
  SparseMatrix t = m;
  for (auto& e : t.entries) std::swap(e.row, e.col);
  std::sort(t.entries.begin(), t.entries.end(),
            [](const auto& a, const auto& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  return t;
}

SparseMatrix sparse_from_dense(const QMatrix& d) {
  SparseMatrix m;
  m.size = static_cast<int>(d.rows());
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (sgn(d(r, c)) != 0) m.entries.push_back({int(r), int(c), d(r, c)});
  return m;
}

// Epsilon-coordinates of the diagonal torus weight at each matrix position and
// the simple roots as columns in the same coordinates.
struct Realization {
  int size = 0;
  int eps_dim = 0;
  std::vector<QVector> position_weight;
  QMatrix simple_roots;  // eps_dim x rank
  QMatrix form;          // invariant bilinear form J (empty for type A)
};

Realization realization(Series s, int n) {
  Realization r;
  if (s == Series::A) {
    r.size = n + 1;
    r.eps_dim = n + 1;
    for (int p = 0; p < r.size; ++p) {
      QVector w(r.eps_dim);
      w[p] = 1;
      r.position_weight.push_back(w);
    }
    r.simple_roots = QMatrix(r.eps_dim, n);
    for (int i = 0; i < n; ++i) {
      r.simple_roots(i, i) = 1;
      r.simple_roots(i + 1, i) = -1;
    }
    return r;
  }
  r.eps_dim = n;
  r.size = s == Series::B ? 2 * n + 1 : 2 * n;
  for (int p = 0; p < r.size; ++p) {
    QVector w(n);
    if (p < n) w[p] = 1;
    else if (r.size - 1 - p < n) w[r.size - 1 - p] = -1;
    r.position_weight.push_back(w);
  }
  r.simple_roots = QMatrix(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    r.simple_roots(i, i) = 1;
    r.simple_roots(i + 1, i) = -1;
  }
  switch (s) {
    case Series::B: r.simple_roots(n - 1, n - 1) = 1; break;
    case Series::C: r.simple_roots(n - 1, n - 1) = 2; break;
    default:
      r.simple_roots(n - 2, n - 1) = 1;
      r.simple_roots(n - 1, n - 1) = 1;
      break;
  }
  // Anti-diagonal form: symmetric for orthogonal, skew for symplectic, so the
  // upper-triangular matrices form a Borel and transposition preserves the algebra.
  r.form = QMatrix(r.size, r.size);
  for (int p = 0; p < r.size; ++p) {
    r.form(p, r.size - 1 - p) = (s == Series::C && p >= n) ? -1 : 1;
  }
  return r;
}

int parse_int(const std::string& s, const std::string& context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
    throw UnknownStructure("malformed integer '" + s + "' in " + context);
  }
  return std::stoi(s);
}

const std::vector<std::pair<Family, std::string>>& family_table() {
  static const std::vector<std::pair<Family, std::string>> t = {
      {Family::Projective, "projective"},
      {Family::ContactProjective, "contact-projective"},
      {Family::Grassmannian, "grassmannian"},
      {Family::Quaternionic, "quaternionic"},
      {Family::LagrangeanContact, "lagrangean-contact"},
      {Family::CR, "cr"},
      {Family::QuaternionicContact, "quaternionic-contact"},
  };
  return t;
}

}  // namespace

QMatrix SparseMatrix::to_dense() const {
  QMatrix d(size, size);
  for (const auto& e : entries) d(e.row, e.col) += e.value;
  return d;
}

std::string family_name(Family family) {
  for (const auto& [f, name] : family_table())
    if (f == family) return name;
  return "raw";
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [f, name] : family_table()) out.push_back(name);
  return out;
}

StructureSpec catalog_entry(Family family, int n) {
  StructureSpec s;
  s.family = family;
  s.n = n;
  s.name = family_name(family) + ":" + std::to_string(n);
  auto need = [&](int lo) {
    if (n < lo) throw UnknownStructure(s.name + ": parameter must be at least " + std::to_string(lo));
  };
  switch (family) {
    case Family::Projective:
      need(1);
      s.series = Series::A, s.rank = n, s.crossed = {1};
      break;
    case Family::ContactProjective:
      need(2);
      s.series = Series::C, s.rank = n, s.crossed = {1};
      break;
    case Family::Grassmannian:
      need(2);
      s.series = Series::A, s.rank = n + 1, s.crossed = {2};
      break;
    case Family::Quaternionic:
      need(1);
      s.series = Series::A, s.rank = 2 * n + 1, s.crossed = {2};
      break;
    case Family::LagrangeanContact:
      need(1);
      s.series = Series::A, s.rank = n + 1, s.crossed = {1, n + 1};
      break;
    case Family::CR:
      need(1);
      s.series = Series::A, s.rank = n + 1, s.crossed = {1, n + 1};
      s.involution = true;
      break;
    case Family::QuaternionicContact:
      need(1);
      s.series = Series::C, s.rank = n + 2, s.crossed = {2};
      break;
    case Family::Raw:
      throw UnknownStructure("raw specs have no catalog parameter");
  }
  if (s.rank > 8) throw UnknownStructure(s.name + ": rank above 8 is not supported");
  return s;
}

StructureSpec parse_structure(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UnknownStructure("expected name:parameter, got '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string tail = text.substr(colon + 1);
  for (const auto& [f, name] : family_table()) {
    if (head == name) return catalog_entry(f, parse_int(tail, text));
  }
  const bool raw = head.size() >= 2 && std::string("ABCDabcd").find(head[0]) != std::string::npos &&
                   std::all_of(head.begin() + 1, head.end(), [](unsigned char c) { return std::isdigit(c); });
  if (raw) {
    StructureSpec s;
    s.series = rootsys::parse_series(head[0]);
    s.rank = parse_int(head.substr(1), text);
    std::stringstream ss(tail);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const int node = parse_int(item, text);
      if (node < 1 || node > s.rank) throw UnknownStructure(text + ": crossed node out of range");
      s.crossed.insert(node);
    }
    if (s.crossed.empty()) throw UnknownStructure(text + ": no crossed node");
    s.name = std::string(1, rootsys::series_letter(s.series)) + std::to_string(s.rank) + ":" + tail;
    return s;
  }
  throw UnknownStructure("unknown structure '" + head + "'");
}

GradedLieAlgebra::GradedLieAlgebra(const StructureSpec& spec) : spec_(spec) { build(); }

GradedLieAlgebra::GradedLieAlgebra(Series series, int rank, NodeSet crossed) {
  spec_.series = series;
  spec_.rank = rank;
  spec_.crossed = std::move(crossed);
  std::ostringstream os;
  os << rootsys::series_letter(series) << rank << ':';
  bool first = true;
  for (int c : spec_.crossed) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  spec_.name = os.str();
  build();
}

void GradedLieAlgebra::build() {
  roots_ = std::make_shared<rootsys::RootSystem>(spec_.series, spec_.rank);
  for (int c : spec_.crossed) {
    if (c < 1 || c > spec_.rank) throw UnknownStructure(spec_.name + ": crossed node out of range");
  }
  if (spec_.crossed.empty()) throw UnknownStructure(spec_.name + ": no crossed node");
  depth_ = roots_->grade(roots_->highest_root(), spec_.crossed);
  build_basis();
  build_table();
}

void GradedLieAlgebra::build_basis() {
  const auto& rs = *roots_;
  const int n = rs.rank();
  Realization real = realization(spec_.series, n);
  matrix_size_ = real.size;
  std::optional<QMatrix> jinv;
  if (real.form.rows() > 0) jinv = exactla::inverse(real.form);

  std::map<RootCoords, SparseMatrix> positive;
  for (int a = 0; a < real.size; ++a) {
    for (int b = 0; b < real.size; ++b) {
      if (a == b) continue;
      QVector w(real.eps_dim);
      for (int i = 0; i < real.eps_dim; ++i)
        w[i] = real.position_weight[a][i] - real.position_weight[b][i];
      if (exactla::is_zero(w)) continue;
      auto coeff = exactla::solve(real.simple_roots, w);
      if (!coeff) continue;
      RootCoords r(n);
      bool pos = true;
      for (int i = 0; i < n; ++i) {
        if ((*coeff)[i].get_den() != 1) throw std::logic_error("non-integral root");
        r[i] = static_cast<int>((*coeff)[i].get_num().get_si());
        if (r[i] < 0) pos = false;
      }
      if (!pos || positive.count(r)) continue;
      QMatrix e(real.size, real.size);
      e(a, b) = 1;
      QMatrix x = e;
      if (jinv) x = e - (*jinv) * e.transpose() * real.form;
      if (x.is_zero()) continue;
      Rational lead;
      for (std::size_t p = 0; p < x.rows() * x.cols() && sgn(lead) == 0; ++p)
        lead = x(p / x.cols(), p % x.cols());
      positive[r] = sparse_from_dense(x.scaled(1 / lead));
    }
  }
  if (positive.size() != rs.positive_roots().size()) {
    throw std::logic_error(spec_.name + ": matrix realization produced the wrong root count");
  }

  struct Item {
    int grade;
    int sign_class;
    int height;
    RootCoords root;
    BasisElement elem;
  };
  std::vector<Item> items;
  auto add_root = [&](const RootCoords& r, const SparseMatrix& m, int sign) {
    BasisElement b;
    b.kind = BasisElement::Kind::Root;
    b.root = r;
    b.weight = rs.root_to_weight(r);
    b.grade = rs.grade(r, spec_.crossed);
    b.matrix = m;
    int h = std::accumulate(r.begin(), r.end(), 0);
    items.push_back({b.grade, sign, sign * h, r, std::move(b)});
  };
  for (const auto& [r, m] : positive) {
    add_root(r, m, 1);
    RootCoords neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    add_root(neg, transposed(m), -1);
  }
  // Cartan: coroot matrices [X_i, X_i^T], orthogonalized for the trace form.
  std::vector<QVector> diag;
  for (int i = 0; i < n; ++i) {
    RootCoords simple(n, 0);
    simple[i] = 1;
    const auto& x = positive.at(simple);
    SparseMatrix h = commutator(x, transposed(x));
    QVector d(real.size);
    for (const auto& e : h.entries) d[e.row] += e.value;
    for (const auto& prev : diag) {
      Rational f = exactla::dot(d, prev) / exactla::dot(prev, prev);
      for (int p = 0; p < real.size; ++p) d[p] -= f * prev[p];
    }
    diag.push_back(exactla::primitive(d));
  }
  for (int i = 0; i < n; ++i) {
    BasisElement b;
    b.kind = BasisElement::Kind::Cartan;
    b.root = RootCoords(n, 0);
    b.weight.coords.assign(n, 0);
    b.grade = 0;
    b.matrix.size = real.size;
    for (int p = 0; p < real.size; ++p)
      if (sgn(diag[i][p]) != 0) b.matrix.entries.push_back({p, p, diag[i][p]});
    items.push_back({0, 0, i, b.root, std::move(b)});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.grade, a.sign_class, a.height, a.root) <
           std::tie(b.grade, b.sign_class, b.height, b.root);
  });

  basis_.clear();
  pivot_.clear();
  cartan_indices_.clear();
  for (auto& it : items) basis_.push_back(std::move(it.elem));
  by_grade_.assign(2 * depth_ + 1, {});
  std::map<RootCoords, std::size_t> root_index;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto& b = basis_[i];
    by_grade_[b.grade + depth_].push_back(i);
    b.norm2 = 0;
    for (const auto& e : b.matrix.entries) b.norm2 += e.value * e.value;
    if (b.kind == BasisElement::Kind::Root) {
      root_index[b.root] = i;
      pivot_.push_back({b.matrix.entries.front().row, b.matrix.entries.front().col});
    } else {
      cartan_indices_.push_back(i);
      pivot_.push_back({-1, -1});
    }
  }
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto& b = basis_[i];
    if (b.kind == BasisElement::Kind::Cartan) {
      b.transpose = i;
    } else {
      RootCoords neg(b.root.size());
      for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -b.root[k];
      b.transpose = root_index.at(neg);
    }
  }

  // Grading element from alpha_j(E) over the Cartan basis.
  QMatrix sys(n, n);
  QVector rhs(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Rational v = 0;
      for (int i = 0; i < real.eps_dim; ++i)
        if (sgn(real.simple_roots(i, j)) != 0) v += real.simple_roots(i, j) * diag[k][i];
      sys(j, k) = v;
    }
    rhs[j] = spec_.crossed.count(j + 1) ? 1 : 0;
  }
  auto c = exactla::solve(sys, rhs);
  if (!c) throw std::logic_error("grading element not solvable");
  grading_element_.assign(basis_.size(), 0);
  for (int k = 0; k < n; ++k) grading_element_[cartan_indices_[k]] = (*c)[k];
}

void GradedLieAlgebra::build_table() {
  const std::size_t d = basis_.size();
  table_.assign(d * d, {});
  std::map<std::pair<int, int>, std::size_t> pivot_lookup;
  for (std::size_t i = 0; i < d; ++i)
    if (pivot_[i].first >= 0) pivot_lookup[pivot_[i]] = i;
  auto expand = [&](const SparseMatrix& m) {
    SparseVec out;
    QVector diag(matrix_size_);
    bool any_diag = false;
    for (const auto& e : m.entries) {
      if (e.row == e.col) {
        diag[e.row] = e.value;
        any_diag = true;
        continue;
      }
      auto it = pivot_lookup.find({e.row, e.col});
      if (it == pivot_lookup.end()) continue;
      out.push_back({it->second, e.value / basis_[it->second].matrix.entries.front().value});
    }
    if (any_diag) {
      for (std::size_t h : cartan_indices_) {
        Rational num = 0;
        for (const auto& e : basis_[h].matrix.entries) num += e.value * diag[e.row];
        if (sgn(num) != 0) out.push_back({h, num / basis_[h].norm2});
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      SparseVec v = expand(commutator(basis_[i].matrix, basis_[j].matrix));
      SparseVec neg = v;
      for (auto& e : neg) e.second = -e.second;
      table_[i * d + j] = std::move(v);
      table_[j * d + i] = std::move(neg);
    }
  }
}

const std::vector<std::size_t>& GradedLieAlgebra::grade_indices(int g) const {
  static const std::vector<std::size_t> empty;
  if (g < -depth_ || g > depth_) return empty;
  return by_grade_[g + depth_];
}

std::vector<std::size_t> GradedLieAlgebra::positive_indices() const {
  std::vector<std::size_t> out;
  for (int g = 1; g <= depth_; ++g)
    out.insert(out.end(), grade_indices(g).begin(), grade_indices(g).end());
  return out;
}

std::vector<std::size_t> GradedLieAlgebra::negative_indices() const {
  std::vector<std::size_t> out;
  for (int g = -depth_; g <= -1; ++g)
    out.insert(out.end(), grade_indices(g).begin(), grade_indices(g).end());
  return out;
}

std::vector<std::pair<int, std::size_t>> GradedLieAlgebra::grading_summand_dims() const {
  std::vector<std::pair<int, std::size_t>> out;
  for (int g = -depth_; g <= depth_; ++g) out.push_back({g, grade_indices(g).size()});
  return out;
}

long GradedLieAlgebra::root_vector_index(const RootCoords& signed_root) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].kind == BasisElement::Kind::Root && basis_[i].root == signed_root) return long(i);
  return -1;
}

QVector GradedLieAlgebra::bracket(const QVector& x, const QVector& y) const {
  QVector out(basis_.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (sgn(y[j]) == 0) continue;
      for (const auto& [k, c] : bracket_basis(i, j)) out[k] += x[i] * y[j] * c;
    }
  }
  return out;
}

QVector GradedLieAlgebra::coordinates(const QMatrix& m) const {
  QVector out(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& b = basis_[i];
    if (b.kind == BasisElement::Kind::Root) {
      const auto& e = b.matrix.entries.front();
      out[i] = m(e.row, e.col) / e.value;
    } else {
      Rational num = 0;
      for (const auto& e : b.matrix.entries) num += e.value * m(e.row, e.row);
      out[i] = num / b.norm2;
    }
  }
  return out;
}

QMatrix GradedLieAlgebra::to_matrix(const QVector& x) const {
  QMatrix m(matrix_size_, matrix_size_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (const auto& e : basis_[i].matrix.entries) m(e.row, e.col) += x[i] * e.value;
  }
  return m;
}

Rational GradedLieAlgebra::trace_pairing(const QVector& x, const QVector& y) const {
  QMatrix p = to_matrix(x) * to_matrix(y);
  Rational t = 0;
  for (int i = 0; i < matrix_size_; ++i) t += p(i, i);
  return t;
}

Rational GradedLieAlgebra::killing_constant() const {
  const int n = spec_.rank;
  switch (spec_.series) {
    case Series::A: return 2 * (n + 1);
    case Series::B: return 2 * n - 1;
    case Series::C: return 2 * n + 2;
    case Series::D: return 2 * n - 2;
  }
  return 0;
}

Rational GradedLieAlgebra::killing_pairing(const QVector& x, const QVector& y) const {
  return killing_constant() * trace_pairing(x, y);
}

std::vector<std::size_t> GradedLieAlgebra::levi_raising() const {
  std::vector<std::size_t> out;
  for (int j = 1; j <= spec_.rank; ++j) {
    if (spec_.crossed.count(j)) continue;
    RootCoords r(spec_.rank, 0);
    r[j - 1] = 1;
    out.push_back(static_cast<std::size_t>(root_vector_index(r)));
  }
  return out;
}

std::vector<std::size_t> GradedLieAlgebra::levi_lowering() const {
  std::vector<std::size_t> out;
  for (std::size_t i : levi_raising()) out.push_back(basis_[i].transpose);
  return out;
}

int GradedLieAlgebra::flip_node(int node) const {
  if (!spec_.involution) return node;
  return spec_.rank + 1 - node;
}

}  // namespace bggkit::liealg
