#include "paley/paley.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "paley/errors.hpp"

namespace paley {

ComplexValue inner(const Eigen::Ref<const Eigen::VectorXcd>& x,
                   const Eigen::Ref<const Eigen::VectorXcd>& y) {
  // Eigen's dot() conjugates its first argument, so swap.
  return y.dot(x);
}

PaleyMatrix::PaleyMatrix(PrimeField field, std::vector<Residue> labels, ComplexMatrix entries)
    : field_(std::move(field)),
      labels_(std::move(labels)),
      column_of_(field_.p(), 0),
      entries_(std::move(entries)) {
  for (std::size_t j = 0; j < labels_.size(); ++j) column_of_[labels_[j]] = j;
}

std::size_t PaleyMatrix::column_of(Residue x) const {
  if (x >= field_.p()) throw input_error("column_of: residue out of range");
  return column_of_[x];
}

PaleyMatrix build_paley_matrix(const PrimeField& field) {
  std::vector<Residue> labels(field.p());
  for (Residue x = 0; x < field.p(); ++x) labels[x] = x;
  return build_paley_matrix(field, std::move(labels));
}

PaleyMatrix build_paley_matrix(const PrimeField& field, std::vector<Residue> labels) {
  const std::uint64_t p = field.p();
  if (labels.size() != p || labels.front() != 0) {
    throw input_error("build_paley_matrix: labelling must list all of F_p with a_1 = 0");
  }
  std::vector<bool> seen(p, false);
  for (Residue x : labels) {
    if (x >= p || seen[x]) throw input_error("build_paley_matrix: labelling is not a permutation");
    seen[x] = true;
  }

  const auto rows = static_cast<Eigen::Index>((p + 1) / 2);
  const auto cols = static_cast<Eigen::Index>(p + 1);
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  const double top = 1.0 / std::sqrt(static_cast<double>(p));
  const double body = std::sqrt(2.0 / static_cast<double>(p));
  const auto residues = quadratic_residues(field);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(p); ++j) {
    m(0, j) = top;
    const Residue a = labels[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < residues.size(); ++k) {
      m(static_cast<Eigen::Index>(k) + 1, j) = body * additive_character(field, field.mul(residues[k], a));
    }
  }
  m(0, cols - 1) = i_power(field.r());
  return PaleyMatrix(field, std::move(labels), std::move(m));
}

namespace {

ComplexValue gram_closed_form(const PrimeField& field, std::size_t i, std::size_t j, Residue ai,
                              Residue aj) {
  const std::uint64_t p = field.p();
  if (i > p || j > p) throw input_error("gram_inner_product: column index out of range");
  if (i == j) return {1.0, 0.0};
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  // <phi_i, spike> = (1/sqrt p) conj(i^r); <spike, phi_j> = i^r / sqrt p.
  if (j == p) return scale * i_power(-field.r());
  if (i == p) return scale * i_power(field.r());
  return scale * i_power(field.r()) * static_cast<double>(field.chi_diff(ai, aj));
}

}  // namespace

ComplexValue gram_inner_product(const PrimeField& field, std::size_t i, std::size_t j) {
  const std::uint64_t p = field.p();
  return gram_closed_form(field, i, j, i < p ? i : 0, j < p ? j : 0);
}

ComplexValue gram_inner_product(const PaleyMatrix& matrix, std::size_t i, std::size_t j) {
  const std::uint64_t p = matrix.field().p();
  auto label = [&](std::size_t c) { return c < p ? matrix.labels()[c] : Residue{0}; };
  if (i > p || j > p) throw input_error("gram_inner_product: column index out of range");
  return gram_closed_form(matrix.field(), i, j, label(i), label(j));
}

void Graph::add_edge(std::size_t x, std::size_t y) {
  adjacency_[x].set(y);
  adjacency_[y].set(x);
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : adjacency_) total += row.count();
  return total / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < order(); ++x) {
    adjacency_[x].for_each([&](std::size_t y) {
      if (x < y) out.emplace_back(x, y);
    });
  }
  return out;
}

void Tournament::add_arc(std::size_t x, std::size_t y) {
  out_[x].set(y);
  in_[y].set(x);
}

std::size_t Tournament::arc_count() const {
  std::size_t total = 0;
  for (const auto& row : out_) total += row.count();
  return total;
}

std::vector<std::pair<std::size_t, std::size_t>> Tournament::arcs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < order(); ++x) {
    out_[x].for_each([&](std::size_t y) { out.emplace_back(x, y); });
  }
  return out;
}

Graph build_paley_graph(const PrimeField& field) {
  if (field.r() != 0) {
    throw construction_error("build_paley_graph: p = " + std::to_string(field.p()) +
                             " is 3 mod 4, adjacency would not be symmetric");
  }
  const auto p = static_cast<std::size_t>(field.p());
  Graph g(p);
  for (std::size_t x = 0; x < p; ++x) {
    for (std::size_t y = x + 1; y < p; ++y) {
      if (field.chi_diff(x, y) == 1) g.add_edge(x, y);
    }
  }
  g.set_paley_prime(field.p());
  return g;
}

Tournament build_paley_tournament(const PrimeField& field) {
  if (field.r() != 1) {
    throw construction_error("build_paley_tournament: p = " + std::to_string(field.p()) +
                             " is 1 mod 4, arcs would not be antisymmetric");
  }
  const auto p = static_cast<std::size_t>(field.p());
  Tournament t(p);
  for (std::size_t x = 0; x < p; ++x) {
    for (std::size_t y = 0; y < p; ++y) {
      if (x != y && field.chi_diff(x, y) == 1) t.add_arc(x, y);
    }
  }
  t.set_paley_prime(field.p());
  return t;
}

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_matrix_csv(std::ostream& os, const PaleyMatrix& matrix) {
  const auto& m = matrix.entries();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << format17(m(i, j).real()) << ',' << format17(m(i, j).imag());
    }
    os << '\n';
  }
}

void write_matrix_header_json(std::ostream& os, const PaleyMatrix& matrix) {
  nlohmann::ordered_json header;
  header["p"] = matrix.field().p();
  header["r"] = matrix.field().r();
  header["rows"] = matrix.rows();
  header["cols"] = matrix.cols();
  header["labeling"] = {
      {"a", std::vector<Residue>(matrix.labels().begin(), matrix.labels().end())},
      {"b", quadratic_residues(matrix.field())},
      {"last_column", "spike"},
  };
  os << header.dump(2) << '\n';
}

void write_edges_json(std::ostream& os,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [x, y] : edges) out.push_back({x, y});
  os << out.dump() << '\n';
}

}  // namespace paley
