#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "paley/bitset.hpp"
#include "paley/ff_core.hpp"

namespace paley {

using ComplexMatrix = Eigen::MatrixXcd;

// Inner product on C^M, linear in the first argument: <x, y> = sum x_m conj(y_m).
ComplexValue inner(const Eigen::Ref<const Eigen::VectorXcd>& x,
                   const Eigen::Ref<const Eigen::VectorXcd>& y);

/// The (p+1)/2 x (p+1) Paley measurement matrix.
///
/// Columns are 0-based. Column j < p is labelled by the field element
/// labels()[j] (labels()[0] == 0); column p is the spike column
/// ((i)^r, 0, ..., 0). Row 0 holds 1/sqrt(p) in every field column and
/// row k >= 1 holds sqrt(2/p) psi(b_k a_j) with b_k ascending over Q_p.
class PaleyMatrix {
 public:
  PaleyMatrix(PrimeField field, std::vector<Residue> labels, ComplexMatrix entries);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(entries_.cols()); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  std::span<const Residue> labels() const noexcept { return labels_; }
  std::size_t spike_column() const noexcept { return field_.p(); }

  // Column index carrying field element x.
  std::size_t column_of(Residue x) const;

 private:
  PrimeField field_;
  std::vector<Residue> labels_;
  std::vector<std::size_t> column_of_;
  ComplexMatrix entries_;
};

PaleyMatrix build_paley_matrix(const PrimeField& field);

// Custom labelling a_1..a_p: a permutation of F_p with labels[0] == 0.
PaleyMatrix build_paley_matrix(const PrimeField& field, std::vector<Residue> labels);

// Closed form of <phi_i, phi_j> for the canonical labelling (0-based columns).
ComplexValue gram_inner_product(const PrimeField& field, std::size_t i, std::size_t j);

// Same, honouring the matrix's own labelling.
ComplexValue gram_inner_product(const PaleyMatrix& matrix, std::size_t i, std::size_t j);

/// Paley graph G_p (p = 1 mod 4): x ~ y iff chi(x - y) = 1.
class Graph {
 public:
  explicit Graph(std::size_t n) : adjacency_(n, Bitset(n)) {}

  std::size_t order() const noexcept { return adjacency_.size(); }
  const Bitset& neighbours(std::size_t v) const noexcept { return adjacency_[v]; }
  bool adjacent(std::size_t x, std::size_t y) const noexcept { return adjacency_[x].test(y); }
  void add_edge(std::size_t x, std::size_t y);
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  // Nonzero only for graphs built by build_paley_graph; enables the
  // affine-automorphism reductions of the extremal searches.
  std::uint64_t paley_prime() const noexcept { return paley_prime_; }
  void set_paley_prime(std::uint64_t p) noexcept { paley_prime_ = p; }

 private:
  std::vector<Bitset> adjacency_;
  std::uint64_t paley_prime_ = 0;
};

/// Paley tournament T_p (p = 3 mod 4): arc x -> y iff chi(x - y) = 1.
class Tournament {
 public:
  explicit Tournament(std::size_t n) : out_(n, Bitset(n)), in_(n, Bitset(n)) {}

  std::size_t order() const noexcept { return out_.size(); }
  const Bitset& out_neighbours(std::size_t v) const noexcept { return out_[v]; }
  const Bitset& in_neighbours(std::size_t v) const noexcept { return in_[v]; }
  bool arc(std::size_t x, std::size_t y) const noexcept { return out_[x].test(y); }
  void add_arc(std::size_t x, std::size_t y);
  std::size_t arc_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> arcs() const;

  std::uint64_t paley_prime() const noexcept { return paley_prime_; }
  void set_paley_prime(std::uint64_t p) noexcept { paley_prime_ = p; }

 private:
  std::vector<Bitset> out_;
  std::vector<Bitset> in_;
  std::uint64_t paley_prime_ = 0;
};

Graph build_paley_graph(const PrimeField& field);
Tournament build_paley_tournament(const PrimeField& field);

// Exporters used by the `construct` command. The matrix CSV has one line per
// matrix row holding re,im for each column in order.
void write_matrix_csv(std::ostream& os, const PaleyMatrix& matrix);
void write_matrix_header_json(std::ostream& os, const PaleyMatrix& matrix);
void write_edges_json(std::ostream& os, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace paley
