#pragma once

#include "sharp/common.hpp"
#include "sharp/gf.hpp"
#include "sharp/perm.hpp"

#include <cstdint>
#include <vector>

namespace sharp::geometry {

using Vector = std::vector<gf::Element>;

/// The two natural domains of the symplectic group: nonzero vectors of
/// GF(q)^(2n), or points of PG(2n-1, q).
enum class Action { projective, vector };

/// GF(q)^(2n) with the alternating form sum_i (x_{2i} y_{2i+1} + x_{2i+1} y_{2i}).
///
/// Vectors are indexed by their base-q digit encoding minus one (coordinate i
/// is digit i), so the zero vector is excluded. Projective points are the
/// vectors whose first nonzero coordinate is 1, indexed in increasing order of
/// their vector index.
class SymplecticSpace {
 public:
  SymplecticSpace(unsigned n, gf::Field field);

  unsigned half_dimension() const { return n_; }
  unsigned dimension() const { return 2 * n_; }
  const gf::Field& field() const { return field_; }
  std::uint32_t q() const { return field_.order(); }

  std::size_t vector_count() const { return vector_count_; }
  std::size_t point_count() const { return representatives_.size(); }
  std::size_t domain_size(Action action) const {
    return action == Action::projective ? point_count() : vector_count();
  }

  Vector vector(std::size_t index) const;
  /// Throws Error for the zero vector.
  std::size_t vector_index(const Vector& v) const;
  /// Natural map from nonzero vectors onto projective points.
  std::size_t point_of(std::size_t vector_index) const { return point_of_vector_[vector_index]; }
  Vector representative(std::size_t point) const { return vector(representatives_[point]); }

  gf::Element form(const Vector& x, const Vector& y) const;

 private:
  unsigned n_;
  gf::Field field_;
  std::size_t vector_count_;
  std::vector<std::uint32_t> point_of_vector_;
  std::vector<std::size_t> representatives_;
};

/// An elliptic quadric polarizing to the symplectic form:
/// Q(x) = x0 x1 + ... + x_{2n-4} x_{2n-3} + x_{2n-2}^2 + x_{2n-2} x_{2n-1} + delta x_{2n-1}^2
/// with Tr(delta) = 1.
struct QuadricData {
  gf::Element delta = 0;
  PointSet projective;  // E, the zero set in PG(2n-1, q)
  PointSet vectors;     // E' = preimage of E among nonzero vectors
};

gf::Element quadric_value(const SymplecticSpace& space, gf::Element delta, const Vector& x);
QuadricData elliptic_quadric(const SymplecticSpace& space);
/// (q^(2n-1) - 1)/(q - 1) - q^(n-1)
std::uint64_t elliptic_quadric_size(unsigned n, std::uint64_t q);

/// Q(x+y) + Q(x) + Q(y) == <x, y>; exhaustive when the space has at most 2^11
/// vectors, otherwise on `samples` seeded random pairs.
bool polarization_holds(const SymplecticSpace& space, const QuadricData& quadric,
                        std::size_t samples = 20000, std::uint64_t seed = 0);

struct ProjectiveLine {
  PointSet points;
  std::size_t u = 0;  // two spanning points
  std::size_t v = 0;
};

/// All lines of PG(2n-1, q), each once, ordered by their two least points.
std::vector<ProjectiveLine> enumerate_lines(const SymplecticSpace& space);
ProjectiveLine line_through(const SymplecticSpace& space, std::size_t u, std::size_t v);
bool is_nonsingular_line(const SymplecticSpace& space, const ProjectiveLine& line);

/// Transvections x -> x + c <x, v> v for v in {e_i} and {e_i + e_j}, with c
/// running over the polynomial basis 1, w, ..., w^(m-1). Each generator is
/// checked to preserve the form.
GroupSpec symplectic_generators(const SymplecticSpace& space, Action action);
/// Coordinatewise squaring.
Permutation frobenius_map(const SymplecticSpace& space, Action action);

/// |Sp(2n, q)| = q^(n^2) prod_{i=1..n} (q^(2i) - 1). Throws on overflow.
std::uint64_t symplectic_group_order(unsigned n, std::uint64_t q);

/// Preimage of a set of projective points among nonzero vectors.
PointSet vector_lift(const SymplecticSpace& space, const PointSet& points);

}  // namespace sharp::geometry
