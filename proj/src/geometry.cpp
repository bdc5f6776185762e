#include "sharp/geometry.hpp"

#include <random>

namespace sharp::geometry {

SymplecticSpace::SymplecticSpace(unsigned n, gf::Field field) : n_(n), field_(field) {
  if (n < 1) throw Error("symplectic space needs n >= 1");
  const std::uint64_t total_bits = std::uint64_t{field_.degree()} * 2 * n;
  if (total_bits > 20) throw Error("symplectic space too large for explicit enumeration");
  vector_count_ = (std::size_t{1} << total_bits) - 1;
  point_of_vector_.resize(vector_count_);

  for (std::size_t index = 0; index < vector_count_; ++index) {
    Vector x = vector(index);
    std::size_t lead = 0;
    while (x[lead] == 0) ++lead;
    if (x[lead] == 1) {
      point_of_vector_[index] = static_cast<std::uint32_t>(representatives_.size());
      representatives_.push_back(index);
    }
  }
  for (std::size_t index = 0; index < vector_count_; ++index) {
    Vector x = vector(index);
    std::size_t lead = 0;
    while (x[lead] == 0) ++lead;
    if (x[lead] == 1) continue;
    const gf::Element scale = field_.inv(x[lead]);
    for (auto& c : x) c = field_.mul(c, scale);
    point_of_vector_[index] = point_of_vector_[vector_index(x)];
  }
}

Vector SymplecticSpace::vector(std::size_t index) const {
  const std::size_t code = index + 1;
  const unsigned m = field_.degree();
  Vector x(dimension());
  for (unsigned i = 0; i < dimension(); ++i)
    x[i] = static_cast<gf::Element>((code >> (m * i)) & (field_.order() - 1));
  return x;
}

std::size_t SymplecticSpace::vector_index(const Vector& v) const {
  if (v.size() != dimension()) throw Error("vector has the wrong dimension");
  std::size_t code = 0;
  for (unsigned i = dimension(); i-- > 0;) code = (code << field_.degree()) | v[i];
  if (code == 0) throw Error("the zero vector is not a point");
  return code - 1;
}

gf::Element SymplecticSpace::form(const Vector& x, const Vector& y) const {
  gf::Element sum = 0;
  for (unsigned i = 0; i < n_; ++i) {
    sum ^= field_.mul(x[2 * i], y[2 * i + 1]);
    sum ^= field_.mul(x[2 * i + 1], y[2 * i]);
  }
  return sum;
}

// ---------------------------------------------------------------------------

gf::Element quadric_value(const SymplecticSpace& space, gf::Element delta, const Vector& x) {
  const auto& f = space.field();
  const unsigned n = space.half_dimension();
  gf::Element value = 0;
  for (unsigned i = 0; i + 1 < n; ++i) value ^= f.mul(x[2 * i], x[2 * i + 1]);
  const gf::Element a = x[2 * n - 2], b = x[2 * n - 1];
  value ^= f.square(a) ^ f.mul(a, b) ^ f.mul(delta, f.square(b));
  return value;
}

QuadricData elliptic_quadric(const SymplecticSpace& space) {
  if (space.half_dimension() < 2) throw Error("elliptic quadric needs n >= 2");
  const auto& f = space.field();
  QuadricData data;
  gf::Element delta = 0;
  while (delta < f.order() && f.trace(delta) != 1) ++delta;
  if (delta == f.order()) throw Error("no element of trace 1");  // impossible for m >= 1
  data.delta = delta;
  data.projective = make_set(space.point_count());
  for (std::size_t p = 0; p < space.point_count(); ++p)
    if (quadric_value(space, delta, space.representative(p)) == 0) data.projective.set(p);
  data.vectors = vector_lift(space, data.projective);
  return data;
}

std::uint64_t elliptic_quadric_size(unsigned n, std::uint64_t q) {
  std::uint64_t numerator = 1, power = 1;
  for (unsigned i = 0; i < 2 * n - 1; ++i) numerator *= q;
  for (unsigned i = 0; i + 1 < n; ++i) power *= q;
  return (numerator - 1) / (q - 1) - power;
}

bool polarization_holds(const SymplecticSpace& space, const QuadricData& quadric,
                        std::size_t samples, std::uint64_t seed) {
  const auto& f = space.field();
  const std::size_t count = space.vector_count() + 1;  // include zero
  auto value_of = [&](std::size_t code) {
    return code == 0 ? Vector(space.dimension(), 0) : space.vector(code - 1);
  };
  auto check = [&](std::size_t a, std::size_t b) {
    Vector x = value_of(a), y = value_of(b), s(space.dimension());
    for (unsigned i = 0; i < space.dimension(); ++i) s[i] = f.add(x[i], y[i]);
    auto lhs = quadric_value(space, quadric.delta, s) ^ quadric_value(space, quadric.delta, x) ^
               quadric_value(space, quadric.delta, y);
    return lhs == space.form(x, y);
  };
  if (count <= 2048) {
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = 0; b < count; ++b)
        if (!check(a, b)) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  for (std::size_t i = 0; i < samples; ++i)
    if (!check(pick(rng), pick(rng))) return false;
  return true;
}

// ---------------------------------------------------------------------------

ProjectiveLine line_through(const SymplecticSpace& space, std::size_t u, std::size_t v) {
  if (u == v) throw Error("a line needs two distinct points");
  const auto& f = space.field();
  ProjectiveLine line;
  line.u = u;
  line.v = v;
  line.points = make_set(space.point_count());
  line.points.set(u);
  const Vector x = space.representative(u), y = space.representative(v);
  for (gf::Element c = 0; c < f.order(); ++c) {
    Vector z(space.dimension());
    for (unsigned i = 0; i < space.dimension(); ++i) z[i] = f.add(y[i], f.mul(c, x[i]));
    line.points.set(space.point_of(space.vector_index(z)));
  }
  return line;
}

std::vector<ProjectiveLine> enumerate_lines(const SymplecticSpace& space) {
  std::vector<ProjectiveLine> lines;
  const std::size_t points = space.point_count();
  for (std::size_t u = 0; u < points; ++u) {
    for (std::size_t v = u + 1; v < points; ++v) {
      ProjectiveLine line = line_through(space, u, v);
      // keep the line only when u, v are its two least points
      auto first = line.points.find_first();
      if (first != u || line.points.find_next(first) != v) continue;
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

bool is_nonsingular_line(const SymplecticSpace& space, const ProjectiveLine& line) {
  return space.form(space.representative(line.u), space.representative(line.v)) != 0;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Map>
Permutation permutation_of(const SymplecticSpace& space, Action action, Map&& map) {
  std::vector<Point> images(space.domain_size(action));
  for (std::size_t i = 0; i < images.size(); ++i) {
    Vector x = action == Action::projective ? space.representative(i) : space.vector(i);
    std::size_t image = space.vector_index(map(x));
    images[i] = static_cast<Point>(action == Action::projective ? space.point_of(image) : image);
  }
  return Permutation(std::move(images));
}

}  // namespace

GroupSpec symplectic_generators(const SymplecticSpace& space, Action action) {
  if (space.domain_size(action) > 65535) throw Error("symplectic action exceeds supported degree");
  const auto& f = space.field();
  const unsigned d = space.dimension();
  std::vector<Vector> directions;
  for (unsigned i = 0; i < d; ++i) {
    Vector e(d, 0);
    e[i] = 1;
    directions.push_back(e);
  }
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = i + 1; j < d; ++j) {
      Vector e(d, 0);
      e[i] = e[j] = 1;
      directions.push_back(e);
    }

  GroupSpec spec;
  spec.degree = space.domain_size(action);
  spec.name = "Sp(" + std::to_string(d) + "," + std::to_string(space.q()) + ")" +
              (action == Action::projective ? " on points" : " on vectors");
  spec.expected_order = symplectic_group_order(space.half_dimension(), space.q());
  for (const auto& v : directions) {
    for (unsigned k = 0; k < f.degree(); ++k) {
      const gf::Element scale = gf::Element{1} << k;
      auto transvection = [&](const Vector& x) {
        const gf::Element c = f.mul(scale, space.form(x, v));
        Vector y = x;
        for (unsigned i = 0; i < d; ++i) y[i] = f.add(y[i], f.mul(c, v[i]));
        return y;
      };
      // form preservation on the standard basis determines it on all vectors
      for (unsigned a = 0; a < d; ++a)
        for (unsigned b = 0; b < d; ++b) {
          Vector x(d, 0), y(d, 0);
          x[a] = 1;
          y[b] = 1;
          if (space.form(transvection(x), transvection(y)) != space.form(x, y))
            throw Error("transvection does not preserve the symplectic form");
        }
      spec.generators.push_back(permutation_of(space, action, transvection));
    }
  }
  return spec;
}

Permutation frobenius_map(const SymplecticSpace& space, Action action) {
  const auto& f = space.field();
  return permutation_of(space, action, [&](const Vector& x) {
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f.square(x[i]);
    return y;
  });
}

std::uint64_t symplectic_group_order(unsigned n, std::uint64_t q) {
  unsigned __int128 order = 1;
  constexpr auto limit = static_cast<unsigned __int128>(~std::uint64_t{0});
  auto times = [&](unsigned __int128 factor) {
    order *= factor;
    if (order > limit) throw Error("symplectic group order overflows 64 bits");
  };
  for (unsigned i = 0; i < n * n; ++i) times(q);
  for (unsigned i = 1; i <= n; ++i) {
    unsigned __int128 power = 1;
    for (unsigned k = 0; k < 2 * i; ++k) power *= q;
    times(power - 1);
  }
  return static_cast<std::uint64_t>(order);
}

PointSet vector_lift(const SymplecticSpace& space, const PointSet& points) {
  if (points.size() != space.point_count()) throw Error("vector_lift: domain mismatch");
  PointSet lifted = make_set(space.vector_count());
  for (std::size_t i = 0; i < space.vector_count(); ++i)
    if (points.test(space.point_of(i))) lifted.set(i);
  return lifted;
}

}  // namespace sharp::geometry
