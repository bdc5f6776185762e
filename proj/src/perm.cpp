#include "sharp/perm.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace sharp {

namespace {

std::size_t hash_images(std::span<const Point> images) {
  return boost::hash_range(images.begin(), images.end());
}

}  // namespace

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw Error("permutation images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (const auto& cycle : cycles) {
    std::vector<Point> c(cycle);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree) throw Error("cycle point out of range");
      images[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<Point>(x);
  Permutation result;
  result.images_ = std::move(inv);
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    out += '(';
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      if (y != x) out += ' ';
      out += std::to_string(y);
      seen[y] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw Error("compose: degree mismatch");
  std::vector<Point> images(a.degree());
  for (std::size_t x = 0; x < images.size(); ++x) images[x] = b(a(static_cast<Point>(x)));
  return Permutation(std::move(images));
}

std::size_t inversions(std::span<const Point> images) {
  std::size_t count = 0;
  for (std::size_t x = 0; x < images.size(); ++x)
    for (std::size_t y = x + 1; y < images.size(); ++y)
      if (images[x] > images[y]) ++count;
  return count;
}

Parity parity(const Permutation& g) {
  return inversions(g) % 2 == 0 ? Parity::even : Parity::odd;
}

Parity cycle_parity(const Permutation& g) {
  std::vector<bool> seen(g.degree(), false);
  std::size_t cycles = 0;
  for (std::size_t x = 0; x < g.degree(); ++x) {
    if (seen[x]) continue;
    ++cycles;
    for (std::size_t y = x; !seen[y]; y = g(static_cast<Point>(y))) seen[y] = true;
  }
  return (g.degree() - cycles) % 2 == 0 ? Parity::even : Parity::odd;
}

bool is_fixed_point_free(std::span<const Point> images) {
  for (std::size_t x = 0; x < images.size(); ++x)
    if (images[x] == x) return false;
  return true;
}

void GroupSpec::validate() const {
  if (generators.empty()) throw Error("group '" + name + "' has no generators");
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw Error("group '" + name + "': generator degree " + std::to_string(g.degree()) +
                  " differs from declared degree " + std::to_string(degree));
}

// ---------------------------------------------------------------------------
// GroupEnumeration

GroupEnumeration::GroupEnumeration(std::size_t degree, const std::vector<Permutation>& elements)
    : degree_(degree) {
  data_.reserve(degree * elements.size());
  for (const auto& g : elements) {
    if (g.degree() != degree) throw Error("enumeration: element degree mismatch");
    if (!try_append(g.images())) throw Error("enumeration: duplicate element");
  }
}

bool GroupEnumeration::try_append(std::span<const Point> images) {
  if (index_of(images)) return false;
  data_.insert(data_.end(), images.begin(), images.end());
  index_.emplace(hash_images(images), static_cast<std::uint32_t>(order_));
  ++order_;
  return true;
}

Permutation GroupEnumeration::element(std::size_t i) const {
  auto im = images(i);
  return Permutation(std::vector<Point>(im.begin(), im.end()));
}

std::optional<std::size_t> GroupEnumeration::index_of(std::span<const Point> images) const {
  if (images.size() != degree_) return std::nullopt;
  auto [lo, hi] = index_.equal_range(hash_images(images));
  for (auto it = lo; it != hi; ++it) {
    auto candidate = this->images(it->second);
    if (std::equal(candidate.begin(), candidate.end(), images.begin())) return it->second;
  }
  return std::nullopt;
}

std::size_t GroupEnumeration::multiply(std::size_t i, std::size_t j) const {
  auto a = images(i);
  auto b = images(j);
  std::vector<Point> prod(degree_);
  for (std::size_t x = 0; x < degree_; ++x) prod[x] = b[a[x]];
  auto k = index_of(prod);
  if (!k) throw Error("enumeration is not closed under multiplication");
  return *k;
}

std::size_t GroupEnumeration::inverse(std::size_t i) const {
  auto a = images(i);
  std::vector<Point> inv(degree_);
  for (std::size_t x = 0; x < degree_; ++x) inv[a[x]] = static_cast<Point>(x);
  auto k = index_of(inv);
  if (!k) throw Error("enumeration is not closed under inverses");
  return *k;
}

bool GroupEnumeration::is_closed() const {
  if (order_ == 0) return false;
  if (!index_of(Permutation::identity(degree_).images())) return false;
  std::vector<Point> buf(degree_);
  for (std::size_t i = 0; i < order_; ++i) {
    auto a = images(i);
    for (std::size_t x = 0; x < degree_; ++x) buf[a[x]] = static_cast<Point>(x);
    if (!index_of(buf)) return false;
    for (std::size_t j = 0; j < order_; ++j) {
      auto b = images(j);
      for (std::size_t x = 0; x < degree_; ++x) buf[x] = b[a[x]];
      if (!index_of(buf)) return false;
    }
  }
  return true;
}

std::optional<GroupEnumeration> enumerate(const GroupSpec& spec, std::size_t cap) {
  spec.validate();
  if (cap < 1) throw Error("enumeration cap must be at least 1");
  GroupEnumeration group;
  group.degree_ = spec.degree;
  group.try_append(Permutation::identity(spec.degree).images());
  std::vector<Point> product(spec.degree);
  for (std::size_t next = 0; next < group.order_; ++next) {
    for (const auto& s : spec.generators) {
      auto a = group.images(next);
      for (std::size_t x = 0; x < spec.degree; ++x) product[x] = s(a[x]);
      if (group.index_of(product)) continue;
      if (group.order_ >= cap) return std::nullopt;
      group.try_append(product);
    }
  }
  return group;
}

// ---------------------------------------------------------------------------
// Induced actions

ArrangementAction::ArrangementAction(std::size_t base_degree, std::size_t t)
    : n_(base_degree), t_(t) {
  if (t < 1 || t > base_degree) throw Error("arrangement arity must satisfy 1 <= t <= n");
  std::size_t codes = 1;
  for (std::size_t k = 0; k < t; ++k) {
    codes *= n_;
    if (codes > (std::size_t{1} << 26)) throw Error("arrangement action too large");
  }
  code_to_cell_.assign(codes, -1);

  std::vector<Point> tuple(t);
  std::vector<bool> used(n_, false);
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == t_) {
      code_to_cell_[code(tuple)] = static_cast<std::int32_t>(cell_count());
      cells_.insert(cells_.end(), tuple.begin(), tuple.end());
      return;
    }
    for (std::size_t x = 0; x < n_; ++x) {
      if (used[x]) continue;
      used[x] = true;
      tuple[depth] = static_cast<Point>(x);
      self(self, depth + 1);
      used[x] = false;
    }
  };
  recurse(recurse, 0);
  if (cell_count() > 65535) throw Error("arrangement action exceeds the supported degree");
}

std::size_t ArrangementAction::code(std::span<const Point> tuple) const {
  std::size_t c = 0;
  for (std::size_t k = t_; k-- > 0;) c = c * n_ + tuple[k];
  return c;
}

std::size_t ArrangementAction::index_of(std::span<const Point> tuple) const {
  if (tuple.size() != t_) throw Error("arrangement arity mismatch");
  for (Point x : tuple)
    if (x >= n_) throw Error("arrangement point out of range");
  auto cell = code_to_cell_[code(tuple)];
  if (cell < 0) throw Error("arrangement has repeated points");
  return static_cast<std::size_t>(cell);
}

Permutation ArrangementAction::induce(std::span<const Point> images) const {
  if (images.size() != n_) throw Error("induce: degree mismatch");
  std::vector<Point> result(cell_count());
  std::vector<Point> mapped(t_);
  for (std::size_t i = 0; i < cell_count(); ++i) {
    auto c = cell(i);
    for (std::size_t k = 0; k < t_; ++k) mapped[k] = images[c[k]];
    result[i] = static_cast<Point>(code_to_cell_[code(mapped)]);
  }
  return Permutation(std::move(result));
}

std::pair<ArrangementAction, GroupSpec> induced_action(const GroupSpec& spec, std::size_t t) {
  spec.validate();
  ArrangementAction action(spec.degree, t);
  GroupSpec induced;
  induced.degree = action.cell_count();
  induced.name = spec.name + "^(" + std::to_string(t) + ")";
  induced.expected_order = spec.expected_order;
  for (const auto& g : spec.generators) induced.generators.push_back(action.induce(g));
  return {std::move(action), std::move(induced)};
}

std::pair<ArrangementAction, GroupEnumeration> induced_action(const GroupEnumeration& group,
                                                              std::size_t t) {
  ArrangementAction action(group.degree(), t);
  std::vector<Permutation> elements;
  elements.reserve(group.order());
  for (std::size_t i = 0; i < group.order(); ++i) elements.push_back(action.induce(group.images(i)));
  GroupEnumeration induced(action.cell_count(), elements);
  return {std::move(action), std::move(induced)};
}

// ---------------------------------------------------------------------------
// Orbits

PairOrbits orbits_on_pairs(const GroupEnumeration& group) {
  const std::size_t n = group.degree();
  PairOrbits result;
  result.n = n;
  constexpr auto unassigned = static_cast<std::uint32_t>(-1);
  result.orbit_of.assign(n * n, unassigned);
  for (std::size_t pair = 0; pair < n * n; ++pair) {
    if (result.orbit_of[pair] != unassigned) continue;
    const auto id = static_cast<std::uint32_t>(result.sizes.size());
    const std::size_t a = pair / n, b = pair % n;
    std::size_t size = 0;
    for (std::size_t h = 0; h < group.order(); ++h) {
      auto im = group.images(h);
      std::size_t image = std::size_t{im[a]} * n + im[b];
      if (result.orbit_of[image] == unassigned) {
        result.orbit_of[image] = id;
        ++size;
      }
    }
    result.sizes.push_back(size);
    result.representatives.push_back(pair);
  }
  return result;
}

ConjugationClasses conjugation_reps(const GroupEnumeration& group,
                                    const GroupEnumeration& subgroup) {
  if (group.degree() != subgroup.degree()) throw Error("conjugation_reps: degree mismatch");
  const std::size_t n = group.degree();
  std::vector<std::vector<Point>> h_inverse;
  std::vector<std::span<const Point>> h_images;
  for (std::size_t h = 0; h < subgroup.order(); ++h) {
    if (!group.index_of(subgroup.images(h))) throw Error("subgroup is not contained in the group");
    auto im = subgroup.images(h);
    std::vector<Point> inv(n);
    for (std::size_t x = 0; x < n; ++x) inv[im[x]] = static_cast<Point>(x);
    h_inverse.push_back(std::move(inv));
    h_images.push_back(im);
  }

  ConjugationClasses result;
  constexpr auto unassigned = static_cast<std::uint32_t>(-1);
  result.class_of.assign(group.order(), unassigned);
  std::vector<Point> conj(n);
  for (std::size_t g = 0; g < group.order(); ++g) {
    if (result.class_of[g] != unassigned) continue;
    const auto id = static_cast<std::uint32_t>(result.representatives.size());
    auto gi = group.images(g);
    std::size_t size = 0;
    for (std::size_t h = 0; h < subgroup.order(); ++h) {
      // x^(h^-1 g h) = ((x^h^-1)^g)^h
      for (std::size_t x = 0; x < n; ++x) conj[x] = h_images[h][gi[h_inverse[h][x]]];
      auto k = *group.index_of(conj);
      if (result.class_of[k] == unassigned) {
        result.class_of[k] = id;
        ++size;
      }
    }
    result.representatives.push_back(g);
    result.sizes.push_back(size);
  }
  return result;
}

GroupEnumeration generated_subgroup(std::size_t degree, const std::vector<Permutation>& generators) {
  GroupSpec spec{degree, generators, "subgroup", std::nullopt};
  if (spec.generators.empty()) spec.generators.push_back(Permutation::identity(degree));
  auto group = enumerate(spec);
  if (!group) throw Error("generated subgroup exceeds the enumeration cap");
  return std::move(*group);
}

namespace {

Permutation power(const Permutation& g, std::uint64_t e) {
  Permutation result = Permutation::identity(g.degree());
  Permutation base = g;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::uint64_t element_order(const Permutation& g) {
  std::uint64_t order = 1;
  Permutation x = g;
  while (!x.is_identity()) {
    x = x * g;
    ++order;
  }
  return order;
}

bool is_power_of(std::uint64_t value, std::uint64_t p) {
  while (value % p == 0) value /= p;
  return value == 1;
}

}  // namespace

std::optional<GroupSpec> find_p_subgroup(const GroupEnumeration& group, std::uint64_t p,
                                         std::uint64_t target, std::uint64_t seed,
                                         std::size_t attempts) {
  if (!is_power_of(target, p)) throw Error("find_p_subgroup: target is not a power of p");
  GroupSpec current{group.degree(), {Permutation::identity(group.degree())}, "p-subgroup",
                    std::uint64_t{1}};
  if (target == 1) return current;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, group.order() - 1);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    Permutation g = group.element(pick(rng));
    std::uint64_t order = element_order(g);
    std::uint64_t coprime = order;
    while (coprime % p == 0) coprime /= p;
    Permutation h = power(g, coprime);
    if (h.is_identity()) continue;
    GroupSpec candidate = current;
    candidate.generators.push_back(h);
    auto closure = enumerate(candidate, target);
    if (!closure || !is_power_of(closure->order(), p)) continue;
    if (closure->order() <= *current.expected_order) continue;
    candidate.expected_order = closure->order();
    current = std::move(candidate);
    if (closure->order() == target) {
      current.generators.erase(current.generators.begin());
      return current;
    }
  }
  return std::nullopt;
}

GroupSpec symmetric_group(std::size_t n) {
  GroupSpec spec{n, {}, "S" + std::to_string(n), std::nullopt};
  if (n < 2) {
    spec.generators.push_back(Permutation::identity(n));
    return spec;
  }
  std::vector<Point> cycle(n);
  for (std::size_t x = 0; x < n; ++x) cycle[x] = static_cast<Point>((x + 1) % n);
  spec.generators.push_back(Permutation::from_cycles(n, {{0, 1}}));
  spec.generators.emplace_back(std::move(cycle));
  return spec;
}

GroupSpec alternating_group(std::size_t n) {
  GroupSpec spec{n, {}, "A" + std::to_string(n), std::nullopt};
  if (n < 3) {
    spec.generators.push_back(Permutation::identity(n));
    return spec;
  }
  spec.generators.push_back(Permutation::from_cycles(n, {{0, 1, 2}}));
  // (0 1 ... n-1) for odd n, (1 2 ... n-1) for even n
  std::vector<Point> cycle(n);
  std::iota(cycle.begin(), cycle.end(), Point{0});
  const std::size_t start = n % 2 == 1 ? 0 : 1;
  for (std::size_t x = start; x < n; ++x)
    cycle[x] = static_cast<Point>(x + 1 < n ? x + 1 : start);
  spec.generators.emplace_back(std::move(cycle));
  return spec;
}

GroupSpec cyclic_group(std::size_t n) {
  std::vector<Point> cycle(n);
  for (std::size_t x = 0; x < n; ++x) cycle[x] = static_cast<Point>((x + 1) % n);
  return GroupSpec{n, {Permutation(std::move(cycle))}, "C" + std::to_string(n), n};
}

// ---------------------------------------------------------------------------
// Group files

GroupSpec parse_group(const std::string& text, const std::string& name) {
  GroupSpec spec;
  spec.name = name;
  bool have_degree = false;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    auto where = [&] { return name + ":" + std::to_string(line_no) + ": "; };
    if (!have_degree) {
      if (first != "n" || !(fields >> spec.degree) || spec.degree == 0)
        throw DataError(where() + "expected 'n <degree>'");
      have_degree = true;
      continue;
    }
    if (first == "order") {
      std::uint64_t order = 0;
      if (!(fields >> order)) throw DataError(where() + "malformed order line");
      spec.expected_order = order;
      continue;
    }
    std::vector<Point> images;
    std::istringstream all(line);
    long value = 0;
    while (all >> value) {
      if (value < 0 || static_cast<std::size_t>(value) >= spec.degree)
        throw DataError(where() + "image out of range");
      images.push_back(static_cast<Point>(value));
    }
    if (!all.eof()) throw DataError(where() + "non-numeric token");
    if (images.size() != spec.degree)
      throw DataError(where() + "generator has " + std::to_string(images.size()) +
                      " images, expected " + std::to_string(spec.degree));
    try {
      spec.generators.emplace_back(std::move(images));
    } catch (const Error& e) {
      throw DataError(where() + e.what());
    }
  }
  if (!have_degree) throw DataError(name + ": missing degree line");
  if (spec.generators.empty()) throw DataError(name + ": no generators");
  return spec;
}

GroupSpec read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open group file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name.erase(0, slash + 1);
  if (auto dot = name.rfind('.'); dot != std::string::npos) name.erase(dot);
  return parse_group(buffer.str(), name);
}

std::string format_group(const GroupSpec& spec) {
  std::ostringstream out;
  if (!spec.name.empty()) out << "# " << spec.name << '\n';
  out << "n " << spec.degree << '\n';
  if (spec.expected_order) out << "order " << *spec.expected_order << '\n';
  for (const auto& g : spec.generators) {
    for (std::size_t x = 0; x < g.degree(); ++x) out << (x ? " " : "") << g(static_cast<Point>(x));
    out << '\n';
  }
  return out.str();
}

}  // namespace sharp
