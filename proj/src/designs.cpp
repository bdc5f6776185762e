#include "sharp/designs.hpp"

#include "sharp/gf.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

namespace sharp::designs {

namespace {

std::uint64_t to_mask(const PointSet& set) {
  std::uint64_t mask = 0;
  for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i))
    mask |= std::uint64_t{1} << i;
  return mask;
}

PointSet from_mask(std::size_t v, std::uint64_t mask) {
  PointSet set = make_set(v);
  for (std::size_t i = 0; i < v; ++i)
    if (mask >> i & 1) set.set(i);
  return set;
}

std::vector<std::size_t> members(const PointSet& set) {
  std::vector<std::size_t> out;
  for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) out.push_back(i);
  return out;
}

constexpr unsigned kGolayLength = 23;

/// Generator polynomial of the quadratic-residue code as a bitmask (bit i = X^i).
std::uint32_t qr_generator_polynomial() {
  const gf::Field field(11);  // 2^11 - 1 = 23 * 89
  gf::Element alpha = 0;
  for (gf::Element beta = 2; beta < field.order(); ++beta) {
    alpha = field.pow(beta, 89);
    if (alpha != 1) break;
  }
  if (field.pow(alpha, kGolayLength) != 1) throw Error("no element of order 23 in GF(2^11)");

  std::vector<gf::Element> poly{1};  // coefficients, low degree first
  for (unsigned r = 1; r < kGolayLength; ++r) {
    bool residue = false;
    for (unsigned x = 1; x < kGolayLength; ++x)
      if (x * x % kGolayLength == r) residue = true;
    if (!residue) continue;
    const gf::Element root = field.pow(alpha, r);
    std::vector<gf::Element> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] ^= poly[i];
      next[i] ^= field.mul(root, poly[i]);
    }
    poly = std::move(next);
  }
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] > 1) throw Error("quadratic-residue generator polynomial is not binary");
    mask |= poly[i] << i;
  }
  return mask;
}

std::vector<std::uint32_t> qr_codewords() {
  const std::uint32_t generator = qr_generator_polynomial();
  const unsigned dimension = kGolayLength - (std::bit_width(generator) - 1);
  std::vector<std::uint32_t> words;
  words.reserve(std::size_t{1} << dimension);
  for (std::uint32_t message = 0; message < (1u << dimension); ++message) {
    std::uint32_t word = 0;
    for (unsigned i = 0; i < dimension; ++i)
      if (message >> i & 1) word ^= generator << i;
    words.push_back(word);
  }
  return words;
}

}  // namespace

void Design::validate() const {
  std::set<std::vector<std::size_t>> seen;
  for (const auto& block : blocks) {
    if (block.size() != v) throw Error(name + ": block over the wrong point set");
    if (block.count() != k) throw Error(name + ": block of the wrong size");
    if (!seen.insert(members(block)).second) throw Error(name + ": repeated block");
  }
}

Spectrum golay_weight_distribution() {
  Spectrum weights;
  for (auto word : qr_codewords()) ++weights[std::popcount(word)];
  return weights;
}

Design golay_witt_design() {
  std::vector<std::uint32_t> supports;
  std::size_t total = 0;
  for (auto word : qr_codewords()) {
    ++total;
    if (std::popcount(word) == 7) supports.push_back(word);
  }
  if (total != 4096 || supports.size() != 253)
    throw Error("quadratic-residue code weight census deviates from the Golay code");
  std::sort(supports.begin(), supports.end());
  Design design{kGolayLength, 7, "W23", {}};
  for (auto mask : supports) design.blocks.push_back(from_mask(kGolayLength, mask));
  return design;
}

Design fano_plane() {
  Design design{7, 3, "Fano", {}};
  for (std::size_t i = 0; i < 7; ++i)
    design.blocks.push_back(from_mask(7, (1ull << i) | (1ull << (i + 1) % 7) | (1ull << (i + 3) % 7)));
  return design;
}

SteinerReport steiner_check(const Design& design, std::size_t t) {
  if (design.v > 63 || t == 0 || t > design.v) throw Error("steiner_check: unsupported parameters");
  std::vector<std::uint64_t> blocks;
  for (const auto& b : design.blocks) blocks.push_back(to_mask(b));

  SteinerReport report;
  const std::uint64_t limit = std::uint64_t{1} << design.v;
  // Gosper's hack: t-subsets in increasing mask order
  for (std::uint64_t subset = (std::uint64_t{1} << t) - 1; subset < limit;) {
    std::size_t covering = 0;
    for (auto b : blocks)
      if ((b & subset) == subset) ++covering;
    ++report.subsets_checked;
    if (covering != 1) {
      if (!report.violation) report.violation = members(from_mask(design.v, subset));
      ++report.violation_count;
    }
    const std::uint64_t low = subset & -subset;
    const std::uint64_t ripple = subset + low;
    subset = (((ripple ^ subset) >> 2) / low) | ripple;
  }
  report.passed = report.violation_count == 0;
  return report;
}

Spectrum intersection_spectrum(const Design& design) {
  Spectrum spectrum;
  for (std::size_t i = 0; i < design.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < design.blocks.size(); ++j)
      ++spectrum[intersection_size(design.blocks[i], design.blocks[j])];
  return spectrum;
}

std::vector<std::size_t> blocks_through(const Design& design, std::size_t point) {
  if (point >= design.v) throw Error("point out of range");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < design.blocks.size(); ++i)
    if (design.blocks[i].test(point)) out.push_back(i);
  return out;
}

std::vector<std::size_t> blocks_avoiding(const Design& design, std::size_t point) {
  if (point >= design.v) throw Error("point out of range");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < design.blocks.size(); ++i)
    if (!design.blocks[i].test(point)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

Graph Graph::from_edges(std::size_t n,
                        const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g;
  g.adjacency.assign(n, make_set(n));
  for (auto [a, b] : edges) {
    if (a >= n || b >= n || a == b) throw Error("invalid edge");
    g.adjacency[a].set(b);
    g.adjacency[b].set(a);
  }
  return g;
}

Graph mclaughlin_graph(const Design& witt) {
  if (witt.v != 23 || witt.k != 7 || witt.blocks.size() != 253)
    throw Error("McLaughlin construction needs the 253-block S(4,7,23)");
  constexpr std::size_t q = kMcLaughlinSpecialPoint;
  const auto through = blocks_through(witt, q);
  const auto avoiding = blocks_avoiding(witt, q);
  const std::size_t nb = 22, nu = through.size(), nv = avoiding.size();
  const std::size_t n = nb + nu + nv;

  Graph g;
  g.adjacency.assign(n, make_set(n));
  g.labels = std::string(nb, 'B') + std::string(nu, 'U') + std::string(nv, 'V');
  auto link = [&](std::size_t a, std::size_t b) {
    g.adjacency[a].set(b);
    g.adjacency[b].set(a);
  };
  auto u_block = [&](std::size_t i) -> const PointSet& { return witt.blocks[through[i]]; };
  auto v_block = [&](std::size_t i) -> const PointSet& { return witt.blocks[avoiding[i]]; };

  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t u = 0; u < nu; ++u)
      if (!u_block(u).test(b)) link(b, nb + u);
    for (std::size_t v = 0; v < nv; ++v)
      if (v_block(v).test(b)) link(b, nb + nu + v);
  }
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t u2 = u + 1; u2 < nu; ++u2)
      if (intersection_size(u_block(u), u_block(u2)) == 1) link(nb + u, nb + u2);
    for (std::size_t v = 0; v < nv; ++v)
      if (intersection_size(u_block(u), v_block(v)) == 3) link(nb + u, nb + nu + v);
  }
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t v2 = v + 1; v2 < nv; ++v2)
      if (intersection_size(v_block(v), v_block(v2)) == 1) link(nb + nu + v, nb + nu + v2);
  return g;
}

PointSet common_neighborhood(const Graph& graph, std::size_t i, std::size_t j) {
  if (i == j) throw Error("common_neighborhood needs distinct vertices");
  return graph.adjacency.at(i) & graph.adjacency.at(j);
}

SrgReport srg_check(const Graph& graph, const SrgParams& params) {
  SrgReport report;
  const std::size_t n = graph.vertex_count();
  auto fail = [&](std::string why) {
    report.violation = std::move(why);
    return report;
  };
  if (n != params.v) return fail("vertex count " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.adjacency[i].size() != n) return fail("adjacency row " + std::to_string(i) + " has wrong length");
    if (graph.adjacency[i].test(i)) return fail("loop at vertex " + std::to_string(i));
    if (graph.adjacency[i].count() != params.k)
      return fail("vertex " + std::to_string(i) + " has degree " +
                  std::to_string(graph.adjacency[i].count()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (graph.adjacent(i, j) != graph.adjacent(j, i))
        return fail("asymmetric pair " + std::to_string(i) + "," + std::to_string(j));
      const std::size_t common = intersection_size(graph.adjacency[i], graph.adjacency[j]);
      const bool adjacent = graph.adjacent(i, j);
      const std::size_t expected = adjacent ? params.lambda : params.mu;
      (adjacent ? report.adjacent_pairs : report.nonadjacent_pairs)++;
      if (common != expected)
        return fail(std::string(adjacent ? "adjacent" : "non-adjacent") + " pair " +
                    std::to_string(i) + "," + std::to_string(j) + " has " +
                    std::to_string(common) + " common neighbours");
    }
  }
  report.passed = true;
  return report;
}

// ---------------------------------------------------------------------------

RefutationTrace symmetric_design_refutation(const SymmetricDesignParams& params) {
  const auto [v, k, lambda] = params;
  if (!(v > k && k > lambda && lambda >= 1))
    throw Error("symmetric design parameters must satisfy v > k > lambda >= 1");
  if ((v - 1) * lambda != k * (k - 1))
    throw Error("parameters violate (v-1) lambda = k(k-1): " + std::to_string((v - 1) * lambda) +
                " != " + std::to_string(k * (k - 1)));

  RefutationTrace trace{params, {}, RefutationVerdict::trivial_design, ""};
  const long long d = k - lambda;
  auto step = [&](std::string claim, std::string detail, bool holds) {
    trace.steps.push_back({std::move(claim), std::move(detail), holds});
    return holds;
  };
  auto refute = [&](const std::string& why) {
    trace.verdict = RefutationVerdict::refuted_non_integral;
    trace.conclusion = "refuted: " + why;
    return trace;
  };

  step("(v-1) lambda = k^2 - k",
       std::to_string(v - 1) + "*" + std::to_string(lambda) + " = " + std::to_string(k * k - k), true);

  // Block avoiding the fixed point: a counts g in S with B^g = B.
  if (!step("a(k-lambda) = k", "a*" + std::to_string(d) + " = " + std::to_string(k) +
                                   (k % d == 0 ? ", a = " + std::to_string(k / d) : ", no integer a"),
            k % d == 0))
    return refute("a = " + std::to_string(k) + "/" + std::to_string(d) + " is not an integer");

  // Block through the fixed point, point removed: b counts g with |B ∩ B^g| = k-1.
  if (!step("b(k-lambda) = v-k", "b*" + std::to_string(d) + " = " + std::to_string(v - k) +
                                     ((v - k) % d == 0 ? ", b = " + std::to_string((v - k) / d)
                                                       : ", no integer b"),
            (v - k) % d == 0))
    return refute("b = " + std::to_string(v - k) + "/" + std::to_string(d) + " is not an integer");

  step("(k-lambda)^2 | k(v-k)",
       std::to_string(d * d) + " | " + std::to_string(k * (v - k)), (k * (v - k)) % (d * d) == 0);
  const bool divides_v = step("(k-lambda) | v", std::to_string(d) + " | " + std::to_string(v), v % d == 0);
  step("k(v-k) = (v-1)(k-lambda)",
       std::to_string(k * (v - k)) + " = " + std::to_string((v - 1) * d), k * (v - k) == (v - 1) * d);
  const bool divides_v1 =
      step("(k-lambda) | v-1", std::to_string(d) + " | " + std::to_string(v - 1), (v - 1) % d == 0);
  if (!divides_v || !divides_v1) return refute("divisibility chain fails");

  step("k - lambda = 1", std::to_string(d) + " = 1", d == 1);
  if (step("k = v - 1", std::to_string(k) + " = " + std::to_string(v - 1), k == v - 1)) {
    trace.verdict = RefutationVerdict::trivial_design;
    trace.conclusion = "trivial design (k = v-1): theorem inapplicable";
    return trace;
  }
  trace.verdict = RefutationVerdict::refuted_contradiction;
  trace.conclusion = "refuted: k - lambda = 1 forces k = v-1, contradicting nontriviality";
  return trace;
}

// ---------------------------------------------------------------------------

std::string format_design(const Design& design) {
  std::ostringstream out;
  out << design.v << ' ' << design.k << ' ' << design.blocks.size() << '\n';
  for (const auto& block : design.blocks) {
    auto pts = members(block);
    for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " " : "") << pts[i];
    out << '\n';
  }
  return out.str();
}

Design parse_design(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  Design design;
  design.name = name;
  std::size_t b = 0;
  if (!(in >> design.v >> design.k >> b)) throw DataError(name + ": expected 'v k b' header");
  for (std::size_t i = 0; i < b; ++i) {
    PointSet block = make_set(design.v);
    for (std::size_t j = 0; j < design.k; ++j) {
      std::size_t p = 0;
      if (!(in >> p) || p >= design.v) throw DataError(name + ": malformed block " + std::to_string(i));
      block.set(p);
    }
    design.blocks.push_back(std::move(block));
  }
  try {
    design.validate();
  } catch (const Error& e) {
    throw DataError(e.what());
  }
  return design;
}

Design read_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open design file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_design(buffer.str(), path);
}

std::string format_graph(const Graph& graph) {
  std::ostringstream out;
  out << graph.vertex_count() << '\n';
  for (const auto& row : graph.adjacency) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (row.test(j) ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

}  // namespace sharp::designs
