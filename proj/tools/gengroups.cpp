// Regenerates the generator files under data/groups/. Every group is
// enumerated before it is written and the enumerated order is recorded.

#include "sharp/designs.hpp"
#include "sharp/geometry.hpp"
#include "sharp/perm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <unordered_map>

using namespace sharp;

namespace {

std::uint32_t mask_of(const PointSet& set) {
  std::uint32_t mask = 0;
  for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) mask |= 1u << i;
  return mask;
}

/// Random automorphisms of W23 fixing point 22, by backtracking over point images.
class WittAutomorphismSearch {
 public:
  explicit WittAutomorphismSearch(const designs::Design& witt) {
    for (const auto& b : witt.blocks) blocks_.push_back(mask_of(b));
    for (auto b : blocks_) {
      // every 4-subset of a block determines the block
      std::vector<unsigned> pts;
      for (unsigned i = 0; i < 23; ++i)
        if (b >> i & 1) pts.push_back(i);
      for (unsigned a = 0; a < 7; ++a)
        for (unsigned c = a + 1; c < 7; ++c)
          for (unsigned d = c + 1; d < 7; ++d)
            for (unsigned e = d + 1; e < 7; ++e)
              block_of_.emplace((1u << pts[a]) | (1u << pts[c]) | (1u << pts[d]) | (1u << pts[e]), b);
    }
  }

  Permutation random_automorphism(std::mt19937_64& rng) {
    image_.assign(23, -1);
    image_[22] = 22;
    used_.assign(23, false);
    used_[22] = true;
    order_.resize(22);
    std::iota(order_.begin(), order_.end(), 0u);
    std::shuffle(order_.begin(), order_.end(), rng);
    if (!extend(0)) throw Error("no automorphism found");
    std::vector<Point> images(22);
    for (unsigned x = 0; x < 22; ++x) images[x] = static_cast<Point>(image_[x]);
    return Permutation(std::move(images));
  }

 private:
  bool consistent() const {
    for (auto b : blocks_) {
      std::uint32_t mapped = 0;
      std::uint32_t first_four = 0;
      int count = 0;
      for (unsigned i = 0; i < 23; ++i) {
        if (!(b >> i & 1) || image_[i] < 0) continue;
        mapped |= 1u << image_[i];
        if (count < 4) first_four |= 1u << image_[i];
        ++count;
      }
      if (count < 4) continue;
      auto it = block_of_.find(first_four);
      if (it == block_of_.end() || (mapped & ~it->second)) return false;
    }
    return true;
  }

  bool extend(unsigned x) {
    if (x == 22) return true;
    for (unsigned candidate : order_) {
      if (used_[candidate]) continue;
      image_[x] = static_cast<int>(candidate);
      used_[candidate] = true;
      if (consistent() && extend(x + 1)) return true;
      used_[candidate] = false;
      image_[x] = -1;
    }
    return false;
  }

  std::vector<std::uint32_t> blocks_;
  std::unordered_map<std::uint32_t, std::uint32_t> block_of_;
  std::vector<int> image_;
  std::vector<bool> used_;
  std::vector<unsigned> order_;
};

/// Adds elements (in the given order) as generators while they enlarge the group.
GroupSpec greedy_generators(std::size_t degree, const std::vector<Permutation>& elements,
                            std::size_t order, const std::string& name) {
  GroupSpec spec{degree, {}, name, order};
  std::size_t current = 1;
  for (const auto& g : elements) {
    spec.generators.push_back(g);
    auto closure = enumerate(spec);
    if (closure->order() > current) {
      current = closure->order();
      if (current == order) return spec;
    } else {
      spec.generators.pop_back();
    }
  }
  throw Error(name + ": elements do not generate a group of the expected order");
}

GroupSpec with_order(GroupSpec spec, const std::string& name) {
  auto group = enumerate(spec);
  if (!group) throw Error(name + ": exceeds the enumeration cap");
  spec.name = name;
  spec.expected_order = group->order();
  return spec;
}

GroupSpec fano_point_stabilizer() {
  const auto fano = designs::fano_plane();
  std::vector<std::uint32_t> lines;
  for (const auto& l : fano.blocks) lines.push_back(mask_of(l));
  std::sort(lines.begin(), lines.end());
  auto s7 = *enumerate(symmetric_group(7));
  std::vector<Permutation> stabilizer;
  for (std::size_t i = 0; i < s7.order(); ++i) {
    auto g = s7.images(i);
    if (g[0] != 0) continue;
    std::vector<std::uint32_t> mapped;
    for (auto l : lines) {
      std::uint32_t m = 0;
      for (unsigned x = 0; x < 7; ++x)
        if (l >> x & 1) m |= 1u << g[x];
      mapped.push_back(m);
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped != lines) continue;
    std::vector<Point> restricted(6);
    for (unsigned x = 1; x < 7; ++x) restricted[x - 1] = static_cast<Point>(g[x] - 1);
    stabilizer.emplace_back(std::move(restricted));
  }
  if (stabilizer.size() != 24) throw Error("Fano point stabilizer does not have order 24");
  return greedy_generators(6, stabilizer, 24, "Fano plane point stabilizer on the other 6 points");
}

GroupSpec m22(std::uint64_t seed) {
  const auto witt = designs::golay_witt_design();
  WittAutomorphismSearch search(witt);
  std::mt19937_64 rng(seed);
  std::vector<Permutation> candidates;
  for (int i = 0; i < 8; ++i) candidates.push_back(search.random_automorphism(rng));
  return greedy_generators(22, candidates, 443520,
                           "M22: automorphisms of W23 fixing point 22, on points 0..21");
}

GroupSpec m12() {
  // (1..11), (3,7,11,8)(4,10,5,6), (1,12)(2,11)(3,6)(4,8)(5,9)(7,10), shifted to 0-based
  GroupSpec spec{12, {}, "M12", std::nullopt};
  spec.generators.push_back(Permutation::from_cycles(12, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}));
  spec.generators.push_back(Permutation::from_cycles(12, {{2, 6, 10, 7}, {3, 9, 4, 5}}));
  spec.generators.push_back(
      Permutation::from_cycles(12, {{0, 11}, {1, 10}, {2, 5}, {3, 7}, {4, 8}, {6, 9}}));
  auto group = enumerate(spec);
  if (!group || group->order() != 95040) throw Error("M12 generators do not give order 95040");
  spec.expected_order = 95040;
  return spec;
}

GroupSpec sylow(const GroupSpec& parent, std::uint64_t p, std::uint64_t order, std::uint64_t seed,
                const std::string& name) {
  auto group = *enumerate(parent);
  auto sub = find_p_subgroup(group, p, order, seed);
  if (!sub) throw Error(name + ": no subgroup found");
  sub->name = name;
  sub->expected_order = order;
  return *sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the group generator files"};
  std::string out_dir = "data/groups";
  std::uint64_t seed = 0;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "seed for randomized searches");
  CLI11_PARSE(app, argc, argv);

  auto write = [&](const std::string& file, const GroupSpec& spec) {
    std::ofstream out(out_dir + "/" + file);
    if (!out) throw DataError("cannot write " + out_dir + "/" + file);
    out << format_group(spec);
    std::cout << file << ": degree " << spec.degree << ", order " << *spec.expected_order << '\n';
  };

  try {
    write("c5.grp", with_order(cyclic_group(5), "C5"));
    write("c6.grp", with_order(cyclic_group(6), "C6"));
    write("s3.grp", with_order(symmetric_group(3), "S3"));
    write("s4.grp", with_order(symmetric_group(4), "S4"));
    write("a4.grp", with_order(alternating_group(4), "A4"));
    write("s5.grp", with_order(symmetric_group(5), "S5"));
    write("s6.grp", with_order(symmetric_group(6), "S6"));
    write("a6.grp", with_order(alternating_group(6), "A6"));
    write("a7.grp", with_order(alternating_group(7), "A7"));
    write("agl1_5.grp",
          with_order(GroupSpec{5,
                               {Permutation::from_cycles(5, {{0, 1, 2, 3, 4}}),
                                Permutation::from_cycles(5, {{1, 2, 4, 3}})},
                               "",
                               std::nullopt},
                     "AGL(1,5): x -> x+1, x -> 2x"));
    write("fano_stab.grp", fano_point_stabilizer());

    geometry::SymplecticSpace space(2, gf::Field(1));
    write("sp4_2.grp", with_order(geometry::symplectic_generators(space, geometry::Action::projective),
                                  "Sp(4,2) on the 15 points of PG(3,2)"));

    auto a6 = alternating_group(6);
    write("a6_sylow2.grp", sylow(a6, 2, 8, seed, "Sylow 2-subgroup of A6"));
    write("a6_sylow3.grp", sylow(a6, 3, 9, seed, "Sylow 3-subgroup of A6"));

    auto m12_spec = m12();
    write("m12.grp", m12_spec);
    write("m12_sylow2.grp", sylow(m12_spec, 2, 64, seed, "Sylow 2-subgroup of M12"));
    write("m12_sylow3.grp", sylow(m12_spec, 3, 27, seed, "Sylow 3-subgroup of M12"));

    write("m22.grp", m22(seed));
  } catch (const std::exception& e) {
    std::cerr << "gengroups: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
