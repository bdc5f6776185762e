#include "sharp/sharp_search.hpp"

#include <algorithm>

namespace sharp::search {

namespace {

/// Dancing-links exact cover. Node 0 is the root, 1..columns the headers.
class ExactCover {
 public:
  ExactCover(std::size_t columns, std::uint64_t budget) : columns_(columns), budget_(budget) {
    const std::size_t headers = columns + 1;
    left_.resize(headers);
    right_.resize(headers);
    up_.resize(headers);
    down_.resize(headers);
    column_.resize(headers);
    row_.assign(headers, 0);
    size_.assign(headers, 0);
    for (std::size_t i = 0; i < headers; ++i) {
      left_[i] = i == 0 ? columns : i - 1;
      right_[i] = i == columns ? 0 : i + 1;
      up_[i] = down_[i] = column_[i] = i;
    }
  }

  void add_row(std::size_t row, std::span<const std::size_t> cols) {
    const std::size_t first = left_.size();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::size_t node = left_.size();
      const std::size_t c = cols[k] + 1;
      left_.push_back(k == 0 ? node : node - 1);
      right_.push_back(first);
      if (k > 0) right_[node - 1] = node;
      left_[first] = node;
      up_.push_back(up_[c]);
      down_.push_back(c);
      down_[up_[c]] = node;
      up_[c] = node;
      column_.push_back(c);
      row_.push_back(row);
      ++size_[c];
    }
  }

  SearchStatus solve(std::vector<std::size_t>& solution) {
    const auto status = search();
    solution = chosen_;
    return status;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void cover(std::size_t c) {
    right_[left_[c]] = right_[c];
    left_[right_[c]] = left_[c];
    for (std::size_t i = down_[c]; i != c; i = down_[i])
      for (std::size_t j = right_[i]; j != i; j = right_[j]) {
        down_[up_[j]] = down_[j];
        up_[down_[j]] = up_[j];
        --size_[column_[j]];
      }
  }

  void uncover(std::size_t c) {
    for (std::size_t i = up_[c]; i != c; i = up_[i])
      for (std::size_t j = left_[i]; j != i; j = left_[j]) {
        ++size_[column_[j]];
        down_[up_[j]] = j;
        up_[down_[j]] = j;
      }
    right_[left_[c]] = c;
    left_[right_[c]] = c;
  }

  SearchStatus search() {
    if (right_[0] == 0) return SearchStatus::found;
    if (nodes_ >= budget_) return SearchStatus::budget_exhausted;
    ++nodes_;
    std::size_t best = right_[0];
    for (std::size_t c = right_[0]; c != 0; c = right_[c])
      if (size_[c] < size_[best]) best = c;
    if (size_[best] == 0) return SearchStatus::exhaustive_none;

    cover(best);
    auto status = SearchStatus::exhaustive_none;
    for (std::size_t r = down_[best]; r != best; r = down_[r]) {
      chosen_.push_back(row_[r]);
      for (std::size_t j = right_[r]; j != r; j = right_[j]) cover(column_[j]);
      status = search();
      for (std::size_t j = left_[r]; j != r; j = left_[j]) uncover(column_[j]);
      if (status == SearchStatus::found) break;
      chosen_.pop_back();
      if (status == SearchStatus::budget_exhausted) break;
    }
    uncover(best);
    return status;
  }

  std::size_t columns_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> left_, right_, up_, down_, column_, row_, size_;
  std::vector<std::size_t> chosen_;
};

/// Cell images of every element, row-major by element.
std::vector<Point> cell_images(const GroupEnumeration& group, std::size_t t, std::size_t& cells) {
  if (t == 0 || t > group.degree()) throw Error("t must lie in 1..degree");
  if (t == 1) {
    cells = group.degree();
    std::vector<Point> out;
    out.reserve(group.order() * cells);
    for (std::size_t i = 0; i < group.order(); ++i) {
      auto g = group.images(i);
      out.insert(out.end(), g.begin(), g.end());
    }
    return out;
  }
  ArrangementAction action(group.degree(), t);
  cells = action.cell_count();
  std::vector<Point> out;
  out.reserve(group.order() * cells);
  for (std::size_t i = 0; i < group.order(); ++i) {
    auto induced = action.induce(group.images(i));
    out.insert(out.end(), induced.images().begin(), induced.images().end());
  }
  return out;
}

}  // namespace

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhaustive_none: return "NONE (exhaustive)";
    case SearchStatus::budget_exhausted: return "UNKNOWN (budget)";
  }
  return "?";
}

SearchResult find_sharp_set(const GroupEnumeration& group, std::size_t t, std::uint64_t budget) {
  std::size_t cells = 0;
  const auto images = cell_images(group, t, cells);
  if (cells * cells > 1'000'000) throw Error("exact-cover instance too large");

  ExactCover cover(cells * cells, budget);
  std::vector<std::size_t> cols(cells);
  for (std::size_t g = 0; g < group.order(); ++g) {
    for (std::size_t c = 0; c < cells; ++c) cols[c] = c * cells + images[g * cells + c];
    cover.add_row(g, cols);
  }
  SearchResult result;
  std::vector<std::size_t> chosen;
  result.status = cover.solve(chosen);
  result.nodes = cover.nodes();
  if (result.status == SearchStatus::found) {
    std::sort(chosen.begin(), chosen.end());
    if (!verify_sharp_set(group, chosen, t)) throw Error("exact-cover witness fails verification");
    result.witness = SharpSet{std::move(chosen), t};
  }
  return result;
}

bool verify_sharp_set(const GroupEnumeration& group, std::span<const std::size_t> elements,
                      std::size_t t) {
  std::size_t cells = 0;
  if (t == 0 || t > group.degree()) return false;
  if (t == 1) {
    cells = group.degree();
  } else {
    cells = ArrangementAction(group.degree(), t).cell_count();
  }
  std::vector<std::uint32_t> hits(cells * cells, 0);
  std::optional<ArrangementAction> action;
  if (t > 1) action.emplace(group.degree(), t);
  for (auto i : elements) {
    if (i >= group.order()) return false;
    if (action) {
      auto induced = action->induce(group.images(i));
      for (std::size_t c = 0; c < cells; ++c) ++hits[c * cells + induced(static_cast<Point>(c))];
    } else {
      auto g = group.images(i);
      for (std::size_t c = 0; c < cells; ++c) ++hits[c * cells + g[c]];
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](auto h) { return h == 1; });
}

}  // namespace sharp::search
