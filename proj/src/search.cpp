#include "gj/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "gj/errors.hpp"

namespace gj {

Fraction exact_epsilon(int q) { return Fraction(Integer(1), pow10(static_cast<unsigned>((q + 3) / 4))); }

void validate(const SearchConfig& c) {
  if (c.q < 2) throw ArgumentError("search: q must be at least 2");
  if (c.f_index < 1 || c.f_index >= c.q) throw ArgumentError("search: f_index must lie in [1, q-1]");
  if (c.target_slopes < 1) throw ArgumentError("search: target slope count must be positive");
  if (c.epsilon <= 0) throw ArgumentError("search: epsilon must be positive");
  if (c.worker_count < 1) throw ArgumentError("search: worker count must be positive");
}

void SearchStats::add(const SearchStats& o) {
  nodes += o.nodes;
  infeasible += o.infeasible;
  component_prunes += o.component_prunes;
  lp_solves += o.lp_solves;
  emitted += o.emitted;
}

namespace {

std::vector<std::int64_t> unit_row(int q, std::initializer_list<std::pair<long, int>> terms) {
  std::vector<std::int64_t> r(q, 0);
  for (auto [i, c] : terms) r[mod(i, q)] += c;
  return r;
}

IntVector to_int(const std::vector<std::int64_t>& r) {
  IntVector v(r.size());
  for (size_t i = 0; i < r.size(); ++i) v[i] = static_cast<long>(r[i]);
  return v;
}

}  // namespace

SearchNode::SearchNode(int q, int f_index, Fraction epsilon)
    : q_(q), f_(f_index), eps_(std::move(epsilon)), painting_(initial_painting(q, f_index)),
      delta_(q * q, -1), components_(q), cs_(q) {
  for (int x = 0; x < q; ++x) {
    Fraction lo = 0, hi = 1;
    if (x == 0) hi = 0;
    if (x == f_index) lo = 1;
    lp_.add_variable(lo, hi);
  }
  for (int x = 1; x < q; ++x)
    for (int y = x; y < q; ++y) {
      LinearExpr e{{x, Fraction(1)}, {y, Fraction(1)}, {mod(x + y, q), Fraction(-1)}};
      bool sym = mod(x + y, q) == f_index;
      delta_[x * q + y] = lp_.add_row(e, Fraction(0), sym ? std::optional<Fraction>(0) : std::nullopt);
    }
  cs_.add(to_int(unit_row(q, {{0, 1}})));
  for (int x = 0; x < q; ++x)
    if (x <= mod(f_index - x, q)) cs_.add(to_int(unit_row(q, {{x, 1}, {f_index - x, 1}})));
  for (auto& f : painting_.all_faces())
    if (painting_.color(f) == Color::Green) components_.add_face(f);
}

int SearchNode::delta_var(int x, int y) const {
  x = mod(x, q_);
  y = mod(y, q_);
  if (x > y) std::swap(x, y);
  return delta_[x * q_ + y];
}

void SearchNode::paint_vertex_green(int x, int y) {
  Face v = canonical({FaceKind::Vertex, x, y}, q_);
  if (painting_.color(v) == Color::Green) return;
  painting_.set(v, Color::Green);
  int d = delta_var(v.x, v.y);
  if (d >= 0) lp_.set_bounds(d, Fraction(0), Fraction(0));
  cs_.add(to_int(unit_row(q_, {{v.x, 1}, {v.y, 1}, {v.x + v.y, -1}})));
}

void SearchNode::absorb_inclusion() {
  for (auto& f : apply_inclusion(painting_)) components_.add_face(f);
}

bool SearchNode::propagate(SearchStats* stats) {
  if (!lp_.feasible()) return false;
  std::vector<Vector> witnesses{lp_.structural_point()};
  auto slack = [&](const Vector& pt, int x, int y) -> Fraction { return pt[x] + pt[y] - pt[mod(x + y, q_)]; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 1; x < q_; ++x)
      for (int y = x; y < q_; ++y) {
        if (painting_.color({FaceKind::Vertex, x, y}) != Color::Grey) continue;
        bool witnessed = false;
        for (auto& w : witnesses)
          if (slack(w, x, y) > 0) {
            witnessed = true;
            break;
          }
        if (witnessed) continue;
        if (stats) ++stats->lp_solves;
        auto r = lp_.exceeds({{delta_var(x, y), Fraction(1)}}, Fraction(0));
        if (!r) return false;
        if (*r) {
          witnesses.push_back(lp_.structural_point());
          continue;
        }
        paint_vertex_green(x, y);
        changed = true;
        std::erase_if(witnesses, [&](const Vector& w) { return slack(w, x, y) != 0; });
      }
  }
  absorb_inclusion();
  return lp_.feasible();
}

std::optional<Face> SearchNode::choose_branching_triangle() const {
  for (FaceKind k : {FaceKind::LowerTriangle, FaceKind::UpperTriangle})
    for (int x = 0; x < q_; ++x) {
      if (components_.covered(x)) continue;
      for (int y = x; y < q_; ++y) {
        Face f{k, x, y};
        if (!components_.covered(y) && painting_.color(f) == Color::Grey) return f;
      }
    }
  return std::nullopt;
}

std::pair<SearchNode, SearchNode> SearchNode::branch(const Face& t) const {
  Face tri = canonical(t, q_);
  if (!is_triangle(tri.kind) || painting_.color(tri) != Color::Grey)
    throw ArgumentError("branch: face is not a Grey triangle");
  SearchNode green = *this, white = *this;
  green.depth_ = white.depth_ = depth_ + 1;
  green.green_child_ = true;
  white.green_child_ = false;

  green.painting_.set(tri, Color::Green);
  green.components_.add_face(tri);
  for (auto [a, b] : corners(tri, q_)) green.paint_vertex_green(a, b);
  green.absorb_inclusion();

  white.painting_.set(tri, Color::White);
  LinearExpr sum;
  for (auto [a, b] : corners(tri, q_)) {
    int d = white.delta_var(a, b);
    if (d >= 0) sum.emplace_back(d, Fraction(1));
  }
  if (sum.empty()) {
    // all corners identically additive: sum >= eps is impossible
    int v0 = white.lp_.add_variable(Fraction(0), Fraction(0));
    sum.emplace_back(v0, Fraction(1));
  }
  white.lp_.add_row(sum, eps_, std::nullopt);
  return {std::move(green), std::move(white)};
}

Polytope restricted_polytope(const Painting& p) {
  int q = p.q();
  Polytope poly = build_minimal_function_polytope(q, p.f_index());
  for (int x = 1; x < q; ++x)
    for (int y = x; y < q; ++y) {
      if (p.color({FaceKind::Vertex, x, y}) != Color::Green || mod(x + y, q) == p.f_index()) continue;
      Vector a(q - 1);
      a[x - 1] += 1;
      a[y - 1] += 1;
      int z = mod(x + y, q);
      if (z) a[z - 1] -= 1;
      poly.equalities.push_back({a, 0, Relation::EQ});
    }
  return poly;
}

std::vector<GridFunction> extreme_functions_of(const Painting& p, int k) {
  std::vector<GridFunction> out;
  for (auto& v : enumerate_vertices(restricted_polytope(p))) {
    GridFunction fn = function_from_vertex(p.q(), p.f_index(), v);
    if (number_of_slopes(fn) >= k && is_extreme(fn).extreme()) out.push_back(std::move(fn));
  }
  return out;
}

namespace {

// Depth-first driver shared by heuristic and combined mode.  R is the
// result type; emit turns a stopping node into results.
template <class R>
class Driver {
 public:
  using Emit = std::function<std::vector<R>(const SearchNode&)>;

  Driver(const SearchConfig& c, Emit emit) : c_(c), emit_(std::move(emit)) {}

  std::vector<R> run(SearchStats* stats) {
    SearchNode root(c_.q, c_.f_index, c_.epsilon);
    SearchStats local;
    std::vector<Item> items;
    if (root.propagate(&local)) {
      Ctx ctx{&local, &items, nullptr, c_.worker_count > 1 ? c_.split_depth : -1, 0};
      dfs(root, ctx);
    } else {
      ++local.infeasible;
    }
    // Workers drain the deferred subtrees.
    std::vector<int> task_item;
    for (size_t i = 0; i < items.size(); ++i)
      if (items[i].task) task_item.push_back(static_cast<int>(i));
    std::vector<char> done(items.size(), 0);
    for (size_t i = 0; i < items.size(); ++i) done[i] = !items[i].task;
    std::mutex mu;
    std::atomic<size_t> next{0};
    auto prefix_full = [&]() {
      if (!c_.max_results) return false;
      size_t n = 0;
      for (size_t i = 0; i < items.size() && done[i]; ++i) n += items[i].results.size();
      return n >= *c_.max_results;
    };
    auto worker = [&]() {
      SearchStats st;
      while (true) {
        size_t t = next++;
        if (t >= task_item.size()) break;
        {
          std::lock_guard<std::mutex> lk(mu);
          if (prefix_full()) break;
        }
        Item& it = items[task_item[t]];
        std::vector<Item> sub;
        Ctx ctx{&st, &sub, nullptr, -1, 0};
        dfs(*it.task, ctx);
        std::vector<R> res;
        for (auto& s : sub)
          for (auto& r : s.results) res.push_back(std::move(r));
        std::lock_guard<std::mutex> lk(mu);
        it.results = std::move(res);
        it.task.reset();
        done[task_item[t]] = 1;
      }
      std::lock_guard<std::mutex> lk(mu);
      local.add(st);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < c_.worker_count; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<R> out;
    for (size_t i = 0; i < items.size() && done[i]; ++i)
      for (auto& r : items[i].results) {
        if (c_.max_results && out.size() >= *c_.max_results) break;
        out.push_back(std::move(r));
      }
    if (stats) stats->add(local);
    return out;
  }

 private:
  struct Item {
    std::vector<R> results;
    std::optional<SearchNode> task;
  };
  struct Ctx {
    SearchStats* stats;
    std::vector<Item>* items;
    void* unused;
    int split_depth;
    std::size_t found;
  };

  bool full(const Ctx& ctx) const { return c_.max_results && ctx.found >= *c_.max_results; }

  void dfs(SearchNode& node, Ctx& ctx) {
    if (full(ctx)) return;
    ++ctx.stats->nodes;
    const auto& comps = node.components();
    if (comps.count() < c_.target_slopes) {
      ++ctx.stats->component_prunes;
      return;
    }
    bool stop = comps.all_covered();
    if (!stop && c_.mode == SearchMode::Combined) {
      int e = node.exp_dim();
      stop = node.depth() == 0 ? e < c_.exp_dim_threshold : (node.green_child() && e <= c_.exp_dim_threshold);
    }
    if (stop) {
      Item it;
      it.results = emit_(node);
      ctx.stats->emitted += static_cast<long>(it.results.size());
      ctx.found += it.results.size();
      if (!it.results.empty()) ctx.items->push_back(std::move(it));
      return;
    }
    if (ctx.split_depth >= 0 && node.depth() >= ctx.split_depth) {
      Item it;
      it.task = std::move(node);
      ctx.items->push_back(std::move(it));
      return;
    }
    auto tri = node.choose_branching_triangle();
    if (!tri) return;
    auto children = node.branch(*tri);
    for (SearchNode* child : {&children.first, &children.second}) {
      if (child->propagate(ctx.stats)) dfs(*child, ctx);
      else ++ctx.stats->infeasible;
    }
  }

  SearchConfig c_;
  Emit emit_;
};

std::vector<FoundFunction> dedupe_sorted(std::vector<FoundFunction> v) {
  std::sort(v.begin(), v.end(), [](const FoundFunction& a, const FoundFunction& b) { return a.fn < b.fn; });
  v.erase(std::unique(v.begin(), v.end(), [](const FoundFunction& a, const FoundFunction& b) { return a.fn == b.fn; }),
          v.end());
  return v;
}

std::vector<FoundFunction> functions_at(const SearchNode& node, int k) {
  std::vector<FoundFunction> out;
  for (auto& fn : extreme_functions_of(node.painting(), k)) {
    FoundFunction r;
    r.slopes = number_of_slopes(fn);
    r.components = covered_components(painting_from_function(fn)).count();
    r.depth = node.depth();
    r.exp_dim = node.exp_dim();
    r.fn = std::move(fn);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<FoundFunction> vertex_filtering_search(const SearchConfig& c, SearchStats* stats) {
  validate(c);
  std::vector<FoundFunction> out;
  for (auto& v : enumerate_vertices(build_minimal_function_polytope(c.q, c.f_index))) {
    if (stats) ++stats->nodes;
    GridFunction fn = function_from_vertex(c.q, c.f_index, v);
    int s = number_of_slopes(fn);
    if (s < c.target_slopes) continue;
    auto cert = is_extreme(fn);
    if (!cert.extreme()) continue;
    out.push_back({std::move(fn), s, cert.components, 0, 0});
    if (c.max_results && out.size() >= *c.max_results) break;
  }
  if (stats) stats->emitted += static_cast<long>(out.size());
  return dedupe_sorted(std::move(out));
}

std::vector<Painting> heuristic_backtracking_search(const SearchConfig& c, SearchStats* stats) {
  validate(c);
  SearchConfig cc = c;
  cc.mode = SearchMode::Heuristic;
  Driver<Painting> d(cc, [](const SearchNode& n) { return std::vector<Painting>{n.painting()}; });
  auto out = d.run(stats);
  std::sort(out.begin(), out.end(),
            [](const Painting& a, const Painting& b) { return dump_painting(a) < dump_painting(b); });
  return out;
}

std::vector<FoundFunction> combined_search(const SearchConfig& c, SearchStats* stats) {
  validate(c);
  SearchConfig cc = c;
  cc.mode = SearchMode::Combined;
  int k = c.target_slopes;
  Driver<FoundFunction> d(cc, [k](const SearchNode& n) { return functions_at(n, k); });
  return dedupe_sorted(d.run(stats));
}

std::vector<FoundFunction> run_search(const SearchConfig& c, SearchStats* stats) {
  switch (c.mode) {
    case SearchMode::VertexFilter: return vertex_filtering_search(c, stats);
    case SearchMode::Combined: return combined_search(c, stats);
    case SearchMode::Heuristic: {
      validate(c);
      SearchConfig cc = c;
      int k = c.target_slopes;
      Driver<FoundFunction> d(cc, [k](const SearchNode& n) { return functions_at(n, k); });
      return dedupe_sorted(d.run(stats));
    }
  }
  return {};
}

}  // namespace gj
