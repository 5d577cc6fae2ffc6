#include "biplane/autgroup.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace biplane {

IncidenceGraph::IncidenceGraph(const IncidenceMatrix& m) : v_(m.rows.size()) {
  if (2 * v_ > 64 * kWords) throw std::invalid_argument("IncidenceGraph: too many vertices");
  adjacency_.assign(2 * v_, Bits{});
  for (std::size_t p = 0; p < v_; ++p)
    for (std::size_t l = 0; l < v_; ++l)
      if (m.at(p, l)) {
        const std::size_t line = v_ + l;
        adjacency_[p][line >> 6] |= std::uint64_t{1} << (line & 63);
        adjacency_[line][p >> 6] |= std::uint64_t{1} << (p & 63);
      }
}

int IncidenceGraph::degree(int x) const {
  int d = 0;
  for (auto w : neighbours(x)) d += std::popcount(w);
  return d;
}

std::size_t IncidenceGraph::edge_count() const {
  std::size_t e = 0;
  for (std::size_t p = 0; p < v_; ++p) e += static_cast<std::size_t>(degree(static_cast<int>(p)));
  return e;
}

std::string Certificate::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(words.size() * 16);
  for (auto w : words)
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kDigits[(w >> shift) & 0xF]);
  return out;
}

std::string Certificate::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  mix(v);
  for (auto w : words) mix(w);
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kDigits[h & 0xF];
  return out;
}

bool is_automorphism(const IncidenceGraph& g, const Permutation& p) {
  const auto n = static_cast<int>(g.vertex_count());
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    const int y = p[static_cast<std::size_t>(x)];
    if (y < 0 || y >= n || seen[static_cast<std::size_t>(y)]) return false;
    seen[static_cast<std::size_t>(y)] = 1;
    // Colours: points stay points.
    if ((x < static_cast<int>(g.points())) != (y < static_cast<int>(g.points()))) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (g.adjacent(a, b) != g.adjacent(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)])) return false;
  return true;
}

namespace {

using Bits = IncidenceGraph::Bits;

struct Partition {
  std::vector<int> lab;      // position -> vertex
  std::vector<int> cell_of;  // vertex -> start of its cell
  std::vector<int> size_at;  // cell start -> cell size
  int cells = 0;

  bool discrete() const { return cells == static_cast<int>(lab.size()); }
};

int count_in(const Bits& a, const Bits& mask) {
  int c = 0;
  for (std::size_t w = 0; w < IncidenceGraph::kWords; ++w) c += std::popcount(a[w] & mask[w]);
  return c;
}

class Refiner {
 public:
  explicit Refiner(const IncidenceGraph& g) : g_(g), n_(static_cast<int>(g.vertex_count())), count_(g.vertex_count()) {}

  Partition initial() const {
    Partition p;
    const int v = static_cast<int>(g_.points());
    p.lab.resize(static_cast<std::size_t>(n_));
    std::iota(p.lab.begin(), p.lab.end(), 0);
    p.cell_of.assign(static_cast<std::size_t>(n_), 0);
    p.size_at.assign(static_cast<std::size_t>(n_), 0);
    p.size_at[0] = v;
    p.size_at[static_cast<std::size_t>(v)] = v;
    for (int x = v; x < n_; ++x) p.cell_of[static_cast<std::size_t>(x)] = v;
    p.cells = 2;
    refine(p, {0, v});
    return p;
  }

  Partition individualize(const Partition& p, int x) const {
    Partition q = p;
    const int s = q.cell_of[static_cast<std::size_t>(x)];
    const int size = q.size_at[static_cast<std::size_t>(s)];
    const auto pos = std::find(q.lab.begin() + s, q.lab.begin() + s + size, x);
    std::iter_swap(q.lab.begin() + s, pos);
    q.size_at[static_cast<std::size_t>(s)] = 1;
    q.size_at[static_cast<std::size_t>(s + 1)] = size - 1;
    for (int i = s + 1; i < s + size; ++i) q.cell_of[static_cast<std::size_t>(q.lab[static_cast<std::size_t>(i)])] = s + 1;
    ++q.cells;
    refine(q, {s});
    return q;
  }

  // Equitable refinement. Splitters are processed in order of cell
  // position and fragments are ordered by neighbour count, so the result
  // depends only on the ordered input partition, never on vertex names.
  void refine(Partition& p, std::initializer_list<int> splitters) const {
    std::vector<char> queued(static_cast<std::size_t>(n_), 0);
    std::deque<int> queue;
    for (int s : splitters) {
      queue.push_back(s);
      queued[static_cast<std::size_t>(s)] = 1;
    }
    while (!queue.empty() && !p.discrete()) {
      const int w = queue.front();
      queue.pop_front();
      queued[static_cast<std::size_t>(w)] = 0;
      Bits mask{};
      for (int i = w; i < w + p.size_at[static_cast<std::size_t>(w)]; ++i) {
        const auto x = static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)]);
        mask[x >> 6] |= std::uint64_t{1} << (x & 63);
      }
      for (int s = 0; s < n_; s += p.size_at[static_cast<std::size_t>(s)]) {
        const int size = p.size_at[static_cast<std::size_t>(s)];
        if (size == 1) continue;
        int lo = INT_MAX, hi = -1;
        for (int i = s; i < s + size; ++i) {
          const int x = p.lab[static_cast<std::size_t>(i)];
          const int c = count_in(g_.neighbours(x), mask);
          count_[static_cast<std::size_t>(x)] = c;
          lo = std::min(lo, c);
          hi = std::max(hi, c);
        }
        if (lo == hi) continue;
        std::sort(p.lab.begin() + s, p.lab.begin() + s + size, [&](int a, int b) {
          const int ca = count_[static_cast<std::size_t>(a)], cb = count_[static_cast<std::size_t>(b)];
          return ca != cb ? ca < cb : a < b;
        });
        int start = s;
        for (int i = s + 1; i <= s + size; ++i) {
          if (i < s + size && count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] ==
                                  count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(start)])])
            continue;
          p.size_at[static_cast<std::size_t>(start)] = i - start;
          for (int j = start; j < i; ++j) p.cell_of[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(j)])] = start;
          if (start != s) ++p.cells;
          if (!queued[static_cast<std::size_t>(start)]) {
            queued[static_cast<std::size_t>(start)] = 1;
            queue.push_back(start);
          }
          start = i;
        }
      }
    }
  }

  // First largest non-singleton cell.
  int target_cell(const Partition& p) const {
    int best = -1, best_size = 1;
    for (int s = 0; s < n_; s += p.size_at[static_cast<std::size_t>(s)])
      if (p.size_at[static_cast<std::size_t>(s)] > best_size) {
        best = s;
        best_size = p.size_at[static_cast<std::size_t>(s)];
      }
    return best;
  }

 private:
  const IncidenceGraph& g_;
  int n_;
  mutable std::vector<int> count_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

bool fixes_all(const Permutation& g, const std::vector<int>& points, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    if (g[static_cast<std::size_t>(points[i])] != points[i]) return false;
  return true;
}

UnionFind orbits_fixing(std::size_t n, const std::vector<Permutation>& gens, const std::vector<int>& prefix, std::size_t len) {
  UnionFind uf(n);
  for (const auto& g : gens)
    if (fixes_all(g, prefix, len))
      for (std::size_t x = 0; x < n; ++x) uf.unite(static_cast<int>(x), g[x]);
  return uf;
}

// Individualization-refinement search with automorphism pruning. Every
// leaf is compared with earlier leaves that share an ancestor on the
// current stack; an equal certificate yields an automorphism and proves
// the current branch equivalent to an already finished one.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const IncidenceGraph& g) : g_(g), refiner_(g), n_(g.vertex_count()) {}

  AutResult run() {
    explore(refiner_.initial());
    AutResult out;
    out.generators = generators_;
    out.certificate = best_.cert;
    out.canonical_labeling = best_.lab;
    out.nodes = nodes_;
    // Generators fixing the first path's prefixes form a strong generating
    // set for that base; the order is the product of basic orbit lengths.
    std::uint64_t order = 1;
    for (std::size_t l = 0; l < first_path_.size(); ++l) {
      auto uf = orbits_fixing(n_, generators_, first_path_, l);
      const int root = uf.find(first_path_[l]);
      std::uint64_t orbit = 0;
      for (std::size_t x = 0; x < n_; ++x)
        if (uf.find(static_cast<int>(x)) == root) ++orbit;
      order *= orbit;
    }
    out.group_order = order;
    return out;
  }

 private:
  static constexpr int kNone = -1;

  struct Leaf {
    bool filled = false;
    std::vector<int> lab;
    std::vector<int> path;
    Certificate cert;
  };

  Certificate certificate_of(const std::vector<int>& lab) const {
    Certificate c;
    const std::size_t v = g_.points();
    c.v = v;
    c.words.assign((v * v + 63) / 64, 0);
    std::size_t bit = 0;
    for (std::size_t p = 0; p < v; ++p)
      for (std::size_t l = 0; l < v; ++l, ++bit)
        if (g_.adjacent(lab[p], lab[v + l])) c.words[bit >> 6] |= std::uint64_t{1} << (63 - (bit & 63));
    return c;
  }

  static std::size_t common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
  }

  void add_generator(const std::vector<int>& from, const std::vector<int>& to) {
    Permutation g(n_);
    bool identity = true;
    for (std::size_t pos = 0; pos < n_; ++pos) {
      g[static_cast<std::size_t>(from[pos])] = to[pos];
      identity = identity && from[pos] == to[pos];
    }
    if (identity) return;
    if (!is_automorphism(g_, g)) throw std::logic_error("canonical search produced a non-automorphism");
    generators_.push_back(std::move(g));
  }

  int leaf(const Partition& p) {
    Certificate cert = certificate_of(p.lab);
    if (!have_first_) {
      first_path_ = path_;
      have_first_ = true;
    }
    int jump = kNone;
    const Leaf* match = nullptr;
    auto consider = [&](const Leaf& other) {
      if (!other.filled || !(other.cert == cert)) return;
      const int d = static_cast<int>(common_prefix(other.path, path_));
      if (jump == kNone || d < jump) {
        jump = d;
        match = &other;
      }
    };
    for (const auto& r : refs_) consider(r);
    if (best_.filled) consider(best_);
    if (match) add_generator(match->lab, p.lab);

    for (auto& r : refs_)
      if (!r.filled) r = Leaf{true, p.lab, path_, cert};
    if (!best_.filled || best_.cert < cert) best_ = Leaf{true, p.lab, path_, std::move(cert)};
    return jump;
  }

  int explore(const Partition& p) {
    ++nodes_;
    if (p.discrete()) return leaf(p);
    const int depth = static_cast<int>(path_.size());
    const int s = refiner_.target_cell(p);
    std::vector<int> children(p.lab.begin() + s, p.lab.begin() + s + p.size_at[static_cast<std::size_t>(s)]);
    std::sort(children.begin(), children.end());

    refs_.push_back(Leaf{});
    std::vector<int> explored;
    std::size_t gens_seen = 0;
    std::optional<UnionFind> orbits;
    int result = kNone;
    for (std::size_t idx = 0; idx < children.size(); ++idx) {
      const int x = children[idx];
      if (idx > 0) {
        if (!orbits || gens_seen != generators_.size()) {
          orbits = orbits_fixing(n_, generators_, path_, path_.size());
          gens_seen = generators_.size();
        }
        const int rx = orbits->find(x);
        if (std::any_of(explored.begin(), explored.end(), [&](int e) { return orbits->find(e) == rx; })) continue;
      }
      path_.push_back(x);
      const int r = explore(refiner_.individualize(p, x));
      path_.pop_back();
      explored.push_back(x);
      if (r != kNone && r < depth) {
        result = r;
        break;
      }
    }
    refs_.pop_back();
    return result;
  }

  const IncidenceGraph& g_;
  Refiner refiner_;
  std::size_t n_;
  std::vector<Permutation> generators_;
  std::vector<Leaf> refs_;
  Leaf best_;
  std::vector<int> path_;
  std::vector<int> first_path_;
  bool have_first_ = false;
  std::uint64_t nodes_ = 0;
};

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[static_cast<std::size_t>(a[x])];
  return c;
}

Permutation inverse(const Permutation& a) {
  Permutation c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[static_cast<std::size_t>(a[x])] = static_cast<int>(x);
  return c;
}

bool is_identity(const Permutation& a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != static_cast<int>(x)) return false;
  return true;
}

int first_moved(const Permutation& a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != static_cast<int>(x)) return static_cast<int>(x);
  return -1;
}

// Deterministic Schreier-Sims over explicit transversals.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t n) : n_(n) {}

  void build(const std::vector<Permutation>& gens) {
    std::vector<Permutation> nontrivial;
    for (const auto& g : gens)
      if (!is_identity(g)) nontrivial.push_back(g);
    if (nontrivial.empty()) return;
    for (const auto& g : nontrivial) {
      if (fixes_all(g, base_, base_.size())) add_level(first_moved(g));
    }
    for (std::size_t i = 0; i < base_.size(); ++i) {
      for (const auto& g : nontrivial)
        if (fixes_all(g, base_, i)) strong_[i].push_back(g);
      rebuild_orbit(i);
    }
    int i = static_cast<int>(base_.size()) - 1;
    while (i >= 0) {
      if (!close_level(static_cast<std::size_t>(i), i))
        --i;
    }
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& t : transversal_) {
      std::uint64_t len = 0;
      for (const auto& u : t) len += u.has_value();
      if (len != 0 && o > UINT64_MAX / len) throw std::overflow_error("group order exceeds 64 bits");
      o *= len;
    }
    return o;
  }

 private:
  void add_level(int point) {
    base_.push_back(point);
    strong_.emplace_back();
    transversal_.emplace_back(n_);
  }

  void rebuild_orbit(std::size_t i) {
    auto& t = transversal_[i];
    t.assign(n_, std::nullopt);
    Permutation id(n_);
    std::iota(id.begin(), id.end(), 0);
    t[static_cast<std::size_t>(base_[i])] = id;
    std::deque<int> queue{base_[i]};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (const auto& s : strong_[i]) {
        const int y = s[static_cast<std::size_t>(x)];
        if (!t[static_cast<std::size_t>(y)]) {
          t[static_cast<std::size_t>(y)] = compose(*t[static_cast<std::size_t>(x)], s);
          queue.push_back(y);
        }
      }
    }
  }

  // Sifts h through levels from..end. Returns the residue and the level at
  // which it dropped out (base size if it passed every level).
  std::pair<Permutation, std::size_t> strip(Permutation h, std::size_t from) const {
    for (std::size_t i = from; i < base_.size(); ++i) {
      const auto& u = transversal_[i][static_cast<std::size_t>(h[static_cast<std::size_t>(base_[i])])];
      if (!u) return {std::move(h), i};
      h = compose(h, inverse(*u));
    }
    return {std::move(h), base_.size()};
  }

  // Tests every Schreier generator of level i. On the first one that does
  // not sift, extends the chain, sets `next` to the level to resume from
  // and returns true.
  bool close_level(std::size_t i, int& next) {
    for (std::size_t beta = 0; beta < n_; ++beta) {
      if (!transversal_[i][beta]) continue;
      const auto gens = strong_[i];
      for (const auto& s : gens) {
        const auto image = static_cast<std::size_t>(s[beta]);
        Permutation h = compose(compose(*transversal_[i][beta], s), inverse(*transversal_[i][image]));
        auto [residue, level] = strip(std::move(h), i + 1);
        if (level == base_.size() && is_identity(residue)) continue;
        if (level == base_.size()) add_level(first_moved(residue));
        for (std::size_t l = i + 1; l <= level; ++l) {
          strong_[l].push_back(residue);
          rebuild_orbit(l);
        }
        next = static_cast<int>(level);
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<int> base_;
  std::vector<std::vector<Permutation>> strong_;
  std::vector<std::vector<std::optional<Permutation>>> transversal_;
};

}  // namespace

AutResult analyze(const IncidenceGraph& g) { return CanonicalSearch(g).run(); }

Certificate canonical_certificate(const IncidenceGraph& g) { return analyze(g).certificate; }

AutResult aut_order(const IncidenceGraph& g) { return analyze(g); }

std::uint64_t schreier_sims_order(std::size_t degree, const std::vector<Permutation>& generators) {
  StabilizerChain chain(degree);
  chain.build(generators);
  return chain.order();
}

bool are_isomorphic(const IncidenceMatrix& m1, const IncidenceMatrix& m2, bool allow_dual) {
  if (!(m1.params == m2.params)) throw std::invalid_argument("are_isomorphic: parameters differ");
  const auto c1 = canonical_certificate(IncidenceGraph(m1));
  if (c1 == canonical_certificate(IncidenceGraph(m2))) return true;
  return allow_dual && c1 == canonical_certificate(IncidenceGraph(transpose(m2)));
}

IncidenceMatrix relabel(const IncidenceMatrix& m, const Permutation& point_perm, const Permutation& line_perm) {
  IncidenceMatrix out;
  out.params = m.params;
  const std::size_t v = m.rows.size();
  out.rows.assign(v, BitRow(v));
  for (std::size_t r = 0; r < v; ++r)
    for (std::size_t c = 0; c < v; ++c)
      if (m.at(r, c)) out.rows[static_cast<std::size_t>(point_perm[r])].set(static_cast<std::size_t>(line_perm[c]));
  return out;
}

}  // namespace biplane
