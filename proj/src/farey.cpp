#include "modlift/farey.hpp"

#include <algorithm>
#include <array>
#include <list>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace modlift {

namespace {

struct V2 {
  Int a, b;
};

V2 vec(const SignedFareySymbol& s, std::size_t k) { return {s.num(k), s.den(k)}; }

Mat2 pair_raw(const V2& i0, const V2& i1, const V2& j0, const V2& j1) {
  return {j0.a * i0.b + j1.a * i1.b, -(i1.a * j1.a + i0.a * j0.a),
          i0.b * j0.b + i1.b * j1.b, -(i0.a * j0.b + i1.a * j1.b)};
}

Mat2 bullet_raw(const V2& x, const V2& y) {
  return {x.a * x.b + x.a * y.b + y.a * y.b, -(y.a * y.a + x.a * y.a + x.a * x.a),
          x.b * x.b + x.b * y.b + y.b * y.b, -(x.a * x.b + y.a * x.b + y.a * y.b)};
}

Mat2 circle_raw(const V2& x, const V2& y) {
  return {x.a * x.b + y.a * y.b, -(x.a * x.a + y.a * y.a),
          x.b * x.b + y.b * y.b, -(x.a * x.b + y.a * y.b)};
}

// sends 0 to x, oo to y, 1 to the mediant
Mat2 edge_matrix(const V2& x, const V2& y) { return {y.a, x.a, y.b, x.b}; }

bool order_three(const Mat2& g) { return (g * g * g).is_identity(); }

const Mat2 kU{1, -1, 1, 0};  // rotates the triangle (0, 1, oo)

}  // namespace

std::string Label::str() const {
  switch (kind) {
    case Pair: return (sign > 0 ? "+" : "-") + std::to_string(id);
    case Bullet: return sign > 0 ? "B+" : "B-";
    case Circle: return "O";
  }
  return "?";
}

Int SignedFareySymbol::num(std::size_t k) const {
  if (k == 0) return -1;
  if (k + 1 == cusps.size()) return 1;
  return cusps[k].p;
}

Int SignedFareySymbol::den(std::size_t k) const {
  if (k == 0 || k + 1 == cusps.size()) return 0;
  return cusps[k].q;
}

bool SignedFareySymbol::has_circle() const {
  return std::any_of(labels.begin(), labels.end(), [](const Label& l) { return l.kind == Label::Circle; });
}

Mat2 pairing_matrix(const SignedFareySymbol& sym, std::size_t i, std::size_t j) {
  if (i >= j) throw std::invalid_argument("pairing_matrix needs i < j");
  Mat2 g = pair_raw(vec(sym, i), vec(sym, i + 1), vec(sym, j), vec(sym, j + 1));
  return sym.labels[i].sign < 0 ? -g : g;
}

Mat2 bullet_matrix(const SignedFareySymbol& sym, std::size_t j) {
  Mat2 g = bullet_raw(vec(sym, j), vec(sym, j + 1));
  return sym.labels[j].sign < 0 ? -g : g;
}

Mat2 circle_matrix(const SignedFareySymbol& sym, std::size_t i) {
  return circle_raw(vec(sym, i), vec(sym, i + 1));
}

std::vector<std::string> validate(const SignedFareySymbol& sym) {
  std::vector<std::string> err;
  const std::size_t n = sym.labels.size();
  if (n < 2) err.push_back("a symbol needs at least two edges");
  if (sym.cusps.size() != n + 1) {
    err.push_back("expected " + std::to_string(n + 1) + " cusps, found " + std::to_string(sym.cusps.size()));
    return err;
  }
  if (n < 2) return err;
  if (!sym.cusps.front().is_infinity()) err.push_back("first cusp must be -oo");
  if (!sym.cusps.back().is_infinity()) err.push_back("last cusp must be oo");
  for (std::size_t k = 1; k < n; ++k)
    if (sym.cusps[k].is_infinity()) err.push_back("interior cusp " + std::to_string(k) + " is oo");
  if (!err.empty()) return err;
  if (sym.cusps[1].q != 1) err.push_back("first interior cusp " + sym.cusps[1].str() + " is not an integer");
  if (sym.cusps[n - 1].q != 1) err.push_back("last interior cusp " + sym.cusps[n - 1].str() + " is not an integer");
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Cusp &x = sym.cusps[k], &y = sym.cusps[k + 1];
    if (y.p * x.q - x.p * y.q != 1)
      err.push_back("unimodularity fails between " + x.str() + " and " + y.str());
  }
  std::map<int, std::vector<std::size_t>> ids;
  long bullets = 0, circles = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Label& l = sym.labels[k];
    if (l.kind == Label::Pair) {
      if (l.id <= 0) err.push_back("pairing id at edge " + std::to_string(k) + " must be positive");
      else ids[l.id].push_back(k);
    } else if (l.kind == Label::Bullet) {
      ++bullets;
      if (err.empty() && !order_three(bullet_matrix(sym, k)))
        err.push_back("bullet sign at edge " + std::to_string(k) + " gives order 6");
    } else {
      ++circles;
    }
  }
  for (const auto& [id, where] : ids) {
    if (where.size() != 2)
      err.push_back("pairing id " + std::to_string(id) + " occurs " + std::to_string(where.size()) + " times");
    else if (sym.labels[where[0]].sign != sym.labels[where[1]].sign)
      err.push_back("pairing id " + std::to_string(id) + " carries two signs");
  }
  if (err.empty() && 3 * (long(n) - 2) + bullets < 1) err.push_back("symbol encloses no area");
  if (err.empty() && n == 2 && circles == 2) err.push_back("two circles on one geodesic");
  return err;
}

std::vector<Generator> generators_from_symbol(const SignedFareySymbol& sym) {
  auto err = validate(sym);
  if (!err.empty()) throw std::invalid_argument("invalid Farey symbol: " + err.front());
  std::vector<Generator> gens;
  std::map<int, std::size_t> first;
  const std::size_t n = sym.labels.size();
  for (std::size_t k = 0; k < n; ++k)
    if (sym.labels[k].kind == Label::Pair && !first.count(sym.labels[k].id)) first[sym.labels[k].id] = k;
  for (std::size_t k = 0; k < n; ++k) {
    const Label& l = sym.labels[k];
    Generator g;
    g.edge = g.partner = static_cast<int>(k);
    if (l.kind == Label::Pair) {
      if (first[l.id] != k) continue;
      std::size_t j = k + 1;
      while (!(sym.labels[j].kind == Label::Pair && sym.labels[j].id == l.id)) ++j;
      g.partner = static_cast<int>(j);
      g.m = pairing_matrix(sym, k, j);
      g.kind = GenKind::Pair;
    } else if (l.kind == Label::Bullet) {
      g.m = bullet_matrix(sym, k);
      g.kind = GenKind::Bullet;
    } else {
      g.m = circle_matrix(sym, k);
      g.kind = GenKind::Circle;
    }
    gens.push_back(std::move(g));
  }
  return gens;
}

// ---------------------------------------------------------------- word reduction

namespace {

struct Overflow {};

template <class T>
int sgn_of(const T& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

// Machine integers stay far enough below 2^127 that one product and a sum cannot wrap.
constexpr __int128 kSmallBound = __int128(1) << 62;

inline void fit(const Int&) {}
inline void fit(const __int128& x) {
  if (x > kSmallBound || x < -kSmallBound) throw Overflow{};
}

template <class T>
struct Pt {
  T p, q;  // q > 0, or (1, 0) for infinity
  bool inf() const { return q == 0; }
  bool operator==(const Pt& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Pt& o) const { return !(*this == o); }
};

template <class T>
struct M2 {
  T a, b, c, d;
};

template <class T>
Pt<T> make_pt(T p, T q) {
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  fit(p);
  fit(q);
  return {std::move(p), std::move(q)};
}

// unimodular images of reduced fractions stay reduced
template <class T>
Pt<T> act(const M2<T>& m, const Pt<T>& x) {
  return make_pt<T>(m.a * x.p + m.b * x.q, m.c * x.p + m.d * x.q);
}

template <class T>
M2<T> mul(const M2<T>& x, const M2<T>& y) {
  M2<T> r{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  fit(r.a);
  fit(r.b);
  fit(r.c);
  fit(r.d);
  return r;
}

template <class T>
int cmp(const Pt<T>& x, const Pt<T>& y) {
  if (x.inf() || y.inf()) return int(x.inf()) - int(y.inf());
  return sgn_of<T>(x.p * y.q - y.p * x.q);
}

// which of the two arcs of P^1(R) cut out by u, v holds y
template <class T>
bool arc_side(const Pt<T>& y, const Pt<T>& u, const Pt<T>& v) {
  if (u.inf()) return cmp(y, v) > 0;
  if (v.inf()) return cmp(y, u) > 0;
  if (y.inf()) return false;
  bool uv = cmp(u, v) < 0;
  const Pt<T>& lo = uv ? u : v;
  const Pt<T>& hi = uv ? v : u;
  return cmp(y, lo) > 0 && cmp(y, hi) < 0;
}

template <class T>
using Tri = std::array<Pt<T>, 3>;

// t lies on the far side of the geodesic (u, v) from the vertex w
template <class T>
bool beyond_edge(const Pt<T>& u, const Pt<T>& v, const Pt<T>& w, const Tri<T>& t) {
  bool sw = arc_side(w, u, v);
  bool any = false;
  for (const auto& y : t) {
    if (y == u || y == v) continue;
    if (arc_side(y, u, v) == sw) return false;
    any = true;
  }
  return any;
}

template <class T>
bool same_tri(const Tri<T>& a, const Tri<T>& b) {
  for (const auto& x : a)
    if (x != b[0] && x != b[1] && x != b[2]) return false;
  return true;
}

bool convert(const Int& x, Int& out) {
  out = x;
  return true;
}

bool convert(const Int& x, __int128& out) {
  if (!x.fits_slong_p()) return false;
  out = x.get_si();
  return out <= kSmallBound / 4 && out >= -kSmallBound / 4;
}

template <class T>
bool convert(const Mat2& m, M2<T>& out) {
  return convert(m.a, out.a) && convert(m.b, out.b) && convert(m.c, out.c) && convert(m.d, out.d);
}

template <class T>
bool convert(const Cusp& x, Pt<T>& out) {
  return convert(x.p, out.p) && convert(x.q, out.q);
}

}  // namespace

template <class T>
struct ReduceGeometry {
  struct Edge {
    Pt<T> u, v, inner, beyond;
    int gen = -1, exp = 1;  // generator sending F across this edge
    bool bullet = false;
    Pt<T> out_u, out_v, out_opp;  // bullet: image of the edge under the generator
  };
  std::vector<Edge> edges;
  std::vector<M2<T>> g, ginv;
  Tri<T> home;
  int home_bullet = -1;  // edge whose bullet triangle is home when there is no full triangle

  // false when some entry does not fit T
  bool load(const GeneratorSet& gs, const std::vector<int>& exps, const std::vector<std::array<Cusp, 3>>& outs,
            const std::array<Cusp, 3>& home_c, int hb) {
    const auto& sym = gs.sym_;
    const std::size_t n = sym.labels.size();
    edges.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      Edge& e = edges[k];
      Cusp inner(sym.num(k + 1) - sym.num(k), sym.den(k + 1) - sym.den(k));
      Cusp beyond(sym.num(k) + sym.num(k + 1), sym.den(k) + sym.den(k + 1));
      if (!convert(sym.cusps[k], e.u) || !convert(sym.cusps[k + 1], e.v) || !convert(inner, e.inner) ||
          !convert(beyond, e.beyond))
        return false;
      e.gen = gs.edge_gen_[k];
      e.exp = exps[k];
      e.bullet = sym.labels[k].kind == Label::Bullet;
      if (e.bullet &&
          (!convert(outs[k][0], e.out_u) || !convert(outs[k][1], e.out_v) || !convert(outs[k][2], e.out_opp)))
        return false;
    }
    for (const auto& gen : gs.gens_) {
      M2<T> x, xi;
      if (!convert(gen.m, x) || !convert(mat_inv(gen.m), xi)) return false;
      g.push_back(x);
      ginv.push_back(xi);
    }
    for (int i = 0; i < 3; ++i)
      if (!convert(home_c[i], home[i])) return false;
    home_bullet = hb;
    return true;
  }

  Tri<T> image(const M2<T>& m) const { return {act(m, home[0]), act(m, home[1]), act(m, home[2])}; }

  int find_edge(const Tri<T>& t) const {
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (beyond_edge(edges[k].u, edges[k].v, edges[k].inner, t)) return static_cast<int>(k);
    return -1;
  }

  ReducedWord reduce(M2<T> cur) const {
    ReducedWord rw;
    auto pm_one = [](const M2<T>& c) { return c.b == 0 && c.c == 0 && c.a == c.d && (c.a == 1 || c.a == -1); };
    auto finish = [&](const M2<T>& c) {
      if (pm_one(c)) {
        rw.member = true;
        rw.sign = sgn_of<T>(c.a);
      } else {
        rw.member = false;
        rw.word.clear();
      }
      return rw;
    };
    for (std::size_t step = 0; step < 50000000; ++step) {
      Tri<T> t = image(cur);
      int k = find_edge(t);
      if (k < 0) return finish(cur);
      const Edge& e = edges[k];
      if (!e.bullet) {
        cur = mul(e.exp > 0 ? ginv[e.gen] : g[e.gen], cur);
        rw.word.push_back({e.gen, e.exp});
        continue;
      }
      if (same_tri<T>(t, {e.u, e.v, e.beyond})) {
        if (home_bullet != k) return ReducedWord{};  // a full triangle cannot land on a bullet triangle
        if (pm_one(cur)) return finish(cur);
        M2<T> c1 = mul(ginv[e.gen], cur);
        if (pm_one(c1)) {
          rw.word.push_back({e.gen, 1});
          return finish(c1);
        }
        M2<T> c2 = mul(g[e.gen], cur);
        if (pm_one(c2)) rw.word.push_back({e.gen, -1});
        return finish(c2);
      }
      if (beyond_edge(e.out_u, e.out_v, e.out_opp, t)) {
        cur = mul(ginv[e.gen], cur);
        rw.word.push_back({e.gen, 1});
      } else {
        cur = mul(g[e.gen], cur);
        rw.word.push_back({e.gen, -1});
      }
    }
    throw std::runtime_error("word reduction did not terminate");
  }
};

GeneratorSet::GeneratorSet(const SignedFareySymbol& sym) : sym_(sym), gens_(generators_from_symbol(sym)) {
  const std::size_t n = sym_.labels.size();
  edge_gen_.assign(n, -1);
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    edge_gen_[gens_[g].edge] = static_cast<int>(g);
    edge_gen_[gens_[g].partner] = static_cast<int>(g);
  }
  std::vector<int> exps(n, 1);
  std::vector<std::array<Cusp, 3>> outs(n);
  for (const Generator& gen : gens_) {
    const Mat2& G = gen.m;
    const Cusp &ui = sym_.cusps[gen.edge], &vi = sym_.cusps[gen.edge + 1];
    if (gen.kind == GenKind::Pair) {
      const Cusp &uj = sym_.cusps[gen.partner], &vj = sym_.cusps[gen.partner + 1];
      if (act_on_cusp(G, uj) == vi && act_on_cusp(G, vj) == ui) {
        exps[gen.partner] = -1;  // G carries edge j onto edge i
      } else if (act_on_cusp(G, ui) == vj && act_on_cusp(G, vi) == uj) {
        exps[gen.edge] = -1;
      } else {
        throw std::invalid_argument("pairing generator does not carry edge " + std::to_string(gen.partner) +
                                    " onto edge " + std::to_string(gen.edge));
      }
    } else if (gen.kind == GenKind::Bullet) {
      std::size_t k = gen.edge;
      Cusp beyond(sym_.num(k) + sym_.num(k + 1), sym_.den(k) + sym_.den(k + 1));
      Cusp ou = act_on_cusp(G, ui), ov = act_on_cusp(G, vi), opp;
      for (const Cusp& c : {ui, vi, beyond})
        if (c != ou && c != ov) opp = c;
      outs[k] = {ou, ov, opp};
    }
  }
  std::array<Cusp, 3> home;
  int hb = -1;
  if (n >= 3) {
    const Cusp& x1 = sym_.cusps[1];
    home = {Cusp::infinity(), x1, Cusp(x1.p + 1, 1)};
  } else {
    for (std::size_t k = 0; k < n && hb < 0; ++k)
      if (sym_.labels[k].kind == Label::Bullet) hb = static_cast<int>(k);
    if (hb < 0) throw std::invalid_argument("two-edge symbol without a bullet");
    home = {sym_.cusps[hb], sym_.cusps[hb + 1],
            Cusp(sym_.num(hb) + sym_.num(hb + 1), sym_.den(hb) + sym_.den(hb + 1))};
  }
  auto big = std::make_shared<ReduceGeometry<Int>>();
  big->load(*this, exps, outs, home, hb);
  big_ = big;
  auto small = std::make_shared<ReduceGeometry<__int128>>();
  if (small->load(*this, exps, outs, home, hb)) small_ = small;
}

ReducedWord GeneratorSet::reduce(const Mat2& m) const {
  M2<__int128> s;
  if (small_ && convert(m, s)) {
    try {
      return small_->reduce(s);
    } catch (const Overflow&) {
    }
  }
  M2<Int> b;
  convert(m, b);
  return big_->reduce(b);
}

Mat2 GeneratorSet::eval(const Word& w) const {
  Mat2 r;
  for (const auto& l : w) r = r * (l.exp > 0 ? gens_[l.gen].m : mat_inv(gens_[l.gen].m));
  return r;
}

ReducedWord reduce_to_word(const GeneratorSet& gens, const Mat2& m) { return gens.reduce(m); }

// ---------------------------------------------------------------- construction

namespace {

enum class EK { Open, Pair, Bullet, Circle };

struct BEdge;
struct BEdge {
  V2 L, R;
  EK kind = EK::Open;
  int sign = 1;
  BEdge* partner = nullptr;
  std::uint64_t k1 = 0, k2 = 0;
  std::list<BEdge>::iterator self{};
};

bool vec_less(const V2& x, const V2& y) {
  // left endpoints only: -oo = (-1, 0) is below everything
  if (x.b == 0) return y.b != 0;
  if (y.b == 0) return false;
  return x.a * y.b < y.a * x.b;
}

struct LeftLess {
  bool operator()(const BEdge* x, const BEdge* y) const { return vec_less(x->L, y->L); }
};

// breadth first on the Farey tree: small mediant denominators first, then left to right
struct SplitOrder {
  bool operator()(const BEdge* x, const BEdge* y) const {
    Int dx = x->L.b + x->R.b, dy = y->L.b + y->R.b;
    if (dx != dy) return dx < dy;
    return vec_less(x->L, y->L);
  }
};

}  // namespace

namespace {

// Translate so the first finite cusp is 0. This is conjugation by a power of T, so it is only
// kept when every generator of the translated symbol still lies in the group with its sign.
SignedFareySymbol shift_to_zero(const SignedFareySymbol& sym, const MembershipOracle& oracle) {
  const Int k = sym.cusps[1].p;
  if (k == 0) return sym;
  SignedFareySymbol t = sym;
  for (std::size_t i = 1; i + 1 < t.cusps.size(); ++i) t.cusps[i] = Cusp(t.cusps[i].p - k * t.cusps[i].q, t.cusps[i].q);
  for (const auto& g : generators_from_symbol(t)) {
    bool ok = g.kind == GenKind::Circle ? oracle.proj_contains(g.m) : oracle.contains(g.m);
    if (!ok) return sym;
  }
  return t;
}

}  // namespace

SignedFareySymbol build_farey(const MembershipOracle& oracle, const BuildOptions& opt) {
  std::list<BEdge> edges;
  std::set<BEdge*, SplitOrder> open;
  std::unordered_multimap<std::uint64_t, BEdge*> by_k1;
  std::vector<Mat2> bullet_h, circle_h;
  const bool keyed = static_cast<bool>(oracle.coset_key);
  const bool minus_one = oracle.contains_minus_one();
  const Mat2 S = Mat2::S();

  auto add_open = [&](BEdge* e) {
    open.insert(e);
    if (keyed) {
      Mat2 h = edge_matrix(e->L, e->R);
      e->k1 = oracle.coset_key(h);
      e->k2 = oracle.coset_key(h * S);
      by_k1.emplace(e->k1, e);
    }
  };
  auto drop_open = [&](BEdge* e) {
    open.erase(e);
    if (keyed) {
      auto [lo, hi] = by_k1.equal_range(e->k1);
      for (auto it = lo; it != hi; ++it)
        if (it->second == e) {
          by_k1.erase(it);
          break;
        }
    }
  };

  auto try_pair = [&](BEdge* e, BEdge* f) {
    if (e == f || f->kind != EK::Open) return false;
    BEdge* x = vec_less(e->L, f->L) ? e : f;
    BEdge* y = x == e ? f : e;
    Mat2 g = pair_raw(x->L, x->R, y->L, y->R);
    if (g.is_pm_identity() || !oracle.proj_contains(g)) return false;
    int sign = oracle.contains(g) ? 1 : -1;
    e->kind = f->kind = EK::Pair;
    e->sign = f->sign = sign;
    e->partner = f;
    f->partner = e;
    drop_open(e);
    drop_open(f);
    return true;
  };

  auto process = [&](BEdge* e) {
    if (e->kind != EK::Open) return;
    Mat2 h = edge_matrix(e->L, e->R);
    Mat2 hinv = mat_inv(h);
    Mat2 b = bullet_raw(e->L, e->R);
    if (oracle.proj_contains(b)) {
      bool fresh = true;
      for (const Mat2& hb : bullet_h) {
        Mat2 r = Mat2::identity();
        for (int k = 0; k < 3 && fresh; ++k, r = r * kU)
          if (oracle.proj_contains(hb * r * hinv)) fresh = false;
      }
      if (fresh) {
        e->kind = EK::Bullet;
        e->sign = order_three(b) ? 1 : -1;
        bullet_h.push_back(h);
        drop_open(e);
        return;
      }
    }
    if (minus_one && oracle.proj_contains(circle_raw(e->L, e->R))) {
      bool fresh = true;
      for (const Mat2& hc : circle_h)
        if (oracle.proj_contains(hc * hinv) || oracle.proj_contains(hc * S * hinv)) fresh = false;
      if (fresh) {
        e->kind = EK::Circle;
        circle_h.push_back(h);
        drop_open(e);
        return;
      }
    }
    if (keyed) {
      std::vector<BEdge*> cand;
      auto [lo, hi] = by_k1.equal_range(e->k2);
      for (auto it = lo; it != hi; ++it) cand.push_back(it->second);
      std::sort(cand.begin(), cand.end(), LeftLess{});
      for (BEdge* f : cand)
        if (try_pair(e, f)) return;
    } else {
      std::vector<BEdge*> cand(open.begin(), open.end());
      for (BEdge* f : cand)
        if (try_pair(e, f)) return;
    }
  };

  edges.push_back({{-1, 0}, {0, 1}});
  edges.push_back({{0, 1}, {1, 0}});
  std::vector<BEdge*> pending;
  for (auto it = edges.begin(); it != edges.end(); ++it) {
    BEdge& e = *it;
    e.self = it;
    add_open(&e);
    pending.push_back(&e);
  }
  std::size_t splits = 0;
  for (;;) {
    for (BEdge* e : pending) process(e);
    pending.clear();
    if (open.empty()) break;
    if (edges.size() >= opt.max_edges)
      throw std::runtime_error("Farey construction exceeded " + std::to_string(opt.max_edges) + " edges");
    BEdge* e = *open.begin();
    auto it = e->self;
    V2 mid{e->L.a + e->R.a, e->L.b + e->R.b};
    drop_open(e);
    BEdge left{e->L, mid}, right{mid, e->R};
    auto pos = edges.erase(it);
    pos = edges.insert(pos, right);
    pos->self = pos;
    BEdge* r = &*pos;
    pos = edges.insert(pos, left);
    pos->self = pos;
    BEdge* l = &*pos;
    add_open(l);
    add_open(r);
    pending = {l, r};
    if (opt.progress && ++splits % 1000 == 0) opt.progress(edges.size(), open.size());
  }

  SignedFareySymbol sym;
  sym.cusps.push_back(Cusp::infinity());
  std::map<const BEdge*, int> ids;
  int next_id = 1;
  for (const BEdge& e : edges) {
    sym.cusps.emplace_back(e.R.a, e.R.b);
    switch (e.kind) {
      case EK::Pair: {
        auto f = ids.find(e.partner);
        int id = f != ids.end() ? f->second : next_id++;
        ids[&e] = id;
        sym.labels.push_back(Label::pair(id, e.sign));
        break;
      }
      case EK::Bullet: sym.labels.push_back(Label::bullet(e.sign)); break;
      case EK::Circle: sym.labels.push_back(Label::circle()); break;
      case EK::Open: throw std::logic_error("open edge after construction");
    }
  }
  if (opt.progress && splits >= 1000) opt.progress(edges.size(), 0);
  return shift_to_zero(sym, oracle);
}

// ---------------------------------------------------------------- invariants

EllipticCounts counts(const SignedFareySymbol& sym) {
  EllipticCounts c;
  for (const auto& l : sym.labels) {
    if (l.kind == Label::Circle) ++c.nu2;
    if (l.kind == Label::Bullet) ++c.nu3;
  }
  return c;
}

long symbol_index(const SignedFareySymbol& sym) {
  return 3 * (static_cast<long>(sym.labels.size()) - 2) + counts(sym).nu3;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> up;
  explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  std::size_t find(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void join(std::size_t x, std::size_t y) { up[find(x)] = find(y); }
};

bool rep_less(const Cusp& x, const Cusp& y) {
  if (x.q != y.q) return x.q < y.q;
  Int ax = abs(x.p), ay = abs(y.p);
  if (ax != ay) return ax < ay;
  return x.p < y.p;
}

}  // namespace

std::vector<CuspClass> cusp_classes(const SignedFareySymbol& sym) {
  const std::size_t n = sym.labels.size();
  UnionFind uf(n + 1);
  uf.join(0, n);
  std::map<int, std::size_t> first;
  for (std::size_t k = 0; k < n; ++k) {
    const Label& l = sym.labels[k];
    if (l.kind == Label::Pair) {
      auto it = first.find(l.id);
      if (it == first.end()) {
        first[l.id] = k;
      } else {
        std::size_t i = it->second, j = k;
        uf.join(i, j + 1);
        uf.join(i + 1, j);
      }
    } else {
      uf.join(k, k + 1);
    }
  }
  // widths: one per triangle corner, plus one per bullet (two half corners)
  std::vector<long> corner(n + 1, 0);
  std::map<std::pair<Int, Int>, std::size_t> where;
  for (std::size_t k = 1; k < n; ++k) where[{sym.cusps[k].p, sym.cusps[k].q}] = k;
  auto idx = [&](const Int& p, const Int& q) {
    auto it = where.find({p, q});
    if (it == where.end()) throw std::logic_error("triangle vertex outside the polygon");
    return it->second;
  };
  if (n >= 3) {
    long lo = to_long(sym.cusps[1].p), hi = to_long(sym.cusps[n - 1].p);
    for (long k = lo; k < hi; ++k) {
      ++corner[idx(k, 1)];
      ++corner[idx(k + 1, 1)];
      ++corner[n];
    }
    for (std::size_t k = 1; k < n; ++k) {
      const Cusp& v = sym.cusps[k];
      if (v.q == 1) continue;
      // Stern-Brocot parents a/b < v < (p-a)/(q-b), where p*b - a*q = 1
      Int u, w;
      ext_gcd(v.p, v.q, u, w);
      Int b = u % v.q;
      if (b <= 0) b += v.q;
      Int a = (v.p * b - 1) / v.q;
      ++corner[k];
      ++corner[idx(a, b)];
      ++corner[idx(v.p - a, v.q - b)];
    }
  }
  std::map<std::size_t, CuspClass> byroot;
  for (std::size_t k = 1; k <= n; ++k) {
    auto& c = byroot[uf.find(k)];
    c.members.push_back(k);
    c.width += corner[k];
  }
  byroot[uf.find(0)].members.insert(byroot[uf.find(0)].members.begin(), 0);
  for (std::size_t k = 0; k < n; ++k)
    if (sym.labels[k].kind == Label::Bullet) byroot[uf.find(k)].width += 1;
  std::vector<CuspClass> out;
  for (auto& [root, c] : byroot) {
    c.rep = sym.cusps[c.members.front()];
    for (std::size_t k : c.members)
      if (rep_less(sym.cusps[k], c.rep)) c.rep = sym.cusps[k];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CuspClass& x, const CuspClass& y) { return rep_less(x.rep, y.rep); });
  return out;
}

long min_generators(const SignedFareySymbol& sym) {
  long mu = 0;
  for (const auto& c : cusp_classes(sym)) mu += c.width;
  auto ec = counts(sym);
  long six_delta = mu + 6 + 3 * ec.nu2 + 2 * ec.nu3;
  if (six_delta % 6 != 0) throw std::runtime_error("minimal generator count is not an integer");
  return six_delta / 6;
}

// ---------------------------------------------------------------- text format

std::string serialize_symbol(const SignedFareySymbol& sym) {
  std::ostringstream os;
  os << "farey-symbol v1\ncusps";
  for (std::size_t k = 0; k < sym.cusps.size(); ++k) {
    if (k == 0) os << " -oo";
    else if (k + 1 == sym.cusps.size()) os << " oo";
    else os << ' ' << sym.cusps[k].str();
  }
  os << "\nlabels";
  for (const auto& l : sym.labels) os << ' ' << l.str();
  os << '\n';
  return os.str();
}

SignedFareySymbol parse_symbol(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto fail = [](const std::string& why) { throw std::invalid_argument("cannot parse Farey symbol: " + why); };
  if (!std::getline(is, line) || line != "farey-symbol v1") fail("missing or unknown version line");
  SignedFareySymbol sym;
  bool have_cusps = false, have_labels = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key, tok;
    ls >> key;
    if (key == "cusps") {
      have_cusps = true;
      while (ls >> tok) {
        if (tok == "-oo" || tok == "oo") {
          sym.cusps.push_back(Cusp::infinity());
          continue;
        }
        auto slash = tok.find('/');
        Int p, q = 1;
        if (p.set_str(tok.substr(0, slash), 10) != 0) fail("bad cusp '" + tok + "'");
        if (slash != std::string::npos && q.set_str(tok.substr(slash + 1), 10) != 0) fail("bad cusp '" + tok + "'");
        if (q == 0) fail("bad cusp '" + tok + "'");
        Cusp c(p, q);
        if (c.p != p || c.q != q) fail("cusp '" + tok + "' is not reduced");
        sym.cusps.push_back(c);
      }
    } else if (key == "labels") {
      have_labels = true;
      while (ls >> tok) {
        if (tok == "O") sym.labels.push_back(Label::circle());
        else if (tok == "B+") sym.labels.push_back(Label::bullet(1));
        else if (tok == "B-") sym.labels.push_back(Label::bullet(-1));
        else if (tok.size() >= 2 && (tok[0] == '+' || tok[0] == '-') &&
                 std::all_of(tok.begin() + 1, tok.end(), ::isdigit) && tok.size() < 10)
          sym.labels.push_back(Label::pair(std::stoi(tok.substr(1)), tok[0] == '+' ? 1 : -1));
        else fail("bad label '" + tok + "'");
      }
    } else {
      fail("unknown field '" + key + "'");
    }
  }
  if (!have_cusps || !have_labels) fail("missing cusps or labels");
  return sym;
}

SignedFareySymbol symbol_for(const GroupSpec& spec, const BuildOptions& opt) {
  if (!spec.is_family()) return *spec.symbol;
  return build_farey(family_oracle(spec), opt);
}

}  // namespace modlift
