#include "kurihara/modsym.hpp"

#include <algorithm>

#include "kurihara/curve.hpp"
#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara {

using nt::i64;
using nt::u64;

namespace {

i64 mod(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

u64 gcd3(u64 a, u64 b, u64 c) { return nt::gcd(nt::gcd(a, b), c); }

}  // namespace

P1List::P1List(u64 N) : N_(N) {
  if (N == 0) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  if (N == 1) {
    reps_.push_back({0, 0});
    index_[0] = 0;
    return;
  }
  reps_.push_back({0, 1});
  for (u64 g : nt::divisors(N)) {
    if (g == N) continue;
    for (u64 v = 0; v < N; ++v) {
      if (gcd3(g, v, N) != 1) continue;
      auto n = normalize(static_cast<i64>(g), static_cast<i64>(v));
      if (n && n->first == g && n->second == v) reps_.push_back(*n);
    }
  }
  std::sort(reps_.begin(), reps_.end());
  for (std::size_t i = 0; i < reps_.size(); ++i) index_[reps_[i].first * N + reps_[i].second] = i;
}

std::optional<std::pair<u64, u64>> P1List::normalize(i64 c, i64 d) const {
  const i64 N = static_cast<i64>(N_);
  if (N == 1) return std::pair<u64, u64>{0, 0};
  i64 u = mod(c, N), v = mod(d, N);
  if (u == 0) {
    if (nt::gcd(static_cast<u64>(v), N_) == 1) return std::pair<u64, u64>{0, 1};
    return std::nullopt;
  }
  const auto xg = nt::xgcd(u, N);
  const i64 g = xg.g;
  i64 s = mod(xg.s, N);
  if (nt::gcd(static_cast<u64>(g), static_cast<u64>(v)) != 1) return std::nullopt;
  if (g != 1) {
    const i64 step = N / g;
    while (nt::gcd(static_cast<u64>(s), N_) != 1) s = (s + step) % N;
  }
  u = g;
  v = static_cast<i64>(nt::mulmod(static_cast<u64>(s), static_cast<u64>(v), N_));
  i64 min_v = v;
  if (g != 1) {
    const i64 Ng = N / g;
    const i64 vNg = static_cast<i64>(nt::mulmod(static_cast<u64>(v), static_cast<u64>(Ng), N_));
    i64 t = 1;
    for (i64 k = 2; k <= g; ++k) {
      v = (v + vNg) % N;
      t = (t + Ng) % N;
      if (v < min_v && nt::gcd(static_cast<u64>(t), N_) == 1) min_v = v;
    }
  }
  return std::pair<u64, u64>{static_cast<u64>(u), static_cast<u64>(min_v)};
}

std::optional<std::size_t> P1List::index(i64 c, i64 d) const {
  auto n = normalize(c, d);
  if (!n) return std::nullopt;
  auto it = index_.find(n->first * N_ + n->second);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t P1List::fingerprint() const {
  u64 h = 1469598103934665603ULL;
  auto mix = [&h](u64 x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(N_);
  for (const auto& [u, v] : reps_) {
    mix(u);
    mix(v);
  }
  return h;
}

std::vector<Mat2> heilbronn_merel(u64 q) {
  std::vector<Mat2> out;
  const i64 Q = static_cast<i64>(q);
  for (i64 a = 1; a <= Q; ++a) {
    for (i64 d = 1; a + d <= Q + 1; ++d) {
      const i64 bc = a * d - Q;
      if (bc < 0) continue;
      if (bc == 0) {
        for (i64 c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        for (i64 b = 1; b < a; ++b) out.push_back({a, b, 0, d});
        continue;
      }
      for (i64 b = 1; b < a; ++b) {
        if (bc % b != 0) continue;
        const i64 c = bc / b;
        if (c >= 1 && c < d) out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

namespace {

// Cusp a/c with gcd(a, c) = 1 and c >= 0; infinity is 1/0.
struct Cusp {
  i64 a, c;
};

Cusp make_cusp(i64 a, i64 c) {
  if (c < 0) {
    a = -a;
    c = -c;
  }
  if (c == 0) return {1, 0};
  const i64 g = nt::gcd_signed(a, c);
  return {a / g, c / g};
}

bool cusps_equivalent(const Cusp& x, const Cusp& y, u64 N) {
  auto s_of = [](const Cusp& z) -> i64 {
    if (z.c == 0) return 1;
    if (z.c == 1) return 0;
    return static_cast<i64>(*nt::inverse_mod(nt::reduce(z.a, static_cast<u64>(z.c)), static_cast<u64>(z.c)));
  };
  const u64 M = nt::gcd(static_cast<u64>(x.c) * static_cast<u64>(y.c), N);
  const i64 lhs = s_of(x) * y.c - s_of(y) * x.c;
  return nt::reduce(lhs, M) == 0;
}

}  // namespace

ManinSymbolSpace ManinSymbolSpace::build(u64 N) {
  ManinSymbolSpace sp;
  sp.p1_ = std::make_shared<const P1List>(N);
  const P1List& p1 = *sp.p1_;
  const std::size_t n = p1.size();
  auto act = [&](std::size_t i, i64 ma, i64 mb, i64 mc, i64 md) {
    const i64 c = static_cast<i64>(p1[i].first), d = static_cast<i64>(p1[i].second);
    return *p1.index(c * ma + d * mc, c * mb + d * md);
  };
  // Two-term relations x + xS = 0.
  std::vector<int> gen(n, -2), sign(n, 0);
  std::vector<std::size_t> gen_rep;
  for (std::size_t i = 0; i < n; ++i) {
    if (gen[i] != -2) continue;
    const std::size_t j = act(i, 0, -1, 1, 0);
    if (j == i) {
      gen[i] = -1;
      continue;
    }
    const int k = static_cast<int>(gen_rep.size());
    gen_rep.push_back(i);
    gen[i] = k;
    sign[i] = 1;
    gen[j] = k;
    sign[j] = -1;
  }
  const std::size_t n2 = gen_rep.size();
  // Three-term relations x + xR + xR^2 = 0.
  std::vector<std::vector<mpq_class>> rows;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    const std::size_t j = act(i, 0, -1, 1, -1);
    const std::size_t k = act(j, 0, -1, 1, -1);
    seen[i] = seen[j] = seen[k] = true;
    std::vector<mpq_class> row(n2);
    for (std::size_t x : {i, j, k}) {
      if (gen[x] >= 0) row[static_cast<std::size_t>(gen[x])] += sign[x];
    }
    bool nonzero = false;
    for (const auto& v : row) nonzero = nonzero || v != 0;
    if (nonzero) rows.push_back(std::move(row));
  }
  linalg::QMatrix rel(rows.size(), n2);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < n2; ++c) rel(r, c) = rows[r][c];
  }
  const auto pivots = linalg::rref(rel);
  std::vector<int> pivot_row(n2, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<int>(r);
  std::vector<std::size_t> free_cols;
  std::vector<int> free_pos(n2, -1);
  for (std::size_t c = 0; c < n2; ++c) {
    if (pivot_row[c] < 0) {
      free_pos[c] = static_cast<int>(free_cols.size());
      free_cols.push_back(c);
    }
  }
  const std::size_t r = free_cols.size();
  std::vector<std::vector<mpq_class>> gen_coords(n2, std::vector<mpq_class>(r));
  for (std::size_t c = 0; c < n2; ++c) {
    if (free_pos[c] >= 0) {
      gen_coords[c][static_cast<std::size_t>(free_pos[c])] = 1;
    } else {
      const std::size_t row = static_cast<std::size_t>(pivot_row[c]);
      for (std::size_t f = 0; f < r; ++f) gen_coords[c][f] = -rel(row, free_cols[f]);
    }
  }
  sp.coords_.assign(n, std::vector<mpq_class>(r));
  for (std::size_t i = 0; i < n; ++i) {
    if (gen[i] < 0) continue;
    const auto& gc = gen_coords[static_cast<std::size_t>(gen[i])];
    for (std::size_t f = 0; f < r; ++f) sp.coords_[i][f] = sign[i] * gc[f];
  }
  for (std::size_t c : free_cols) sp.basis_reps_.push_back(gen_rep[c]);

  // Boundary: (c : d) = g{0, oo} = {b/d, a/c} maps to [a/c] - [b/d].
  std::vector<Cusp> cusps;
  auto cusp_index = [&](const Cusp& z) {
    for (std::size_t i = 0; i < cusps.size(); ++i) {
      if (cusps_equivalent(cusps[i], z, N)) return i;
    }
    cusps.push_back(z);
    return cusps.size() - 1;
  };
  std::vector<std::vector<std::pair<std::size_t, int>>> bd(r);
  for (std::size_t b = 0; b < r; ++b) {
    const auto [u, v] = p1[sp.basis_reps_[b]];
    i64 c = static_cast<i64>(u), d = static_cast<i64>(v);
    if (N == 1) {
      c = 0;
      d = 1;
    }
    if (c == 0) d = 1;
    while (nt::gcd_signed(c, d) != 1) d += static_cast<i64>(N);
    const auto xg = nt::xgcd(d, c);  // x d + y c = 1, so a = x, b = -y
    const i64 a = xg.s, bb = -xg.t;
    bd[b].push_back({cusp_index(make_cusp(a, c)), 1});
    bd[b].push_back({cusp_index(make_cusp(bb, d)), -1});
  }
  sp.cusp_count_ = cusps.size();
  sp.boundary_ = linalg::QMatrix(r, cusps.size());
  for (std::size_t b = 0; b < r; ++b) {
    for (auto [ci, s] : bd[b]) sp.boundary_(b, ci) += s;
  }
  sp.cuspidal_dim_ = r - linalg::rank(sp.boundary_);
  return sp;
}

std::vector<mpq_class> ManinSymbolSpace::coordinates_of(i64 c, i64 d) const {
  auto i = p1_->index(c, d);
  if (!i) return std::vector<mpq_class>(dimension());
  return coords_[*i];
}

linalg::QMatrix ManinSymbolSpace::star() const {
  const std::size_t r = dimension();
  linalg::QMatrix m(r, r);
  for (std::size_t b = 0; b < r; ++b) {
    const auto [u, v] = (*p1_)[basis_reps_[b]];
    const auto img = coordinates_of(-static_cast<i64>(u), static_cast<i64>(v));
    for (std::size_t j = 0; j < r; ++j) m(b, j) = img[j];
  }
  return m;
}

linalg::QMatrix ManinSymbolSpace::hecke(u64 q) const {
  if (!nt::is_prime(q)) throw Error(ErrorKind::InvalidArgument, "Hecke index must be prime");
  if (level() % q == 0) throw Error(ErrorKind::BadLevelPrime, std::to_string(q) + " divides the level");
  const auto mats = heilbronn_merel(q);
  const std::size_t r = dimension();
  linalg::QMatrix m(r, r);
  for (std::size_t b = 0; b < r; ++b) {
    const auto [u, v] = (*p1_)[basis_reps_[b]];
    const i64 c = static_cast<i64>(u), d = static_cast<i64>(v);
    for (const auto& h : mats) {
      auto idx = p1_->index(c * h.a + d * h.c, c * h.b + d * h.d);
      if (!idx) continue;
      const auto& img = coords_[*idx];
      for (std::size_t j = 0; j < r; ++j) {
        if (img[j] != 0) m(b, j) += img[j];
      }
    }
  }
  return m;
}

namespace {

// Columns of `basis` span a subspace; returns a basis of its intersection
// with ker(M).
std::vector<std::vector<mpq_class>> restrict_kernel(const linalg::QMatrix& M,
                                                    const std::vector<std::vector<mpq_class>>& basis) {
  if (basis.empty()) return {};
  const std::size_t r = M.rows();
  const auto B = linalg::QMatrix::from_columns(basis, r);
  const auto ker = linalg::kernel(M * B);
  std::vector<std::vector<mpq_class>> out;
  for (const auto& y : ker) {
    std::vector<mpq_class> v(r);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (y[j] == 0) continue;
      for (std::size_t i = 0; i < r; ++i) v[i] += basis[j][i] * y[j];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

EigenDuals cut_eigenspace(const ManinSymbolSpace& space, const ApTable& aps, u64 max_q) {
  const std::size_t r = space.dimension();
  const auto I = linalg::QMatrix::identity(r);
  const auto star = space.star();
  auto plus = linalg::kernel(star - I);
  auto minus = linalg::kernel(star + I);
  EigenDuals out;
  std::string tried;
  for (u64 q = 2; q <= max_q && (plus.size() > 1 || minus.size() > 1 || out.primes_used.empty()); ++q) {
    if (!nt::is_prime(q) || space.level() % q == 0) continue;
    const auto T = space.hecke(q);
    const auto M = T - I.scaled(mpq_class(aps.ap(q)));
    plus = restrict_kernel(M, plus);
    minus = restrict_kernel(M, minus);
    out.primes_used.push_back(q);
    tried += (tried.empty() ? "" : ",") + std::to_string(q);
    if (plus.empty() || minus.empty()) break;
  }
  if (plus.size() != 1 || minus.size() != 1) {
    throw Error(ErrorKind::EigenspaceNotOneDimensional,
                "eigenspace dimensions (+" + std::to_string(plus.size()) + ", -" +
                    std::to_string(minus.size()) + ") after q in {" + tried + "}");
  }
  out.plus = plus[0];
  out.minus = minus[0];
  return out;
}

std::vector<std::int64_t> integral_functional(const ManinSymbolSpace& space,
                                              const std::vector<mpq_class>& w) {
  const std::size_t n = space.p1().size();
  std::vector<mpq_class> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = space.coordinates(i);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] != 0 && w[j] != 0) vals[i] += c[j] * w[j];
    }
  }
  const auto ints = linalg::primitive_integer(vals);
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!ints[i].fits_slong_p()) throw Error(ErrorKind::OutOfMemory, "functional entry overflows 64 bits");
    out[i] = ints[i].get_si();
  }
  return out;
}

std::vector<std::pair<i64, i64>> manin_path(i64 a, u64 m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "denominator must be positive");
  i64 num = mod(a, static_cast<i64>(m));
  i64 den = static_cast<i64>(m);
  const i64 g = nt::gcd_signed(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  std::vector<std::pair<i64, i64>> edges;
  i64 q_prev = 0, q_prev2 = 1;  // q_{-1}, q_{-2}
  int j = 0;
  for (;;) {
    const i64 aj = num / den;
    const i64 q = aj * q_prev + q_prev2;
    edges.push_back({(j % 2 == 0) ? -q : q, q_prev});
    q_prev2 = q_prev;
    q_prev = q;
    const i64 rem = num - aj * den;
    if (rem == 0) break;
    num = den;
    den = rem;
    ++j;
  }
  return edges;
}

SymbolEvaluator::SymbolEvaluator(std::shared_ptr<const P1List> p1, std::vector<std::int64_t> phi_plus,
                                 std::vector<std::int64_t> phi_minus, mpq_class scale_plus,
                                 mpq_class scale_minus, u64 p)
    : p1_(std::move(p1)),
      phi_plus_(std::move(phi_plus)),
      phi_minus_(std::move(phi_minus)),
      scale_plus_(std::move(scale_plus)),
      scale_minus_(std::move(scale_minus)),
      p_(p) {
  const u64 N = p1_->level();
  if (N * N <= (1u << 24)) {
    dense_plus_.assign(N * N, 0);
    dense_minus_.assign(N * N, 0);
    for (u64 c = 0; c < N; ++c) {
      for (u64 d = 0; d < N; ++d) {
        auto i = p1_->index(static_cast<i64>(c), static_cast<i64>(d));
        if (!i) continue;
        dense_plus_[c * N + d] = phi_plus_[*i];
        dense_minus_[c * N + d] = phi_minus_[*i];
      }
    }
  }
  if (p_ != 0) {
    for (int s : {1, -1}) {
      if (mpz_divisible_ui_p(scale(s).get_den_mpz_t(), p_)) {
        throw Error(ErrorKind::DenominatorNotPrimeToP,
                    "normalization constant " + scale(s).get_str() + " has p in the denominator");
      }
    }
  }
}

std::int64_t SymbolEvaluator::lookup(i64 c, i64 d, const std::vector<std::int64_t>& phi,
                                     const std::vector<std::int64_t>& dense) const {
  const i64 N = static_cast<i64>(p1_->level());
  if (!dense.empty()) return dense[static_cast<std::size_t>(mod(c, N) * N + mod(d, N))];
  auto i = p1_->index(c, d);
  return i ? phi[*i] : 0;
}

std::int64_t SymbolEvaluator::raw(i64 a, u64 m, int sign) const {
  const auto& phi = sign > 0 ? phi_plus_ : phi_minus_;
  const auto& dense = sign > 0 ? dense_plus_ : dense_minus_;
  i64 num = mod(a, static_cast<i64>(m));
  i64 den = static_cast<i64>(m);
  const i64 g = nt::gcd_signed(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  std::int64_t total = 0;
  i64 q_prev = 0, q_prev2 = 1;
  bool even = true;
  for (;;) {
    const i64 aj = num / den;
    const i64 q = aj * q_prev + q_prev2;
    total += lookup(even ? -q : q, q_prev, phi, dense);
    q_prev2 = q_prev;
    q_prev = q;
    const i64 rem = num - aj * den;
    if (rem == 0) break;
    num = den;
    den = rem;
    even = !even;
  }
  return total;
}

mpq_class SymbolEvaluator::evaluate(i64 a, u64 m, int sign) const {
  mpq_class v = scale(sign) * raw(a, m, sign);
  if (p_ != 0 && mpz_divisible_ui_p(v.get_den_mpz_t(), p_)) {
    throw Error(ErrorKind::DenominatorNotPrimeToP,
                "[" + std::to_string(a) + "/" + std::to_string(m) + "] = " + v.get_str());
  }
  return v;
}

SymbolEvaluator SymbolEvaluator::with_prime(u64 p) const {
  return SymbolEvaluator(p1_, phi_plus_, phi_minus_, scale_plus_, scale_minus_, p);
}

}  // namespace kurihara
