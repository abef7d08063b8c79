#include "kurihara/characters.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara {

using nt::i64;
using nt::u64;

FieldSpec FieldSpec::cyclotomic(u64 c) {
  FieldSpec s;
  s.c = c;
  s.d = c <= 2 ? 1 : nt::euler_phi(c);
  s.h_generators = {1};
  s.label = c <= 2 ? "Q" : "Q(mu_" + std::to_string(c) + ")";
  return s;
}

FieldSpec FieldSpec::rationals() {
  FieldSpec s;
  s.c = 1;
  s.d = 1;
  s.h_generators = {};
  s.label = "Q";
  return s;
}

FieldSpec FieldSpec::from_subgroup(u64 c, std::vector<u64> gens, std::string label) {
  FieldSpec s;
  s.c = c;
  s.h_generators = std::move(gens);
  const u64 h = s.subgroup_elements().size();
  const u64 phi = c == 1 ? 1 : nt::euler_phi(c);
  s.d = phi / h;
  s.label = label.empty() ? "K(" + std::to_string(c) + ", d=" + std::to_string(s.d) + ")"
                          : std::move(label);
  return s;
}

std::vector<u64> FieldSpec::subgroup_elements() const {
  if (c == 1) return {0};
  std::set<u64> elems{1 % c};
  std::vector<u64> frontier{1 % c};
  for (u64 g : h_generators) {
    if (nt::gcd(g % c, c) != 1) {
      throw Error(ErrorKind::BadSubgroup, std::to_string(g) + " is not a unit mod " +
                                              std::to_string(c));
    }
  }
  while (!frontier.empty()) {
    const u64 x = frontier.back();
    frontier.pop_back();
    for (u64 g : h_generators) {
      const u64 y = nt::mulmod(x, g % c, c);
      if (elems.insert(y).second) frontier.push_back(y);
    }
  }
  return {elems.begin(), elems.end()};
}

bool splits_completely(const FieldSpec& spec, u64 l) {
  if (spec.c == 1) return true;
  if (spec.c % l == 0) {
    throw Error(ErrorKind::RamifiedPrime,
                std::to_string(l) + " divides the conductor " + std::to_string(spec.c));
  }
  const auto h = spec.subgroup_elements();
  return std::binary_search(h.begin(), h.end(), l % spec.c);
}

UnitGroup::UnitGroup(u64 m) : m_(m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "modulus 0");
  for (auto [q, e] : nt::factor(m)) {
    u64 qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    const u64 rest = m / qe;
    // Lift a generator of (Z/q^e)^x to be 1 modulo the rest.
    auto lift = [&](u64 g) {
      if (rest == 1) return g % m;
      std::vector<mpz_class> res{mpz_class(static_cast<unsigned long>(g)), mpz_class(1)};
      std::vector<mpz_class> mods{mpz_class(static_cast<unsigned long>(qe)),
                                  mpz_class(static_cast<unsigned long>(rest))};
      return static_cast<u64>(nt::crt(res, mods).get_ui());
    };
    if (q == 2) {
      if (e >= 2) {
        gens_.push_back(lift(qe - 1));
        orders_.push_back(2);
      }
      if (e >= 3) {
        gens_.push_back(lift(5));
        orders_.push_back(qe / 4);
      }
    } else {
      u64 g = nt::primitive_root(q);
      if (e >= 2 && nt::powmod(g, q - 1, q * q) == 1) g += q;
      gens_.push_back(lift(g));
      orders_.push_back(qe / q * (q - 1));
    }
  }
  for (u64 n : orders_) {
    phi_ *= n;
    exponent_ = std::lcm(exponent_, n);
  }
  const std::size_t r = gens_.size();
  dlog_.assign(m * std::max<std::size_t>(r, 1), 0);
  unit_.assign(m, false);
  std::vector<u64> x(r, 0);
  u64 value = 1 % m;
  for (u64 count = 0; count < phi_; ++count) {
    unit_[value] = true;
    for (std::size_t i = 0; i < r; ++i) dlog_[value * r + i] = static_cast<std::uint32_t>(x[i]);
    // Odometer step.
    for (std::size_t i = 0; i < r; ++i) {
      ++x[i];
      value = nt::mulmod(value, gens_[i], m);
      if (x[i] < orders_[i]) break;
      x[i] = 0;  // g_i^{n_i} = 1 so value is already correct
    }
  }
}

std::optional<std::vector<u64>> UnitGroup::dlog(u64 a) const {
  a %= m_;
  if (!unit_[a]) return std::nullopt;
  const std::size_t r = gens_.size();
  std::vector<u64> x(r);
  for (std::size_t i = 0; i < r; ++i) x[i] = dlog_[a * r + i];
  return x;
}

DirichletCharacter::DirichletCharacter(u64 modulus, u64 order, std::vector<i64> table)
    : modulus_(modulus), order_(order), table_(std::move(table)) {
  if (table_.size() != modulus_) throw Error(ErrorKind::InvalidArgument, "character table size");
  // Reduce the order to the true order of the values.
  u64 g = order_;
  for (i64 t : table_) {
    if (t >= 0) g = std::gcd(g, static_cast<u64>(t));
  }
  const u64 true_order = order_ / std::gcd(order_, g == 0 ? order_ : g);
  if (true_order != order_) {
    const u64 factor = order_ / true_order;
    for (i64& t : table_) {
      if (t >= 0) t /= static_cast<i64>(factor);
    }
    order_ = true_order;
  }
  if (order_ == 0) order_ = 1;
  const i64 tm1 = table_[(modulus_ - 1) % modulus_];
  parity_ = (tm1 >= 0 && order_ % 2 == 0 && static_cast<u64>(tm1) == order_ / 2) ? -1 : 1;

  // Conductor: least divisor c' of the modulus with chi trivial on units = 1 mod c'.
  for (u64 cp : nt::divisors(modulus_)) {
    bool ok = true;
    for (u64 a = 1; a < modulus_ && ok; a += cp) {
      if (table_[a] > 0) ok = false;
    }
    if (ok) {
      conductor_ = cp;
      break;
    }
  }
}

DirichletCharacter DirichletCharacter::from_generator_exponents(const UnitGroup& group,
                                                                const std::vector<u64>& x) {
  const auto& orders = group.orders();
  u64 order = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    order = std::lcm(order, orders[i] / std::gcd(x[i] % orders[i], orders[i]));
  }
  const u64 m = group.modulus();
  std::vector<i64> table(m, -1);
  for (u64 a = 0; a < m; ++a) {
    auto dl = group.dlog(a);
    if (!dl) continue;
    u64 t = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      // chi(g_i) = exp(2 pi i x_i / n_i) = zeta_order^(x_i * order / n_i)
      const u64 step = static_cast<u64>((static_cast<nt::u128>(x[i] % orders[i]) * order / orders[i]) % order);
      t = (t + static_cast<u64>(static_cast<nt::u128>(step) * (*dl)[i] % order)) % order;
    }
    table[a] = static_cast<i64>(t);
  }
  return DirichletCharacter(m, order, std::move(table));
}

DirichletCharacter DirichletCharacter::trivial(u64 modulus) {
  std::vector<i64> table(modulus, -1);
  for (u64 a = 0; a < modulus; ++a) {
    if (nt::gcd(a, modulus) == 1) table[a] = 0;
  }
  if (modulus == 1) table[0] = 0;
  return DirichletCharacter(modulus, 1, std::move(table));
}

std::optional<u64> DirichletCharacter::exponent_at(i64 a) const {
  const i64 t = table_[nt::reduce(a, modulus_)];
  if (t < 0) return std::nullopt;
  return static_cast<u64>(t);
}

std::optional<CyclotomicInteger> DirichletCharacter::evaluate(i64 a, const PadicQuotient& ring) const {
  if (ring.d() % order_ != 0) {
    throw Error(ErrorKind::OrderMismatch, "ring d=" + std::to_string(ring.d()) +
                                              " not divisible by order " + std::to_string(order_));
  }
  auto t = exponent_at(a);
  if (!t) return std::nullopt;
  return ring.zeta_power(static_cast<i64>(*t * (ring.d() / order_)));
}

DirichletCharacter DirichletCharacter::pow(i64 j) const {
  std::vector<i64> table(modulus_, -1);
  const u64 jj = nt::reduce(j, order_);
  for (u64 a = 0; a < modulus_; ++a) {
    if (table_[a] >= 0) table[a] = static_cast<i64>((static_cast<u64>(table_[a]) * jj) % order_);
  }
  return DirichletCharacter(modulus_, order_, std::move(table));
}

DirichletCharacter DirichletCharacter::conj() const { return pow(-1); }

DirichletCharacter DirichletCharacter::primitive() const {
  if (is_primitive()) return *this;
  const u64 c = conductor_;
  std::vector<i64> table(c, -1);
  for (u64 a = 0; a < c; ++a) {
    if (nt::gcd(a, c) != 1 && c != 1) continue;
    for (u64 j = 0; j < modulus_; ++j) {
      const u64 lift = (a + j * c) % modulus_;
      if (nt::gcd(lift, modulus_) == 1) {
        table[a] = table_[lift];
        break;
      }
    }
  }
  if (c == 1) table[0] = 0;
  return DirichletCharacter(c, order_, std::move(table));
}

FieldSpec DirichletCharacter::kernel_field() const {
  const DirichletCharacter prim = primitive();
  std::vector<u64> kernel;
  for (u64 a = 0; a < prim.modulus_; ++a) {
    if (prim.table_[a] == 0) kernel.push_back(a);
  }
  if (prim.modulus_ == 1) return FieldSpec::rationals();
  return FieldSpec::from_subgroup(prim.modulus_, kernel, "ker(" + label() + ")");
}

std::string DirichletCharacter::label() const {
  UnitGroup group(modulus_);
  std::string s = "chi" + std::to_string(modulus_) + "_" + std::to_string(order_) + "[";
  const auto& gens = group.generators();
  const auto& orders = group.orders();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const i64 t = table_[gens[i]];
    const u64 x = static_cast<u64>(t) * orders[i] / order_;
    if (i) s += ",";
    s += std::to_string(x);
  }
  return s + "]";
}

std::vector<DirichletCharacter> enumerate_characters(const FieldSpec& spec) {
  UnitGroup group(spec.c);
  const auto& orders = group.orders();
  const std::size_t r = orders.size();
  std::vector<std::pair<std::pair<u64, std::vector<u64>>, DirichletCharacter>> found;
  std::vector<u64> x(r, 0);
  const auto gens = spec.h_generators;
  for (u64 count = 0; count < group.order(); ++count) {
    auto chi = DirichletCharacter::from_generator_exponents(group, x);
    bool trivial_on_h = true;
    for (u64 h : gens) {
      auto t = chi.exponent_at(static_cast<i64>(h % spec.c));
      if (!t) throw Error(ErrorKind::BadSubgroup, std::to_string(h) + " is not a unit");
      if (*t != 0) {
        trivial_on_h = false;
        break;
      }
    }
    if (trivial_on_h) found.push_back({{chi.order(), x}, chi});
    for (std::size_t i = 0; i < r; ++i) {
      if (++x[i] < orders[i]) break;
      x[i] = 0;
    }
  }
  if (found.size() != spec.d) {
    throw Error(ErrorKind::BadSubgroup, "found " + std::to_string(found.size()) +
                                            " characters, expected d=" + std::to_string(spec.d));
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<DirichletCharacter> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<DirichletCharacter> pinned_candidates(u64 modulus, u64 order,
                                                  const std::vector<CharacterPin>& pins, u64 p) {
  const FieldSpec full = FieldSpec::cyclotomic(modulus);
  std::vector<DirichletCharacter> out;
  int max_j = 1;
  for (const auto& pin : pins) max_j = std::max(max_j, pin.mod_exponent);
  const PadicQuotient ring = PadicQuotient::build(p, max_j, order);
  for (auto& chi : enumerate_characters(modulus <= 2 ? FieldSpec::rationals() : full)) {
    if (chi.order() != order || !chi.is_primitive()) continue;
    bool ok = true;
    for (const auto& pin : pins) {
      const PadicQuotient rj = ring.with_precision(pin.mod_exponent);
      auto v = chi.evaluate(pin.at, rj);
      if (!v) {
        ok = false;
        break;
      }
      if (pin.residue) {
        if (*v != rj.from_int(*pin.residue)) ok = false;
      } else if (!pin.root_of.empty()) {
        CyclotomicInteger acc = rj.zero();
        for (std::size_t i = pin.root_of.size(); i-- > 0;) acc = acc * *v + rj.from_int(pin.root_of[i]);
        if (!acc.reduce_to(rj.with_precision(1)).is_zero()) ok = false;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(chi);
  }
  return out;
}

DirichletCharacter select_pinned(u64 modulus, u64 order, const std::vector<CharacterPin>& pins,
                                 u64 p) {
  auto cands = pinned_candidates(modulus, order, pins, p);
  if (cands.empty()) {
    throw Error(ErrorKind::AmbiguousCharacter, "no character of modulus " +
                                                   std::to_string(modulus) + " and order " +
                                                   std::to_string(order) + " matches the pins");
  }
  // Accept a single Frobenius orbit.
  const DirichletCharacter& first = cands.front();
  std::vector<DirichletCharacter> orbit{first};
  for (DirichletCharacter c = first.pow(static_cast<i64>(p % order)); !(c == first);
       c = c.pow(static_cast<i64>(p % order))) {
    orbit.push_back(c);
  }
  bool one_orbit = true;
  for (const auto& c : cands) {
    if (std::find(orbit.begin(), orbit.end(), c) == orbit.end()) one_orbit = false;
  }
  if (!one_orbit) {
    std::string msg = std::to_string(cands.size()) + " candidates:";
    for (const auto& c : cands) msg += " " + c.label();
    throw Error(ErrorKind::AmbiguousCharacter, msg);
  }
  std::sort(cands.begin(), cands.end(),
            [](const auto& a, const auto& b) { return a.label() < b.label(); });
  return cands.front();
}

}  // namespace kurihara
