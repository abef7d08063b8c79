#include "kurihara/group_ring.hpp"

#include "kurihara/characters.hpp"
#include "kurihara/error.hpp"
#include "kurihara/modsym.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara {

using nt::i64;
using nt::u64;

GroupDescriptor::GroupDescriptor(std::vector<CyclicFactor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.order == 0) throw Error(ErrorKind::InvalidArgument, "cyclic factor of order 0");
    order_ *= f.order;
  }
}

std::size_t GroupDescriptor::index(const std::vector<u64>& exps) const {
  if (exps.size() != factors_.size()) throw Error(ErrorKind::GroupMismatch, "exponent vector length");
  std::size_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    idx += (exps[i] % factors_[i].order) * stride;
    stride *= factors_[i].order;
  }
  return idx;
}

std::vector<u64> GroupDescriptor::exponents(std::size_t index) const {
  std::vector<u64> e(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    e[i] = index % factors_[i].order;
    index /= factors_[i].order;
  }
  return e;
}

std::size_t GroupDescriptor::multiply(std::size_t i, std::size_t j) const {
  std::size_t idx = 0, stride = 1;
  for (const auto& f : factors_) {
    idx += ((i % f.order + j % f.order) % f.order) * stride;
    i /= f.order;
    j /= f.order;
    stride *= f.order;
  }
  return idx;
}

std::size_t GroupDescriptor::inverse(std::size_t i) const {
  std::size_t idx = 0, stride = 1;
  for (const auto& f : factors_) {
    idx += ((f.order - i % f.order) % f.order) * stride;
    i /= f.order;
    stride *= f.order;
  }
  return idx;
}

std::size_t GroupDescriptor::factor_of(u64 l) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].tag == l) return i;
  }
  throw Error(ErrorKind::GroupMismatch, "group " + describe() + " has no factor G_" + std::to_string(l));
}

std::string GroupDescriptor::describe() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& f : factors_) {
    if (!s.empty()) s += " x ";
    s += "C" + std::to_string(f.order);
    if (f.tag != 0) s += "[" + std::to_string(f.tag) + "]";
  }
  return s;
}

GroupRingElement::GroupRingElement(GroupDescriptor group, PadicQuotient ring)
    : group_(std::move(group)), ring_(std::move(ring)) {
  coeffs_.assign(group_.order(), ring_.zero());
}

GroupRingElement GroupRingElement::basis(const GroupDescriptor& group, const PadicQuotient& ring, std::size_t index) {
  GroupRingElement x(group, ring);
  x.coeffs_.at(index) = ring.one();
  return x;
}

GroupRingElement GroupRingElement::norm(const GroupDescriptor& group, const PadicQuotient& ring, u64 l) {
  const std::size_t f = group.factor_of(l);
  GroupRingElement x(group, ring);
  std::vector<u64> e(group.factors().size(), 0);
  for (u64 i = 0; i < group.factors()[f].order; ++i) {
    e[f] = i;
    x.coeffs_[group.index(e)] = ring.one();
  }
  return x;
}

GroupRingElement GroupRingElement::derivative(const GroupDescriptor& group, const PadicQuotient& ring, u64 l) {
  const std::size_t f = group.factor_of(l);
  GroupRingElement x(group, ring);
  std::vector<u64> e(group.factors().size(), 0);
  for (u64 i = 0; i < group.factors()[f].order; ++i) {
    e[f] = i;
    x.coeffs_[group.index(e)] = ring.from_int(static_cast<i64>(i));
  }
  return x;
}

void GroupRingElement::check_same(const GroupRingElement& o) const {
  if (!(group_ == o.group_)) throw Error(ErrorKind::GroupMismatch, group_.describe() + " vs " + o.group_.describe());
  if (ring_ != o.ring_) throw Error(ErrorKind::MixedRings, ring_.describe() + " vs " + o.ring_.describe());
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  check_same(o);
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  check_same(o);
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] - o.coeffs_[i];
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check_same(o);
  GroupRingElement r(group_, ring_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      r.coeffs_[group_.multiply(i, j)] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return r;
}

GroupRingElement GroupRingElement::scale(const CyclotomicInteger& c) const {
  GroupRingElement r = *this;
  for (auto& x : r.coeffs_) x = x * c;
  return r;
}

GroupRingElement GroupRingElement::involution() const {
  GroupRingElement r(group_, ring_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[group_.inverse(i)] = coeffs_[i];
  return r;
}

GroupRingElement GroupRingElement::shift(std::size_t index) const {
  GroupRingElement r(group_, ring_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[group_.multiply(i, index)] = coeffs_[i];
  return r;
}

GroupRingElement GroupRingElement::reduce_to(const PadicQuotient& lower) const {
  GroupRingElement r(group_, lower);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i].reduce_to(lower);
  return r;
}

bool GroupRingElement::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
  return group_ == o.group_ && ring_ == o.ring_ && coeffs_ == o.coeffs_;
}

GroupDescriptor unit_group_descriptor(u64 n) {
  UnitGroup G(n);
  std::vector<CyclicFactor> f;
  for (u64 o : G.orders()) f.push_back({o, 0});
  return GroupDescriptor(f);
}

std::size_t unit_index(u64 n, i64 a) {
  UnitGroup G(n);
  auto e = G.dlog(nt::reduce(a, n));
  if (!e) throw Error(ErrorKind::NotCoprime, std::to_string(a) + " is not a unit mod " + std::to_string(n));
  return unit_group_descriptor(n).index(*e);
}

GroupRingElement mazur_tate_element(const SymbolEvaluator& ev, u64 n, const PadicQuotient& ring) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "modulus 0");
  UnitGroup U(n);
  GroupDescriptor G = unit_group_descriptor(n);
  GroupRingElement theta(G, ring);
  if (n == 1) {
    theta[0] = ring.from_rational(ev.evaluate(0, 1, 1));
    return theta;
  }
  for (u64 a = 1; a < n; ++a) {
    auto e = U.dlog(a);
    if (!e) continue;
    const mpq_class v = ev.evaluate(static_cast<i64>(a), n, 1) + ev.evaluate(static_cast<i64>(a), n, -1);
    theta[G.index(*e)] = ring.from_rational(v);
  }
  return theta;
}

GroupRingElement kolyvagin_derivative(const GroupRingElement& x, const std::vector<u64>& primes) {
  GroupRingElement r = x;
  const u64 p = x.ring().p();
  for (u64 l : primes) {
    const auto& f = x.group().factors()[x.group().factor_of(l)];
    u64 o = f.order;
    while (o % p == 0) o /= p;
    if (o != 1) {
      throw Error(ErrorKind::GroupMismatch, "factor G_" + std::to_string(l) + " has order " +
                                                std::to_string(f.order) + ", not a power of p");
    }
    r = r * GroupRingElement::derivative(x.group(), x.ring(), l);
  }
  return r;
}

}  // namespace kurihara
