#include "kurihara/padic.hpp"

#include <sstream>

#include "kurihara/error.hpp"
#include "kurihara/numtheory.hpp"

namespace kurihara {

using nt::u64;

struct PadicQuotient::Data {
  u64 p = 0;
  int k = 0;
  u64 d = 0;
  int f = 0;
  mpz_class pk;
  poly::FpPoly residual;  // chosen factor mod p, monic
  poly::ZPoly modulus;    // monic, size f + 1
  std::vector<std::vector<mpz_class>> zeta_table;  // zeta^e for e in [0, d)
};

namespace {

poly::FpPoly select_factor(u64 p, u64 d, int f) {
  if (f == 1) {
    // Linear factors x - r over all primitive d-th roots r.
    const u64 g = nt::primitive_root(p);
    const u64 r0 = nt::powmod(g, (p - 1) / d, p);
    poly::FpPoly best;
    u64 r = 1;
    for (u64 j = 0; j < d; ++j) {
      if (nt::gcd(j, d) == 1 || d == 1) {
        poly::FpPoly cand{(p - r) % p, 1};
        if (best.empty() || poly::factor_less(cand, best)) best = cand;
      }
      r = nt::mulmod(r, r0, p);
    }
    return best;
  }
  const auto factors = poly::equal_degree_factors(poly::to_fp(poly::cyclotomic(d), p), f, p);
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "cyclotomic factorization failed");
  return factors.front();
}

// In-place reduction of a coefficient vector modulo the monic modulus and p^k.
void reduce_poly(std::vector<mpz_class>& c, const poly::ZPoly& g, const mpz_class& pk) {
  const std::size_t f = g.size() - 1;
  for (std::size_t i = c.size(); i-- > f;) {
    if (c[i] == 0) continue;
    mpz_class t = c[i] % pk;
    c[i] = 0;
    if (t == 0) continue;
    for (std::size_t j = 0; j < f; ++j) c[i - f + j] -= t * g[j];
  }
  c.resize(f, 0);
  for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
}

std::vector<mpz_class> mul_raw(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                               const poly::ZPoly& g, const mpz_class& pk) {
  const std::size_t f = g.size() - 1;
  std::vector<mpz_class> c(2 * f - 1, 0);
  for (std::size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < f; ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  reduce_poly(c, g, pk);
  return c;
}

}  // namespace

PadicQuotient PadicQuotient::build(u64 p, int k, u64 d) {
  if (!nt::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p < 5) throw Error(ErrorKind::InvalidArgument, "p must be at least 5");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "precision k must be positive");
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "d must be positive");
  if (d % p == 0) {
    throw Error(ErrorKind::RamifiedExtension,
                "p=" + std::to_string(p) + " divides d=" + std::to_string(d));
  }
  auto data = std::make_shared<Data>();
  data->p = p;
  data->k = k;
  data->d = d;
  data->f = d == 1 ? 1 : static_cast<int>(nt::multiplicative_order(p % d, d));
  mpz_ui_pow_ui(data->pk.get_mpz_t(), p, static_cast<unsigned long>(k));
  data->residual = select_factor(p, d, data->f);
  data->modulus = poly::hensel_lift_factor(poly::cyclotomic(d), data->residual, p, k);

  const std::size_t f = static_cast<std::size_t>(data->f);
  std::vector<mpz_class> x(f, 0);
  if (f == 1) {
    x[0] = data->pk - data->modulus[0];
    mpz_fdiv_r(x[0].get_mpz_t(), x[0].get_mpz_t(), data->pk.get_mpz_t());
  } else {
    x[1] = 1;
  }
  std::vector<mpz_class> cur(f, 0);
  cur[0] = 1;
  data->zeta_table.reserve(d);
  for (u64 e = 0; e < d; ++e) {
    data->zeta_table.push_back(cur);
    cur = mul_raw(cur, x, data->modulus, data->pk);
  }
  return PadicQuotient(std::move(data));
}

u64 PadicQuotient::p() const { return data_->p; }
int PadicQuotient::k() const { return data_->k; }
u64 PadicQuotient::d() const { return data_->d; }
int PadicQuotient::f() const { return data_->f; }
const mpz_class& PadicQuotient::pk() const { return data_->pk; }
const poly::ZPoly& PadicQuotient::modulus_poly() const { return data_->modulus; }

CyclotomicInteger PadicQuotient::zero() const {
  return CyclotomicInteger(*this, std::vector<mpz_class>(data_->f, 0));
}

CyclotomicInteger PadicQuotient::one() const { return zeta_power(0); }

CyclotomicInteger PadicQuotient::zeta() const { return zeta_power(1); }

CyclotomicInteger PadicQuotient::zeta_power(std::int64_t e) const {
  const u64 idx = nt::reduce(e, data_->d);
  return CyclotomicInteger(*this, data_->zeta_table[idx]);
}

CyclotomicInteger PadicQuotient::from_int(const mpz_class& a) const {
  std::vector<mpz_class> c(data_->f, 0);
  c[0] = a;
  return CyclotomicInteger(*this, std::move(c));
}

CyclotomicInteger PadicQuotient::from_int(std::int64_t a) const {
  return from_int(mpz_class(static_cast<long>(a)));
}

CyclotomicInteger PadicQuotient::from_rational(const mpq_class& q) const {
  const mpz_class den = q.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), data_->p)) {
    throw Error(ErrorKind::DenominatorNotPrimeToP, "denominator " + den.get_str() +
                                                       " divisible by p=" +
                                                       std::to_string(data_->p));
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), data_->pk.get_mpz_t());
  return from_int(mpz_class(q.get_num() * inv));
}

CyclotomicInteger PadicQuotient::from_coeffs(std::vector<mpz_class> coeffs) const {
  return CyclotomicInteger(*this, std::move(coeffs));
}

PadicQuotient PadicQuotient::with_precision(int k) const {
  if (k == data_->k) return *this;
  return build(data_->p, k, data_->d);
}

bool PadicQuotient::operator==(const PadicQuotient& o) const {
  if (data_ == o.data_) return true;
  return data_->p == o.data_->p && data_->k == o.data_->k && data_->d == o.data_->d &&
         data_->modulus == o.data_->modulus;
}

std::string PadicQuotient::describe() const {
  std::ostringstream os;
  os << "O_" << data_->d << "/" << data_->p << "^" << data_->k << " (f=" << data_->f << ")";
  return os.str();
}

CyclotomicInteger::CyclotomicInteger(PadicQuotient ring, std::vector<mpz_class> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  const auto& data = *ring_.data_;
  if (coeffs_.size() > static_cast<std::size_t>(data.f)) {
    reduce_poly(coeffs_, data.modulus, data.pk);
  } else {
    coeffs_.resize(data.f, 0);
    for (auto& x : coeffs_) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), data.pk.get_mpz_t());
  }
}

void CyclotomicInteger::check_same(const CyclotomicInteger& o) const {
  if (ring_ != o.ring_) {
    throw Error(ErrorKind::MixedRings, ring_.describe() + " vs " + o.ring_.describe());
  }
}

CyclotomicInteger CyclotomicInteger::operator+(const CyclotomicInteger& o) const {
  CyclotomicInteger r = *this;
  r += o;
  return r;
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& o) {
  check_same(o);
  const mpz_class& pk = ring_.pk();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] += o.coeffs_[i];
    if (coeffs_[i] >= pk) coeffs_[i] -= pk;
  }
  return *this;
}

CyclotomicInteger CyclotomicInteger::operator-(const CyclotomicInteger& o) const {
  check_same(o);
  std::vector<mpz_class> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] - o.coeffs_[i];
  return CyclotomicInteger(ring_, std::move(c));
}

CyclotomicInteger CyclotomicInteger::operator-() const {
  std::vector<mpz_class> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return CyclotomicInteger(ring_, std::move(c));
}

CyclotomicInteger CyclotomicInteger::operator*(const CyclotomicInteger& o) const {
  check_same(o);
  const auto& data = *ring_.data_;
  return CyclotomicInteger(ring_, mul_raw(coeffs_, o.coeffs_, data.modulus, data.pk));
}

CyclotomicInteger& CyclotomicInteger::operator*=(const CyclotomicInteger& o) {
  *this = *this * o;
  return *this;
}

CyclotomicInteger CyclotomicInteger::scale(const mpz_class& c) const {
  std::vector<mpz_class> r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeffs_[i] * c;
  return CyclotomicInteger(ring_, std::move(r));
}

CyclotomicInteger CyclotomicInteger::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(mpz_class(-e));
  CyclotomicInteger result = ring_.one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

CyclotomicInteger CyclotomicInteger::pow(u64 e) const {
  return pow(mpz_class(static_cast<unsigned long>(e)));
}

CyclotomicInteger CyclotomicInteger::inverse() const {
  if (!is_unit()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-unit");
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), ring_.p(), static_cast<unsigned long>(ring_.f()));
  CyclotomicInteger y = pow(mpz_class(q - 2));
  const CyclotomicInteger two = ring_.from_int(std::int64_t{2});
  for (int prec = 1; prec < ring_.k(); prec *= 2) y = y * (two - *this * y);
  return y;
}

bool CyclotomicInteger::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool CyclotomicInteger::is_unit() const { return valuation() == Exponent(0); }

Exponent CyclotomicInteger::valuation() const {
  Exponent best = Exponent::infinity();
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    best = min(best, Exponent(nt::valuation(c, ring_.p())));
  }
  return best;
}

CyclotomicInteger CyclotomicInteger::reduce_to(const PadicQuotient& lower) const {
  if (lower.p() != ring_.p() || lower.d() != ring_.d() || lower.k() > ring_.k()) {
    throw Error(ErrorKind::MixedRings, "cannot reduce " + ring_.describe() + " to " +
                                           lower.describe());
  }
  return CyclotomicInteger(lower, coeffs_);
}

bool CyclotomicInteger::operator==(const CyclotomicInteger& o) const {
  return ring_ == o.ring_ && coeffs_ == o.coeffs_;
}

std::string CyclotomicInteger::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ", ";
    s += coeffs_[i].get_str();
  }
  return s + "]";
}

}  // namespace kurihara
