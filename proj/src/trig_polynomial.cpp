#include "hcross/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "hcross/errors.hpp"

namespace hcross {

namespace {

void require_same_dim(const TrigPolynomial& a, const TrigPolynomial& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("polynomial dimension mismatch");
}

template <class Op>
TrigPolynomial merge(const TrigPolynomial& a, const TrigPolynomial& b, Op op) {
  require_same_dim(a, b);
  std::vector<TrigPolynomial::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.emplace_back(ia->first, op(ia->second, Complex{}));
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, op(Complex{}, ib->second));
      ++ib;
    } else {
      out.emplace_back(ia->first, op(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return TrigPolynomial::from_sorted(a.dim(), std::move(out));
}

}  // namespace

TrigPolynomial::TrigPolynomial(int d) : dim_(d) { check_dimension(d); }

TrigPolynomial::Builder::Builder(int d) : dim_(d) { check_dimension(d); }

void TrigPolynomial::Builder::add(const FreqIndex& k, Complex c) {
  if (k.dim() != dim_) throw InvalidArgument("frequency dimension mismatch");
  terms_.emplace_back(k, c);
}

TrigPolynomial TrigPolynomial::Builder::build() && {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(t);
  }
  return from_sorted(dim_, std::move(merged));
}

TrigPolynomial TrigPolynomial::from_sorted(int d, std::vector<Term> terms) {
  TrigPolynomial p(d);
  std::erase_if(terms, [](const Term& t) { return t.second == Complex{}; });
  p.terms_ = std::move(terms);
  return p;
}

Complex TrigPolynomial::coeff(const FreqIndex& k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, const FreqIndex& key) { return t.first < key; });
  return (it != terms_.end() && it->first == k) ? it->second : Complex{};
}

FreqSet TrigPolynomial::support() const {
  std::vector<FreqIndex> ks;
  ks.reserve(terms_.size());
  for (const auto& t : terms_) ks.push_back(t.first);
  return FreqSet(dim_, std::move(ks));
}

std::vector<int> TrigPolynomial::max_abs_frequency() const {
  std::vector<int> m(static_cast<std::size_t>(dim_), 0);
  for (const auto& [k, c] : terms_)
    for (int j = 0; j < dim_; ++j) m[j] = std::max(m[j], std::abs(k[j]));
  return m;
}

int TrigPolynomial::max_layer() const {
  int best = -1;
  for (const auto& [k, c] : terms_) best = std::max(best, static_cast<int>(block_of(k).l1()));
  return best;
}

Complex TrigPolynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("point dimension mismatch");
  Complex sum{};
  for (const auto& [k, c] : terms_) {
    double phase = 0.0;
    for (int j = 0; j < dim_; ++j) phase += k[j] * x[j];
    sum += c * Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

double TrigPolynomial::squared_l2() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::norm(t.second);
  return s;
}

double TrigPolynomial::l2_norm() const { return std::sqrt(squared_l2()); }

double TrigPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.second));
  return m;
}

TrigPolynomial TrigPolynomial::filter(const std::function<bool(const FreqIndex&)>& pred) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (pred(t.first)) out.push_back(t);
  return from_sorted(dim_, std::move(out));
}

TrigPolynomial TrigPolynomial::multiply(const std::function<double(const FreqIndex&)>& weight) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    const double w = weight(k);
    if (w != 0.0) out.emplace_back(k, w * c);
  }
  return from_sorted(dim_, std::move(out));
}

TrigPolynomial TrigPolynomial::scaled(Complex a) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.second *= a;
  return from_sorted(dim_, std::move(out));
}

TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
  return merge(a, b, [](Complex x, Complex y) { return x + y; });
}

TrigPolynomial operator-(const TrigPolynomial& a, const TrigPolynomial& b) {
  return merge(a, b, [](Complex x, Complex y) { return x - y; });
}

double max_coeff_distance(const TrigPolynomial& a, const TrigPolynomial& b) {
  return (a - b).max_abs_coeff();
}

}  // namespace hcross
