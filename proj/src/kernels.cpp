#include "hcross/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hcross/errors.hpp"

namespace hcross {

namespace {

// Below this |sin(t/2)| the closed forms lose too many digits.
constexpr double kNearZero = 1e-6;

}  // namespace

double dirichlet_eval(int order, double t) {
  if (order < 0) throw InvalidArgument("Dirichlet order must be non-negative");
  // Extended precision keeps (k + 1/2) t and the division accurate near 2 pi.
  const long double tl = t;
  const long double half = sinl(0.5L * tl);
  if (fabsl(half) < kNearZero) {
    long double sum = 1.0L;
    for (int j = 1; j <= order; ++j) sum += 2.0L * cosl(j * tl);
    return static_cast<double>(sum);
  }
  return static_cast<double>(sinl((order + 0.5L) * tl) / half);
}

double vp_weight(int m, long k) {
  const long a = k < 0 ? -k : k;
  if (a <= m) return 1.0;
  if (a < 2L * m) return static_cast<double>(2L * m - a) / m;
  return 0.0;
}

double vp_eval(int m, double t) {
  if (m < 1) throw InvalidArgument("de la Vallee Poussin order must be >= 1");
  const long double tl = t;
  const long double half = sinl(0.5L * tl);
  if (fabsl(half) < kNearZero) {
    long double sum = 1.0L;
    for (int k = 1; k < 2 * m; ++k) sum += 2.0L * vp_weight(m, k) * cosl(k * tl);
    return static_cast<double>(sum);
  }
  // sin(3x) = sin(x) (3 - 4 sin^2 x) avoids rounding the larger argument.
  const long double sx = sinl(0.5L * m * tl);
  const long double s3x = sx * (3.0L - 4.0L * sx * sx);
  return static_cast<double>(sx * s3x / (m * half * half));
}

double block_weight(int s, long k) {
  if (s < 0) throw InvalidArgument("block scale must be non-negative");
  if (s == 0) return vp_weight(1, k);
  if (s > 30) throw OverflowError("block scale too large");
  return vp_weight(1 << s, k) - vp_weight(1 << (s - 1), k);
}

UnivariateMultiplier::UnivariateMultiplier(int reach, std::vector<double> weights)
    : reach_(reach), weights_(std::move(weights)) {
  if (reach < 0 || weights_.size() != static_cast<std::size_t>(2 * reach + 1))
    throw InvalidArgument("multiplier table size must be 2*reach+1");
}

double UnivariateMultiplier::operator()(long k) const {
  if (k < -reach_ || k > reach_) return 0.0;
  return weights_[static_cast<std::size_t>(k + reach_)];
}

std::vector<int> UnivariateMultiplier::support() const {
  std::vector<int> out;
  for (int k = -reach_; k <= reach_; ++k)
    if ((*this)(k) != 0.0) out.push_back(k);
  return out;
}

MultiplierTable::MultiplierTable(std::vector<UnivariateMultiplier> axes) : axes_(std::move(axes)) {
  check_dimension(dim());
}

double MultiplierTable::weight(const FreqIndex& k) const {
  if (k.dim() != dim()) throw InvalidArgument("frequency dimension mismatch");
  double w = 1.0;
  for (int j = 0; j < dim() && w != 0.0; ++j) w *= axes_[j](k[j]);
  return w;
}

std::vector<std::pair<FreqIndex, double>> MultiplierTable::entries() const {
  const int d = dim();
  std::vector<std::vector<int>> sup(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    sup[j] = axes_[j].support();
    if (sup[j].empty()) return {};
  }
  std::vector<std::pair<FreqIndex, double>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  FreqIndex k(d);
  while (true) {
    for (int j = 0; j < d; ++j) k[j] = sup[j][idx[j]];
    out.emplace_back(k, weight(k));
    int j = d - 1;
    while (j >= 0 && ++idx[j] == sup[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

FreqSet MultiplierTable::support() const {
  std::vector<FreqIndex> ks;
  for (const auto& e : entries()) ks.push_back(e.first);
  return FreqSet(dim(), std::move(ks));
}

MultiplierTable vp_multiplier(int m) {
  if (m < 1) throw InvalidArgument("de la Vallee Poussin order must be >= 1");
  const int reach = 2 * m - 1;
  std::vector<double> w(static_cast<std::size_t>(2 * reach + 1));
  for (int k = -reach; k <= reach; ++k) w[static_cast<std::size_t>(k + reach)] = vp_weight(m, k);
  return MultiplierTable({UnivariateMultiplier(reach, std::move(w))});
}

MultiplierTable block_multiplier(const BlockIndex& s) {
  std::vector<UnivariateMultiplier> axes;
  for (int j = 0; j < s.dim(); ++j) {
    const int reach = s[j] == 0 ? 1 : (1 << (s[j] + 1)) - 1;
    std::vector<double> w(static_cast<std::size_t>(2 * reach + 1));
    for (int k = -reach; k <= reach; ++k)
      w[static_cast<std::size_t>(k + reach)] = block_weight(s[j], k);
    axes.emplace_back(reach, std::move(w));
  }
  return MultiplierTable(std::move(axes));
}

void BernoulliSpec::validate() const {
  if (!(r > 0.0)) throw InvalidArgument("Bernoulli smoothness r must be positive");
  if (truncation < 1) throw InvalidArgument("Bernoulli truncation K must be >= 1");
  check_dimension(static_cast<int>(alpha.size()));
}

TrigPolynomial bernoulli_poly(const BernoulliSpec& spec) {
  spec.validate();
  const int d = static_cast<int>(spec.alpha.size());
  const int K = spec.truncation;
  std::vector<std::vector<Complex>> axis(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    auto& c = axis[j];
    c.assign(static_cast<std::size_t>(2 * K + 1), Complex{});
    c[static_cast<std::size_t>(K)] = 1.0;
    const double phase = spec.alpha[j] * std::numbers::pi / 2.0;
    for (int k = 1; k <= K; ++k) {
      const double mag = std::pow(static_cast<double>(k), -spec.r);
      c[static_cast<std::size_t>(K + k)] = std::polar(mag, -phase);
      c[static_cast<std::size_t>(K - k)] = std::polar(mag, phase);
    }
  }
  // Odometer over the box in lexicographic order keeps terms sorted.
  std::vector<TrigPolynomial::Term> terms;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  FreqIndex k(d);
  while (true) {
    Complex c = 1.0;
    for (int j = 0; j < d; ++j) {
      k[j] = idx[j] - K;
      c *= axis[j][static_cast<std::size_t>(idx[j])];
    }
    terms.emplace_back(k, c);
    int j = d - 1;
    while (j >= 0 && ++idx[j] == 2 * K + 1) idx[j--] = 0;
    if (j < 0) break;
  }
  return TrigPolynomial::from_sorted(d, std::move(terms));
}

}  // namespace hcross
