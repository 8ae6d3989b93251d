#include "hgturb/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "hgturb/compensated_sum.hpp"
#include "hgturb/errors.hpp"
#include "hgturb/specfun.hpp"

namespace hgturb {

using specfun::HalfInteger;
using cplx = std::complex<double>;

namespace {

constexpr double kImaginaryTolerance = 1e-10;
// Rounding floor of a compensated sum, in units of sum |term|.
constexpr double kRoundingFloor = 64.0 * std::numeric_limits<double>::epsilon();
constexpr double kNegativeFloor = 1e-12;
// |C3| below this fraction of C1 + C2 switches K to its small-C3 expansion.
constexpr double kSmallCrossTerm = 1e-6;

double binomial(unsigned n, unsigned k) {
  double result = 1.0;
  for (unsigned j = 1; j <= k; ++j) {
    result = result * (n - k + j) / j;
  }
  return result;
}

double factorial(unsigned n) {
  double result = 1.0;
  for (unsigned j = 2; j <= n; ++j) {
    result *= j;
  }
  return result;
}

// i^n
cplx i_power(unsigned n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double minus_one_power(unsigned n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

std::string label(ModeIndex mode) {
  if (mode.m < 10 && mode.n < 10) {
    return std::to_string(mode.m) + std::to_string(mode.n);
  }
  return std::to_string(mode.m) + "_" + std::to_string(mode.n);
}

std::optional<ModeIndex> parse_mode(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && s.size() <= 3 &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_unsigned = [](std::string_view s) {
    unsigned v = 0;
    for (char c : s) v = v * 10 + static_cast<unsigned>(c - '0');
    return v;
  };
  if (const auto sep = text.find('_'); sep != std::string_view::npos) {
    const auto m = text.substr(0, sep);
    const auto n = text.substr(sep + 1);
    if (!digits(m) || !digits(n)) return std::nullopt;
    return ModeIndex{to_unsigned(m), to_unsigned(n)};
  }
  if (text.size() != 2 || !digits(text)) return std::nullopt;
  return ModeIndex{to_unsigned(text.substr(0, 1)), to_unsigned(text.substr(1, 1))};
}

std::string label(const ModePair& pair) {
  return "(" + label(pair.signal) + "," + label(pair.idler) + ")";
}

std::optional<ModePair> parse_pair(std::string_view text) {
  const auto sep = text.find(':');
  if (sep == std::string_view::npos) return std::nullopt;
  const auto s = parse_mode(text.substr(0, sep));
  const auto i = parse_mode(text.substr(sep + 1));
  if (!s || !i) return std::nullopt;
  return ModePair{*s, *i};
}

std::vector<ModeIndex> modes_up_to_order(unsigned max_sum) {
  std::vector<ModeIndex> modes;
  for (unsigned total = 0; total <= max_sum; ++total) {
    for (unsigned m = 0; m <= total; ++m) {
      modes.push_back({m, total - m});
    }
  }
  return modes;
}

std::vector<ModeIndex> default_mode_ordering() { return modes_up_to_order(3); }

int sigma(int k, int l) {
  const int sk = (k % 2 == 0) ? 1 : -1;
  const int sl = (l % 2 == 0) ? 1 : -1;
  return sk + sl;
}

cplx f_kernel(unsigned mu, unsigned nu, unsigned k, unsigned l, const DerivedConstants& c) {
  if (k > mu || l > nu) {
    throw DomainError("f_kernel: requires k <= mu and l <= nu");
  }
  const int s = sigma(static_cast<int>(k), static_cast<int>(l));
  if (s == 0) {
    return 0.0;
  }
  const unsigned kl = k + l;
  const double gamma = specfun::gamma_half(HalfInteger(static_cast<int>(kl) + 1));
  const cplx hyp = specfun::hyp2f1_terminating(k, l, HalfInteger(1 - static_cast<int>(kl)),
                                               1.0 / (2.0 * c.zeta));
  const double real_part = binomial(mu, k) * binomial(nu, l) * std::ldexp(1.0, mu + nu) * s *
                           gamma * std::pow(std::numbers::sqrt2 / c.w, mu + nu - kl);
  return real_part * i_power(kl) * std::sqrt(1.0 - c.zeta) * std::pow(std::sqrt(c.zeta), kl) *
         hyp;
}

namespace {

// K(a, b) together with the sum of |contributions| before cancellation.
ComplexSum k_kernel_detail(unsigned a, unsigned b, const DerivedConstants& c) {
  const unsigned total = a + b;
  if (total % 2 != 0) {
    return {};
  }
  const double c1 = c.c1;
  const double c2 = c.c2;
  const double c3 = c.c3;
  const double c4 = c.c4;
  if (!(c1 * c2 > 0.0)) {
    throw RegimeError("k_kernel: requires C1 * C2 > 0");
  }
  const bool small_c3 = std::abs(c3) < kSmallCrossTerm * (c1 + c2);
  const cplx i(0.0, 1.0);
  const double inv_sqrt_c1 = 1.0 / std::sqrt(c1);
  const double inv_sqrt_c2 = 1.0 / std::sqrt(c2);

  std::vector<cplx> terms;
  terms.reserve((a + 1) * (b + 1));
  double magnitude = 0.0;
  for (unsigned p = 0; p <= a; ++p) {
    for (unsigned q = 0; q <= b; ++q) {
      const unsigned P = p + q;
      const unsigned Q = total - P;
      const double prefactor = binomial(a, p) * binomial(b, q) * minus_one_power(b - q) *
                               std::pow(inv_sqrt_c1, 2 + P) * std::pow(inv_sqrt_c2, Q);
      cplx bracket = 0.0;
      if (P % 2 == 0) {
        // sigma(0,P) sigma(0,Q) = 4; the odd-parity terms vanish.
        const double g = specfun::gamma_half(HalfInteger(1 + static_cast<int>(P))) *
                         specfun::gamma_half(HalfInteger(1 + static_cast<int>(Q)));
        const double hyp = specfun::hyp2f1_real(0.5 * (1 + P), 0.5 * (1 + Q), 0.5, c4);
        bracket = 4.0 * std::sqrt(c1 / c2) * g * hyp;
        magnitude += std::abs(prefactor * bracket);
      } else {
        // sigma(1,P) sigma(1,Q) = 4; the even-parity term vanishes.
        const double s1 = 4.0;
        const double g = specfun::gamma_half(HalfInteger(2 + static_cast<int>(P))) *
                         specfun::gamma_half(HalfInteger(2 + static_cast<int>(Q)));
        if (small_c3) {
          // The two 1/C3 terms combine to -C3^2 (1+P)(1+Q) + O(C3^4) in the numerator.
          bracket = -i * s1 * c3 * g / c2;
          magnitude += std::abs(prefactor * bracket);
        } else {
          const double ha = 0.5 * (2 + P);
          const double hb = 0.5 * (2 + Q);
          const double f_minus = specfun::hyp2f1_real(ha, hb, -0.5, c4);
          const double f_plus = specfun::hyp2f1_real(ha, hb, 0.5, c4);
          const double denom = c2 * c3 * (1.0 + P) * (1.0 + Q);
          const double numer = -(4.0 * c1 * c2 + c3 * c3) * f_minus +
                               (4.0 * c1 * c2 + c3 * c3 * (4.0 + total)) * f_plus;
          bracket = i * s1 * g * numer / denom;
          const double parts = (4.0 * c1 * c2 + c3 * c3) * std::abs(f_minus) +
                               (4.0 * c1 * c2 + c3 * c3 * (4.0 + total)) * std::abs(f_plus);
          magnitude += std::abs(prefactor * s1 * g * parts / denom);
        }
      }
      terms.push_back(prefactor * bracket);
    }
  }
  const double outer = 0.25 * std::pow(1.0 / std::numbers::sqrt2, total);
  return {outer * sum_descending(terms).value, outer * magnitude};
}

}  // namespace

cplx k_kernel(unsigned a, unsigned b, const DerivedConstants& c) {
  return k_kernel_detail(a, b, c).value;
}

PiEvaluation evaluate_pi(unsigned mu, unsigned nu, const DerivedConstants& c) {
  const unsigned total = mu + nu;

  std::vector<cplx> f((mu + 1) * (nu + 1));
  for (unsigned k = 0; k <= mu; ++k) {
    for (unsigned l = 0; l <= nu; ++l) {
      f[k * (nu + 1) + l] = f_kernel(mu, nu, k, l, c);
    }
  }

  // K(a, b) is needed for a, b in [0, total]; evaluated lazily.
  std::vector<std::optional<ComplexSum>> k_table((total + 1) * (total + 1));
  auto kernel = [&](unsigned a, unsigned b) -> const ComplexSum& {
    auto& slot = k_table[a * (total + 1) + b];
    if (!slot) slot = k_kernel_detail(a, b, c);
    return *slot;
  };

  // Rounding floor: sum of |F1| |F3| times K's pre-cancellation magnitude.
  double magnitude = 0.0;
  std::vector<cplx> terms;
  for (unsigned k1 = 0; k1 <= mu; ++k1) {
    for (unsigned l1 = 0; l1 <= nu; ++l1) {
      const cplx f1 = f[k1 * (nu + 1) + l1];
      if (f1 == 0.0) continue;
      for (unsigned k3 = 0; k3 <= mu; ++k3) {
        for (unsigned l3 = 0; l3 <= nu; ++l3) {
          const cplx f3 = f[k3 * (nu + 1) + l3];
          if (f3 == 0.0) continue;
          const ComplexSum& kv = kernel(total - k1 - l1, total - k3 - l3);
          terms.push_back(f1 * std::conj(f3) * kv.value);
          magnitude += std::abs(f1) * std::abs(f3) * kv.magnitude;
        }
      }
    }
  }
  const ComplexSum sum = sum_descending(terms);

  const double lz = c.config.wavelength * c.config.distance;
  const double prefactor = 1.0 / (lz * lz * std::sqrt(std::numbers::pi * c.b1) * factorial(mu) *
                                   factorial(nu) * std::ldexp(1.0, total));

  const double re = sum.value.real();
  const double im = sum.value.imag();
  const double floor = kRoundingFloor * std::max(sum.magnitude, magnitude);

  PiEvaluation out;
  out.imaginary_residual = std::abs(im) / std::max({std::abs(re), floor, 1e-300});
  if (std::abs(im) > kImaginaryTolerance * std::abs(re) + floor + 1e-300) {
    throw NumericalFailure("Pi(" + std::to_string(mu) + "," + std::to_string(nu) +
                           "): imaginary residual " + std::to_string(im) + " vs real part " +
                           std::to_string(re));
  }
  if (std::abs(re) <= floor) {
    out.value = 0.0;
    return out;
  }
  double value = re * prefactor;
  if (value < 0.0) {
    if (value < -std::max(kNegativeFloor, floor * prefactor)) {
      throw NumericalFailure("Pi(" + std::to_string(mu) + "," + std::to_string(nu) +
                             ") is negative: " + std::to_string(value));
    }
    value = 0.0;
  }
  out.value = value;
  return out;
}

double pi_factor(unsigned mu, unsigned nu, const DerivedConstants& consts) {
  return evaluate_pi(mu, nu, consts).value;
}

bool selection_rule_allowed(const ModePair& pair, ModeIndex pump) {
  auto axis_ok = [](unsigned s, unsigned i, unsigned p) {
    return (s + i) % 2 == p % 2 && s + i >= p;
  };
  return axis_ok(pair.signal.m, pair.idler.m, pump.m) &&
         axis_ok(pair.signal.n, pair.idler.n, pump.n);
}

// ---------------------------------------------------------------------------

struct ProbabilityModel::Cache {
  std::mutex mutex;
  std::vector<std::optional<double>> pi;
  double max_residual = 0.0;
  std::size_t evaluations = 0;
};

ProbabilityModel::ProbabilityModel(DerivedConstants consts, unsigned max_order)
    : consts_(std::move(consts)), max_order_(max_order), cache_(std::make_unique<Cache>()) {
  cache_->pi.resize((max_order_ + 1) * (max_order_ + 1));
}

ProbabilityModel::~ProbabilityModel() = default;
ProbabilityModel::ProbabilityModel(ProbabilityModel&&) noexcept = default;
ProbabilityModel& ProbabilityModel::operator=(ProbabilityModel&&) noexcept = default;

double ProbabilityModel::pi(unsigned mu, unsigned nu) const {
  if (mu > max_order_ || nu > max_order_) {
    throw DomainError("mode order exceeds max_order = " + std::to_string(max_order_));
  }
  const std::size_t slot = mu * (max_order_ + 1) + nu;
  {
    std::lock_guard lock(cache_->mutex);
    if (const auto& v = cache_->pi[slot]) return *v;
  }
  // Computed outside the lock; concurrent fills write identical values.
  const PiEvaluation eval = evaluate_pi(mu, nu, consts_);
  std::lock_guard lock(cache_->mutex);
  if (!cache_->pi[slot]) {
    cache_->pi[slot] = eval.value;
    cache_->max_residual = std::max(cache_->max_residual, eval.imaginary_residual);
    ++cache_->evaluations;
  }
  return *cache_->pi[slot];
}

double ProbabilityModel::joint_probability(const ModePair& pair) const {
  return pi(pair.signal.m, pair.idler.m) * pi(pair.signal.n, pair.idler.n);
}

double ProbabilityModel::max_imaginary_residual() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->max_residual;
}

std::size_t ProbabilityModel::evaluations() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->evaluations;
}

std::string_view to_string(Normalization::Mode mode) {
  return mode == Normalization::Mode::raw ? "raw" : "calibrated";
}

double ProbabilityMatrix::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double calibration_scale(const DerivedConstants& consts, const Normalization& norm,
                         double* raw_reference) {
  const auto& ref = norm.reference;
  const unsigned order = std::max({ref.signal.m, ref.signal.n, ref.idler.m, ref.idler.n});
  const ProbabilityModel vacuum(derive_constants(consts.config, 0.0, consts.options),
                                std::max(order, 1u));
  const double raw = vacuum.joint_probability(ref);
  if (raw_reference) *raw_reference = raw;
  if (norm.mode == Normalization::Mode::raw) {
    return 1.0;
  }
  if (!(raw > 0.0)) {
    throw CalibrationError("calibration reference " + label(ref) +
                           " has vacuum probability " + std::to_string(raw) + "; must be positive");
  }
  if (!(norm.reference_value > 0.0)) {
    throw CalibrationError("calibration reference value must be positive");
  }
  return norm.reference_value / raw;
}

ProbabilityMatrix probability_matrix(std::span<const ModeIndex> modes,
                                     const ProbabilityModel& model, const Normalization& norm,
                                     unsigned threads) {
  if (modes.empty()) {
    throw DomainError("probability_matrix: mode list is empty");
  }
  ProbabilityMatrix out;
  out.ordering.assign(modes.begin(), modes.end());
  out.params = model.constants();
  out.normalization = norm;
  out.scale = calibration_scale(model.constants(), norm, &out.raw_reference);

  // Distinct Pi factors, evaluated up front (in parallel if requested).
  std::vector<std::pair<unsigned, unsigned>> needed;
  for (const auto& s : modes) {
    for (const auto& i : modes) {
      needed.emplace_back(s.m, i.m);
      needed.emplace_back(s.n, i.n);
    }
  }
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, needed.size()));
  if (workers == 1) {
    for (const auto& [mu, nu] : needed) model.pi(mu, nu);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t j = w; j < needed.size(); j += workers) {
              model.pi(needed[j].first, needed[j].second);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const std::size_t n = modes.size();
  out.values.resize(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t col = 0; col < n; ++col) {
      out.values[r * n + col] = out.scale * model.joint_probability({modes[r], modes[col]});
    }
  }
  return out;
}

}  // namespace hgturb
