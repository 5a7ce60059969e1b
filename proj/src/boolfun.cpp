#include "kclab/boolfun.hpp"

#include <atomic>
#include <stdexcept>

namespace kclab::boolfun {

namespace {
std::atomic<unsigned> g_cap{24};

void check_cap(unsigned n) {
  if (n > truth_table_cap())
    throw std::invalid_argument("truth table variable cap exceeded (n = " + std::to_string(n) +
                                ", cap = " + std::to_string(truth_table_cap()) + ")");
}

void check_same_vars(const TruthTable& f, const TruthTable& g) {
  if (f.vars() != g.vars()) throw std::invalid_argument("variable counts differ");
}
}  // namespace

unsigned truth_table_cap() { return g_cap.load(); }
void set_truth_table_cap(unsigned n) { g_cap.store(n); }

TruthTable::TruthTable(unsigned n) : n_(n) {
  check_cap(n);
  words_.assign((size() + 63) / 64, 0);
}

void TruthTable::mask_tail() {
  if (n_ < 6) words_[0] &= (std::uint64_t{1} << size()) - 1;
}

TruthTable TruthTable::from_models(unsigned n, const std::vector<std::uint64_t>& models) {
  TruthTable t(n);
  for (auto m : models) {
    if (m >= t.size()) throw std::invalid_argument("model index out of range");
    t.set(m, true);
  }
  return t;
}

TruthTable TruthTable::from_predicate(unsigned n, const std::function<bool(std::uint64_t)>& pred) {
  TruthTable t(n);
  for (std::uint64_t a = 0; a < t.size(); ++a)
    if (pred(a)) t.set(a, true);
  return t;
}

TruthTable TruthTable::constant(unsigned n, bool value) {
  TruthTable t(n);
  if (value) {
    for (auto& w : t.words_) w = ~std::uint64_t{0};
    t.mask_tail();
  }
  return t;
}

std::uint64_t TruthTable::count_models() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<unsigned>(__builtin_popcountll(w));
  return c;
}

std::vector<std::uint64_t> TruthTable::models() const {
  std::vector<std::uint64_t> out;
  out.reserve(count_models());
  for (std::uint64_t a = 0; a < size(); ++a)
    if (get(a)) out.push_back(a);
  return out;
}

std::string TruthTable::to_text() const {
  std::uint64_t nibbles = (size() + 3) / 4;
  std::string hex(nibbles, '0');
  for (std::uint64_t i = 0; i < nibbles; ++i) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      std::uint64_t a = i * 4 + b;
      if (a < size() && get(a)) v |= 1u << b;
    }
    hex[nibbles - 1 - i] = "0123456789abcdef"[v];
  }
  return std::to_string(n_) + "\n" + hex + "\n";
}

TruthTable TruthTable::parse_text(const std::string& text) {
  auto nl1 = text.find('\n');
  if (nl1 == std::string::npos) throw std::runtime_error("truth table text: missing header line");
  auto nl2 = text.find('\n', nl1 + 1);
  if (nl2 == std::string::npos || nl2 + 1 != text.size())
    throw std::runtime_error("truth table text: expected exactly two newline-terminated lines");
  unsigned n;
  try {
    n = static_cast<unsigned>(std::stoul(text.substr(0, nl1)));
  } catch (...) {
    throw std::runtime_error("truth table text: malformed variable count");
  }
  TruthTable t(n);
  std::string hex = text.substr(nl1 + 1, nl2 - nl1 - 1);
  std::uint64_t nibbles = (t.size() + 3) / 4;
  if (hex.size() != nibbles)
    throw std::runtime_error("truth table text: expected " + std::to_string(nibbles) + " hex digits");
  for (std::uint64_t i = 0; i < nibbles; ++i) {
    char c = hex[nibbles - 1 - i];
    unsigned v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
    else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
    else throw std::runtime_error("truth table text: bad hex digit");
    for (unsigned b = 0; b < 4; ++b) {
      std::uint64_t a = i * 4 + b;
      if (a < t.size()) t.set(a, (v >> b) & 1u);
      else if ((v >> b) & 1u)
        throw std::runtime_error("truth table text: bits beyond 2^n");
    }
  }
  return t;
}

bool eval(const TruthTable& f, std::uint64_t assignment) {
  if (assignment >= f.size()) throw std::invalid_argument("assignment out of range");
  return f.get(assignment);
}

TruthTable combine_and(const TruthTable& f, const TruthTable& g) {
  check_same_vars(f, g);
  TruthTable t(f.vars());
  for (std::size_t i = 0; i < t.words_.size(); ++i) t.words_[i] = f.words_[i] & g.words_[i];
  return t;
}

TruthTable combine_or(const TruthTable& f, const TruthTable& g) {
  check_same_vars(f, g);
  TruthTable t(f.vars());
  for (std::size_t i = 0; i < t.words_.size(); ++i) t.words_[i] = f.words_[i] | g.words_[i];
  return t;
}

TruthTable combine_xor(const TruthTable& f, const TruthTable& g) {
  check_same_vars(f, g);
  TruthTable t(f.vars());
  for (std::size_t i = 0; i < t.words_.size(); ++i) t.words_[i] = f.words_[i] ^ g.words_[i];
  return t;
}

TruthTable combine_not(const TruthTable& f) {
  TruthTable t(f.vars());
  for (std::size_t i = 0; i < t.words_.size(); ++i) t.words_[i] = ~f.words_[i];
  t.mask_tail();
  return t;
}

TruthTable condition(const TruthTable& f,
                     const std::vector<std::pair<unsigned, bool>>& assignment) {
  std::uint64_t fixed_mask = 0, fixed_bits = 0;
  for (auto [v, b] : assignment) {
    if (v >= f.vars()) throw std::invalid_argument("conditioned variable out of range");
    std::uint64_t m = std::uint64_t{1} << v;
    if (fixed_mask & m) throw std::invalid_argument("variable conditioned twice");
    fixed_mask |= m;
    if (b) fixed_bits |= m;
  }
  std::vector<unsigned> remaining;
  for (unsigned v = 0; v < f.vars(); ++v)
    if (!(fixed_mask & (std::uint64_t{1} << v))) remaining.push_back(v);
  TruthTable out(static_cast<unsigned>(remaining.size()));
  for (std::uint64_t a = 0; a < out.size(); ++a) {
    std::uint64_t full = fixed_bits;
    for (unsigned k = 0; k < remaining.size(); ++k)
      if ((a >> k) & 1u) full |= std::uint64_t{1} << remaining[k];
    out.set(a, f.get(full));
  }
  return out;
}

Distribution Distribution::uniform() { return Distribution{}; }

Distribution Distribution::product(std::vector<num::Rational> probs) {
  for (const auto& p : probs) {
    if (p.sign() < 0 || p > num::Rational(1))
      throw std::invalid_argument("product distribution probability outside [0,1]");
  }
  Distribution d;
  d.kind_ = Kind::Product;
  d.params_ = std::move(probs);
  return d;
}

Distribution Distribution::explicit_weights(std::vector<num::Rational> weights) {
  num::Rational total;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw std::invalid_argument("negative distribution weight");
    total += w;
  }
  if (total != num::Rational(1))
    throw std::invalid_argument("explicit distribution weights must sum to exactly 1");
  Distribution d;
  d.kind_ = Kind::Explicit;
  d.params_ = std::move(weights);
  return d;
}

num::Rational Distribution::weight(unsigned n, std::uint64_t assignment) const {
  switch (kind_) {
    case Kind::Uniform:
      return num::Rational(num::BigInt(1), num::BigInt::pow2(n));
    case Kind::Product: {
      if (params_.size() != n) throw std::invalid_argument("product distribution arity mismatch");
      num::Rational w(1);
      for (unsigned i = 0; i < n; ++i) {
        bool one = (assignment >> i) & 1u;
        w *= one ? params_[i] : num::Rational(1) - params_[i];
      }
      return w;
    }
    case Kind::Explicit:
      if (params_.size() != (std::uint64_t{1} << n))
        throw std::invalid_argument("explicit distribution arity mismatch");
      return params_[assignment];
  }
  throw std::logic_error("unreachable");
}

num::Rational prob(const TruthTable& f, const Distribution& d) {
  if (d.kind() == Distribution::Kind::Uniform)
    return num::Rational(num::BigInt::from_uint64(f.count_models()),
                         num::BigInt::pow2(f.vars()));
  num::Rational total;
  for (std::uint64_t a = 0; a < f.size(); ++a)
    if (f.get(a)) total += d.weight(f.vars(), a);
  return total;
}

num::Rational weak_eps(const TruthTable& f, const TruthTable& g, const Distribution& d) {
  check_same_vars(f, g);
  return prob(combine_xor(f, g), d);
}

num::Rational strong_eps(const TruthTable& f, const TruthTable& g, const Distribution& d) {
  check_same_vars(f, g);
  num::Rational mp = prob(f, d);
  if (mp.is_zero()) throw std::domain_error("strong approximation undefined for unsatisfiable f");
  return weak_eps(f, g, d) / mp;
}

ApproxReport approx_report(const TruthTable& f, const TruthTable& g, const Distribution& d) {
  ApproxReport rep;
  rep.error_prob = weak_eps(f, g, d);
  rep.model_prob = prob(f, d);
  rep.weak = rep.error_prob;
  if (!rep.model_prob.is_zero()) rep.strong = rep.error_prob / rep.model_prob;
  return rep;
}

unsigned trivial_weak_threshold(const num::Rational& alpha, const num::Rational& eps) {
  if (alpha.sign() < 0 || alpha >= num::Rational(1))
    throw std::invalid_argument("alpha must lie in [0, 1)");
  if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
  if (eps >= num::Rational(1)) return 0;
  // n0 >= log2(1/eps) / (1 - alpha)  <=>  2^(p n0) * eps_num^q >= eps_den^q
  // with (1 - alpha) = p/q in lowest terms.
  num::Rational one_minus = num::Rational(1) - alpha;
  if (one_minus.den() > num::BigInt(1000000))
    throw std::invalid_argument("alpha denominator too large");
  unsigned p = static_cast<unsigned>(one_minus.num().to_uint64());
  unsigned q = static_cast<unsigned>(one_minus.den().to_uint64());
  num::BigInt lhs = num::pow(eps.num(), q);
  num::BigInt rhs = num::pow(eps.den(), q);
  num::BigInt step = num::BigInt::pow2(p);
  unsigned n0 = 0;
  while (lhs < rhs) {
    lhs *= step;
    ++n0;
    if (n0 > 1u << 20) throw std::overflow_error("trivial_weak_threshold out of range");
  }
  return n0;
}

}  // namespace kclab::boolfun
