#include "parrondo/core_rules.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "parrondo/errors.hpp"

namespace parrondo {

GameParams GameParams::make(double p0, double p1, double p2, double p3) {
  GameParams params{{p0, p1, p2, p3}};
  validate(params);
  return params;
}

bool GameParams::interior() const {
  for (double pm : p) {
    if (!(pm > 0.0 && pm < 1.0)) return false;
  }
  return true;
}

void validate(const GameParams& params) {
  for (std::size_t m = 0; m < params.p.size(); ++m) {
    const double pm = params.p[m];
    if (!std::isfinite(pm) || pm < 0.0 || pm > 1.0) {
      throw InvalidArgument("p" + std::to_string(m) + " = " + std::to_string(pm) +
                            " is outside [0,1]");
    }
  }
}

Configuration::Configuration(int n) : n_(n) {
  if (n < kMinPlayers) {
    throw InvalidArgument("a ring needs at least 3 players, got " + std::to_string(n));
  }
  words_.assign(static_cast<std::size_t>((n + 63) / 64), 0);
}

Configuration::Configuration(int n, std::uint64_t code) : Configuration(n) {
  if (n > 64) throw InvalidArgument("code constructor requires n <= 64");
  if (n < 64 && (code >> n) != 0) {
    throw InvalidArgument("state code has bits beyond site n-1");
  }
  words_[0] = code;
}

Configuration::Configuration(std::initializer_list<int> bits)
    : Configuration(from_bits(std::span<const int>(bits.begin(), bits.size()))) {}

Configuration Configuration::from_bits(std::span<const int> bits) {
  Configuration cfg(static_cast<int>(bits.size()));
  for (std::size_t x = 0; x < bits.size(); ++x) {
    if (bits[x] != 0 && bits[x] != 1) throw InvalidArgument("site values must be 0 or 1");
    cfg.set(static_cast<long>(x), bits[x]);
  }
  return cfg;
}

void Configuration::check_index(int x) const {
  if (x < 0 || x >= n_) {
    throw InvalidArgument("site " + std::to_string(x) + " out of range for ring of " +
                          std::to_string(n_));
  }
}

int Configuration::at(int x) const {
  check_index(x);
  return get(x);
}

void Configuration::set(long x, int value) {
  const long i = ((x % n_) + n_) % n_;
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  auto& word = words_[static_cast<std::size_t>(i >> 6)];
  word = value ? (word | mask) : (word & ~mask);
}

void Configuration::toggle(long x) {
  const long i = ((x % n_) + n_) % n_;
  words_[static_cast<std::size_t>(i >> 6)] ^= std::uint64_t{1} << (i & 63);
}

std::uint64_t Configuration::code() const {
  if (n_ > 64) throw InvalidArgument("state code requires n <= 64");
  return words_[0];
}

int Configuration::count_ones() const {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

Configuration Configuration::rotated(int k) const {
  Configuration out(n_);
  for (int x = 0; x < n_; ++x) out.set(x, get(static_cast<long>(x) - k));
  return out;
}

Configuration Configuration::reflected() const {
  Configuration out(n_);
  for (int x = 0; x < n_; ++x) out.set(x, get(-static_cast<long>(x)));
  return out;
}

std::string Configuration::to_string() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(n_));
  for (int x = 0; x < n_; ++x) s.push_back(get(x) ? '1' : '0');
  return s;
}

int m_index(const Configuration& cfg, int x) {
  cfg.at(x);
  return neighborhood_index(cfg.get(x - 1L), cfg.get(x + 1L));
}

Configuration flip(const Configuration& cfg, int x) {
  cfg.at(x);
  Configuration out = cfg;
  out.toggle(x);
  return out;
}

Configuration duel(const Configuration& cfg, int x, Side neighbor, Outcome outcome) {
  cfg.at(x);
  const long other = neighbor == Side::left ? x - 1L : x + 1L;
  const int mine = outcome == Outcome::win ? 1 : 0;
  Configuration out = cfg;
  out.set(x, mine);
  out.set(other, 1 - mine);
  return out;
}

Configuration swap(const Configuration& cfg, int x) {
  cfg.at(x);
  Configuration out = cfg;
  out.set(x, cfg.get(x + 1L));
  out.set(x + 1L, cfg.get(x));
  return out;
}

double rate_B(const GameParams& params, const Configuration& cfg, int x) {
  cfg.at(x);
  return rate_B_local(params, cfg.get(x - 1L), cfg.get(x), cfg.get(x + 1L));
}

double rate_Aprime(const Configuration& cfg, int x) {
  cfg.at(x);
  return rate_Aprime_local(cfg.get(x - 1L), cfg.get(x), cfg.get(x + 1L));
}

LabelRange label_range(int n) {
  if (n < 1) throw InvalidArgument("ring size must be positive");
  if (n % 2 == 1) return {-(n - 1) / 2, (n - 1) / 2};
  return {-n / 2, n / 2 - 1};
}

int label_of(int n, int index) {
  if (index < 0 || index >= n) throw InvalidArgument("index out of range");
  const auto range = label_range(n);
  return index <= range.right ? index : index - n;
}

int index_of(int n, int label) {
  const auto range = label_range(n);
  if (label < range.left || label > range.right) {
    throw InvalidArgument("label " + std::to_string(label) + " outside [" +
                          std::to_string(range.left) + ", " + std::to_string(range.right) + "]");
  }
  return label >= 0 ? label : label + n;
}

void validate(const SchedulerSpec& sched) {
  if (const auto* mix = std::get_if<RandomMixture>(&sched)) {
    if (!(mix->gamma > 0.0 && mix->gamma < 1.0)) {
      throw InvalidArgument("gamma must lie in (0,1), got " + std::to_string(mix->gamma));
    }
  } else if (const auto* per = std::get_if<PeriodicPattern>(&sched)) {
    if (per->r < 1 || per->s < 1) throw InvalidArgument("periodic pattern needs r, s >= 1");
  }
}

std::string describe(const SchedulerSpec& sched) {
  std::ostringstream os;
  if (const auto* mix = std::get_if<RandomMixture>(&sched)) {
    os << "mixture(" << mix->gamma << ")";
  } else if (const auto* per = std::get_if<PeriodicPattern>(&sched)) {
    os << "periodic(" << per->r << "," << per->s << ")";
  } else {
    os << (std::get<SingleGame>(sched).game == Game::aprime ? "aprime" : "b");
  }
  return os.str();
}

double aprime_fraction(const SchedulerSpec& sched) {
  if (const auto* mix = std::get_if<RandomMixture>(&sched)) return mix->gamma;
  if (const auto* per = std::get_if<PeriodicPattern>(&sched)) {
    return static_cast<double>(per->r) / (per->r + per->s);
  }
  return std::get<SingleGame>(sched).game == Game::aprime ? 1.0 : 0.0;
}

}  // namespace parrondo
