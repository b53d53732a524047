#pragma once

// Shared vocabulary: player configurations on a ring, the neighborhood index
// m_x, the flip/duel/swap moves and the local rates of games A' and B.
//
// Sites are indexed 0..n-1 and index n-1 is adjacent to index 0. The
// centered labels l_N..r_N used for the infinite-lattice window map to
// indices by label -> label mod n, so label 0 is index 0, label -1 is index
// n-1 and label +1 is index 1 (see label_of / index_of).

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace parrondo {

inline constexpr int kMinPlayers = 3;

enum class Side { left, right };
enum class Outcome { win, lose };

// Coin probabilities p0..p3 of game B; q_m = 1 - p_m.
struct GameParams {
  std::array<double, 4> p{0.5, 0.5, 0.5, 0.5};

  // Throws InvalidArgument unless every p_m lies in [0,1].
  static GameParams make(double p0, double p1, double p2, double p3);
  static GameParams make(std::array<double, 4> p) { return make(p[0], p[1], p[2], p[3]); }

  double q(int m) const { return 1.0 - p[static_cast<std::size_t>(m)]; }
  // 0 < p_m < 1 for every m.
  bool interior() const;
  // The three-parameter model (m counts winning neighbors) is p1 == p2.
  bool p1_equals_p2() const { return p[1] == p[2]; }
  // Parameters of the mirror-image chain (x -> -x swaps the roles of p1 and p2).
  GameParams reflected() const { return GameParams{{p[0], p[2], p[1], p[3]}}; }

  bool operator==(const GameParams&) const = default;
};

void validate(const GameParams& params);

// m = 2*left + right.
constexpr int neighborhood_index(int left, int right) { return 2 * left + right; }

// c(x, eta) from the three local values (eta(x-1), eta(x), eta(x+1)).
inline double rate_B_local(const GameParams& params, int left, int self, int right) {
  const double pm = params.p[static_cast<std::size_t>(neighborhood_index(left, right))];
  return self == 0 ? pm : 1.0 - pm;
}

// c'(x, eta) = (1{eta(x)=eta(x+1)} + 1{eta(x)=eta(x-1)}) / 2.
constexpr double rate_Aprime_local(int left, int self, int right) {
  return 0.5 * ((self == right ? 1.0 : 0.0) + (self == left ? 1.0 : 0.0));
}

// Win/loss statuses of n >= 3 players on a ring, bit-packed in 64-bit words.
class Configuration {
 public:
  explicit Configuration(int n);
  // Bit x of code is site x; requires n <= 64.
  Configuration(int n, std::uint64_t code);
  Configuration(std::initializer_list<int> bits);
  static Configuration from_bits(std::span<const int> bits);

  int size() const { return n_; }

  // Checked access, 0 <= x < n.
  int at(int x) const;
  // Circular access: any integer x, taken mod n.
  int get(long x) const {
    const long i = ((x % n_) + n_) % n_;
    return static_cast<int>((words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u);
  }
  void set(long x, int value);
  void toggle(long x);

  std::uint64_t code() const;
  int count_ones() const;
  // Site x of the result holds site x - k of *this.
  Configuration rotated(int k) const;
  // Site x of the result holds site -x of *this.
  Configuration reflected() const;

  std::string to_string() const;
  bool operator==(const Configuration&) const = default;

 private:
  void check_index(int x) const;

  int n_;
  std::vector<std::uint64_t> words_;
};

int m_index(const Configuration& cfg, int x);
// eta_x: coordinate x complemented.
Configuration flip(const Configuration& cfg, int x);
// Player x duels its left or right neighbor; the winner's site becomes 1 and
// the loser's 0. outcome refers to player x.
Configuration duel(const Configuration& cfg, int x, Side neighbor, Outcome outcome);
// Exchange sites x and x+1.
Configuration swap(const Configuration& cfg, int x);

double rate_B(const GameParams& params, const Configuration& cfg, int x);
double rate_Aprime(const Configuration& cfg, int x);

// Centered labels l_N..r_N: odd n gives -(n-1)/2..(n-1)/2, even n gives
// -n/2..n/2-1.
struct LabelRange {
  int left;
  int right;
};
LabelRange label_range(int n);
int label_of(int n, int index);
int index_of(int n, int label);

// Which game is played on each turn.
struct RandomMixture {
  double gamma;  // probability of A' on each turn, 0 < gamma < 1
};
struct PeriodicPattern {
  int r;  // A' turns per period
  int s;  // B turns per period
};
enum class Game { aprime, b };
// Degenerate schedule that always plays one game (pure A' or pure B).
struct SingleGame {
  Game game;
};
using SchedulerSpec = std::variant<RandomMixture, PeriodicPattern, SingleGame>;

void validate(const SchedulerSpec& sched);
std::string describe(const SchedulerSpec& sched);
// Long-run fraction of A' turns.
double aprime_fraction(const SchedulerSpec& sched);

}  // namespace parrondo
