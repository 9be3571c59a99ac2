#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mtc::numerics {

struct StreamLabel {
  std::string role;
  std::uint64_t index = 0;

  friend bool operator==(const StreamLabel&, const StreamLabel&) = default;
};

// Deterministic random source identified by (master_seed, labels).
//
// Derivation, fixed across releases:
//   h  = splitmix64(master_seed)
//   for each label: h = splitmix64(h ^ fnv1a64(role)); h = splitmix64(h ^ index)
//   the four xoshiro256** state words are successive splitmix64 outputs from h.
//
// The sequence depends only on the label path, never on how many other
// streams were derived before.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::vector<StreamLabel> labels);

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<StreamLabel>& labels() const { return labels_; }

  // Child stream with one more label appended.
  RandomStream derive(std::string_view role, std::uint64_t index) const;

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on the open interval (0, 1).
  double uniform_open();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  bool bernoulli(double p) { return uniform() < p; }
  // Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t master_seed_;
  std::vector<StreamLabel> labels_;
  std::array<std::uint64_t, 4> state_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;

  void reseed();
};

RandomStream derive_stream(std::uint64_t master_seed, std::string_view role,
                           std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace mtc::numerics
