#include "mtcorr/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mtc::numerics {

namespace {
__extension__ typedef unsigned __int128 uint128;
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

RandomStream::RandomStream(std::uint64_t master_seed,
                           std::vector<StreamLabel> labels)
    : master_seed_(master_seed), labels_(std::move(labels)) {
  reseed();
}

void RandomStream::reseed() {
  std::uint64_t h = splitmix64(master_seed_);
  for (const auto& label : labels_) {
    h = splitmix64(h ^ fnv1a64(label.role));
    h = splitmix64(h ^ label.index);
  }
  for (auto& word : state_) {
    h = splitmix64(h);
    word = h;
  }
  // xoshiro must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  has_spare_ = false;
}

RandomStream RandomStream::derive(std::string_view role,
                                  std::uint64_t index) const {
  auto labels = labels_;
  labels.push_back({std::string(role), index});
  return RandomStream(master_seed_, std::move(labels));
}

std::uint64_t RandomStream::next_u64() {
  // xoshiro256**
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RandomStream::below: bound is zero");
  // Lemire's nearly-divisionless rejection.
  uint128 product =
      static_cast<uint128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<uint128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

RandomStream derive_stream(std::uint64_t master_seed, std::string_view role,
                           std::uint64_t index) {
  return RandomStream(master_seed, {{std::string(role), index}});
}

}  // namespace mtc::numerics
