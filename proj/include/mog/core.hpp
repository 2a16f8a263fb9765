#pragma once

// Deterministic RNG, seed derivation, angle conversion and exact
// double<->text round-tripping shared by every module.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mog {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

// Error taxonomy. The CLI maps ValidationError (and subclasses) to exit
// code 1 and everything else to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// A joint value outside its configured limit interval.
class LimitViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A query point that does not lie on the surface it was claimed to lie on.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// An object could not be placed into the pile within the attempt budget.
class PlacementFailure : public Error {
 public:
  using Error::Error;
};

// Feature extraction on a record that holds no objects.
class NoGraspError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// splitmix64 finalizer; the basis of all seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream seed for a labelled sub-task of a master seed. Every independent
// random stream in the system (settling, trials, escape sampling) gets its
// own derived seed so runs are reproducible end to end.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
  return mix64(mix64(master ^ hash_string(label)) + index);
}

// Deterministic uniform source. std::mt19937_64 output is fully specified
// by the standard; the double conversion below is explicit so results do
// not depend on library-specific distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1)
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, n)
  int uniform_int(int n) {
    return static_cast<int>(uniform() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 gen_;
};

// Shortest text form that parses back to the identical double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline long parse_long(std::string_view s) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace mog
