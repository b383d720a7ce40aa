#pragma once
#include <stdexcept>
#include <string>

namespace eiscong {

// Base for every typed error this library raises.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAUnit : Error {
  explicit NotAUnit(const std::string& msg) : Error("NotAUnit: " + msg) {}
};

struct RingMismatch : Error {
  explicit RingMismatch(const std::string& msg) : Error("RingMismatch: " + msg) {}
};

struct SupportViolation : Error {
  long index;
  explicit SupportViolation(long n)
      : Error("SupportViolation: nonzero coefficient at exponent " + std::to_string(n)),
        index(n) {}
};

struct DenominatorNotInvertible : Error {
  explicit DenominatorNotInvertible(const std::string& msg)
      : Error("DenominatorNotInvertible: " + msg) {}
};

struct PrecisionTooSmall : Error {
  explicit PrecisionTooSmall(const std::string& msg)
      : Error("PrecisionTooSmall: " + msg) {}
};

struct MissingPrime : Error {
  long prime;
  explicit MissingPrime(long l)
      : Error("MissingPrime: no coefficient for prime " + std::to_string(l)), prime(l) {}
};

struct AdditiveReduction : Error {
  long prime;
  explicit AdditiveReduction(long p)
      : Error("AdditiveReduction: reduction at " + std::to_string(p) +
              " is not multiplicative"),
        prime(p) {}
};

struct Inconclusive : Error {
  explicit Inconclusive(const std::string& msg) : Error("Inconclusive: " + msg) {}
};

struct PrimeNotMinusOne : Error {
  long prime;
  explicit PrimeNotMinusOne(long p, long r)
      : Error("PrimeNotMinusOne: " + std::to_string(p) + " is not -1 mod " +
              std::to_string(r)),
        prime(p) {}
};

struct NoMinusSign : Error {
  explicit NoMinusSign(const std::string& msg) : Error("NoMinusSign: " + msg) {}
};

struct UnknownLevel : Error {
  long level;
  explicit UnknownLevel(long N)
      : Error("UnknownLevel: no cuspidal-order table entry for level " +
              std::to_string(N)),
        level(N) {}
};

// Malformed files, flags, or argument values; the CLI maps this to exit 3.
struct FormatError : Error {
  explicit FormatError(const std::string& msg) : Error("FormatError: " + msg) {}
};

}  // namespace eiscong
