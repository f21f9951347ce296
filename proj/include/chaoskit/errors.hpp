#pragma once

#include <stdexcept>
#include <string>

namespace chaoskit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class EmptySubshift : public Error {
 public:
  EmptySubshift() : Error("subshift is empty: no symbol survives essentialization") {}
};

class NotIrreducible : public Error {
 public:
  explicit NotIrreducible(const std::string& what = "transition graph is not irreducible")
      : Error(what) {}
};

class SingleCycle : public Error {
 public:
  SingleCycle() : Error("system is a single periodic orbit") {}
};

class NoFixedPoint : public Error {
 public:
  NoFixedPoint() : Error("system has no fixed point") {}
};

/// Requested points cannot be aligned: they start in different cyclic classes.
class ClassMismatch : public Error {
 public:
  using Error::Error;
};

class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class NotValidated : public Error {
 public:
  NotValidated() : Error("pseudo-orbit has a jump that is not below delta") {}
};

class DeltaTooLarge : public Error {
 public:
  explicit DeltaTooLarge(double delta)
      : Error("delta " + std::to_string(delta) + " exceeds 1/4"), delta_(delta) {}
  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

class SeamTooWide : public Error {
 public:
  SeamTooWide(std::size_t seam, double distance)
      : Error("seam " + std::to_string(seam) + " has distance " + std::to_string(distance) +
              " which is not below delta"),
        seam_(seam),
        distance_(distance) {}
  std::size_t seam() const noexcept { return seam_; }
  double distance() const noexcept { return distance_; }

 private:
  std::size_t seam_;
  double distance_;
};

class WitnessNotFound : public Error {
 public:
  using Error::Error;
};

class UnknownMap : public Error {
 public:
  explicit UnknownMap(const std::string& name) : Error("unknown Markov map: " + name) {}
};

/// A realized prefix would exceed the configured horizon cap.
class HorizonExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace chaoskit
