#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lgd {

// Base class for all library errors. Subclasses mirror the failure modes of
// the public API so callers can catch by contract violation kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateLanguage : public Error {
 public:
  using Error::Error;
};

class InvalidCode : public Error {
 public:
  using Error::Error;
};

class UnknownLanguage : public Error {
 public:
  using Error::Error;
};

class SelfLoop : public Error {
 public:
  using Error::Error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class UnknownConcept : public Error {
 public:
  using Error::Error;
};

class EmptyTrainingSet : public Error {
 public:
  using Error::Error;
};

// Raised when a translation direction has no trained lexicon. For pipeline
// failures `hop_index` identifies the offending hop (0-based); -1 otherwise.
class UntrainedDirection : public Error {
 public:
  UntrainedDirection(const std::string& src, const std::string& tgt, int hop_index = -1)
      : Error(hop_index >= 0
                  ? "untrained direction " + src + "->" + tgt + " at hop " + std::to_string(hop_index)
                  : "untrained direction " + src + "->" + tgt),
        src_(src),
        tgt_(tgt),
        hop_index_(hop_index) {}

  const std::string& src() const { return src_; }
  const std::string& tgt() const { return tgt_; }
  int hop_index() const { return hop_index_; }

 private:
  std::string src_;
  std::string tgt_;
  int hop_index_ = -1;
};

// Two collections that must line up do not. Carries both sizes when the
// mismatch is a length difference.
class AlignmentError : public Error {
 public:
  using Error::Error;
  AlignmentError(std::int64_t lhs, std::int64_t rhs)
      : Error("alignment mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}

  std::int64_t lhs() const { return lhs_; }
  std::int64_t rhs() const { return rhs_; }

 private:
  std::int64_t lhs_ = -1;
  std::int64_t rhs_ = -1;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class MissingEntry : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgd
