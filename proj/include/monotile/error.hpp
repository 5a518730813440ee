#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monotile {

enum class ErrorCode {
  encoding,               // malformed element encoding
  domain,                 // argument outside the operation's domain
  unsupported_group,      // no membership oracle / construction for this group
  invariance_unreachable, // adaptive search hit its cap
  not_coset_reps,         // U_n * R has repeated elements
  construction,           // C1/C2 violation or duplicate blocks
  infeasible,             // column counts cannot be realized
  distinctness,           // counts admit no pairwise-distinct assignment
  augmentation,           // augment_matrix precondition
  out_of_window,          // element not in the addressed level
  insufficient_depth,     // ladder / hierarchy / sequence too short
  dimension_mismatch,
  scale_mismatch,
  hypothesis,             // grouping bound k_{n+1} <= K |F_{n+1}|/|F_n|
  exhausted,              // no admissible grouping within sequence length
  unsupported_render,
  config,
  io,
  managed,                // column sums / shape of a managed matrix
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string const& what)
      : std::runtime_error(std::string(to_string(code)) + " error: " + what),
        _code(code) {}

  ErrorCode code() const noexcept {
    return _code;
  }

 private:
  ErrorCode _code;
};

}  // namespace monotile
