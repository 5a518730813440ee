#include "monotile/error.hpp"

namespace monotile {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::encoding: return "encoding";
    case ErrorCode::domain: return "domain";
    case ErrorCode::unsupported_group: return "unsupported-group";
    case ErrorCode::invariance_unreachable: return "invariance-unreachable";
    case ErrorCode::not_coset_reps: return "not-coset-reps";
    case ErrorCode::construction: return "construction";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::distinctness: return "distinctness";
    case ErrorCode::augmentation: return "augmentation";
    case ErrorCode::out_of_window: return "out-of-window";
    case ErrorCode::insufficient_depth: return "insufficient-depth";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::scale_mismatch: return "scale-mismatch";
    case ErrorCode::hypothesis: return "hypothesis";
    case ErrorCode::exhausted: return "exhausted";
    case ErrorCode::unsupported_render: return "unsupported-render";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    case ErrorCode::managed: return "managed";
  }
  return "unknown";
}

}  // namespace monotile
