#include "borel/error.hpp"

namespace borel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::composition_not_zero: return "CompositionNotZero";
    case ErrorCode::odd_codegree: return "OddCodegree";
    case ErrorCode::algebra_mismatch: return "AlgebraMismatch";
    case ErrorCode::not_chain_map: return "NotChainMap";
    case ErrorCode::not_finite_length: return "NotFiniteLength";
    case ErrorCode::window_too_small: return "WindowTooSmall";
    case ErrorCode::not_torsion: return "NotTorsion";
    case ErrorCode::unbounded: return "Unbounded";
    case ErrorCode::not_polynomial_homology: return "NotPolynomialHomology";
    case ErrorCode::not_graded_commutative: return "NotGradedCommutative";
    case ErrorCode::homology_not_k: return "HomologyNotK";
    case ErrorCode::linear_solve_failed: return "LinearSolveFailed";
    case ErrorCode::not_finite: return "NotFinite";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invariant_violation: return "InvariantViolation";
    case ErrorCode::unknown_group: return "UnknownGroup";
    case ErrorCode::window_required: return "WindowRequired";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace borel
