#pragma once

#include <string>

namespace kclass {

/// Outcome of an isomorphism decision. `unknown` is a legitimate answer:
/// the procedures refuse to guess rather than risk a wrong verdict.
enum class Verdict { isomorphic, not_isomorphic, unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::isomorphic: return "isomorphic";
    case Verdict::not_isomorphic: return "not_isomorphic";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace kclass
