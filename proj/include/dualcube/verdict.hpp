// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "json.hpp"

namespace dualcube {

// Uniform answer shape for semi-decidable questions. Yes/No carry
// re-checkable evidence; Unknown records the exhausted radius.
struct Verdict {
  enum class Outcome { Yes, No, Unknown };

  Outcome outcome = Outcome::Unknown;
  nlohmann::json evidence;  // certificate (Yes), witness (No), or notes
  int radius = -1;          // search radius backing the answer, if bounded

  static Verdict yes(nlohmann::json cert = nlohmann::json::object()) {
    return {Outcome::Yes, std::move(cert), -1};
  }
  static Verdict no(nlohmann::json witness = nlohmann::json::object()) {
    return {Outcome::No, std::move(witness), -1};
  }
  static Verdict unknown(int radius, nlohmann::json notes = nlohmann::json::object()) {
    return {Outcome::Unknown, std::move(notes), radius};
  }

  bool isYes() const { return outcome == Outcome::Yes; }
  bool isNo() const { return outcome == Outcome::No; }
  bool isUnknown() const { return outcome == Outcome::Unknown; }

  const char* name() const {
    switch (outcome) {
      case Outcome::Yes: return "yes";
      case Outcome::No: return "no";
      case Outcome::Unknown: return "unknown";
    }
    return "unknown";
  }

  nlohmann::json toJson() const {
    nlohmann::json j;
    j["outcome"] = name();
    if (!evidence.is_null() && !(evidence.is_object() && evidence.empty()))
      j["evidence"] = evidence;
    if (radius >= 0) j["radius"] = radius;
    return j;
  }
};

}  // namespace dualcube
