// Copyright 2026  The teer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

namespace teer {

// Output formatting shared by every writer, so that reports are
// byte-deterministic.

/// Shortest decimal string that parses back to exactly `x`.
std::string format_exact(double x);

/// Six significant digits ("%.6g"); -inf is spelled "-inf".
std::string format_sig6(double x);

/// `x` rounded to six significant digits, as a double (for JSON output).
double round_sig6(double x);

}  // namespace teer
