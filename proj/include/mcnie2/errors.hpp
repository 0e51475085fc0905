/*
   Copyright 2026 The mcnie2 authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace mcnie2 {

/// A linear system has no solution.
class no_solution : public std::runtime_error {
  public:
    explicit no_solution(const std::string& what) : std::runtime_error(what) {}
};

/// A linear system has more than one solution but a unique one was requested.
class ambiguous_solution : public std::runtime_error {
  public:
    explicit ambiguous_solution(const std::string& what) : std::runtime_error(what) {}
};

/// The rank-syndrome decoder could not produce a consistent error vector.
class decoding_failure : public std::runtime_error {
  public:
    explicit decoding_failure(const std::string& what) : std::runtime_error(what) {}
};

/// Decryption failed (decoder failure, ambiguous solve or consistency check).
class decryption_failure : public std::runtime_error {
  public:
    explicit decryption_failure(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed serialized data.
class format_error : public std::runtime_error {
  public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

/// A brute-force search would exceed its enumeration cap.
class infeasible_error : public std::runtime_error {
  public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

/// The Gaborit reduction requires a full-rank public matrix F.
class reduction_inapplicable : public std::runtime_error {
  public:
    explicit reduction_inapplicable(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mcnie2
