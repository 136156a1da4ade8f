// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "callanat/profile.hpp"

namespace callanat {

class ProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input; carries the 1-based line number and the offending token.
class SyntaxError : public ProfileError {
 public:
  SyntaxError(std::size_t line, std::string token, const std::string& what);

  std::size_t line() const { return line_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_;
  std::string token_;
};

// No `events:` line: the file declares no measurable cost at all.
class EmptyProfile : public ProfileError {
 public:
  using ProfileError::ProfileError;
};

// merge_parts over profiles with different event layouts.
class EventMismatch : public ProfileError {
 public:
  using ProfileError::ProfileError;
};

class IoError : public ProfileError {
 public:
  using ProfileError::ProfileError;
};

/*
 * Parses one Callgrind-format profile (plain text, line oriented):
 *
 *   header lines      `key: value` (version, creator, pid, cmd, part, ...)
 *   events: E1 E2     cost-vector layout; `event: N = F` declares a derived
 *                     event whose formula is stored verbatim
 *   positions: ...    `instr` and/or `line`; default `line`
 *   ob= fl= fi= fe=   current object / source file
 *   fn=               current function (identity binds the current ob/fl)
 *   cob= cfl= cfi=    callee object / file for the next call; default to the
 *                     current ob/fl when omitted
 *   cfn=              callee function; required before each calls=
 *   calls=N <pos>     next cost line carries the inclusive cost of N calls
 *   <pos> v1 v2 ...   cost line; positions may be absolute, `+d`, `-d`
 *                     (relative to the previous position in the same
 *                     function) or `*`; missing trailing values are zero
 *   summary:/totals:  per-event totals
 *   jump=/jcnd=       skipped (jfi=/jfn= likewise)
 *   # comment, blank  ignored
 *
 * Name compression `(id)` / `(id) name` is resolved over three independent
 * namespaces (objects, files, functions). Position detail is parsed and
 * discarded: costs aggregate per function. A name that literally starts with
 * "(digits)" is indistinguishable from a compression reference; real tools
 * never emit such symbols.
 */
Profile parse_profile(std::istream& in);
Profile parse_profile_file(const std::filesystem::path& path);

// Canonical form: no name compression, no position compression, functions
// ordered by first_record_index. All functions are pre-declared in record
// order before any cost block so that parse_profile(write_canonical(p)) == p.
std::string write_canonical(const Profile& profile);

// Sums self costs, call counts and per-call costs over identical FunctionKeys.
// Record order is taken from the earliest part; the merged summary is present
// only when every part carries one. Throws EventMismatch when the parts do
// not share an event layout.
Profile merge_parts(const std::vector<Profile>& parts);

}  // namespace callanat
