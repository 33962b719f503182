// Copyright 2026 The mmwtex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmw/feature_io.hpp"

#include <cmath>
#include <string>

#include "mmw/error.hpp"
#include "text_util.hpp"

namespace mmw {

namespace {

constexpr std::string_view kMagic = "MMWFEAT";

void check_token(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos)
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " '" + s + "' must be non-empty and contain no whitespace");
}

}  // namespace

std::string write_features(const Dataset& samples) {
  const std::size_t dim = samples.empty() ? 0 : samples.front().feature.dim();
  if (!samples.empty() && dim == 0) fail(ErrorCode::DimMismatch, "feature vectors must have dim > 0");

  std::string out = std::string(kMagic) + " 1 " + std::to_string(dim) + " " +
                    std::to_string(samples.size()) + "\n";
  for (const Sample& s : samples) {
    if (s.feature.dim() != dim)
      fail(ErrorCode::DimMismatch, "record '" + s.record.sample_id + "' has dim " +
                                       std::to_string(s.feature.dim()) + ", expected " +
                                       std::to_string(dim));
    check_token(s.record.subject_id, "subject id");
    check_token(s.record.sample_id, "sample id");
    out += s.record.subject_id;
    out += ' ';
    out += s.record.sample_id;
    out += ' ';
    out += to_string(s.record.part);
    for (double v : s.feature.values) {
      if (!std::isfinite(v))
        fail(ErrorCode::NonFinite, "record '" + s.record.sample_id + "' holds a non-finite value");
      out += ' ';
      out += detail::format_double(v);
    }
    out += '\n';
  }
  return out;
}

Dataset read_features(std::string_view bytes, FeatureKind kind) {
  auto lines = detail::split_lines(bytes);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) fail(ErrorCode::BadHeader, "missing MMWFEAT header");

  const auto header = detail::split_ws(lines[0]);
  std::size_t dim = 0, count = 0;
  if (header.size() != 4 || header[0] != kMagic || header[1] != "1" ||
      !detail::parse_number(header[2], dim) || !detail::parse_number(header[3], count)) {
    fail(ErrorCode::BadHeader, "bad header: expected 'MMWFEAT 1 <dim> <count>'");
  }
  if (count > 0 && dim == 0) fail(ErrorCode::BadHeader, "bad header: dim must be positive");

  const std::size_t available = lines.size() - 1;
  if (available > count)
    fail(ErrorCode::Parse, "file holds " + std::to_string(available) +
                               " records but the header declares " + std::to_string(count));

  Dataset out;
  out.reserve(count);
  for (std::size_t i = 0; i < available; ++i) {
    const std::size_t lineno = i + 2;
    const auto fields = detail::split_ws(lines[i + 1]);
    const bool last = i + 1 == available;
    if (fields.size() < 3 + dim) {
      if (last)
        fail(ErrorCode::TruncatedPayload, "truncated payload: line " + std::to_string(lineno) +
                                              " ends after " +
                                              std::to_string(fields.size() < 3 ? 0 : fields.size() - 3) +
                                              " of " + std::to_string(dim) + " values");
      fail(ErrorCode::DimMismatch, "line " + std::to_string(lineno) + " has " +
                                       std::to_string(fields.size() < 3 ? 0 : fields.size() - 3) +
                                       " values, expected " + std::to_string(dim));
    }
    if (fields.size() > 3 + dim)
      fail(ErrorCode::DimMismatch, "line " + std::to_string(lineno) + " has " +
                                       std::to_string(fields.size() - 3) + " values, expected " +
                                       std::to_string(dim));
    Sample s;
    s.record.subject_id = std::string(fields[0]);
    s.record.sample_id = std::string(fields[1]);
    s.record.part = parse_body_part(fields[2]);
    s.feature.kind = kind;
    s.feature.part = s.record.part;
    s.feature.values.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      double v = 0.0;
      if (!detail::parse_number(fields[3 + d], v))
        fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": '" +
                                   std::string(fields[3 + d]) + "' is not a number");
      if (!std::isfinite(v))
        fail(ErrorCode::NonFinite, "non-finite value on line " + std::to_string(lineno));
      s.feature.values[d] = v;
    }
    out.push_back(std::move(s));
  }
  if (out.size() < count)
    fail(ErrorCode::TruncatedPayload, "truncated payload: header declares " +
                                          std::to_string(count) + " records, found " +
                                          std::to_string(out.size()));
  return out;
}

void save_features(const std::filesystem::path& path, const Dataset& samples) {
  detail::write_file(path, write_features(samples));
}

Dataset load_features(const std::filesystem::path& path, FeatureKind kind) {
  try {
    return read_features(detail::read_file(path), kind);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw;
    fail(e.code(), path.string() + ": " + e.what());
  }
}

FeatureVector l2_normalize(const FeatureVector& v) {
  double sq = 0.0;
  for (double x : v.values) sq += x * x;
  const double norm = std::sqrt(sq);
  if (!(norm > 0.0)) fail(ErrorCode::InvalidArgument, "cannot normalize a zero vector");
  FeatureVector out = v;
  for (double& x : out.values) x /= norm;
  return out;
}

}  // namespace mmw
