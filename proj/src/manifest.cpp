// Copyright 2026 The dialectid Authors. All Rights Reserved.
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

#include "dialectid/manifest.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

#include "dialectid/error.hpp"

namespace dialectid::corpus {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

[[noreturn]] void LineError(std::size_t line_no, const std::string &what) {
  Fail(ErrorKind::kParseError, "manifest line " + std::to_string(line_no) + ": " + what);
}

double ParseSeconds(std::string_view s, std::size_t line_no, const char *name) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    LineError(line_no, std::string("bad ") + name + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::filesystem::path CorpusManifest::Resolve(const UtteranceRecord &record) const {
  std::filesystem::path p(record.audio_path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

std::vector<UtteranceRecord> CorpusManifest::Select(Split split) const {
  std::vector<UtteranceRecord> out;
  for (const auto &r : records)
    if (r.split == split) out.push_back(r);
  return out;
}

CorpusManifest CorpusManifest::Filtered(Split split) const {
  return {Select(split), base_dir};
}

CorpusManifest ParseManifest(std::istream &in, const std::filesystem::path &base_dir) {
  CorpusManifest manifest;
  manifest.base_dir = base_dir;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto fields = SplitTabs(line);
    if (fields.size() != 5 && fields.size() != 7)
      LineError(line_no, "expected 5 or 7 tab-separated columns, got " +
                             std::to_string(fields.size()));
    for (const auto &f : fields)
      if (f.empty()) LineError(line_no, "empty column");
    UtteranceRecord r;
    r.audio_path = std::string(fields[0]);
    r.speaker_id = std::string(fields[1]);
    const auto dialect = ParseDialect(fields[2]);
    if (!dialect) LineError(line_no, "unknown dialect '" + std::string(fields[2]) + "'");
    r.dialect = *dialect;
    const auto gender = ParseGender(fields[3]);
    if (!gender) LineError(line_no, "unknown gender '" + std::string(fields[3]) + "'");
    r.gender = *gender;
    const auto split = ParseSplit(fields[4]);
    if (!split) LineError(line_no, "unknown split '" + std::string(fields[4]) + "'");
    r.split = *split;
    if (fields.size() == 7) {
      Segment s{ParseSeconds(fields[5], line_no, "start_s"),
                ParseSeconds(fields[6], line_no, "end_s")};
      if (!(s.start_s >= 0.0 && s.start_s < s.end_s))
        LineError(line_no, "segment needs 0 <= start_s < end_s");
      r.segment = s;
    }
    if (!seen.insert(r.audio_path).second)
      Fail(ErrorKind::kDuplicatePath,
           "manifest line " + std::to_string(line_no) + ": duplicate audio path " + r.audio_path);
    manifest.records.push_back(std::move(r));
  }
  return manifest;
}

CorpusManifest LoadManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open manifest " + path.string());
  return ParseManifest(in, path.parent_path());
}

void WriteManifest(const CorpusManifest &manifest, std::ostream &out) {
  out << "# audio_path\tspeaker_id\tdialect\tgender\tsplit\t[start_s\tend_s]\n";
  for (const auto &r : manifest.records) {
    out << r.audio_path << '\t' << r.speaker_id << '\t' << ToString(r.dialect) << '\t'
        << ToString(r.gender) << '\t' << ToString(r.split);
    if (r.segment)
      out << '\t' << FormatDouble(r.segment->start_s) << '\t' << FormatDouble(r.segment->end_s);
    out << '\n';
  }
}

void SaveManifest(const CorpusManifest &manifest, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  WriteManifest(manifest, out);
  if (!out) Fail(ErrorKind::kIo, "failed writing manifest");
}

}  // namespace dialectid::corpus
