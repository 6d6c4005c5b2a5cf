#include "g/corpus/manifest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "g/driver/driver.h"

namespace g::corpus {

namespace fs = std::filesystem;

namespace {

bool slurp(const fs::path& p, std::string& out) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

bool parse_kind(const std::string& s, ManifestEntry::Kind& k) {
  using K = ManifestEntry::Kind;
  if (s == "run") k = K::kRun;
  else if (s == "check-ok") k = K::kCheckOk;
  else if (s == "check-fail") k = K::kCheckFail;
  else if (s == "expect-failure") k = K::kExpectFailure;
  else return false;
  return true;
}

std::string first_line(const std::string& s) {
  auto nl = s.find('\n');
  return nl == std::string::npos ? s : s.substr(0, nl);
}

}  // namespace

const char* kind_name(ManifestEntry::Kind k) {
  switch (k) {
    case ManifestEntry::Kind::kRun: return "run";
    case ManifestEntry::Kind::kCheckOk: return "check-ok";
    case ManifestEntry::Kind::kCheckFail: return "check-fail";
    case ManifestEntry::Kind::kExpectFailure: return "expect-failure";
  }
  return "?";
}

std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          std::vector<std::string>& errors) {
  std::vector<ManifestEntry> entries;
  int n = 0;
  for (std::string line : split(text, '\n')) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    ManifestEntry e;
    e.line = n;
    if (f.size() < 3 || f.size() > 4 || !parse_kind(f[1], e.kind)) {
      errors.push_back("line " + std::to_string(n) + ": malformed entry");
      continue;
    }
    e.path = f[0];
    try {
      e.exit_code = std::stoi(f[2]);
    } catch (const std::exception&) {
      errors.push_back("line " + std::to_string(n) + ": bad exit code");
      continue;
    }
    if (f.size() == 4) e.expected = f[3];
    if (e.kind == ManifestEntry::Kind::kCheckFail && e.expected.empty()) {
      errors.push_back("line " + std::to_string(n) +
                       ": check-fail entry needs a diagnostics file");
      continue;
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

EntryResult run_entry(const ManifestEntry& e, const std::string& dir) {
  using K = ManifestEntry::Kind;
  EntryResult r;
  r.entry = &e;
  std::string src = (fs::path(dir) / e.path).string();

  std::string expected;
  if (!e.expected.empty() && !slurp(fs::path(dir) / e.expected, expected)) {
    r.detail = "cannot read " + e.expected;
    return r;
  }

  driver::ToolConfig cfg;
  std::ostringstream out, err;
  int code;
  {
    driver::Session s(cfg, out, err);
    code = e.kind == K::kRun ? s.run(src) : s.check(src);
  }

  switch (e.kind) {
    case K::kExpectFailure:
      r.pass = code != 0;
      if (!r.pass) r.detail = "checked clean; expected a failure";
      return r;
    case K::kCheckOk:
      r.pass = code == e.exit_code;
      if (!r.pass) r.detail = "exit " + std::to_string(code) + ": " + first_line(err.str());
      return r;
    case K::kRun:
      if (code != e.exit_code) {
        r.detail = "exit " + std::to_string(code) + ", expected " +
                   std::to_string(e.exit_code) + ": " + first_line(err.str());
        return r;
      }
      if (out.str() != expected) {
        r.detail = "stdout differs from " +
                   (e.expected.empty() ? std::string("empty output") : e.expected);
        return r;
      }
      r.pass = true;
      return r;
    case K::kCheckFail:
      if (code != e.exit_code) {
        r.detail = "exit " + std::to_string(code) + ", expected " +
                   std::to_string(e.exit_code);
        return r;
      }
      for (const std::string& want : split(expected, '\n')) {
        if (want.empty()) continue;
        if (err.str().find(want) == std::string::npos) {
          r.detail = "missing diagnostic: " + want;
          return r;
        }
      }
      r.pass = true;
      return r;
  }
  return r;
}

int run_manifest(const std::string& manifest_path, std::ostream& report) {
  std::string text;
  if (!slurp(manifest_path, text)) {
    report << "cannot read manifest " << manifest_path << "\n";
    return -1;
  }
  std::vector<std::string> errors;
  auto entries = parse_manifest(text, errors);
  for (const auto& m : errors) report << manifest_path << ": " << m << "\n";
  if (!errors.empty()) return -1;

  std::string dir = fs::path(manifest_path).parent_path().string();
  int failed = 0;
  for (const auto& e : entries) {
    EntryResult r = run_entry(e, dir);
    report << (r.pass ? "PASS " : "FAIL ") << e.path << " [" << kind_name(e.kind) << "]";
    if (!r.pass) {
      report << " " << r.detail;
      ++failed;
    }
    report << "\n";
  }
  report << entries.size() - failed << "/" << entries.size() << " entries passed\n";
  return failed;
}

}  // namespace g::corpus
