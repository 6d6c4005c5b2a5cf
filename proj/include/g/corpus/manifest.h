#ifndef G_CORPUS_MANIFEST_H_
#define G_CORPUS_MANIFEST_H_

#include <ostream>
#include <string>
#include <vector>

namespace g::corpus {

struct ManifestEntry {
  enum class Kind { kRun, kCheckOk, kCheckFail, kExpectFailure };
  std::string path;  // relative to the manifest's directory
  Kind kind = Kind::kRun;
  int exit_code = 0;
  std::string expected;  // golden stdout or diagnostic substrings file
  int line = 0;
};

struct EntryResult {
  const ManifestEntry* entry = nullptr;
  bool pass = false;
  std::string detail;
};

// Reads a tab-separated manifest. Blank lines and lines starting with '#'
// are skipped. Malformed lines are reported in `errors`.
std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          std::vector<std::string>& errors);

const char* kind_name(ManifestEntry::Kind k);

// Runs one entry in-process. `dir` is the directory holding the manifest.
EntryResult run_entry(const ManifestEntry& e, const std::string& dir);

// Runs every entry of the manifest file and prints one line per entry.
// Returns the number of failed entries, or -1 if the manifest is unusable.
int run_manifest(const std::string& manifest_path, std::ostream& report);

}  // namespace g::corpus

#endif  // G_CORPUS_MANIFEST_H_
