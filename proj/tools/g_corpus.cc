#include <iostream>

#include "CLI11.hpp"
#include "g/corpus/manifest.h"

int main(int argc, char** argv) {
  std::string manifest = "corpus/manifest.tsv";
  CLI::App app{"Runs every entry of a corpus manifest"};
  app.add_option("MANIFEST", manifest, "Manifest file");
  CLI11_PARSE(app, argc, argv);
  int failed = g::corpus::run_manifest(manifest, std::cout);
  if (failed < 0) return 2;
  return failed == 0 ? 0 : 1;
}
