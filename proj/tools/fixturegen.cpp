// Regenerates the checked-in test fixtures (replay fixtures, goldens).
// See tests/fixtures/README.md. Run from the repository root:
//   ./build/tools/fixturegen tests/fixtures
#include <iostream>

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: fixturegen <fixtures-dir>\n";
    return 2;
  }
  std::cerr << "fixture generation not wired up yet\n";
  return 1;
}
