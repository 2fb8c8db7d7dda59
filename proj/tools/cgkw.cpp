// cgkw command-line interface (placeholder while the library is built out).
#include <cstdio>

int main() {
  std::puts("cgkw 0.1.0");
  return 0;
}
