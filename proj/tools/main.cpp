#include <cstdio>

int main() {
  std::puts("minidroid: CLI under construction");
  return 0;
}
