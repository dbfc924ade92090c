#include <iostream>

int main() {
  std::cout << "gauge-measure (cli pending)\n";
  return 0;
}
