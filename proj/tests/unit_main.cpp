#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support.hpp"

int main(int argc, char** argv) {
  fdom::test::ctx();
  doctest::Context runner(argc, argv);
  return runner.run();
}
