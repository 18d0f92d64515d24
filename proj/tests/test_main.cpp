#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "oddkh/linalg.hpp"

int main(int argc, char** argv) {
  oddkh::checks::set_paranoid(true);
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
