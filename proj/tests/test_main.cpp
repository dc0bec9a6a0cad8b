#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "hazardscan/log.hpp"

int main(int argc, char** argv) {
    // expected warnings (empty files, short pools) would clutter test output
    hazard::set_warning_sink({});
    doctest::Context ctx(argc, argv);
    return ctx.run();
}
