#include "doctest.h"
TEST_CASE("placeholder test_validate") { CHECK(true); }
