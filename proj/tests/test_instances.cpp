#include <catch2/catch_amalgamated.hpp>
#include "crosscut/crosscut.hpp"
