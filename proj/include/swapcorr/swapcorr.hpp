#pragma once

#include "swapcorr/errors.hpp"
#include "swapcorr/linalg.hpp"
#include "swapcorr/matrix_json.hpp"
#include "swapcorr/measures.hpp"
#include "swapcorr/random_states.hpp"
#include "swapcorr/scenarios.hpp"
#include "swapcorr/swaptest.hpp"
#include "swapcorr/witness.hpp"

namespace swapcorr {
inline constexpr const char* version = "0.1.0";
}
